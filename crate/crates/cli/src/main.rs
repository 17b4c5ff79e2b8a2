use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use courant_core::config::{parse_config, parse_methods, run, OutputFormat};
use courant_core::geometry::CurvatureConvention;
use courant_core::specfun::Nu2Mode;
use courant_core::spectra::Lambda2Mode;
use courant_core::Error;

/// Upper bounds for Courant-sharp Dirichlet eigenvalues of a domain.
#[derive(Parser, Debug)]
#[command(name = "courant-bound", version, about)]
struct Args {
    /// JSON configuration file
    #[arg(long)]
    config: PathBuf,

    #[arg(long, value_enum)]
    output: Option<Output>,

    /// Comma-separated subset of safarov, bl, corollaries, explicit, all
    #[arg(long)]
    methods: Option<String>,

    #[arg(long, value_enum)]
    nu2: Option<Nu2>,

    #[arg(long, value_enum)]
    lambda2: Option<Lambda2>,

    #[arg(long, value_enum)]
    convention: Option<Convention>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Nu2 {
    Paper,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Lambda2 {
    Exact,
    FaberKrahn,
    LiYau,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Literal,
    Signed,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Io(_) | Error::Geometry(_) | Error::Sampling(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("courant-bound: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn execute(args: &Args) -> Result<String, Error> {
    let mut config = parse_config(&args.config)?;
    if let Some(o) = args.output {
        config.output_format = match o {
            Output::Json => OutputFormat::Json,
            Output::Text => OutputFormat::Text,
        };
    }
    if let Some(m) = &args.methods {
        config.methods = parse_methods(m)?;
    }
    if let Some(n) = args.nu2 {
        config.nu2_mode = match n {
            Nu2::Paper => Nu2Mode::PaperBound,
            Nu2::Exact => Nu2Mode::Exact,
        };
    }
    if let Some(l) = args.lambda2 {
        config.lambda2_mode = Some(match l {
            Lambda2::Exact => Lambda2Mode::Exact,
            Lambda2::FaberKrahn => Lambda2Mode::FaberKrahn,
            Lambda2::LiYau => Lambda2Mode::LiYau,
        });
    }
    if let Some(c) = args.convention {
        config.curvature_convention = match c {
            Convention::Literal => CurvatureConvention::LiteralAbs,
            Convention::Signed => CurvatureConvention::Signed,
        };
    }
    let (_, out) = run(&config)?;
    Ok(out)
}
