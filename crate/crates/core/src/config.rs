//! Run configuration: parsing, validation and report rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{applicable_methods, courant_sharp_report, CourantSharpReport, MethodSet, ReportOptions};
use crate::error::{Error, Result};
use crate::geometry::{load_curves, CurvatureConvention, DomainSpec};
use crate::specfun::Nu2Mode;
use crate::spectra::{has_explicit_spectrum, Lambda2Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Safarov,
    Bl,
    Corollaries,
    Explicit,
    All,
}

impl MethodName {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "safarov" => Ok(MethodName::Safarov),
            "bl" => Ok(MethodName::Bl),
            "corollaries" => Ok(MethodName::Corollaries),
            "explicit" => Ok(MethodName::Explicit),
            "all" => Ok(MethodName::All),
            other => Err(Error::Config(format!(
                "unknown method `{other}`, expected one of safarov, bl, corollaries, explicit, all"
            ))),
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            MethodName::Safarov => "safarov",
            MethodName::Bl => "bl",
            MethodName::Corollaries => "corollaries",
            MethodName::Explicit => "explicit",
            MethodName::All => "all",
        }
    }
}

/// Comma-separated method list.
pub fn parse_methods(list: &str) -> Result<Vec<MethodName>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(MethodName::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub domain: DomainSpec,
    pub methods: Vec<MethodName>,
    /// `None` selects exact when available, else Faber-Krahn.
    pub lambda2_mode: Option<Lambda2Mode>,
    pub nu2_mode: Nu2Mode,
    pub curvature_convention: CurvatureConvention,
    pub output_format: OutputFormat,
    pub lambda_list_max: Option<f64>,
    /// Boundary file of a parametric domain, as resolved.
    pub boundary_path: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    domain: Value,
    methods: Option<Vec<MethodName>>,
    lambda2_mode: Option<Lambda2Mode>,
    nu2_mode: Option<Nu2Mode>,
    curvature_convention: Option<CurvatureConvention>,
    output_format: Option<OutputFormat>,
    lambda_list_max: Option<f64>,
}

impl RunConfig {
    pub fn new(domain: DomainSpec) -> Self {
        RunConfig {
            domain,
            methods: vec![MethodName::All],
            lambda2_mode: None,
            nu2_mode: Nu2Mode::default(),
            curvature_convention: CurvatureConvention::default(),
            output_format: OutputFormat::default(),
            lambda_list_max: None,
            boundary_path: None,
        }
    }

    /// Selected methods intersected with what the domain supports; `all`
    /// expands to every applicable method.
    pub fn method_set(&self) -> MethodSet {
        let can = applicable_methods(&self.domain);
        let mut set = MethodSet::NONE;
        for m in &self.methods {
            match m {
                MethodName::All => set = can,
                MethodName::Safarov => set.safarov = can.safarov,
                MethodName::Bl => set.bl = can.bl,
                MethodName::Corollaries => set.corollaries = can.corollaries,
                MethodName::Explicit => set.explicit = can.explicit,
            }
        }
        set
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected; use e.g. \"methods\": [\"all\"]".into()));
        }
        let can = applicable_methods(&self.domain);
        let kind = self.domain.kind();
        for m in &self.methods {
            let (ok, hint) = match m {
                MethodName::All => (true, ""),
                MethodName::Safarov => (can.safarov, "the Safarov route needs a C² boundary (disk, annulus or parametric)"),
                MethodName::Bl | MethodName::Corollaries => (can.bl, "this route is planar only"),
                MethodName::Explicit => (can.explicit, "explicit counting bounds exist for rectangles, squares, the two triangles and the cube"),
            };
            if !ok {
                return Err(Error::Config(format!(
                    "method `{}` does not apply to a {kind} domain: {hint}; remove it or use \"all\"",
                    m.as_str()
                )));
            }
        }
        if self.lambda2_mode == Some(Lambda2Mode::Exact) && !has_explicit_spectrum(&self.domain) {
            return Err(Error::Config(format!(
                "lambda2_mode `exact` needs an explicit spectrum, which a {kind} domain lacks; use `faber_krahn` or `li_yau`"
            )));
        }
        if let Some(m) = self.lambda_list_max {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::Config(format!("lambda_list_max must be positive and finite, got {m}")));
            }
        }
        Ok(())
    }

    pub fn report_options(&self) -> ReportOptions {
        ReportOptions {
            methods: self.method_set(),
            lambda2_mode: self.lambda2_mode,
            nu2_mode: self.nu2_mode,
            convention: self.curvature_convention,
            lambda_list_max: self.lambda_list_max,
        }
    }
}

/// Parses a JSON configuration; relative boundary paths resolve against `base_dir`.
pub fn parse_config_str(text: &str, base_dir: &Path) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let (domain, boundary_path) = parse_domain(raw.domain, base_dir)?;
    let config = RunConfig {
        domain,
        methods: raw.methods.unwrap_or_else(|| vec![MethodName::All]),
        lambda2_mode: raw.lambda2_mode,
        nu2_mode: raw.nu2_mode.unwrap_or_default(),
        curvature_convention: raw.curvature_convention.unwrap_or_default(),
        output_format: raw.output_format.unwrap_or_default(),
        lambda_list_max: raw.lambda_list_max,
        boundary_path,
    };
    config.validate()?;
    Ok(config)
}

pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_config_str(&text, base).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn parse_domain(value: Value, base_dir: &Path) -> Result<(DomainSpec, Option<PathBuf>)> {
    let is_file_parametric =
        value.get("type").and_then(Value::as_str) == Some("parametric") && value.get("path").is_some();
    if !is_file_parametric {
        let d = serde_json::from_value(value).map_err(|e| Error::Config(format!("domain: {e}")))?;
        return Ok((d, None));
    }
    let obj = value.as_object().expect("checked above");
    if let Some(k) = obj.keys().find(|k| *k != "type" && *k != "path") {
        return Err(Error::Config(format!("domain: unknown field `{k}`, expected `type` and `path`")));
    }
    let rel = obj["path"].as_str().ok_or_else(|| Error::Config("domain: `path` must be a string".into()))?;
    let path = base_dir.join(rel);
    let curves = load_curves(&path)?;
    Ok((DomainSpec::parametric(curves)?, Some(path)))
}

/// Runs the report and renders it in the configured format.
pub fn run(config: &RunConfig) -> Result<(CourantSharpReport, String)> {
    config.validate()?;
    let report = courant_sharp_report(&config.domain, &config.report_options())?;
    let out = match config.output_format {
        OutputFormat::Json => render_json(&report, config),
        OutputFormat::Text => render_text(&report),
    };
    Ok((report, out))
}

pub const REMAINDER_DERIVATION: &str =
    "beta3 = beta2*perimeter/2; beta4 = beta1 + beta2*(area/eps0 + perimeter*eps0*K)";

pub fn report_json(report: &CourantSharpReport, config: &RunConfig) -> Value {
    let domain = match &report.domain {
        DomainSpec::Parametric { curves } => json!({
            "type": "parametric",
            "path": config.boundary_path.as_ref().map(|p| p.display().to_string()),
            "curve_samples": curves.curves().iter().map(|c| c.vertex_count()).collect::<Vec<_>>(),
        }),
        d => serde_json::to_value(d).expect("domain serialises"),
    };
    let bounds: Vec<Value> = report
        .bounds
        .iter()
        .map(|b| {
            json!({
                "method": b.method,
                "threshold": b.threshold,
                "lambda2_used": b.lambda2_used,
                "valid": b.valid,
                "constants": b.details,
            })
        })
        .collect();
    json!({
        "domain": domain,
        "description": report.domain.describe(),
        "invariants": report.invariants,
        "bounds": bounds,
        "best_threshold": report.best_threshold,
        "best_method": report.best_method,
        "candidates": report.candidates,
        "always_sharp": report.always_sharp,
        "status": report.status,
        "provenance": {
            "nu2_mode": report.nu2_mode,
            "nu2": report.nu2,
            "lambda2_mode": report.lambda2_mode,
            "lambda2_used": report.lambda2_used,
            "curvature_convention": report.curvature_convention,
            "remainder_constants": REMAINDER_DERIVATION,
            "version": env!("CARGO_PKG_VERSION"),
        },
    })
}

pub fn render_json(report: &CourantSharpReport, config: &RunConfig) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(report, config)).expect("report serialises");
    s.push('\n');
    s
}

/// Three significant digits.
pub fn sig3(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if a != 0.0 && !(1e-3..1e6).contains(&a) {
        return format!("{x:.2e}");
    }
    let mag = if a == 0.0 { 0 } else { a.log10().floor() as i32 };
    let decimals = (2 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn enum_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

pub fn render_text(report: &CourantSharpReport) -> String {
    let mut s = String::new();
    let inv = &report.invariants;
    let _ = writeln!(s, "domain       {}", report.domain.describe());
    let _ = writeln!(s, "area         {}", sig3(inv.area));
    let _ = writeln!(s, "perimeter    {}", sig3(inv.perimeter));
    let _ = writeln!(s, "eps0         {}", sig3(inv.eps0));
    let _ = writeln!(s, "D            {}", sig3(inv.d_omega));
    let _ = writeln!(s, "lambda2      {} ({})", sig3(report.lambda2_used), enum_name(&report.lambda2_mode));
    let _ = writeln!(s, "nu2          {} ({})", sig3(report.nu2), enum_name(&report.nu2_mode));
    let _ = writeln!(s, "convention   {}", enum_name(&report.curvature_convention));
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<20}{:>12}  {}", "method", "threshold", "valid");
    for b in &report.bounds {
        let _ = writeln!(s, "{:<20}{:>12}  {}", b.method.as_str(), sig3(b.threshold), if b.valid { "yes" } else { "no" });
    }
    match (report.best_threshold, report.best_method) {
        (Some(t), Some(m)) => {
            let _ = writeln!(s, "{:<20}{:>12}  {}", "best", sig3(t), m.as_str());
        }
        _ => {
            let _ = writeln!(s, "best                none");
        }
    }
    if let Some(c) = &report.candidates {
        let _ = writeln!(s);
        let _ = writeln!(s, "{:>6}  {:>10}  {}", "n", "lambda_n", "FK");
        for c in c {
            let _ = writeln!(s, "{:>6}  {:>10}  {}", c.n, sig3(c.lambda), if c.passes_fk { "pass" } else { "fail" });
        }
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "status       {}", report.status);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn parse(text: &str) -> Result<RunConfig> {
        parse_config_str(text, Path::new("."))
    }

    #[test]
    fn disk_all_methods() {
        let c = parse(r#"{"domain":{"type":"disk","radius":1.0},"methods":["all"]}"#).unwrap();
        assert_eq!(c.domain, DomainSpec::Disk { radius: 1.0 });
        assert_eq!(c.methods, vec![MethodName::All]);
        let set = c.method_set();
        assert!(set.safarov && set.bl && set.corollaries && !set.explicit);
    }

    #[test]
    fn annulus_routing() {
        let c = parse(r#"{"domain":{"type":"annulus","inner":0.75,"outer":1.0}}"#).unwrap();
        assert_eq!(c.method_set(), MethodSet { safarov: true, bl: true, corollaries: true, explicit: false });
    }

    #[test]
    fn safarov_on_square_is_semantic_error() {
        let e = parse(r#"{"domain":{"type":"square","side":3.14159},"methods":["safarov"]}"#).unwrap_err();
        let Error::Config(m) = e else { panic!("{e:?}") };
        assert!(m.contains("safarov") && m.contains("square") && m.contains("C²"), "{m}");
    }

    #[test]
    fn unknown_keys_named() {
        let e = parse(r#"{"domain":{"type":"disk","radius":1.0},"colour":"red"}"#).unwrap_err();
        assert!(e.to_string().contains("colour"), "{e}");
        let e = parse(r#"{"domain":{"type":"disk","radius":1.0,"centre":0}}"#).unwrap_err();
        assert!(e.to_string().contains("centre"), "{e}");
    }

    #[test]
    fn parse_errors_have_position() {
        let e = parse("{\n  \"domain\": {\"type\": \"disk\", \"radius\": 1.0,}\n}").unwrap_err();
        let m = e.to_string();
        assert!(m.contains("line 2") && m.contains("column"), "{m}");
    }

    #[test]
    fn exact_lambda2_needs_spectrum() {
        let e = parse(r#"{"domain":{"type":"annulus","inner":0.25,"outer":1.0},"lambda2_mode":"exact"}"#).unwrap_err();
        assert!(e.to_string().contains("faber_krahn"));
        let c = parse(r#"{"domain":{"type":"square","side":1.0},"lambda2_mode":"li-yau","nu2_mode":"exact"}"#).unwrap();
        assert_eq!(c.lambda2_mode, Some(Lambda2Mode::LiYau));
        assert_eq!(c.nu2_mode, Nu2Mode::Exact);
    }

    #[test]
    fn method_list_parsing() {
        assert_eq!(parse_methods("bl, explicit").unwrap(), vec![MethodName::Bl, MethodName::Explicit]);
        assert!(parse_methods("bl,nope").is_err());
        let e = parse(r#"{"domain":{"type":"disk","radius":1.0},"methods":[]}"#).unwrap_err();
        assert!(e.to_string().contains("no methods"));
    }

    #[test]
    fn parametric_path_relative_to_config() {
        let dir = std::env::temp_dir().join(format!("courant-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut text = String::new();
        for k in 0..200 {
            let t = 2.0 * PI * k as f64 / 200.0;
            text.push_str(&format!("{} {}\n", t.cos(), 0.5 * t.sin()));
        }
        std::fs::write(dir.join("ellipse.txt"), text).unwrap();
        let c = parse_config_str(r#"{"domain":{"type":"parametric","path":"ellipse.txt"}}"#, &dir).unwrap();
        assert_eq!(c.domain.kind(), "parametric");
        assert_eq!(c.boundary_path, Some(dir.join("ellipse.txt")));
        let e = parse_config_str(r#"{"domain":{"type":"parametric","path":"ellipse.txt","x":1}}"#, &dir).unwrap_err();
        assert!(e.to_string().contains("`x`"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn run_is_deterministic() {
        let c = parse(r#"{"domain":{"type":"square","side":3.141592653589793},"methods":["explicit"]}"#).unwrap();
        let (r, a) = run(&c).unwrap();
        let (_, b) = run(&c).unwrap();
        assert_eq!(a, b);
        assert!((r.best_threshold.unwrap() - 50.33).abs() < 0.01);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["candidates"].as_array().unwrap().last().unwrap()["lambda"], 50.0);
        assert_eq!(v["provenance"]["nu2_mode"], "paper_bound");
    }

    #[test]
    fn text_output() {
        let mut c = RunConfig::new(DomainSpec::Square { side: PI });
        c.output_format = OutputFormat::Text;
        let (_, t) = run(&c).unwrap();
        assert!(t.contains("explicit_counting") && t.contains("50.3"));
    }

    #[test]
    fn sig3_examples() {
        assert_eq!(sig3(50.3334), "50.3");
        assert_eq!(sig3(5.0), "5.00");
        assert_eq!(sig3(0.125), "0.125");
        assert_eq!(sig3(2.089e7), "2.09e7");
        assert_eq!(sig3(0.0), "0.00");
    }
}
