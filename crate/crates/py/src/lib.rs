use std::path::PathBuf;

use courant_core::bounds::{self, ReportOptions};
use courant_core::config::{self, RunConfig};
use courant_core::geometry::{self, BoundaryCurve, CurvatureConvention, DomainSpec};
use courant_core::specfun::{self, Nu2Mode};
use courant_core::spectra::{self, Lambda2Mode};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: courant_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn nu2_mode(s: &str) -> PyResult<Nu2Mode> {
    match s {
        "paper" | "paper_bound" => Ok(Nu2Mode::PaperBound),
        "exact" => Ok(Nu2Mode::Exact),
        _ => Err(PyValueError::new_err(format!("unknown nu2 mode `{s}`"))),
    }
}

fn lambda2_mode(s: &str) -> PyResult<Lambda2Mode> {
    match s {
        "exact" => Ok(Lambda2Mode::Exact),
        "faber_krahn" | "faber-krahn" => Ok(Lambda2Mode::FaberKrahn),
        "li_yau" | "li-yau" => Ok(Lambda2Mode::LiYau),
        _ => Err(PyValueError::new_err(format!("unknown lambda2 mode `{s}`"))),
    }
}

fn convention(s: &str) -> PyResult<CurvatureConvention> {
    match s {
        "literal" | "literal_abs" => Ok(CurvatureConvention::LiteralAbs),
        "signed" => Ok(CurvatureConvention::Signed),
        _ => Err(PyValueError::new_err(format!("unknown curvature convention `{s}`"))),
    }
}

/// A bounded domain: model shape or sampled boundary.
#[pyclass(module = "courant_bound", frozen)]
struct Domain {
    inner: DomainSpec,
}

fn domain(spec: DomainSpec) -> PyResult<Domain> {
    spec.validate().map_err(err)?;
    Ok(Domain { inner: spec })
}

#[pymethods]
impl Domain {
    #[staticmethod]
    fn disk(radius: f64) -> PyResult<Self> {
        domain(DomainSpec::Disk { radius })
    }

    #[staticmethod]
    fn annulus(inner: f64, outer: f64) -> PyResult<Self> {
        domain(DomainSpec::Annulus { inner, outer })
    }

    /// (0, aπ) × (0, bπ).
    #[staticmethod]
    fn rectangle(a: f64, b: f64) -> PyResult<Self> {
        domain(DomainSpec::Rectangle { a, b })
    }

    #[staticmethod]
    fn square(side: f64) -> PyResult<Self> {
        domain(DomainSpec::Square { side })
    }

    #[staticmethod]
    fn equilateral_triangle(side: f64) -> PyResult<Self> {
        domain(DomainSpec::EquilateralTriangle { side })
    }

    #[staticmethod]
    fn right_isosceles_triangle(leg: f64) -> PyResult<Self> {
        domain(DomainSpec::RightIsoscelesTriangle { leg })
    }

    #[staticmethod]
    fn cube(side: f64) -> PyResult<Self> {
        domain(DomainSpec::Cube { side })
    }

    /// Boundary curves as lists of (x, y); the first is the outer curve.
    #[staticmethod]
    fn parametric(curves: Vec<Vec<(f64, f64)>>) -> PyResult<Self> {
        let curves = curves
            .into_iter()
            .enumerate()
            .map(|(i, pts)| {
                let pts: Vec<[f64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
                let c = BoundaryCurve::from_points(&pts).map_err(err)?;
                let ccw = c.signed_area() > 0.0;
                Ok(if (i == 0) == ccw { c } else { c.reversed() })
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Domain { inner: DomainSpec::parametric(curves).map_err(err)? })
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let curves = geometry::load_curves(&path).map_err(err)?;
        Ok(Domain { inner: DomainSpec::parametric(curves).map_err(err)? })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    #[getter]
    fn dimension(&self) -> u32 {
        self.inner.dimension()
    }

    fn scaled(&self, t: f64) -> PyResult<Self> {
        domain(self.inner.scaled(t))
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &geometry::invariants_of(&self.inner).map_err(err)?)
    }

    fn collar_area(&self, eps: f64) -> PyResult<f64> {
        geometry::collar_area(&self.inner, eps).map_err(err)
    }

    fn d_constant(&self) -> PyResult<f64> {
        geometry::d_constant(&self.inner).map_err(err)
    }

    /// Eigenvalues strictly below `lambda_max`.
    fn spectrum(&self, lambda_max: f64) -> PyResult<Vec<f64>> {
        Ok(spectra::explicit_spectrum(&self.inner, lambda_max).map_err(err)?.values)
    }

    fn counting(&self, lam: f64) -> PyResult<u64> {
        spectra::counting_exact(&self.inner, lam).map_err(err)
    }

    #[pyo3(signature = (mode = "exact"))]
    fn lambda2(&self, mode: &str) -> PyResult<f64> {
        spectra::lambda2(&self.inner, lambda2_mode(mode)?).map_err(err)
    }

    fn counting_bound(&self) -> Option<CountingBound> {
        spectra::model_counting_bound(&self.inner).map(|inner| CountingBound { inner })
    }

    fn __repr__(&self) -> String {
        format!("Domain.{}", self.inner.describe())
    }
}

/// Explicit lower bound N(λ) ≥ … for a model domain.
#[pyclass(module = "courant_bound", frozen)]
struct CountingBound {
    inner: spectra::CountingBound,
}

#[pymethods]
impl CountingBound {
    #[staticmethod]
    fn rectangle(a: f64, b: f64) -> PyResult<Self> {
        Ok(CountingBound { inner: spectra::counting_lower_rectangle(a, b).map_err(err)? })
    }

    #[staticmethod]
    fn equilateral() -> Self {
        CountingBound { inner: spectra::counting_lower_equilateral() }
    }

    #[staticmethod]
    fn right_isosceles() -> Self {
        CountingBound { inner: spectra::counting_lower_right_isosceles() }
    }

    #[staticmethod]
    fn cube() -> Self {
        CountingBound { inner: spectra::counting_lower_cube() }
    }

    #[getter]
    fn validity_from(&self) -> f64 {
        self.inner.validity_from
    }

    fn evaluate(&self, lam: f64) -> PyResult<f64> {
        self.inner.evaluate(lam).map_err(err)
    }

    fn rescaled(&self, t: f64) -> Self {
        CountingBound { inner: self.inner.rescaled(t) }
    }

    fn threshold(&self, area: f64, lambda2: f64) -> PyResult<f64> {
        Ok(bounds::explicit_threshold(&self.inner, area, lambda2).map_err(err)?.threshold)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }
}

#[pyfunction]
fn bessel_j(nu: f64, x: f64) -> PyResult<f64> {
    specfun::bessel_j(nu, x).map_err(err)
}

#[pyfunction]
fn bessel_j_zero(nu: f64, k: usize) -> PyResult<f64> {
    specfun::bessel_j_zero(nu, k).map_err(err)
}

#[pyfunction]
fn pleijel_gamma(d: u32) -> PyResult<f64> {
    specfun::pleijel_gamma(d).map_err(err)
}

#[pyfunction]
fn dimensional_constants<'py>(py: Python<'py>, d: u32) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &specfun::dimensional_constants(d).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (mode = "paper"))]
fn clamped_beam_nu(mode: &str) -> PyResult<f64> {
    Ok(specfun::clamped_beam_nu(nu2_mode(mode)?))
}

#[pyfunction]
fn fk_necessary(n: usize, lambda_n: f64, area: f64, d: u32) -> PyResult<bool> {
    bounds::fk_necessary(n, lambda_n, area, d).map_err(err)
}

/// Runs every applicable method and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (domain, *, methods = None, lambda2 = None, nu2 = "paper", convention = "literal", lambda_list_max = None))]
fn report<'py>(
    py: Python<'py>,
    domain: PyRef<'py, Domain>,
    methods: Option<Vec<String>>,
    lambda2: Option<&str>,
    nu2: &str,
    convention: &str,
    lambda_list_max: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = RunConfig::new(domain.inner.clone());
    if let Some(m) = methods {
        cfg.methods = m.iter().map(|s| config::MethodName::parse(s)).collect::<Result<_, _>>().map_err(err)?;
    }
    cfg.lambda2_mode = lambda2.map(lambda2_mode).transpose()?;
    cfg.nu2_mode = nu2_mode(nu2)?;
    cfg.curvature_convention = self::convention(convention)?;
    cfg.lambda_list_max = lambda_list_max;
    cfg.validate().map_err(err)?;
    let opts: ReportOptions = cfg.report_options();
    let r = py.detach(|| bounds::courant_sharp_report(&cfg.domain, &opts)).map_err(err)?;
    to_py(py, &config::report_json(&r, &cfg))
}

/// Runs a JSON configuration file and returns the rendered output.
#[pyfunction]
fn run_config(py: Python<'_>, path: PathBuf) -> PyResult<String> {
    py.detach(|| {
        let cfg = config::parse_config(&path)?;
        config::run(&cfg).map(|(_, out)| out)
    })
    .map_err(err)
}

#[pymodule]
fn courant_bound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Domain>()?;
    m.add_class::<CountingBound>()?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j_zero, m)?)?;
    m.add_function(wrap_pyfunction!(pleijel_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(dimensional_constants, m)?)?;
    m.add_function(wrap_pyfunction!(clamped_beam_nu, m)?)?;
    m.add_function(wrap_pyfunction!(fk_necessary, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    m.add("SPECTRUM_CEILING", spectra::SPECTRUM_CEILING)?;
    Ok(())
}
