//! Upper bounds for Courant-sharp Dirichlet eigenvalues: the Safarov and
//! van den Berg–Lianantonakis routes, their closed-form corollaries, and
//! thresholds from explicit counting bounds for model domains.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{invariants_of, CurvatureConvention, DomainSpec, GeometricInvariants};
use crate::specfun::{clamped_beam_nu, dimensional_constants, lambda_unit_disk, Nu2Mode};
use crate::spectra::{
    explicit_spectrum, first_eigenvalues, has_explicit_spectrum, lambda2, model_counting_bound, CountingBound,
    Lambda2Mode, SPECTRUM_CEILING,
};

/// (λ(𝔻₁) − 4π) / (4π λ(𝔻₁)), the coefficient of μ in f_Ω and g_Ω.
pub fn leading_coefficient() -> f64 {
    static A: OnceLock<f64> = OnceLock::new();
    *A.get_or_init(|| {
        let ld = lambda_unit_disk();
        let a = (ld - 4.0 * PI) / (4.0 * PI * ld);
        assert!(a > 0.0, "λ(𝔻₁) must exceed 4π");
        a
    })
}

/// Faber-Krahn necessary condition n ≤ |Ω| (λ_n / λ(𝔹₁^d))^{d/2}.
pub fn fk_necessary(n: usize, lambda_n: f64, area: f64, d: u32) -> Result<bool> {
    if n == 0 || !(lambda_n > 0.0) || !(area > 0.0) {
        return Err(Error::Domain(format!("need n ≥ 1, λ > 0, area > 0; got {n}, {lambda_n}, {area}")));
    }
    let lb = dimensional_constants(d)?.lambda_unit_ball;
    Ok(n as f64 <= area * (lambda_n / lb).powf(d as f64 / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SafarovConstants {
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: f64,
    pub nu2: f64,
    pub lambda2_used: f64,
    pub curvature_convention: CurvatureConvention,
}

pub fn safarov_constants(
    inv: &GeometricInvariants,
    lambda2_used: f64,
    nu2: f64,
    convention: CurvatureConvention,
) -> Result<SafarovConstants> {
    if inv.dim != 2 || inv.t_plus.is_none() {
        return Err(Error::Eligibility(
            "the Safarov route needs a planar domain with a C² boundary (disk, annulus or parametric)".into(),
        ));
    }
    if !(lambda2_used > 0.0 && nu2 > 0.0) {
        return Err(Error::Domain(format!("λ₂ = {lambda2_used} and ν₂ = {nu2} must be positive")));
    }
    let eps0 = inv.eps0;
    let ell = inv.perimeter;
    let k = convention.factor(inv.kappa_inf);
    let alpha = eps0 * lambda2_used.sqrt();
    let beta1 = (1.0 + eps0 * k) * alpha * ell / (4.0 * PI);
    let beta2 = nu2 * nu2 / (PI * PI) * (1.0 + nu2 / alpha);
    let beta3 = beta2 * ell / 2.0;
    let beta4 = beta1 + beta2 * (inv.area / eps0 + ell * eps0 * k);
    Ok(SafarovConstants { alpha, beta1, beta2, beta3, beta4, nu2, lambda2_used, curvature_convention: convention })
}

/// R̄(λ) = β₃ √λ ln(λ/λ₂) + β₄ √λ for λ > λ₂.
pub fn safarov_remainder(c: &SafarovConstants, lam: f64) -> Result<f64> {
    if !(lam > c.lambda2_used) {
        return Err(Error::Validity(format!("remainder bound needs λ > λ₂ = {}, got {lam}", c.lambda2_used)));
    }
    let s = lam.sqrt();
    Ok(c.beta3 * s * (lam / c.lambda2_used).ln() + c.beta4 * s)
}

/// f_Ω(μ) = A|Ω|μ − β₃ √μ ln(μ/λ₂) − β₄ √μ + 1.
pub fn f_omega(inv: &GeometricInvariants, c: &SafarovConstants, mu: f64) -> f64 {
    let s = mu.sqrt();
    leading_coefficient() * inv.area * mu - c.beta3 * s * (mu / c.lambda2_used).ln() - c.beta4 * s + 1.0
}

/// g_Ω(μ) = A|Ω|μ − 3D(Ω) √μ ln(2|Ω|μ) + 1.
pub fn g_omega(inv: &GeometricInvariants, mu: f64) -> f64 {
    leading_coefficient() * inv.area * mu - 3.0 * inv.d_omega * mu.sqrt() * (2.0 * inv.area * mu).ln() + 1.0
}

/// h(x) = a x² − b x ln x − c x + e with a > 0 and b ≥ 0; convex for x > b/2a.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogQuadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
}

impl LogQuadratic {
    fn h(&self, x: f64) -> f64 {
        self.a * x * x - self.b * x * x.ln() - self.c * x + self.e
    }

    fn dh(&self, x: f64) -> f64 {
        2.0 * self.a * x - self.b * x.ln() - self.b - self.c
    }

    /// The largest x ≥ `x_lo` with h(x) ≤ 0, as the upper end of a tight
    /// bracket (so h is positive there and beyond); `None` when h > 0 on
    /// all of [x_lo, ∞).
    pub(crate) fn largest_zero(&self, x_lo: f64) -> Option<f64> {
        debug_assert!(self.a > 0.0 && self.b >= 0.0 && x_lo > 0.0);
        let x0 = x_lo.max(self.b / (2.0 * self.a));

        // minimiser of h on the convex part
        let xm = if self.dh(x0) >= 0.0 {
            x0
        } else {
            let mut hi = 2.0 * x0;
            while self.dh(hi) < 0.0 {
                hi *= 2.0;
            }
            bisect_sign(|x| self.dh(x), hi / 2.0, hi, false)
        };
        let hm = self.h(xm);

        if hm <= 0.0 {
            let (mut lo, mut hi) = (xm, 2.0 * xm);
            while self.h(hi) <= 0.0 {
                lo = hi;
                hi *= 2.0;
            }
            return Some(bisect_sign(|x| self.h(x), lo, hi, true));
        }
        // concave part: h(x0) > 0, so at most one crossing
        if x_lo < x0 && self.h(x_lo) <= 0.0 {
            return Some(bisect_sign(|x| self.h(x), x_lo, x0, true));
        }
        None
    }
}

/// Bisection on [lo, hi] with f(lo) ≤ 0 < f(hi), to relative width 1e-13.
/// Returns the upper end if `upper`, else the midpoint.
fn bisect_sign(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, upper: bool) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-13 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if upper {
        hi
    } else {
        0.5 * (lo + hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Safarov,
    SafarovCorollary,
    Bl,
    BlCorollary,
    ExplicitCounting,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Safarov => "safarov",
            Method::SafarovCorollary => "safarov_corollary",
            Method::Bl => "bl",
            Method::BlCorollary => "bl_corollary",
            Method::ExplicitCounting => "explicit_counting",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub method: Method,
    /// Every Courant-sharp eigenvalue is at most this.
    pub threshold: f64,
    pub lambda2_used: f64,
    pub valid: bool,
    pub details: BTreeMap<String, f64>,
}

impl BoundResult {
    fn new(method: Method, threshold: f64, lambda2_used: f64, details: &[(&str, f64)]) -> Self {
        let threshold = threshold.max(lambda2_used);
        BoundResult {
            method,
            threshold,
            lambda2_used,
            valid: threshold.is_finite() && threshold > 0.0,
            details: details.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

fn safarov_details(c: &SafarovConstants) -> [(&'static str, f64); 7] {
    [
        ("alpha", c.alpha),
        ("beta1", c.beta1),
        ("beta2", c.beta2),
        ("beta3", c.beta3),
        ("beta4", c.beta4),
        ("nu2", c.nu2),
        ("lambda2", c.lambda2_used),
    ]
}

/// β_S = max(λ₂, sup{μ > λ₂ : f_Ω(μ) ≤ 0}).
pub fn beta_s(inv: &GeometricInvariants, c: &SafarovConstants) -> BoundResult {
    let l2 = c.lambda2_used;
    let h = LogQuadratic {
        a: leading_coefficient() * inv.area,
        b: 2.0 * c.beta3,
        c: c.beta4 - c.beta3 * l2.ln(),
        e: 1.0,
    };
    let root = h.largest_zero(l2.sqrt()).map_or(l2, |x| x * x);
    let mut details = safarov_details(c).to_vec();
    details.push(("root", root));
    BoundResult::new(Method::Safarov, root, l2, &details)
}

/// max{λ₂, (16π λ(𝔻₁)/(λ(𝔻₁) − 4π))⁴ (β₃ + β₄)⁴ / (|Ω|⁴ λ₂)}.
pub fn corollary_sa(inv: &GeometricInvariants, c: &SafarovConstants) -> BoundResult {
    let ld = lambda_unit_disk();
    let k = 16.0 * PI * ld / (ld - 4.0 * PI);
    let value = (k * (c.beta3 + c.beta4) / inv.area).powi(4) / c.lambda2_used;
    BoundResult::new(Method::SafarovCorollary, value, c.lambda2_used, &safarov_details(c))
}

/// β_B = max(λ₂, largest zero of g_Ω), searched above max(λ₂, 4/|Ω|).
pub fn bl_g_threshold(inv: &GeometricInvariants, lambda2_used: f64) -> Result<BoundResult> {
    check_bl(inv, lambda2_used)?;
    let floor = lambda2_used.max(4.0 / inv.area);
    let h = LogQuadratic {
        a: leading_coefficient() * inv.area,
        b: 6.0 * inv.d_omega,
        c: 3.0 * inv.d_omega * (2.0 * inv.area).ln(),
        e: 1.0,
    };
    let root = h.largest_zero(floor.sqrt()).map_or(floor, |x| x * x);
    Ok(BoundResult::new(
        Method::Bl,
        root,
        lambda2_used,
        &[("d_omega", inv.d_omega), ("search_floor", floor), ("bl_root", root)],
    ))
}

/// 2 (24π λ(𝔻₁)/(λ(𝔻₁) − 4π))⁴ D(Ω)⁴ / |Ω|³, and at least λ₂.
pub fn corollary_eb(inv: &GeometricInvariants, lambda2_used: f64) -> Result<BoundResult> {
    check_bl(inv, lambda2_used)?;
    if 2.0 * inv.area * lambda2_used <= 16.0 {
        return Err(Error::Inapplicable(format!(
            "2|Ω|λ₂ = {} must exceed 16; use a λ₂ at least the Faber-Krahn value",
            2.0 * inv.area * lambda2_used
        )));
    }
    let ld = lambda_unit_disk();
    let k = 24.0 * PI * ld / (ld - 4.0 * PI);
    let value = 2.0 * (k * inv.d_omega).powi(4) / inv.area.powi(3);
    Ok(BoundResult::new(Method::BlCorollary, value, lambda2_used, &[("d_omega", inv.d_omega)]))
}

fn check_bl(inv: &GeometricInvariants, lambda2_used: f64) -> Result<()> {
    if inv.dim != 2 {
        return Err(Error::Inapplicable("the van den Berg–Lianantonakis route is planar only".into()));
    }
    if !(inv.d_omega.is_finite() && inv.d_omega > 0.0) {
        return Err(Error::Inapplicable(format!("D(Ω) = {} is not finite and positive", inv.d_omega)));
    }
    if !(lambda2_used > 0.0) {
        return Err(Error::Domain(format!("λ₂ = {lambda2_used} must be positive")));
    }
    Ok(())
}

const EXPLICIT_SCAN_POINTS: usize = 20_000;

/// Largest λ with cb(λ) + 1 ≤ |Ω| (λ/λ(𝔹₁^d))^{d/2}; every Courant-sharp
/// eigenvalue lies below it or below the bound's validity threshold.
pub fn explicit_threshold(cb: &CountingBound, area: f64, lambda2_used: f64) -> Result<BoundResult> {
    if cb.b_log != 0.0 {
        return Err(Error::Inapplicable("explicit thresholds need a bound without a logarithmic term".into()));
    }
    let d = cb.d as f64;
    let lb = dimensional_constants(cb.d)?.lambda_unit_ball;
    let lead = cb.a - area / lb.powf(d / 2.0);
    if !(lead > 0.0) {
        return Err(Error::Inapplicable(format!(
            "leading coefficient A − |Ω|/λ(𝔹₁)^{{d/2}} = {lead} is not positive"
        )));
    }
    let excess = |lam: f64| cb.evaluate_unchecked(lam) + 1.0 - area * (lam / lb).powf(d / 2.0);

    let root = if cb.d == 2 && cb.extra.is_none() {
        // lead x² − B x + (E + 1) = 0 with x = √λ
        let disc = cb.b_plain * cb.b_plain - 4.0 * lead * (cb.e + 1.0);
        (disc >= 0.0).then(|| ((cb.b_plain + disc.sqrt()) / (2.0 * lead)).powi(2))
    } else {
        last_zero_scan(&excess, cb, lead)
    };
    let threshold = root.unwrap_or(0.0).max(cb.validity_from);
    let mut details = vec![("leading_coefficient", lead), ("validity_from", cb.validity_from)];
    if let Some(r) = root {
        details.push(("root", r));
    }
    Ok(BoundResult::new(Method::ExplicitCounting, threshold, lambda2_used, &details))
}

/// Last zero of `f` beyond `cb.validity_from` via a log-grid scan and bisection.
fn last_zero_scan(f: &impl Fn(f64) -> f64, cb: &CountingBound, lead: f64) -> Option<f64> {
    let extra_coeff = match cb.extra {
        Some(crate::spectra::ExtraTerm::ShiftedSqrt { coeff, .. }) => coeff.abs(),
        None => 0.0,
    };
    // for λ ≥ 1 the leading term dominates once √λ exceeds this
    let s = (cb.b_plain + extra_coeff + (cb.e + 1.0).abs()) / lead;
    let lo = cb.validity_from.max(f64::MIN_POSITIVE);
    let hi = (1.01 * s * s).max(1.0).max(2.0 * lo);
    let ratio = (hi / lo).ln() / (EXPLICIT_SCAN_POINTS - 1) as f64;
    let grid = |k: usize| lo * (ratio * k as f64).exp();
    let last_nonpositive = (0..EXPLICIT_SCAN_POINTS).rev().find(|&k| f(grid(k)) <= 0.0)?;
    let a = grid(last_nonpositive);
    let b = grid(last_nonpositive + 1);
    Some(bisect_sign(f, a, b, true))
}

/// Which methods a report runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodSet {
    pub safarov: bool,
    pub bl: bool,
    pub corollaries: bool,
    pub explicit: bool,
}

impl MethodSet {
    pub const ALL: MethodSet = MethodSet { safarov: true, bl: true, corollaries: true, explicit: true };
    pub const NONE: MethodSet = MethodSet { safarov: false, bl: false, corollaries: false, explicit: false };

    pub fn is_empty(&self) -> bool {
        *self == Self::NONE
    }
}

impl Default for MethodSet {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ReportOptions {
    pub methods: MethodSet,
    /// `None` picks exact when the spectrum is explicit, else Faber-Krahn.
    pub lambda2_mode: Option<Lambda2Mode>,
    pub nu2_mode: Nu2Mode,
    pub convention: CurvatureConvention,
    /// Upper cap on the listed eigenvalues.
    pub lambda_list_max: Option<f64>,
}

/// Methods that can run on a domain.
pub fn applicable_methods(domain: &DomainSpec) -> MethodSet {
    let planar = domain.dimension() == 2;
    MethodSet {
        safarov: planar && domain.is_c2(),
        bl: planar,
        corollaries: planar,
        explicit: model_counting_bound(domain).is_some(),
    }
}

pub fn default_lambda2_mode(domain: &DomainSpec) -> Lambda2Mode {
    if has_explicit_spectrum(domain) {
        Lambda2Mode::Exact
    } else {
        Lambda2Mode::FaberKrahn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub n: usize,
    pub lambda: f64,
    pub passes_fk: bool,
}

/// λ₁ and λ₂, always Courant-sharp; values only when the spectrum is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpEigenvalue {
    pub n: usize,
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CourantSharpReport {
    pub domain: DomainSpec,
    pub invariants: GeometricInvariants,
    pub lambda2_mode: Lambda2Mode,
    pub lambda2_used: f64,
    pub nu2_mode: Nu2Mode,
    pub nu2: f64,
    pub curvature_convention: CurvatureConvention,
    pub bounds: Vec<BoundResult>,
    pub best_threshold: Option<f64>,
    pub best_method: Option<Method>,
    pub candidates: Option<Vec<Candidate>>,
    pub always_sharp: [SharpEigenvalue; 2],
    pub status: String,
}

impl CourantSharpReport {
    pub fn bound(&self, method: Method) -> Option<&BoundResult> {
        self.bounds.iter().find(|b| b.method == method)
    }
}

pub fn courant_sharp_report(domain: &DomainSpec, options: &ReportOptions) -> Result<CourantSharpReport> {
    let inv = invariants_of(domain)?;
    let mode = options.lambda2_mode.unwrap_or_else(|| default_lambda2_mode(domain));
    let l2 = lambda2(domain, mode)?;
    let nu2 = clamped_beam_nu(options.nu2_mode);
    let can = applicable_methods(domain);
    let want = options.methods;

    let mut bounds = Vec::new();
    if can.safarov && (want.safarov || want.corollaries) {
        let c = safarov_constants(&inv, l2, nu2, options.convention)?;
        if want.safarov {
            bounds.push(beta_s(&inv, &c));
        }
        if want.corollaries {
            bounds.push(corollary_sa(&inv, &c));
        }
    }
    if can.bl && want.bl {
        bounds.push(bl_g_threshold(&inv, l2)?);
    }
    if can.corollaries && want.corollaries {
        bounds.push(corollary_eb(&inv, l2)?);
    }
    if want.explicit {
        if let Some(cb) = model_counting_bound(domain) {
            bounds.push(explicit_threshold(&cb, inv.area, l2)?);
        }
    }

    let best = bounds
        .iter()
        .filter(|b| b.valid)
        .min_by(|a, b| a.threshold.total_cmp(&b.threshold).then(a.method.cmp(&b.method)));
    let best_threshold = best.map(|b| b.threshold);
    let best_method = best.map(|b| b.method);

    let mut status = String::from("ok");
    if bounds.is_empty() {
        status = format!("no selected method applies to a {} domain", domain.kind());
    }

    let explicit = has_explicit_spectrum(domain);
    let mut always_sharp = [SharpEigenvalue { n: 1, lambda: None }, SharpEigenvalue { n: 2, lambda: None }];
    let mut candidates = None;
    if explicit {
        let first = first_eigenvalues(domain, 2)?;
        always_sharp[0].lambda = Some(first[0]);
        always_sharp[1].lambda = Some(first[1]);
        if let Some(t) = best_threshold {
            let cap = options.lambda_list_max.map_or(t, |m| m.min(t));
            if cap > SPECTRUM_CEILING {
                status = format!(
                    "candidate enumeration skipped: {} exceeds the spectrum ceiling {SPECTRUM_CEILING}",
                    cap
                );
            } else {
                let list = explicit_spectrum(domain, cap.next_up())?;
                let d = inv.dim;
                candidates = Some(
                    list.values
                        .iter()
                        .enumerate()
                        .map(|(i, &lambda)| {
                            Ok(Candidate { n: i + 1, lambda, passes_fk: fk_necessary(i + 1, lambda, inv.area, d)? })
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
    }

    Ok(CourantSharpReport {
        domain: domain.clone(),
        invariants: inv,
        lambda2_mode: mode,
        lambda2_used: l2,
        nu2_mode: options.nu2_mode,
        nu2,
        curvature_convention: options.convention,
        bounds,
        best_threshold,
        best_method,
        candidates,
        always_sharp,
        status,
    })
}
