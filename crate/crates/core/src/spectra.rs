//! Explicit Dirichlet spectra of model domains, λ₂ values and lower bounds,
//! and explicit lower bounds for the counting function.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{invariants_of, DomainSpec};
use crate::specfun::{self, bessel_j_zero, unit_ball_volume};

/// Largest enumeration ceiling accepted by [`explicit_spectrum`] and
/// [`counting_exact`].
pub const SPECTRUM_CEILING: f64 = 1e6;

/// Eigenvalues below `lambda_max`, nondecreasing, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueList {
    pub values: Vec<f64>,
    pub lambda_max: f64,
    pub domain: DomainSpec,
}

impl EigenvalueList {
    /// λ_n, 1-based.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

pub fn has_explicit_spectrum(domain: &DomainSpec) -> bool {
    matches!(
        domain,
        DomainSpec::Disk { .. }
            | DomainSpec::Rectangle { .. }
            | DomainSpec::Square { .. }
            | DomainSpec::RightIsoscelesTriangle { .. }
            | DomainSpec::Cube { .. }
    )
}

fn check_ceiling(domain: &DomainSpec, lam: f64) -> Result<()> {
    domain.validate()?;
    if !has_explicit_spectrum(domain) {
        return Err(Error::UnsupportedSpectrum(domain.kind().into()));
    }
    if !(lam > 0.0 && lam <= SPECTRUM_CEILING) {
        return Err(Error::Domain(format!("λ = {lam} outside (0, {SPECTRUM_CEILING}]")));
    }
    Ok(())
}

/// Lattice description of the spectra that are sums of squares:
/// `scale · Σ (k_i / w_i)²` over the admissible index tuples.
enum Lattice {
    /// m²/a² + n²/b², m, n ≥ 1.
    Rectangle { a: f64, b: f64 },
    /// scale·(m² + n²), m > n ≥ 1.
    Triangle { scale: f64 },
    /// scale·(l² + m² + n²), l, m, n ≥ 1.
    Cube { scale: f64 },
}

fn lattice_of(domain: &DomainSpec) -> Option<Lattice> {
    match *domain {
        DomainSpec::Rectangle { a, b } => Some(Lattice::Rectangle { a, b }),
        DomainSpec::Square { side } => Some(Lattice::Rectangle { a: side / PI, b: side / PI }),
        DomainSpec::RightIsoscelesTriangle { leg } => Some(Lattice::Triangle { scale: (PI / leg).powi(2) }),
        DomainSpec::Cube { side } => Some(Lattice::Cube { scale: (PI / side).powi(2) }),
        _ => None,
    }
}

impl Lattice {
    /// Calls `f` with every eigenvalue strictly below `lam`.
    fn for_each_below(&self, lam: f64, mut f: impl FnMut(f64)) {
        match *self {
            Lattice::Rectangle { a, b } => {
                let mut m = 1u64;
                loop {
                    let x = (m * m) as f64 / (a * a);
                    if x + 1.0 / (b * b) >= lam {
                        break;
                    }
                    let mut n = 1u64;
                    loop {
                        let v = x + (n * n) as f64 / (b * b);
                        if v >= lam {
                            break;
                        }
                        f(v);
                        n += 1;
                    }
                    m += 1;
                }
            }
            Lattice::Triangle { scale } => {
                let mut n = 1u64;
                while scale * (((n + 1) * (n + 1) + n * n) as f64) < lam {
                    let mut m = n + 1;
                    loop {
                        let v = scale * (m * m + n * n) as f64;
                        if v >= lam {
                            break;
                        }
                        f(v);
                        m += 1;
                    }
                    n += 1;
                }
            }
            Lattice::Cube { scale } => {
                let mut l = 1u64;
                while scale * ((l * l + 2) as f64) < lam {
                    let mut m = 1u64;
                    while scale * ((l * l + m * m + 1) as f64) < lam {
                        let mut n = 1u64;
                        loop {
                            let v = scale * (l * l + m * m + n * n) as f64;
                            if v >= lam {
                                break;
                            }
                            f(v);
                            n += 1;
                        }
                        m += 1;
                    }
                    l += 1;
                }
            }
        }
    }

    fn count_below(&self, lam: f64) -> u64 {
        let mut count = 0;
        self.for_each_below(lam, |_| count += 1);
        count
    }
}

/// Disk eigenvalues (j_{m,k}/r)² below `lam`, each with its multiplicity.
fn disk_eigenvalues(radius: f64, lam: f64) -> Vec<(f64, usize)> {
    let tables = specfun::integer_order_zeros_below(radius * lam.sqrt());
    tables
        .iter()
        .enumerate()
        .flat_map(|(m, zeros)| {
            let mult = if m == 0 { 1 } else { 2 };
            zeros.iter().map(move |z| ((z / radius).powi(2), mult))
        })
        .filter(|&(v, _)| v < lam)
        .collect()
}

/// All eigenvalues strictly below `lambda_max` for domains with a known
/// spectrum.
pub fn explicit_spectrum(domain: &DomainSpec, lambda_max: f64) -> Result<EigenvalueList> {
    check_ceiling(domain, lambda_max)?;
    let mut values = Vec::new();
    match (domain, lattice_of(domain)) {
        (_, Some(lattice)) => lattice.for_each_below(lambda_max, |v| values.push(v)),
        (DomainSpec::Disk { radius }, None) => {
            for (v, mult) in disk_eigenvalues(*radius, lambda_max) {
                values.extend(std::iter::repeat_n(v, mult));
            }
        }
        _ => unreachable!("checked by has_explicit_spectrum"),
    }
    values.sort_by(f64::total_cmp);
    Ok(EigenvalueList { values, lambda_max, domain: domain.clone() })
}

/// N(λ) = #{j : λ_j < λ}.
pub fn counting_exact(domain: &DomainSpec, lam: f64) -> Result<u64> {
    check_ceiling(domain, lam)?;
    Ok(match (domain, lattice_of(domain)) {
        (_, Some(lattice)) => lattice.count_below(lam),
        (DomainSpec::Disk { radius }, None) => {
            disk_eigenvalues(*radius, lam).iter().map(|&(_, m)| m as u64).sum()
        }
        _ => unreachable!("checked by has_explicit_spectrum"),
    })
}

/// The first `n` eigenvalues, enlarging the enumeration window as needed.
pub fn first_eigenvalues(domain: &DomainSpec, n: usize) -> Result<Vec<f64>> {
    let mut lam = 4.0 * lambda2(domain, Lambda2Mode::FaberKrahn)?;
    loop {
        let lam_capped = lam.min(SPECTRUM_CEILING);
        let list = explicit_spectrum(domain, lam_capped)?;
        if list.values.len() >= n {
            return Ok(list.values[..n].to_vec());
        }
        if lam_capped >= SPECTRUM_CEILING {
            return Err(Error::Domain(format!("fewer than {n} eigenvalues below {SPECTRUM_CEILING}")));
        }
        lam *= 2.0;
    }
}

/// Source of the value used for λ₂(Ω).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda2Mode {
    Exact,
    /// (2ω_d)^{2/d} |Ω|^{-2/d} j²_{d/2-1,1}.
    #[serde(alias = "faber-krahn")]
    FaberKrahn,
    /// d/(d+2) · 4π² 2^{2/d} / (ω_d |Ω|)^{2/d}.
    #[serde(alias = "li-yau")]
    LiYau,
}

pub fn lambda2(domain: &DomainSpec, mode: Lambda2Mode) -> Result<f64> {
    let inv = invariants_of(domain)?;
    let d = inv.dim as f64;
    let omega = unit_ball_volume(inv.dim);
    match mode {
        Lambda2Mode::Exact => {
            if !has_explicit_spectrum(domain) {
                return Err(Error::UnsupportedSpectrum(domain.kind().into()));
            }
            Ok(first_eigenvalues(domain, 2)?[1])
        }
        Lambda2Mode::FaberKrahn => {
            let j = bessel_j_zero(d / 2.0 - 1.0, 1)?;
            Ok((2.0 * omega).powf(2.0 / d) * inv.area.powf(-2.0 / d) * j * j)
        }
        Lambda2Mode::LiYau => {
            Ok(d / (d + 2.0) * 4.0 * PI * PI * 2f64.powf(2.0 / d) / (omega * inv.area).powf(2.0 / d))
        }
    }
}

/// A term c·√(λ − s) appearing in the cube bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtraTerm {
    ShiftedSqrt { coeff: f64, shift: f64 },
}

impl ExtraTerm {
    fn eval(&self, lam: f64) -> f64 {
        match *self {
            ExtraTerm::ShiftedSqrt { coeff, shift } => coeff * (lam - shift).max(0.0).sqrt(),
        }
    }

    fn rescaled(&self, t: f64) -> Self {
        match *self {
            ExtraTerm::ShiftedSqrt { coeff, shift } => ExtraTerm::ShiftedSqrt { coeff: coeff * t, shift: shift / (t * t) },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSense {
    LowerBoundOnN,
}

/// N(λ) ≥ A λ^{d/2} − B_log λ^{(d−1)/2} ln(λ/λ_ref) − B_plain λ^{(d−1)/2} + E
/// (+ an optional extra term), valid for λ ≥ `validity_from`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingBound {
    pub d: u32,
    pub a: f64,
    pub b_log: f64,
    pub b_plain: f64,
    pub e: f64,
    pub lambda_ref: f64,
    pub validity_from: f64,
    pub extra: Option<ExtraTerm>,
    /// The inequality is strict.
    pub strict: bool,
    pub sense: BoundSense,
}

impl CountingBound {
    fn polynomial(d: u32, a: f64, b_plain: f64, e: f64, validity_from: f64, strict: bool) -> Self {
        CountingBound {
            d,
            a,
            b_log: 0.0,
            b_plain,
            e,
            lambda_ref: 1.0,
            validity_from,
            extra: None,
            strict,
            sense: BoundSense::LowerBoundOnN,
        }
    }

    pub fn evaluate(&self, lam: f64) -> Result<f64> {
        if !(lam >= self.validity_from) {
            return Err(Error::Validity(format!(
                "counting bound evaluated at λ = {lam} below its validity threshold {}",
                self.validity_from
            )));
        }
        Ok(self.evaluate_unchecked(lam))
    }

    pub(crate) fn evaluate_unchecked(&self, lam: f64) -> f64 {
        let d = self.d as f64;
        let lower = lam.powf((d - 1.0) / 2.0);
        let mut v = self.a * lam.powf(d / 2.0) - self.b_plain * lower + self.e;
        if self.b_log != 0.0 {
            v -= self.b_log * lower * (lam / self.lambda_ref).ln();
        }
        if let Some(x) = self.extra {
            v += x.eval(lam);
        }
        v
    }

    /// The same bound for the domain dilated by `t`, using N_{tΩ}(λ) = N_Ω(t²λ).
    pub fn rescaled(&self, t: f64) -> Self {
        let d = self.d as f64;
        CountingBound {
            a: self.a * t.powf(d),
            b_log: self.b_log * t.powf(d - 1.0),
            b_plain: self.b_plain * t.powf(d - 1.0),
            lambda_ref: self.lambda_ref / (t * t),
            validity_from: self.validity_from / (t * t),
            extra: self.extra.map(|x| x.rescaled(t)),
            ..*self
        }
    }
}

/// Rectangle (0, aπ) × (0, bπ): N > |R|λ/4π − |∂R|√λ/2π + 1 for λ ≥ 1/a² + 1/b².
pub fn counting_lower_rectangle(a: f64, b: f64) -> Result<CountingBound> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("rectangle parameters {a}, {b} must be positive")));
    }
    let area = a * b * PI * PI;
    let perimeter = 2.0 * PI * (a + b);
    Ok(CountingBound::polynomial(
        2,
        area / (4.0 * PI),
        perimeter / (2.0 * PI),
        1.0,
        1.0 / (a * a) + 1.0 / (b * b),
        true,
    ))
}

/// Equilateral triangle of side 1. Below its first eigenvalue 16π²/3 the
/// right-hand side tends to 1 while N vanishes, so validity starts there.
pub fn counting_lower_equilateral() -> CountingBound {
    CountingBound::polynomial(2, 3f64.sqrt() / (16.0 * PI), 3.0 / (2.0 * PI), 1.0, 16.0 * PI * PI / 3.0, false)
}

/// Right isosceles triangle {0 < y < x < π}; validity from its first
/// eigenvalue 5.
pub fn counting_lower_right_isosceles() -> CountingBound {
    CountingBound::polynomial(2, PI / 8.0, (4.0 + 2f64.sqrt()) / 4.0, -0.5, 5.0, false)
}

/// Cube (0, π)³: N > π/6 λ^{3/2} − 3π/4 λ + 3√(λ − 2) − 1 for λ ≥ 3.
pub fn counting_lower_cube() -> CountingBound {
    CountingBound {
        extra: Some(ExtraTerm::ShiftedSqrt { coeff: 3.0, shift: 2.0 }),
        ..CountingBound::polynomial(3, PI / 6.0, 3.0 * PI / 4.0, -1.0, 3.0, true)
    }
}

/// The explicit counting bound attached to a model domain, rescaled to its
/// size, if one exists.
pub fn model_counting_bound(domain: &DomainSpec) -> Option<CountingBound> {
    match *domain {
        DomainSpec::Rectangle { a, b } => counting_lower_rectangle(a, b).ok(),
        DomainSpec::Square { side } => counting_lower_rectangle(side / PI, side / PI).ok(),
        DomainSpec::EquilateralTriangle { side } => Some(counting_lower_equilateral().rescaled(side)),
        DomainSpec::RightIsoscelesTriangle { leg } => Some(counting_lower_right_isosceles().rescaled(leg / PI)),
        DomainSpec::Cube { side } => Some(counting_lower_cube().rescaled(side / PI)),
        _ => None,
    }
}

/// Second Weyl term −|∂Ω| √λ / 4π.
pub fn weyl_second_term(perimeter: f64, lam: f64) -> f64 {
    -perimeter * lam.sqrt() / (4.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: DomainSpec = DomainSpec::Square { side: PI };
    const CUBE: DomainSpec = DomainSpec::Cube { side: PI };
    const TRIANGLE: DomainSpec = DomainSpec::RightIsoscelesTriangle { leg: PI };

    fn brute_square(lam: f64) -> u64 {
        let mut c = 0;
        for m in 1..1000u64 {
            for n in 1..1000u64 {
                if ((m * m + n * n) as f64) < lam {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(explicit_spectrum(&SQUARE, 6.0).unwrap().values, vec![2.0, 5.0, 5.0]);
        assert_eq!(explicit_spectrum(&CUBE, 7.0).unwrap().values, vec![3.0, 6.0, 6.0, 6.0]);
        let disk = explicit_spectrum(&DomainSpec::Disk { radius: 1.0 }, 16.0).unwrap();
        let j01 = bessel_j_zero(0.0, 1).unwrap();
        let j11 = bessel_j_zero(1.0, 1).unwrap();
        assert_eq!(disk.values.len(), 3);
        assert!((disk.values[0] - j01 * j01).abs() < 1e-9);
        assert!((disk.values[1] - j11 * j11).abs() < 1e-9);
        assert_eq!(disk.values[1], disk.values[2]);
        assert!((disk.values[1] - 14.682).abs() < 1e-3);
        assert_eq!(explicit_spectrum(&TRIANGLE, 11.0).unwrap().values, vec![5.0, 10.0]);
    }

    #[test]
    fn spectrum_is_sorted_and_complete() {
        let list = explicit_spectrum(&DomainSpec::Rectangle { a: 1.0, b: 0.7 }, 200.0).unwrap();
        assert!(list.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(list.values.iter().all(|&v| v < 200.0));
        let mut brute = 0;
        for m in 1..50u32 {
            for n in 1..50u32 {
                if (m * m) as f64 + (n * n) as f64 / 0.49 < 200.0 {
                    brute += 1;
                }
            }
        }
        assert_eq!(list.values.len(), brute);
    }

    #[test]
    fn unsupported_spectra() {
        for d in [
            DomainSpec::Annulus { inner: 0.5, outer: 1.0 },
            DomainSpec::EquilateralTriangle { side: 1.0 },
        ] {
            assert!(matches!(explicit_spectrum(&d, 10.0), Err(Error::UnsupportedSpectrum(_))));
            assert!(counting_exact(&d, 10.0).is_err());
            assert!(lambda2(&d, Lambda2Mode::Exact).is_err());
        }
        assert!(explicit_spectrum(&SQUARE, 2e6).is_err());
    }

    #[test]
    fn counting_examples() {
        assert_eq!(counting_exact(&SQUARE, 50.0).unwrap(), 30);
        assert_eq!(brute_square(50.0), 30);
        assert_eq!(counting_exact(&SQUARE, 2.0).unwrap(), 0);
        assert_eq!(counting_exact(&CUBE, 3.5).unwrap(), 1);
        assert_eq!(counting_exact(&TRIANGLE, 50.0).unwrap(), 13);
        for lam in [3.0, 17.5, 100.0, 1234.5] {
            assert_eq!(counting_exact(&SQUARE, lam).unwrap(), brute_square(lam));
        }
    }

    #[test]
    fn counting_consistent_with_spectrum() {
        for d in [SQUARE, CUBE, TRIANGLE, DomainSpec::Disk { radius: 1.0 }] {
            let list = explicit_spectrum(&d, 400.0).unwrap();
            for n in 1..list.values.len() {
                let (lo, hi) = (list.values[n - 1], list.values[n]);
                if lo < hi {
                    // N(λ) = n for λ_n < λ ≤ λ_{n+1}
                    assert_eq!(counting_exact(&d, hi).unwrap(), n as u64, "{d:?}");
                    assert_eq!(counting_exact(&d, 0.5 * (lo + hi)).unwrap(), n as u64);
                }
            }
        }
    }

    #[test]
    fn disk_count_matches_spectrum_length() {
        let d = DomainSpec::Disk { radius: 1.0 };
        assert_eq!(counting_exact(&d, 500.0).unwrap() as usize, explicit_spectrum(&d, 500.0).unwrap().values.len());
    }

    #[test]
    fn weyl_limit_for_square() {
        let lam = 1e4;
        let ratio = counting_exact(&SQUARE, lam).unwrap() as f64 / lam;
        let weyl = PI * PI / (4.0 * PI);
        assert!((ratio - weyl).abs() < 0.05 * weyl);
    }

    #[test]
    fn lambda2_modes() {
        assert_eq!(lambda2(&SQUARE, Lambda2Mode::Exact).unwrap(), 5.0);
        let disk = DomainSpec::Disk { radius: 1.0 };
        let j = bessel_j_zero(0.0, 1).unwrap();
        let exact = lambda2(&disk, Lambda2Mode::Exact).unwrap();
        let fk = lambda2(&disk, Lambda2Mode::FaberKrahn).unwrap();
        assert!((fk - 2.0 * j * j).abs() < 1e-12);
        assert!((fk - 11.566).abs() < 1e-3);
        let ly = lambda2(&disk, Lambda2Mode::LiYau).unwrap();
        assert!((ly - 4.0).abs() < 1e-12);
        assert!(fk <= exact && ly <= exact);
        for d in [SQUARE, CUBE, TRIANGLE, DomainSpec::Rectangle { a: 1.0, b: 3.0 }] {
            let ex = lambda2(&d, Lambda2Mode::Exact).unwrap();
            assert!(lambda2(&d, Lambda2Mode::FaberKrahn).unwrap() <= ex, "{d:?}");
            assert!(lambda2(&d, Lambda2Mode::LiYau).unwrap() <= ex, "{d:?}");
        }
        assert_eq!(lambda2(&CUBE, Lambda2Mode::Exact).unwrap(), 6.0);
        assert_eq!(lambda2(&TRIANGLE, Lambda2Mode::Exact).unwrap(), 10.0);
    }

    #[test]
    fn li_yau_floor_dominates_bl_condition() {
        for d in 1..=20u32 {
            let df = d as f64;
            let v = df / (df + 2.0) * PI * 2f64.powf(2.0 / df) * specfun::gamma(df / 2.0 + 1.0).powf(2.0 / df);
            assert!(v >= 1.0, "d={d}: {v}");
        }
        let j = bessel_j_zero(0.0, 1).unwrap();
        assert!(2.0 * PI * j * j > 4.0);
    }

    #[test]
    fn rectangle_bound_examples() {
        let b = counting_lower_rectangle(1.0, 1.0).unwrap();
        assert!((b.a - PI / 4.0).abs() < 1e-15);
        assert_eq!((b.b_plain, b.e, b.validity_from), (2.0, 1.0, 2.0));
        // twice the Weyl second-term coefficient |∂R|/4π
        assert!((b.b_plain - 2.0 * (4.0 * PI) / (4.0 * PI)).abs() < 1e-15);
        let v = b.evaluate(50.0).unwrap();
        assert!((v - (PI / 4.0 * 50.0 - 2.0 * 50f64.sqrt() + 1.0)).abs() < 1e-12);
        assert!((v - 26.13).abs() < 0.01);
        assert!(v < counting_exact(&SQUARE, 50.0).unwrap() as f64);
        assert!(matches!(b.evaluate(1.5), Err(Error::Validity(_))));
        assert!(counting_lower_rectangle(0.0, 1.0).is_err());
    }

    #[test]
    fn triangle_bounds() {
        let t = counting_lower_equilateral();
        assert!((t.a - 3f64.sqrt() / (16.0 * PI)).abs() < 1e-16);
        assert!((t.b_plain - 2.0 * 3.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(t.e, 1.0);
        assert!(t.evaluate(16.0 * PI * PI / 3.0).unwrap() < 0.0);

        let b = counting_lower_right_isosceles();
        assert!((b.a - PI / 8.0).abs() < 1e-16);
        assert!((b.b_plain - (4.0 + 2f64.sqrt()) / 4.0).abs() < 1e-16);
        assert_eq!(b.e, -0.5);
        let v = b.evaluate(50.0).unwrap();
        assert!((v - 9.56).abs() < 0.01);
        assert!(v <= counting_exact(&TRIANGLE, 50.0).unwrap() as f64);
        let v = b.evaluate(5.0).unwrap();
        assert!((v + 1.56).abs() < 0.01);
    }

    #[test]
    fn cube_bound() {
        let c = counting_lower_cube();
        let at3 = c.evaluate(3.0).unwrap();
        let want = PI / 6.0 * 3f64.powf(1.5) - 9.0 * PI / 4.0 + 3.0 - 1.0;
        assert!((at3 - want).abs() < 1e-12 && (at3 + 2.35).abs() < 0.01);
        assert!(c.evaluate(100.0).unwrap() < counting_exact(&CUBE, 100.0).unwrap() as f64);
        assert!(matches!(c.evaluate(2.9), Err(Error::Validity(_))));
    }

    #[test]
    fn rescaling_matches_direct_constructor() {
        let direct = counting_lower_rectangle(2.0, 2.0).unwrap();
        let scaled = counting_lower_rectangle(1.0, 1.0).unwrap().rescaled(2.0);
        for lam in [1.0, 7.0, 300.0] {
            assert!((direct.evaluate(lam).unwrap() - scaled.evaluate(lam).unwrap()).abs() < 1e-10);
        }
        // cube of side 2π against the side-π bound at 4λ
        let c = counting_lower_cube();
        let s = c.rescaled(2.0);
        for lam in [1.0, 10.0, 250.0] {
            assert!((s.evaluate(lam).unwrap() - c.evaluate(4.0 * lam).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn weyl_second_term_examples() {
        assert!((weyl_second_term(4.0 * PI, 100.0) + 10.0).abs() < 1e-14);
        assert_eq!(weyl_second_term(2.0 * PI, 0.0), 0.0);
        assert!((weyl_second_term(3.0, 16.0) + 3.0 / PI).abs() < 1e-15);
    }
}
