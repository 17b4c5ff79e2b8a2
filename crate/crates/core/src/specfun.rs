//! Special functions and dimensional constants.
//!
//! Bessel functions of the first kind are evaluated by their power series
//! for small arguments and by Miller's backward recurrence otherwise. The
//! recurrence is normalised with the Neumann-type sum
//!
//! ```text
//! (x/2)^φ = Σ_{i≥0} (φ + 2i) Γ(φ + i) / i! · J_{φ+2i}(x),   0 ≤ φ < 1,
//! ```
//!
//! which holds for fractional as well as integer orders.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by the public Bessel routines.
pub const MAX_ORDER: f64 = 10.0;
/// Largest argument accepted by [`bessel_j`].
pub const MAX_ARGUMENT: f64 = 100.0;
/// Largest zero index accepted by [`bessel_j_zero`].
pub const MAX_ZERO_INDEX: usize = 20;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x > 0.0 && x <= 20.0 {
        return (1..x as u64).map(|k| k as f64).product();
    }
    ln_gamma(x).exp()
}

fn check_order(nu: f64) -> Result<()> {
    if !nu.is_finite() || !(0.0..=MAX_ORDER).contains(&nu) {
        return Err(Error::Domain(format!("Bessel order {nu} outside [0, {MAX_ORDER}]")));
    }
    Ok(())
}

/// J_ν(x) for ν ∈ [0, 10] and x ∈ [0, 100].
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !x.is_finite() || !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::Domain(format!("Bessel argument {x} outside [0, {MAX_ARGUMENT}]")));
    }
    Ok(bessel_j_unchecked(nu, x))
}

/// J_ν(x) without range checks. Accurate for moderate ν ≥ 0 and x ≥ 0; the
/// disk spectrum uses it for integer orders well beyond [`MAX_ORDER`].
pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if nu == 0.5 {
        return (2.0 / (PI * x)).sqrt() * x.sin();
    }
    if nu == 1.5 {
        return (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
    }
    if x <= 8.0 || 0.25 * x * x <= nu + 1.0 {
        bessel_series(nu, x)
    } else {
        bessel_miller(nu, x)
    }
}

fn bessel_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k * (k + nu) > q {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

fn bessel_miller(nu: f64, x: f64) -> f64 {
    let n = nu.floor() as usize;
    let phi = nu - n as f64;
    let reach = (n as f64).max(x);
    let mut top = (reach + 30.0 + 10.0 * reach.sqrt()) as usize;
    top += top % 2;

    // weights[i] = (φ + 2i) Γ(φ + i) / i!, with weights[0] = Γ(φ + 1)
    let mut weights = vec![0.0; top / 2 + 1];
    let mut g = gamma(phi + 1.0);
    weights[0] = g;
    for i in 1..weights.len() {
        if i > 1 {
            g *= (phi + (i - 1) as f64) / i as f64;
        }
        weights[i] = (phi + 2.0 * i as f64) * g;
    }

    let mut upper = 0.0; // J_{φ+k+1}
    let mut current = 1e-300; // J_{φ+k}
    let mut sum = 0.0;
    let mut target = 0.0;
    for k in (0..=top).rev() {
        if k == n {
            target = current;
        }
        if k % 2 == 0 {
            sum += weights[k / 2] * current;
        }
        if k == 0 {
            break;
        }
        let lower = 2.0 * (phi + k as f64) / x * current - upper;
        upper = current;
        current = lower;
        if current.abs() > 1e250 {
            upper *= 1e-250;
            current *= 1e-250;
            sum *= 1e-250;
            target *= 1e-250;
        }
    }
    target * (0.5 * x).powf(phi) / sum
}

/// The k-th positive zero of J_ν, ν ∈ [0, 10], 1 ≤ k ≤ 20.
pub fn bessel_j_zero(nu: f64, k: usize) -> Result<f64> {
    check_order(nu)?;
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!("zero index {k} outside [1, {MAX_ZERO_INDEX}]")));
    }
    if nu == 0.5 {
        return Ok(k as f64 * PI);
    }
    let step = 0.1;
    let mut a = nu + 1.0;
    let mut fa = bessel_j_unchecked(nu, a);
    let mut found = 0;
    loop {
        let b = a + step;
        let fb = bessel_j_unchecked(nu, b);
        if fa == 0.0 {
            found += 1;
            if found == k {
                return Ok(a);
            }
        } else if fa * fb < 0.0 {
            found += 1;
            if found == k {
                return Ok(bisect(|t| bessel_j_unchecked(nu, t), a, b, fa, 1e-12));
            }
        }
        a = b;
        fa = fb;
    }
}

/// Bisection on a sign-changing bracket down to the given interval width.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, width: f64) -> f64 {
    while b - a > width {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Illinois-type regula falsi on a bracket; used for the bulk zero tables.
fn regula_falsi(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let mut fb = f(b);
    let mut side = 0;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        if (b - a).abs() < tol * b.abs().max(1.0) {
            return c;
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if (fc < 0.0) == (fb < 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

/// Zeros of J_m below `limit` for every integer order m ≥ 0 that has one,
/// as `tables[m] = [j_{m,1}, j_{m,2}, ...]`.
///
/// Uses the interlacing j_{m,k} < j_{m+1,k} < j_{m,k+1} to bracket each zero
/// of J_{m+1} between consecutive zeros of J_m.
pub(crate) fn integer_order_zeros_below(limit: f64) -> Vec<Vec<f64>> {
    let tol = 1e-14;
    // j_{m,1} > m + 1.8557 m^{1/3}
    let mut m_max = 0usize;
    while (m_max + 1) as f64 + 1.8557 * ((m_max + 1) as f64).cbrt() < limit {
        m_max += 1;
    }
    // interlacing: order m+1 loses one zero per order, so this many zeros
    // past the limit keep every later order complete
    let wanted = |zeros: &[f64], m: usize| zeros.partition_point(|&z| z < limit) + m_max.saturating_sub(m) + 1;

    let mut current = Vec::new();
    let mut a = 1.0;
    let mut fa = bessel_j_unchecked(0.0, a);
    while current.len() < wanted(&current, 0) {
        let b = a + 1.0;
        let fb = bessel_j_unchecked(0.0, b);
        if fa * fb < 0.0 {
            current.push(regula_falsi(|t| bessel_j_unchecked(0.0, t), a, b, tol));
        }
        a = b;
        fa = fb;
    }

    let mut tables = Vec::new();
    let mut m = 0usize;
    loop {
        let below = current.partition_point(|&z| z < limit);
        if below == 0 {
            break;
        }
        tables.push(current[..below].to_vec());
        let order = (m + 1) as f64;
        let mut next: Vec<f64> = current
            .windows(2)
            .map(|w| regula_falsi(|t| bessel_j_unchecked(order, t), w[0], w[1], tol))
            .collect();
        next.truncate(wanted(&next, m + 1));
        current = next;
        m += 1;
    }
    tables
}

/// Which value of the clamped-beam constant ν₂ to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Nu2Mode {
    /// The rough upper estimate ν₂ ≤ 5.
    #[default]
    #[serde(alias = "paper")]
    PaperBound,
    /// The smallest positive root of cos(k)·cosh(k) = 1.
    Exact,
}

/// ν₂, the fourth root of the ground state of d⁴/dt⁴ with clamped ends on a
/// unit interval.
pub fn clamped_beam_nu(mode: Nu2Mode) -> f64 {
    match mode {
        Nu2Mode::PaperBound => 5.0,
        Nu2Mode::Exact => {
            let f = |k: f64| k.cos() * k.cosh() - 1.0;
            bisect(f, 4.0, 5.0, f(4.0), 1e-13)
        }
    }
}

/// Volume of the unit ball in ℝ^d.
pub fn unit_ball_volume(d: u32) -> f64 {
    let h = d as f64 / 2.0;
    PI.powf(h) / gamma(h + 1.0)
}

/// Pleijel's constant γ(d) = 2^{d-2} d² Γ(d/2)² / j_{(d-2)/2,1}^d.
pub fn pleijel_gamma(d: u32) -> Result<f64> {
    check_dimension(d)?;
    let df = d as f64;
    let j = bessel_j_zero((df - 2.0) / 2.0, 1)?;
    Ok(2f64.powf(df - 2.0) * df * df * gamma(df / 2.0).powi(2) / j.powf(df))
}

fn check_dimension(d: u32) -> Result<()> {
    if !(2..=10).contains(&d) {
        return Err(Error::Domain(format!("dimension {d} outside [2, 10]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalConstants {
    pub d: u32,
    /// Volume of the unit ball.
    pub omega_d: f64,
    /// Weyl constant (2π)^{-d} ω_d.
    pub weyl_c: f64,
    pub pleijel_gamma: f64,
    /// Ground state of the ball of unit volume.
    pub lambda_unit_ball: f64,
}

pub fn dimensional_constants(d: u32) -> Result<DimensionalConstants> {
    check_dimension(d)?;
    let df = d as f64;
    let omega_d = unit_ball_volume(d);
    let j = bessel_j_zero(df / 2.0 - 1.0, 1)?;
    Ok(DimensionalConstants {
        d,
        omega_d,
        weyl_c: omega_d / (2.0 * PI).powf(df),
        pleijel_gamma: pleijel_gamma(d)?,
        lambda_unit_ball: omega_d.powf(2.0 / df) * j * j,
    })
}

/// λ(𝔻₁) = π j₀₁², the ground state of the disk of unit area.
pub fn lambda_unit_disk() -> f64 {
    let j = bessel_j_zero(0.0, 1).expect("j_{0,1} is in range");
    PI * j * j
}
