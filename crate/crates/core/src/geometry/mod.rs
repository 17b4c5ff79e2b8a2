//! Domain descriptors and the geometric invariants entering the bounds.

mod curve;
mod raster;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use curve::{
    cut_distance_parametric, cut_distance_parts, load_curves, parse_curves, BoundaryCurve, CurveSample,
    CutDistance, MIN_SAMPLES,
};

/// Grid resolution (cells per diameter) for collar areas of sampled domains
/// beyond the tube-formula range.
pub const RASTER_RESOLUTION: usize = 2048;
/// Number of log-spaced collar widths scanned for D(Ω) of sampled domains.
const D_SCAN_POINTS: usize = 200;

/// A bounded domain: a closed-form model shape or a sampled boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Disk { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    /// (0, aπ) × (0, bπ).
    Rectangle { a: f64, b: f64 },
    Square { side: f64 },
    EquilateralTriangle { side: f64 },
    /// {0 < y < x < leg}.
    RightIsoscelesTriangle { leg: f64 },
    Cube { side: f64 },
    Parametric { curves: ParametricDomain },
}

/// Validated boundary curves, outer curve first (counter-clockwise), holes
/// clockwise and inside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<BoundaryCurve>", into = "Vec<BoundaryCurve>")]
pub struct ParametricDomain {
    curves: Vec<BoundaryCurve>,
}

impl ParametricDomain {
    pub fn new(curves: Vec<BoundaryCurve>) -> Result<Self> {
        let Some(outer) = curves.first() else {
            return Err(Error::Geometry("no boundary curves".into()));
        };
        for c in &curves {
            c.validate()?;
        }
        if outer.signed_area() <= 0.0 {
            return Err(Error::Geometry("outer curve must be positively oriented".into()));
        }
        for (i, c) in curves.iter().enumerate() {
            if i > 0 {
                if c.signed_area() >= 0.0 {
                    return Err(Error::Geometry(format!("hole {i} must be negatively oriented")));
                }
                if !outer.contains(c.samples()[0].point) {
                    return Err(Error::Geometry(format!("hole {i} lies outside the outer curve")));
                }
            }
            if c.self_intersects() {
                return Err(Error::Geometry(format!("curve {i} self-intersects")));
            }
            for (j, other) in curves.iter().enumerate().skip(i + 1) {
                if c.intersects(other) || (i > 0 && (c.contains(other.samples()[0].point) || other.contains(c.samples()[0].point))) {
                    return Err(Error::Geometry(format!("curves {i} and {j} are not disjoint")));
                }
            }
        }
        Ok(ParametricDomain { curves })
    }

    pub fn curves(&self) -> &[BoundaryCurve] {
        &self.curves
    }
}

impl TryFrom<Vec<BoundaryCurve>> for ParametricDomain {
    type Error = Error;
    fn try_from(curves: Vec<BoundaryCurve>) -> Result<Self> {
        ParametricDomain::new(curves)
    }
}

impl From<ParametricDomain> for Vec<BoundaryCurve> {
    fn from(p: ParametricDomain) -> Self {
        p.curves
    }
}

impl DomainSpec {
    pub fn parametric(curves: Vec<BoundaryCurve>) -> Result<Self> {
        Ok(DomainSpec::Parametric { curves: ParametricDomain::new(curves)? })
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Geometry(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match *self {
            DomainSpec::Disk { radius } => positive("radius", radius),
            DomainSpec::Annulus { inner, outer } => {
                positive("inner radius", inner)?;
                positive("outer radius", outer)?;
                if inner >= outer {
                    return Err(Error::Geometry(format!("annulus inner radius {inner} ≥ outer radius {outer}")));
                }
                Ok(())
            }
            DomainSpec::Rectangle { a, b } => positive("a", a).and(positive("b", b)),
            DomainSpec::Square { side } | DomainSpec::EquilateralTriangle { side } | DomainSpec::Cube { side } => {
                positive("side", side)
            }
            DomainSpec::RightIsoscelesTriangle { leg } => positive("leg", leg),
            DomainSpec::Parametric { .. } => Ok(()),
        }
    }

    pub fn dimension(&self) -> u32 {
        if matches!(self, DomainSpec::Cube { .. }) {
            3
        } else {
            2
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DomainSpec::Disk { .. } => "disk",
            DomainSpec::Annulus { .. } => "annulus",
            DomainSpec::Rectangle { .. } => "rectangle",
            DomainSpec::Square { .. } => "square",
            DomainSpec::EquilateralTriangle { .. } => "equilateral_triangle",
            DomainSpec::RightIsoscelesTriangle { .. } => "right_isosceles_triangle",
            DomainSpec::Cube { .. } => "cube",
            DomainSpec::Parametric { .. } => "parametric",
        }
    }

    /// Disk, annulus and sampled smooth boundaries carry the C² data the
    /// wave-kernel remainder bound needs; polygons and the cube do not.
    pub fn is_c2(&self) -> bool {
        matches!(self, DomainSpec::Disk { .. } | DomainSpec::Annulus { .. } | DomainSpec::Parametric { .. })
    }

    /// Dilation by `t > 0`.
    pub fn scaled(&self, t: f64) -> DomainSpec {
        match self {
            DomainSpec::Disk { radius } => DomainSpec::Disk { radius: radius * t },
            DomainSpec::Annulus { inner, outer } => DomainSpec::Annulus { inner: inner * t, outer: outer * t },
            DomainSpec::Rectangle { a, b } => DomainSpec::Rectangle { a: a * t, b: b * t },
            DomainSpec::Square { side } => DomainSpec::Square { side: side * t },
            DomainSpec::EquilateralTriangle { side } => DomainSpec::EquilateralTriangle { side: side * t },
            DomainSpec::RightIsoscelesTriangle { leg } => DomainSpec::RightIsoscelesTriangle { leg: leg * t },
            DomainSpec::Cube { side } => DomainSpec::Cube { side: side * t },
            DomainSpec::Parametric { curves } => DomainSpec::Parametric {
                curves: ParametricDomain { curves: curves.curves.iter().map(|c| c.scaled(t)).collect() },
            },
        }
    }

    /// Short human-readable parameter list.
    pub fn describe(&self) -> String {
        match self {
            DomainSpec::Disk { radius } => format!("disk(radius={radius})"),
            DomainSpec::Annulus { inner, outer } => format!("annulus(inner={inner}, outer={outer})"),
            DomainSpec::Rectangle { a, b } => format!("rectangle(0,{a}π)×(0,{b}π)"),
            DomainSpec::Square { side } => format!("square(side={side})"),
            DomainSpec::EquilateralTriangle { side } => format!("equilateral_triangle(side={side})"),
            DomainSpec::RightIsoscelesTriangle { leg } => format!("right_isosceles_triangle(leg={leg})"),
            DomainSpec::Cube { side } => format!("cube(side={side})"),
            DomainSpec::Parametric { curves } => {
                let counts: Vec<String> = curves.curves().iter().map(|c| c.vertex_count().to_string()).collect();
                format!("parametric({} curves; samples {})", counts.len(), counts.join(","))
            }
        }
    }
}

/// How the negative part of the curvature enters the collar estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CurvatureConvention {
    /// Use |κ₋(Ω)| even when κ₋ > 0.
    #[default]
    #[serde(alias = "literal")]
    LiteralAbs,
    /// Use max(0, −κ₋(Ω)).
    Signed,
}

impl CurvatureConvention {
    pub fn factor(self, kappa_inf: f64) -> f64 {
        match self {
            CurvatureConvention::LiteralAbs => kappa_inf.abs(),
            CurvatureConvention::Signed => (-kappa_inf).max(0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricInvariants {
    pub dim: u32,
    /// |Ω| (volume when `dim == 3`).
    pub area: f64,
    /// ℓ(∂Ω) (surface area when `dim == 3`).
    pub perimeter: f64,
    pub kappa_inf: f64,
    pub kappa_sup: f64,
    /// 1 / sup|κ|; `None` for straight-sided boundaries.
    pub t_plus: Option<f64>,
    pub eps0: f64,
    pub holes: u32,
    pub d_omega: f64,
}

pub fn invariants_of(domain: &DomainSpec) -> Result<GeometricInvariants> {
    domain.validate()?;
    let flat = |dim, area: f64, perimeter: f64, eps0: f64| GeometricInvariants {
        dim,
        area,
        perimeter,
        kappa_inf: 0.0,
        kappa_sup: 0.0,
        t_plus: None,
        eps0,
        holes: 0,
        d_omega: perimeter,
    };
    Ok(match *domain {
        DomainSpec::Disk { radius: r } => GeometricInvariants {
            dim: 2,
            area: PI * r * r,
            perimeter: 2.0 * PI * r,
            kappa_inf: 1.0 / r,
            kappa_sup: 1.0 / r,
            t_plus: Some(r),
            eps0: r,
            holes: 0,
            d_omega: 2.0 * PI * r,
        },
        DomainSpec::Annulus { inner: a, outer: r } => GeometricInvariants {
            dim: 2,
            area: PI * (r * r - a * a),
            perimeter: 2.0 * PI * (r + a),
            kappa_inf: -1.0 / a,
            kappa_sup: 1.0 / r,
            t_plus: Some(a),
            eps0: a.min((r - a) / 2.0),
            holes: 1,
            d_omega: 2.0 * PI * (r + a),
        },
        DomainSpec::Rectangle { a, b } => flat(2, a * b * PI * PI, 2.0 * PI * (a + b), PI * a.min(b) / 2.0),
        DomainSpec::Square { side } => flat(2, side * side, 4.0 * side, side / 2.0),
        DomainSpec::EquilateralTriangle { side } => {
            flat(2, 3f64.sqrt() / 4.0 * side * side, 3.0 * side, side / (2.0 * 3f64.sqrt()))
        }
        DomainSpec::RightIsoscelesTriangle { leg } => {
            flat(2, leg * leg / 2.0, (2.0 + 2f64.sqrt()) * leg, leg / (2.0 + 2f64.sqrt()))
        }
        DomainSpec::Cube { side } => flat(3, side.powi(3), 6.0 * side * side, side / 2.0),
        DomainSpec::Parametric { ref curves } => parametric_invariants(curves.curves())?,
    })
}

fn parametric_invariants(curves: &[BoundaryCurve]) -> Result<GeometricInvariants> {
    let area: f64 = curves.iter().map(BoundaryCurve::signed_area).sum();
    let perimeter: f64 = curves.iter().map(BoundaryCurve::total_length).sum();
    let (kappa_inf, kappa_sup) = curves
        .iter()
        .map(BoundaryCurve::kappa_range)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
    let cut = cut_distance_parts(curves)?;
    Ok(GeometricInvariants {
        dim: 2,
        area,
        perimeter,
        kappa_inf,
        kappa_sup,
        t_plus: cut.t_plus.is_finite().then_some(cut.t_plus),
        eps0: cut.eps0,
        holes: (curves.len() - 1) as u32,
        d_omega: parametric_d_constant(curves, cut.eps0),
    })
}

/// |{x ∈ Ω : d(x) < eps}|. Exact for model shapes (capped at |Ω| once the
/// collar fills the domain); tube formula for sampled boundaries, valid only
/// below ε₀.
pub fn collar_area(domain: &DomainSpec, eps: f64) -> Result<f64> {
    domain.validate()?;
    if !(eps > 0.0) {
        return Err(Error::Validity(format!("collar width {eps} must be positive")));
    }
    // shapes whose inner parallel set at distance eps is a homothetic copy
    let homothetic = |area: f64, inradius: f64| {
        if eps >= inradius {
            area
        } else {
            area * (1.0 - (1.0 - eps / inradius).powi(2))
        }
    };
    Ok(match *domain {
        DomainSpec::Disk { radius } => homothetic(PI * radius * radius, radius),
        DomainSpec::Annulus { inner: a, outer: r } => {
            if eps >= (r - a) / 2.0 {
                PI * (r * r - a * a)
            } else {
                PI * (2.0 * r * eps - eps * eps) + PI * (2.0 * a * eps + eps * eps)
            }
        }
        DomainSpec::Rectangle { a, b } => rectangle_collar(a * PI, b * PI, eps),
        DomainSpec::Square { side } => rectangle_collar(side, side, eps),
        DomainSpec::EquilateralTriangle { side } => {
            homothetic(3f64.sqrt() / 4.0 * side * side, side / (2.0 * 3f64.sqrt()))
        }
        DomainSpec::RightIsoscelesTriangle { leg } => homothetic(leg * leg / 2.0, leg / (2.0 + 2f64.sqrt())),
        DomainSpec::Cube { side } => {
            if eps >= side / 2.0 {
                side.powi(3)
            } else {
                side.powi(3) - (side - 2.0 * eps).powi(3)
            }
        }
        DomainSpec::Parametric { ref curves } => {
            let eps0 = cut_distance_parametric(curves.curves())?;
            if eps >= eps0 {
                return Err(Error::Validity(format!(
                    "tube formula for sampled boundaries needs eps < ε₀ = {eps0}, got {eps}"
                )));
            }
            tube_area(curves.curves(), eps)
        }
    })
}

fn rectangle_collar(w: f64, h: f64, eps: f64) -> f64 {
    if 2.0 * eps >= w.min(h) {
        w * h
    } else {
        w * h - (w - 2.0 * eps) * (h - 2.0 * eps)
    }
}

/// ∫₀^L ∫₀^ε (1 − tκ(s)) dt ds summed over curves.
fn tube_area(curves: &[BoundaryCurve], eps: f64) -> f64 {
    let length: f64 = curves.iter().map(BoundaryCurve::total_length).sum();
    let curvature: f64 = curves.iter().map(BoundaryCurve::total_curvature).sum();
    length * eps - 0.5 * eps * eps * curvature
}

/// D(Ω) = sup_ε |Ω_ε^b| / ε.
pub fn d_constant(domain: &DomainSpec) -> Result<f64> {
    Ok(invariants_of(domain)?.d_omega)
}

fn parametric_d_constant(curves: &[BoundaryCurve], eps0: f64) -> f64 {
    let length: f64 = curves.iter().map(BoundaryCurve::total_length).sum();
    let curvature: f64 = curves.iter().map(BoundaryCurve::total_curvature).sum();
    // the tube ratio L − εK/2 is affine in ε, so its sup on (0, ε₀) sits at an end
    let tube_sup = length.max(length - 0.5 * eps0 * curvature);

    let profile = raster::CollarProfile::new(curves, RASTER_RESOLUTION);
    let ratio = |e: f64| profile.collar_area(e) / e;
    let hi = profile.max_distance().max(eps0 * 1.0001);
    let lo = eps0;
    let grid: Vec<f64> = (0..D_SCAN_POINTS)
        .map(|k| lo * (hi / lo).powf(k as f64 / (D_SCAN_POINTS - 1) as f64))
        .collect();
    let (best_k, mut best) = grid
        .iter()
        .map(|&e| ratio(e))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, r)| if r > acc.1 { (k, r) } else { acc });
    // golden-section refinement on the neighbouring grid cells
    let (mut a, mut b) = (grid[best_k.saturating_sub(1)], grid[(best_k + 1).min(D_SCAN_POINTS - 1)]);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    while (b - a) > 1e-3 * a {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        let (rc, rd) = (ratio(c), ratio(d));
        best = best.max(rc).max(rd);
        if rc >= rd {
            b = d;
        } else {
            a = c;
        }
    }
    tube_sup.max(best)
}

/// The two upper bounds for D(Ω) from ε₀, area, perimeter and hole count:
/// max(|Ω|/ε₀, ℓ + π ε₀ h) and max(|Ω|/ε₀, 2ℓ).
pub fn d_upper_bounds(inv: &GeometricInvariants) -> (f64, f64) {
    let core = inv.area / inv.eps0;
    (
        core.max(inv.perimeter + PI * inv.eps0 * inv.holes as f64),
        core.max(2.0 * inv.perimeter),
    )
}

/// Upper bound for ∫_{d(x) > eps_low} 1/d(x) dx:
/// |Ω|/ε₀ + ℓ·[ln(ε₀/eps_low) + ε₀·K], K from the curvature convention.
pub fn collar_integral_upper(inv: &GeometricInvariants, eps_low: f64, convention: CurvatureConvention) -> Result<f64> {
    if !(eps_low > 0.0 && eps_low < inv.eps0) {
        return Err(Error::Validity(format!("need 0 < eps_low < ε₀ = {}, got {eps_low}", inv.eps0)));
    }
    let k = convention.factor(inv.kappa_inf);
    Ok(inv.area / inv.eps0 + inv.perimeter * ((inv.eps0 / eps_low).ln() + inv.eps0 * k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn model_shapes() -> Vec<DomainSpec> {
        vec![
            DomainSpec::Disk { radius: 1.0 },
            DomainSpec::Annulus { inner: 0.75, outer: 1.0 },
            DomainSpec::Annulus { inner: 0.25, outer: 1.0 },
            DomainSpec::Square { side: PI },
            DomainSpec::Rectangle { a: 1.0, b: 2.0 },
            DomainSpec::EquilateralTriangle { side: 1.0 },
            DomainSpec::RightIsoscelesTriangle { leg: PI },
        ]
    }

    #[test]
    fn closed_form_invariants() {
        let disk = invariants_of(&DomainSpec::Disk { radius: 1.0 }).unwrap();
        assert_eq!((disk.area, disk.perimeter, disk.kappa_inf, disk.eps0, disk.holes), (PI, 2.0 * PI, 1.0, 1.0, 0));

        let ann = invariants_of(&DomainSpec::Annulus { inner: 0.75, outer: 1.0 }).unwrap();
        assert!(close(ann.area, PI * (1.0 - 0.5625), 1e-15));
        assert!(close(ann.area, 1.3744, 1e-4));
        assert!(close(ann.perimeter, 2.0 * PI * 1.75, 1e-15));
        assert_eq!(ann.eps0, 0.125);
        assert_eq!(ann.holes, 1);
        assert_eq!(ann.t_plus, Some(0.75));
        assert!(close(ann.kappa_inf, -1.0 / 0.75, 1e-15));

        let sq = invariants_of(&DomainSpec::Square { side: PI }).unwrap();
        assert_eq!((sq.area, sq.perimeter, sq.eps0), (PI * PI, 4.0 * PI, PI / 2.0));
    }

    #[test]
    fn invariant_sanity() {
        for d in model_shapes() {
            let inv = invariants_of(&d).unwrap();
            assert!(inv.eps0 > 0.0);
            if let Some(t) = inv.t_plus {
                assert!(inv.eps0 <= t);
            }
            assert!(inv.perimeter.powi(2) >= 4.0 * PI * inv.area * (1.0 - 1e-12), "{d:?}");
            assert!(inv.d_omega >= inv.perimeter * (1.0 - 1e-12));
        }
    }

    #[test]
    fn annulus_collar_matches_ring_sum() {
        let d = DomainSpec::Annulus { inner: 0.75, outer: 1.0 };
        // ring areas computed directly
        let eps = 0.1;
        let outer_ring = PI * (1.0 - 0.9f64.powi(2));
        let inner_ring = PI * (0.85f64.powi(2) - 0.75f64.powi(2));
        assert!(close(collar_area(&d, eps).unwrap(), outer_ring + inner_ring, 1e-14));
    }

    #[test]
    fn collar_examples() {
        let sq = collar_area(&DomainSpec::Square { side: PI }, 0.1).unwrap();
        assert!(close(sq, 4.0 * PI * 0.1 - 0.04, 1e-14));
        assert!(close(sq, 1.21664, 1e-5));
        let disk = collar_area(&DomainSpec::Disk { radius: 1.0 }, 0.5).unwrap();
        assert!(close(disk, PI * 0.75, 1e-14));
        let ann = collar_area(&DomainSpec::Annulus { inner: 0.25, outer: 1.0 }, 0.2).unwrap();
        assert!(close(ann, PI * (0.4 - 0.04) + PI * (0.1 + 0.04), 1e-14));
        assert!(close(ann, 1.5708, 1e-4));
        assert!(collar_area(&DomainSpec::Disk { radius: 1.0 }, 0.0).is_err());
    }

    #[test]
    fn collar_monotone_bounded_and_below_d() {
        for d in model_shapes() {
            let inv = invariants_of(&d).unwrap();
            let mut prev = 0.0;
            for k in 1..=400 {
                let eps = 0.005 * k as f64;
                let c = collar_area(&d, eps).unwrap();
                assert!(c >= prev - 1e-12 && c <= inv.area * (1.0 + 1e-12), "{d:?} eps={eps}");
                assert!(c / eps <= inv.d_omega * (1.0 + 1e-12), "{d:?} eps={eps}");
                prev = c;
            }
        }
    }

    #[test]
    fn d_constant_examples() {
        // sup of (4πε − 4ε²)/ε = 4π − 4ε below π/2 and π²/ε above
        let oracle = |eps: f64| if eps < PI / 2.0 { 4.0 * PI - 4.0 * eps } else { PI * PI / eps };
        let scan = (1..10000).map(|k| oracle(k as f64 * 1e-4)).fold(0.0, f64::max);
        let d = d_constant(&DomainSpec::Square { side: PI }).unwrap();
        assert_eq!(d, 4.0 * PI);
        assert!(d >= scan && d - scan < 1e-3);

        let d = d_constant(&DomainSpec::Disk { radius: 1.0 }).unwrap();
        assert_eq!(d, 2.0 * PI);
        let d = d_constant(&DomainSpec::Annulus { inner: 0.75, outer: 1.0 }).unwrap();
        assert!(close(d, 10.996, 1e-4));
        let d = d_constant(&DomainSpec::Rectangle { a: 1.0, b: 2.0 }).unwrap();
        assert!(close(d, 6.0 * PI, 1e-15));
    }

    #[test]
    fn d_upper_bounds_dominate() {
        for d in model_shapes() {
            let inv = invariants_of(&d).unwrap();
            let (b1, b2) = d_upper_bounds(&inv);
            assert!(inv.d_omega <= b1 * (1.0 + 1e-12) && inv.d_omega <= b2 * (1.0 + 1e-12), "{d:?}");
        }
        let sq = invariants_of(&DomainSpec::Square { side: PI }).unwrap();
        assert!(close(d_upper_bounds(&sq).1, 8.0 * PI, 1e-15));
        let disk = invariants_of(&DomainSpec::Disk { radius: 1.0 }).unwrap();
        assert!(close(d_upper_bounds(&disk).1, 4.0 * PI, 1e-15));
        let ann = invariants_of(&DomainSpec::Annulus { inner: 0.25, outer: 1.0 }).unwrap();
        let want = (PI * (1.0 - 0.0625) / 0.25).max(2.0 * PI * 1.25 + PI * 0.25);
        assert!(close(d_upper_bounds(&ann).0, want, 1e-15));
    }

    #[test]
    fn collar_integral_examples() {
        let disk = invariants_of(&DomainSpec::Disk { radius: 1.0 }).unwrap();
        let v = collar_integral_upper(&disk, 0.5, CurvatureConvention::LiteralAbs).unwrap();
        assert!(close(v, PI + 2.0 * PI * (2f64.ln() + 1.0), 1e-14));
        assert!(close(v, 13.78, 1e-3));
        let v = collar_integral_upper(&disk, 0.5, CurvatureConvention::Signed).unwrap();
        assert!(close(v, PI + 2.0 * PI * 2f64.ln(), 1e-14));

        let edge = collar_integral_upper(&disk, 1.0 - 1e-12, CurvatureConvention::LiteralAbs).unwrap();
        assert!(close(edge, PI + 2.0 * PI, 1e-10));

        let sq = invariants_of(&DomainSpec::Square { side: PI }).unwrap();
        let v = collar_integral_upper(&sq, PI / 4.0, CurvatureConvention::LiteralAbs).unwrap();
        assert!(close(v, 2.0 * PI + 4.0 * PI * 2f64.ln(), 1e-14));

        assert!(matches!(
            collar_integral_upper(&disk, 1.0, CurvatureConvention::LiteralAbs),
            Err(Error::Validity(_))
        ));
        let mut prev = f64::INFINITY;
        for k in 1..100 {
            let v = collar_integral_upper(&disk, k as f64 / 100.0, CurvatureConvention::LiteralAbs).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn dilation_covariance() {
        for d in [
            DomainSpec::Disk { radius: 1.0 },
            DomainSpec::Square { side: PI },
            DomainSpec::Annulus { inner: 0.25, outer: 1.0 },
        ] {
            let base = invariants_of(&d).unwrap();
            for t in [0.5, 2.0] {
                let s = invariants_of(&d.scaled(t)).unwrap();
                assert!(close(s.area, base.area * t * t, 1e-14));
                assert!(close(s.perimeter, base.perimeter * t, 1e-14));
                assert!(close(s.eps0, base.eps0 * t, 1e-14));
                assert!(close(s.kappa_inf, base.kappa_inf / t, 1e-14));
                assert!(close(s.d_omega, base.d_omega * t, 1e-14));
            }
        }
    }

    #[test]
    fn parametric_circle_reproduces_disk() {
        let n = 256;
        let c = BoundaryCurve::circle([0.0, 0.0], 1.0, n, true).unwrap();
        let inv = invariants_of(&DomainSpec::parametric(vec![c]).unwrap()).unwrap();
        let disk = invariants_of(&DomainSpec::Disk { radius: 1.0 }).unwrap();
        let tol = 10.0 / n as f64;
        for (got, want) in [
            (inv.area, disk.area),
            (inv.perimeter, disk.perimeter),
            (inv.kappa_inf, disk.kappa_inf),
            (inv.eps0, disk.eps0),
            (inv.d_omega, disk.d_omega),
        ] {
            assert!((got - want).abs() <= tol * want, "{got} vs {want}");
        }
        assert_eq!(inv.holes, 0);
    }

    #[test]
    fn parametric_annulus_collar_and_d() {
        let curves = vec![
            BoundaryCurve::circle([0.0, 0.0], 1.0, 512, true).unwrap(),
            BoundaryCurve::circle([0.0, 0.0], 0.25, 256, false).unwrap(),
        ];
        let dom = DomainSpec::parametric(curves).unwrap();
        let inv = invariants_of(&dom).unwrap();
        assert_eq!(inv.holes, 1);
        assert!(close(inv.eps0, 0.25, 1e-9));
        let exact = collar_area(&DomainSpec::Annulus { inner: 0.25, outer: 1.0 }, 0.2).unwrap();
        assert!(close(collar_area(&dom, 0.2).unwrap(), exact, 1e-3));
        assert!(matches!(collar_area(&dom, 0.3), Err(Error::Validity(_))));
        assert!(close(inv.d_omega, 2.0 * PI * 1.25, 1e-2));
    }

    #[test]
    fn parametric_validation() {
        let outer = BoundaryCurve::circle([0.0, 0.0], 1.0, 128, true).unwrap();
        // wrong orientation
        assert!(DomainSpec::parametric(vec![outer.reversed()]).is_err());
        // undersampled
        let small = BoundaryCurve::circle([0.0, 0.0], 1.0, 16, true).unwrap();
        assert!(matches!(DomainSpec::parametric(vec![small]), Err(Error::Sampling(_))));
        // hole outside
        let far = BoundaryCurve::circle([5.0, 0.0], 0.5, 128, false).unwrap();
        assert!(DomainSpec::parametric(vec![outer.clone(), far]).is_err());
        // crossing hole
        let crossing = BoundaryCurve::circle([0.9, 0.0], 0.5, 128, false).unwrap();
        assert!(DomainSpec::parametric(vec![outer.clone(), crossing]).is_err());
        // self-intersecting outer curve
        let pts: Vec<[f64; 2]> = (0..128)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 128.0;
                [t.sin() + 0.01 * t.cos(), (2.0 * t).sin() / 2.0]
            })
            .collect();
        let eight = BoundaryCurve::from_points(&pts).unwrap();
        let eight = if eight.signed_area() > 0.0 { eight } else { eight.reversed() };
        assert!(matches!(DomainSpec::parametric(vec![eight]), Err(Error::Geometry(_))));
    }

    #[test]
    fn invalid_model_parameters() {
        assert!(invariants_of(&DomainSpec::Disk { radius: -1.0 }).is_err());
        assert!(invariants_of(&DomainSpec::Annulus { inner: 1.0, outer: 0.5 }).is_err());
        assert!(invariants_of(&DomainSpec::Square { side: f64::NAN }).is_err());
    }
}
