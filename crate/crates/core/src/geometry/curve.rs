//! Sampled closed boundary curves.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of distinct samples per curve.
pub const MIN_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub point: [f64; 2],
    /// Arclength from the first sample.
    pub s: f64,
    /// Signed curvature, positive where the curve bends towards the interior.
    pub kappa: f64,
}

/// A closed curve sampled by arclength. The last sample repeats the first
/// point at `s = total_length`. The domain lies to the left of the direction
/// of travel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    samples: Vec<CurveSample>,
    total_length: f64,
}

impl BoundaryCurve {
    /// Builds a curve from its vertices, estimating curvature from the circle
    /// through each vertex and its two neighbours. A trailing copy of the first
    /// vertex is accepted and dropped.
    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        let pts = strip_closing(points);
        let n = pts.len();
        if n < 3 {
            return Err(Error::Geometry(format!("curve has {n} distinct points")));
        }
        let kappa = (0..n)
            .map(|i| menger_curvature(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]))
            .collect::<Vec<_>>();
        Self::from_points_with_curvature(pts, &kappa)
    }

    /// Builds a curve from vertices and known curvature values at them.
    pub fn from_points_with_curvature(points: &[[f64; 2]], kappa: &[f64]) -> Result<Self> {
        let pts = strip_closing(points);
        let n = pts.len();
        if n < 3 {
            return Err(Error::Geometry(format!("curve has {n} distinct points")));
        }
        if kappa.len() < n {
            return Err(Error::Geometry(format!("{} curvature values for {n} points", kappa.len())));
        }
        let mut samples = Vec::with_capacity(n + 1);
        let mut s = 0.0;
        for i in 0..=n {
            let p = pts[i % n];
            if i > 0 {
                let step = dist(pts[i - 1], p);
                if step <= 0.0 {
                    return Err(Error::Geometry(format!("repeated point at sample {i}")));
                }
                s += step;
            }
            samples.push(CurveSample { point: p, s, kappa: kappa[i % n] });
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Geometry("zero-length curve".into()));
        }
        Ok(BoundaryCurve { samples, total_length: s })
    }

    /// Circle sampled at `n` equally spaced angles, counter-clockwise when
    /// `outer` is set and clockwise (a hole) otherwise.
    pub fn circle(center: [f64; 2], radius: f64, n: usize, outer: bool) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Geometry(format!("circle radius {radius}")));
        }
        let sign = if outer { 1.0 } else { -1.0 };
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = sign * 2.0 * PI * i as f64 / n as f64;
                [center[0] + radius * t.cos(), center[1] + radius * t.sin()]
            })
            .collect();
        Self::from_points_with_curvature(&pts, &vec![sign / radius; n])
    }

    /// Counter-clockwise ellipse with semi-axes `a` (along x) and `b`, sampled
    /// at equally spaced parameter values starting on the positive x-axis.
    pub fn ellipse(center: [f64; 2], a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::Geometry(format!("ellipse semi-axes {a}, {b}")));
        }
        let mut pts = Vec::with_capacity(n);
        let mut kappa = Vec::with_capacity(n);
        for i in 0..n {
            let t = 2.0 * PI * i as f64 / n as f64;
            let (s, c) = t.sin_cos();
            pts.push([center[0] + a * c, center[1] + b * s]);
            kappa.push(a * b / (a * a * s * s + b * b * c * c).powf(1.5));
        }
        Self::from_points_with_curvature(&pts, &kappa)
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    /// Distinct vertices (without the closing repeat).
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = [f64; 2]> + '_ {
        self.samples[..self.samples.len() - 1].iter().map(|s| s.point)
    }

    pub fn vertex_count(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Shoelace area: positive for counter-clockwise curves.
    pub fn signed_area(&self) -> f64 {
        0.5 * self
            .samples
            .windows(2)
            .map(|w| w[0].point[0] * w[1].point[1] - w[1].point[0] * w[0].point[1])
            .sum::<f64>()
    }

    /// ∫ κ ds by the trapezoid rule.
    pub fn total_curvature(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| 0.5 * (w[0].kappa + w[1].kappa) * (w[1].s - w[0].s))
            .sum()
    }

    pub fn kappa_range(&self) -> (f64, f64) {
        self.samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.kappa), hi.max(s.kappa))
        })
    }

    /// Same curve traversed in the opposite direction; curvature changes sign.
    pub fn reversed(&self) -> Self {
        let n = self.vertex_count();
        let src = &self.samples[..n];
        let pts: Vec<[f64; 2]> = (0..n).map(|i| src[(n - i) % n].point).collect();
        let kappa: Vec<f64> = (0..n).map(|i| -src[(n - i) % n].kappa).collect();
        Self::from_points_with_curvature(&pts, &kappa).expect("reversal of a valid curve")
    }

    /// Dilation by `t` about the origin.
    pub fn scaled(&self, t: f64) -> Self {
        BoundaryCurve {
            samples: self
                .samples
                .iter()
                .map(|s| CurveSample {
                    point: [s.point[0] * t, s.point[1] * t],
                    s: s.s * t,
                    kappa: s.kappa / t,
                })
                .collect(),
            total_length: self.total_length * t,
        }
    }

    /// Unit normals pointing into the domain (left of the direction of travel),
    /// from central differences.
    pub fn inward_normals(&self) -> Vec<[f64; 2]> {
        let n = self.vertex_count();
        let p = |i: usize| self.samples[i % n].point;
        (0..n)
            .map(|i| {
                let a = p(i + n - 1);
                let b = p(i + 1);
                let (tx, ty) = (b[0] - a[0], b[1] - a[1]);
                let len = tx.hypot(ty);
                [-ty / len, tx / len]
            })
            .collect()
    }

    pub(crate) fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        self.vertices().fold(
            ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]),
            |(lo, hi), p| ([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])]),
        )
    }

    pub(crate) fn segments(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        self.samples.windows(2).map(|w| (w[0].point, w[1].point))
    }

    /// Checks closure, arclength monotonicity and the spacing/arclength
    /// consistency (within 5 %).
    pub fn validate(&self) -> Result<()> {
        let first = self.samples[0];
        let last = self.samples[self.samples.len() - 1];
        if dist(first.point, last.point) > 1e-9 {
            return Err(Error::Geometry("curve is not closed".into()));
        }
        if (last.s - self.total_length).abs() > 1e-9 * self.total_length {
            return Err(Error::Geometry("final arclength differs from total length".into()));
        }
        for (i, w) in self.samples.windows(2).enumerate() {
            let ds = w[1].s - w[0].s;
            if !(ds > 0.0) {
                return Err(Error::Geometry(format!("arclength not increasing at sample {}", i + 1)));
            }
            let chord = dist(w[0].point, w[1].point);
            if (chord - ds).abs() > 0.05 * ds {
                return Err(Error::Sampling(format!(
                    "spacing {chord} inconsistent with arclength step {ds} at sample {}",
                    i + 1
                )));
            }
        }
        if self.vertex_count() < MIN_SAMPLES {
            return Err(Error::Sampling(format!(
                "{} samples, at least {MIN_SAMPLES} required",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// True when two non-adjacent edges of the polyline intersect.
    pub fn self_intersects(&self) -> bool {
        let segs: Vec<_> = self.segments().collect();
        let n = segs.len();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(segs[i], segs[j]) {
                    return true;
                }
            }
        }
        false
    }

    pub(crate) fn intersects(&self, other: &BoundaryCurve) -> bool {
        let theirs: Vec<_> = other.segments().collect();
        self.segments().any(|a| theirs.iter().any(|&b| segments_intersect(a, b)))
    }

    /// Even-odd point-in-polygon test.
    pub fn contains(&self, q: [f64; 2]) -> bool {
        let mut inside = false;
        for (a, b) in self.segments() {
            if (a[1] > q[1]) != (b[1] > q[1]) {
                let x = a[0] + (q[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if x > q[0] {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn strip_closing(points: &[[f64; 2]]) -> &[[f64; 2]] {
    match points {
        [first, .., last] if points.len() > 1 && dist(*first, *last) <= 1e-9 => &points[..points.len() - 1],
        _ => points,
    }
}

pub(crate) fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Signed curvature of the circle through three points.
fn menger_curvature(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let denom = dist(a, b) * dist(b, c) * dist(a, c);
    if denom == 0.0 {
        return 0.0;
    }
    2.0 * cross(a, b, c) / denom
}

fn segments_intersect((p1, p2): ([f64; 2], [f64; 2]), (q1, q2): ([f64; 2], [f64; 2])) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: [f64; 2], b: [f64; 2], p: [f64; 2], d: f64| {
        d == 0.0 && p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Parses boundary curves from text: one `x y` pair per line, curves separated
/// by blank lines, `#` starts a comment. The first curve is oriented
/// counter-clockwise and the others clockwise.
pub fn parse_curves(text: &str) -> Result<Vec<BoundaryCurve>> {
    let mut groups: Vec<Vec<[f64; 2]>> = vec![Vec::new()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() && !groups.last().unwrap().is_empty() {
                groups.push(Vec::new());
            }
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(x)), Some(Ok(y)), None) if x.is_finite() && y.is_finite() => {
                groups.last_mut().unwrap().push([x, y])
            }
            _ => {
                return Err(Error::Geometry(format!(
                    "line {}: expected two numbers, found {raw:?}",
                    lineno + 1
                )))
            }
        }
    }
    if groups.last().is_some_and(Vec::is_empty) {
        groups.pop();
    }
    if groups.is_empty() {
        return Err(Error::Geometry("no boundary points".into()));
    }
    groups
        .iter()
        .enumerate()
        .map(|(i, pts)| {
            let curve = BoundaryCurve::from_points(pts)?;
            let ccw = curve.signed_area() > 0.0;
            Ok(if ccw == (i == 0) { curve } else { curve.reversed() })
        })
        .collect()
}

pub fn load_curves(path: &Path) -> Result<Vec<BoundaryCurve>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_curves(&text)
}

/// Components of the cut distance estimate for sampled boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutDistance {
    /// 1 / sup |κ|, infinite for straight boundaries.
    pub t_plus: f64,
    /// Smallest rolling-ball radius over sample pairs.
    pub delta: f64,
    /// min(t_plus, delta).
    pub eps0: f64,
}

/// Cut distance of a sampled boundary.
///
/// At each sample c with inward normal ν, the largest disk tangent at c and
/// free of every other sample has radius min |c′ − c|² / (2⟨c′ − c, ν⟩) over
/// samples c′ with a positive denominator.
pub fn cut_distance_parts(curves: &[BoundaryCurve]) -> Result<CutDistance> {
    if curves.is_empty() {
        return Err(Error::Geometry("no boundary curves".into()));
    }
    for c in curves {
        if !(c.total_length() > 0.0) {
            return Err(Error::Geometry("zero-length curve".into()));
        }
        if c.vertex_count() < MIN_SAMPLES {
            return Err(Error::Sampling(format!(
                "{} samples, at least {MIN_SAMPLES} required",
                c.vertex_count()
            )));
        }
    }
    let max_abs_kappa = curves
        .iter()
        .flat_map(|c| c.samples().iter().map(|s| s.kappa.abs()))
        .fold(0.0, f64::max);
    let t_plus = if max_abs_kappa > 0.0 { 1.0 / max_abs_kappa } else { f64::INFINITY };

    let all: Vec<[f64; 2]> = curves.iter().flat_map(|c| c.vertices()).collect();
    let mut delta = f64::INFINITY;
    for curve in curves {
        for (c, nu) in curve.vertices().zip(curve.inward_normals()) {
            for &q in &all {
                let dx = q[0] - c[0];
                let dy = q[1] - c[1];
                let den = 2.0 * (dx * nu[0] + dy * nu[1]);
                if den > 1e-300 {
                    delta = delta.min((dx * dx + dy * dy) / den);
                }
            }
        }
    }
    Ok(CutDistance { t_plus, delta, eps0: t_plus.min(delta) })
}

/// ε₀ of a sampled boundary: min(t₊, rolling-ball radius).
pub fn cut_distance_parametric(curves: &[BoundaryCurve]) -> Result<f64> {
    Ok(cut_distance_parts(curves)?.eps0)
}
