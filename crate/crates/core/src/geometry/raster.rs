//! Rasterised inner-collar areas for sampled boundaries.

use super::curve::BoundaryCurve;

/// Sorted distances to the boundary of every grid cell inside the domain,
/// with the cell area needed to turn counts into areas.
pub(crate) struct CollarProfile {
    distances: Vec<f64>,
    cell_area: f64,
}

impl CollarProfile {
    /// Rasterises the domain on a square grid of spacing `diam / resolution`.
    pub(crate) fn new(curves: &[BoundaryCurve], resolution: usize) -> Self {
        let (lo, hi) = curves[0].bounding_box();
        let diam = (hi[0] - lo[0]).hypot(hi[1] - lo[1]);
        let h = diam / resolution as f64;
        let nx = ((hi[0] - lo[0]) / h).ceil() as usize + 3;
        let ny = ((hi[1] - lo[1]) / h).ceil() as usize + 3;
        let x0 = lo[0] - h;
        let y0 = lo[1] - h;
        let center = |i: usize, j: usize| [x0 + (i as f64 + 0.5) * h, y0 + (j as f64 + 0.5) * h];

        // even-odd scanline fill over all curves
        let mut inside = vec![false; nx * ny];
        let mut crossings = Vec::new();
        for j in 0..ny {
            let y = center(0, j)[1];
            crossings.clear();
            for c in curves {
                for (a, b) in c.segments() {
                    if (a[1] > y) != (b[1] > y) {
                        crossings.push(a[0] + (y - a[1]) / (b[1] - a[1]) * (b[0] - a[0]));
                    }
                }
            }
            crossings.sort_by(f64::total_cmp);
            for pair in crossings.chunks_exact(2) {
                let i0 = ((pair[0] - x0) / h - 0.5).ceil().max(0.0) as usize;
                let i1 = ((pair[1] - x0) / h - 0.5).floor().min((nx - 1) as f64);
                if i1 < 0.0 {
                    continue;
                }
                for i in i0..=(i1 as usize) {
                    inside[j * nx + i] = true;
                }
            }
        }

        // boundary seed cells
        let mut sq = vec![f64::INFINITY; nx * ny];
        for c in curves {
            for (a, b) in c.segments() {
                let len = (b[0] - a[0]).hypot(b[1] - a[1]);
                let steps = (2.0 * len / h).ceil().max(1.0) as usize;
                for k in 0..=steps {
                    let t = k as f64 / steps as f64;
                    let x = a[0] + t * (b[0] - a[0]);
                    let y = a[1] + t * (b[1] - a[1]);
                    let i = ((x - x0) / h) as usize;
                    let j = ((y - y0) / h) as usize;
                    sq[j * nx + i] = 0.0;
                }
            }
        }
        squared_edt(&mut sq, nx, ny);

        let mut distances: Vec<f64> = sq
            .iter()
            .zip(&inside)
            .filter(|(_, &ins)| ins)
            .map(|(&d, _)| d.sqrt() * h)
            .collect();
        distances.sort_by(f64::total_cmp);
        CollarProfile { distances, cell_area: h * h }
    }

    /// Approximate |{x ∈ Ω : d(x) < eps}|.
    pub(crate) fn collar_area(&self, eps: f64) -> f64 {
        self.distances.partition_point(|&d| d < eps) as f64 * self.cell_area
    }

    pub(crate) fn max_distance(&self) -> f64 {
        self.distances.last().copied().unwrap_or(0.0)
    }
}

/// Exact squared Euclidean distance transform in cell units (Felzenszwalb and
/// Huttenlocher), in place. Zero marks a seed, infinity everything else.
fn squared_edt(grid: &mut [f64], nx: usize, ny: usize) {
    let mut buf = vec![0.0; nx.max(ny)];
    let mut out = vec![0.0; nx.max(ny)];
    for i in 0..nx {
        for j in 0..ny {
            buf[j] = grid[j * nx + i];
        }
        edt_1d(&buf[..ny], &mut out[..ny]);
        for j in 0..ny {
            grid[j * nx + i] = out[j];
        }
    }
    for j in 0..ny {
        buf[..nx].copy_from_slice(&grid[j * nx..(j + 1) * nx]);
        edt_1d(&buf[..nx], &mut out[..nx]);
        grid[j * nx..(j + 1) * nx].copy_from_slice(&out[..nx]);
    }
}

fn edt_1d(f: &[f64], d: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0.0; n + 1];
    let mut k = 0usize;
    let first = match f.iter().position(|x| x.is_finite()) {
        Some(p) => p,
        None => {
            d.fill(f64::INFINITY);
            return;
        }
    };
    v[0] = first;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in first + 1..n {
        if !f[q].is_finite() {
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    k = 0;
    for (q, out) in d.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        *out = dq * dq + f[p];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn edt_matches_brute_force() {
        let (nx, ny) = (13, 9);
        let seeds = [(2usize, 3usize), (10, 1), (7, 7)];
        let mut g = vec![f64::INFINITY; nx * ny];
        for &(i, j) in &seeds {
            g[j * nx + i] = 0.0;
        }
        squared_edt(&mut g, nx, ny);
        for j in 0..ny {
            for i in 0..nx {
                let want = seeds
                    .iter()
                    .map(|&(a, b)| (i as f64 - a as f64).powi(2) + (j as f64 - b as f64).powi(2))
                    .fold(f64::INFINITY, f64::min);
                assert_eq!(g[j * nx + i], want);
            }
        }
    }

    #[test]
    fn disk_collar_close_to_exact() {
        let c = BoundaryCurve::circle([0.0, 0.0], 1.0, 512, true).unwrap();
        let prof = CollarProfile::new(&[c], 1024);
        for &eps in &[0.2, 0.5, 0.8] {
            let exact = PI * (1.0 - (1.0 - eps) * (1.0 - eps));
            let got = prof.collar_area(eps);
            assert!((got - exact).abs() < 0.01 * exact, "eps={eps}: {got} vs {exact}");
        }
        assert!((prof.collar_area(2.0) - PI).abs() < 0.01);
        assert!((prof.max_distance() - 1.0).abs() < 0.01);
    }
}
