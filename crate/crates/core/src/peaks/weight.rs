use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::candidate::PeakParams;
use crate::circlemeasure::{StageLefts, DEFAULT_MAX_GENERATION};
use crate::fmt::{f17, serialize_complex_vec};
use crate::quadrature::GaussLegendre;
use crate::Result;

const SINGULAR_NODES: usize = 32;
const PANEL_NODES: usize = 16;
const CHUNK: usize = 1024;
const LANES: usize = 4;
const REANCHOR: usize = 512;

/// Moments `c_k = int d_E(t)^-alpha e^{-2 pi i k t} dt`, `k = 0..=D`, over
/// the gaps of generations `0..K`.
#[derive(Clone, Debug, Serialize)]
pub struct HerglotzWeight {
    #[serde(serialize_with = "serialize_complex_vec")]
    pub moments: Vec<Complex64>,
    /// `W = G0 / (1 - 2 xi^(1 - alpha))`, the mass over all gaps.
    pub total_mass: f64,
    /// `G0 = 2 ((1 - 2 xi) / 2)^(1 - alpha) / (1 - alpha)`, the central gap.
    pub central_gap_mass: f64,
    /// `(2 xi^(1 - alpha))^K`, the share of `W` beyond the last generation.
    pub tail_ratio: f64,
    pub generations: u32,
    pub nodes: usize,
}

impl HerglotzWeight {
    pub fn c0(&self) -> f64 {
        self.moments[0].re
    }

    /// `|c0 - W (1 - tail_ratio)| / W`.
    pub fn mass_identity_gap(&self) -> f64 {
        (self.c0() - self.total_mass * (1.0 - self.tail_ratio)).abs() / self.total_mass
    }

    /// Columns `k,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,re,im")?;
        for (k, c) in self.moments.iter().enumerate() {
            writeln!(w, "{k},{},{}", f17(c.re), f17(c.im))?;
        }
        Ok(())
    }
}

/// Nodes and weights for `int_gap d_E^-alpha phi`. Inside a gap the distance
/// to `E` is the distance to the nearer gap endpoint. Each half-gap starts
/// with a panel of width at most `h` in the variable `u = s^(1 - alpha)`,
/// which absorbs the endpoint singularity; the rest is split into plain
/// Gauss-Legendre panels of width at most `h`.
fn gap_rule(params: &PeakParams, h: f64) -> Result<Vec<(f64, f64)>> {
    let alpha = params.alpha;
    let xi = params.ratio.value();
    let p = 1.0 / (1.0 - alpha);
    let singular = GaussLegendre::new(SINGULAR_NODES);
    let regular = GaussLegendre::new(PANEL_NODES);
    let mut out = Vec::new();
    for k in 0..params.generations {
        let lefts = StageLefts::new(&params.ratio, k, DEFAULT_MAX_GENERATION)?;
        let len = lefts.length();
        let half = 0.5 * len * (1.0 - 2.0 * xi);
        let s1 = half.min(h);
        let panels = if half > s1 {
            ((half - s1) / h).ceil() as usize
        } else {
            0
        };
        let width = if panels > 0 { (half - s1) / panels as f64 } else { 0.0 };
        for i in 0..lefts.len() {
            let a = lefts.left(i) + len * xi;
            let b = lefts.left(i) + len * (1.0 - xi);
            for (end, sign) in [(a, 1.0), (b, -1.0)] {
                for (u, w) in singular.on(0.0, s1.powf(1.0 - alpha)) {
                    out.push((end + sign * u.powf(p), w * p));
                }
                for j in 0..panels {
                    let lo = s1 + width * j as f64;
                    for (s, w) in regular.on(lo, lo + width) {
                        out.push((end + sign * s, w * s.powf(-alpha)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `sum_i w_i e^{-2 pi i k x_i}` for `k = 0..=degree`, four nodes at a time
/// with the phase recurrence restarted every few hundred steps.
fn chunk_moments(nodes: &[(f64, f64)], degree: usize) -> Vec<Complex64> {
    let mut re = vec![0.0f64; degree + 1];
    let mut im = vec![0.0f64; degree + 1];
    for group in nodes.chunks(LANES) {
        let mut x = [0.0f64; LANES];
        let mut w = [0.0f64; LANES];
        for (l, &(xl, wl)) in group.iter().enumerate() {
            x[l] = xl;
            w[l] = wl;
        }
        let step: [Complex64; LANES] = std::array::from_fn(|l| Complex64::from_polar(1.0, -TAU * x[l]));
        let mut z = [Complex64::new(1.0, 0.0); LANES];
        for k in 0..=degree {
            if k % REANCHOR == 0 && k > 0 {
                for l in 0..LANES {
                    z[l] = Complex64::from_polar(1.0, -TAU * (k as f64 * x[l]).fract());
                }
            }
            let (mut sr, mut si) = (0.0, 0.0);
            for l in 0..LANES {
                sr += w[l] * z[l].re;
                si += w[l] * z[l].im;
                z[l] *= step[l];
            }
            re[k] += sr;
            im[k] += si;
        }
    }
    re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect()
}

pub fn herglotz_weight_moments(params: &PeakParams) -> Result<HerglotzWeight> {
    params.validate()?;
    let alpha = params.alpha;
    let xi = params.ratio.value();
    let nodes = gap_rule(params, 1.0 / params.degree as f64)?;
    let partials: Vec<Vec<Complex64>> = nodes
        .par_chunks(CHUNK)
        .map(|chunk| chunk_moments(chunk, params.degree))
        .collect();
    let mut moments = vec![Complex64::new(0.0, 0.0); params.degree + 1];
    for part in &partials {
        for (m, v) in moments.iter_mut().zip(part) {
            *m += v;
        }
    }
    moments[0].im = 0.0;
    let g0 = 2.0 * ((1.0 - 2.0 * xi) / 2.0).powf(1.0 - alpha) / (1.0 - alpha);
    let r = 2.0 * xi.powf(1.0 - alpha);
    Ok(HerglotzWeight {
        moments,
        total_mass: g0 / (1.0 - r),
        central_gap_mass: g0,
        tail_ratio: r.powi(params.generations as i32),
        generations: params.generations,
        nodes: nodes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatioParam;

    fn params(k: u32, d: usize) -> PeakParams {
        PeakParams::new(0.6, RatioParam::rational(2, 13).unwrap(), k, d)
    }

    #[test]
    fn central_gap_mass() {
        let w = herglotz_weight_moments(&params(1, 64)).unwrap();
        assert!((w.c0() - w.central_gap_mass).abs() < 1e-10 * w.central_gap_mass);
    }

    #[test]
    fn mass_identity_small() {
        for k in 1..=5 {
            let w = herglotz_weight_moments(&params(k, 64)).unwrap();
            assert!(w.mass_identity_gap() < 1e-9, "K={k}: {}", w.mass_identity_gap());
            assert!(w.c0() <= w.total_mass);
        }
    }

    #[test]
    fn moments_match_direct_sum() {
        let p = params(2, 40);
        let nodes = gap_rule(&p, 1.0 / 40.0).unwrap();
        let w = herglotz_weight_moments(&p).unwrap();
        for k in [1usize, 17, 40] {
            let direct: Complex64 = nodes
                .iter()
                .map(|&(x, wt)| Complex64::from_polar(wt, -TAU * k as f64 * x))
                .sum();
            assert!((direct - w.moments[k]).norm() < 1e-11);
        }
    }

    #[test]
    fn symmetric_weight_has_real_moments() {
        // E is symmetric about 1/2, so c_k = (-1)^k |c_k| up to rounding.
        let w = herglotz_weight_moments(&params(3, 32)).unwrap();
        for c in &w.moments {
            assert!(c.im.abs() < 1e-10);
        }
    }
}
