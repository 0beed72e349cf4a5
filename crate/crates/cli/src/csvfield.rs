//! Director field reconstructed from a sampled CSV grid, for verifying
//! externally produced data. The azimuth is interpolated bilinearly inside
//! each cell, with the four corner angles folded onto one half-turn branch.

use nematic_relief_core::fields::DirectorField;
use nematic_relief_core::geometry::{wrap_mod_pi, Director};
use nematic_relief_core::render::GridSample;

pub struct CsvField {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Row-major angles, `ys.len()` rows of `xs.len()`.
    phi: Vec<f64>,
}

fn sorted_unique(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    v
}

impl CsvField {
    pub fn from_samples(samples: &[GridSample]) -> Result<Self, String> {
        if samples.is_empty() {
            return Err("empty sample set".to_string());
        }
        let xs = sorted_unique(samples.iter().map(|s| s.x));
        let ys = sorted_unique(samples.iter().map(|s| s.y));
        if xs.len() < 2 || ys.len() < 2 {
            return Err("need at least a 2 x 2 grid of samples".to_string());
        }
        if xs.len() * ys.len() != samples.len() {
            return Err(format!(
                "samples do not form a complete grid: {} points vs {} x {} lattice",
                samples.len(),
                xs.len(),
                ys.len()
            ));
        }
        let index = |v: &[f64], t: f64| v.iter().position(|&u| (u - t).abs() < 1e-9);
        let mut phi = vec![f64::NAN; xs.len() * ys.len()];
        for s in samples {
            let (i, j) = match (index(&xs, s.x), index(&ys, s.y)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(format!("sample ({}, {}) is off-lattice", s.x, s.y)),
            };
            phi[j * xs.len() + i] = s.phi;
        }
        Ok(CsvField { xs, ys, phi })
    }

    pub fn window(&self) -> ((f64, f64), (f64, f64)) {
        (
            (self.xs[0], *self.xs.last().unwrap()),
            (self.ys[0], *self.ys.last().unwrap()),
        )
    }

    /// Interior probe points suitable for the quasi-uniformity check, kept a
    /// full cell away from the border so finite differences stay inside.
    pub fn probes(&self, n: usize) -> Vec<[f64; 3]> {
        let ((x0, x1), (y0, y1)) = self.window();
        let dx = (x1 - x0) / (self.xs.len() - 1) as f64;
        let dy = (y1 - y0) / (self.ys.len() - 1) as f64;
        let (ax, bx) = (x0 + 1.5 * dx, x1 - 1.5 * dx);
        let (ay, by) = (y0 + 1.5 * dy, y1 - 1.5 * dy);
        (0..n.max(3))
            .map(|i| {
                let t = (i as f64 + 0.5) / n.max(3) as f64;
                [ax + (bx - ax) * t, ay + (by - ay) * (1.0 - t), 0.0]
            })
            .collect()
    }

    fn cell(&self, v: &[f64], t: f64) -> Option<(usize, f64)> {
        if t < v[0] || t > *v.last().unwrap() {
            return None;
        }
        let i = match v.binary_search_by(|u| u.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(v.len() - 2),
            Err(i) => i.saturating_sub(1).min(v.len() - 2),
        };
        Some((i, (t - v[i]) / (v[i + 1] - v[i])))
    }
}

impl DirectorField for CsvField {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        let (i, u) = self.cell(&self.xs, p[0])?;
        let (j, v) = self.cell(&self.ys, p[1])?;
        let nx = self.xs.len();
        let base = self.phi[j * nx + i];
        if base.is_nan() {
            return None;
        }
        let fold = |a: f64| base + wrap_mod_pi(a - base);
        let p10 = fold(self.phi[j * nx + i + 1]);
        let p01 = fold(self.phi[(j + 1) * nx + i]);
        let p11 = fold(self.phi[(j + 1) * nx + i + 1]);
        let a = base * (1.0 - u) * (1.0 - v) + p10 * u * (1.0 - v) + p01 * (1.0 - u) * v
            + p11 * u * v;
        if a.is_nan() {
            return None;
        }
        Some(Director::planar(a))
    }
}
