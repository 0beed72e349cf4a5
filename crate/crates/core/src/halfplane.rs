//! Frustration prescribed on the line y = 0: the boundary azimuth phi0(x0)
//! propagates unchanged along straight characteristics, whose slope depends
//! only on phi0 and the bend-to-splay ratio b*. When phi0 is monotone and
//! confined to a window of width pi, the characteristics fan out over one
//! half-plane without crossing and define the field there.

use crate::error::{Error, Result};
use crate::geometry::{wrap_mod_pi, Slope};
use crate::parallel;
use crate::profiles::LineFrustration;

/// Slope of the characteristic carrying boundary azimuth `phi0`.
pub fn line_slope(phi0: f64, b_star: f64) -> Slope {
    let den = phi0.cos() - b_star * phi0.sin();
    if den.abs() <= 1e-14 {
        Slope::Vertical
    } else {
        Slope::Finite((phi0.sin() + b_star * phi0.cos()) / den)
    }
}

/// A straight characteristic anchored on the line y = 0.
///
/// `direction` is the unit tangent oriented so that its inner product with
/// the carried director is -1/sqrt(1 + b*^2) everywhere, the orientation
/// under which the inclination invariant takes a single sign for the whole
/// family.
#[derive(Clone, Copy, Debug)]
pub struct Characteristic {
    pub anchor: [f64; 2],
    pub direction: [f64; 2],
    /// Azimuth carried along the line.
    pub angle: f64,
    pub slope: Slope,
}

impl Characteristic {
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        [
            self.anchor[0] + s * self.direction[0],
            self.anchor[1] + s * self.direction[1],
        ]
    }
}

pub fn characteristic_through(x0: f64, fr: &LineFrustration, b_star: f64) -> Characteristic {
    let phi0 = fr.phi0(x0);
    let c = phi0.cos() - b_star * phi0.sin();
    let d = phi0.sin() + b_star * phi0.cos();
    let norm = (1.0 + b_star * b_star).sqrt();
    Characteristic {
        anchor: [x0, 0.0],
        direction: [-c / norm, -d / norm],
        angle: phi0,
        slope: line_slope(phi0, b_star),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelievabilityVerdict {
    /// phi0 nonincreasing: the field fills y > 0.
    RelievableUpper,
    /// phi0 nondecreasing: the field fills y < 0.
    RelievableLower,
    Constant,
    NotRelievable,
}

#[derive(Clone, Debug)]
pub struct RelievabilityReport {
    pub verdict: RelievabilityVerdict,
    /// Sampled range of phi0 over the window.
    pub range: (f64, f64),
    /// The admissible open window (-arctan b* + (k-1) pi, -arctan b* + k pi)
    /// the range was tested against.
    pub interval: (f64, f64),
    /// First sample x0 where monotonicity broke, if it did.
    pub first_violation: Option<f64>,
    /// phi0 came within 1e-12 of an endpoint of the admissible window.
    pub touches_boundary: bool,
    /// Range exceeded the admissible window outright.
    pub range_exceeded: bool,
}

/// Checks the two relievability requirements over a sampling window: the
/// range of phi0 must fit inside one open window of width pi whose endpoints
/// have horizontal characteristics, and phi0 must be monotone (ties allowed).
pub fn assess_relievability(
    fr: &LineFrustration,
    b_star: f64,
    window: (f64, f64),
    n_samples: usize,
) -> RelievabilityReport {
    let n = n_samples.max(2);
    let xs: Vec<f64> = (0..n)
        .map(|i| window.0 + (window.1 - window.0) * i as f64 / (n - 1) as f64)
        .collect();
    let phis: Vec<f64> = xs.iter().map(|&x| fr.phi0(x)).collect();

    let min = phis.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = phis.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let a = -b_star.atan();
    let k = ((min - a) / std::f64::consts::PI).floor() + 1.0;
    let lo = a + (k - 1.0) * std::f64::consts::PI;
    let hi = a + k * std::f64::consts::PI;

    let range_exceeded = max > hi + 1e-12;
    let touches_boundary = (min - lo).abs() <= 1e-12 || (hi - max).abs() <= 1e-12;

    let tol = 1e-10;
    let mut nonincreasing = true;
    let mut nondecreasing = true;
    let mut first_violation = None;
    for i in 1..n {
        let d = phis[i] - phis[i - 1];
        if d > tol && nonincreasing {
            nonincreasing = false;
            if first_violation.is_none() && !nondecreasing {
                first_violation = Some(xs[i]);
            }
        }
        if d < -tol && nondecreasing {
            nondecreasing = false;
            if first_violation.is_none() && !nonincreasing {
                first_violation = Some(xs[i]);
            }
        }
    }

    let verdict = if max - min <= 1e-10 {
        RelievabilityVerdict::Constant
    } else if range_exceeded {
        RelievabilityVerdict::NotRelievable
    } else if nonincreasing {
        RelievabilityVerdict::RelievableUpper
    } else if nondecreasing {
        RelievabilityVerdict::RelievableLower
    } else {
        RelievabilityVerdict::NotRelievable
    };

    RelievabilityReport {
        verdict,
        range: (min, max),
        interval: (lo, hi),
        first_violation,
        touches_boundary,
        range_exceeded,
    }
}

/// Outcome of looking up the angle at a point from the characteristic fan.
#[derive(Clone, Debug, PartialEq)]
pub enum PointAngle {
    Angle(f64),
    NotCovered,
    /// Two or more characteristics with genuinely different angles pass
    /// through the point; the carried angles are reported.
    MultiCovered(Vec<f64>),
}

pub const DEFAULT_ANCHOR_WINDOW: (f64, f64) = (-50.0, 50.0);
pub const DEFAULT_SCAN: usize = 4096;

/// A characteristic anchored at x0 passes through (x, y) exactly when this
/// vanishes.
fn residual(x: f64, y: f64, x0: f64, phi0: f64, b_star: f64) -> f64 {
    let c = phi0.cos() - b_star * phi0.sin();
    let d = phi0.sin() + b_star * phi0.cos();
    y * c - d * (x - x0)
}

pub fn field_angle_at(x: f64, y: f64, fr: &LineFrustration, b_star: f64) -> PointAngle {
    field_angle_at_in(x, y, fr, b_star, DEFAULT_ANCHOR_WINDOW, DEFAULT_SCAN)
}

/// Anchors x0 in `window` whose characteristic passes through (x, y), found
/// by a sign-change scan and bisection. Boundary points are their own anchor.
pub fn anchors_at_in(
    x: f64,
    y: f64,
    fr: &LineFrustration,
    b_star: f64,
    window: (f64, f64),
    n_scan: usize,
) -> Vec<f64> {
    if y == 0.0 {
        // The boundary carries its prescribed datum. Scanning here is also
        // ill-posed: near-horizontal characteristics from the profile tails
        // graze the line within rounding error.
        return vec![x];
    }
    let n = n_scan.max(16);
    let h = |x0: f64| residual(x, y, x0, fr.phi0(x0), b_star);

    let mut roots: Vec<f64> = Vec::new();
    let mut prev_x = window.0;
    let mut prev_h = h(prev_x);
    for i in 1..=n {
        let xi = window.0 + (window.1 - window.0) * i as f64 / n as f64;
        let hi = h(xi);
        if prev_h == 0.0 {
            roots.push(prev_x);
        } else if prev_h * hi < 0.0 {
            roots.push(bisect(&h, prev_x, xi));
        }
        prev_x = xi;
        prev_h = hi;
    }
    if prev_h == 0.0 {
        roots.push(prev_x);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * (window.1 - window.0).abs());
    roots
}

/// Finds all anchors x0 in `window` whose characteristic passes through
/// (x, y) by a sign-change scan and bisection, then reports the carried
/// angle. Anchors carrying the same angle modulo pi collapse to one answer.
pub fn field_angle_at_in(
    x: f64,
    y: f64,
    fr: &LineFrustration,
    b_star: f64,
    window: (f64, f64),
    n_scan: usize,
) -> PointAngle {
    let roots = anchors_at_in(x, y, fr, b_star, window, n_scan);
    if roots.is_empty() {
        return PointAngle::NotCovered;
    }
    let angles: Vec<f64> = roots.iter().map(|&x0| fr.phi0(x0)).collect();
    let distinct = angles
        .iter()
        .any(|&a| wrap_mod_pi(a - angles[0]).abs() > 1e-9);
    if distinct {
        PointAngle::MultiCovered(angles)
    } else {
        PointAngle::Angle(angles[0])
    }
}

fn bisect(h: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ha = h(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a < 1e-12 {
            return mid;
        }
        let hm = h(mid);
        if hm == 0.0 {
            return mid;
        }
        if ha * hm < 0.0 {
            b = mid;
        } else {
            a = mid;
            ha = hm;
        }
    }
    0.5 * (a + b)
}

/// Factor value in characteristic coordinates (x0, s), where s = x - x0 along
/// the characteristic through (x0, 0). Singular on vertical characteristics,
/// where this chart degenerates.
pub fn f_at(x0: f64, s: f64, fr: &LineFrustration, b_star: f64) -> Result<f64> {
    let phi0 = fr.phi0(x0);
    let dphi0 = fr.dphi0(x0);
    let c = phi0.cos() - b_star * phi0.sin();
    let d = phi0.sin() + b_star * phi0.cos();
    if c.abs() <= 1e-14 {
        return Err(Error::SingularFactor { denominator: c });
    }
    let den = (1.0 + b_star * b_star) / c * s * dphi0 - d;
    if den.abs() <= 1e-14 {
        return Err(Error::SingularFactor { denominator: den });
    }
    Ok(0.5 * dphi0 / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageClass {
    Empty,
    Single,
    Multiple,
}

/// Per-cell characteristic counts over a rectangular window; counts are the
/// number of distinct anchors whose characteristic passes through the cell
/// center.
#[derive(Clone, Debug)]
pub struct CoverageGrid {
    pub window: ((f64, f64), (f64, f64)),
    pub nx: usize,
    pub ny: usize,
    /// Row-major, y rows bottom to top.
    pub counts: Vec<u32>,
}

impl CoverageGrid {
    pub fn count(&self, ix: usize, iy: usize) -> u32 {
        self.counts[iy * self.nx + ix]
    }

    pub fn class(&self, ix: usize, iy: usize) -> CoverageClass {
        match self.count(ix, iy) {
            0 => CoverageClass::Empty,
            1 => CoverageClass::Single,
            _ => CoverageClass::Multiple,
        }
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        let ((x0, x1), (y0, y1)) = self.window;
        (
            x0 + (x1 - x0) * (ix as f64 + 0.5) / self.nx as f64,
            y0 + (y1 - y0) * (iy as f64 + 0.5) / self.ny as f64,
        )
    }

    pub fn multi_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                if self.count(ix, iy) >= 2 {
                    out.push((ix, iy));
                }
            }
        }
        out
    }
}

pub fn coverage_map(
    window: ((f64, f64), (f64, f64)),
    fr: &LineFrustration,
    b_star: f64,
    grid: (usize, usize),
) -> CoverageGrid {
    coverage_impl(window, fr, b_star, grid, DEFAULT_ANCHOR_WINDOW, 2048, false)
}

/// Sequential variant with identical output, kept for benchmarking the
/// parallel sweep against a plain loop.
pub fn coverage_map_seq(
    window: ((f64, f64), (f64, f64)),
    fr: &LineFrustration,
    b_star: f64,
    grid: (usize, usize),
) -> CoverageGrid {
    coverage_impl(window, fr, b_star, grid, DEFAULT_ANCHOR_WINDOW, 2048, true)
}

fn coverage_impl(
    window: ((f64, f64), (f64, f64)),
    fr: &LineFrustration,
    b_star: f64,
    grid: (usize, usize),
    sweep: (f64, f64),
    n_sweep: usize,
    force_seq: bool,
) -> CoverageGrid {
    let (nx, ny) = (grid.0.max(1), grid.1.max(1));
    let ((wx0, wx1), (wy0, wy1)) = window;

    // Precompute the per-anchor trig so each cell costs two mul-adds per
    // sweep sample.
    let xs: Vec<f64> = (0..=n_sweep)
        .map(|i| sweep.0 + (sweep.1 - sweep.0) * i as f64 / n_sweep as f64)
        .collect();
    let coef: Vec<(f64, f64, f64)> = xs
        .iter()
        .map(|&x0| {
            let p = fr.phi0(x0);
            let c = p.cos() - b_star * p.sin();
            let d = p.sin() + b_star * p.cos();
            (c, d, x0)
        })
        .collect();

    let row = |iy: usize| -> Vec<u32> {
        let y = wy0 + (wy1 - wy0) * (iy as f64 + 0.5) / ny as f64;
        let mut counts = vec![0u32; nx];
        for (ix, slot) in counts.iter_mut().enumerate() {
            let x = wx0 + (wx1 - wx0) * (ix as f64 + 0.5) / nx as f64;
            let mut n_roots = 0u32;
            let mut prev = y * coef[0].0 - coef[0].1 * (x - coef[0].2);
            for &(c, d, x0) in &coef[1..] {
                let h = y * c - d * (x - x0);
                if prev == 0.0 || prev * h < 0.0 {
                    n_roots += 1;
                }
                prev = h;
            }
            *slot = n_roots;
        }
        counts
    };

    let rows = if force_seq {
        parallel::map_indexed_seq(ny, row)
    } else {
        parallel::map_indexed(ny, row)
    };
    CoverageGrid {
        window,
        nx,
        ny,
        counts: rows.concat(),
    }
}
