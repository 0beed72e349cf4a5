//! Frustration prescribed on the unit circle with topological charge m. The
//! boundary azimuth phi0 = alpha0 + theta0 propagates along straight
//! characteristics leaving the circle; rays tangent to the circle bound the
//! admissible domain, and the degenerate all-radial configuration collapses
//! to an explicit logarithmic-spiral field.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{wrap_mod_pi, Slope};
use crate::halfplane::PointAngle;
use crate::profiles::CircleFrustration;

const TWO_PI: f64 = 2.0 * PI;

/// Slope of the characteristic leaving the circle with azimuth `phi0`.
pub fn circle_slope(phi0: f64, b_star: f64) -> Slope {
    let den = b_star * phi0.sin() + phi0.cos();
    if den.abs() <= 1e-14 {
        Slope::Vertical
    } else {
        Slope::Finite(-(b_star * phi0.cos() - phi0.sin()) / den)
    }
}

/// Admissible parameter range of a characteristic ray, in arc length from the
/// anchor on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SRange {
    NonNegative,
    NonPositive,
    All,
}

impl SRange {
    pub fn contains(&self, s: f64) -> bool {
        match self {
            SRange::NonNegative => s >= -1e-12,
            SRange::NonPositive => s <= 1e-12,
            SRange::All => true,
        }
    }
}

/// A characteristic anchored at (cos theta0, sin theta0), parameterized by
/// arc length s along `direction`.
#[derive(Clone, Copy, Debug)]
pub struct CharacteristicRay {
    pub theta0: f64,
    pub anchor: [f64; 2],
    pub direction: [f64; 2],
    /// Azimuth carried along the ray: phi0 = alpha0 + theta0.
    pub angle: f64,
    pub s_range: SRange,
    pub slope: Slope,
}

impl CharacteristicRay {
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        [
            self.anchor[0] + s * self.direction[0],
            self.anchor[1] + s * self.direction[1],
        ]
    }

    /// Arc-length coordinate of the orthogonal projection of (x, y) onto the
    /// ray's supporting line.
    pub fn param_of(&self, x: f64, y: f64) -> f64 {
        (x - self.anchor[0]) * self.direction[0] + (y - self.anchor[1]) * self.direction[1]
    }
}

pub fn characteristic_ray(theta0: f64, fr: &CircleFrustration, b_star: f64) -> CharacteristicRay {
    let wrapped = theta0.rem_euclid(TWO_PI);
    let alpha0 = fr.alpha0(theta0);
    let phi0 = alpha0 + theta0;
    let a = b_star * phi0.sin() + phi0.cos();
    let b = b_star * phi0.cos() - phi0.sin();
    let a0 = b_star * alpha0.sin() + alpha0.cos();
    let anchor = [wrapped.cos(), wrapped.sin()];
    let norm = (1.0 + b_star * b_star).sqrt();

    let (direction, s_range) = if a.abs() <= 1e-14 {
        let range = if a0.abs() <= 1e-12 {
            SRange::All
        } else if wrapped < PI {
            SRange::NonNegative
        } else {
            SRange::NonPositive
        };
        ([0.0, 1.0], range)
    } else {
        let dir = [a.abs() / norm, -a.signum() * b / norm];
        let range = if a0.abs() <= 1e-12 {
            SRange::All
        } else if a * a0 > 0.0 {
            SRange::NonNegative
        } else {
            SRange::NonPositive
        };
        (dir, range)
    };

    CharacteristicRay {
        theta0: wrapped,
        anchor,
        direction,
        angle: phi0,
        s_range,
        slope: circle_slope(phi0, b_star),
    }
}

/// Roots of b* sin alpha0 + cos alpha0 = 0 in [0, 2 pi): anchors whose
/// characteristic is tangent to the circle. These bound the admissible
/// domain.
pub fn tangency_set(fr: &CircleFrustration, b_star: f64, n_scan: usize) -> Vec<f64> {
    scan_roots(
        |t| {
            let a0 = fr.alpha0(t);
            b_star * a0.sin() + a0.cos()
        },
        n_scan.max(8),
    )
}

/// Closed form of the tangency set for a pure disclination profile
/// alpha0 = (m - 1) theta0 + c0 with m != 1.
pub fn frank_tangency_closed_form(m: f64, c0: f64, b_star: f64) -> Vec<f64> {
    if (m - 1.0).abs() < 1e-12 {
        return Vec::new();
    }
    let base = -(1.0 / b_star).atan() - c0;
    let span = 2.0 * (m - 1.0).abs();
    let n_max = (2.0 * span).ceil() as i64 + 4;
    let mut roots: Vec<f64> = Vec::new();
    for n in -n_max..=n_max {
        let t = ((base + n as f64 * PI) / (m - 1.0)).rem_euclid(TWO_PI);
        if !roots.iter().any(|&r| {
            (r - t).abs() < 1e-10 || (r - t).abs() > TWO_PI - 1e-10
        }) {
            roots.push(t);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn scan_roots(g: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_g = g(0.0);
    for i in 1..=n {
        let t = TWO_PI * i as f64 / n as f64;
        let gi = g(t);
        if prev_g == 0.0 {
            roots.push(prev_t);
        } else if prev_g * gi < 0.0 {
            roots.push(bisect(&g, prev_t, t));
        }
        prev_t = t;
        prev_g = gi;
    }
    // Fold a root at 2 pi back onto 0.
    roots.retain(|&r| r < TWO_PI - 1e-12);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
    roots
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = g(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a < 1e-13 {
            return mid;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if ga * gm < 0.0 {
            b = mid;
        } else {
            a = mid;
            ga = gm;
        }
    }
    0.5 * (a + b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    WholePlane,
    ExteriorOnly,
    ExteriorWithHalfPlanes,
}

/// The region where the characteristic construction defines the field: the
/// circle exterior cut by the half-planes x cos t* + y sin t* < 1 over the
/// tangency anchors t*. Degenerates to the whole plane when the boundary
/// azimuth is constant.
#[derive(Clone, Debug)]
pub struct DomainRegion {
    pub kind: DomainKind,
    pub tangents: Vec<f64>,
}

impl DomainRegion {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self.kind {
            DomainKind::WholePlane => true,
            _ => {
                x * x + y * y > 1.0
                    && self
                        .tangents
                        .iter()
                        .all(|&t| x * t.cos() + y * t.sin() < 1.0)
            }
        }
    }
}

pub fn admissible_domain(fr: &CircleFrustration, b_star: f64) -> DomainRegion {
    let phis: Vec<f64> = (0..256).map(|i| fr.phi0(TWO_PI * i as f64 / 256.0)).collect();
    let spread = phis.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - phis.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread < 1e-10 {
        return DomainRegion {
            kind: DomainKind::WholePlane,
            tangents: Vec::new(),
        };
    }
    let tangents = tangency_set(fr, b_star, 4096);
    let kind = if tangents.is_empty() {
        DomainKind::ExteriorOnly
    } else {
        DomainKind::ExteriorWithHalfPlanes
    };
    DomainRegion { kind, tangents }
}

#[derive(Clone, Debug)]
pub struct DegeneracyReport {
    /// Anchors with characteristics tangent to the circle.
    pub tangency: Vec<f64>,
    /// Anchors with radial characteristics (b* cos alpha0 = sin alpha0).
    pub resonant: Vec<f64>,
    /// Every characteristic is radial: the construction degenerates and the
    /// field is the logarithmic-spiral configuration alpha = arctan b*.
    pub resonant_global: bool,
}

/// True when every characteristic is radial (b* cos alpha0 = sin alpha0
/// identically), so the construction degenerates to the log-spiral field.
pub fn resonant_global(fr: &CircleFrustration, b_star: f64) -> bool {
    let worst = (0..512)
        .map(|i| {
            let a0 = fr.alpha0(TWO_PI * i as f64 / 512.0);
            (b_star * a0.cos() - a0.sin()).abs()
        })
        .fold(0.0f64, f64::max);
    worst < 1e-10
}

pub fn classify_degeneracies(fr: &CircleFrustration, b_star: f64) -> DegeneracyReport {
    let radial = |t: f64| {
        let a0 = fr.alpha0(t);
        b_star * a0.cos() - a0.sin()
    };
    let resonant_global = resonant_global(fr, b_star);
    DegeneracyReport {
        tangency: tangency_set(fr, b_star, 4096),
        resonant: if resonant_global {
            Vec::new()
        } else {
            scan_roots(radial, 4096)
        },
        resonant_global,
    }
}

/// Angle lookup by inverting the characteristic fan. Points strictly outside
/// the circle respect the admissible s-ranges; with `extend_inside`, points
/// in the closed disk are matched against full characteristic lines, which
/// can be multi-valued.
pub fn field_angle_at_circle(
    x: f64,
    y: f64,
    fr: &CircleFrustration,
    b_star: f64,
    extend_inside: bool,
) -> Result<PointAngle> {
    field_angle_at_circle_in(x, y, fr, b_star, extend_inside, 4096)
}

pub fn field_angle_at_circle_in(
    x: f64,
    y: f64,
    fr: &CircleFrustration,
    b_star: f64,
    extend_inside: bool,
    n_scan: usize,
) -> Result<PointAngle> {
    let r2 = x * x + y * y;
    if resonant_global(fr, b_star) {
        if r2 < 1.0 - 1e-12 && !extend_inside {
            return Err(Error::PointInsideCircle { x, y });
        }
        // All characteristics are radial; the field is the spiral with
        // constant local angle arctan b*.
        if r2 <= 1e-24 {
            return Ok(PointAngle::NotCovered);
        }
        return Ok(PointAngle::Angle(y.atan2(x) + b_star.atan()));
    }

    let hits = ray_hits_at(x, y, fr, b_star, extend_inside, n_scan)?;
    let angles: Vec<f64> = hits
        .iter()
        .map(|&(t0, _)| characteristic_ray(t0, fr, b_star).angle)
        .collect();
    if angles.is_empty() {
        return Ok(PointAngle::NotCovered);
    }
    let distinct = angles
        .iter()
        .any(|&a| wrap_mod_pi(a - angles[0]).abs() > 1e-8);
    if distinct {
        Ok(PointAngle::MultiCovered(angles))
    } else {
        Ok(PointAngle::Angle(angles[0]))
    }
}

/// Ray coordinates (theta0, s) of every characteristic through (x, y), with s
/// the arc length of `characteristic_ray`. Points strictly outside the circle
/// respect the admissible s-ranges; with `extend_inside`, any point is
/// matched against full characteristic lines.
pub fn ray_hits_at(
    x: f64,
    y: f64,
    fr: &CircleFrustration,
    b_star: f64,
    extend_inside: bool,
    n_scan: usize,
) -> Result<Vec<(f64, f64)>> {
    let r2 = x * x + y * y;
    let inside = r2 < 1.0 - 1e-12;
    if inside && !extend_inside {
        return Err(Error::PointInsideCircle { x, y });
    }

    // The point lies on the supporting line of the ray through theta0 when
    // the cross product of (p - anchor) with the (unoriented) ray direction
    // vanishes.
    let g = |t: f64| {
        let phi0 = fr.phi0(t);
        let a = b_star * phi0.sin() + phi0.cos();
        let b = b_star * phi0.cos() - phi0.sin();
        -(x - t.cos()) * b - (y - t.sin()) * a
    };

    let mut hits: Vec<(f64, f64)> = Vec::new();
    let n = n_scan.max(64);
    let mut prev_t = 0.0;
    let mut prev_g = g(0.0);
    for i in 1..=n {
        let t = TWO_PI * i as f64 / n as f64;
        let gi = g(t);
        let root = if prev_g == 0.0 {
            Some(prev_t)
        } else if prev_g * gi < 0.0 {
            Some(bisect(&g, prev_t, t))
        } else {
            None
        };
        if let Some(t0) = root {
            if t0 < TWO_PI - 1e-12 {
                let ray = characteristic_ray(t0, fr, b_star);
                let s = ray.param_of(x, y);
                // Extended lookups accept the whole supporting line.
                let admissible = extend_inside || ray.s_range.contains(s);
                if admissible {
                    hits.push((t0, s));
                }
            }
        }
        prev_t = t;
        prev_g = gi;
    }
    Ok(hits)
}

/// Factor value in ray coordinates (theta0, s), with s the arc length of
/// `characteristic_ray`. On the circle (s = 0) this is
/// phi0' / (2 (b* sin alpha0 + cos alpha0)).
pub fn f_at_circle(theta0: f64, s: f64, fr: &CircleFrustration, b_star: f64) -> Result<f64> {
    let alpha0 = fr.alpha0(theta0);
    let phi0 = alpha0 + theta0;
    let dphi0 = fr.dphi0(theta0);
    let a = b_star * phi0.sin() + phi0.cos();
    let b = b_star * phi0.cos() - phi0.sin();
    let a0 = b_star * alpha0.sin() + alpha0.cos();
    // Orientation factor of the arc-length parameterization; the vertical
    // branch runs upward, which matches -sgn(b) there.
    let sigma = if a.abs() > 1e-14 {
        a.signum()
    } else {
        -b.signum()
    };
    let den = a0 + s * sigma * (1.0 + b_star * b_star).sqrt() * dphi0;
    if den.abs() <= 1e-14 {
        return Err(Error::SingularFactor { denominator: den });
    }
    Ok(0.5 * dphi0 / den)
}

/// Azimuth on the circle itself: phi(1, theta0) = alpha0 + theta0.
pub fn boundary_azimuth(fr: &CircleFrustration, theta0: f64) -> f64 {
    fr.phi0(theta0)
}
