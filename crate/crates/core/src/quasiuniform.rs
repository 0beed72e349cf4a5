//! Numerical verification of quasi-uniformity: finite-difference gradients
//! with nematic sign alignment, the constant-ratio test on the distortion
//! characteristics, asymptotic local angles along rays, the inclination
//! invariant on characteristics, winding numbers on circuits, and the
//! one-dimensional uniformity check on boundary curves.

use nalgebra::Matrix3;

use crate::circle::CharacteristicRay;
use crate::distortion::{decompose_gradient, DistortionState};
use crate::error::{Error, Result};
use crate::fields::DirectorField;
use crate::geometry::{wrap_mod_pi, Director, GradientTensor};
use crate::halfplane::Characteristic;
use crate::profiles::{CircleFrustration, LineFrustration};

/// Second-order central differences of the director at `p`. Neighbor samples
/// are flipped into the hemisphere of the center value first, since the two
/// representatives of a line field may alternate between samples.
pub fn fd_gradient(field: &dyn DirectorField, p: [f64; 3], h: f64) -> Result<GradientTensor> {
    let center = field.eval(p).ok_or(Error::OutsideDomain)?;
    let mut g = Matrix3::zeros();
    for j in 0..3 {
        let mut fwd = p;
        let mut bwd = p;
        fwd[j] += h;
        bwd[j] -= h;
        let nf = field.eval(fwd).ok_or(Error::OutsideDomain)?.aligned_with(&center);
        let nb = field.eval(bwd).ok_or(Error::OutsideDomain)?.aligned_with(&center);
        let col = (nf.vector() - nb.vector()) / (2.0 * h);
        for i in 0..3 {
            g[(i, j)] = col[i];
        }
    }
    Ok(GradientTensor(g))
}

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Distortion state of a sampled field at `p`, via finite differences.
pub fn state_at(field: &dyn DirectorField, p: [f64; 3], h: f64) -> Result<DistortionState> {
    let n = field.eval(p).ok_or(Error::OutsideDomain)?;
    let g = fd_gradient(field, p, h)?;
    decompose_gradient(&n, &g)
}

/// Outcome of the constant-ratio test.
#[derive(Clone, Debug)]
pub struct QUReport {
    pub verdict: bool,
    /// Fitted constants (S*, T*, b1*, b2*, q*), scaled so the octupolar
    /// entry is 1 when present, else the splay is +-2, else the leading bend
    /// is 1.
    pub constants: [f64; 5],
    pub normalization: &'static str,
    pub max_deviation: f64,
    /// Implied factor value at each probe.
    pub f_samples: Vec<f64>,
    /// The reference probe carried no distortion at all; a constant field is
    /// trivially (quasi-)uniform.
    pub constant_field: bool,
}

/// Tests whether the five distortion characteristics stay in a fixed ratio
/// across the probes. Each probe's characteristic vector is divided by its
/// entry at the index that dominates the reference probe; the verdict holds
/// when all normalized vectors agree within `tol`.
pub fn verify_quasi_uniformity(
    field: &dyn DirectorField,
    probes: &[[f64; 3]],
    tol: f64,
) -> Result<QUReport> {
    if probes.len() < 3 {
        return Err(Error::InvalidParameter(
            "need at least three probes".to_string(),
        ));
    }
    let vectors: Vec<[f64; 5]> = probes
        .iter()
        .map(|&p| state_at(field, p, DEFAULT_FD_STEP).map(|s| s.characteristics()))
        .collect::<Result<_>>()?;

    let reference = vectors
        .iter()
        .position(|v| v.iter().any(|c| c.abs() > 1e-9));
    let reference = match reference {
        Some(i) => i,
        None => {
            return Ok(QUReport {
                verdict: true,
                constants: [0.0; 5],
                normalization: "constant",
                max_deviation: 0.0,
                f_samples: vec![0.0; probes.len()],
                constant_field: true,
            })
        }
    };

    let pivot = (0..5)
        .max_by(|&a, &b| {
            vectors[reference][a]
                .abs()
                .partial_cmp(&vectors[reference][b].abs())
                .unwrap()
        })
        .unwrap();

    let mut max_deviation: f64 = 0.0;
    let mut normalized: Vec<[f64; 5]> = Vec::with_capacity(vectors.len());
    for v in &vectors {
        if v[pivot].abs() < 1e-12 {
            max_deviation = f64::INFINITY;
            normalized.push([f64::NAN; 5]);
            continue;
        }
        let mut u = [0.0; 5];
        for k in 0..5 {
            u[k] = v[k] / v[pivot];
        }
        normalized.push(u);
    }
    if max_deviation.is_finite() {
        let base = normalized[reference];
        for u in &normalized {
            for k in 0..5 {
                max_deviation = max_deviation.max((u[k] - base[k]).abs());
            }
        }
    }

    let verdict = max_deviation <= tol;

    // Rescale the reference ratios to the reporting convention.
    let mut constants = normalized[reference];
    let q = constants[4];
    let (scale, normalization) = if max_deviation.is_infinite() {
        (1.0, "pivot")
    } else if q.abs() > 1e-9 {
        (1.0 / q, "q*=1")
    } else if constants[0].abs() > 1e-9 {
        (2.0 / constants[0].abs(), "|S*|=2")
    } else if constants[2].abs() > 1e-9 {
        (1.0 / constants[2], "b1*=1")
    } else if constants[3].abs() > 1e-9 {
        (1.0 / constants[3], "b2*=1")
    } else {
        (1.0, "T*=1")
    };
    for c in constants.iter_mut() {
        *c *= scale;
    }

    let f_samples = vectors
        .iter()
        .map(|v| {
            if constants[pivot].abs() > 1e-300 {
                v[pivot] / constants[pivot]
            } else {
                0.0
            }
        })
        .collect();

    Ok(QUReport {
        verdict,
        constants,
        normalization,
        max_deviation,
        f_samples,
        constant_field: false,
    })
}

/// Local angle alpha = phi - theta sampled along the ray at angle `theta`,
/// with a Richardson-style extrapolation of the large-radius limit.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub samples: Vec<(f64, f64)>,
    pub last: f64,
    /// Difference between the last two samples.
    pub cauchy: f64,
    /// The ray left the field's domain before the largest radius.
    pub truncated: bool,
    /// Limit estimate from a linear fit of alpha against 1/r over the tail.
    pub extrapolated: f64,
}

pub fn asymptotic_angle(
    field: &dyn DirectorField,
    theta: f64,
    radii: &[f64],
) -> AsymptoticReport {
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut truncated = false;
    let mut prev: Option<f64> = None;
    for &r in radii {
        let p = [r * theta.cos(), r * theta.sin(), 0.0];
        let n = match field.eval(p) {
            Some(n) => n,
            None => {
                truncated = true;
                break;
            }
        };
        let raw = n.planar_angle() - theta;
        // Unwrap the line-field angle continuously along the ray.
        let alpha = match prev {
            None => raw,
            Some(a) => a + wrap_mod_pi(raw - a),
        };
        prev = Some(alpha);
        samples.push((r, alpha));
    }

    let last = samples.last().map(|s| s.1).unwrap_or(f64::NAN);
    let cauchy = if samples.len() >= 2 {
        (samples[samples.len() - 1].1 - samples[samples.len() - 2].1).abs()
    } else {
        f64::NAN
    };
    let extrapolated = extrapolate_limit(&samples);
    AsymptoticReport {
        samples,
        last,
        cauchy,
        truncated,
        extrapolated,
    }
}

/// Least-squares fit of alpha = a + b / r over the tail samples; `a`
/// estimates the limit with one order better accuracy than the last sample.
fn extrapolate_limit(samples: &[(f64, f64)]) -> f64 {
    let tail: Vec<&(f64, f64)> = samples.iter().rev().take(5).collect();
    if tail.len() < 2 {
        return samples.last().map(|s| s.1).unwrap_or(f64::NAN);
    }
    let n = tail.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (r, a) in tail.iter() {
        let x = 1.0 / r;
        sx += x;
        sy += a;
        sxx += x * x;
        sxy += x * a;
    }
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return samples.last().unwrap().1;
    }
    (sy * sxx - sx * sxy) / det
}

/// A characteristic of either solver family, for inclination probing.
pub enum CharRef<'a> {
    Line(&'a Characteristic),
    Ray(&'a CharacteristicRay),
}

impl CharRef<'_> {
    fn point_at(&self, s: f64) -> [f64; 2] {
        match self {
            CharRef::Line(c) => c.point_at(s),
            CharRef::Ray(c) => c.point_at(s),
        }
    }

    fn angle(&self) -> f64 {
        match self {
            CharRef::Line(c) => c.angle,
            CharRef::Ray(c) => c.angle,
        }
    }
}

/// Dot product of the characteristic direction with the director sampled at
/// probe parameters along it, using the representative of the director pair
/// matching the carried boundary angle. Rays carry an arc-length orientation
/// that depends on the anchor data, so they are folded back to the family
/// convention e0 . n = +1/sqrt(1 + b*^2) first.
pub fn characteristic_inclination(
    field: &dyn DirectorField,
    ch: CharRef<'_>,
    probes_s: &[f64],
) -> Result<Vec<f64>> {
    let e0 = match &ch {
        CharRef::Line(c) => c.direction,
        CharRef::Ray(c) => {
            let rep = [c.angle.cos(), c.angle.sin()];
            let dot = c.direction[0] * rep[0] + c.direction[1] * rep[1];
            if dot >= 0.0 {
                c.direction
            } else {
                [-c.direction[0], -c.direction[1]]
            }
        }
    };
    let rep = Director::planar(ch.angle());
    let mut out = Vec::with_capacity(probes_s.len());
    for &s in probes_s {
        let p = ch.point_at(s);
        let n = field
            .eval([p[0], p[1], 0.0])
            .ok_or(Error::OutsideDomain)?
            .aligned_with(&rep);
        out.push(e0[0] * n.vector().x + e0[1] * n.vector().y);
    }
    Ok(out)
}

/// Sampled winding of the field azimuth around a circuit of radius `r`; the
/// topological charge of the enclosed defect set.
pub fn winding_on_circuit(
    field: &dyn DirectorField,
    center: [f64; 2],
    r: f64,
    n_samples: usize,
) -> Result<f64> {
    let n = n_samples.max(16);
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    for i in 0..=n {
        let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let p = [center[0] + r * t.cos(), center[1] + r * t.sin(), 0.0];
        let phi = field.eval(p).ok_or(Error::OutsideDomain)?.planar_angle();
        match prev {
            None => prev = Some(phi),
            Some(q) => {
                let step = wrap_mod_pi(phi - q);
                total += step;
                prev = Some(q + step);
            }
        }
    }
    Ok(total / (2.0 * std::f64::consts::PI))
}

/// Boundary curve for the one-dimensional uniformity check.
pub enum BoundaryCurve<'a> {
    /// The line y = 0, arc length x0, zero curvature.
    Line(&'a LineFrustration),
    /// The unit circle, arc length theta0, unit curvature.
    Circle(&'a CircleFrustration),
}

#[derive(Clone, Debug)]
pub struct OneDReport {
    /// (arc parameter, gamma) samples.
    pub gamma: Vec<(f64, f64)>,
    pub constant: bool,
    pub gamma0: Option<f64>,
    pub max_deviation: f64,
}

/// One-dimensional uniformity requires gamma = phi0' + tau constant along
/// the curve, with tau the curve's turning rate (0 on the line, 1 on the
/// unit circle).
pub fn one_d_uniformity(curve: BoundaryCurve<'_>, window: (f64, f64), n: usize) -> OneDReport {
    let n = n.max(2);
    let gamma: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let s = window.0 + (window.1 - window.0) * i as f64 / (n - 1) as f64;
            let g = match &curve {
                BoundaryCurve::Line(fr) => fr.dphi0(s),
                BoundaryCurve::Circle(fr) => fr.dphi0(s),
            };
            (s, g)
        })
        .collect();
    let mean = gamma.iter().map(|g| g.1).sum::<f64>() / n as f64;
    let max_deviation = gamma
        .iter()
        .map(|g| (g.1 - mean).abs())
        .fold(0.0f64, f64::max);
    let constant = max_deviation < 1e-8;
    OneDReport {
        gamma,
        constant,
        gamma0: constant.then_some(mean),
        max_deviation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortion::q_identity_residual;
    use crate::fields::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Matrix3;
    use std::f64::consts::PI;

    #[test]
    fn fd_gradient_on_constant_field_vanishes() {
        let f = Uniform(Director::new(0.0, 0.0, 1.0).unwrap());
        let g = fd_gradient(&f, [0.3, -0.2, 0.9], 1e-5).unwrap();
        assert!(g.0.norm() < 1e-12);
    }

    #[test]
    fn fd_gradient_matches_analytic_planar_splay() {
        let g = fd_gradient(&PlanarSplay, [2.0, 0.0, 0.0], 1e-4).unwrap();
        let expected = Matrix3::new(0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0);
        assert!((g.0 - expected).norm() < 1e-7);
    }

    #[test]
    fn fd_gradient_pure_bend_is_traceless() {
        let g = fd_gradient(&PureBend, [1.0, 0.0, 0.0], 1e-5).unwrap();
        assert!(g.trace().abs() < 1e-7);
    }

    #[test]
    fn fd_gradient_is_second_order() {
        let p = [1.3, 0.4, 0.0];
        let exact = fd_gradient(&PureBend, p, 1e-7).unwrap().0;
        let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| (fd_gradient(&PureBend, p, h).unwrap().0 - exact).norm())
            .collect();
        let order = (errs[0] / errs[2]).ln() / 4.0f64.ln();
        assert!((1.8..=2.2).contains(&order), "observed order {order}");
    }

    #[test]
    fn fd_gradient_handles_representative_flips() {
        // A field whose returned representative alternates in a checkerboard
        // pattern still differentiates cleanly thanks to the alignment.
        let nasty = PlanarAngle(|x: f64, y: f64| {
            let base = (x * x + y * y).ln() * 0.0 + x * 0.1;
            let flip = if ((x * 50.0).floor() as i64 + (y * 50.0).floor() as i64) % 2 == 0 {
                PI
            } else {
                0.0
            };
            Some(base + flip)
        });
        let g = fd_gradient(&nasty, [0.37, 0.81, 0.0], 1e-5).unwrap();
        // d(phi)/dx = 0.1 means |grad n| = 0.1.
        assert_abs_diff_eq!(g.0.norm(), 0.1, epsilon = 1e-6);
    }

    #[test]
    fn identity_residual_small_for_sampled_fields() {
        let spiral = PlanarSpiral::new(0.7);
        for p in [[1.0, 0.5, 0.0], [-2.0, 1.0, 0.0], [0.3, -1.7, 0.0]] {
            let g = fd_gradient(&spiral, p, 1e-5).unwrap();
            let n = spiral.eval(p).unwrap();
            let state = decompose_gradient(&n, &g).unwrap();
            assert!(q_identity_residual(&g, &state).abs() < 1e-8);
        }
    }

    fn ring_probes(r: f64) -> Vec<[f64; 3]> {
        (0..8)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 8.0 + 0.1;
                [r * t.cos() * (1.0 + 0.1 * i as f64), r * t.sin(), 0.0]
            })
            .collect()
    }

    #[test]
    fn elementary_fields_are_quasi_uniform() {
        let probes = ring_probes(1.5);
        for alpha in [0.0, 0.5, 1.0, PI / 2.0, 2.2] {
            let report =
                verify_quasi_uniformity(&PlanarSpiral::new(alpha), &probes, 1e-5).unwrap();
            assert!(report.verdict, "spiral alpha = {alpha}: {report:?}");
        }
        let report = verify_quasi_uniformity(&Hedgehog, &probes, 1e-5).unwrap();
        assert!(report.verdict);
        let report = verify_quasi_uniformity(&PureBend, &probes, 1e-5).unwrap();
        assert!(report.verdict);
        let report = verify_quasi_uniformity(&PlanarSplay, &probes, 1e-5).unwrap();
        assert!(report.verdict);
        assert_abs_diff_eq!(report.constants[4], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(report.constants[0], 2.0, epsilon = 1e-4);
    }

    #[test]
    fn single_variable_angle_is_rejected() {
        let probes: Vec<[f64; 3]> = (0..6).map(|i| [0.3 + 0.4 * i as f64, 0.0, 0.0]).collect();
        let report = verify_quasi_uniformity(&SingleVariableAngle, &probes, 1e-5).unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn constant_field_special_verdict() {
        let f = Uniform(Director::new(1.0, 0.0, 0.0).unwrap());
        let report = verify_quasi_uniformity(&f, &ring_probes(1.0), 1e-5).unwrap();
        assert!(report.verdict);
        assert!(report.constant_field);
    }

    #[test]
    fn verdict_survives_rotation_and_flip() {
        let probes = ring_probes(2.0);
        let base = verify_quasi_uniformity(&PlanarSpiral::new(0.9), &probes, 1e-5)
            .unwrap()
            .verdict;
        let rot = Rotated {
            inner: PlanarSpiral::new(0.9),
            angle: 0.77,
        };
        let flip = Flipped(PlanarSpiral::new(0.9));
        assert_eq!(
            base,
            verify_quasi_uniformity(&rot, &probes, 1e-5).unwrap().verdict
        );
        assert_eq!(
            base,
            verify_quasi_uniformity(&flip, &probes, 1e-5).unwrap().verdict
        );

        let bad_base = verify_quasi_uniformity(&SingleVariableAngle, &probes, 1e-5)
            .unwrap()
            .verdict;
        let rot_bad = Rotated {
            inner: SingleVariableAngle,
            angle: 0.5,
        };
        assert_eq!(
            bad_base,
            verify_quasi_uniformity(&rot_bad, &probes, 1e-5)
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn twist_bend_has_zero_splay_and_t_equals_2q() {
        let h = Heliconical {
            alpha: 0.8,
            sign: 1.0,
            lin: 1.1,
            quad: 0.15,
        };
        for z in [-0.5, 0.0, 0.7] {
            let s = state_at(&h, [0.0, 0.0, z], 1e-5).unwrap();
            assert!(s.splay.abs() < 1e-7);
            assert_abs_diff_eq!(s.twist.abs(), 2.0 * s.octupolar, epsilon = 1e-7);
        }
    }

    #[test]
    fn spiral_angle_tends_to_its_constant() {
        let spiral = PlanarSpiral::new(1.1);
        let radii: Vec<f64> = (1..=10).map(|i| 10.0 * i as f64).collect();
        let rep = asymptotic_angle(&spiral, 0.4, &radii);
        assert!(!rep.truncated);
        assert_abs_diff_eq!(wrap_mod_pi(rep.last - 1.1), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn extrapolation_recovers_a_one_over_r_limit() {
        let field = PlanarAngle(|x: f64, y: f64| {
            let r = (x * x + y * y).sqrt();
            let theta = y.atan2(x);
            Some(theta + 1.0 + 0.9 / r)
        });
        let radii: Vec<f64> = (2..=10).map(|i| 10.0 * i as f64).collect();
        let rep = asymptotic_angle(&field, 0.3, &radii);
        assert!((rep.last - 1.0).abs() > 5e-3);
        assert!((rep.extrapolated - 1.0).abs() < 1e-6);
    }

    #[test]
    fn winding_of_elementary_defects() {
        let m = winding_on_circuit(&PlanarSplay, [0.0, 0.0], 2.0, 720).unwrap();
        assert_abs_diff_eq!(m, 1.0, epsilon = 1e-9);
        let m = winding_on_circuit(&PlanarSpiral::new(0.9), [0.0, 0.0], 5.0, 720).unwrap();
        assert_abs_diff_eq!(m, 1.0, epsilon = 1e-9);
        let f = Uniform(Director::new(1.0, 0.0, 0.0).unwrap());
        let m = winding_on_circuit(&f, [0.0, 0.0], 2.0, 720).unwrap();
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn one_d_uniformity_examples() {
        let fr = LineFrustration::linear(-PI / 4.0, 0.0);
        let rep = one_d_uniformity(BoundaryCurve::Line(&fr), (-3.0, 3.0), 64);
        assert!(rep.constant);
        assert_abs_diff_eq!(rep.gamma0.unwrap(), -PI / 4.0, epsilon = 1e-12);

        let fr = CircleFrustration::frank(1.5, 0.3);
        let rep = one_d_uniformity(BoundaryCurve::Circle(&fr), (0.0, 2.0 * PI), 64);
        assert!(rep.constant);
        assert_abs_diff_eq!(rep.gamma0.unwrap(), 1.5, epsilon = 1e-12);

        let fr = LineFrustration::tanh_step(2.0);
        let rep = one_d_uniformity(BoundaryCurve::Line(&fr), (-2.0, 2.0), 64);
        assert!(!rep.constant);
    }
}
