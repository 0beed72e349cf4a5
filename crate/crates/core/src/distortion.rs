//! Decomposition of a director gradient into the scalar distortion
//! characteristics (splay, twist, bend components, octupolar splay) and the
//! associated distortion frame, plus the Oseen-Frank energy in both forms.

use nalgebra::{Vector2, Vector3};

use crate::error::{Error, Result};
use crate::geometry::{
    orthonormal_complement, projector, skew_with_axis, Director, DistortionFrame, GradientTensor,
    Tolerances,
};

/// The five scalar distortion characteristics together with the frame that
/// diagonalizes the in-plane operator, and optionally the factor value of a
/// quasi-uniform field at the sample point.
#[derive(Clone, Copy, Debug)]
pub struct DistortionState {
    /// Splay `S = div n`.
    pub splay: f64,
    /// Twist `T = n . curl n`.
    pub twist: f64,
    /// Bend component on `n1`.
    pub bend1: f64,
    /// Bend component on `n2`.
    pub bend2: f64,
    /// Octupolar splay `q >= 0`.
    pub octupolar: f64,
    pub frame: DistortionFrame,
    /// Factor value, when the state comes from a quasi-uniform construction.
    pub factor: Option<f64>,
}

impl DistortionState {
    pub fn bend_vector(&self) -> Vector3<f64> {
        self.frame.n1.vector() * self.bend1 + self.frame.n2.vector() * self.bend2
    }

    pub fn bend_magnitude(&self) -> f64 {
        self.bend_vector().norm()
    }

    /// Reassembles the gradient from the characteristics and the frame.
    pub fn reconstruct_gradient(&self) -> GradientTensor {
        let n = &self.frame.n;
        let n1 = self.frame.n1.vector();
        let n2 = self.frame.n2.vector();
        let b = self.bend_vector();
        let d = (n1 * n1.transpose() - n2 * n2.transpose()) * self.octupolar;
        let g = -b * n.vector().transpose()
            + skew_with_axis(n) * (self.twist / 2.0)
            + projector(n) * (self.splay / 2.0)
            + d;
        GradientTensor(g)
    }

    /// Characteristics as the vector `(S, T, b1, b2, q)`.
    pub fn characteristics(&self) -> [f64; 5] {
        [self.splay, self.twist, self.bend1, self.bend2, self.octupolar]
    }
}

/// Splits `G` into splay, twist, bend and the traceless symmetric in-plane
/// operator, whose positive eigenvalue is the octupolar splay. The frame is
/// fixed by taking `n1` as the eigenvector of the positive eigenvalue,
/// oriented so that the leading bend component is nonnegative.
pub fn decompose_gradient(n: &Director, g: &GradientTensor) -> Result<DistortionState> {
    decompose_gradient_with(n, g, &Tolerances::default())
}

pub fn decompose_gradient_with(
    n: &Director,
    g: &GradientTensor,
    tol: &Tolerances,
) -> Result<DistortionState> {
    let residual = g.consistency_residual(n);
    if residual > tol.gradient_consistency {
        return Err(Error::InconsistentGradient { residual });
    }

    let nv = n.vector();
    let splay = g.trace();
    let twist = nv.dot(&g.curl());
    let bend = -(g.0 * nv);

    let d = g.0 + bend * nv.transpose()
        - skew_with_axis(n) * (twist / 2.0)
        - projector(n) * (splay / 2.0);

    // 2x2 restriction of D to the plane orthogonal to n: [[a, c], [c, -a]].
    let (u, v) = orthonormal_complement(n);
    let a = u.dot(&(d * u));
    let c = 0.5 * (u.dot(&(d * v)) + v.dot(&(d * u)));
    let octupolar = (a * a + c * c).sqrt();

    // Judge degeneracy relative to the gradient's magnitude: a sampled
    // gradient carries noise far above machine epsilon, and an octupolar
    // eigenvalue at that level would hand the frame to the noise.
    let degenerate = tol.degenerate_operator.max(1e-9 * g.0.norm());
    let seed = if octupolar > degenerate {
        // Eigenvector of [[a, c], [c, -a]] for +q; pick the better-conditioned
        // of the two row formulas.
        let e1 = Vector2::new(c, octupolar - a);
        let e2 = Vector2::new(octupolar + a, c);
        let e = if e1.norm() >= e2.norm() { e1 } else { e2 };
        u * e.x + v * e.y
    } else if bend.norm() > tol.degenerate_operator {
        bend
    } else {
        u
    };
    // The seed may carry a residual along n (sampled gradients are only
    // approximately tangent), so rebuild the frame by projection.
    let mut n1v = (seed - nv * nv.dot(&seed)).normalize();
    let mut n2v = nv.cross(&n1v).normalize();

    let mut bend1 = bend.dot(&n1v);
    let mut bend2 = bend.dot(&n2v);
    // Orient the eigenvector pair so b1 >= 0; when b1 vanishes make the first
    // nonzero component of n1 positive, so the frame is deterministic.
    let flip = if bend1.abs() > tol.degenerate_operator {
        bend1 < 0.0
    } else {
        let lead = if n1v.x.abs() > 1e-9 {
            n1v.x
        } else if n1v.y.abs() > 1e-9 {
            n1v.y
        } else {
            n1v.z
        };
        lead < 0.0
    };
    if flip {
        n1v = -n1v;
        n2v = -n2v;
        bend1 = -bend1;
        bend2 = -bend2;
    }

    let frame = DistortionFrame::new(
        Director::from_vector(n1v)?,
        Director::from_vector(n2v)?,
        *n,
    )?;

    Ok(DistortionState {
        splay,
        twist,
        bend1,
        bend2,
        octupolar,
        frame,
        factor: None,
    })
}

/// Residual of the trace identity `2q^2 = tr(G^2) + T^2/2 - S^2/2`; vanishes
/// whenever the state was extracted from `G`.
pub fn q_identity_residual(g: &GradientTensor, state: &DistortionState) -> f64 {
    2.0 * state.octupolar * state.octupolar
        - (g.0 * g.0).trace()
        - state.twist * state.twist / 2.0
        + state.splay * state.splay / 2.0
}

/// Distortion state of an in-plane field `n = (cos phi, sin phi, 0)` from the
/// angle and its Cartesian derivatives. Planar fields have `T = 0` and
/// `q = |S|/2`; the frame branch switches with the sign of the splay.
pub fn planar_state_from_angle(phi: f64, phi_x: f64, phi_y: f64) -> DistortionState {
    let (sin_p, cos_p) = phi.sin_cos();
    let splay = phi_y * cos_p - phi_x * sin_p;
    let bend_coeff = -(phi_x * cos_p + phi_y * sin_p);
    let n = Director::planar(phi);

    let (n1, n2, bend1, bend2) = if splay >= 0.0 {
        (
            Vector3::new(-sin_p, cos_p, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            bend_coeff,
            0.0,
        )
    } else {
        (
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(sin_p, -cos_p, 0.0),
            0.0,
            -bend_coeff,
        )
    };

    let frame = DistortionFrame {
        n1: Director::from_vector(n1).expect("unit by construction"),
        n2: Director::from_vector(n2).expect("unit by construction"),
        n,
    };
    DistortionState {
        splay,
        twist: 0.0,
        bend1,
        bend2,
        octupolar: splay.abs() / 2.0,
        frame,
        factor: None,
    }
}

/// Distortion state of `n = cos(alpha) e_r + sin(alpha) e_theta` from the
/// local angle and its polar derivatives. The returned frame is expressed in
/// the local basis with `e_r -> e_x`, `e_theta -> e_y`.
pub fn polar_state_from_angle(
    alpha: f64,
    alpha_r: f64,
    alpha_theta: f64,
    r: f64,
) -> Result<DistortionState> {
    if r <= 0.0 {
        return Err(Error::InvalidRadius(r));
    }
    let (sin_a, cos_a) = alpha.sin_cos();
    let splay = (1.0 + alpha_theta) * cos_a / r - alpha_r * sin_a;
    let bend_coeff = alpha_r * cos_a + (1.0 + alpha_theta) * sin_a / r;
    let n = Director::from_vector(Vector3::new(cos_a, sin_a, 0.0)).expect("unit");
    let in_plane = Vector3::new(sin_a, -cos_a, 0.0);

    let (n1, n2, bend1, bend2) = if splay >= 0.0 {
        (in_plane, Vector3::new(0.0, 0.0, -1.0), bend_coeff, 0.0)
    } else {
        (Vector3::new(0.0, 0.0, 1.0), in_plane, 0.0, bend_coeff)
    };

    let frame = DistortionFrame {
        n1: Director::from_vector(n1).expect("unit"),
        n2: Director::from_vector(n2).expect("unit"),
        n,
    };
    Ok(DistortionState {
        splay,
        twist: 0.0,
        bend1,
        bend2,
        octupolar: splay.abs() / 2.0,
        frame,
        factor: None,
    })
}

/// Frank elastic constants for splay, twist, bend and saddle-splay.
#[derive(Clone, Copy, Debug)]
pub struct ElasticConstants {
    pub k11: f64,
    pub k22: f64,
    pub k33: f64,
    pub k24: f64,
}

impl ElasticConstants {
    pub fn new(k11: f64, k22: f64, k33: f64, k24: f64) -> Result<Self> {
        for (name, value) in [("K11", k11), ("K22", k22), ("K33", k33), ("K24", k24)] {
            if value < 0.0 {
                return Err(Error::NegativeElasticConstant { name, value });
            }
        }
        Ok(ElasticConstants { k11, k22, k33, k24 })
    }

    pub fn one_constant(k: f64) -> Result<Self> {
        Self::new(k, k, k, k)
    }
}

/// True when the constants make the energy density semipositive definite:
/// `K11 >= K24 >= 0`, `K22 >= K24 >= 0`, `K33 >= 0`.
pub fn ericksen_satisfied(k: &ElasticConstants) -> bool {
    k.k11 >= k.k24 && k.k22 >= k.k24 && k.k24 >= 0.0 && k.k33 >= 0.0
}

/// Oseen-Frank density evaluated two ways: directly from the gradient and
/// from the distortion characteristics `(S, T, B, q)`. The two agree by the
/// trace identity, so the pair doubles as a consistency check.
pub fn oseen_frank_energy(
    state: &DistortionState,
    bend_magnitude: f64,
    k: &ElasticConstants,
    g: &GradientTensor,
) -> Result<(f64, f64)> {
    let splay = g.trace();
    let curl = g.curl();
    let nv = state.frame.n.vector();
    let twist = nv.dot(&curl);
    let bend = nv.cross(&curl);

    let consistency = (splay - state.splay)
        .abs()
        .max((twist - state.twist).abs())
        .max((bend.norm() - bend_magnitude).abs());
    if consistency > 1e-6 {
        return Err(Error::InconsistentState {
            residual: consistency,
        });
    }

    let direct = 0.5 * k.k11 * splay * splay
        + 0.5 * k.k22 * twist * twist
        + 0.5 * k.k33 * bend.norm_squared()
        + k.k24 * ((g.0 * g.0).trace() - splay * splay);

    let q = state.octupolar;
    let modes = 0.5 * (k.k11 - k.k24) * state.splay * state.splay
        + 0.5 * (k.k22 - k.k24) * state.twist * state.twist
        + 0.5 * k.k33 * bend_magnitude * bend_magnitude
        + k.k24 * 2.0 * q * q;

    if !direct.is_finite() || !modes.is_finite() {
        return Err(Error::InconsistentState { residual: f64::NAN });
    }
    Ok((direct, modes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Matrix3;

    fn pure_bend_at_unit_x() -> (Director, GradientTensor) {
        // n = (-y, x)/r at (1, 0); gradient derived symbolically.
        let n = Director::new(0.0, 1.0, 0.0).unwrap();
        let g = GradientTensor(Matrix3::new(
            0.0, -1.0, 0.0, //
            0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0,
        ));
        (n, g)
    }

    fn planar_splay_at_2x() -> (Director, GradientTensor) {
        // n = e_r at (2, 0); gradient is P(n)/r.
        let n = Director::new(1.0, 0.0, 0.0).unwrap();
        let g = GradientTensor(Matrix3::new(
            0.0, 0.0, 0.0, //
            0.0, 0.5, 0.0, //
            0.0, 0.0, 0.0,
        ));
        (n, g)
    }

    #[test]
    fn zero_gradient_decomposes_trivially() {
        let n = Director::new(0.0, 0.0, 1.0).unwrap();
        let state = decompose_gradient(&n, &GradientTensor::zero()).unwrap();
        assert_eq!(state.characteristics(), [0.0; 5]);
        assert!(state.frame.orthonormality_defect() < 1e-12);
    }

    #[test]
    fn pure_bend_has_unit_radial_bend() {
        let (n, g) = pure_bend_at_unit_x();
        let state = decompose_gradient(&n, &g).unwrap();
        assert_abs_diff_eq!(state.splay, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state.twist, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state.octupolar, 0.0, epsilon = 1e-14);
        let b = state.bend_vector();
        assert_abs_diff_eq!(b, Vector3::new(1.0, 0.0, 0.0), epsilon = 1e-14);
    }

    #[test]
    fn planar_splay_characteristics() {
        let (n, g) = planar_splay_at_2x();
        let state = decompose_gradient(&n, &g).unwrap();
        assert_abs_diff_eq!(state.splay, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(state.octupolar, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(state.twist, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state.bend_magnitude(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn reconstruction_reproduces_gradient() {
        for (n, g) in [pure_bend_at_unit_x(), planar_splay_at_2x()] {
            let state = decompose_gradient(&n, &g).unwrap();
            let back = state.reconstruct_gradient();
            assert_abs_diff_eq!(back.0, g.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn q_identity_vanishes_for_consistent_state() {
        let (n, g) = pure_bend_at_unit_x();
        let state = decompose_gradient(&n, &g).unwrap();
        assert_abs_diff_eq!(q_identity_residual(&g, &state), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn q_identity_detects_tampered_q() {
        let (n, g) = planar_splay_at_2x();
        let mut state = decompose_gradient(&n, &g).unwrap();
        let q = state.octupolar;
        state.octupolar = q + 1.0;
        let expected = 2.0 * (q + 1.0) * (q + 1.0) - 2.0 * q * q;
        assert_abs_diff_eq!(q_identity_residual(&g, &state), expected, epsilon = 1e-12);
    }

    #[test]
    fn inconsistent_gradient_is_rejected() {
        let n = Director::new(0.0, 0.0, 1.0).unwrap();
        let g = GradientTensor(Matrix3::new(
            0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, //
            1.0, 0.0, 0.0,
        ));
        // Gᵀn = (1, 0, 0), far from zero.
        assert!(matches!(
            decompose_gradient(&n, &g),
            Err(Error::InconsistentGradient { .. })
        ));
    }

    #[test]
    fn planar_state_branches() {
        use std::f64::consts::FRAC_PI_2;
        let s = planar_state_from_angle(FRAC_PI_2, 1.0, 0.0);
        assert_abs_diff_eq!(s.splay, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.octupolar, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.bend_magnitude(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.frame.n1.vector(), Vector3::z(), epsilon = 1e-14);

        let s = planar_state_from_angle(0.7, 0.0, 0.0);
        assert_eq!(s.characteristics(), [0.0; 5]);

        let s = planar_state_from_angle(0.0, 0.0, 1.0);
        assert_abs_diff_eq!(s.splay, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.octupolar, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.frame.n2.vector(), Vector3::z(), epsilon = 1e-14);
    }

    #[test]
    fn polar_state_matches_substitution() {
        let s = polar_state_from_angle(0.0, 0.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(s.splay, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.bend1, 0.0, epsilon = 1e-14);

        let s = polar_state_from_angle(std::f64::consts::FRAC_PI_2, 0.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(s.splay, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.bend1, 1.0, epsilon = 1e-14);

        // Spiral with tan(alpha) = b* = 2: bend-to-splay ratio equals b*.
        let s = polar_state_from_angle(2.0f64.atan(), 0.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(s.bend1 / s.splay, 2.0, epsilon = 1e-12);

        assert!(polar_state_from_angle(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn energy_forms_agree() {
        let k = ElasticConstants::new(1.3, 0.8, 2.1, 0.5).unwrap();
        let (n, g) = pure_bend_at_unit_x();
        let state = decompose_gradient(&n, &g).unwrap();
        let (direct, modes) = oseen_frank_energy(&state, 1.0, &k, &g).unwrap();
        assert_abs_diff_eq!(direct, k.k33 / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(modes, k.k33 / 2.0, epsilon = 1e-14);

        let n = Director::new(0.0, 0.0, 1.0).unwrap();
        let zero = GradientTensor::zero();
        let state = decompose_gradient(&n, &zero).unwrap();
        let (direct, modes) = oseen_frank_energy(&state, 0.0, &k, &zero).unwrap();
        assert_eq!((direct, modes), (0.0, 0.0));
    }

    #[test]
    fn ericksen_truth_table() {
        let check = |t: (f64, f64, f64, f64)| {
            ericksen_satisfied(&ElasticConstants::new(t.0, t.1, t.2, t.3).unwrap())
        };
        assert!(check((1.0, 1.0, 1.0, 1.0)));
        assert!(!check((1.0, 1.0, 1.0, 2.0)));
        assert!(check((2.0, 3.0, 0.0, 1.0)));
    }
}
