//! First-order compatibility system for quasi-uniform distortions: the nine
//! scalar conditions coupling the reduced characteristics, the factor field
//! and the free connector, their specialization to planar splay-bend fields,
//! and the heliconical family that satisfies them in closed form.

use nalgebra::{Matrix3, Vector3};

use crate::distortion::{decompose_gradient, DistortionState};
use crate::error::{Error, Result};
use crate::geometry::{Director, GradientTensor};

/// Reduced (starred) characteristics of a quasi-uniform distortion: the
/// constants k such that the pointwise characteristics are f * k.
#[derive(Clone, Copy, Debug)]
pub struct QUConstants {
    pub splay: f64,
    pub twist: f64,
    pub bend1: f64,
    pub bend2: f64,
    pub octupolar: f64,
}

/// Pointwise data entering the compatibility conditions: the factor, its
/// frame components, and the free connector d with its frame-component
/// gradients.
#[derive(Clone, Copy, Debug)]
pub struct ConnectorState {
    pub f: f64,
    /// (f1, f2, f3): components of grad f on (n1, n2, n).
    pub f_frame: [f64; 3],
    /// (d1, d2, d3): components of d on (n1, n2, n).
    pub d_frame: [f64; 3],
    /// d_grad[i][j] is the j-th frame component of grad d_{i+1}.
    pub d_grad: [[f64; 3]; 3],
}

/// Frame components of the two determined connectors c1 and c2.
pub fn connectors(k: &QUConstants, f: f64) -> ([f64; 3], [f64; 3]) {
    let c1 = [
        f * (k.splay / 2.0 + k.octupolar),
        -f * k.twist / 2.0,
        -f * k.bend1,
    ];
    let c2 = [
        f * k.twist / 2.0,
        f * (k.splay / 2.0 - k.octupolar),
        -f * k.bend2,
    ];
    (c1, c2)
}

/// The nine compatibility residuals, each the difference of the two sides of
/// one scalar condition; all vanish for a quasi-uniform distortion filling
/// space.
pub fn compatibility_residuals(k: &QUConstants, st: &ConnectorState) -> [f64; 9] {
    let (s, t, b1, b2, q) = (k.splay, k.twist, k.bend1, k.bend2, k.octupolar);
    let f = st.f;
    let f2 = f * f;
    let [g1, g2, g3] = st.f_frame;
    let [d1, d2, d3] = st.d_frame;
    let d = &st.d_grad;
    let sp = s / 2.0 + q;
    let sm = s / 2.0 - q;

    [
        t / 2.0 * g1 + sp * g2 - (-f2 * b1 * t + 2.0 * f * q * d1),
        b1 * g1 + sp * g3 - (f2 * (t * t / 4.0 - sp * sp - b1 * b1) + f * b2 * d1),
        b1 * g2 - t / 2.0 * g3 - (f2 * (s * t / 2.0 - b1 * b2) + f * (b2 * d2 - 2.0 * q * d3)),
        sm * g1 - t / 2.0 * g2 - (f2 * b2 * t + 2.0 * f * q * d2),
        b2 * g1 + t / 2.0 * g3 - (-f2 * (s * t / 2.0 + b1 * b2) - f * (b1 * d1 + 2.0 * q * d3)),
        b2 * g2 + sm * g3 - (f2 * (t * t / 4.0 - sm * sm - b2 * b2) - f * b1 * d2),
        f2 * (s * s / 4.0 - q * q + t * t / 4.0)
            - (-f * t * d3 - d1 * d1 - d2 * d2 + d[0][1] - d[1][0]),
        f2 * (b1 * t / 2.0 - b2 * sp)
            - (f * sp * d1 + f * t / 2.0 * d2 - f * b1 * d3 - d2 * d3 + d[0][2] - d[2][0]),
        f2 * (b1 * sm + b2 * t / 2.0)
            - (f * sm * d2 - f * t / 2.0 * d1 - f * b2 * d3 + d1 * d3 + d[1][2] - d[2][1]),
    ]
}

/// Closed-form data for the heliconical family at cone angle `alpha`,
/// precession handedness `sign`, and phase derivatives (gz, gzz) at the
/// probed height. The connector data satisfies all nine conditions exactly;
/// the distortion state is the decomposition of the analytic gradient at
/// phase zero.
pub fn heliconical_state(
    alpha: f64,
    sign: f64,
    gz: f64,
    gzz: f64,
) -> (QUConstants, ConnectorState, DistortionState) {
    let (sa, ca) = (alpha.sin(), alpha.cos());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let k = QUConstants {
        splay: 0.0,
        twist: -sa * sa,
        bend1: sa * ca * r,
        bend2: -sa * ca * r,
        octupolar: sa * sa / 2.0,
    };
    // The opposite handedness is the mirror phase -g, so the factor and its
    // derivatives pick up the sign while the constants stay put.
    let f = sign * gz;
    let fz = sign * gzz;
    let f_frame = [-fz * sa * r, -fz * sa * r, fz * ca];
    let d_frame = [-f * sa * ca * r, -f * sa * ca * r, f * ca * ca];
    let d_grad = [
        [
            -sa * ca * r * f_frame[0],
            -sa * ca * r * f_frame[1],
            -sa * ca * r * f_frame[2],
        ],
        [
            -sa * ca * r * f_frame[0],
            -sa * ca * r * f_frame[1],
            -sa * ca * r * f_frame[2],
        ],
        [
            ca * ca * f_frame[0],
            ca * ca * f_frame[1],
            ca * ca * f_frame[2],
        ],
    ];
    // Distortion state at phase zero: n = (sin a, 0, cos a) and the gradient
    // has a single entry, d n_y / d z.
    let n = Director::from_vector(Vector3::new(sa, 0.0, ca)).expect("unit by construction");
    let mut g = Matrix3::zeros();
    g[(1, 2)] = sign * gz * sa;
    let state = decompose_gradient(&n, &GradientTensor(g)).expect("consistent by construction");
    (
        k,
        ConnectorState {
            f,
            f_frame,
            d_frame,
            d_grad,
        },
        state,
    )
}

/// Which frame leg is the out-of-plane constant for a planar splay-bend
/// field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarBranch {
    /// n1 = e_z, so S* = -2 q* and b1* = 0.
    N1Ez,
    /// n2 = e_z, so S* = +2 q* and b2* = 0; also the pure-bend case q = 0.
    N2Ez,
}

/// Picks the planar branch from a decomposed state: the splay has the sign
/// of -2q on the first branch and +2q on the second; pure bend (q = 0) falls
/// into the second by the frame convention.
pub fn planar_branch_of(state: &DistortionState) -> Result<PlanarBranch> {
    let [s, t, _, _, q] = state.characteristics();
    let scale = s.abs().max(q).max(1e-30);
    if t.abs() > 1e-6 * scale.max(1.0) {
        return Err(Error::BranchMismatch(format!(
            "planar field needs T = 0, got {t}"
        )));
    }
    if q > 1e-12 && (s + 2.0 * q).abs() <= (s - 2.0 * q).abs() {
        Ok(PlanarBranch::N1Ez)
    } else {
        Ok(PlanarBranch::N2Ez)
    }
}

/// Residuals of the planar reduction of the compatibility system. For a
/// planar field the free connector vanishes and the nine conditions collapse
/// to one scalar equation per branch, plus the vanishing of one bend
/// component and one factor derivative. Returns the triple (bend residual,
/// derivative residual, scalar equation residual).
pub fn planar_reduction_residuals(
    branch: PlanarBranch,
    k: &QUConstants,
    f: f64,
    f1: f64,
    f2: f64,
    f3: f64,
) -> Result<[f64; 3]> {
    let (s, t, b1, b2, q) = (k.splay, k.twist, k.bend1, k.bend2, k.octupolar);
    if t.abs() > 1e-6 {
        return Err(Error::BranchMismatch(format!(
            "planar reduction needs T* = 0, got {t}"
        )));
    }
    let expected = match branch {
        PlanarBranch::N1Ez => -2.0 * q,
        PlanarBranch::N2Ez => 2.0 * q,
    };
    if (s - expected).abs() > 1e-6 * (1.0 + q.abs()) {
        return Err(Error::BranchMismatch(format!(
            "S* = {s} is incompatible with q* = {q} on branch {branch:?}"
        )));
    }
    let ff = f * f;
    Ok(match branch {
        PlanarBranch::N1Ez => [b1, f1, b2 * f2 - 2.0 * q * f3 + ff * (4.0 * q * q + b2 * b2)],
        PlanarBranch::N2Ez => [b2, f2, b1 * f1 + 2.0 * q * f3 + ff * (4.0 * q * q + b1 * b1)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{DirectorField, Heliconical, PlanarSpiral, PureBend};
    use crate::quasiuniform::{fd_gradient, state_at};
    use approx::assert_abs_diff_eq;
    use nalgebra::{Matrix3, Vector3};

    #[test]
    fn heliconical_data_satisfies_all_nine_conditions() {
        for &(alpha, sign, gz, gzz) in &[
            (0.7, 1.0, 1.3, 0.4),
            (0.7, -1.0, 1.3, 0.4),
            (1.2, 1.0, -0.6, 2.0),
            (0.3, -1.0, 0.2, -1.5),
            (std::f64::consts::FRAC_PI_2, 1.0, 2.0, 0.0),
        ] {
            let (k, st, _) = heliconical_state(alpha, sign, gz, gzz);
            let res = compatibility_residuals(&k, &st);
            for (i, r) in res.iter().enumerate() {
                assert!(
                    r.abs() < 1e-13,
                    "condition {} fails for alpha={alpha}, sign={sign}: {r}",
                    i + 1
                );
            }
        }
    }

    #[test]
    fn conical_constants_match_the_conventions() {
        let (k, st, state) = heliconical_state(std::f64::consts::FRAC_PI_2, 1.0, 1.0, 0.0);
        assert_abs_diff_eq!(k.splay, 0.0);
        assert_abs_diff_eq!(k.twist.abs(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.octupolar, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(k.bend1, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(st.f, 1.0);
        // The decomposed gradient carries f times the constants.
        assert_abs_diff_eq!(state.splay, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(state.twist, st.f * k.twist, epsilon = 1e-14);
        assert_abs_diff_eq!(state.octupolar, st.f * k.octupolar, epsilon = 1e-14);
    }

    #[test]
    fn decomposed_state_tracks_the_constants_for_both_handednesses() {
        for &(alpha, sign, gz) in &[(0.8, 1.0, 1.3), (0.8, -1.0, 1.3), (1.1, -1.0, -0.7)] {
            let (k, st, state) = heliconical_state(alpha, sign, gz, 0.2);
            assert_abs_diff_eq!(state.splay, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(state.twist, st.f * k.twist, epsilon = 1e-13);
            assert_abs_diff_eq!(state.octupolar, (st.f * k.octupolar).abs(), epsilon = 1e-13);
            assert_abs_diff_eq!(
                state.bend_magnitude(),
                (st.f * k.bend1 * std::f64::consts::SQRT_2).abs(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn tampered_factor_derivative_breaks_the_system() {
        let (k, mut st, _) = heliconical_state(0.7, 1.0, 1.3, 0.4);
        st.f_frame[0] += 1e-3;
        let res = compatibility_residuals(&k, &st);
        assert!(res.iter().any(|r| r.abs() > 1e-5));
    }

    #[test]
    fn connectors_reproduce_the_sampled_gradient() {
        for sign in [1.0, -1.0] {
            let h = Heliconical {
                alpha: 0.8,
                sign,
                lin: 1.1,
                quad: 0.15,
            };
            let z = 0.4;
            let (k, st, _) = heliconical_state(h.alpha, sign, h.gz(z), h.gzz(z));
            let (c1, c2) = connectors(&k, st.f);
            let n = h.director(z).vector();
            let (n1, n2) = h.frame_vectors(z);
            let to_ambient =
                |c: [f64; 3]| -> Vector3<f64> { c[0] * n1 + c[1] * n2 + c[2] * n };
            let predicted: Matrix3<f64> =
                n1 * to_ambient(c1).transpose() + n2 * to_ambient(c2).transpose();
            let sampled = fd_gradient(&h, [0.0, 0.0, z], 1e-5).unwrap().0;
            assert!(
                (predicted - sampled).norm() < 1e-8,
                "sign {sign}: {predicted} vs {sampled}"
            );
        }
    }

    #[test]
    fn frame_gradient_uses_the_free_connector() {
        // grad n1 = -n x c1 + n2 x d, checked against finite differences of
        // the carried frame.
        let h = Heliconical {
            alpha: 0.8,
            sign: 1.0,
            lin: 1.1,
            quad: 0.15,
        };
        let z = 0.4;
        let (k, st, _) = heliconical_state(h.alpha, h.sign, h.gz(z), h.gzz(z));
        let (c1, _) = connectors(&k, st.f);
        let n = h.director(z).vector();
        let (n1, n2) = h.frame_vectors(z);
        let c1v = c1[0] * n1 + c1[1] * n2 + c1[2] * n;
        let dv = st.d_frame[0] * n1 + st.d_frame[1] * n2 + st.d_frame[2] * n;
        let predicted: Matrix3<f64> = -n * c1v.transpose() + n2 * dv.transpose();

        let hstep = 1e-5;
        let fwd = h.frame_vectors(z + hstep).0;
        let bwd = h.frame_vectors(z - hstep).0;
        let col = (fwd - bwd) / (2.0 * hstep);
        let mut sampled = Matrix3::zeros();
        for i in 0..3 {
            sampled[(i, 2)] = col[i];
        }
        assert!((predicted - sampled).norm() < 1e-9);
    }

    /// Factor field of a planar splay-bend field: q where it survives, else
    /// the bend magnitude.
    fn planar_factor(field: &dyn DirectorField, p: [f64; 3]) -> f64 {
        let s = state_at(field, p, 1e-5).unwrap();
        if s.octupolar > 1e-9 {
            s.octupolar
        } else {
            s.bend_magnitude()
        }
    }

    fn fd_along(field: &dyn DirectorField, p: [f64; 3], dir: Vector3<f64>) -> f64 {
        let h = 1e-5;
        let plus = [p[0] + h * dir.x, p[1] + h * dir.y, p[2] + h * dir.z];
        let minus = [p[0] - h * dir.x, p[1] - h * dir.y, p[2] - h * dir.z];
        (planar_factor(field, plus) - planar_factor(field, minus)) / (2.0 * h)
    }

    fn sampled_constants(state: &crate::distortion::DistortionState, f: f64) -> QUConstants {
        let [s, t, b1, b2, q] = state.characteristics();
        QUConstants {
            splay: s / f,
            twist: t / f,
            bend1: b1 / f,
            bend2: b2 / f,
            octupolar: q / f,
        }
    }

    fn check_planar(field: &dyn DirectorField, p: [f64; 3], expect: PlanarBranch) {
        let state = state_at(field, p, 1e-5).unwrap();
        let f = planar_factor(field, p);
        let n1 = state.frame.n1.vector();
        let n2 = state.frame.n2.vector();
        let n = state.frame.n.vector();
        let f_frame = [
            fd_along(field, p, n1),
            fd_along(field, p, n2),
            fd_along(field, p, n),
        ];
        let branch = planar_branch_of(&state).unwrap();
        assert_eq!(branch, expect);
        let k = sampled_constants(&state, f);
        let res =
            planar_reduction_residuals(branch, &k, f, f_frame[0], f_frame[1], f_frame[2])
                .unwrap();
        for (i, r) in res.iter().enumerate() {
            assert!(r.abs() < 1e-5, "residual {i} = {r} at {p:?}");
        }
    }

    #[test]
    fn spirals_satisfy_the_planar_reduction() {
        // The branch swaps with the sign of cos(alpha): the splay changes
        // sign while q stays positive.
        let tight = PlanarSpiral::new(0.5);
        check_planar(&tight, [1.2, 0.4, 0.0], PlanarBranch::N2Ez);
        check_planar(&tight, [-0.8, 1.5, 0.0], PlanarBranch::N2Ez);

        let open = PlanarSpiral::new(2.6);
        check_planar(&open, [1.2, 0.4, 0.0], PlanarBranch::N1Ez);
    }

    #[test]
    fn pure_bend_reduces_to_the_riccati_relation() {
        // q = 0, f = |b|: the scalar condition collapses to f1 + f^2 = 0.
        check_planar(&PureBend, [1.5, 0.0, 0.0], PlanarBranch::N2Ez);
        check_planar(&PureBend, [0.4, -1.1, 0.0], PlanarBranch::N2Ez);
    }

    #[test]
    fn single_variable_planar_field_fails_the_reduction() {
        // phi(x) = 0.3 x: planar but not quasi-uniform; the scalar equation
        // must not balance.
        let field = crate::fields::PlanarAngle(|x: f64, _y: f64| Some(0.3 * x));
        let p = [0.7, 0.0, 0.0];
        let state = state_at(&field, p, 1e-5).unwrap();
        let f = planar_factor(&field, p);
        let n1 = state.frame.n1.vector();
        let n2 = state.frame.n2.vector();
        let n = state.frame.n.vector();
        let f_frame = [
            fd_along(&field, p, n1),
            fd_along(&field, p, n2),
            fd_along(&field, p, n),
        ];
        let branch = planar_branch_of(&state).unwrap();
        let k = sampled_constants(&state, f);
        let res =
            planar_reduction_residuals(branch, &k, f, f_frame[0], f_frame[1], f_frame[2])
                .unwrap();
        assert!(res.iter().any(|r| r.abs() > 1e-3), "unexpectedly compatible: {res:?}");
    }
}
