//! Vector primitives: unit directors with head-tail symmetry, gradient
//! tensors, orthonormal distortion frames.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Default tolerances for the geometric predicates. All checks that compare
/// against a fixed threshold read their value from here so callers can tune
/// them in one place.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Unit-norm defect allowed on a director.
    pub unit: f64,
    /// Orthonormality/handedness defect allowed on a frame.
    pub frame: f64,
    /// Allowed |Gᵀn| for a gradient paired with its director.
    pub gradient_consistency: f64,
    /// Below this the in-plane distortion operator counts as zero.
    pub degenerate_operator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unit: 1e-12,
            frame: 1e-12,
            gradient_consistency: 1e-8,
            degenerate_operator: 1e-12,
        }
    }
}

/// A nematic director: a unit vector where `n` and `-n` describe the same
/// physical state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Director(Vector3<f64>);

impl Director {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(x, y, z))
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if (norm - 1.0).abs() > Tolerances::default().unit {
            return Err(Error::NonUnitDirector { norm });
        }
        Ok(Director(v))
    }

    /// Normalizes an arbitrary nonzero vector into a director.
    pub fn normalized(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if norm < 1e-300 {
            return Err(Error::NonUnitDirector { norm });
        }
        Ok(Director(v / norm))
    }

    /// In-plane director at azimuthal angle `phi` from `e_x`.
    pub fn planar(phi: f64) -> Self {
        Director(Vector3::new(phi.cos(), phi.sin(), 0.0))
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0
    }

    pub fn flipped(&self) -> Self {
        Director(-self.0)
    }

    /// Head-tail symmetric equality: `n` and `-n` compare equal.
    pub fn nematic_eq(&self, other: &Director, tol: f64) -> bool {
        let d = (self.0 - other.0).norm();
        let s = (self.0 + other.0).norm();
        d.min(s) <= tol
    }

    /// Azimuthal angle of the planar part, in (-pi, pi].
    pub fn planar_angle(&self) -> f64 {
        self.0.y.atan2(self.0.x)
    }

    /// Flips `self` into the hemisphere of `reference` (nonnegative dot).
    pub fn aligned_with(&self, reference: &Director) -> Director {
        if self.0.dot(&reference.0) < 0.0 {
            self.flipped()
        } else {
            *self
        }
    }
}

/// Spatial gradient of a director field, `G_ij = dn_i/dx_j` (units 1/length).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradientTensor(pub Matrix3<f64>);

impl GradientTensor {
    pub fn zero() -> Self {
        GradientTensor(Matrix3::zeros())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Residual |Gᵀn|; vanishes for the gradient of a unit field.
    pub fn consistency_residual(&self, n: &Director) -> f64 {
        (self.0.transpose() * n.vector()).norm()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn curl(&self) -> Vector3<f64> {
        Vector3::new(
            self.0[(2, 1)] - self.0[(1, 2)],
            self.0[(0, 2)] - self.0[(2, 0)],
            self.0[(1, 0)] - self.0[(0, 1)],
        )
    }
}

/// Skew tensor with axial vector `n`: `W(n) v = n x v`.
pub fn skew_with_axis(n: &Director) -> Matrix3<f64> {
    let v = n.vector();
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Projector on the plane orthogonal to `n`.
pub fn projector(n: &Director) -> Matrix3<f64> {
    let v = n.vector();
    Matrix3::identity() - v * v.transpose()
}

/// Deterministic orthonormal completion of `n`: the smallest-index canonical
/// axis with a nondegenerate projection, projected orthogonal to `n`.
pub fn orthonormal_complement(n: &Director) -> (Vector3<f64>, Vector3<f64>) {
    let v = n.vector();
    for axis in [Vector3::x(), Vector3::y(), Vector3::z()] {
        let u = axis - v * v.dot(&axis);
        let norm = u.norm();
        if norm > 1e-6 {
            let u = u / norm;
            return (u, v.cross(&u));
        }
    }
    unreachable!("a unit vector cannot be parallel to all three axes");
}

/// Orthonormal right-handed triple `(n1, n2, n)` with `n = n1 x n2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionFrame {
    pub n1: Director,
    pub n2: Director,
    pub n: Director,
}

impl DistortionFrame {
    pub fn new(n1: Director, n2: Director, n: Director) -> Result<Self> {
        let frame = DistortionFrame { n1, n2, n };
        let defect = frame.orthonormality_defect();
        if defect > Tolerances::default().frame {
            return Err(Error::InvalidFrame { defect });
        }
        Ok(frame)
    }

    /// Completes `(n1, n)` to a right-handed frame.
    pub fn from_n1(n1: Director, n: Director) -> Result<Self> {
        let n2 = Director::from_vector(n.vector().cross(&n1.vector()))?;
        Self::new(n1, n2, n)
    }

    /// Largest deviation from orthonormality and right-handedness.
    pub fn orthonormality_defect(&self) -> f64 {
        let (a, b, c) = (self.n1.vector(), self.n2.vector(), self.n.vector());
        let mut d: f64 = 0.0;
        d = d.max((a.norm() - 1.0).abs());
        d = d.max((b.norm() - 1.0).abs());
        d = d.max((c.norm() - 1.0).abs());
        d = d.max(a.dot(&b).abs());
        d = d.max(a.dot(&c).abs());
        d = d.max(b.dot(&c).abs());
        d.max((a.cross(&b) - c).norm())
    }

    /// Flips `(n1, n2) -> (-n1, -n2)`, preserving handedness.
    pub fn flipped_pair(&self) -> Self {
        DistortionFrame {
            n1: self.n1.flipped(),
            n2: self.n2.flipped(),
            n: self.n,
        }
    }
}

/// Slope of a straight line in the plane, allowing the vertical case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Slope {
    Finite(f64),
    Vertical,
}

impl Slope {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Slope::Finite(m) => Some(*m),
            Slope::Vertical => None,
        }
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self, Slope::Vertical)
    }
}

/// Wraps an angle difference into (-pi/2, pi/2]; the natural metric for
/// angles of a line field, which are defined modulo pi.
pub fn wrap_mod_pi(delta: f64) -> f64 {
    let mut d = delta % std::f64::consts::PI;
    if d > std::f64::consts::FRAC_PI_2 {
        d -= std::f64::consts::PI;
    } else if d <= -std::f64::consts::FRAC_PI_2 {
        d += std::f64::consts::PI;
    }
    d
}
