//! Closed-form director fields and samplers built on the characteristic
//! solvers. Everything implements [`DirectorField`], the sampling interface
//! the numerical verifiers consume.

use nalgebra::Vector3;

use crate::circle::{self, DomainRegion};
use crate::geometry::Director;
use crate::halfplane::{self, PointAngle, RelievabilityVerdict};
use crate::profiles::{CircleFrustration, LineFrustration};

/// A director line field sampled pointwise. Returns `None` outside the
/// field's domain. The returned representative of the n/-n pair is arbitrary
/// but fixed for a given point.
pub trait DirectorField: Sync {
    fn eval(&self, p: [f64; 3]) -> Option<Director>;
}

impl<T: DirectorField + ?Sized> DirectorField for &T {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        (**self).eval(p)
    }
}

pub struct Uniform(pub Director);

impl DirectorField for Uniform {
    fn eval(&self, _p: [f64; 3]) -> Option<Director> {
        Some(self.0)
    }
}

/// Radial field n = x / |x| in three dimensions.
pub struct Hedgehog;

impl DirectorField for Hedgehog {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        Director::normalized(Vector3::new(p[0], p[1], p[2])).ok()
    }
}

/// Azimuthal planar field n = e_theta, circulating around the z-axis.
pub struct PureBend;

impl DirectorField for PureBend {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        Director::normalized(Vector3::new(-p[1], p[0], 0.0)).ok()
    }
}

/// Radial planar field n = e_r away from the z-axis.
pub struct PlanarSplay;

impl DirectorField for PlanarSplay {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        Director::normalized(Vector3::new(p[0], p[1], 0.0)).ok()
    }
}

/// Planar spiral with constant local angle: n = cos(alpha) e_r +
/// sin(alpha) e_theta, the interpolation between planar splay and pure bend.
pub struct PlanarSpiral {
    pub alpha: f64,
    /// Defect location in the plane.
    pub center: [f64; 2],
}

impl PlanarSpiral {
    pub fn new(alpha: f64) -> Self {
        PlanarSpiral {
            alpha,
            center: [0.0, 0.0],
        }
    }

    pub fn recentred(alpha: f64, center: [f64; 2]) -> Self {
        PlanarSpiral { alpha, center }
    }
}

impl DirectorField for PlanarSpiral {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        let theta = dy.atan2(dx);
        if dx * dx + dy * dy < 1e-24 {
            return None;
        }
        Some(Director::planar(theta + self.alpha))
    }
}

/// Planar field with azimuth phi(x) = x, a single-variable angle that is
/// never quasi-uniform unless constant.
pub struct SingleVariableAngle;

impl DirectorField for SingleVariableAngle {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        Some(Director::planar(p[0]))
    }
}

/// Planar field defined by an arbitrary angle function of (x, y).
pub struct PlanarAngle<F: Fn(f64, f64) -> Option<f64> + Sync>(pub F);

impl<F: Fn(f64, f64) -> Option<f64> + Sync> DirectorField for PlanarAngle<F> {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        (self.0)(p[0], p[1]).map(Director::planar)
    }
}

/// Heliconical twist-bend field: n precesses about e_z with constant cone
/// angle `alpha` and phase g(z) = lin z + quad z^2. `sign` (+1/-1) selects
/// the handedness of the precession.
pub struct Heliconical {
    pub alpha: f64,
    pub sign: f64,
    pub lin: f64,
    pub quad: f64,
}

impl Heliconical {
    pub fn g(&self, z: f64) -> f64 {
        self.lin * z + self.quad * z * z
    }

    pub fn gz(&self, z: f64) -> f64 {
        self.lin + 2.0 * self.quad * z
    }

    pub fn gzz(&self, _z: f64) -> f64 {
        2.0 * self.quad
    }

    pub fn director(&self, z: f64) -> Director {
        let g = self.g(z);
        let (sa, ca) = (self.alpha.sin(), self.alpha.cos());
        Director::from_vector(Vector3::new(
            sa * g.cos(),
            self.sign * sa * g.sin(),
            ca,
        ))
        .expect("unit by construction")
    }

    /// The distortion frame carried by the family; n1 and n2 bisect the cone
    /// directions.
    pub fn frame_vectors(&self, z: f64) -> (Vector3<f64>, Vector3<f64>) {
        let g = self.g(z);
        let (sa, ca) = (self.alpha.sin(), self.alpha.cos());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let n1 = Vector3::new(
            r * (ca * g.cos() + self.sign * g.sin()),
            r * (self.sign * ca * g.sin() - g.cos()),
            -r * sa,
        );
        let n2 = Vector3::new(
            r * (ca * g.cos() - self.sign * g.sin()),
            r * (self.sign * ca * g.sin() + g.cos()),
            -r * sa,
        );
        (n1, n2)
    }
}

impl DirectorField for Heliconical {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        Some(self.director(p[2]))
    }
}

/// Field relieved from a line frustration by the characteristic fan, defined
/// on the half-plane picked by the relievability verdict.
pub struct HalfPlaneField {
    pub frustration: LineFrustration,
    pub b_star: f64,
    /// Upper (y > 0) or lower (y < 0) half-plane.
    pub upper: bool,
    pub anchor_window: (f64, f64),
    /// Scan resolution of the per-point anchor search.
    pub n_scan: usize,
}

impl HalfPlaneField {
    /// Builds the field after checking relievability over `window`.
    pub fn new(
        frustration: LineFrustration,
        b_star: f64,
        window: (f64, f64),
    ) -> Result<Self, halfplane::RelievabilityReport> {
        let report = halfplane::assess_relievability(&frustration, b_star, window, 512);
        let upper = match report.verdict {
            RelievabilityVerdict::RelievableUpper | RelievabilityVerdict::Constant => true,
            RelievabilityVerdict::RelievableLower => false,
            RelievabilityVerdict::NotRelievable => return Err(report),
        };
        Ok(HalfPlaneField {
            frustration,
            b_star,
            upper,
            anchor_window: halfplane::DEFAULT_ANCHOR_WINDOW,
            n_scan: halfplane::DEFAULT_SCAN,
        })
    }
}

impl DirectorField for HalfPlaneField {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        let in_half = if self.upper { p[1] > 0.0 } else { p[1] < 0.0 };
        let on_line = p[1] == 0.0;
        if !in_half && !on_line {
            return None;
        }
        match halfplane::field_angle_at_in(
            p[0],
            p[1],
            &self.frustration,
            self.b_star,
            self.anchor_window,
            self.n_scan,
        ) {
            PointAngle::Angle(a) => Some(Director::planar(a)),
            _ => None,
        }
    }
}

/// Field relieved from a circle frustration on its admissible domain,
/// optionally extended through the circle interior.
pub struct CircleField {
    pub frustration: CircleFrustration,
    pub b_star: f64,
    pub extend_inside: bool,
    pub domain: DomainRegion,
    /// Scan resolution of the per-point ray search.
    pub n_scan: usize,
}

impl CircleField {
    pub fn new(frustration: CircleFrustration, b_star: f64, extend_inside: bool) -> Self {
        let domain = circle::admissible_domain(&frustration, b_star);
        CircleField {
            frustration,
            b_star,
            extend_inside,
            domain,
            n_scan: 4096,
        }
    }
}

impl DirectorField for CircleField {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        let inside = p[0] * p[0] + p[1] * p[1] <= 1.0;
        if inside && !self.extend_inside {
            return None;
        }
        // Extension promotes the rays to full lines, so the tangency cuts no
        // longer bound the field.
        if !inside && !self.extend_inside && !self.domain.contains(p[0], p[1]) {
            return None;
        }
        match circle::field_angle_at_circle_in(
            p[0],
            p[1],
            &self.frustration,
            self.b_star,
            self.extend_inside,
            self.n_scan,
        ) {
            Ok(PointAngle::Angle(a)) => Some(Director::planar(a)),
            _ => None,
        }
    }
}

/// Wrapper rotating a field rigidly about e_z; used to check that verdicts
/// are frame-independent.
pub struct Rotated<F: DirectorField> {
    pub inner: F,
    pub angle: f64,
}

impl<F: DirectorField> DirectorField for Rotated<F> {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        let (s, c) = self.angle.sin_cos();
        let q = [c * p[0] + s * p[1], -s * p[0] + c * p[1], p[2]];
        let n = self.inner.eval(q)?.vector();
        Director::from_vector(Vector3::new(c * n.x - s * n.y, s * n.x + c * n.y, n.z)).ok()
    }
}

/// Wrapper flipping the representative n -> -n everywhere.
pub struct Flipped<F: DirectorField>(pub F);

impl<F: DirectorField> DirectorField for Flipped<F> {
    fn eval(&self, p: [f64; 3]) -> Option<Director> {
        self.0.eval(p).map(|n| n.flipped())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn elementary_fields_are_unit_and_defined_off_axis() {
        let fields: Vec<Box<dyn DirectorField>> = vec![
            Box::new(Hedgehog),
            Box::new(PureBend),
            Box::new(PlanarSplay),
            Box::new(PlanarSpiral::new(0.8)),
        ];
        for f in &fields {
            let n = f.eval([1.2, -0.7, 0.4]).unwrap();
            assert_abs_diff_eq!(n.vector().norm(), 1.0, epsilon = 1e-12);
        }
        assert!(PlanarSpiral::new(0.4).eval([0.0, 0.0, 0.0]).is_none());
    }

    #[test]
    fn heliconical_frame_is_orthonormal() {
        let h = Heliconical {
            alpha: 0.7,
            sign: 1.0,
            lin: 0.9,
            quad: 0.2,
        };
        for z in [-1.0, 0.0, 0.8] {
            let n = h.director(z).vector();
            let (n1, n2) = h.frame_vectors(z);
            assert_abs_diff_eq!(n1.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(n2.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(n1.dot(&n2), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(n1.dot(&n), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(n1.cross(&n2), n, epsilon = 1e-12);
        }
    }

    #[test]
    fn halfplane_field_rejects_non_relievable_profiles() {
        let fr = LineFrustration::sinusoidal(std::f64::consts::PI / 10.0, std::f64::consts::PI);
        assert!(HalfPlaneField::new(fr, 1.0, (-5.0, 5.0)).is_err());

        let fr = LineFrustration::tanh_step(2.0);
        let field = HalfPlaneField::new(fr, 2.0, (-8.0, 8.0)).unwrap();
        assert!(field.upper);
        assert!(field.eval([0.5, 1.0, 0.0]).is_some());
        assert!(field.eval([0.5, -1.0, 0.0]).is_none());
    }

    #[test]
    fn circle_field_respects_its_domain() {
        let fr = CircleFrustration::frank(1.0, 0.0);
        let field = CircleField::new(fr, 2.0, false);
        assert!(field.eval([2.0, 0.0, 0.0]).is_some());
        assert!(field.eval([0.3, 0.0, 0.0]).is_none());
    }

    #[test]
    fn rotation_and_flip_preserve_the_line_field() {
        let base = PlanarSpiral::new(0.6);
        let rot = Rotated {
            inner: PlanarSpiral::new(0.6),
            angle: 1.1,
        };
        // A spiral is rotationally symmetric about its center.
        let p = [1.3, 0.4, 0.0];
        let a = base.eval(p).unwrap();
        let b = rot.eval(p).unwrap();
        assert!(a.nematic_eq(&b, 1e-12));

        let flip = Flipped(PlanarSpiral::new(0.6));
        let c = flip.eval(p).unwrap();
        assert!(a.nematic_eq(&c, 1e-12));
    }
}
