//! Boundary angle profiles: the frustration prescribed on the line y = 0 (as
//! an azimuth phi0 of x0) or on the unit circle (as a local angle alpha0 of
//! theta0). Built-in presets cover the cases exercised throughout the crate;
//! arbitrary profiles come in as sampled tables.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::interpolate::MonotoneCubic;

const TWO_PI: f64 = 2.0 * PI;

/// Angle profile phi0(x0) prescribed along the line y = 0.
#[derive(Clone, Debug)]
pub struct LineFrustration {
    kind: LineKind,
    label: String,
}

#[derive(Clone, Debug)]
enum LineKind {
    Constant { value: f64 },
    Linear { slope: f64, offset: f64 },
    /// phi0 = -pi/2 (tanh x0 + 1) - arctan b*
    TanhStep { b_star: f64 },
    /// phi0 = -pi/2 (x0^5 + 1) - arctan b*
    QuinticStep { b_star: f64 },
    /// Constant for x0 <= 0, then -3pi/4 exp(-1/x0^2) shifted; smooth but not
    /// analytic at the junction.
    Hybrid { b_star: f64 },
    /// phi0 = amplitude * sin(wavenumber * x0)
    Sinusoidal { amplitude: f64, wavenumber: f64 },
    Table(MonotoneCubic),
}

impl LineFrustration {
    pub fn constant(value: f64) -> Self {
        LineFrustration {
            kind: LineKind::Constant { value },
            label: format!("constant({value})"),
        }
    }

    pub fn linear(slope: f64, offset: f64) -> Self {
        LineFrustration {
            kind: LineKind::Linear { slope, offset },
            label: format!("linear(slope={slope})"),
        }
    }

    pub fn tanh_step(b_star: f64) -> Self {
        LineFrustration {
            kind: LineKind::TanhStep { b_star },
            label: format!("tanh-step(b*={b_star})"),
        }
    }

    pub fn quintic_step(b_star: f64) -> Self {
        LineFrustration {
            kind: LineKind::QuinticStep { b_star },
            label: format!("quintic-step(b*={b_star})"),
        }
    }

    pub fn hybrid(b_star: f64) -> Self {
        LineFrustration {
            kind: LineKind::Hybrid { b_star },
            label: format!("hybrid(b*={b_star})"),
        }
    }

    pub fn sinusoidal(amplitude: f64, wavenumber: f64) -> Self {
        LineFrustration {
            kind: LineKind::Sinusoidal {
                amplitude,
                wavenumber,
            },
            label: format!("sinusoidal(a={amplitude}, k={wavenumber})"),
        }
    }

    pub fn from_table(points: &[(f64, f64)]) -> Result<Self> {
        Ok(LineFrustration {
            kind: LineKind::Table(MonotoneCubic::new(points)?),
            label: format!("table({} points)", points.len()),
        })
    }

    /// Parses a two-column CSV with header `x0,phi0` (angles in radians).
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let rows = parse_two_column_csv(text, "x0", "phi0")?;
        Self::from_table(&rows)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn phi0(&self, x0: f64) -> f64 {
        match &self.kind {
            LineKind::Constant { value } => *value,
            LineKind::Linear { slope, offset } => slope * x0 + offset,
            LineKind::TanhStep { b_star } => -PI / 2.0 * (x0.tanh() + 1.0) - b_star.atan(),
            LineKind::QuinticStep { b_star } => -PI / 2.0 * (x0.powi(5) + 1.0) - b_star.atan(),
            LineKind::Hybrid { b_star } => {
                let base = -b_star.atan() + 3.0 * PI / 4.0;
                if x0 > 0.0 {
                    base - 3.0 * PI / 4.0 * (-1.0 / (x0 * x0)).exp()
                } else {
                    base
                }
            }
            LineKind::Sinusoidal {
                amplitude,
                wavenumber,
            } => amplitude * (wavenumber * x0).sin(),
            LineKind::Table(t) => t.eval(x0),
        }
    }

    pub fn dphi0(&self, x0: f64) -> f64 {
        match &self.kind {
            LineKind::Constant { .. } => 0.0,
            LineKind::Linear { slope, .. } => *slope,
            LineKind::TanhStep { .. } => {
                let c = x0.cosh();
                -PI / 2.0 / (c * c)
            }
            LineKind::QuinticStep { .. } => -PI / 2.0 * 5.0 * x0.powi(4),
            LineKind::Hybrid { .. } => {
                if x0 > 0.0 {
                    -3.0 * PI / 4.0 * (-1.0 / (x0 * x0)).exp() * 2.0 / x0.powi(3)
                } else {
                    0.0
                }
            }
            LineKind::Sinusoidal {
                amplitude,
                wavenumber,
            } => amplitude * wavenumber * (wavenumber * x0).cos(),
            LineKind::Table(t) => t.deriv(x0),
        }
    }

    /// Largest deviation between the analytic derivative and a centered
    /// difference over `n` sample points in `window`.
    pub fn derivative_defect(&self, window: (f64, f64), n: usize) -> f64 {
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let x = window.0 + (window.1 - window.0) * i as f64 / (n.max(2) - 1) as f64;
            let fd = (self.phi0(x + h) - self.phi0(x - h)) / (2.0 * h);
            worst = worst.max((fd - self.dphi0(x)).abs());
        }
        worst
    }
}

/// Local-angle profile alpha0(theta0) prescribed on the unit circle, with
/// topological charge m fixed by the winding of alpha0 over one turn.
#[derive(Clone, Debug)]
pub struct CircleFrustration {
    kind: CircleKind,
    m: f64,
    c0: f64,
    label: String,
}

#[derive(Clone, Debug)]
enum CircleKind {
    /// alpha0 = (m - 1) theta0 + c0
    Frank,
    /// alpha0 = (m - 1) theta0 + (m/3) sin theta0 + c0
    Perturbed,
    /// Table on [0, 2pi]; evaluation outside unwraps by the winding increment.
    Table(MonotoneCubic),
}

impl CircleFrustration {
    pub fn frank(m: f64, c0: f64) -> Self {
        CircleFrustration {
            kind: CircleKind::Frank,
            m,
            c0,
            label: format!("frank(m={m}, c0={c0})"),
        }
    }

    pub fn perturbed(m: f64, c0: f64) -> Self {
        CircleFrustration {
            kind: CircleKind::Perturbed,
            m,
            c0,
            label: format!("perturbed(m={m}, c0={c0})"),
        }
    }

    /// Table of (theta0, alpha0) covering [0, 2pi]. The endpoint increment
    /// must give a half-integer charge, or the director is discontinuous at
    /// theta0 = 0.
    pub fn from_table(points: &[(f64, f64)]) -> Result<Self> {
        let t = MonotoneCubic::new(points)?;
        let ((t_lo, a_lo), (t_hi, a_hi)) = t.endpoints();
        if t_lo.abs() > 1e-9 || (t_hi - TWO_PI).abs() > 1e-9 {
            return Err(Error::MalformedTable(
                "theta0 must cover [0, 2*pi]".to_string(),
            ));
        }
        let m = 1.0 + (a_hi - a_lo) / TWO_PI;
        if (2.0 * m - (2.0 * m).round()).abs() > 1e-6 {
            return Err(Error::InvalidProfile(format!(
                "endpoint increment gives charge m = {m}, not a half-integer"
            )));
        }
        let m = (2.0 * m).round() / 2.0;
        Ok(CircleFrustration {
            kind: CircleKind::Table(t),
            m,
            c0: a_lo,
            label: format!("table({} points, m={m})", points.len()),
        })
    }

    /// Parses a two-column CSV with header `theta0,alpha0` (radians).
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let rows = parse_two_column_csv(text, "theta0", "alpha0")?;
        Self::from_table(&rows)
    }

    pub fn charge(&self) -> f64 {
        self.m
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn alpha0(&self, theta0: f64) -> f64 {
        match &self.kind {
            CircleKind::Frank => (self.m - 1.0) * theta0 + self.c0,
            CircleKind::Perturbed => {
                (self.m - 1.0) * theta0 + self.m / 3.0 * theta0.sin() + self.c0
            }
            CircleKind::Table(t) => {
                let (wrapped, turns) = wrap_turns(theta0);
                t.eval(wrapped) + turns * 2.0 * (self.m - 1.0) * PI
            }
        }
    }

    pub fn dalpha0(&self, theta0: f64) -> f64 {
        match &self.kind {
            CircleKind::Frank => self.m - 1.0,
            CircleKind::Perturbed => (self.m - 1.0) + self.m / 3.0 * theta0.cos(),
            CircleKind::Table(t) => t.deriv(wrap_turns(theta0).0),
        }
    }

    /// Azimuth of the boundary director at theta0: phi0 = alpha0 + theta0.
    pub fn phi0(&self, theta0: f64) -> f64 {
        self.alpha0(theta0) + theta0
    }

    pub fn dphi0(&self, theta0: f64) -> f64 {
        self.dalpha0(theta0) + 1.0
    }

    /// Residual of the winding condition alpha0(t + 2pi) - alpha0(t) =
    /// 2 (m - 1) pi, sampled at `t`.
    pub fn winding_defect(&self, theta0: f64) -> f64 {
        self.alpha0(theta0 + TWO_PI) - self.alpha0(theta0) - 2.0 * (self.m - 1.0) * PI
    }
}

/// Charge recovered from the boundary trace: m = 1 + increment / 2pi.
pub fn winding_charge(fr: &CircleFrustration) -> f64 {
    1.0 + (fr.alpha0(TWO_PI) - fr.alpha0(0.0)) / TWO_PI
}

fn wrap_turns(theta0: f64) -> (f64, f64) {
    let turns = (theta0 / TWO_PI).floor();
    (theta0 - turns * TWO_PI, turns)
}

fn parse_two_column_csv(text: &str, col_a: &str, col_b: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedTable("empty input".to_string()))?;
    let expected = format!("{col_a},{col_b}");
    if header.trim() != expected {
        return Err(Error::MalformedTable(format!(
            "expected header `{expected}`, got `{}`",
            header.trim()
        )));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut parts = line.split(',');
        let a = parts.next().map(str::trim);
        let b = parts.next().map(str::trim);
        if parts.next().is_some() {
            return Err(Error::MalformedTable(format!(
                "row {}: more than two columns",
                i + 2
            )));
        }
        match (a, b) {
            (Some(a), Some(b)) => {
                let a: f64 = a
                    .parse()
                    .map_err(|_| Error::MalformedTable(format!("row {}: bad {col_a}", i + 2)))?;
                let b: f64 = b
                    .parse()
                    .map_err(|_| Error::MalformedTable(format!("row {}: bad {col_b}", i + 2)))?;
                rows.push((a, b));
            }
            _ => {
                return Err(Error::MalformedTable(format!(
                    "row {}: expected two columns",
                    i + 2
                )))
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn preset_derivatives_are_consistent() {
        let profiles = [
            LineFrustration::constant(0.3),
            LineFrustration::linear(-PI / 4.0, 0.0),
            LineFrustration::tanh_step(2.0),
            LineFrustration::quintic_step(2.0),
            LineFrustration::sinusoidal(PI / 10.0, PI),
            LineFrustration::hybrid(2.0),
        ];
        for p in &profiles {
            assert!(
                p.derivative_defect((-3.0, 3.0), 101) < 1e-6,
                "defect too large for {}",
                p.label()
            );
        }
    }

    #[test]
    fn hybrid_is_constant_on_the_left_and_decreasing_on_the_right() {
        let p = LineFrustration::hybrid(2.0);
        let base = -2.0f64.atan() + 3.0 * PI / 4.0;
        assert_abs_diff_eq!(p.phi0(-5.0), base, epsilon = 1e-15);
        assert_abs_diff_eq!(p.phi0(0.0), base, epsilon = 1e-15);
        assert!(p.phi0(2.0) < p.phi0(1.0));
        // Far limit drops by 3*pi/4 in total.
        assert_abs_diff_eq!(p.phi0(1e6), base - 3.0 * PI / 4.0, epsilon = 1e-9);
    }

    #[test]
    fn frank_charge_matches_winding() {
        for m in [-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            let fr = CircleFrustration::frank(m, 0.7);
            assert_abs_diff_eq!(winding_charge(&fr), m, epsilon = 1e-12);
            assert_abs_diff_eq!(fr.winding_defect(0.3), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn perturbed_profile_keeps_the_charge() {
        let fr = CircleFrustration::perturbed(1.0, 0.2);
        assert_abs_diff_eq!(winding_charge(&fr), 1.0, epsilon = 1e-12);
        let fr = CircleFrustration::perturbed(1.5, 0.0);
        assert_abs_diff_eq!(winding_charge(&fr), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn constant_local_angle_means_unit_charge() {
        let fr = CircleFrustration::frank(1.0, 0.4);
        assert_eq!(fr.alpha0(1.0), 0.4);
        assert_abs_diff_eq!(winding_charge(&fr), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn circle_table_round_trip() {
        let m = 1.5;
        let pts: Vec<(f64, f64)> = (0..=64)
            .map(|i| {
                let t = TWO_PI * i as f64 / 64.0;
                (t, (m - 1.0) * t + 0.1 * t.sin())
            })
            .collect();
        let fr = CircleFrustration::from_table(&pts).unwrap();
        assert_eq!(fr.charge(), 1.5);
        assert_abs_diff_eq!(fr.alpha0(1.0), 0.5 + 0.1 * 1.0f64.sin(), epsilon = 1e-4);
        // Unwrapped continuation past one turn.
        assert_abs_diff_eq!(
            fr.alpha0(TWO_PI + 0.3) - fr.alpha0(0.3),
            PI,
            epsilon = 1e-10
        );
    }

    #[test]
    fn circle_table_rejects_non_half_integer_charge() {
        let pts = [(0.0, 0.0), (PI, 0.4), (TWO_PI, 0.8)];
        assert!(CircleFrustration::from_table(&pts).is_err());
    }

    #[test]
    fn csv_parsing() {
        let line = LineFrustration::from_csv_str("x0,phi0\n-1,0.5\n0,0.2\n1,-0.1\n").unwrap();
        assert_abs_diff_eq!(line.phi0(0.0), 0.2, epsilon = 1e-15);

        assert!(LineFrustration::from_csv_str("phi0,x0\n0,0\n1,1\n").is_err());
        assert!(LineFrustration::from_csv_str("x0,phi0\n0,abc\n").is_err());
        assert!(LineFrustration::from_csv_str("x0,phi0\n0,1,2\n").is_err());

        let pts: String = std::iter::once("theta0,alpha0".to_string())
            .chain((0..=32).map(|i| {
                let t = TWO_PI * i as f64 / 32.0;
                format!("{t},{}", 0.5 * t)
            }))
            .collect::<Vec<_>>()
            .join("\n");
        let circ = CircleFrustration::from_csv_str(&pts).unwrap();
        assert_eq!(circ.charge(), 1.5);
    }
}
