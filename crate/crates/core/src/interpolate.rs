//! Monotone cubic interpolation (Fritsch-Carlson) for tabulated boundary
//! profiles. The interpolant preserves monotonicity of the data and has a
//! continuous first derivative, which the solvers need analytically.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::MalformedTable(
                "need at least two points".to_string(),
            ));
        }
        let x: Vec<f64> = points.iter().map(|p| p.0).collect();
        let y: Vec<f64> = points.iter().map(|p| p.1).collect();
        if x.iter().any(|v| !v.is_finite()) || y.iter().any(|v| !v.is_finite()) {
            return Err(Error::MalformedTable("non-finite entry".to_string()));
        }
        for w in x.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::MalformedTable(
                    "abscissae must be strictly increasing".to_string(),
                ));
            }
        }

        let n = x.len();
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut slope = vec![0.0; n];
        if n == 2 {
            slope[0] = d[0];
            slope[1] = d[0];
        } else {
            slope[0] = endpoint_slope(h[0], h[1], d[0], d[1]);
            slope[n - 1] = endpoint_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
            for i in 1..n - 1 {
                if d[i - 1] * d[i] <= 0.0 {
                    slope[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    slope[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
                }
            }
        }

        Ok(MonotoneCubic { x, y, slope })
    }

    fn segment(&self, t: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.x.len() - 2),
        }
    }

    /// Value at `t`; linear extrapolation with the endpoint slope outside the
    /// table range.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.y[0] + self.slope[0] * (t - self.x[0]);
        }
        if t >= self.x[n - 1] {
            return self.y[n - 1] + self.slope[n - 1] * (t - self.x[n - 1]);
        }
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = (t - self.x[i]) / h;
        let (h00, h10, h01, h11) = hermite(u);
        self.y[i] * h00 + h * self.slope[i] * h10 + self.y[i + 1] * h01 + h * self.slope[i + 1] * h11
    }

    /// Analytic derivative of the interpolant at `t`.
    pub fn deriv(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.slope[0];
        }
        if t >= self.x[n - 1] {
            return self.slope[n - 1];
        }
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let u = (t - self.x[i]) / h;
        let (g00, g10, g01, g11) = hermite_deriv(u);
        (self.y[i] * g00 + self.y[i + 1] * g01) / h
            + self.slope[i] * g10
            + self.slope[i + 1] * g11
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    pub fn endpoints(&self) -> ((f64, f64), (f64, f64)) {
        let n = self.x.len();
        ((self.x[0], self.y[0]), (self.x[n - 1], self.y[n - 1]))
    }
}

fn hermite(u: f64) -> (f64, f64, f64, f64) {
    let u2 = u * u;
    let u3 = u2 * u;
    (
        2.0 * u3 - 3.0 * u2 + 1.0,
        u3 - 2.0 * u2 + u,
        -2.0 * u3 + 3.0 * u2,
        u3 - u2,
    )
}

fn hermite_deriv(u: f64) -> (f64, f64, f64, f64) {
    let u2 = u * u;
    (
        6.0 * u2 - 6.0 * u,
        3.0 * u2 - 4.0 * u + 1.0,
        -6.0 * u2 + 6.0 * u,
        3.0 * u2 - 2.0 * u,
    )
}

/// Three-point one-sided slope estimate, clamped per Fritsch-Carlson so the
/// interpolant stays monotone near the ends.
fn endpoint_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolates_nodes_exactly() {
        let pts: Vec<(f64, f64)> = (0..9).map(|i| (i as f64 * 0.5, (i as f64).sin())).collect();
        let c = MonotoneCubic::new(&pts).unwrap();
        for (x, y) in &pts {
            assert_abs_diff_eq!(c.eval(*x), *y, epsilon = 1e-14);
        }
    }

    #[test]
    fn preserves_monotonicity() {
        let pts = [(0.0, 0.0), (1.0, 0.1), (2.0, 0.11), (3.0, 2.0), (4.0, 2.5)];
        let c = MonotoneCubic::new(&pts).unwrap();
        let mut prev = c.eval(0.0);
        for i in 1..=400 {
            let v = c.eval(i as f64 * 0.01);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let pts: Vec<(f64, f64)> = (0..21)
            .map(|i| {
                let x = -1.0 + i as f64 * 0.1;
                (x, (2.0 * x).tanh())
            })
            .collect();
        let c = MonotoneCubic::new(&pts).unwrap();
        let h = 1e-6;
        for i in 0..50 {
            let t = -0.95 + i as f64 * 0.038;
            // Only first-order accurate when the stencil straddles a knot:
            // the curve is C1 there, not C2.
            let fd = (c.eval(t + h) - c.eval(t - h)) / (2.0 * h);
            assert_abs_diff_eq!(c.deriv(t), fd, epsilon = 1e-5);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(MonotoneCubic::new(&[(0.0, 1.0)]).is_err());
        assert!(MonotoneCubic::new(&[(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(MonotoneCubic::new(&[(1.0, 0.0), (0.0, 1.0)]).is_err());
    }
}
