//! CSV grid sampling: azimuth, distortion characteristics, and the scalar
//! factor at lattice points of a solved field.

use nematic_relief_core::circle::{
    characteristic_ray, f_at_circle, field_angle_at_circle_in, ray_hits_at, resonant_global,
};
use nematic_relief_core::distortion::planar_state_from_angle;
use nematic_relief_core::geometry::wrap_mod_pi;
use nematic_relief_core::halfplane::{anchors_at_in, f_at, field_angle_at_in, PointAngle};
use nematic_relief_core::profiles::{CircleFrustration, LineFrustration};
use nematic_relief_core::render::GridSample;

const FD: f64 = 1e-5;

fn fd_angles(phi: &dyn Fn(f64, f64) -> Option<f64>, x: f64, y: f64) -> Option<(f64, f64)> {
    let (xp, xm) = (phi(x + FD, y)?, phi(x - FD, y)?);
    let (yp, ym) = (phi(x, y + FD)?, phi(x, y - FD)?);
    Some((
        wrap_mod_pi(xp - xm) / (2.0 * FD),
        wrap_mod_pi(yp - ym) / (2.0 * FD),
    ))
}

fn row(x: f64, y: f64, a: f64, px: f64, py: f64, f: f64) -> GridSample {
    let st = planar_state_from_angle(a, px, py);
    GridSample {
        x,
        y,
        phi: a,
        splay: st.splay,
        twist: st.twist,
        bend1: st.bend1,
        bend2: st.bend2,
        octupolar: st.octupolar,
        f,
    }
}

/// Samples a relieved half-plane field at lattice cell centers. Points that
/// are uncovered, multiply covered, or sit on a singular chart are skipped.
pub fn halfplane_grid(
    fr: &LineFrustration,
    b_star: f64,
    window: ((f64, f64), (f64, f64)),
    grid: (usize, usize),
    anchor_window: (f64, f64),
    scan: usize,
) -> Vec<GridSample> {
    let ((x0, x1), (y0, y1)) = window;
    let (nx, ny) = grid;
    let phi = |x: f64, y: f64| match field_angle_at_in(x, y, fr, b_star, anchor_window, scan) {
        PointAngle::Angle(a) => Some(a),
        _ => None,
    };
    let mut out = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let x = x0 + (x1 - x0) * (ix as f64 + 0.5) / nx as f64;
            let y = y0 + (y1 - y0) * (iy as f64 + 0.5) / ny as f64;
            let Some(a) = phi(x, y) else { continue };
            let Some((px, py)) = fd_angles(&phi, x, y) else {
                continue;
            };
            let anchors = anchors_at_in(x, y, fr, b_star, anchor_window, scan);
            if anchors.len() != 1 {
                continue;
            }
            let Ok(f) = f_at(anchors[0], x - anchors[0], fr, b_star) else {
                continue;
            };
            out.push(row(x, y, a, px, py, f));
        }
    }
    out
}

/// Samples a relieved circle field at lattice cell centers.
pub fn circle_grid(
    fr: &CircleFrustration,
    b_star: f64,
    window: ((f64, f64), (f64, f64)),
    grid: (usize, usize),
    extend: bool,
    scan: usize,
) -> Vec<GridSample> {
    let ((x0, x1), (y0, y1)) = window;
    let (nx, ny) = grid;
    let resonant = resonant_global(fr, b_star);
    let phi = |x: f64, y: f64| match field_angle_at_circle_in(x, y, fr, b_star, extend, scan) {
        Ok(PointAngle::Angle(a)) => Some(a),
        _ => None,
    };
    let mut out = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let x = x0 + (x1 - x0) * (ix as f64 + 0.5) / nx as f64;
            let y = y0 + (y1 - y0) * (iy as f64 + 0.5) / ny as f64;
            let Some(a) = phi(x, y) else { continue };
            let Some((px, py)) = fd_angles(&phi, x, y) else {
                continue;
            };
            let f = if resonant {
                let theta0 = y.atan2(x).rem_euclid(2.0 * std::f64::consts::PI);
                let ray = characteristic_ray(theta0, fr, b_star);
                f_at_circle(theta0, ray.param_of(x, y), fr, b_star)
            } else {
                let Ok(hits) = ray_hits_at(x, y, fr, b_star, extend, scan) else {
                    continue;
                };
                // All hits carry the same angle here; take the nearest anchor
                // so the choice is deterministic.
                let Some(&(theta0, s)) = hits.iter().min_by(|a, b| {
                    a.1.abs().partial_cmp(&b.1.abs()).unwrap()
                }) else {
                    continue;
                };
                f_at_circle(theta0, s, fr, b_star)
            };
            let Ok(f) = f else { continue };
            out.push(row(x, y, a, px, py, f));
        }
    }
    out
}
