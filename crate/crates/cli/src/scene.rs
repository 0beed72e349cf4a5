//! Scene-building helpers shared by the solver subcommands and the figure
//! generator.

use nematic_relief_core::circle::{characteristic_ray, SRange};
use nematic_relief_core::fields::DirectorField;
use nematic_relief_core::halfplane::characteristic_through;
use nematic_relief_core::profiles::{CircleFrustration, LineFrustration};
use nematic_relief_core::render::{glyph_segments, Point, Polyline, Scene};

pub type Window = ((f64, f64), (f64, f64));

/// Parameter interval of the line `anchor + s * dir` inside a rectangle
/// (Liang-Barsky slab clipping). `dir` need not be unit.
pub fn clip_line(anchor: Point, dir: Point, window: Window) -> Option<(f64, f64)> {
    let ((x0, x1), (y0, y1)) = window;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (p, d, min, max) in [
        (anchor[0], dir[0], x0, x1),
        (anchor[1], dir[1], y0, y1),
    ] {
        if d.abs() < 1e-15 {
            if p < min || p > max {
                return None;
            }
            continue;
        }
        let (a, b) = ((min - p) / d, (max - p) / d);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = lo.max(a);
        hi = hi.min(b);
    }
    (lo < hi).then_some((lo, hi))
}

/// Characteristic segments of a line frustration, one per anchor, clipped to
/// the window and to the half-plane carrying the field.
pub fn halfplane_characteristics(
    fr: &LineFrustration,
    b_star: f64,
    anchors: &[f64],
    window: Window,
    upper: bool,
) -> Vec<Polyline> {
    let mut out = Vec::new();
    for &x0 in anchors {
        let ch = characteristic_through(x0, fr, b_star);
        let Some((lo, hi)) = clip_line(ch.anchor, ch.direction, window) else {
            continue;
        };
        // Keep the half going into the chosen side; horizontal lines stay.
        let dy = ch.direction[1];
        let (lo, hi) = if dy.abs() < 1e-15 {
            (lo, hi)
        } else if (dy > 0.0) == upper {
            (lo.max(0.0), hi)
        } else {
            (lo, hi.min(0.0))
        };
        if hi - lo > 1e-9 {
            out.push(vec![ch.point_at(lo), ch.point_at(hi)]);
        }
    }
    out
}

/// Characteristic segments of a circle frustration, clipped to the window.
/// Without `extend` each ray is restricted to its admissible arc-length
/// range; with it the whole supporting line is drawn.
pub fn circle_characteristics(
    fr: &CircleFrustration,
    b_star: f64,
    n: usize,
    window: Window,
    extend: bool,
) -> Vec<Polyline> {
    let mut out = Vec::new();
    for i in 0..n {
        let theta0 = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
        let ray = characteristic_ray(theta0, fr, b_star);
        let Some((lo, hi)) = clip_line(ray.anchor, ray.direction, window) else {
            continue;
        };
        let (lo, hi) = if extend {
            (lo, hi)
        } else {
            match ray.s_range {
                SRange::NonNegative => (lo.max(0.0), hi),
                SRange::NonPositive => (lo, hi.min(0.0)),
                SRange::All => (lo, hi),
            }
        };
        if hi - lo > 1e-9 {
            out.push(vec![ray.point_at(lo), ray.point_at(hi)]);
        }
    }
    out
}

pub fn circle_polyline(center: Point, radius: f64, n: usize) -> Polyline {
    (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            [center[0] + radius * t.cos(), center[1] + radius * t.sin()]
        })
        .collect()
}

/// Director glyphs on a lattice of cell centers, skipping undefined points.
pub fn glyph_grid(
    field: &dyn DirectorField,
    scene: &Scene,
    window: Window,
    grid: (usize, usize),
) -> Vec<Polyline> {
    let ((x0, x1), (y0, y1)) = window;
    let (nx, ny) = grid;
    let mut samples: Vec<(Point, f64)> = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let x = x0 + (x1 - x0) * (ix as f64 + 0.5) / nx as f64;
            let y = y0 + (y1 - y0) * (iy as f64 + 0.5) / ny as f64;
            if let Some(n) = field.eval([x, y, 0.0]) {
                samples.push(([x, y], n.planar_angle()));
            }
        }
    }
    glyph_segments(scene, &samples)
}

/// Small filled squares marking grid cells, used for coverage overlays.
pub fn cell_squares(
    cells: &[(usize, usize)],
    window: Window,
    grid: (usize, usize),
) -> Vec<Polyline> {
    let ((x0, x1), (y0, y1)) = window;
    let dx = (x1 - x0) / grid.0 as f64;
    let dy = (y1 - y0) / grid.1 as f64;
    cells
        .iter()
        .map(|&(ix, iy)| {
            let cx = x0 + dx * ix as f64;
            let cy = y0 + dy * iy as f64;
            vec![
                [cx, cy],
                [cx + dx, cy],
                [cx + dx, cy + dy],
                [cx, cy + dy],
            ]
        })
        .collect()
}

/// Data viewport of a curve bundle, padded a little on each side.
pub fn fit_viewport(curves: &[Polyline], pad: f64) -> Window {
    let mut x = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y = (f64::INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for p in c {
            x = (x.0.min(p[0]), x.1.max(p[0]));
            y = (y.0.min(p[1]), y.1.max(p[1]));
        }
    }
    let (px, py) = ((x.1 - x.0).max(1e-6) * pad, (y.1 - y.0).max(1e-6) * pad);
    ((x.0 - px, x.1 + px), (y.0 - py, y.1 + py))
}
