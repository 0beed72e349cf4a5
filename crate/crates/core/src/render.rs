//! Figure output: streamline integration over director line fields, marching
//! squares contours, director glyphs, and deterministic SVG / CSV emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fields::DirectorField;

pub type Point = [f64; 2];
pub type Polyline = Vec<Point>;

#[derive(Clone, Debug)]
pub struct Style {
    pub stroke: String,
    pub width: f64,
    pub fill: Option<String>,
}

impl Style {
    pub fn line(stroke: &str, width: f64) -> Self {
        Style {
            stroke: stroke.to_string(),
            width,
            fill: None,
        }
    }

    pub fn filled(stroke: &str, width: f64, fill: &str) -> Self {
        Style {
            stroke: stroke.to_string(),
            width,
            fill: Some(fill.to_string()),
        }
    }
}

/// One drawable layer: a named bundle of polylines sharing a style role.
#[derive(Clone, Debug)]
pub struct Layer {
    pub role: String,
    pub paths: Vec<Polyline>,
    pub closed: bool,
}

impl Layer {
    pub fn new(role: &str) -> Self {
        Layer {
            role: role.to_string(),
            paths: Vec::new(),
            closed: false,
        }
    }

    pub fn closed(role: &str) -> Self {
        Layer {
            role: role.to_string(),
            paths: Vec::new(),
            closed: true,
        }
    }
}

/// A figure: viewport window in world coordinates, layers in paint order,
/// and a style table keyed by layer role. Styles are kept in a sorted map so
/// emission order never depends on insertion order.
#[derive(Clone, Debug)]
pub struct Scene {
    pub viewport: ((f64, f64), (f64, f64)),
    pub layers: Vec<Layer>,
    pub styles: BTreeMap<String, Style>,
}

impl Scene {
    pub fn new(viewport: ((f64, f64), (f64, f64))) -> Result<Self> {
        let ((x0, x1), (y0, y1)) = viewport;
        if !(x1 > x0 && y1 > y0) || !x0.is_finite() || !x1.is_finite() || !y0.is_finite()
            || !y1.is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "degenerate viewport {viewport:?}"
            )));
        }
        Ok(Scene {
            viewport,
            layers: Vec::new(),
            styles: BTreeMap::new(),
        })
    }

    pub fn style(&mut self, role: &str, style: Style) -> &mut Self {
        self.styles.insert(role.to_string(), style);
        self
    }

    pub fn push(&mut self, layer: Layer) -> &mut Self {
        self.layers.push(layer);
        self
    }

    pub fn diagonal(&self) -> f64 {
        let ((x0, x1), (y0, y1)) = self.viewport;
        ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
    }
}

fn planar_direction(field: &dyn DirectorField, p: Point, reference: [f64; 2]) -> Option<[f64; 2]> {
    let n = field.eval([p[0], p[1], 0.0])?.vector();
    let mut d = [n.x, n.y];
    let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
    if norm < 1e-9 {
        return None;
    }
    d = [d[0] / norm, d[1] / norm];
    if d[0] * reference[0] + d[1] * reference[1] < 0.0 {
        d = [-d[0], -d[1]];
    }
    Some(d)
}

/// One fourth-order step along the line field, keeping the marching sense by
/// aligning every stage with the incoming direction.
fn rk4_step(field: &dyn DirectorField, p: Point, dir: [f64; 2], h: f64) -> Option<(Point, [f64; 2])> {
    let k1 = planar_direction(field, p, dir)?;
    let k2 = planar_direction(field, [p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1]], k1)?;
    let k3 = planar_direction(field, [p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1]], k2)?;
    let k4 = planar_direction(field, [p[0] + h * k3[0], p[1] + h * k3[1]], k3)?;
    let vx = (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0;
    let vy = (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0;
    let q = [p[0] + h * vx, p[1] + h * vy];
    let new_dir = planar_direction(field, q, dir)?;
    Some((q, new_dir))
}

fn march(field: &dyn DirectorField, seed: Point, dir0: [f64; 2], step: f64, max_len: f64) -> Polyline {
    let mut out = vec![seed];
    let mut p = seed;
    let mut dir = dir0;
    let mut len = 0.0;
    while len + step <= max_len + 1e-12 {
        match rk4_step(field, p, dir, step) {
            Some((q, d)) => {
                out.push(q);
                p = q;
                dir = d;
                len += step;
            }
            None => break,
        }
    }
    out
}

/// Integrates the streamline of the line field through `seed` in both
/// orientations, concatenated into one polyline of total length up to
/// 2 * max_len. Stops where the field is undefined.
pub fn integrate_streamline(
    field: &dyn DirectorField,
    seed: Point,
    step: f64,
    max_len: f64,
) -> Result<Polyline> {
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::InvalidParameter(format!("bad step {step}")));
    }
    let dir0 = planar_direction(field, seed, [1.0, 0.0]).ok_or(Error::OutsideDomain)?;
    let forward = march(field, seed, dir0, step, max_len);
    let backward = march(field, seed, [-dir0[0], -dir0[1]], step, max_len);
    let mut line: Polyline = backward.into_iter().rev().collect();
    line.extend(forward.into_iter().skip(1));
    Ok(line)
}

/// Short segments showing the director at sample points; length is the
/// conventional 0.06 of the viewport diagonal.
pub fn glyph_segments(scene: &Scene, samples: &[(Point, f64)]) -> Vec<Polyline> {
    let half = 0.03 * scene.diagonal();
    samples
        .iter()
        .map(|&(p, angle)| {
            let (s, c) = angle.sin_cos();
            vec![
                [p[0] - half * c, p[1] - half * s],
                [p[0] + half * c, p[1] + half * s],
            ]
        })
        .collect()
}

/// Marching squares on a regular grid. Cells touching undefined samples are
/// skipped; segments are chained into polylines in row-major discovery
/// order, so output is deterministic.
pub fn contour_f(
    f: &dyn Fn(f64, f64) -> Option<f64>,
    window: ((f64, f64), (f64, f64)),
    grid: (usize, usize),
    levels: &[f64],
) -> Result<Vec<Vec<Polyline>>> {
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidParameter(format!("grid too small {grid:?}")));
    }
    let ((x0, x1), (y0, y1)) = window;
    let xs: Vec<f64> = (0..nx).map(|i| x0 + (x1 - x0) * i as f64 / (nx - 1) as f64).collect();
    let ys: Vec<f64> = (0..ny).map(|j| y0 + (y1 - y0) * j as f64 / (ny - 1) as f64).collect();
    let values: Vec<Option<f64>> = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .map(|(x, y)| f(x, y).filter(|v| v.is_finite()))
        .collect();
    let at = |i: usize, j: usize| values[j * nx + i];

    let mut out = Vec::with_capacity(levels.len());
    for &level in levels {
        let mut segments: Vec<(Point, Point)> = Vec::new();
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                let corners = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
                if corners.iter().any(Option::is_none) {
                    continue;
                }
                let v = [
                    corners[0].unwrap() - level,
                    corners[1].unwrap() - level,
                    corners[2].unwrap() - level,
                    corners[3].unwrap() - level,
                ];
                let pos = [
                    [xs[i], ys[j]],
                    [xs[i + 1], ys[j]],
                    [xs[i + 1], ys[j + 1]],
                    [xs[i], ys[j + 1]],
                ];
                // Edge crossings, walked in a fixed order.
                let mut crossings: Vec<Point> = Vec::with_capacity(4);
                for e in 0..4 {
                    let (a, b) = (e, (e + 1) % 4);
                    if (v[a] < 0.0) != (v[b] < 0.0) {
                        let t = v[a] / (v[a] - v[b]);
                        crossings.push([
                            pos[a][0] + t * (pos[b][0] - pos[a][0]),
                            pos[a][1] + t * (pos[b][1] - pos[a][1]),
                        ]);
                    }
                }
                match crossings.len() {
                    2 => segments.push((crossings[0], crossings[1])),
                    4 => {
                        // Saddle: resolve by the cell-center value.
                        let center = 0.25 * (v[0] + v[1] + v[2] + v[3]);
                        if (center < 0.0) == (v[0] < 0.0) {
                            segments.push((crossings[0], crossings[3]));
                            segments.push((crossings[1], crossings[2]));
                        } else {
                            segments.push((crossings[0], crossings[1]));
                            segments.push((crossings[2], crossings[3]));
                        }
                    }
                    _ => {}
                }
            }
        }
        out.push(chain_segments(segments, 1e-9 * ((x1 - x0).abs() + (y1 - y0).abs())));
    }
    Ok(out)
}

fn close_enough(a: Point, b: Point, tol: f64) -> bool {
    (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol
}

/// Joins segments sharing endpoints into polylines, starting each chain from
/// the earliest unused segment.
fn chain_segments(segments: Vec<(Point, Point)>, tol: f64) -> Vec<Polyline> {
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line = vec![segments[start].0, segments[start].1];
        // Grow forward from the tail, then backward from the head.
        loop {
            let tail = *line.last().unwrap();
            let next = (0..segments.len()).find(|&k| {
                !used[k]
                    && (close_enough(segments[k].0, tail, tol)
                        || close_enough(segments[k].1, tail, tol))
            });
            match next {
                Some(k) => {
                    used[k] = true;
                    let p = if close_enough(segments[k].0, tail, tol) {
                        segments[k].1
                    } else {
                        segments[k].0
                    };
                    line.push(p);
                }
                None => break,
            }
        }
        loop {
            let head = line[0];
            let next = (0..segments.len()).find(|&k| {
                !used[k]
                    && (close_enough(segments[k].0, head, tol)
                        || close_enough(segments[k].1, head, tol))
            });
            match next {
                Some(k) => {
                    used[k] = true;
                    let p = if close_enough(segments[k].0, head, tol) {
                        segments[k].1
                    } else {
                        segments[k].0
                    };
                    line.insert(0, p);
                }
                None => break,
            }
        }
        out.push(line);
    }
    out
}

/// Formats like C's "%.12g": 12 significant digits, trailing zeros trimmed,
/// scientific notation outside a moderate exponent range.
pub fn format_g(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        let s = format!("{v:.11e}");
        // Normalize "1.20000000000e5" -> "1.2e+05".
        let (mant, e) = s.split_once('e').unwrap();
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        let exp_val: i32 = e.parse().unwrap();
        let sign = if exp_val < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp_val.abs())
    }
}

/// One CSV record: a sample point with its azimuth, characteristics, and
/// factor value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub splay: f64,
    pub twist: f64,
    pub bend1: f64,
    pub bend2: f64,
    pub octupolar: f64,
    pub f: f64,
}

pub const CSV_HEADER: &str = "x,y,phi,S,T,b1,b2,q,f";

pub fn csv_string(samples: &[GridSample]) -> String {
    let mut out = String::with_capacity(32 * (samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let fields = [
            s.x, s.y, s.phi, s.splay, s.twist, s.bend1, s.bend2, s.octupolar, s.f,
        ];
        let row: Vec<String> = fields.iter().map(|&v| format_g(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<GridSample>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::MalformedTable(format!(
                "expected header '{CSV_HEADER}', got {other:?}"
            )))
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<f64> = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::MalformedTable(format!("row {}: {e}", i + 2)))?;
        if cells.len() != 9 {
            return Err(Error::MalformedTable(format!(
                "row {}: expected 9 fields, got {}",
                i + 2,
                cells.len()
            )));
        }
        out.push(GridSample {
            x: cells[0],
            y: cells[1],
            phi: cells[2],
            splay: cells[3],
            twist: cells[4],
            bend1: cells[5],
            bend2: cells[6],
            octupolar: cells[7],
            f: cells[8],
        });
    }
    Ok(out)
}

pub fn emit_csv(samples: &[GridSample], path: &Path) -> Result<()> {
    std::fs::write(path, csv_string(samples))?;
    Ok(())
}

fn fmt_point(p: Point) -> String {
    // SVG y grows downward; world y is flipped at emission.
    format!("{},{}", format_g(p[0]), format_g(-p[1]))
}

pub fn svg_string(scene: &Scene) -> String {
    let ((x0, x1), (y0, y1)) = scene.viewport;
    let (w, h) = (x1 - x0, y1 - y0);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        format_g(x0),
        format_g(-y1),
        format_g(w),
        format_g(h)
    );
    let default = Style::line("#000000", 0.01);
    for layer in &scene.layers {
        let style = scene.styles.get(&layer.role).unwrap_or(&default);
        let fill = style.fill.as_deref().unwrap_or("none");
        let _ = writeln!(
            out,
            r#"<g id="{}" fill="{}" stroke="{}" stroke-width="{}">"#,
            layer.role,
            fill,
            style.stroke,
            format_g(style.width)
        );
        for path in &layer.paths {
            if path.is_empty() {
                continue;
            }
            let points: Vec<String> = path.iter().map(|&p| fmt_point(p)).collect();
            if layer.closed {
                let _ = writeln!(out, r#"<polygon points="{}"/>"#, points.join(" "));
            } else {
                let _ = writeln!(out, r#"<polyline points="{}"/>"#, points.join(" "));
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

pub fn emit_svg(scene: &Scene, path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(scene))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PlanarSpiral, PureBend, Uniform};
    use crate::geometry::Director;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn uniform_field_gives_a_straight_segment() {
        let f = Uniform(Director::planar(0.3));
        let line = integrate_streamline(&f, [0.0, 0.0], 0.05, 1.0).unwrap();
        // Both orientations: endpoints 1.0 away from the seed each way.
        let first = line.first().unwrap();
        let last = line.last().unwrap();
        let d = ((last[0] - first[0]).powi(2) + (last[1] - first[1]).powi(2)).sqrt();
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-9);
        for p in &line {
            // On the line through origin at angle 0.3.
            assert_abs_diff_eq!(p[1] * 0.3f64.cos() - p[0] * 0.3f64.sin(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn pure_bend_streamline_closes_onto_the_unit_circle() {
        // Step divides the half-turn exactly, so the two marches meet up to
        // integration error alone.
        let line = integrate_streamline(&PureBend, [1.0, 0.0], PI / 400.0, PI).unwrap();
        for p in &line {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((r - 1.0).abs() < 1e-3, "r = {r}");
        }
        // The two half-integrations meet on the far side: endpoints coincide
        // after one full turn.
        let first = line.first().unwrap();
        let last = line.last().unwrap();
        let gap = ((last[0] - first[0]).powi(2) + (last[1] - first[1]).powi(2)).sqrt();
        assert!(gap < 1e-3, "gap = {gap}");
    }

    #[test]
    fn streamlines_stay_tangent_to_the_field() {
        // Keep the march away from the central defect, where any fixed step
        // loses tangency.
        let spiral = PlanarSpiral::new(0.9);
        let line = integrate_streamline(&spiral, [1.0, 0.5], 0.005, 1.0).unwrap();
        for w in line.windows(2) {
            let mid = [(w[0][0] + w[1][0]) / 2.0, (w[0][1] + w[1][1]) / 2.0];
            let t = [w[1][0] - w[0][0], w[1][1] - w[0][1]];
            let tn = (t[0] * t[0] + t[1] * t[1]).sqrt();
            let n = spiral.eval([mid[0], mid[1], 0.0]).unwrap().vector();
            let dot = (t[0] * n.x + t[1] * n.y).abs() / tn;
            assert!(dot >= 1.0 - 1e-6, "tangency {dot}");
        }
    }

    #[test]
    fn constant_angle_spiral_streamline_is_logarithmic() {
        let alpha = 2.0f64.atan();
        // Length short enough that the inward branch stays clear of the
        // origin, where the polar angle can no longer be unwrapped.
        let spiral = PlanarSpiral::new(alpha);
        let line = integrate_streamline(&spiral, [1.0, 0.0], 0.005, 1.5).unwrap();
        // log r should be linear in the unwrapped polar angle.
        let mut theta_prev = 0.0f64;
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for p in &line {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            let mut theta = p[1].atan2(p[0]);
            while theta - theta_prev > PI {
                theta -= 2.0 * PI;
            }
            while theta - theta_prev < -PI {
                theta += 2.0 * PI;
            }
            theta_prev = theta;
            pts.push((theta, r.ln()));
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let max_residual = pts
            .iter()
            .map(|p| (p.1 - slope * p.0 - intercept).abs())
            .fold(0.0f64, f64::max);
        assert!(max_residual < 1e-3, "residual {max_residual}");
        // Pitch of the spiral: dr/(r dtheta) = cot(alpha).
        assert_abs_diff_eq!(slope, 1.0 / alpha.tan(), epsilon = 1e-3);
    }

    #[test]
    fn contour_of_height_function_is_the_axis() {
        let f = |_x: f64, y: f64| Some(y);
        let lines = contour_f(&f, ((-2.0, 2.0), (-1.0, 1.0)), (41, 21), &[0.0]).unwrap();
        assert_eq!(lines.len(), 1);
        let level0 = &lines[0];
        assert!(!level0.is_empty());
        for line in level0 {
            for p in line {
                assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-12);
            }
        }
        // Spans the window.
        let all: Vec<&Point> = level0.iter().flatten().collect();
        let xmin = all.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        let xmax = all.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(xmin, -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(xmax, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn unit_circle_contour_is_accurate() {
        let f = |x: f64, y: f64| Some(x * x + y * y);
        let grid = 201;
        let lines = contour_f(
            &f,
            ((-1.5, 1.5), (-1.5, 1.5)),
            (grid, grid),
            &[1.0],
        )
        .unwrap();
        let pts: Vec<&Point> = lines[0].iter().flatten().collect();
        assert!(pts.len() > 100);
        let tol = 2.0 / grid as f64;
        // Every vertex near the circle.
        for p in &pts {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((r - 1.0).abs() < tol, "r = {r}");
        }
        // Every circle point near some vertex.
        for k in 0..256 {
            let t = 2.0 * PI * k as f64 / 256.0;
            let (cx, cy) = (t.cos(), t.sin());
            let d = pts
                .iter()
                .map(|p| ((p[0] - cx).powi(2) + (p[1] - cy).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            assert!(d < tol, "gap {d} at angle {t}");
        }
    }

    #[test]
    fn contours_skip_undefined_cells() {
        let f = |x: f64, y: f64| (x > 0.0).then_some(y);
        let lines = contour_f(&f, ((-1.0, 1.0), (-1.0, 1.0)), (21, 21), &[0.0]).unwrap();
        for line in &lines[0] {
            for p in line {
                assert!(p[0] > 0.0);
            }
        }
    }

    #[test]
    fn format_g_matches_printf_conventions() {
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(1.0), "1");
        assert_eq!(format_g(-2.5), "-2.5");
        assert_eq!(format_g(0.125), "0.125");
        assert_eq!(format_g(1e-5), "1e-05");
        assert_eq!(format_g(3e12), "3e+12");
        assert_eq!(format_g(1.0 / 3.0), "0.333333333333");
    }

    fn samples() -> Vec<GridSample> {
        vec![
            GridSample {
                x: 0.5,
                y: -1.25,
                phi: 0.333333333333,
                splay: 1.0,
                twist: 0.0,
                bend1: 2e-5,
                bend2: 0.0,
                octupolar: 0.5,
                f: -0.125,
            },
            GridSample {
                x: 2.0,
                y: 3.0,
                phi: -1.5,
                splay: 0.0,
                twist: 1e12,
                bend1: 0.0,
                bend2: -7.0,
                octupolar: 0.0,
                f: 42.0,
            },
        ]
    }

    #[test]
    fn csv_round_trips() {
        let s = samples();
        let text = csv_string(&s);
        assert!(text.starts_with("x,y,phi,S,T,b1,b2,q,f\n"));
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed, s);
        // Emission of the parsed data is byte-identical.
        assert_eq!(csv_string(&parsed), text);
    }

    #[test]
    fn csv_rejects_bad_headers_and_rows() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
        assert!(parse_csv("x,y,phi,S,T,b1,b2,q,f\n1,2,3\n").is_err());
        assert!(parse_csv("x,y,phi,S,T,b1,b2,q,f\n1,2,3,4,5,6,7,8,oops\n").is_err());
    }

    #[test]
    fn empty_scene_svg_has_empty_groups() {
        let mut scene = Scene::new(((-1.0, 1.0), (-1.0, 1.0))).unwrap();
        scene.push(Layer::new("characteristics"));
        scene.push(Layer::new("glyphs"));
        let svg = svg_string(&scene);
        assert!(svg.contains(r#"version="1.1""#));
        assert_eq!(svg.matches("<g ").count(), 2);
        assert_eq!(svg.matches("</g>").count(), 2);
        assert!(!svg.contains("<polyline"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn svg_emission_is_deterministic() {
        let mut scene = Scene::new(((-2.0, 2.0), (0.0, 2.0))).unwrap();
        scene.style("streamlines", Style::line("#2a7e3f", 0.02));
        let mut layer = Layer::new("streamlines");
        layer.paths.push(vec![[0.0, 0.5], [1.0, 1.5], [2.0, 1.0]]);
        scene.push(layer);
        let a = svg_string(&scene);
        let b = svg_string(&scene);
        assert_eq!(a, b);
        assert!(a.contains(r#"id="streamlines""#));
        assert!(a.contains("0,-0.5 1,-1.5 2,-1"));
    }

    #[test]
    fn glyphs_have_the_conventional_length() {
        let scene = Scene::new(((0.0, 3.0), (0.0, 4.0))).unwrap();
        let glyphs = glyph_segments(&scene, &[([1.0, 1.0], 0.7)]);
        let g = &glyphs[0];
        let len = ((g[1][0] - g[0][0]).powi(2) + (g[1][1] - g[0][1]).powi(2)).sqrt();
        assert_abs_diff_eq!(len, 0.06 * 5.0, epsilon = 1e-12);
    }
}
