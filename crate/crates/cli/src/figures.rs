//! Built-in figure scenarios and the scene builders behind the `halfplane`,
//! `circle`, and `figures` subcommands. Every scenario is deterministic, so
//! re-running reproduces the files byte for byte.

use std::f64::consts::PI;
use std::path::Path;

use nematic_relief_core::circle::circle_slope;
use nematic_relief_core::fields::{CircleField, DirectorField, HalfPlaneField};
use nematic_relief_core::halfplane::{anchors_at_in, coverage_map, f_at, line_slope, CoverageGrid};
use nematic_relief_core::profiles::{CircleFrustration, LineFrustration};
use nematic_relief_core::quasiuniform::asymptotic_angle;
use nematic_relief_core::render::{
    contour_f, emit_svg, integrate_streamline, Layer, Polyline, Scene, Style,
};

use crate::scene::{
    cell_squares, circle_characteristics, circle_polyline, clip_line, fit_viewport, glyph_grid,
    halfplane_characteristics, Window,
};

const SCAN: usize = 512;

fn base_styles(sc: &mut Scene) {
    let w = 0.0025 * sc.diagonal();
    sc.style("boundary", Style::line("#000000", 2.0 * w));
    sc.style("characteristics", Style::line("#2b6cb0", w));
    sc.style("tangents", Style::line("#888888", w));
    sc.style("glyphs", Style::line("#cc2222", 1.5 * w));
    sc.style("streamlines", Style::line("#1a7f3c", 1.5 * w));
    sc.style("multicovered", Style::filled("#f2b6b6", 0.0, "#f2b6b6"));
    sc.style("axes", Style::line("#444444", w));
    sc.style("levels", Style::line("#6a3fb5", w));
}

fn layer(role: &str, paths: Vec<Polyline>) -> Layer {
    let mut l = Layer::new(role);
    l.paths = paths;
    l
}

fn closed_layer(role: &str, paths: Vec<Polyline>) -> Layer {
    let mut l = Layer::closed(role);
    l.paths = paths;
    l
}

fn anchors(interval: (f64, f64), n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| interval.0 + (interval.1 - interval.0) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Coverage overlay for a boundary profile that fails relievability: the
/// multi-covered cells shaded under the characteristic fan.
pub fn coverage_scene(
    fr: &LineFrustration,
    b_star: f64,
    window: Window,
    cov: &CoverageGrid,
) -> Result<Scene, String> {
    let mut sc = Scene::new(window).map_err(|e| e.to_string())?;
    base_styles(&mut sc);
    sc.push(closed_layer(
        "multicovered",
        cell_squares(&cov.multi_cells(), cov.window, (cov.nx, cov.ny)),
    ));
    let xs = anchors((window.0 .0, window.0 .1), 41);
    sc.push(layer(
        "characteristics",
        halfplane_characteristics(fr, b_star, &xs, window, true),
    ));
    sc.push(layer(
        "boundary",
        vec![vec![[window.0 .0, 0.0], [window.0 .1, 0.0]]],
    ));
    Ok(sc)
}

/// Full half-plane figure: boundary, characteristic fan, director glyphs,
/// and a few field lines.
pub fn halfplane_scene(
    field: &HalfPlaneField,
    anchor_interval: (f64, f64),
    window: Window,
) -> Result<Scene, String> {
    let mut sc = Scene::new(window).map_err(|e| e.to_string())?;
    base_styles(&mut sc);
    let xs = anchors(anchor_interval, 31);
    sc.push(layer(
        "characteristics",
        halfplane_characteristics(&field.frustration, field.b_star, &xs, window, field.upper),
    ));
    sc.push(layer("glyphs", glyph_grid(field, &sc, window, (24, 12))));

    let ((x0, x1), (y0, y1)) = window;
    let step = sc.diagonal() / 500.0;
    let mut lines = Vec::new();
    for i in 0..6 {
        let seed = [
            x0 + (x1 - x0) * (i as f64 + 0.5) / 6.0,
            y0 + 0.5 * (y1 - y0),
        ];
        if let Ok(line) = integrate_streamline(field, seed, step, 0.5 * sc.diagonal()) {
            lines.push(line);
        }
    }
    sc.push(layer("streamlines", lines));
    sc.push(layer("boundary", vec![vec![[x0, 0.0], [x1, 0.0]]]));
    Ok(sc)
}

/// Full circle figure: unit circle, characteristic rays, tangent cut lines,
/// and director glyphs.
pub fn circle_scene(field: &CircleField, window: Window) -> Result<Scene, String> {
    let mut sc = Scene::new(window).map_err(|e| e.to_string())?;
    base_styles(&mut sc);
    sc.push(layer(
        "characteristics",
        circle_characteristics(
            &field.frustration,
            field.b_star,
            48,
            window,
            field.extend_inside,
        ),
    ));
    let mut tangents = Vec::new();
    for &t in &field.domain.tangents {
        let anchor = [t.cos(), t.sin()];
        let dir = [-t.sin(), t.cos()];
        if let Some((lo, hi)) = clip_line(anchor, dir, window) {
            tangents.push(vec![
                [anchor[0] + lo * dir[0], anchor[1] + lo * dir[1]],
                [anchor[0] + hi * dir[0], anchor[1] + hi * dir[1]],
            ]);
        }
    }
    sc.push(layer("tangents", tangents));
    sc.push(layer("glyphs", glyph_grid(field, &sc, window, (22, 22))));
    sc.push(closed_layer("boundary", vec![circle_polyline([0.0, 0.0], 1.0, 256)]));
    Ok(sc)
}

fn with_streamlines(sc: &mut Scene, field: &dyn DirectorField, seeds: &[[f64; 2]]) {
    let step = sc.diagonal() / 500.0;
    let mut lines = Vec::new();
    for &seed in seeds {
        if let Ok(line) = integrate_streamline(field, seed, step, 0.4 * sc.diagonal()) {
            lines.push(line);
        }
    }
    // Insert under the boundary layer so the circle stays visible.
    let at = sc.layers.len().saturating_sub(1);
    sc.layers.insert(at, layer("streamlines", lines));
}

/// Graph of a family of curves in data coordinates, with plain axes.
fn plot_scene(curves: Vec<(&str, &str, Vec<Polyline>)>) -> Result<Scene, String> {
    let all: Vec<Polyline> = curves.iter().flat_map(|c| c.2.clone()).collect();
    let viewport = fit_viewport(&all, 0.05);
    let mut sc = Scene::new(viewport).map_err(|e| e.to_string())?;
    let w = 0.0025 * sc.diagonal();
    sc.style("axes", Style::line("#444444", w));
    let ((x0, x1), (y0, y1)) = viewport;
    let mut axes = vec![vec![[x0, 0.0], [x1, 0.0]]];
    if y0 < 0.0 && y1 > 0.0 {
        axes.push(vec![[0.0, y0], [0.0, y1]]);
    }
    sc.push(layer("axes", axes));
    for (role, color, paths) in curves {
        sc.style(role, Style::line(color, 1.5 * w));
        sc.push(layer(role, paths));
    }
    Ok(sc)
}

/// Samples a graph y = g(x), splitting the polyline where the value leaves
/// [-clamp, clamp] or is undefined.
fn graph(g: impl Fn(f64) -> Option<f64>, window: (f64, f64), n: usize, clamp: f64) -> Vec<Polyline> {
    let mut out = Vec::new();
    let mut current: Polyline = Vec::new();
    for i in 0..=n {
        let x = window.0 + (window.1 - window.0) * i as f64 / n as f64;
        match g(x) {
            Some(y) if y.abs() <= clamp => current.push([x, y]),
            _ => {
                if current.len() > 1 {
                    out.push(std::mem::take(&mut current));
                } else {
                    current.clear();
                }
            }
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

fn auto_c0(m: f64, b_star: f64) -> f64 {
    -3.0 * PI * (m - 1.0) / 2.0 - (1.0 / b_star).atan()
}

fn sinusoidal_counterexample() -> Result<Scene, String> {
    let fr = LineFrustration::sinusoidal(PI / 10.0, PI);
    let window = ((-2.0, 2.0), (0.0, 2.0));
    let cov = coverage_map(window, &fr, 1.0, (120, 120));
    coverage_scene(&fr, 1.0, window, &cov)
}

fn line_slope_plot() -> Result<Scene, String> {
    let b_star: f64 = 2.0;
    let lo = -b_star.atan();
    let curves = graph(
        |phi0| line_slope(phi0, b_star).finite(),
        (lo + 1e-3, lo + PI - 1e-3),
        600,
        8.0,
    );
    plot_scene(vec![("slope", "#2b6cb0", curves)])
}

fn halfplane_profile_figure(
    fr: LineFrustration,
    anchor_interval: (f64, f64),
    lookup: (f64, f64),
    window: Window,
) -> Result<Scene, String> {
    let mut field = HalfPlaneField::new(fr, 2.0, anchor_interval)
        .map_err(|r| format!("profile not relievable: {:?}", r.verdict))?;
    field.anchor_window = lookup;
    field.n_scan = SCAN;
    halfplane_scene(&field, anchor_interval, window)
}

fn circle_slope_plot() -> Result<Scene, String> {
    let colors = [("m_half", "#2b6cb0"), ("m_one", "#cc2222"), ("m_threehalves", "#1a7f3c")];
    let mut curves = Vec::new();
    for (i, m) in [0.5, 1.0, 1.5].iter().enumerate() {
        let fr = CircleFrustration::frank(*m, 0.0);
        let paths = graph(
            |theta0| circle_slope(fr.phi0(theta0), 2.0).finite(),
            (0.0, 2.0 * PI),
            800,
            8.0,
        );
        curves.push((colors[i].0, colors[i].1, paths));
    }
    plot_scene(curves)
}

fn circle_figure(
    fr: CircleFrustration,
    b_star: f64,
    extend: bool,
    window: Window,
    streamline_seeds: &[[f64; 2]],
) -> Result<Scene, String> {
    let mut field = CircleField::new(fr, b_star, extend);
    field.n_scan = SCAN;
    let mut sc = circle_scene(&field, window)?;
    if !streamline_seeds.is_empty() {
        with_streamlines(&mut sc, &field, streamline_seeds);
    }
    Ok(sc)
}

fn ring_seeds(r: f64, n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            let t = 2.0 * PI * (i as f64 + 0.5) / n as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

fn asymptotic_plot() -> Result<Scene, String> {
    let colors = [("m_half", "#2b6cb0"), ("m_one", "#cc2222"), ("m_threehalves", "#1a7f3c")];
    let radii: Vec<f64> = (0..30).map(|i| 2.0 + 38.0 * i as f64 / 29.0).collect();
    let mut curves = Vec::new();
    for (i, m) in [0.5, 1.0, 1.5].iter().enumerate() {
        let mut field = CircleField::new(CircleFrustration::frank(*m, 0.0), 2.0, false);
        field.n_scan = SCAN;
        let mut paths = Vec::new();
        for k in 0..6 {
            let theta = 2.0 * PI * (k as f64 + 0.5) / 6.0;
            let rep = asymptotic_angle(&field, theta, &radii);
            let line: Polyline = rep.samples.iter().map(|&(r, a)| [r, a]).collect();
            if line.len() > 1 {
                paths.push(line);
            }
        }
        curves.push((colors[i].0, colors[i].1, paths));
    }
    plot_scene(curves)
}

fn strip_levels(b_star: f64) -> Result<Scene, String> {
    let fr = LineFrustration::linear(-PI / 4.0, 0.0);
    let interval = (0.0, 1.0);
    let window = ((-0.2, 3.0), (0.0, 2.0));
    let f = |x: f64, y: f64| -> Option<f64> {
        let roots = anchors_at_in(x, y, &fr, b_star, interval, SCAN);
        if roots.len() != 1 {
            return None;
        }
        f_at(roots[0], x - roots[0], &fr, b_star).ok()
    };
    let levels: Vec<f64> = [0.2, 0.4, 0.6, 0.8]
        .iter()
        .map(|&x0| f_at(x0, 0.0, &fr, b_star).unwrap())
        .collect();
    let contours = contour_f(&f, window, (141, 106), &levels).map_err(|e| e.to_string())?;

    let mut sc = Scene::new(window).map_err(|e| e.to_string())?;
    base_styles(&mut sc);
    sc.push(layer(
        "characteristics",
        halfplane_characteristics(&fr, b_star, &anchors(interval, 11), window, true),
    ));
    sc.push(layer("levels", contours.concat()));
    sc.push(layer(
        "boundary",
        vec![vec![[interval.0, 0.0], [interval.1, 0.0]]],
    ));
    Ok(sc)
}

pub fn run(outdir: &Path) -> Result<i32, String> {
    std::fs::create_dir_all(outdir)
        .map_err(|e| format!("cannot create {}: {e}", outdir.display()))?;

    let domain_charges: [(f64, &str); 9] = [
        (-1.0, "-1"),
        (-0.5, "-1_2"),
        (0.0, "0"),
        (0.5, "1_2"),
        (1.0, "1"),
        (1.5, "3_2"),
        (2.0, "2"),
        (2.5, "5_2"),
        (3.0, "3"),
    ];

    let square: Window = ((-4.0, 4.0), (-4.0, 4.0));
    let mut jobs: Vec<(String, Scene)> = vec![
        ("line_sinusoidal.svg".into(), sinusoidal_counterexample()?),
        ("line_slope.svg".into(), line_slope_plot()?),
        (
            "line_tanh.svg".into(),
            halfplane_profile_figure(
                LineFrustration::tanh_step(2.0),
                (-8.0, 8.0),
                (-50.0, 50.0),
                ((-5.0, 5.0), (0.0, 5.0)),
            )?,
        ),
        (
            "line_quintic.svg".into(),
            halfplane_profile_figure(
                LineFrustration::quintic_step(2.0),
                (-1.0, 1.0),
                (-1.0, 1.0),
                ((-3.0, 3.0), (0.0, 3.0)),
            )?,
        ),
        (
            "line_hybrid.svg".into(),
            halfplane_profile_figure(
                LineFrustration::hybrid(2.0),
                (-8.0, 8.0),
                (-50.0, 50.0),
                ((-4.0, 4.0), (0.0, 4.0)),
            )?,
        ),
        ("circle_slope.svg".into(), circle_slope_plot()?),
    ];

    for (m, label) in domain_charges {
        jobs.push((
            format!("circle_domain_{label}.svg"),
            circle_figure(CircleFrustration::frank(m, 0.0), 2.0, false, square, &[])?,
        ));
    }

    let inner: Window = ((-3.0, 3.0), (-3.0, 3.0));
    jobs.push((
        "circle_extended_1_2.svg".into(),
        circle_figure(
            CircleFrustration::frank(0.5, auto_c0(0.5, 2.0)),
            2.0,
            true,
            inner,
            &ring_seeds(1.8, 6),
        )?,
    ));
    jobs.push((
        "circle_1.svg".into(),
        circle_figure(
            CircleFrustration::frank(1.0, 0.0),
            2.0,
            true,
            inner,
            &ring_seeds(1.8, 6),
        )?,
    ));
    jobs.push((
        "circle_extended_3_2.svg".into(),
        circle_figure(
            CircleFrustration::frank(1.5, auto_c0(1.5, 2.0)),
            2.0,
            true,
            inner,
            &ring_seeds(1.8, 6),
        )?,
    ));
    for (m, label) in [(0.5, "1_2"), (1.0, "1"), (1.5, "3_2")] {
        jobs.push((
            format!("circle_perturbed_{label}.svg"),
            circle_figure(CircleFrustration::perturbed(m, 0.0), 2.0, false, square, &[])?,
        ));
    }
    jobs.push(("alpha_limit.svg".into(), asymptotic_plot()?));
    jobs.push(("strip_levels_b2.svg".into(), strip_levels(2.0)?));
    jobs.push(("strip_levels_b4.svg".into(), strip_levels(4.0)?));

    for (name, sc) in &jobs {
        let path = outdir.join(name);
        emit_svg(sc, &path).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}
