//! Command-line runner binding the solvers, verifiers, and renderers to
//! reproducible scenario runs.
//!
//! Exit codes: 0 success, 2 verdict failure (not relievable, not
//! quasi-uniform, non-constant boundary rate), 1 error.

mod config;
mod csvfield;
mod figures;
mod sample;
mod scene;

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use nematic_relief_core::circle::{
    classify_degeneracies, frank_tangency_closed_form, DomainKind,
};
use nematic_relief_core::distortion::{
    ericksen_satisfied, oseen_frank_energy, ElasticConstants,
};
use nematic_relief_core::compatibility::{compatibility_residuals, heliconical_state};
use nematic_relief_core::fields::{
    CircleField, DirectorField, HalfPlaneField, Hedgehog, PlanarSplay, PlanarSpiral, PureBend,
    SingleVariableAngle,
};
use nematic_relief_core::halfplane::{self, assess_relievability, RelievabilityVerdict};
use nematic_relief_core::profiles::{winding_charge, CircleFrustration, LineFrustration};
use nematic_relief_core::quasiuniform::{
    fd_gradient, one_d_uniformity, verify_quasi_uniformity, BoundaryCurve, state_at,
};
use nematic_relief_core::render::{emit_csv, emit_svg, format_g, parse_csv};

use config::{pick_f64, pick_string, pick_usize, Cfg};

#[derive(Parser)]
#[command(name = "nematic-relief", version, about = "Planar nematic frustration relief")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a frustration prescribed on the line y = 0
    Halfplane(HalfplaneArgs),
    /// Solve a frustration prescribed on the unit circle
    Circle(CircleArgs),
    /// Check quasi-uniformity of a built-in scenario or a CSV field
    Verify(VerifyArgs),
    /// Report the nine compatibility residuals of a heliconical state
    Compat(CompatArgs),
    /// Evaluate the Oseen-Frank energy of a scenario over a grid
    Energy(EnergyArgs),
    /// Check one-dimensional uniformity of a boundary profile
    Oned(OnedArgs),
    /// Regenerate every built-in figure scenario
    Figures(FiguresArgs),
}

#[derive(Args)]
struct ProfileOpts {
    /// Boundary profile: tanh | quintic | hybrid | linear | sinusoidal | constant
    #[arg(long)]
    profile: Option<String>,
    /// Sinusoidal amplitude (default pi/10)
    #[arg(long, allow_negative_numbers = true)]
    amplitude: Option<f64>,
    /// Sinusoidal wavenumber (default pi)
    #[arg(long, allow_negative_numbers = true)]
    wavenumber: Option<f64>,
    /// Linear profile slope (default -pi/4)
    #[arg(long, allow_negative_numbers = true)]
    slope: Option<f64>,
    /// Linear profile offset
    #[arg(long, allow_negative_numbers = true)]
    offset: Option<f64>,
    /// Constant profile value
    #[arg(long, allow_negative_numbers = true)]
    value: Option<f64>,
}

#[derive(Args)]
struct HalfplaneArgs {
    #[command(flatten)]
    profile: ProfileOpts,
    /// Bend-to-splay ratio b*
    #[arg(long, allow_negative_numbers = true)]
    bstar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
    /// Anchor interval start on the boundary line
    #[arg(long, allow_negative_numbers = true)]
    x0min: Option<f64>,
    /// Anchor interval end on the boundary line
    #[arg(long, allow_negative_numbers = true)]
    x0max: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    /// Scan resolution of per-point anchor searches
    #[arg(long)]
    scan: Option<usize>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CircleArgs {
    /// Topological charge of the boundary profile
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Phase constant, a number or `auto`
    #[arg(long, allow_hyphen_values = true)]
    c0: Option<String>,
    /// Add the sin(theta0) perturbation to the pure disclination profile
    #[arg(long)]
    perturbed: bool,
    #[arg(long, allow_negative_numbers = true)]
    bstar: Option<f64>,
    /// Extend characteristics through the circle interior
    #[arg(long)]
    extend: bool,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    scan: Option<usize>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// hedgehog | purebend | splay | spiral | single | uniform
    #[arg(long)]
    scenario: Option<String>,
    /// Spiral local angle
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Verify a sampled field from a CSV file instead
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CompatArgs {
    /// Heliconical cone angle
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Handedness sign, +1 or -1
    #[arg(long, allow_negative_numbers = true)]
    sign: Option<f64>,
    /// Phase derivative g'
    #[arg(long, allow_negative_numbers = true)]
    gz: Option<f64>,
    /// Phase second derivative g''
    #[arg(long, allow_negative_numbers = true)]
    gzz: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EnergyArgs {
    /// hedgehog | purebend | splay | spiral | single | uniform
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k11: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k22: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k33: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k24: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OnedArgs {
    /// line | circle
    #[arg(long)]
    curve: Option<String>,
    #[command(flatten)]
    profile: ProfileOpts,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c0: Option<String>,
    #[arg(long)]
    perturbed: bool,
    #[arg(long, allow_negative_numbers = true)]
    bstar: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x0min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x0max: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => {
            cap_threads();
            match dispatch(cli) {
                Ok(code) => code,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    1
                }
            }
        }
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn cap_threads() {
    if let Ok(v) = std::env::var("NEMATIC_RELIEF_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Halfplane(a) => run_halfplane(a),
        Cmd::Circle(a) => run_circle(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Compat(a) => run_compat(a),
        Cmd::Energy(a) => run_energy(a),
        Cmd::Oned(a) => run_oned(a),
        Cmd::Figures(a) => figures::run(&a.out.unwrap_or_else(|| PathBuf::from("figures"))),
    }
}

fn line_profile(
    name: &str,
    b_star: f64,
    opts: &ProfileOpts,
    cfg: &Cfg,
) -> Result<LineFrustration, String> {
    Ok(match name {
        "tanh" => LineFrustration::tanh_step(b_star),
        "quintic" => LineFrustration::quintic_step(b_star),
        "hybrid" => LineFrustration::hybrid(b_star),
        "linear" => LineFrustration::linear(
            pick_f64(opts.slope, cfg, "slope", -PI / 4.0),
            pick_f64(opts.offset, cfg, "offset", 0.0),
        ),
        "sinusoidal" => LineFrustration::sinusoidal(
            pick_f64(opts.amplitude, cfg, "amplitude", PI / 10.0),
            pick_f64(opts.wavenumber, cfg, "wavenumber", PI),
        ),
        "constant" => LineFrustration::constant(pick_f64(opts.value, cfg, "value", 0.0)),
        other => return Err(format!("unknown profile `{other}`")),
    })
}

/// Default anchor interval on the boundary line: the quintic profile only
/// makes sense on [-1, 1]; the saturating steps extend far out.
fn default_anchor_interval(profile: &str) -> (f64, f64) {
    match profile {
        "quintic" => (-1.0, 1.0),
        "tanh" | "hybrid" => (-8.0, 8.0),
        _ => (-2.0, 2.0),
    }
}

fn lookup_window(profile: &str, interval: (f64, f64)) -> (f64, f64) {
    // Saturating tails keep feeding near-horizontal characteristics well
    // past the assessment interval.
    match profile {
        "tanh" | "hybrid" => halfplane::DEFAULT_ANCHOR_WINDOW,
        _ => interval,
    }
}

fn parse_c0(raw: &str, m: f64, b_star: f64) -> Result<f64, String> {
    if raw == "auto" {
        Ok(-3.0 * PI * (m - 1.0) / 2.0 - (1.0 / b_star).atan())
    } else {
        raw.parse::<f64>()
            .map_err(|_| format!("c0 must be a number or `auto`, got `{raw}`"))
    }
}

fn circle_profile(m: f64, c0: f64, perturbed: bool) -> CircleFrustration {
    if perturbed {
        CircleFrustration::perturbed(m, c0)
    } else {
        CircleFrustration::frank(m, c0)
    }
}

fn verdict_name(v: RelievabilityVerdict) -> &'static str {
    match v {
        RelievabilityVerdict::RelievableUpper => "relievable_upper",
        RelievabilityVerdict::RelievableLower => "relievable_lower",
        RelievabilityVerdict::Constant => "constant",
        RelievabilityVerdict::NotRelievable => "not_relievable",
    }
}

fn run_halfplane(a: HalfplaneArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let b_star = pick_f64(a.bstar, &cfg, "bstar", 2.0);
    let profile = pick_string(a.profile.profile.clone(), &cfg, "profile", "tanh");
    let fr = line_profile(&profile, b_star, &a.profile, &cfg)?;

    let anchor_default = default_anchor_interval(&profile);
    let x0min = pick_f64(a.x0min, &cfg, "x0min", anchor_default.0);
    let x0max = pick_f64(a.x0max, &cfg, "x0max", anchor_default.1);
    let window = (
        (
            pick_f64(a.xmin, &cfg, "xmin", -5.0),
            pick_f64(a.xmax, &cfg, "xmax", 5.0),
        ),
        (
            pick_f64(a.ymin, &cfg, "ymin", 0.0),
            pick_f64(a.ymax, &cfg, "ymax", 5.0),
        ),
    );
    let grid = (
        pick_usize(a.nx, &cfg, "nx", 40),
        pick_usize(a.ny, &cfg, "ny", 40),
    );
    let scan = pick_usize(a.scan, &cfg, "scan", 1024);
    let svg_path = a.svg.or_else(|| cfg.string("svg").map(PathBuf::from));
    let csv_path = a.csv.or_else(|| cfg.string("csv").map(PathBuf::from));

    let report = assess_relievability(&fr, b_star, (x0min, x0max), 512);
    println!("profile: {}", fr.label());
    println!("b*: {}", format_g(b_star));
    println!("verdict: {}", verdict_name(report.verdict));
    println!(
        "phi0 range: [{}, {}]",
        format_g(report.range.0),
        format_g(report.range.1)
    );
    println!(
        "admissible window: ({}, {})",
        format_g(report.interval.0),
        format_g(report.interval.1)
    );
    if report.touches_boundary {
        println!("warning: phi0 touches the window boundary");
    }

    if report.verdict == RelievabilityVerdict::NotRelievable {
        if let Some(v) = report.first_violation {
            println!("first monotonicity violation near x0 = {}", format_g(v));
        }
        let cov = halfplane::coverage_map(window, &fr, b_star, grid);
        let multi = cov.multi_cells();
        println!("multi-covered cells: {} of {}", multi.len(), grid.0 * grid.1);
        if let Some(path) = svg_path {
            let sc = figures::coverage_scene(&fr, b_star, window, &cov)?;
            emit_svg(&sc, &path).map_err(|e| e.to_string())?;
            println!("wrote {}", path.display());
        }
        return Ok(2);
    }

    let anchor_window = lookup_window(&profile, (x0min, x0max));
    let mut field = HalfPlaneField::new(fr.clone(), b_star, (x0min, x0max))
        .map_err(|r| format!("not relievable: {:?}", r.verdict))?;
    field.anchor_window = anchor_window;
    field.n_scan = scan;
    println!("half-plane: {}", if field.upper { "upper" } else { "lower" });

    if let Some(path) = svg_path {
        let sc = figures::halfplane_scene(&field, (x0min, x0max), window)?;
        emit_svg(&sc, &path).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = csv_path {
        let samples = sample::halfplane_grid(&fr, b_star, window, grid, anchor_window, scan);
        println!("csv rows: {}", samples.len());
        emit_csv(&samples, &path).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn run_circle(a: CircleArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let b_star = pick_f64(a.bstar, &cfg, "bstar", 2.0);
    let m = pick_f64(a.m, &cfg, "m", 1.0);
    let c0 = parse_c0(&pick_string(a.c0, &cfg, "c0", "0"), m, b_star)?;
    let perturbed = a.perturbed || cfg.flag("perturbed");
    let extend = a.extend || cfg.flag("extend");
    let fr = circle_profile(m, c0, perturbed);

    let window = (
        (
            pick_f64(a.xmin, &cfg, "xmin", -4.0),
            pick_f64(a.xmax, &cfg, "xmax", 4.0),
        ),
        (
            pick_f64(a.ymin, &cfg, "ymin", -4.0),
            pick_f64(a.ymax, &cfg, "ymax", 4.0),
        ),
    );
    let grid = (
        pick_usize(a.nx, &cfg, "nx", 40),
        pick_usize(a.ny, &cfg, "ny", 40),
    );
    let scan = pick_usize(a.scan, &cfg, "scan", 1024);

    println!("profile: {}", fr.label());
    println!("b*: {}", format_g(b_star));
    println!("charge: {}", format_g(winding_charge(&fr)));
    println!("c0: {}", format_g(c0));

    let deg = classify_degeneracies(&fr, b_star);
    let fmt_set = |v: &[f64]| {
        let items: Vec<String> = v.iter().map(|&t| format_g(t)).collect();
        format!("{{{}}}", items.join(", "))
    };
    println!("tangency anchors: {}", fmt_set(&deg.tangency));
    if !perturbed && (m - 1.0).abs() > 1e-12 {
        let closed = frank_tangency_closed_form(m, c0, b_star);
        println!("tangency closed form: {}", fmt_set(&closed));
    }
    if deg.resonant_global {
        println!("resonance: global (logarithmic-spiral field)");
    } else if !deg.resonant.is_empty() {
        println!("resonant anchors: {}", fmt_set(&deg.resonant));
    }

    let mut field = CircleField::new(fr.clone(), b_star, extend);
    field.n_scan = scan;
    let kind = match field.domain.kind {
        DomainKind::WholePlane => "whole plane",
        DomainKind::ExteriorOnly => "circle exterior",
        DomainKind::ExteriorWithHalfPlanes => "circle exterior cut by tangent half-planes",
    };
    println!("domain: {kind}{}", if extend { " (extended inside)" } else { "" });

    if let Some(path) = a.svg.or_else(|| cfg.string("svg").map(PathBuf::from)) {
        let sc = figures::circle_scene(&field, window)?;
        emit_svg(&sc, &path).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = a.csv.or_else(|| cfg.string("csv").map(PathBuf::from)) {
        let samples = sample::circle_grid(&fr, b_star, window, grid, extend, scan);
        println!("csv rows: {}", samples.len());
        emit_csv(&samples, &path).map_err(|e| e.to_string())?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn scenario_field(name: &str, alpha: f64) -> Result<Box<dyn DirectorField>, String> {
    Ok(match name {
        "hedgehog" => Box::new(Hedgehog),
        "purebend" => Box::new(PureBend),
        "splay" => Box::new(PlanarSplay),
        "spiral" => Box::new(PlanarSpiral::new(alpha)),
        "single" => Box::new(SingleVariableAngle),
        "uniform" => Box::new(nematic_relief_core::fields::Uniform(
            nematic_relief_core::geometry::Director::planar(alpha),
        )),
        other => return Err(format!("unknown scenario `{other}`")),
    })
}

fn ring_probes(n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|i| {
            let t = 0.4 + i as f64;
            let r = if i % 2 == 0 { 1.5 } else { 2.5 };
            [r * t.cos(), r * t.sin(), 0.0]
        })
        .collect()
}

fn run_verify(a: VerifyArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let tol = pick_f64(a.tol, &cfg, "tol", 1e-5);
    let csv = a.csv.or_else(|| cfg.string("csv").map(PathBuf::from));

    let report = if let Some(path) = csv {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let samples = parse_csv(&text).map_err(|e| e.to_string())?;
        let field = csvfield::CsvField::from_samples(&samples)?;
        let probes = field.probes(6);
        println!("field: {} ({} samples)", path.display(), samples.len());
        verify_quasi_uniformity(&field, &probes, tol).map_err(|e| e.to_string())?
    } else {
        let name = pick_string(a.scenario, &cfg, "scenario", "spiral");
        let alpha = pick_f64(a.alpha, &cfg, "alpha", 0.8);
        let field = scenario_field(&name, alpha)?;
        println!("field: {name}");
        verify_quasi_uniformity(field.as_ref(), &ring_probes(6), tol)
            .map_err(|e| e.to_string())?
    };

    println!(
        "quasi-uniform: {}",
        if report.verdict { "yes" } else { "no" }
    );
    println!("normalization: {}", report.normalization);
    let labels = ["S*", "T*", "b1*", "b2*", "q*"];
    for (label, value) in labels.iter().zip(report.constants.iter()) {
        println!("{label}: {}", format_g(*value));
    }
    println!("max ratio deviation: {}", format_g(report.max_deviation));
    let fs: Vec<String> = report.f_samples.iter().map(|&f| format_g(f)).collect();
    println!("f at probes: [{}]", fs.join(", "));
    Ok(if report.verdict { 0 } else { 2 })
}

fn run_compat(a: CompatArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let alpha = pick_f64(a.alpha, &cfg, "alpha", 0.9);
    let sign = pick_f64(a.sign, &cfg, "sign", 1.0);
    if sign != 1.0 && sign != -1.0 {
        return Err(format!("sign must be +1 or -1, got {sign}"));
    }
    let gz = pick_f64(a.gz, &cfg, "gz", 0.7);
    let gzz = pick_f64(a.gzz, &cfg, "gzz", 0.3);

    let (k, st, state) = heliconical_state(alpha, sign, gz, gzz);
    println!(
        "heliconical state: alpha = {}, sign = {}, g' = {}, g'' = {}",
        format_g(alpha),
        format_g(sign),
        format_g(gz),
        format_g(gzz)
    );
    println!(
        "constants (S*, T*, b1*, b2*, q*): ({}, {}, {}, {}, {})",
        format_g(k.splay),
        format_g(k.twist),
        format_g(k.bend1),
        format_g(k.bend2),
        format_g(k.octupolar)
    );
    println!("f: {}", format_g(st.f));
    println!("sampled (S, T, q): ({}, {}, {})",
        format_g(state.splay),
        format_g(state.twist),
        format_g(state.octupolar)
    );
    let residuals = compatibility_residuals(&k, &st);
    let mut worst: f64 = 0.0;
    for (i, r) in residuals.iter().enumerate() {
        println!("residual {}: {}", i + 1, format_g(*r));
        worst = worst.max(r.abs());
    }
    println!("max |residual|: {}", format_g(worst));
    Ok(0)
}

fn run_energy(a: EnergyArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let name = pick_string(a.scenario, &cfg, "scenario", "spiral");
    let alpha = pick_f64(a.alpha, &cfg, "alpha", 0.8);
    let field = scenario_field(&name, alpha)?;
    let k = ElasticConstants::new(
        pick_f64(a.k11, &cfg, "k11", 1.0),
        pick_f64(a.k22, &cfg, "k22", 1.0),
        pick_f64(a.k33, &cfg, "k33", 1.0),
        pick_f64(a.k24, &cfg, "k24", 1.0),
    )
    .map_err(|e| e.to_string())?;
    let window = (
        (
            pick_f64(a.xmin, &cfg, "xmin", 0.5),
            pick_f64(a.xmax, &cfg, "xmax", 2.5),
        ),
        (
            pick_f64(a.ymin, &cfg, "ymin", 0.5),
            pick_f64(a.ymax, &cfg, "ymax", 2.5),
        ),
    );
    let grid = (
        pick_usize(a.nx, &cfg, "nx", 20),
        pick_usize(a.ny, &cfg, "ny", 20),
    );

    let ((x0, x1), (y0, y1)) = window;
    let cell = (x1 - x0) / grid.0 as f64 * (y1 - y0) / grid.1 as f64;
    let (mut total_direct, mut total_modes, mut worst) = (0.0, 0.0, 0.0f64);
    let mut used = 0usize;
    for iy in 0..grid.1 {
        for ix in 0..grid.0 {
            let p = [
                x0 + (x1 - x0) * (ix as f64 + 0.5) / grid.0 as f64,
                y0 + (y1 - y0) * (iy as f64 + 0.5) / grid.1 as f64,
                0.0,
            ];
            let Ok(state) = state_at(field.as_ref(), p, 1e-5) else {
                continue;
            };
            let g = fd_gradient(field.as_ref(), p, 1e-5).map_err(|e| e.to_string())?;
            let (direct, modes) = oseen_frank_energy(&state, state.bend_magnitude(), &k, &g)
                .map_err(|e| e.to_string())?;
            total_direct += direct * cell;
            total_modes += modes * cell;
            worst = worst.max((direct - modes).abs());
            used += 1;
        }
    }

    println!("field: {name}");
    println!(
        "constants: K11 = {}, K22 = {}, K33 = {}, K24 = {}",
        format_g(k.k11),
        format_g(k.k22),
        format_g(k.k33),
        format_g(k.k24)
    );
    println!(
        "ericksen inequalities: {}",
        if ericksen_satisfied(&k) { "satisfied" } else { "violated" }
    );
    println!("grid points used: {used}");
    println!("energy (direct): {}", format_g(total_direct));
    println!("energy (modes): {}", format_g(total_modes));
    println!("max pointwise form disagreement: {}", format_g(worst));
    Ok(0)
}

fn run_oned(a: OnedArgs) -> Result<i32, String> {
    let cfg = Cfg::load(a.config.as_deref())?;
    let curve = pick_string(a.curve, &cfg, "curve", "line");
    let b_star = pick_f64(a.bstar, &cfg, "bstar", 2.0);

    let report = match curve.as_str() {
        "line" => {
            let profile = pick_string(a.profile.profile.clone(), &cfg, "profile", "linear");
            let fr = line_profile(&profile, b_star, &a.profile, &cfg)?;
            let window = (
                pick_f64(a.x0min, &cfg, "x0min", -2.0),
                pick_f64(a.x0max, &cfg, "x0max", 2.0),
            );
            println!("curve: line, profile {}", fr.label());
            one_d_uniformity(BoundaryCurve::Line(&fr), window, 512)
        }
        "circle" => {
            let m = pick_f64(a.m, &cfg, "m", 1.0);
            let c0 = parse_c0(&pick_string(a.c0, &cfg, "c0", "0"), m, b_star)?;
            let fr = circle_profile(m, c0, a.perturbed || cfg.flag("perturbed"));
            println!("curve: circle, profile {}", fr.label());
            one_d_uniformity(BoundaryCurve::Circle(&fr), (0.0, 2.0 * PI), 512)
        }
        other => return Err(format!("unknown curve `{other}`")),
    };

    match report.gamma0 {
        Some(g0) => println!("gamma0: {} (constant)", format_g(g0)),
        None => println!(
            "gamma not constant, max deviation {}",
            format_g(report.max_deviation)
        ),
    }
    Ok(if report.constant { 0 } else { 2 })
}
