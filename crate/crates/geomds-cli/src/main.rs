//! Command-line harness: layout runs, cross-geometry comparisons, dilation
//! sweeps, the random-sampling experiment, and city-distance recovery.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use geomds::dist::{apsp, DistanceMatrix};
use geomds::embed::{
    gd_layout, sgd_layout, target_distances, DilationMode, Embedding, LayoutArtifact,
    LayoutConfig, OptTrace, WeightPolicy,
};
use geomds::geometry::{pairwise_distances, sample_uniform, Geometry, SphericalPoint};
use geomds::graph::{self, Graph};
use geomds::metrics::{compare_geometries, distortion, GeometrySummary};
use geomds::project::ProjectionKind;
use geomds::render::{render_svg, RenderOptions};
use geomds::schedule::ScheduleKind;

#[derive(Parser)]
#[command(
    name = "geomds",
    about = "Embed graphs and metrics on the sphere, in the plane, and in the hyperbolic plane by geodesic stress minimization",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lay out one graph and write layout JSON, trace CSV, a quality report,
    /// and optionally an SVG rendering.
    Layout(LayoutCmd),
    /// Lay out each input in all three geometries and tabulate distortion.
    Compare(CompareCmd),
    /// Scale the target distances through a range of factors and record the
    /// distortion at each, marking the heuristic factor.
    DilationSweep(DilationSweepCmd),
    /// Sample random points from each geometry and embed each distance
    /// matrix with all three variants (a 3x3 table).
    SampleExperiment(SampleExperimentCmd),
    /// Recover point positions from a labeled matrix of pairwise distances
    /// and render orthographic views.
    Cities(CitiesCmd),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Graph file: Matrix Market (.mtx) or whitespace edge list
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Generate a graph instead: cube, dodecahedron, icosahedron,
    /// octahedron, cycle:<n>, or grid:<n>
    #[arg(long, value_name = "SPEC")]
    generate: Option<String>,
    /// Rounds of edge subdivision applied to a generated graph
    #[arg(long, default_value_t = 0)]
    subdivide: usize,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// spherical | euclidean | hyperbolic
    #[arg(long, default_value = "spherical")]
    geometry: String,
    /// none | heuristic | optimize-radius | factor=<a> | auto
    /// (auto: heuristic on the sphere, none otherwise)
    #[arg(long, default_value = "auto")]
    dilation: String,
    /// fixed | piecewise | frac-t | frac-sqrt-t
    #[arg(long, default_value = "piecewise")]
    schedule: String,
    #[arg(long = "lr-cap", default_value_t = 0.1)]
    lr_cap: f64,
    #[arg(long = "max-epochs", default_value_t = 300)]
    max_epochs: usize,
    /// Convergence threshold on the per-epoch stress change
    #[arg(long, default_value_t = 1e-7)]
    eps: f64,
    /// invsq | binary
    #[arg(long, default_value = "invsq")]
    weights: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct RenderArgs {
    /// ortho | stereo | mercator | equal-earth
    #[arg(long, default_value = "ortho")]
    projection: String,
    /// Projection center as "lat,lon" in degrees
    #[arg(long, default_value = "0,0", value_name = "PHI,LAMBDA")]
    center: String,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
}

#[derive(Args)]
struct LayoutCmd {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    opt: OptimizerArgs,
    /// sgd | gd
    #[arg(long, default_value = "sgd")]
    algorithm: String,
    /// Also write an SVG; the optional value overrides --projection
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    svg: Option<String>,
    #[command(flatten)]
    render: RenderArgs,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct CompareCmd {
    /// Graph files; repeatable
    #[arg(long, value_name = "FILE")]
    input: Vec<PathBuf>,
    /// Generator specs; repeatable (e.g. --generate icosahedron:2 for two
    /// subdivision rounds)
    #[arg(long, value_name = "SPEC")]
    generate: Vec<String>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    opt: OptimizerArgs,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct DilationSweepCmd {
    #[command(flatten)]
    input: InputArgs,
    /// Explicit comma-separated factors; overrides the automatic sweep
    #[arg(long)]
    factors: Option<String>,
    /// Number of sweep points when --factors is not given
    #[arg(long, default_value_t = 20)]
    sweep_points: usize,
    /// Sweep span as multiples of the heuristic factor, "lo,hi"
    #[arg(long, default_value = "0.25,4")]
    span: String,
    #[command(flatten)]
    opt: OptimizerArgs,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct SampleExperimentCmd {
    #[arg(long, default_value_t = 50)]
    n_points: usize,
    /// Disk radius for planar and hyperbolic sampling (the sphere is whole)
    #[arg(long, default_value_t = 2.0)]
    extent: f64,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    opt: OptimizerArgs,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct CitiesCmd {
    /// CSV with a header row of labels and a full symmetric distance matrix
    #[arg(long, value_name = "FILE")]
    distances: PathBuf,
    #[command(flatten)]
    opt: OptimizerArgs,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

/// The resolved plan of one layout run, serialized next to its outputs.
#[derive(Serialize, Deserialize)]
struct RunManifest {
    input: Option<String>,
    generate: Option<String>,
    subdivide: usize,
    algorithm: String,
    config: LayoutConfig,
    prescale: f64,
    outputs: BTreeMap<String, String>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<geomds::Error> for CliError {
    fn from(e: geomds::Error) -> Self {
        use geomds::Error::*;
        match e {
            Parse { .. } | Disconnected { .. } | AsymmetricDistance { .. }
            | TooFewPoints { .. } | DimensionMismatch { .. } => CliError::Input(e.to_string()),
            AllZeroDistances | InvalidDistance { .. } | SingularGradient
            | AntipodalGeodesic | ProjectionUndefined | Unsupported(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit code conventions differ; ours is 1 for usage
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Layout(cmd) => cmd_layout(cmd),
        Command::Compare(cmd) => cmd_compare(cmd),
        Command::DilationSweep(cmd) => cmd_dilation_sweep(cmd),
        Command::SampleExperiment(cmd) => cmd_sample_experiment(cmd),
        Command::Cities(cmd) => cmd_cities(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

fn parse_geometry(name: &str) -> CliResult<Geometry> {
    match name {
        "spherical" => Ok(Geometry::sphere()),
        "euclidean" => Ok(Geometry::Euclidean),
        "hyperbolic" => Ok(Geometry::Hyperbolic),
        other => Err(CliError::Usage(format!(
            "unknown geometry '{other}' (expected spherical, euclidean, or hyperbolic)"
        ))),
    }
}

fn parse_weights(name: &str) -> CliResult<WeightPolicy> {
    match name {
        "invsq" => Ok(WeightPolicy::InverseSquare),
        "binary" => Ok(WeightPolicy::Binary),
        other => Err(CliError::Usage(format!(
            "unknown weight policy '{other}' (expected invsq or binary)"
        ))),
    }
}

/// Dilation flag: mode plus an optional pre-scaling factor.
fn parse_dilation(arg: &str, geometry: Geometry) -> CliResult<(DilationMode, f64)> {
    match arg {
        "auto" => Ok((
            match geometry {
                Geometry::Spherical { .. } => DilationMode::Heuristic,
                _ => DilationMode::None,
            },
            1.0,
        )),
        "none" => Ok((DilationMode::None, 1.0)),
        "heuristic" => Ok((DilationMode::Heuristic, 1.0)),
        "optimize-radius" => Ok((DilationMode::OptimizeRadius, 1.0)),
        other => {
            if let Some(value) = other.strip_prefix("factor=") {
                let factor: f64 = value.parse().map_err(|_| {
                    CliError::Usage(format!("invalid dilation factor '{value}'"))
                })?;
                if factor <= 0.0 || !factor.is_finite() {
                    return Err(CliError::Usage(format!(
                        "dilation factor must be positive, got {factor}"
                    )));
                }
                Ok((DilationMode::None, factor))
            } else {
                Err(CliError::Usage(format!(
                    "unknown dilation '{other}' (expected none, heuristic, optimize-radius, or factor=<a>)"
                )))
            }
        }
    }
}

fn build_config(opt: &OptimizerArgs) -> CliResult<(LayoutConfig, f64)> {
    let geometry = parse_geometry(&opt.geometry)?;
    let (dilation, prescale) = parse_dilation(&opt.dilation, geometry)?;
    let schedule: ScheduleKind = opt
        .schedule
        .parse()
        .map_err(CliError::Usage)?;
    Ok((
        LayoutConfig {
            geometry,
            schedule,
            lr_cap: opt.lr_cap,
            max_epochs: opt.max_epochs,
            convergence_eps: opt.eps,
            weights: parse_weights(&opt.weights)?,
            seed: opt.seed,
            dilation,
        },
        prescale,
    ))
}

fn generate_graph(spec: &str) -> CliResult<Graph> {
    graph::from_generator_spec(spec).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_graph(input: &InputArgs) -> CliResult<(Graph, String)> {
    let (mut g, mut name) = match (&input.input, &input.generate) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Input(format!("cannot read {}: {e}", path.display()))
            })?;
            let g = if path.extension().and_then(|e| e.to_str()) == Some("mtx") {
                graph::parse_matrix_market(&text)?
            } else {
                graph::parse_edge_list(&text)?
            };
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            (g, name)
        }
        (None, Some(spec)) => (generate_graph(spec)?, spec.replace(':', "_")),
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--input and --generate are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --input or --generate is required".into(),
            ))
        }
    };
    if input.subdivide > 0 {
        g = graph::subdivide(&g, input.subdivide);
        write!(name, "_{}", input.subdivide).unwrap();
    }
    Ok((g, name))
}

fn parse_center(arg: &str) -> CliResult<SphericalPoint> {
    let (a, b) = arg.split_once(',').ok_or_else(|| {
        CliError::Usage(format!("invalid center '{arg}' (expected \"lat,lon\" in degrees)"))
    })?;
    let phi: f64 = a.trim().parse().map_err(|_| {
        CliError::Usage(format!("invalid center latitude '{a}'"))
    })?;
    let lambda: f64 = b.trim().parse().map_err(|_| {
        CliError::Usage(format!("invalid center longitude '{b}'"))
    })?;
    Ok(SphericalPoint::new(phi.to_radians(), lambda.to_radians()))
}

fn projection_for(name: &str, center: SphericalPoint) -> CliResult<ProjectionKind> {
    ProjectionKind::from_name(name, center).map_err(|e| CliError::Usage(e.to_string()))
}

fn ensure_out_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn run_layout(
    dm: &DistanceMatrix,
    cfg: &LayoutConfig,
    algorithm: &str,
) -> CliResult<(Embedding, OptTrace)> {
    match algorithm {
        "sgd" => Ok(sgd_layout(dm, cfg)?),
        "gd" => Ok(gd_layout(dm, cfg)?),
        other => Err(CliError::Usage(format!(
            "unknown algorithm '{other}' (expected sgd or gd)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_layout(cmd: LayoutCmd) -> CliResult<()> {
    let (g, name) = load_graph(&cmd.input)?;
    let (cfg, prescale) = build_config(&cmd.opt)?;
    ensure_out_dir(&cmd.out)?;

    let dm = apsp(&g)?.scaled(prescale);
    let (emb, trace) = run_layout(&dm, &cfg, &cmd.algorithm)?;
    let targets = target_distances(&dm, cfg.dilation)?;
    let stress = geomds::embed::stress(&emb, &targets, cfg.weights)?;
    let dist = distortion(&emb, &targets)?;

    let artifact = LayoutArtifact::new(
        &emb,
        &cfg,
        g.labels().map(|l| l.to_vec()),
        stress,
        dist,
    );
    let mut outputs = BTreeMap::new();
    write_file(&cmd.out, "layout.json", &artifact.to_json())?;
    outputs.insert("layout".into(), "layout.json".into());
    write_file(&cmd.out, "trace.csv", &trace.to_csv())?;
    outputs.insert("trace".into(), "trace.csv".into());

    let summary = GeometrySummary {
        geometry: cfg.geometry.name().to_string(),
        n: g.vertex_count(),
        repeats: 1,
        mean_distortion: dist,
        sd_distortion: 0.0,
        mean_stress: stress,
        sd_stress: 0.0,
        mean_runtime_s: trace.seconds,
        dilation: emb.dilation,
    };
    let report = format!("{}\n{}\n", GeometrySummary::CSV_HEADER, summary.csv_row(&name));
    write_file(&cmd.out, "report.csv", &report)?;
    outputs.insert("report".into(), "report.csv".into());

    if let Some(svg_projection) = &cmd.svg {
        let projection_name = if svg_projection.is_empty() {
            cmd.render.projection.as_str()
        } else {
            svg_projection.as_str()
        };
        let center = parse_center(&cmd.render.center)?;
        let kind = projection_for(projection_name, center)?;
        let svg = render_svg(
            &emb,
            &g,
            &kind,
            &RenderOptions {
                width: cmd.render.width,
                ..RenderOptions::default()
            },
        )?;
        write_file(&cmd.out, "layout.svg", &svg)?;
        outputs.insert("svg".into(), "layout.svg".into());
    }

    let manifest = RunManifest {
        input: cmd.input.input.as_ref().map(|p| p.display().to_string()),
        generate: cmd.input.generate.clone(),
        subdivide: cmd.input.subdivide,
        algorithm: cmd.algorithm.clone(),
        config: cfg,
        prescale,
        outputs,
    };
    write_file(
        &cmd.out,
        "manifest.json",
        &serde_json::to_string_pretty(&manifest).expect("manifest serialization"),
    )?;

    println!(
        "{name}: n={} stress={stress:.6} distortion={dist:.6} dilation={:.6} epochs={} ({:.2}s)",
        g.vertex_count(),
        emb.dilation,
        trace.epochs,
        trace.seconds
    );
    Ok(())
}

fn cmd_compare(cmd: CompareCmd) -> CliResult<()> {
    if cmd.input.is_empty() && cmd.generate.is_empty() {
        return Err(CliError::Usage(
            "at least one --input or --generate is required".into(),
        ));
    }
    if cmd.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    ensure_out_dir(&cmd.out)?;

    let mut jobs: Vec<(String, CliResult<Graph>)> = Vec::new();
    for path in &cmd.input {
        let args = InputArgs {
            input: Some(path.clone()),
            generate: None,
            subdivide: 0,
        };
        match load_graph(&args) {
            Ok((g, name)) => jobs.push((name, Ok(g))),
            Err(e) => jobs.push((path.display().to_string(), Err(e))),
        }
    }
    for spec in &cmd.generate {
        jobs.push((spec.replace(':', "_"), generate_graph(spec)));
    }

    let mut csv = String::from(GeometrySummary::CSV_HEADER);
    csv.push('\n');
    let mut summaries: BTreeMap<String, Vec<GeometrySummary>> = BTreeMap::new();

    for (name, loaded) in jobs {
        let result = loaded.and_then(|g| {
            let dm = apsp(&g)?;
            let cfgs: Vec<LayoutConfig> = [Geometry::sphere(), Geometry::Euclidean, Geometry::Hyperbolic]
                .into_iter()
                .map(|geometry| {
                    let (dilation, _) = parse_dilation(&cmd.opt.dilation, geometry)?;
                    let (base, _) = build_config(&OptimizerArgs {
                        geometry: geometry.name().to_string(),
                        ..cmd.opt.clone()
                    })?;
                    Ok(LayoutConfig { geometry, dilation, ..base })
                })
                .collect::<CliResult<_>>()?;
            Ok(compare_geometries(&dm, &cfgs, cmd.repeats)?)
        });
        match result {
            Ok(table) => {
                for summary in &table {
                    csv.push_str(&summary.csv_row(&name));
                    csv.push('\n');
                }
                summaries.insert(name, table);
            }
            Err(e) => {
                // record the failure and keep going with the other graphs
                csv.push_str(&format!("{name},error,,,,,,\"{e}\"\n"));
                eprintln!("warning: {name}: {e}");
            }
        }
    }

    write_file(&cmd.out, "compare.csv", &csv)?;
    write_file(
        &cmd.out,
        "compare.json",
        &serde_json::to_string_pretty(&summaries).expect("summary serialization"),
    )?;
    print!("{csv}");
    Ok(())
}

fn cmd_dilation_sweep(cmd: DilationSweepCmd) -> CliResult<()> {
    let (g, name) = load_graph(&cmd.input)?;
    let (base_cfg, prescale) = build_config(&cmd.opt)?;
    ensure_out_dir(&cmd.out)?;

    let dm = apsp(&g)?.scaled(prescale);
    let max = dm.max_distance();
    if max <= 0.0 {
        return Err(CliError::Numerical("distance matrix has no positive entry".into()));
    }
    let heuristic = std::f64::consts::PI / max;

    let mut factors: Vec<f64> = match &cmd.factors {
        Some(list) => list
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    CliError::Usage(format!("invalid factor '{}'", tok.trim()))
                })
            })
            .collect::<CliResult<_>>()?,
        None => {
            let (lo, hi) = {
                let (a, b) = cmd.span.split_once(',').ok_or_else(|| {
                    CliError::Usage(format!("invalid span '{}' (expected \"lo,hi\")", cmd.span))
                })?;
                let lo: f64 = a.trim().parse().map_err(|_| {
                    CliError::Usage(format!("invalid span bound '{a}'"))
                })?;
                let hi: f64 = b.trim().parse().map_err(|_| {
                    CliError::Usage(format!("invalid span bound '{b}'"))
                })?;
                (lo, hi)
            };
            if !(lo > 0.0 && hi > lo && cmd.sweep_points >= 2) {
                return Err(CliError::Usage(
                    "sweep needs 0 < lo < hi and at least 2 points".into(),
                ));
            }
            (0..cmd.sweep_points)
                .map(|k| {
                    let t = k as f64 / (cmd.sweep_points - 1) as f64;
                    heuristic * lo * (hi / lo).powf(t)
                })
                .collect()
        }
    };
    if factors.iter().any(|f| *f <= 0.0 || !f.is_finite()) {
        return Err(CliError::Usage("factors must be positive".into()));
    }
    // the heuristic factor is always part of the output, marked
    if !factors.iter().any(|f| (f - heuristic).abs() < 1e-12) {
        factors.push(heuristic);
    }
    factors.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut csv = String::from("factor,distortion,stress,is_heuristic\n");
    for factor in &factors {
        let scaled = dm.scaled(*factor);
        let cfg = LayoutConfig {
            dilation: DilationMode::None,
            ..base_cfg
        };
        let (emb, _) = sgd_layout(&scaled, &cfg)?;
        let stress = geomds::embed::stress(&emb, &scaled, cfg.weights)?;
        let dist = distortion(&emb, &scaled)?;
        let mark = if (factor - heuristic).abs() < 1e-12 { 1 } else { 0 };
        csv.push_str(&format!("{factor},{dist},{stress},{mark}\n"));
    }
    write_file(&cmd.out, "sweep.csv", &csv)?;
    println!("{name}: swept {} factors, heuristic = {heuristic:.6}", factors.len());
    Ok(())
}

fn cmd_sample_experiment(cmd: SampleExperimentCmd) -> CliResult<()> {
    if cmd.n_points < 3 {
        return Err(CliError::Usage("--n-points must be at least 3".into()));
    }
    if cmd.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    ensure_out_dir(&cmd.out)?;
    let geometries = [Geometry::sphere(), Geometry::Euclidean, Geometry::Hyperbolic];

    let mut csv = String::from("source,target,n_points,repeats,mean_distortion,sd_distortion\n");
    for source in geometries {
        let mut per_target: Vec<Vec<f64>> = vec![Vec::new(); 3];
        for k in 0..cmd.repeats {
            let points = sample_uniform(source, cmd.n_points, cmd.extent, cmd.opt.seed + k as u64);
            let dm = pairwise_distances(&points)?;
            for (ti, target) in geometries.into_iter().enumerate() {
                let (dilation, _) = parse_dilation(&cmd.opt.dilation, target)?;
                let (base, _) = build_config(&OptimizerArgs {
                    geometry: target.name().to_string(),
                    ..cmd.opt.clone()
                })?;
                let cfg = LayoutConfig {
                    dilation,
                    seed: cmd.opt.seed + k as u64,
                    ..base
                };
                let (emb, _) = sgd_layout(&dm, &cfg)?;
                let targets = target_distances(&dm, cfg.dilation)?;
                per_target[ti].push(distortion(&emb, &targets)?);
            }
        }
        for (ti, values) in per_target.iter().enumerate() {
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let sd = if values.len() > 1 {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / (values.len() - 1) as f64)
                    .sqrt()
            } else {
                0.0
            };
            csv.push_str(&format!(
                "{},{},{},{},{mean},{sd}\n",
                source.name(),
                geometries[ti].name(),
                cmd.n_points,
                cmd.repeats
            ));
        }
    }
    write_file(&cmd.out, "sample_experiment.csv", &csv)?;
    print!("{csv}");
    Ok(())
}

fn cmd_cities(cmd: CitiesCmd) -> CliResult<()> {
    let text = std::fs::read_to_string(&cmd.distances).map_err(|e| {
        CliError::Input(format!("cannot read {}: {e}", cmd.distances.display()))
    })?;
    let (dm, labels) = DistanceMatrix::from_csv(&text)?;
    ensure_out_dir(&cmd.out)?;

    let (mut cfg, _) = build_config(&cmd.opt)?;
    cfg.geometry = Geometry::sphere();
    cfg.dilation = DilationMode::Heuristic;

    let (emb, trace) = sgd_layout(&dm, &cfg)?;
    let targets = target_distances(&dm, cfg.dilation)?;
    let stress = geomds::embed::stress(&emb, &targets, cfg.weights)?;
    let dist = distortion(&emb, &targets)?;

    let artifact = LayoutArtifact::new(&emb, &cfg, Some(labels.clone()), stress, dist);
    write_file(&cmd.out, "cities_layout.json", &artifact.to_json())?;
    write_file(&cmd.out, "cities_trace.csv", &trace.to_csv())?;

    // vertices only, labeled, seen from three longitudes
    let g = Graph::new(dm.size(), [])?.with_labels(labels);
    for lon in [0.0f64, 120.0, 240.0] {
        let kind = ProjectionKind::orthographic(SphericalPoint::new(0.0, lon.to_radians()));
        let svg = render_svg(
            &emb,
            &g,
            &kind,
            &RenderOptions {
                width: cmd.width,
                draw_labels: true,
                vertex_radius: 4.0,
                ..RenderOptions::default()
            },
        )?;
        write_file(&cmd.out, &format!("cities_ortho_{}.svg", lon as i64), &svg)?;
    }
    println!(
        "cities: n={} distortion={dist:.6} dilation={:.6} ({:.2}s)",
        dm.size(),
        emb.dilation,
        trace.seconds
    );
    Ok(())
}
