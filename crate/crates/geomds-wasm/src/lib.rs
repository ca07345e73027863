//! Browser demo bindings: run a layout, re-project it interactively, and
//! sweep the dilation factor. All functions exchange JSON strings so the
//! page needs no generated type glue.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use geomds::dist::apsp;
use geomds::embed::{
    sgd_layout, stress, target_distances, DilationMode, LayoutArtifact, LayoutConfig,
};
use geomds::geometry::{Geometry, SphericalPoint};
use geomds::graph::{self, Graph};
use geomds::metrics::distortion;
use geomds::project::ProjectionKind;
use geomds::render::{render_svg, RenderOptions};
use geomds::schedule::ScheduleKind;

#[derive(Deserialize)]
struct LayoutRequest {
    /// Generator spec, e.g. "icosahedron:2" or "cycle20".
    graph: String,
    geometry: String,
    #[serde(default = "default_schedule")]
    schedule: String,
    #[serde(default = "default_lr_cap")]
    lr_cap: f64,
    #[serde(default = "default_epochs")]
    max_epochs: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_dilation")]
    dilation: String,
}

fn default_schedule() -> String {
    "piecewise".into()
}
fn default_lr_cap() -> f64 {
    0.1
}
fn default_epochs() -> usize {
    300
}
fn default_dilation() -> String {
    "auto".into()
}

/// Everything the page needs to show stats and re-render later.
#[derive(Serialize, Deserialize)]
struct LayoutBundle {
    artifact: LayoutArtifact,
    edges: Vec<(usize, usize)>,
    n: usize,
    m: usize,
    epochs: usize,
    stress_trace: Vec<f64>,
}

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn parse_request(request_json: &str) -> Result<(Graph, LayoutConfig), JsValue> {
    let req: LayoutRequest = serde_json::from_str(request_json).map_err(err)?;
    let g = graph::from_generator_spec(&req.graph).map_err(err)?;
    let geometry = match req.geometry.as_str() {
        "euclidean" => Geometry::Euclidean,
        "hyperbolic" => Geometry::Hyperbolic,
        _ => Geometry::sphere(),
    };
    let schedule: ScheduleKind = req.schedule.parse().map_err(err)?;
    let dilation = match req.dilation.as_str() {
        "none" => DilationMode::None,
        "heuristic" => DilationMode::Heuristic,
        "optimize-radius" => DilationMode::OptimizeRadius,
        _ => match geometry {
            Geometry::Spherical { .. } => DilationMode::Heuristic,
            _ => DilationMode::None,
        },
    };
    let cfg = LayoutConfig {
        geometry,
        schedule,
        lr_cap: req.lr_cap,
        max_epochs: req.max_epochs,
        seed: req.seed,
        dilation,
        ..LayoutConfig::new(geometry)
    };
    Ok((g, cfg))
}

/// Runs the full pipeline on a generated graph and returns a JSON bundle
/// with the embedding, quality numbers, and the per-epoch stress trace.
#[wasm_bindgen]
pub fn demo_layout(request_json: &str) -> Result<String, JsValue> {
    let (g, cfg) = parse_request(request_json)?;
    let dm = apsp(&g).map_err(err)?;
    let (emb, trace) = sgd_layout(&dm, &cfg).map_err(err)?;
    let targets = target_distances(&dm, cfg.dilation).map_err(err)?;
    let final_stress = stress(&emb, &targets, cfg.weights).map_err(err)?;
    let dist = distortion(&emb, &targets).map_err(err)?;
    let bundle = LayoutBundle {
        artifact: LayoutArtifact::new(&emb, &cfg, None, final_stress, dist),
        edges: g.edges().to_vec(),
        n: g.vertex_count(),
        m: g.edge_count(),
        epochs: trace.epochs,
        stress_trace: trace.stress,
    };
    serde_json::to_string(&bundle).map_err(err)
}

/// Re-renders a layout bundle under a chosen projection and view center
/// (degrees). Cheap: no re-optimization, so it can run per slider tick.
#[wasm_bindgen]
pub fn demo_render(
    bundle_json: &str,
    projection: &str,
    center_lat_deg: f64,
    center_lon_deg: f64,
    width: f64,
) -> Result<String, JsValue> {
    let bundle: LayoutBundle = serde_json::from_str(bundle_json).map_err(err)?;
    let emb = bundle.artifact.embedding();
    let g = Graph::new(bundle.n, bundle.edges).map_err(err)?;
    let center = SphericalPoint::new(center_lat_deg.to_radians(), center_lon_deg.to_radians());
    let kind = ProjectionKind::from_name(projection, center).map_err(err)?;
    render_svg(
        &emb,
        &g,
        &kind,
        &RenderOptions {
            width,
            ..RenderOptions::default()
        },
    )
    .map_err(err)
}

#[derive(Deserialize)]
struct SweepRequest {
    graph: String,
    #[serde(default = "default_sweep_points")]
    points: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_epochs")]
    max_epochs: usize,
}

fn default_sweep_points() -> usize {
    15
}

#[derive(Serialize)]
struct SweepResponse {
    factors: Vec<f64>,
    distortions: Vec<f64>,
    heuristic_factor: f64,
}

/// Distortion as a function of the dilation factor, spanning
/// [0.25x, 4x] around the heuristic factor pi / max(d).
#[wasm_bindgen]
pub fn demo_dilation_sweep(request_json: &str) -> Result<String, JsValue> {
    let req: SweepRequest = serde_json::from_str(request_json).map_err(err)?;
    let g = graph::from_generator_spec(&req.graph).map_err(err)?;
    let dm = apsp(&g).map_err(err)?;
    let max = dm.max_distance();
    if max <= 0.0 {
        return Err(err("graph has no positive distances"));
    }
    let heuristic = std::f64::consts::PI / max;
    let points = req.points.clamp(3, 40);
    let mut factors = Vec::with_capacity(points);
    let mut distortions = Vec::with_capacity(points);
    for k in 0..points {
        let t = k as f64 / (points - 1) as f64;
        let factor = heuristic * 0.25 * 16f64.powf(t);
        let scaled = dm.scaled(factor);
        let cfg = LayoutConfig {
            dilation: DilationMode::None,
            seed: req.seed,
            max_epochs: req.max_epochs,
            ..LayoutConfig::new(Geometry::sphere())
        };
        let (emb, _) = sgd_layout(&scaled, &cfg).map_err(err)?;
        factors.push(factor);
        distortions.push(distortion(&emb, &scaled).map_err(err)?);
    }
    serde_json::to_string(&SweepResponse {
        factors,
        distortions,
        heuristic_factor: heuristic,
    })
    .map_err(err)
}
