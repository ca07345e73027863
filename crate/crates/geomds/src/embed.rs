//! Stress minimization by stochastic gradient descent.
//!
//! The objective is the geodesic stress
//! `sum_{i<j} w_ij (delta(X_i, X_j) - d_ij)^2` where `delta` is the distance
//! function of the configured geometry. Each SGD epoch visits every vertex
//! pair exactly once in a freshly reshuffled order and moves both endpoints
//! of the pair toward satisfying it: the step is
//! `mu_ij(t) * (delta - d_ij) / 2` along the distance gradient, with the
//! per-pair rate `mu_ij(t) = min(w_ij * eta(t) / w_min, lr_cap)`. Dividing
//! the schedule by the smallest weight lets every pair start at the capped
//! rate regardless of the target scale; a bare `eta * grad` step starves
//! low-weight (long-distance) pairs and stalls far from the optimum.
//!
//! Exact gradient descent ([`gd_layout`]) instead takes one uncapped step
//! `-eta(t) * grad(stress)` per epoch, as a baseline.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::DistanceMatrix;
use crate::error::{Error, Result};
use crate::geometry::{self, Geometry, SphericalPoint};
use crate::schedule::{eta_at, ScheduleKind};

/// Pair weights in the stress sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPolicy {
    /// `w_ij = d_ij^-2`; relative errors count equally at every scale.
    InverseSquare,
    /// `w_ij = 1`.
    Binary,
}

/// How target distances are adapted to the embedding space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DilationMode {
    None,
    /// Scale the matrix by `pi / max(d)` so the largest target is exactly pi
    /// and every distance is achievable on the unit sphere.
    Heuristic,
    /// Keep the targets and fit the sphere radius as an extra parameter.
    OptimizeRadius,
}

/// Optimizer settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutConfig {
    pub geometry: Geometry,
    pub schedule: ScheduleKind,
    pub lr_cap: f64,
    pub max_epochs: usize,
    pub convergence_eps: f64,
    pub weights: WeightPolicy,
    pub seed: u64,
    pub dilation: DilationMode,
}

impl LayoutConfig {
    /// Defaults: piecewise schedule capped at 0.1, at most 300 epochs,
    /// convergence threshold 1e-7, inverse-square weights. Dilation defaults
    /// to the heuristic on the sphere (a bounded space) and to none in the
    /// two unbounded geometries.
    pub fn new(geometry: Geometry) -> Self {
        let dilation = match geometry {
            Geometry::Spherical { .. } => DilationMode::Heuristic,
            _ => DilationMode::None,
        };
        LayoutConfig {
            geometry,
            schedule: ScheduleKind::default(),
            lr_cap: 0.1,
            max_epochs: 300,
            convergence_eps: 1e-7,
            weights: WeightPolicy::InverseSquare,
            seed: 0,
            dilation,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig::new(Geometry::sphere())
    }
}

/// Why an optimization run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxEpochs,
}

/// Per-epoch record of an optimization run. Index 0 is the initial state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptTrace {
    pub stress: Vec<f64>,
    /// Cumulative wall-clock seconds at each record.
    pub elapsed: Vec<f64>,
    pub epochs: usize,
    pub stopped: StopReason,
    pub seconds: f64,
}

impl OptTrace {
    pub fn final_stress(&self) -> f64 {
        *self.stress.last().unwrap_or(&f64::NAN)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("epoch,stress,elapsed_seconds\n");
        for (epoch, (s, e)) in self.stress.iter().zip(&self.elapsed).enumerate() {
            out.push_str(&format!("{epoch},{s},{e}\n"));
        }
        out
    }
}

/// Vertex coordinates in some geometry, with the scale factor that was
/// applied to the targets they were fit against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub geometry: Geometry,
    /// Raw coordinate pairs: `[phi, lambda]`, `[x, y]`, or `[r, theta]`.
    pub coords: Vec<[f64; 2]>,
    pub dilation: f64,
}

impl Embedding {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.geometry.radius()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.geometry.distance(self.coords[i], self.coords[j])
    }

    pub fn spherical_points(&self) -> Option<Vec<SphericalPoint>> {
        match self.geometry {
            Geometry::Spherical { .. } => Some(
                self.coords
                    .iter()
                    .map(|c| SphericalPoint { phi: c[0], lambda: c[1] })
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// Full layout output bundle, the JSON wire format of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutArtifact {
    pub geometry: String,
    pub radius: f64,
    pub coords: Vec<[f64; 2]>,
    pub labels: Option<Vec<String>>,
    pub final_stress: f64,
    pub distortion: f64,
    pub dilation_factor: f64,
    pub seed: u64,
    pub config: LayoutConfig,
}

impl LayoutArtifact {
    pub fn new(
        emb: &Embedding,
        cfg: &LayoutConfig,
        labels: Option<Vec<String>>,
        final_stress: f64,
        distortion: f64,
    ) -> Self {
        LayoutArtifact {
            geometry: emb.geometry.name().to_string(),
            radius: emb.radius(),
            coords: emb.coords.clone(),
            labels,
            final_stress,
            distortion,
            dilation_factor: emb.dilation,
            seed: cfg.seed,
            config: *cfg,
        }
    }

    pub fn embedding(&self) -> Embedding {
        let geometry = match self.geometry.as_str() {
            "euclidean" => Geometry::Euclidean,
            "hyperbolic" => Geometry::Hyperbolic,
            _ => Geometry::Spherical { radius: self.radius },
        };
        Embedding {
            geometry,
            coords: self.coords.clone(),
            dilation: self.dilation_factor,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serialization")
    }
}

/// Scales the matrix so its maximum entry is exactly pi, making every target
/// achievable on the unit sphere.
pub fn dilate_heuristic(dm: &DistanceMatrix) -> Result<DistanceMatrix> {
    let max = dm.max_distance();
    if max <= 0.0 {
        return Err(Error::AllZeroDistances);
    }
    Ok(dm.scaled(PI / max))
}

/// The targets a layout run actually optimizes against under `mode`.
pub fn target_distances(dm: &DistanceMatrix, mode: DilationMode) -> Result<DistanceMatrix> {
    match mode {
        DilationMode::Heuristic => dilate_heuristic(dm),
        DilationMode::None | DilationMode::OptimizeRadius => Ok(dm.clone()),
    }
}

/// Geodesic stress of an embedding against target distances.
pub fn stress(emb: &Embedding, dm: &DistanceMatrix, weights: WeightPolicy) -> Result<f64> {
    if emb.len() != dm.size() {
        return Err(Error::DimensionMismatch {
            left: emb.len(),
            right: dm.size(),
        });
    }
    let n = emb.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dm.get(i, j);
            let w = pair_weight(d, weights);
            let r = emb.distance(i, j) - d;
            total += w * r * r;
        }
    }
    Ok(total)
}

/// Full stress gradient with respect to every coordinate. Pairs at a
/// gradient singularity (coincident or antipodal) contribute nothing.
pub fn stress_gradient(
    emb: &Embedding,
    dm: &DistanceMatrix,
    weights: WeightPolicy,
) -> Result<Vec<[f64; 2]>> {
    if emb.len() != dm.size() {
        return Err(Error::DimensionMismatch {
            left: emb.len(),
            right: dm.size(),
        });
    }
    let n = emb.len();
    let mut grad = vec![[0.0; 2]; n];
    let mut accumulate = |space: &dyn Space| {
        for i in 0..n {
            for j in (i + 1)..n {
                let d = dm.get(i, j);
                let w = pair_weight(d, weights);
                if let Some((delta, gi, gj)) = space.dist_grad(emb.coords[i], emb.coords[j]) {
                    let coeff = 2.0 * w * (delta - d);
                    grad[i][0] += coeff * gi[0];
                    grad[i][1] += coeff * gi[1];
                    grad[j][0] += coeff * gj[0];
                    grad[j][1] += coeff * gj[1];
                }
            }
        }
    };
    match emb.geometry {
        Geometry::Spherical { radius } => accumulate(&Sphere { radius }),
        Geometry::Euclidean => accumulate(&Plane),
        Geometry::Hyperbolic => accumulate(&HPlane),
    }
    Ok(grad)
}

/// Derivative of the stress with respect to the sphere radius. Zero for
/// planar geometries, which have no radius parameter.
pub fn stress_radius_gradient(
    emb: &Embedding,
    dm: &DistanceMatrix,
    weights: WeightPolicy,
) -> Result<f64> {
    if emb.len() != dm.size() {
        return Err(Error::DimensionMismatch {
            left: emb.len(),
            right: dm.size(),
        });
    }
    let radius = match emb.geometry {
        Geometry::Spherical { radius } => radius,
        _ => return Ok(0.0),
    };
    let n = emb.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dm.get(i, j);
            let w = pair_weight(d, weights);
            let p = SphericalPoint { phi: emb.coords[i][0], lambda: emb.coords[i][1] };
            let q = SphericalPoint { phi: emb.coords[j][0], lambda: emb.coords[j][1] };
            let theta = geometry::central_angle_cos(p, q).acos();
            total += 2.0 * w * (radius * theta - d) * theta;
        }
    }
    Ok(total)
}

#[inline]
fn pair_weight(d: f64, weights: WeightPolicy) -> f64 {
    match weights {
        WeightPolicy::InverseSquare => 1.0 / (d * d),
        WeightPolicy::Binary => 1.0,
    }
}

// ---------------------------------------------------------------------------
// distance kernels

/// A constant-curvature space acting on raw coordinate pairs.
trait Space {
    fn canon(&self, p: [f64; 2]) -> [f64; 2];
    fn distance(&self, p: [f64; 2], q: [f64; 2]) -> f64;
    /// Distance plus its gradient with respect to each endpoint; `None` at a
    /// singular pair (coincident or antipodal).
    fn dist_grad(&self, p: [f64; 2], q: [f64; 2]) -> Option<(f64, [f64; 2], [f64; 2])>;
}

const SINGULAR_EPS: f64 = 1e-18;

#[derive(Clone, Copy)]
struct Sphere {
    radius: f64,
}

impl Space for Sphere {
    fn canon(&self, p: [f64; 2]) -> [f64; 2] {
        let s = SphericalPoint::new(p[0], p[1]);
        [s.phi, s.lambda]
    }

    fn distance(&self, p: [f64; 2], q: [f64; 2]) -> f64 {
        let (sp1, cp1) = p[0].sin_cos();
        let (sp2, cp2) = q[0].sin_cos();
        let c = (sp1 * sp2 + cp1 * cp2 * (p[1] - q[1]).cos()).clamp(-1.0, 1.0);
        self.radius * c.acos()
    }

    fn dist_grad(&self, p: [f64; 2], q: [f64; 2]) -> Option<(f64, [f64; 2], [f64; 2])> {
        let (sp1, cp1) = p[0].sin_cos();
        let (sp2, cp2) = q[0].sin_cos();
        let dl = p[1] - q[1];
        let (sdl, cdl) = dl.sin_cos();
        let c = (sp1 * sp2 + cp1 * cp2 * cdl).clamp(-1.0, 1.0);
        let s2 = 1.0 - c * c;
        if s2 < SINGULAR_EPS {
            return None;
        }
        let s = s2.sqrt();
        let theta = c.acos();
        let dphi1 = -(cp1 * sp2 - sp1 * cp2 * cdl) / s;
        let dlambda1 = cp1 * cp2 * sdl / s;
        let dphi2 = -(cp2 * sp1 - sp2 * cp1 * cdl) / s;
        let r = self.radius;
        Some((
            r * theta,
            [r * dphi1, r * dlambda1],
            [r * dphi2, -r * dlambda1],
        ))
    }
}

struct Plane;

impl Space for Plane {
    fn canon(&self, p: [f64; 2]) -> [f64; 2] {
        p
    }

    fn distance(&self, p: [f64; 2], q: [f64; 2]) -> f64 {
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
    }

    fn dist_grad(&self, p: [f64; 2], q: [f64; 2]) -> Option<(f64, [f64; 2], [f64; 2])> {
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        let d2 = dx * dx + dy * dy;
        if d2 < SINGULAR_EPS {
            return None;
        }
        let d = d2.sqrt();
        Some((d, [dx / d, dy / d], [-dx / d, -dy / d]))
    }
}

struct HPlane;

impl Space for HPlane {
    fn canon(&self, p: [f64; 2]) -> [f64; 2] {
        let h = crate::geometry::HyperbolicPoint::new(p[0], p[1]);
        [h.r, h.theta]
    }

    fn distance(&self, p: [f64; 2], q: [f64; 2]) -> f64 {
        let arg = p[0].cosh() * q[0].cosh() - p[0].sinh() * q[0].sinh() * (p[1] - q[1]).cos();
        arg.max(1.0).acosh()
    }

    fn dist_grad(&self, p: [f64; 2], q: [f64; 2]) -> Option<(f64, [f64; 2], [f64; 2])> {
        let (ch1, sh1) = (p[0].cosh(), p[0].sinh());
        let (ch2, sh2) = (q[0].cosh(), q[0].sinh());
        let dt = p[1] - q[1];
        let (sdt, cdt) = dt.sin_cos();
        let arg = (ch1 * ch2 - sh1 * sh2 * cdt).max(1.0);
        let s2 = arg * arg - 1.0;
        if s2 < SINGULAR_EPS {
            return None;
        }
        let s = s2.sqrt();
        let delta = arg.acosh();
        let dr1 = (sh1 * ch2 - ch1 * sh2 * cdt) / s;
        let dtheta1 = sh1 * sh2 * sdt / s;
        let dr2 = (sh2 * ch1 - ch2 * sh1 * cdt) / s;
        Some((delta, [dr1, dtheta1], [dr2, -dtheta1]))
    }
}

// ---------------------------------------------------------------------------
// optimization loops

struct PairTerm {
    i: u32,
    j: u32,
    d: f64,
    w: f64,
}

fn build_terms(dm: &DistanceMatrix, weights: WeightPolicy) -> Result<Vec<PairTerm>> {
    let n = dm.size();
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, got: n });
    }
    let mut terms = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dm.get(i, j);
            if !d.is_finite() || (weights == WeightPolicy::InverseSquare && d <= 0.0) {
                return Err(Error::InvalidDistance { i, j, value: d });
            }
            terms.push(PairTerm {
                i: i as u32,
                j: j as u32,
                d,
                w: pair_weight(d, weights),
            });
        }
    }
    Ok(terms)
}

fn initial_coords(
    geometry: Geometry,
    n: usize,
    max_d: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<[f64; 2]> {
    // planar geometries start inside a disk spanning the target diameter
    let extent = (max_d / 2.0).max(f64::MIN_POSITIVE);
    geometry::sample_uniform_with(geometry, n, extent, rng).points
}

fn perturb(p: [f64; 2], rng: &mut ChaCha8Rng) -> [f64; 2] {
    const NUDGE: f64 = 1e-6;
    [
        p[0] + NUDGE * (2.0 * rng.gen::<f64>() - 1.0),
        p[1] + NUDGE * (2.0 * rng.gen::<f64>() - 1.0),
    ]
}

fn stress_of<S: Space>(space: &S, coords: &[[f64; 2]], terms: &[PairTerm]) -> f64 {
    terms
        .iter()
        .map(|t| {
            let r = space.distance(coords[t.i as usize], coords[t.j as usize]) - t.d;
            t.w * r * r
        })
        .sum()
}

#[cfg(not(target_arch = "wasm32"))]
mod clock {
    pub struct Stopwatch(std::time::Instant);
    impl Stopwatch {
        pub fn start() -> Self {
            Stopwatch(std::time::Instant::now())
        }
        pub fn seconds(&self) -> f64 {
            self.0.elapsed().as_secs_f64()
        }
    }
}

#[cfg(target_arch = "wasm32")]
mod clock {
    // no monotonic clock on bare wasm targets; elapsed times read as zero
    pub struct Stopwatch;
    impl Stopwatch {
        pub fn start() -> Self {
            Stopwatch
        }
        pub fn seconds(&self) -> f64 {
            0.0
        }
    }
}

struct TraceBuilder {
    stress: Vec<f64>,
    elapsed: Vec<f64>,
    watch: clock::Stopwatch,
}

impl TraceBuilder {
    fn start() -> Self {
        TraceBuilder {
            stress: Vec::new(),
            elapsed: Vec::new(),
            watch: clock::Stopwatch::start(),
        }
    }

    fn record(&mut self, stress: f64) {
        self.stress.push(stress);
        self.elapsed.push(self.watch.seconds());
    }

    fn converged(&self, eps: f64) -> bool {
        let k = self.stress.len();
        k >= 2 && (self.stress[k - 1] - self.stress[k - 2]).abs() < eps
    }

    fn finish(self, stopped: StopReason) -> OptTrace {
        let seconds = self.watch.seconds();
        OptTrace {
            epochs: self.stress.len().saturating_sub(1),
            stress: self.stress,
            elapsed: self.elapsed,
            stopped,
            seconds,
        }
    }
}

/// Bound on a single coordinate update. Near-singular pairs have unbounded
/// distance gradients; one runaway step would throw a vertex across the
/// space.
const MAX_STEP: f64 = 1.0;

#[inline]
fn apply_step<S: Space>(space: &S, p: [f64; 2], rate: f64, g: [f64; 2]) -> [f64; 2] {
    let mut dx = rate * g[0];
    let mut dy = rate * g[1];
    let norm2 = dx * dx + dy * dy;
    if norm2 > MAX_STEP * MAX_STEP {
        let scale = MAX_STEP / norm2.sqrt();
        dx *= scale;
        dy *= scale;
    }
    space.canon([p[0] - dx, p[1] - dy])
}

fn min_weight(terms: &[PairTerm]) -> f64 {
    terms.iter().map(|t| t.w).fold(f64::INFINITY, f64::min)
}

fn run_sgd<S: Space>(
    space: &S,
    coords: &mut [[f64; 2]],
    terms: &mut [PairTerm],
    cfg: &LayoutConfig,
    rng: &mut ChaCha8Rng,
) -> OptTrace {
    let w_min = min_weight(terms);
    let mut trace = TraceBuilder::start();
    trace.record(stress_of(space, coords, terms));
    for epoch in 0..cfg.max_epochs {
        let eta = eta_at(cfg.schedule, cfg.lr_cap, epoch) / w_min;
        terms.shuffle(rng);
        for t in terms.iter() {
            let (i, j) = (t.i as usize, t.j as usize);
            match space.dist_grad(coords[i], coords[j]) {
                None => {
                    coords[i] = space.canon(perturb(coords[i], rng));
                }
                Some((delta, gi, gj)) => {
                    let mu = (eta * t.w).min(cfg.lr_cap);
                    let rate = mu * (delta - t.d) / 2.0;
                    coords[i] = apply_step(space, coords[i], rate, gi);
                    coords[j] = apply_step(space, coords[j], rate, gj);
                }
            }
        }
        trace.record(stress_of(space, coords, terms));
        if trace.converged(cfg.convergence_eps) {
            return trace.finish(StopReason::Converged);
        }
    }
    trace.finish(StopReason::MaxEpochs)
}

fn run_gd<S: Space>(
    space: &S,
    coords: &mut [[f64; 2]],
    terms: &[PairTerm],
    cfg: &LayoutConfig,
    rng: &mut ChaCha8Rng,
) -> OptTrace {
    let mut trace = TraceBuilder::start();
    trace.record(stress_of(space, coords, terms));
    let mut grad = vec![[0.0f64; 2]; coords.len()];
    for epoch in 0..cfg.max_epochs {
        let eta = eta_at(cfg.schedule, cfg.lr_cap, epoch);
        grad.iter_mut().for_each(|g| *g = [0.0; 2]);
        for t in terms {
            let (i, j) = (t.i as usize, t.j as usize);
            match space.dist_grad(coords[i], coords[j]) {
                None => {
                    coords[i] = space.canon(perturb(coords[i], rng));
                }
                Some((delta, gi, gj)) => {
                    let coeff = 2.0 * t.w * (delta - t.d);
                    grad[i][0] += coeff * gi[0];
                    grad[i][1] += coeff * gi[1];
                    grad[j][0] += coeff * gj[0];
                    grad[j][1] += coeff * gj[1];
                }
            }
        }
        for (c, g) in coords.iter_mut().zip(&grad) {
            *c = space.canon([c[0] - eta * g[0], c[1] - eta * g[1]]);
        }
        trace.record(stress_of(space, coords, terms));
        if trace.converged(cfg.convergence_eps) {
            return trace.finish(StopReason::Converged);
        }
    }
    trace.finish(StopReason::MaxEpochs)
}

/// Lays out the targets by per-pair stochastic gradient descent.
///
/// Deterministic for a given seed. With `DilationMode::Heuristic` the matrix
/// is dilated internally first; the applied factor is recorded on the
/// returned embedding.
pub fn sgd_layout(dm: &DistanceMatrix, cfg: &LayoutConfig) -> Result<(Embedding, OptTrace)> {
    if dm.size() < 2 {
        return Err(Error::TooFewPoints { min: 2, got: dm.size() });
    }
    if cfg.dilation == DilationMode::OptimizeRadius {
        return sgd_layout_with_radius(dm, cfg);
    }
    let targets = target_distances(dm, cfg.dilation)?;
    let mut terms = build_terms(&targets, cfg.weights)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut coords = initial_coords(cfg.geometry, targets.size(), targets.max_distance(), &mut rng);
    let trace = match cfg.geometry {
        Geometry::Spherical { radius } => {
            run_sgd(&Sphere { radius }, &mut coords, &mut terms, cfg, &mut rng)
        }
        Geometry::Euclidean => run_sgd(&Plane, &mut coords, &mut terms, cfg, &mut rng),
        Geometry::Hyperbolic => run_sgd(&HPlane, &mut coords, &mut terms, cfg, &mut rng),
    };
    Ok((
        Embedding {
            geometry: cfg.geometry,
            coords,
            dilation: targets.dilation(),
        },
        trace,
    ))
}

/// Same contract as [`sgd_layout`] but each epoch takes a single step along
/// the full stress gradient.
pub fn gd_layout(dm: &DistanceMatrix, cfg: &LayoutConfig) -> Result<(Embedding, OptTrace)> {
    if dm.size() < 2 {
        return Err(Error::TooFewPoints { min: 2, got: dm.size() });
    }
    let mode = if cfg.dilation == DilationMode::OptimizeRadius {
        DilationMode::None
    } else {
        cfg.dilation
    };
    let targets = target_distances(dm, mode)?;
    let terms = build_terms(&targets, cfg.weights)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut coords = initial_coords(cfg.geometry, targets.size(), targets.max_distance(), &mut rng);
    let trace = match cfg.geometry {
        Geometry::Spherical { radius } => {
            run_gd(&Sphere { radius }, &mut coords, &terms, cfg, &mut rng)
        }
        Geometry::Euclidean => run_gd(&Plane, &mut coords, &terms, cfg, &mut rng),
        Geometry::Hyperbolic => run_gd(&HPlane, &mut coords, &terms, cfg, &mut rng),
    };
    Ok((
        Embedding {
            geometry: cfg.geometry,
            coords,
            dilation: targets.dilation(),
        },
        trace,
    ))
}

/// Spherical SGD with the sphere radius as an extra optimization variable.
///
/// Vertex updates and radius updates interleave per pair; the radius moves
/// with a smaller rate (0.01 x the schedule) to keep the global scale from
/// oscillating against local positions, and is floored at 1e-3.
pub fn sgd_layout_with_radius(
    dm: &DistanceMatrix,
    cfg: &LayoutConfig,
) -> Result<(Embedding, OptTrace)> {
    if !matches!(cfg.geometry, Geometry::Spherical { .. }) {
        return Err(Error::Unsupported(
            "radius optimization requires spherical geometry".into(),
        ));
    }
    const RADIUS_RATE: f64 = 0.01;
    const RADIUS_FLOOR: f64 = 1e-3;

    let mut terms = build_terms(dm, cfg.weights)?;
    let w_min = min_weight(&terms);
    let max_d = dm.max_distance();
    if max_d <= 0.0 {
        return Err(Error::AllZeroDistances);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut coords = initial_coords(Geometry::sphere(), dm.size(), max_d, &mut rng);
    // start from the radius at which the largest target spans a half circle
    let mut radius = (max_d / PI).max(RADIUS_FLOOR);

    let mut trace = TraceBuilder::start();
    trace.record(stress_of(&Sphere { radius }, &coords, &terms));
    let mut stopped = StopReason::MaxEpochs;
    for epoch in 0..cfg.max_epochs {
        let eta = eta_at(cfg.schedule, cfg.lr_cap, epoch) / w_min;
        terms.shuffle(&mut rng);
        for t in terms.iter() {
            let (i, j) = (t.i as usize, t.j as usize);
            let sphere = Sphere { radius };
            match sphere.dist_grad(coords[i], coords[j]) {
                None => {
                    coords[i] = sphere.canon(perturb(coords[i], &mut rng));
                }
                Some((delta, gi, gj)) => {
                    let mu = (eta * t.w).min(cfg.lr_cap);
                    let rate = mu * (delta - t.d) / 2.0;
                    coords[i] = apply_step(&sphere, coords[i], rate, gi);
                    coords[j] = apply_step(&sphere, coords[j], rate, gj);
                    // d(w (R*theta - d)^2)/dR = 2 w (R*theta - d) * theta
                    let theta = delta / radius;
                    radius = (radius - RADIUS_RATE * rate * 2.0 * theta).max(RADIUS_FLOOR);
                }
            }
        }
        trace.record(stress_of(&Sphere { radius }, &coords, &terms));
        if trace.converged(cfg.convergence_eps) {
            stopped = StopReason::Converged;
            break;
        }
    }
    Ok((
        Embedding {
            geometry: Geometry::Spherical { radius },
            coords,
            dilation: dm.dilation(),
        },
        trace.finish(stopped),
    ))
}
