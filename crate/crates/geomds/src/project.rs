//! Map projections of spherical layouts, plus geodesic edge sampling.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, SphericalPoint};
use crate::graph::Graph;

/// Equal Earth polynomial coefficients (Savric, Patterson, Jenny 2018).
const A1: f64 = 1.340264;
const A2: f64 = -0.081106;
const A3: f64 = 0.000893;
const A4: f64 = 0.003796;

/// Mercator latitude clip: +/- 85 degrees keeps the canvas bounded.
const MERCATOR_MAX_LAT: f64 = 85.0 * PI / 180.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjectionKind {
    /// View from space onto the tangent plane at `center`; the far
    /// hemisphere is hidden.
    Orthographic { center: SphericalPoint },
    /// Projection from the antipode of `center` onto the tangent plane at
    /// `center`; conformal, undefined only at the antipode itself.
    Stereographic { center: SphericalPoint },
    Mercator,
    EqualEarth,
}

impl ProjectionKind {
    pub fn orthographic(center: SphericalPoint) -> Self {
        ProjectionKind::Orthographic { center: center.normalized() }
    }

    pub fn stereographic(center: SphericalPoint) -> Self {
        ProjectionKind::Stereographic { center: center.normalized() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProjectionKind::Orthographic { .. } => "orthographic",
            ProjectionKind::Stereographic { .. } => "stereographic",
            ProjectionKind::Mercator => "mercator",
            ProjectionKind::EqualEarth => "equal_earth",
        }
    }

    /// Parses a CLI-style name with an optional center.
    pub fn from_name(name: &str, center: SphericalPoint) -> Result<Self> {
        match name {
            "ortho" | "orthographic" => Ok(Self::orthographic(center)),
            "stereo" | "stereographic" => Ok(Self::stereographic(center)),
            "mercator" => Ok(ProjectionKind::Mercator),
            "equal-earth" | "equal_earth" => Ok(ProjectionKind::EqualEarth),
            other => Err(Error::Unsupported(format!(
                "unknown projection '{other}' (expected ortho, stereo, mercator, or equal-earth)"
            ))),
        }
    }
}

/// Projects a point; the flag is false for points on the hidden hemisphere
/// of an orthographic view.
pub fn project(p: SphericalPoint, kind: &ProjectionKind) -> Result<([f64; 2], bool)> {
    let p = p.normalized();
    match kind {
        ProjectionKind::Orthographic { center } => {
            let (x, y, cos_c) = tangent_plane(p, *center);
            Ok(([x, y], cos_c >= 0.0))
        }
        ProjectionKind::Stereographic { center } => {
            let (x, y, cos_c) = tangent_plane(p, *center);
            if 1.0 + cos_c < 1e-12 {
                return Err(Error::ProjectionUndefined);
            }
            let k = 2.0 / (1.0 + cos_c);
            Ok(([k * x, k * y], true))
        }
        ProjectionKind::Mercator => {
            let phi = p.phi.clamp(-MERCATOR_MAX_LAT, MERCATOR_MAX_LAT);
            let x = wrap_longitude(p.lambda);
            let y = (FRAC_PI_4 + phi / 2.0).tan().ln();
            Ok(([x, y], true))
        }
        ProjectionKind::EqualEarth => {
            let lambda = wrap_longitude(p.lambda);
            let theta = (3f64.sqrt() / 2.0 * p.phi.sin()).asin();
            let t2 = theta * theta;
            let t6 = t2 * t2 * t2;
            let dy = A1 + 3.0 * A2 * t2 + 7.0 * A3 * t6 + 9.0 * A4 * t6 * t2;
            let x = 2.0 * 3f64.sqrt() * lambda * theta.cos() / (3.0 * dy);
            let y = theta * (A1 + A2 * t2 + A3 * t6 + A4 * t6 * t2);
            Ok(([x, y], true))
        }
    }
}

/// Coordinates of `p` in the tangent frame at `center`, plus the cosine of
/// the angular distance between them.
fn tangent_plane(p: SphericalPoint, center: SphericalPoint) -> (f64, f64, f64) {
    let (sp, cp) = p.phi.sin_cos();
    let (s0, c0) = center.phi.sin_cos();
    let (sdl, cdl) = (p.lambda - center.lambda).sin_cos();
    let x = cp * sdl;
    let y = c0 * sp - s0 * cp * cdl;
    let cos_c = s0 * sp + c0 * cp * cdl;
    (x, y, cos_c)
}

/// Wraps a longitude into (-pi, pi].
fn wrap_longitude(lambda: f64) -> f64 {
    let w = lambda.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Samples `segments + 1` points along the minor great-circle arc from `p`
/// to `q` by spherical linear interpolation; endpoints are exact.
pub fn sample_geodesic(
    p: SphericalPoint,
    q: SphericalPoint,
    segments: usize,
) -> Result<Vec<SphericalPoint>> {
    let segments = segments.max(1);
    let a = p.normalized();
    let b = q.normalized();
    let va = a.to_unit_vector();
    let vb = b.to_unit_vector();
    let dot = (va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2]).clamp(-1.0, 1.0);
    let omega = dot.acos();
    if PI - omega < 1e-9 {
        return Err(Error::AntipodalGeodesic);
    }
    let mut out = Vec::with_capacity(segments + 1);
    out.push(a);
    if omega.sin() > 1e-12 {
        let sin_omega = omega.sin();
        for k in 1..segments {
            let t = k as f64 / segments as f64;
            let ca = ((1.0 - t) * omega).sin() / sin_omega;
            let cb = (t * omega).sin() / sin_omega;
            out.push(SphericalPoint::from_unit_vector([
                ca * va[0] + cb * vb[0],
                ca * va[1] + cb * vb[1],
                ca * va[2] + cb * vb[2],
            ]));
        }
    } else {
        // coincident endpoints: the arc degenerates to the point itself
        for _ in 1..segments {
            out.push(a);
        }
    }
    out.push(b);
    Ok(out)
}

/// A polyline piece with a shared visibility state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathRun {
    pub points: Vec<[f64; 2]>,
    /// False for runs on the hidden hemisphere of an orthographic view;
    /// hidden runs are kept (for faint rendering), never dropped.
    pub visible: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneVertex {
    pub pos: [f64; 2],
    pub visible: bool,
}

/// Planar geometry of a projected layout, ready for SVG emission.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionScene {
    pub vertices: Vec<SceneVertex>,
    /// One entry per graph edge; an edge may split into several runs.
    pub edges: Vec<Vec<PathRun>>,
    /// (min_x, min_y, max_x, max_y) over everything in the scene.
    pub bbox: [f64; 4],
    /// Radius of the background disk for orthographic and hyperbolic views.
    pub frame_radius: Option<f64>,
}

/// Projects an embedding and its graph edges into the plane.
///
/// Spherical embeddings follow `kind`, with edges sampled along geodesics;
/// Euclidean layouts render directly and hyperbolic layouts through the
/// radius compression `r -> tanh(r / 2)` onto the unit disk. Straight edges
/// are used in both planar cases.
pub fn build_scene(
    emb: &Embedding,
    g: &Graph,
    kind: &ProjectionKind,
    segments: usize,
) -> Result<ProjectionScene> {
    if emb.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            left: emb.len(),
            right: g.vertex_count(),
        });
    }
    match emb.geometry {
        Geometry::Spherical { .. } => build_sphere_scene(emb, g, kind, segments),
        Geometry::Euclidean => Ok(build_planar_scene(
            g,
            emb.coords.clone(),
            None,
        )),
        Geometry::Hyperbolic => {
            let pts = emb
                .coords
                .iter()
                .map(|c| {
                    let rho = (c[0] / 2.0).tanh();
                    [rho * c[1].cos(), rho * c[1].sin()]
                })
                .collect();
            Ok(build_planar_scene(g, pts, Some(1.0)))
        }
    }
}

fn build_planar_scene(
    g: &Graph,
    pts: Vec<[f64; 2]>,
    frame_radius: Option<f64>,
) -> ProjectionScene {
    let mut bbox = BBox::new();
    for p in &pts {
        bbox.add(*p);
    }
    if let Some(r) = frame_radius {
        bbox.add([-r, -r]);
        bbox.add([r, r]);
    }
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            vec![PathRun {
                points: vec![pts[a], pts[b]],
                visible: true,
            }]
        })
        .collect();
    ProjectionScene {
        vertices: pts
            .into_iter()
            .map(|pos| SceneVertex { pos, visible: true })
            .collect(),
        edges,
        bbox: bbox.finish(),
        frame_radius,
    }
}

fn build_sphere_scene(
    emb: &Embedding,
    g: &Graph,
    kind: &ProjectionKind,
    segments: usize,
) -> Result<ProjectionScene> {
    let points: Vec<SphericalPoint> = emb
        .coords
        .iter()
        .map(|c| SphericalPoint::new(c[0], c[1]))
        .collect();
    let mut bbox = BBox::new();
    let mut vertices = Vec::with_capacity(points.len());
    for &p in &points {
        let (pos, visible) = project(p, kind)?;
        bbox.add(pos);
        vertices.push(SceneVertex { pos, visible });
    }

    // seam threshold: a projected segment jumping more than half the map
    // width is crossing the antimeridian cut of a cylindrical projection
    let seam = match kind {
        ProjectionKind::Mercator | ProjectionKind::EqualEarth => Some(PI),
        _ => None,
    };

    let mut edges = Vec::with_capacity(g.edge_count());
    for &(a, b) in g.edges() {
        let arc = sample_geodesic(points[a], points[b], segments)?;
        let mut projected = Vec::with_capacity(arc.len());
        for s in &arc {
            let (pos, visible) = project(*s, kind)?;
            bbox.add(pos);
            projected.push((pos, visible));
        }
        let mut runs: Vec<PathRun> = Vec::new();
        for pair in projected.windows(2) {
            let ((p0, v0), (p1, v1)) = (pair[0], pair[1]);
            if let Some(width) = seam {
                if (p1[0] - p0[0]).abs() > width {
                    // break the polyline at the cut instead of drawing across
                    runs.push(PathRun { points: vec![p1], visible: v0 && v1 });
                    continue;
                }
            }
            let visible = v0 && v1;
            match runs.last_mut() {
                Some(run) if run.visible == visible && run.points.last() == Some(&p0) => {
                    run.points.push(p1);
                }
                _ => runs.push(PathRun {
                    points: vec![p0, p1],
                    visible,
                }),
            }
        }
        runs.retain(|r| r.points.len() >= 2);
        edges.push(runs);
    }

    let frame_radius = match kind {
        ProjectionKind::Orthographic { .. } => {
            bbox.add([-1.0, -1.0]);
            bbox.add([1.0, 1.0]);
            Some(1.0)
        }
        _ => None,
    };
    Ok(ProjectionScene {
        vertices,
        edges,
        bbox: bbox.finish(),
        frame_radius,
    })
}

struct BBox {
    min: [f64; 2],
    max: [f64; 2],
}

impl BBox {
    fn new() -> Self {
        BBox {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    fn add(&mut self, p: [f64; 2]) {
        for k in 0..2 {
            self.min[k] = self.min[k].min(p[k]);
            self.max[k] = self.max[k].max(p[k]);
        }
    }

    fn finish(self) -> [f64; 4] {
        [self.min[0], self.min[1], self.max[0], self.max[1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::spherical_distance;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn sp(phi: f64, lambda: f64) -> SphericalPoint {
        SphericalPoint::new(phi, lambda)
    }

    #[test]
    fn orthographic_center_maps_to_origin() {
        let kind = ProjectionKind::orthographic(sp(0.0, 0.0));
        let ([x, y], visible) = project(sp(0.0, 0.0), &kind).unwrap();
        assert_eq!((x, y), (0.0, 0.0));
        assert!(visible);
    }

    #[test]
    fn orthographic_far_hemisphere_is_hidden() {
        let kind = ProjectionKind::orthographic(sp(0.0, 0.0));
        let (_, visible) = project(sp(0.0, PI * 0.75), &kind).unwrap();
        assert!(!visible);
    }

    #[test]
    fn orthographic_image_in_unit_disk() {
        let kind = ProjectionKind::orthographic(sp(0.4, 2.0));
        let set = crate::geometry::sample_uniform(Geometry::sphere(), 500, 0.0, 3);
        for p in &set.points {
            let ([x, y], _) = project(sp(p[0], p[1]), &kind).unwrap();
            assert!(x * x + y * y <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn mercator_basics() {
        let ([x, y], _) = project(sp(0.0, 0.0), &ProjectionKind::Mercator).unwrap();
        assert_relative_eq!(x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(y, 0.0, epsilon = 1e-12);
        // the equator maps to the x-axis
        for k in 0..10 {
            let ([_, y], _) =
                project(sp(0.0, k as f64 * 0.6), &ProjectionKind::Mercator).unwrap();
            assert_relative_eq!(y, 0.0, epsilon = 1e-12);
        }
        // meridians map to vertical lines
        for k in 0..8 {
            let phi = -1.2 + 0.3 * k as f64;
            let ([x, _], _) = project(sp(phi, 1.0), &ProjectionKind::Mercator).unwrap();
            assert_relative_eq!(x, 1.0, epsilon = 1e-12);
        }
        // pole clipping keeps y finite
        let ([_, y], _) = project(sp(FRAC_PI_2, 0.0), &ProjectionKind::Mercator).unwrap();
        assert!(y.is_finite() && y < 3.2);
    }

    #[test]
    fn stereographic_rejects_antipode() {
        let kind = ProjectionKind::stereographic(sp(0.0, 0.0));
        assert!(matches!(
            project(sp(0.0, PI), &kind).unwrap_err(),
            Error::ProjectionUndefined
        ));
        // everything else projects
        let (_, visible) = project(sp(0.2, 3.0), &kind).unwrap();
        assert!(visible);
    }

    #[test]
    fn equal_earth_is_equal_area() {
        // sample each cell boundary of a 36x18 lon-lat grid and compare the
        // planar polygon area with the spherical cell area
        let cols = 36;
        let rows = 18;
        let samples = 8;
        let mut ratios = Vec::new();
        for r in 0..rows {
            let phi0 = -FRAC_PI_2 + PI * r as f64 / rows as f64;
            let phi1 = -FRAC_PI_2 + PI * (r + 1) as f64 / rows as f64;
            for c in 0..cols {
                // keep inside (-pi, pi) to stay off the antimeridian cut
                let l0 = -PI + 1e-9 + (2.0 * PI - 2e-9) * c as f64 / cols as f64;
                let l1 = -PI + 1e-9 + (2.0 * PI - 2e-9) * (c + 1) as f64 / cols as f64;
                let mut boundary = Vec::new();
                for k in 0..samples {
                    let t = k as f64 / samples as f64;
                    boundary.push((phi0, l0 + t * (l1 - l0)));
                }
                for k in 0..samples {
                    let t = k as f64 / samples as f64;
                    boundary.push((phi0 + t * (phi1 - phi0), l1));
                }
                for k in 0..samples {
                    let t = k as f64 / samples as f64;
                    boundary.push((phi1, l1 + t * (l0 - l1)));
                }
                for k in 0..samples {
                    let t = k as f64 / samples as f64;
                    boundary.push((phi1 + t * (phi0 - phi1), l0));
                }
                let poly: Vec<[f64; 2]> = boundary
                    .iter()
                    .map(|&(phi, lambda)| {
                        project(SphericalPoint { phi, lambda }, &ProjectionKind::EqualEarth)
                            .unwrap()
                            .0
                    })
                    .collect();
                let planar = shoelace(&poly).abs();
                let spherical = (l1 - l0) * (phi1.sin() - phi0.sin());
                ratios.push(planar / spherical);
            }
        }
        let mean: f64 = ratios.iter().sum::<f64>() / ratios.len() as f64;
        for ratio in &ratios {
            assert!(
                (ratio / mean - 1.0).abs() < 0.01,
                "cell area ratio {ratio} deviates from mean {mean}"
            );
        }
    }

    fn shoelace(poly: &[[f64; 2]]) -> f64 {
        let mut area = 0.0;
        for k in 0..poly.len() {
            let a = poly[k];
            let b = poly[(k + 1) % poly.len()];
            area += a[0] * b[1] - b[0] * a[1];
        }
        area / 2.0
    }

    #[test]
    fn geodesic_endpoints_and_midpoint() {
        let p = sp(0.0, 0.0);
        let q = sp(0.0, FRAC_PI_2);
        let two = sample_geodesic(p, q, 1).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0], p);
        assert_eq!(two[1], q);

        let arc = sample_geodesic(p, q, 2).unwrap();
        assert_relative_eq!(arc[1].phi, 0.0, epsilon = 1e-12);
        assert_relative_eq!(arc[1].lambda, FRAC_PI_4, epsilon = 1e-12);
    }

    #[test]
    fn geodesic_distances_increase_monotonically() {
        let p = sp(0.5, 1.0);
        let q = sp(-0.4, 2.8);
        let total = spherical_distance(p, q, 1.0);
        let arc = sample_geodesic(p, q, 16).unwrap();
        let mut prev = -1.0;
        for s in &arc {
            let d = spherical_distance(p, *s, 1.0);
            assert!(d <= total + 1e-9);
            assert!(d >= prev - 1e-12, "distance not monotone");
            prev = d;
        }
    }

    #[test]
    fn geodesic_rejects_antipodes() {
        assert!(matches!(
            sample_geodesic(sp(0.0, 0.0), sp(0.0, PI), 4).unwrap_err(),
            Error::AntipodalGeodesic
        ));
    }

    #[test]
    fn scene_flags_hidden_runs() {
        // two antipodal-ish vertices: part of the connecting arc is hidden
        let emb = Embedding {
            geometry: Geometry::sphere(),
            coords: vec![[0.0, 0.0], [0.0, 2.8]],
            dilation: 1.0,
        };
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let kind = ProjectionKind::orthographic(sp(0.0, 0.0));
        let scene = build_scene(&emb, &g, &kind, 16).unwrap();
        assert_eq!(scene.vertices.len(), 2);
        let runs = &scene.edges[0];
        assert!(runs.iter().any(|r| r.visible));
        assert!(runs.iter().any(|r| !r.visible), "hidden part must be kept");
        for run in runs {
            assert!(run.points.len() >= 2);
        }
    }
}
