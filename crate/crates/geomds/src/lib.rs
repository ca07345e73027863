//! geomds embeds graphs -- or any finite metric -- into the three
//! constant-curvature geometries (spherical, Euclidean, hyperbolic) by
//! minimizing geodesic stress with stochastic gradient descent, and renders
//! spherical layouts through standard map projections.
//!
//! The pipeline: build a [`graph::Graph`], compute graph-theoretic target
//! distances with [`dist::apsp`], lay them out with [`embed::sgd_layout`],
//! measure with [`metrics::distortion`], and draw with [`render::render_svg`].

pub mod dist;
pub mod embed;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod metrics;
pub mod project;
pub mod render;
pub mod schedule;

pub use dist::{apsp, DistanceMatrix};
pub use embed::{
    dilate_heuristic, gd_layout, sgd_layout, sgd_layout_with_radius, stress, DilationMode,
    Embedding, LayoutArtifact, LayoutConfig, OptTrace, StopReason, WeightPolicy,
};
pub use error::{Error, Result};
pub use geometry::{
    euclidean_distance, hyperbolic_distance, pairwise_distances, sample_uniform,
    spherical_distance, spherical_distance_gradient, EuclideanPoint, Geometry, HyperbolicPoint,
    PointSet, SphericalPoint,
};
pub use graph::{generate_polytope, parse_edge_list, parse_matrix_market, subdivide, Graph};
pub use metrics::{compare_geometries, distortion, GeometrySummary, QualityReport};
pub use project::{project, sample_geodesic, ProjectionKind, ProjectionScene};
pub use render::{render_svg, RenderOptions};
pub use schedule::{eta_at, ScheduleKind};
