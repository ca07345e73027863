//! Points, geodesic distances, analytic distance gradients, and uniform
//! sampling for the three constant-curvature geometries.
//!
//! Spherical points are (latitude phi, longitude lambda) with
//! phi in [-pi/2, pi/2] and lambda in [0, 2*pi). The geodesic distance on a
//! sphere of radius R comes from the spherical law of cosines:
//!
//! ```text
//! delta = R * acos(sin(phi1) sin(phi2) + cos(phi1) cos(phi2) cos(lambda1 - lambda2))
//! ```
//!
//! Hyperbolic points use native polar coordinates (r, theta) with the
//! hyperbolic law of cosines, so both curved geometries share the same
//! chain-rule gradient structure (circular vs. hyperbolic trig).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::DistanceMatrix;
use crate::error::{Error, Result};

/// Squared-sine threshold below which a pair counts as coincident/antipodal.
const SINGULAR_EPS: f64 = 1e-18;

/// A point on the sphere: latitude `phi`, longitude `lambda`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalPoint {
    pub phi: f64,
    pub lambda: f64,
}

impl SphericalPoint {
    pub fn new(phi: f64, lambda: f64) -> Self {
        Self { phi, lambda }.normalized()
    }

    /// Canonical representative: phi in [-pi/2, pi/2], lambda in [0, 2*pi).
    /// Idempotent and distance-preserving.
    pub fn normalized(self) -> Self {
        let mut phi = (self.phi + PI).rem_euclid(TAU) - PI; // [-pi, pi)
        let mut lambda = self.lambda;
        if phi > FRAC_PI_2 {
            phi = PI - phi;
            lambda += PI;
        } else if phi < -FRAC_PI_2 {
            phi = -PI - phi;
            lambda += PI;
        }
        Self {
            phi,
            lambda: lambda.rem_euclid(TAU),
        }
    }

    /// Unit vector in R^3 (x toward lambda = 0 on the equator, z toward the
    /// north pole).
    pub fn to_unit_vector(self) -> [f64; 3] {
        let (sp, cp) = self.phi.sin_cos();
        let (sl, cl) = self.lambda.sin_cos();
        [cp * cl, cp * sl, sp]
    }

    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let phi = (v[2] / norm).clamp(-1.0, 1.0).asin();
        let lambda = v[1].atan2(v[0]);
        Self { phi, lambda }.normalized()
    }
}

/// A point in the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanPoint {
    pub x: f64,
    pub y: f64,
}

/// A point in the hyperbolic plane, polar coordinates about a fixed origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicPoint {
    pub r: f64,
    pub theta: f64,
}

impl HyperbolicPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }.normalized()
    }

    pub fn normalized(self) -> Self {
        let (mut r, mut theta) = (self.r, self.theta);
        if r < 0.0 {
            r = -r;
            theta += PI;
        }
        theta = theta.rem_euclid(TAU);
        if r == 0.0 {
            theta = 0.0;
        }
        Self { r, theta }
    }
}

/// One of the three constant-curvature embedding spaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Spherical { radius: f64 },
    Euclidean,
    Hyperbolic,
}

impl Geometry {
    pub fn sphere() -> Self {
        Geometry::Spherical { radius: 1.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Spherical { .. } => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Geometry::Spherical { radius } => *radius,
            _ => 1.0,
        }
    }

    /// Distance between two points in raw `[a, b]` coordinate form
    /// (`[phi, lambda]`, `[x, y]`, or `[r, theta]` depending on the geometry).
    pub fn distance(&self, p: [f64; 2], q: [f64; 2]) -> f64 {
        match self {
            Geometry::Spherical { radius } => spherical_distance(
                SphericalPoint { phi: p[0], lambda: p[1] },
                SphericalPoint { phi: q[0], lambda: q[1] },
                *radius,
            ),
            Geometry::Euclidean => euclidean_distance(
                EuclideanPoint { x: p[0], y: p[1] },
                EuclideanPoint { x: q[0], y: q[1] },
            ),
            Geometry::Hyperbolic => hyperbolic_distance(
                HyperbolicPoint { r: p[0], theta: p[1] },
                HyperbolicPoint { r: q[0], theta: q[1] },
            ),
        }
    }
}

/// Cosine of the central angle between two spherical points, clamped to
/// [-1, 1] against floating-point overshoot.
#[inline]
pub(crate) fn central_angle_cos(p: SphericalPoint, q: SphericalPoint) -> f64 {
    let c = p.phi.sin() * q.phi.sin() + p.phi.cos() * q.phi.cos() * (p.lambda - q.lambda).cos();
    c.clamp(-1.0, 1.0)
}

/// Geodesic distance on the sphere of radius `radius`. Result in [0, pi*R].
pub fn spherical_distance(p: SphericalPoint, q: SphericalPoint, radius: f64) -> f64 {
    if p == q {
        return 0.0;
    }
    radius * central_angle_cos(p, q).acos()
}

/// Gradient of the unit-sphere geodesic distance with respect to `p`,
/// returned as (d/dphi, d/dlambda).
///
/// Unlike the Euclidean case the gradient with respect to `q` is *not* the
/// negation of this; call the function again with the arguments swapped.
/// Errors when the points are coincident or antipodal, where the distance is
/// not differentiable.
pub fn spherical_distance_gradient(p: SphericalPoint, q: SphericalPoint) -> Result<(f64, f64)> {
    let c = central_angle_cos(p, q);
    let s2 = 1.0 - c * c;
    if s2 < SINGULAR_EPS {
        return Err(Error::SingularGradient);
    }
    let s = s2.sqrt();
    let dl = p.lambda - q.lambda;
    let dphi = -(p.phi.cos() * q.phi.sin() - p.phi.sin() * q.phi.cos() * dl.cos()) / s;
    let dlambda = p.phi.cos() * q.phi.cos() * dl.sin() / s;
    Ok((dphi, dlambda))
}

/// Euclidean distance in the plane.
pub fn euclidean_distance(p: EuclideanPoint, q: EuclideanPoint) -> f64 {
    ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt()
}

/// Hyperbolic distance in polar coordinates, by the hyperbolic law of
/// cosines. The acosh argument is clamped at 1 against floating-point
/// undershoot.
pub fn hyperbolic_distance(p: HyperbolicPoint, q: HyperbolicPoint) -> f64 {
    if p == q {
        return 0.0;
    }
    let arg = p.r.cosh() * q.r.cosh() - p.r.sinh() * q.r.sinh() * (p.theta - q.theta).cos();
    arg.max(1.0).acosh()
}

/// Gradient of the hyperbolic distance with respect to `p`, as
/// (d/dr, d/dtheta). Errors at coincident points.
pub fn hyperbolic_distance_gradient(p: HyperbolicPoint, q: HyperbolicPoint) -> Result<(f64, f64)> {
    let dt = p.theta - q.theta;
    let arg = (p.r.cosh() * q.r.cosh() - p.r.sinh() * q.r.sinh() * dt.cos()).max(1.0);
    let s2 = arg * arg - 1.0;
    if s2 < SINGULAR_EPS {
        return Err(Error::SingularGradient);
    }
    let s = s2.sqrt();
    let dr = (p.r.sinh() * q.r.cosh() - p.r.cosh() * q.r.sinh() * dt.cos()) / s;
    let dtheta = p.r.sinh() * q.r.sinh() * dt.sin() / s;
    Ok((dr, dtheta))
}

/// A list of points tagged with the geometry they live in. Coordinates are
/// stored as raw pairs in the geometry's native order, which is also the
/// JSON wire format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub geometry: Geometry,
    pub points: Vec<[f64; 2]>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples `n` points uniformly by area. On the sphere `extent` is ignored
/// (the whole sphere); in the plane it is the disk radius; in the hyperbolic
/// plane it is the hyperbolic disk radius. Deterministic for a given seed.
pub fn sample_uniform(geometry: Geometry, n: usize, extent: f64, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_uniform_with(geometry, n, extent, &mut rng)
}

pub(crate) fn sample_uniform_with(
    geometry: Geometry,
    n: usize,
    extent: f64,
    rng: &mut impl Rng,
) -> PointSet {
    let points = (0..n)
        .map(|_| match geometry {
            Geometry::Spherical { .. } => {
                let lambda = rng.gen::<f64>() * TAU;
                let phi = (2.0 * rng.gen::<f64>() - 1.0).asin();
                [phi, lambda]
            }
            Geometry::Euclidean => {
                let angle = rng.gen::<f64>() * TAU;
                let r = extent * rng.gen::<f64>().sqrt();
                [r * angle.cos(), r * angle.sin()]
            }
            Geometry::Hyperbolic => {
                let theta = rng.gen::<f64>() * TAU;
                // area element sinh(r) dr dtheta => cdf proportional to cosh(r) - 1
                let r = (1.0 + rng.gen::<f64>() * (extent.cosh() - 1.0)).acosh();
                [r, theta]
            }
        })
        .collect();
    PointSet { geometry, points }
}

/// Full pairwise distance matrix of a point set; dilation 1.0.
pub fn pairwise_distances(set: &PointSet) -> Result<DistanceMatrix> {
    let n = set.len();
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, got: n });
    }
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = set.geometry.distance(set.points[i], set.points[j]);
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    DistanceMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sp(phi: f64, lambda: f64) -> SphericalPoint {
        SphericalPoint::new(phi, lambda)
    }

    #[test]
    fn spherical_distance_examples() {
        let p = sp(0.0, 0.0);
        assert_eq!(spherical_distance(p, p, 1.0), 0.0);
        assert_relative_eq!(
            spherical_distance(sp(0.0, 0.0), sp(0.0, FRAC_PI_2), 1.0),
            FRAC_PI_2,
            epsilon = 1e-12
        );
        // antipodal poles on a radius-2 sphere
        assert_relative_eq!(
            spherical_distance(sp(FRAC_PI_2, 0.0), sp(-FRAC_PI_2, 0.0), 2.0),
            2.0 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn spherical_distance_scales_with_radius() {
        let p = sp(0.3, 1.2);
        let q = sp(-0.7, 4.0);
        let unit = spherical_distance(p, q, 1.0);
        assert_relative_eq!(spherical_distance(p, q, 3.5), 3.5 * unit, epsilon = 1e-12);
    }

    #[test]
    fn normalization_is_idempotent_and_isometric() {
        let raw = SphericalPoint { phi: 2.4, lambda: -9.0 };
        let once = raw.normalized();
        let twice = once.normalized();
        assert_eq!(once, twice);
        assert!((-FRAC_PI_2..=FRAC_PI_2).contains(&once.phi));
        assert!((0.0..TAU).contains(&once.lambda));
        let probe = sp(0.4, 0.9);
        assert_relative_eq!(
            spherical_distance(raw, probe, 1.0),
            spherical_distance(once, probe, 1.0),
            epsilon = 1e-12
        );
    }

    /// Central finite difference of the unit-sphere distance.
    fn fd_gradient(p: SphericalPoint, q: SphericalPoint, h: f64) -> (f64, f64) {
        let dphi = (spherical_distance(SphericalPoint { phi: p.phi + h, ..p }, q, 1.0)
            - spherical_distance(SphericalPoint { phi: p.phi - h, ..p }, q, 1.0))
            / (2.0 * h);
        let dl = (spherical_distance(SphericalPoint { lambda: p.lambda + h, ..p }, q, 1.0)
            - spherical_distance(SphericalPoint { lambda: p.lambda - h, ..p }, q, 1.0))
            / (2.0 * h);
        (dphi, dl)
    }

    #[test]
    fn gradient_along_equator() {
        // moving lambda1 toward lambda2 shortens the distance at unit rate
        let (dphi, dlambda) =
            spherical_distance_gradient(sp(0.0, 0.0), sp(0.0, FRAC_PI_2)).unwrap();
        let (fd_phi, fd_lambda) = fd_gradient(sp(0.0, 0.0), sp(0.0, FRAC_PI_2), 1e-6);
        assert_relative_eq!(dphi, 0.0, epsilon = 1e-9);
        assert_relative_eq!(dlambda, -1.0, epsilon = 1e-9);
        assert_relative_eq!(dphi, fd_phi, epsilon = 1e-5);
        assert_relative_eq!(dlambda, fd_lambda, epsilon = 1e-5);
    }

    #[test]
    fn gradient_along_meridian() {
        let (dphi, dlambda) =
            spherical_distance_gradient(sp(0.0, 0.0), sp(PI / 4.0, 0.0)).unwrap();
        assert_relative_eq!(dphi, -1.0, epsilon = 1e-9);
        assert_relative_eq!(dlambda, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn gradient_is_not_antisymmetric() {
        // unlike the Euclidean case, grad wrt p != -(grad wrt q)
        let p = sp(0.0, 0.3);
        let q = sp(0.2, 1.0);
        let gp = spherical_distance_gradient(p, q).unwrap();
        let gq = spherical_distance_gradient(q, p).unwrap();
        let diff = ((gp.0 + gq.0).powi(2) + (gp.1 + gq.1).powi(2)).sqrt();
        assert!(diff > 1e-3, "gradients unexpectedly antisymmetric: {diff}");
    }

    #[test]
    fn gradient_rejects_degenerate_pairs() {
        let p = sp(0.3, 0.3);
        assert!(spherical_distance_gradient(p, p).is_err());
        let antipode = sp(-0.3, 0.3 + PI);
        assert!(spherical_distance_gradient(p, antipode).is_err());
    }

    #[test]
    fn euclidean_examples() {
        let d = euclidean_distance(
            EuclideanPoint { x: 0.0, y: 0.0 },
            EuclideanPoint { x: 3.0, y: 4.0 },
        );
        assert_relative_eq!(d, 5.0);
        let p = EuclideanPoint { x: 1.0, y: 1.0 };
        assert_eq!(euclidean_distance(p, p), 0.0);
        assert_relative_eq!(
            euclidean_distance(p, EuclideanPoint { x: 2.0, y: 2.0 }),
            2f64.sqrt()
        );
    }

    #[test]
    fn hyperbolic_examples() {
        let p = HyperbolicPoint { r: 1.0, theta: 0.0 };
        assert_eq!(hyperbolic_distance(p, p), 0.0);
        // opposite directions at radius 1: the geodesic runs through the
        // origin, so the distance is exactly 2
        let q = HyperbolicPoint { r: 1.0, theta: PI };
        let d = hyperbolic_distance(p, q);
        assert_relative_eq!(d, 2.0, epsilon = 1e-12);
        // cross-check through the Poincare disk model
        assert_relative_eq!(d, poincare_distance(p, q), epsilon = 1e-9);
        // distance to the origin is the radial coordinate
        let origin = HyperbolicPoint { r: 0.0, theta: 0.0 };
        assert_relative_eq!(
            hyperbolic_distance(HyperbolicPoint { r: 1.7, theta: 2.0 }, origin),
            1.7,
            epsilon = 1e-12
        );
    }

    /// Independent route: map to the Poincare disk and use its metric.
    fn poincare_distance(p: HyperbolicPoint, q: HyperbolicPoint) -> f64 {
        let to_disk = |h: HyperbolicPoint| {
            let rho = (h.r / 2.0).tanh();
            (rho * h.theta.cos(), rho * h.theta.sin())
        };
        let (ux, uy) = to_disk(p);
        let (vx, vy) = to_disk(q);
        let du = ux * ux + uy * uy;
        let dv = vx * vx + vy * vy;
        let diff = (ux - vx).powi(2) + (uy - vy).powi(2);
        (1.0 + 2.0 * diff / ((1.0 - du) * (1.0 - dv))).acosh()
    }

    #[test]
    fn hyperbolic_matches_poincare_on_random_pairs() {
        let set = sample_uniform(Geometry::Hyperbolic, 40, 3.0, 7);
        for pair in set.points.chunks(2) {
            if let [a, b] = pair {
                let p = HyperbolicPoint { r: a[0], theta: a[1] };
                let q = HyperbolicPoint { r: b[0], theta: b[1] };
                assert_relative_eq!(
                    hyperbolic_distance(p, q),
                    poincare_distance(p, q),
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn sphere_sampling_is_area_uniform() {
        let set = sample_uniform(Geometry::sphere(), 10_000, 0.0, 42);
        let mean_sin: f64 =
            set.points.iter().map(|p| p[0].sin()).sum::<f64>() / set.len() as f64;
        assert!(mean_sin.abs() < 0.03, "mean sin(phi) = {mean_sin}");
    }

    #[test]
    fn disk_sampling_is_area_uniform() {
        let set = sample_uniform(Geometry::Euclidean, 10_000, 1.0, 11);
        let inner = set
            .points
            .iter()
            .filter(|p| (p[0] * p[0] + p[1] * p[1]).sqrt() <= 0.5)
            .count() as f64;
        let frac = inner / set.len() as f64;
        assert!((frac - 0.25).abs() < 0.02, "fraction inside r=0.5: {frac}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_uniform(Geometry::Hyperbolic, 100, 2.0, 5);
        let b = sample_uniform(Geometry::Hyperbolic, 100, 2.0, 5);
        assert_eq!(a, b);
        assert!(sample_uniform(Geometry::Euclidean, 0, 1.0, 5).is_empty());
    }

    #[test]
    fn pairwise_examples() {
        let poles = PointSet {
            geometry: Geometry::sphere(),
            points: vec![[FRAC_PI_2, 0.0], [-FRAC_PI_2, 0.0]],
        };
        let dm = pairwise_distances(&poles).unwrap();
        assert_relative_eq!(dm.get(0, 1), PI, epsilon = 1e-12);

        let line = PointSet {
            geometry: Geometry::Euclidean,
            points: vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]],
        };
        let dm = pairwise_distances(&line).unwrap();
        let expect = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(dm.get(i, j), expect[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn pairwise_symmetric_zero_diagonal() {
        for geometry in [Geometry::sphere(), Geometry::Euclidean, Geometry::Hyperbolic] {
            let set = sample_uniform(geometry, 5, 2.0, 9);
            let dm = pairwise_distances(&set).unwrap();
            for i in 0..5 {
                assert_eq!(dm.get(i, i), 0.0);
                for j in 0..5 {
                    assert_eq!(dm.get(i, j), dm.get(j, i));
                }
            }
        }
    }

    #[test]
    fn triangle_inequality_random_triples() {
        for geometry in [Geometry::sphere(), Geometry::Euclidean, Geometry::Hyperbolic] {
            let set = sample_uniform(geometry, 30, 2.5, 13);
            let dm = pairwise_distances(&set).unwrap();
            for i in 0..set.len() {
                for j in 0..set.len() {
                    for k in 0..set.len() {
                        assert!(
                            dm.get(i, j) <= dm.get(i, k) + dm.get(k, j) + 1e-9,
                            "triangle inequality violated in {}",
                            geometry.name()
                        );
                    }
                }
            }
        }
    }
}
