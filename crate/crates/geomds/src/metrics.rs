//! Quality measures comparable within and across geometries.
//!
//! Raw stress depends on the target scale, which makes it hard to read
//! across spaces where rescaling a layout is not an isometry. Distortion --
//! the mean relative error `|delta - d| / d` over all pairs -- is
//! scale-comparable, so cross-geometry tables report it alongside stress.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dist::DistanceMatrix;
use crate::embed::{self, Embedding, LayoutConfig};
use crate::error::{Error, Result};

/// Mean relative error of realized vs. target distances.
///
/// The matrix must be the (possibly dilated) targets the layout was fit to,
/// so that comparisons across geometries share one target scale.
pub fn distortion(emb: &Embedding, dm: &DistanceMatrix) -> Result<f64> {
    let n = emb.len();
    if n != dm.size() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: dm.size(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewPoints { min: 2, got: n });
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dm.get(i, j);
            if d <= 0.0 {
                return Err(Error::InvalidDistance { i, j, value: d });
            }
            total += (emb.distance(i, j) - d).abs() / d;
        }
    }
    Ok(total / (n * (n - 1) / 2) as f64)
}

/// Quality of a single layout run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QualityReport {
    pub geometry: String,
    pub n: usize,
    pub stress: f64,
    pub distortion: f64,
    pub dilation: f64,
    pub runtime_s: f64,
}

/// Aggregate of repeated runs in one geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub geometry: String,
    pub n: usize,
    pub repeats: usize,
    pub mean_distortion: f64,
    pub sd_distortion: f64,
    pub mean_stress: f64,
    pub sd_stress: f64,
    pub mean_runtime_s: f64,
    pub dilation: f64,
}

impl GeometrySummary {
    /// Fixed report-CSV header shared by the comparison commands.
    pub const CSV_HEADER: &'static str =
        "graph,geometry,n,mean_distortion,sd_distortion,mean_stress,runtime_s,dilation";

    pub fn csv_row(&self, graph: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            graph,
            self.geometry,
            self.n,
            self.mean_distortion,
            self.sd_distortion,
            self.mean_stress,
            self.mean_runtime_s,
            self.dilation
        )
    }
}

/// Runs one SGD layout and measures it against the targets it was fit to.
pub fn layout_quality(dm: &DistanceMatrix, cfg: &LayoutConfig) -> Result<QualityReport> {
    let (emb, trace) = embed::sgd_layout(dm, cfg)?;
    let targets = embed::target_distances(dm, cfg.dilation)?;
    Ok(QualityReport {
        geometry: cfg.geometry.name().to_string(),
        n: emb.len(),
        stress: embed::stress(&emb, &targets, cfg.weights)?,
        distortion: distortion(&emb, &targets)?,
        dilation: emb.dilation,
        runtime_s: trace.seconds,
    })
}

/// Lays the same targets out `repeats` times per configuration (seeds
/// `seed + 0 .. seed + repeats - 1`) and reports the mean and standard
/// deviation of distortion and stress per geometry.
///
/// Independent (configuration x repeat) cells may run in parallel; the
/// output order follows the input order either way.
pub fn compare_geometries(
    dm: &DistanceMatrix,
    cfgs: &[LayoutConfig],
    repeats: usize,
) -> Result<Vec<GeometrySummary>> {
    if repeats == 0 {
        return Err(Error::Unsupported("repeats must be at least 1".into()));
    }
    let jobs: Vec<LayoutConfig> = cfgs
        .iter()
        .flat_map(|cfg| (0..repeats).map(move |k| cfg.with_seed(cfg.seed + k as u64)))
        .collect();

    #[cfg(feature = "parallel")]
    let reports: Vec<Result<QualityReport>> =
        jobs.par_iter().map(|cfg| layout_quality(dm, cfg)).collect();
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<Result<QualityReport>> =
        jobs.iter().map(|cfg| layout_quality(dm, cfg)).collect();

    let mut out = Vec::with_capacity(cfgs.len());
    for (c, chunk) in reports.chunks(repeats).enumerate() {
        let mut distortions = Vec::with_capacity(repeats);
        let mut stresses = Vec::with_capacity(repeats);
        let mut runtime = 0.0;
        let mut dilation = 1.0;
        for r in chunk {
            let r = match r {
                Ok(r) => r,
                Err(e) => {
                    return Err(Error::Unsupported(format!(
                        "layout failed in {}: {e}",
                        cfgs[c].geometry.name()
                    )))
                }
            };
            distortions.push(r.distortion);
            stresses.push(r.stress);
            runtime += r.runtime_s;
            dilation = r.dilation;
        }
        out.push(GeometrySummary {
            geometry: cfgs[c].geometry.name().to_string(),
            n: dm.size(),
            repeats,
            mean_distortion: mean(&distortions),
            sd_distortion: sd(&distortions),
            mean_stress: mean(&stresses),
            sd_stress: sd(&stresses),
            mean_runtime_s: runtime / repeats as f64,
            dilation,
        });
    }
    Ok(out)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}
