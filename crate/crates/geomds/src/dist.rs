//! Target distance matrices: all-pairs shortest paths and CSV import/export.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A symmetric matrix of nonnegative target distances.
///
/// `dilation` records the cumulative scale factor already applied to the
/// entries (1.0 if none).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
    dilation: f64,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            d.extend_from_slice(row);
        }
        let dm = Self { n, d, dilation: 1.0 };
        dm.validate()?;
        Ok(dm)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if !v.is_finite() || v < 0.0 || (i == j && v != 0.0) {
                    return Err(Error::InvalidDistance { i, j, value: v });
                }
                if (v - self.get(j, i)).abs() > 0.0 {
                    return Err(Error::AsymmetricDistance {
                        a: i.to_string(),
                        b: j.to_string(),
                        forward: v,
                        backward: self.get(j, i),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dilation(&self) -> f64 {
        self.dilation
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Largest off-diagonal entry.
    pub fn max_distance(&self) -> f64 {
        self.d.iter().cloned().fold(0.0, f64::max)
    }

    /// Returns a copy with every entry multiplied by `factor`; the factor is
    /// folded into the recorded dilation.
    pub fn scaled(&self, factor: f64) -> DistanceMatrix {
        DistanceMatrix {
            n: self.n,
            d: self.d.iter().map(|v| v * factor).collect(),
            dilation: self.dilation * factor,
        }
    }

    /// Row-major CSV with a header row of labels.
    pub fn to_csv(&self, labels: Option<&[String]>) -> String {
        let mut out = String::new();
        let header: Vec<String> = match labels {
            Some(ls) => ls.to_vec(),
            None => (0..self.n).map(|i| format!("v{i}")).collect(),
        };
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{}", self.get(i, j))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV format written by [`to_csv`](Self::to_csv): a header row
    /// of labels followed by a full symmetric matrix. Returns the matrix and
    /// the labels.
    pub fn from_csv(text: &str) -> Result<(DistanceMatrix, Vec<String>)> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty distance table".into(),
        })?;
        let labels: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        let n = labels.len();
        let mut d = vec![0.0; n * n];
        let mut row = 0usize;
        for (idx, line) in lines {
            if row >= n {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {n} data rows"),
                });
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != n {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {n} columns, got {}", fields.len()),
                });
            }
            for (col, field) in fields.iter().enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("invalid number '{}'", field.trim()),
                })?;
                d[row * n + col] = v;
            }
            row += 1;
        }
        if row != n {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("expected {n} data rows, got {row}"),
            });
        }
        // symmetry check reports the offending label pair
        for i in 0..n {
            for j in (i + 1)..n {
                let (f, b) = (d[i * n + j], d[j * n + i]);
                if (f - b).abs() > 1e-9 * f.abs().max(b.abs()).max(1.0) {
                    return Err(Error::AsymmetricDistance {
                        a: labels[i].clone(),
                        b: labels[j].clone(),
                        forward: f,
                        backward: b,
                    });
                }
            }
        }
        let dm = DistanceMatrix { n, d, dilation: 1.0 };
        dm.validate()?;
        Ok((dm, labels))
    }
}

/// Unweighted all-pairs shortest paths by BFS from every source.
///
/// Rows are independent, so the computation may run in parallel; the output
/// is identical either way. Disconnected inputs are rejected.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    let adj = g.adjacency();

    let bfs_row = |src: usize| -> Vec<u32> {
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(bfs_row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<u32>> = (0..n).map(bfs_row).collect();

    let mut d = Vec::with_capacity(n * n);
    for (src, row) in rows.iter().enumerate() {
        for (v, &hops) in row.iter().enumerate() {
            if hops == u32::MAX {
                return Err(Error::Disconnected { a: src, b: v });
            }
            d.push(hops as f64);
        }
    }
    Ok(DistanceMatrix { n, d, dilation: 1.0 })
}
