//! Graph input: parsers, generators, and edge subdivision.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// An undirected, unweighted simple graph with 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from raw edges, dropping self-loops and duplicates.
    /// Edge endpoints are stored with the smaller index first, in first-seen order.
    pub fn new(n: usize, raw_edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for (a, b) in raw_edges {
            if a >= n || b >= n {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("edge ({a}, {b}) out of bounds for {n} vertices"),
                });
            }
            if a == b {
                continue;
            }
            let e = (a.min(b), a.max(b));
            if seen.insert(e) {
                edges.push(e);
            }
        }
        Ok(Self {
            n,
            edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Adjacency lists, built once for traversals.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Serializes as an edge list, one `u v` pair per line, in stored order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// Parses a Matrix Market coordinate file as an undirected graph pattern.
///
/// Numeric values are discarded, the diagonal is dropped, and entries are
/// symmetrized; 1-based indices become 0-based.
pub fn parse_matrix_market(text: &str) -> Result<Graph> {
    let mut size: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut first_line = true;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if first_line && line.starts_with("%%MatrixMarket") {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.get(1) != Some(&"matrix") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected 'matrix' object in MatrixMarket banner".into(),
                });
            }
            if fields.get(2) != Some(&"coordinate") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!(
                        "unsupported format '{}': only coordinate format is supported",
                        fields.get(2).unwrap_or(&"<missing>")
                    ),
                });
            }
            first_line = false;
            continue;
        }
        first_line = false;
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if size.is_none() {
            if fields.len() < 3 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "size line must be 'rows cols nnz'".into(),
                });
            }
            let rows: usize = parse_field(fields[0], lineno)?;
            let cols: usize = parse_field(fields[1], lineno)?;
            let _nnz: usize = parse_field(fields[2], lineno)?;
            size = Some((rows, cols));
            continue;
        }
        let (rows, cols) = size.unwrap();
        if fields.len() < 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: "entry line must start with 'row col'".into(),
            });
        }
        let i: usize = parse_field(fields[0], lineno)?;
        let j: usize = parse_field(fields[1], lineno)?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("entry ({i}, {j}) out of declared bounds {rows}x{cols}"),
            });
        }
        edges.push((i - 1, j - 1));
    }
    let (rows, cols) = size.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing size line".into(),
    })?;
    Graph::new(rows.max(cols), edges)
}

fn parse_field<T: std::str::FromStr>(field: &str, line: usize) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid integer token '{field}'"),
    })
}

/// Parses a plain-text edge list: one `u v` pair per line, `#` comments.
///
/// Vertex ids may be arbitrary integers; they are densely reindexed in
/// first-appearance order and the original ids kept as labels.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut index: Vec<(i64, usize)> = Vec::new(); // (original id, dense index)
    let mut labels: Vec<String> = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 'u v', got {} tokens", fields.len()),
            });
        }
        let mut pair = [0usize; 2];
        for (k, field) in fields.iter().enumerate() {
            let id: i64 = parse_field(field, lineno)?;
            let dense = *lookup.entry(id).or_insert_with(|| {
                index.push((id, labels.len()));
                labels.push(id.to_string());
                labels.len() - 1
            });
            pair[k] = dense;
        }
        edges.push((pair[0], pair[1]));
    }
    let n = labels.len();
    Ok(Graph::new(n, edges)?.with_labels(labels))
}

/// The convex polytopes whose 1-skeletons serve as benchmark graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeKind {
    Cube,
    Dodecahedron,
    Icosahedron,
}

impl std::str::FromStr for PolytopeKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cube" => Ok(Self::Cube),
            "dodecahedron" => Ok(Self::Dodecahedron),
            "icosahedron" => Ok(Self::Icosahedron),
            other => Err(format!(
                "unknown polytope '{other}' (expected cube, dodecahedron, or icosahedron)"
            )),
        }
    }
}

/// Returns the 1-skeleton of the requested polytope.
pub fn generate_polytope(kind: PolytopeKind) -> Graph {
    match kind {
        PolytopeKind::Cube => {
            // vertices are 3-bit strings, edges flip one bit
            let mut edges = Vec::new();
            for v in 0..8usize {
                for bit in 0..3 {
                    let u = v ^ (1 << bit);
                    if v < u {
                        edges.push((v, u));
                    }
                }
            }
            Graph::new(8, edges).unwrap()
        }
        PolytopeKind::Dodecahedron => {
            // generalized Petersen graph GP(10, 2)
            let mut edges = Vec::new();
            for k in 0..10usize {
                edges.push((k, (k + 1) % 10)); // outer decagon
                edges.push((k, 10 + k)); // spokes
                edges.push((10 + k, 10 + (k + 2) % 10)); // inner pentagrams
            }
            Graph::new(20, edges).unwrap()
        }
        PolytopeKind::Icosahedron => {
            // pentagonal antiprism (vertices 1..=10) capped by two apexes 0 and 11
            let mut edges = Vec::new();
            let top = |k: usize| 1 + k;
            let bottom = |k: usize| 6 + k;
            for k in 0..5usize {
                edges.push((0, top(k)));
                edges.push((11, bottom(k)));
                edges.push((top(k), top((k + 1) % 5)));
                edges.push((bottom(k), bottom((k + 1) % 5)));
                edges.push((top(k), bottom(k)));
                edges.push((top(k), bottom((k + 4) % 5)));
            }
            Graph::new(12, edges).unwrap()
        }
    }
}

/// Replaces every edge by a two-edge path through a fresh midpoint vertex,
/// `times` rounds. One round maps (n, m) to (n + m, 2m).
pub fn subdivide(g: &Graph, times: usize) -> Graph {
    let mut current = g.clone();
    for _ in 0..times {
        let n = current.n;
        let mut edges = Vec::with_capacity(current.edges.len() * 2);
        for (k, &(a, b)) in current.edges.iter().enumerate() {
            let mid = n + k;
            edges.push((a, mid));
            edges.push((mid, b));
        }
        current = Graph::new(n + current.edges.len(), edges).unwrap();
    }
    current
}

/// Builds a graph from a generator spec string: `cube`, `dodecahedron`,
/// `icosahedron`, `octahedron`, `cycle<n>`, or `grid<n>`, optionally
/// followed by `:<rounds>` of edge subdivision (e.g. `icosahedron:2`).
pub fn from_generator_spec(spec: &str) -> Result<Graph> {
    let usage = |msg: String| Error::Unsupported(msg);
    let (kind, rounds) = match spec.split_once(':') {
        Some((k, r)) => (
            k,
            r.parse::<usize>()
                .map_err(|_| usage(format!("invalid subdivision count in '{spec}'")))?,
        ),
        None => (spec, 0),
    };
    let base = if let Ok(polytope) = kind.parse::<PolytopeKind>() {
        generate_polytope(polytope)
    } else if kind == "octahedron" {
        octahedron()
    } else if let Some(n) = kind.strip_prefix("cycle") {
        let n: usize = n
            .parse()
            .ok()
            .filter(|n| *n >= 3)
            .ok_or_else(|| usage(format!("invalid cycle size in '{spec}' (use cycle<n>, n >= 3)")))?;
        cycle(n)
    } else if let Some(n) = kind.strip_prefix("grid") {
        let n: usize = n
            .parse()
            .ok()
            .filter(|n| *n >= 2)
            .ok_or_else(|| usage(format!("invalid grid size in '{spec}' (use grid<n>, n >= 2)")))?;
        grid(n, n)
    } else {
        return Err(usage(format!(
            "unknown generator '{kind}' (expected cube, dodecahedron, icosahedron, octahedron, cycle<n>, or grid<n>)"
        )));
    };
    Ok(if rounds > 0 { subdivide(&base, rounds) } else { base })
}

/// Octahedron skeleton (K_{2,2,2}); realizable exactly on the sphere, so it
/// doubles as a layout oracle.
pub fn octahedron() -> Graph {
    // vertices 2k and 2k+1 are the three antipodal pairs
    let mut edges = Vec::new();
    for a in 0..6usize {
        for b in (a + 1)..6 {
            if b != a ^ 1 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(6, edges).unwrap()
}

/// Cycle graph C_n.
pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|k| (k, (k + 1) % n))).unwrap()
}

/// w x h grid graph.
pub fn grid(w: usize, h: usize) -> Graph {
    let id = |r: usize, c: usize| r * w + c;
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if c + 1 < w {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < h {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(w * h, edges).unwrap()
}
