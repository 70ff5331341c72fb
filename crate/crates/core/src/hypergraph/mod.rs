//! Hypergraphs, multigraphs, edge density and degeneracy.

mod density;
mod flow;
pub mod named;

use std::fmt;

use crate::error::{invalid, Error, Result};

pub(crate) use density::density_of_masks;
pub use density::{edge_density_exact, edge_density_flow, DensityReport, MAX_EXACT_VERTICES};

/// A multihypergraph on vertices `1..=n`; every edge is a strictly increasing
/// vertex list of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges may be given in any order; they are sorted. Repeated vertices
    /// inside an edge, out-of-range vertices and edges of size < 2 are rejected.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if e.len() < 2 {
                return Err(invalid!("edge {i} has fewer than two vertices"));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid!("edge {i} repeats a vertex"));
            }
            if e[0] == 0 || *e.last().unwrap() > n {
                return Err(invalid!("edge {i} has a vertex outside 1..={n}"));
            }
            out.push(e);
        }
        Ok(Hypergraph { n, edges: out })
    }

    pub fn edgeless(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    /// Indices of the edges incident to each vertex (index 0 unused).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n + 1];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Bit masks of the edges (bit v-1 for vertex v); requires n ≤ 64.
    pub(crate) fn edge_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect()
    }

    /// E(X): indices of the edges contained in `x`, in input order.
    pub fn induced_edges(&self, x: &[usize]) -> Result<Vec<usize>> {
        let mut inside = vec![false; self.n + 1];
        for &v in x {
            if v == 0 || v > self.n {
                return Err(invalid!("vertex {v} outside 1..={}", self.n));
            }
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.iter().all(|&v| inside[v]))
            .map(|(i, _)| i)
            .collect())
    }

    /// Sub-hypergraph induced by `keep`, relabelled to `1..=|keep|` in increasing
    /// order of the kept vertices. Returns the new graph and the old label of each new vertex.
    pub fn induced(&self, keep: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_label = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            if v == 0 || v > self.n {
                return Err(invalid!("vertex {v} outside 1..={}", self.n));
            }
            new_label[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_label[v] != 0))
            .map(|e| e.iter().map(|&v| new_label[v]).collect())
            .collect();
        Ok((Hypergraph { n: keep.len(), edges }, keep))
    }

    /// Parses the `n m` / `k v1 … vk` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let header = lines.next().ok_or_else(|| Error::Parse("empty hypergraph".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {m} edges, found {i}")))?;
            let nums = parse_usizes(line)?;
            let (&k, verts) = nums
                .split_first()
                .ok_or_else(|| Error::Parse(format!("empty edge line {}", i + 1)))?;
            if k < 2 {
                return Err(Error::Parse(format!("edge {} has size {k} < 2", i + 1)));
            }
            if verts.len() != k {
                return Err(Error::Parse(format!(
                    "edge {} declares {k} vertices but lists {}",
                    i + 1,
                    verts.len()
                )));
            }
            if verts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("edge {} is not strictly increasing", i + 1)));
            }
            edges.push(verts.to_vec());
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after the edge list".into()));
        }
        Hypergraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Hypergraph {
    /// The text format accepted by [`Hypergraph::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            write!(f, "{}", e.len())?;
            for v in e {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Lines with `#` comments stripped, blank lines skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

pub(crate) fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not a nonnegative integer: {t:?}"))))
        .collect()
}

pub(crate) fn parse_pair(line: &str) -> Result<(usize, usize)> {
    match parse_usizes(line)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

/// A multigraph: unordered vertex pairs with distinct endpoints, parallels allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, (a, b)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(invalid!("edge {i} is a loop at {a}"));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(invalid!("edge {i} has a vertex outside 1..={n}"));
            }
            out.push((a.min(b), a.max(b)));
        }
        Ok(Multigraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The same multigraph viewed as a 2-uniform hypergraph.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
        }
    }
}

/// Result of the minimum-degree peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub value: usize,
    /// Vertices in removal order.
    pub order: Vec<usize>,
    /// Degree of each vertex at the moment it was removed, aligned with `order`.
    pub per_step_degrees: Vec<usize>,
}

impl DegeneracyReport {
    /// `position[v]` = index of `v` in the removal order (index 0 unused).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.order.len() + 1];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Repeatedly removes a vertex of minimum degree in the surviving induced
/// sub-hypergraph (lowest index on ties). The degree of a vertex counts only
/// edges lying entirely inside the surviving vertex set.
pub fn degeneracy(h: &Hypergraph) -> DegeneracyReport {
    let inc = h.incidence();
    let mut alive_vertex = vec![true; h.n + 1];
    let mut alive_edge = vec![true; h.m()];
    let mut degree: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut order = Vec::with_capacity(h.n);
    let mut per_step = Vec::with_capacity(h.n);
    for _ in 0..h.n {
        let v = (1..=h.n)
            .filter(|&v| alive_vertex[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex survives");
        order.push(v);
        per_step.push(degree[v]);
        alive_vertex[v] = false;
        for &ei in &inc[v] {
            if alive_edge[ei] {
                alive_edge[ei] = false;
                for &w in &h.edges[ei] {
                    degree[w] -= 1;
                }
            }
        }
    }
    DegeneracyReport {
        value: per_step.iter().copied().max().unwrap_or(0),
        order,
        per_step_degrees: per_step,
    }
}

/// Index arithmetic for the k-fold vertex clone: copy `c ∈ 1..=k` of `v` is `(v-1)k + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CloneMap {
    pub k: usize,
}

impl CloneMap {
    pub fn forward(&self, v: usize, c: usize) -> usize {
        (v - 1) * self.k + c
    }

    pub fn backward(&self, u: usize) -> (usize, usize) {
        ((u - 1) / self.k + 1, (u - 1) % self.k + 1)
    }
}

/// Splits every vertex into `k` copies; each edge becomes the union of its vertices' copies.
pub fn clone_hypergraph(h: &Hypergraph, k: usize) -> Result<(Hypergraph, CloneMap)> {
    if k == 0 {
        return Err(invalid!("clone factor must be positive"));
    }
    let map = CloneMap { k };
    let edges = h
        .edges
        .iter()
        .map(|e| e.iter().flat_map(|&v| (1..=k).map(move |c| map.forward(v, c))).collect())
        .collect();
    Ok((Hypergraph { n: h.n * k, edges }, map))
}
