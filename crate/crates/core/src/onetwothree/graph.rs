use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{content_lines, parse_pair};

/// A simple graph on vertices `1..=n`; edges are stored as (u, v) with u < v in
/// input order, and edge indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (i, (a, b)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(invalid!("edge {i} is a loop at {a}"));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(invalid!("edge {i} has a vertex outside 1..={n}"));
            }
            let e = (a.min(b), a.max(b));
            if out.contains(&e) {
                return Err(invalid!("edge {}-{} appears twice", e.0, e.1));
            }
            out.push(e);
        }
        Ok(SimpleGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// Indices of the edges at x, increasing.
    pub fn incident(&self, x: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&j| self.edges[j].0 == x || self.edges[j].1 == x).collect()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == x || b == x).count()
    }

    pub fn other_end(&self, j: usize, x: usize) -> usize {
        let (a, b) = self.edges[j];
        if a == x {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self.incident(x).into_iter().map(|j| self.other_end(j, x)).collect();
        n.sort_unstable();
        n
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m() + 1 == self.n
    }

    /// The subgraph induced by `keep`, relabelled to 1..=|keep| in increasing order,
    /// with the input index of each kept edge.
    pub fn induced(&self, keep: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut label = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            label[v] = i + 1;
        }
        let mut edges = Vec::new();
        let mut old = Vec::new();
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            if label[a] != 0 && label[b] != 0 {
                edges.push((label[a], label[b]));
                old.push(j);
            }
        }
        (SimpleGraph { n: keep.len(), edges }, old)
    }

    /// L(G): vertex j + 1 for edge j, adjacent when the edges share an endpoint.
    pub fn line_graph(&self) -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        SimpleGraph { n: self.m(), edges }
    }

    /// An induced K_{1,3}: a centre and three pairwise nonadjacent neighbours.
    pub fn induced_claw(&self) -> Option<(usize, [usize; 3])> {
        for c in 1..=self.n {
            let nb = self.neighbors(c);
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    for k in j + 1..nb.len() {
                        let (x, y, z) = (nb[i], nb[j], nb[k]);
                        if !self.is_adjacent(x, y) && !self.is_adjacent(x, z) && !self.is_adjacent(y, z) {
                            return Some((c, [x, y, z]));
                        }
                    }
                }
            }
        }
        None
    }

    /// Parses "n m" followed by m lines "u v".
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("expected {m} edges")))?;
            edges.push(parse_pair(line)?);
        }
        if lines.next().is_some() {
            return Err(Error::Parse(format!("more than {m} edges")));
        }
        SimpleGraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph { n, edges: (1..n).map(|i| (i, i + 1)).collect() }
    }

    /// Edges {i, i+1} and then {1, n}; n ≥ 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        SimpleGraph { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        SimpleGraph { n, edges }
    }

    /// K_{1,k} with centre 1.
    pub fn star(k: usize) -> Self {
        SimpleGraph { n: k + 1, edges: (2..=k + 1).map(|b| (1, b)).collect() }
    }

    /// Outer 5-cycle 1..5, inner pentagram 6..10, spokes i — i+5.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i + 1, (i + 1) % 5 + 1));
            edges.push((i + 6, (i + 2) % 5 + 6));
            edges.push((i + 1, i + 6));
        }
        SimpleGraph::new(10, edges).unwrap()
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m())?;
        for (a, b) in &self.edges {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}
