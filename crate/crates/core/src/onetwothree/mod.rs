//! Edge weightings whose weighted degrees properly color a graph, through the
//! hypergraph H(G) on the edge set: f_e collects the edges meeting e, and the
//! bracket of e compares the weight sums at its two ends.

pub mod enumerate;
mod graph;

pub use graph::SimpleGraph;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{density_of_masks, DensityReport, Hypergraph};
use crate::pipeline::density;
use crate::poly::{LinearForms, LinearSystem};
use crate::representatives::Matching;

/// The edges (0-based indices) meeting edge i, other than i, split by the endpoint
/// they share with it: (at u, at v) for e_i = uv with u < v.
fn sides(g: &SimpleGraph, i: usize) -> (Vec<usize>, Vec<usize>) {
    let (u, v) = g.edge(i);
    let at = |x: usize| g.incident(x).into_iter().filter(|&j| j != i).collect::<Vec<_>>();
    (at(u), at(v))
}

/// H(G): vertex j + 1 stands for edge j of G, and hyperedge i is f_{e_i}.
pub fn neighborhood_hypergraph(g: &SimpleGraph) -> Result<Hypergraph> {
    let mut edges = Vec::with_capacity(g.m());
    for i in 0..g.m() {
        let (a, b) = sides(g, i);
        let f: Vec<usize> = a.iter().chain(&b).map(|j| j + 1).collect();
        if f.len() < 2 {
            let (u, v) = g.edge(i);
            return Err(invalid!("edge {u}-{v} meets {} other edges; peel 2-pendants first", f.len()));
        }
        edges.push(f);
    }
    Hypergraph::new(g.m(), edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionOutcome {
    /// `map[i]` shares exactly one endpoint with edge i.
    Bijection(Vec<usize>),
    /// Edges X whose line-graph neighbourhood is smaller than X.
    Violator(Vec<usize>),
}

/// A bijection f of E(G) with |e ∩ f(e)| = 1, by perfect matching between two
/// copies of E(G) joined along line-graph adjacency.
pub fn edge_bijection(g: &SimpleGraph) -> BijectionOutcome {
    let adj: Vec<Vec<usize>> = (0..g.m())
        .map(|i| {
            let (a, b) = sides(g, i);
            let mut n: Vec<usize> = a.into_iter().chain(b).collect();
            n.sort_unstable();
            n
        })
        .collect();
    let matching = Matching::compute(g.m(), &adj);
    if matching.is_left_perfect() {
        BijectionOutcome::Bijection(matching.left_to_right.iter().map(|r| r.unwrap()).collect())
    } else {
        BijectionOutcome::Violator(matching.deficient_set(&adj))
    }
}

/// A removed 2-pendant: u has degree 1, its neighbour v has degree 2, and vw
/// attaches it to the rest. Vertex labels and edge indices refer to the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pendant {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub uv: usize,
    pub vw: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PendantRecord {
    pub pendants: Vec<Pendant>,
}

impl PendantRecord {
    /// Replays the removals on `g`, checking each one is a 2-pendant when removed.
    pub fn replays_on(&self, g: &SimpleGraph) -> bool {
        let mut alive_edge = vec![true; g.m()];
        let degree = |x: usize, alive: &[bool]| g.incident(x).iter().filter(|&&j| alive[j]).count();
        for p in &self.pendants {
            let ok = alive_edge[p.uv]
                && alive_edge[p.vw]
                && g.edge(p.uv) == (p.u.min(p.v), p.u.max(p.v))
                && g.edge(p.vw) == (p.v.min(p.w), p.v.max(p.w))
                && degree(p.u, &alive_edge) == 1
                && degree(p.v, &alive_edge) == 2;
            if !ok {
                return false;
            }
            alive_edge[p.uv] = false;
            alive_edge[p.vw] = false;
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelVerdict {
    /// Peeling stops at K_2: G is a tree with a perfect matching.
    EndsK2,
    EndsNotK2,
}

#[derive(Debug, Clone)]
pub struct PeelResult {
    pub reduced: SimpleGraph,
    /// Input label of each vertex of `reduced`.
    pub kept_vertices: Vec<usize>,
    /// Input index of each edge of `reduced`.
    pub kept_edges: Vec<usize>,
    pub record: PendantRecord,
    pub verdict: PeelVerdict,
}

/// Removes 2-pendants one after another, always the one with the smallest
/// degree-1 vertex, until none is left.
pub fn two_pendant_peel(g: &SimpleGraph) -> PeelResult {
    let mut alive_v = vec![true; g.n() + 1];
    let mut alive_e = vec![true; g.m()];
    let mut record = PendantRecord::default();
    let live = |x: usize, alive_e: &[bool]| g.incident(x).into_iter().filter(|&j| alive_e[j]).collect::<Vec<_>>();
    loop {
        let found = (1..=g.n()).filter(|&u| alive_v[u]).find_map(|u| {
            let at_u = live(u, &alive_e);
            if at_u.len() != 1 {
                return None;
            }
            let v = g.other_end(at_u[0], u);
            let at_v = live(v, &alive_e);
            if at_v.len() != 2 {
                return None;
            }
            let vw = if at_v[0] == at_u[0] { at_v[1] } else { at_v[0] };
            Some(Pendant { u, v, w: g.other_end(vw, v), uv: at_u[0], vw })
        });
        let Some(p) = found else { break };
        alive_v[p.u] = false;
        alive_v[p.v] = false;
        alive_e[p.uv] = false;
        alive_e[p.vw] = false;
        record.pendants.push(p);
    }
    let kept_vertices: Vec<usize> = (1..=g.n()).filter(|&v| alive_v[v]).collect();
    let kept_edges: Vec<usize> = (0..g.m()).filter(|&j| alive_e[j]).collect();
    let (reduced, _) = g.induced(&kept_vertices);
    let verdict = if reduced.m() == 1 && reduced.n() == 2 { PeelVerdict::EndsK2 } else { PeelVerdict::EndsNotK2 };
    PeelResult { reduced, kept_vertices, kept_edges, record, verdict }
}

/// p_G = ∏_{uv, u<v} (Σ_{e ∋ u, e ≠ uv} x_e − Σ_{e ∋ v, e ≠ uv} x_e) over Q, in the
/// variables x_1..x_m of the edges (x_{j+1} for edge j). A bracket may consist of
/// a single variable when G has 2-pendants.
pub fn coloring_polynomial_pg(g: &SimpleGraph) -> Result<LinearForms> {
    let q = FieldDescriptor::Rational;
    let mut forms = Vec::with_capacity(g.m());
    for i in 0..g.m() {
        let (a, b) = sides(g, i);
        if a.is_empty() && b.is_empty() {
            let (u, v) = g.edge(i);
            return Err(invalid!("edge {u}-{v} is an isolated edge"));
        }
        let form: Vec<(usize, Scalar)> =
            a.iter().map(|&j| (j + 1, q.one())).chain(b.iter().map(|&j| (j + 1, -q.one()))).collect();
        forms.push(form);
    }
    LinearForms::new(g.m(), q, forms)
}

/// p_G as a hypergraph polynomial of H(G); needs every bracket to have two variables.
pub fn pg_system(g: &SimpleGraph) -> Result<LinearSystem> {
    let h = neighborhood_hypergraph(g)?;
    let q = FieldDescriptor::Rational;
    let rows = (0..g.m())
        .map(|i| {
            let (a, _) = sides(g, i);
            h.edge(i).iter().map(|&x| if a.contains(&(x - 1)) { q.one() } else { -q.one() }).collect()
        })
        .collect();
    LinearSystem::new(h, q, rows)
}

/// p_G at the weighting `w` (one weight per edge).
pub fn evaluate_pg(g: &SimpleGraph, w: &[i64]) -> Result<Scalar> {
    let q = FieldDescriptor::Rational;
    let point: Vec<Scalar> = w.iter().map(|&x| q.from_i64(x)).collect();
    coloring_polynomial_pg(g)?.evaluate(&point)
}

/// Certificate that ed(H(G)) ≤ 1 for a connected G that is not a tree with a
/// perfect matching.
#[derive(Debug, Clone)]
pub struct EdCheck {
    pub peel: PeelResult,
    /// H of the peeled graph.
    pub hypergraph: Hypergraph,
    /// ed of H(peeled graph); None when peeling leaves no edges.
    pub density: Option<DensityReport>,
    /// ed of H(G) itself, with the one-element hyperedges of the 2-pendants kept
    /// (computed when G has at most 24 edges).
    pub full_density: Option<BigRational>,
    /// h = g∘f on the peeled graph: edge i lies in hyperedge `h[i]`.
    pub h: Vec<usize>,
    pub holds: bool,
}

pub fn check_ed_hg(g: &SimpleGraph) -> Result<EdCheck> {
    if !g.is_connected() {
        return Err(invalid!("G must be connected"));
    }
    let peel = two_pendant_peel(g);
    if peel.verdict == PeelVerdict::EndsK2 {
        return Err(invalid!("excluded case: G is a tree with a perfect matching"));
    }
    let reduced = &peel.reduced;
    let hypergraph = neighborhood_hypergraph(reduced)?;
    let f = match edge_bijection(reduced) {
        BijectionOutcome::Bijection(f) => f,
        BijectionOutcome::Violator(x) => {
            return Err(Error::Internal(format!("no edge bijection; Hall fails on edges {x:?}")));
        }
    };
    // the hyperedge g(e) = f_e has index e, so h(e) = f(e) and e ∈ f_{f(e)}
    let h = f.clone();
    let mut hit = vec![false; h.len()];
    for (e, &t) in h.iter().enumerate() {
        if !hypergraph.edge(t).contains(&(e + 1)) || std::mem::replace(&mut hit[t], true) {
            return Err(Error::Internal(format!("h is not a bijection with e ∈ h(e) at edge {e}")));
        }
    }
    let density = if reduced.m() == 0 { None } else { Some(density(&hypergraph)?) };
    let one = BigRational::from_integer(BigInt::from(1));
    let full_density = if g.m() == 0 || g.m() > 24 {
        None
    } else {
        let masks: Vec<u64> = (0..g.m())
            .map(|i| {
                let (a, b) = sides(g, i);
                a.iter().chain(&b).fold(0u64, |m, &j| m | 1 << j)
            })
            .collect();
        Some(density_of_masks(g.m(), &masks)?.density)
    };
    let holds = density.as_ref().is_none_or(|d| d.density <= one) && full_density.as_ref().is_none_or(|d| *d <= one);
    Ok(EdCheck { peel, hypergraph, density, full_density, h, holds })
}

/// A weighting from `weights` under which adjacent vertices get different
/// weighted degrees. Backtracks over the edges in order, checking each edge uv
/// once every edge at u and at v is weighted; the first edge's weight is split
/// across threads. The lexicographically first solution (in the order of
/// `weights`) is returned.
pub fn find_123_weighting(g: &SimpleGraph, weights: &[i64], budget: usize) -> Result<Option<Vec<i64>>> {
    if weights.is_empty() {
        return Err(invalid!("the weight set is empty"));
    }
    let m = g.m();
    if m == 0 {
        return Ok(Some(vec![]));
    }
    // edges to check once edge j is weighted
    let mut due = vec![Vec::new(); m];
    for i in 0..m {
        let (u, v) = g.edge(i);
        let last = g.incident(u).into_iter().chain(g.incident(v)).max().unwrap();
        due[last].push((u, v));
    }
    let incident: Vec<Vec<usize>> = (0..=g.n()).map(|x| if x == 0 { vec![] } else { g.incident(x) }).collect();
    let sum = |x: usize, w: &[i64]| incident[x].iter().map(|&j| w[j]).sum::<i64>();
    let search = |first: i64| -> Result<Option<Vec<i64>>> {
        let mut w = vec![0i64; m];
        let mut choice = vec![0usize; m];
        w[0] = first;
        let mut j = 0usize;
        let mut nodes = 0usize;
        let ok = |j: usize, w: &[i64]| due[j].iter().all(|&(u, v)| sum(u, w) != sum(v, w));
        if !ok(0, &w) {
            return Ok(None);
        }
        if m == 1 {
            return Ok(Some(w));
        }
        j += 1;
        choice[j] = 0;
        loop {
            if choice[j] == weights.len() {
                // exhausted this edge: backtrack
                j -= 1;
                if j == 0 {
                    return Ok(None);
                }
                choice[j] += 1;
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return Err(Error::Budget(format!("weighting search exceeded {budget} nodes")));
            }
            w[j] = weights[choice[j]];
            if !ok(j, &w) {
                choice[j] += 1;
                continue;
            }
            if j + 1 == m {
                return Ok(Some(w));
            }
            j += 1;
            choice[j] = 0;
        }
    };
    let results: Vec<Result<Option<Vec<i64>>>> = weights.par_iter().map(|&a| search(a)).collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Weighted degrees, indexed by vertex (index 0 unused).
pub fn vertex_sums(g: &SimpleGraph, w: &[i64]) -> Vec<i64> {
    let mut s = vec![0i64; g.n() + 1];
    for (&(u, v), &x) in g.edges().iter().zip(w) {
        s[u] += x;
        s[v] += x;
    }
    s
}

/// One "u v w" line per edge.
pub struct WeightingText<'a>(pub &'a SimpleGraph, pub &'a [i64]);

impl fmt::Display for WeightingText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(u, v), w) in self.0.edges().iter().zip(self.1) {
            writeln!(f, "{u} {v} {w}")?;
        }
        Ok(())
    }
}
