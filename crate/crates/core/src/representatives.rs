//! Systems of representatives with bounded multiplicity, and the reduction of a
//! hypergraph of density ≤ k to a multigraph of density ≤ k.

use crate::error::{invalid, Result};
use crate::hypergraph::{clone_hypergraph, Hypergraph, Multigraph};

/// Maximum bipartite matching by augmenting paths, scanning left vertices in
/// index order and each adjacency list in the given order.
#[derive(Debug, Clone)]
pub(crate) struct Matching {
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

impl Matching {
    pub fn compute(right: usize, adj: &[Vec<usize>]) -> Matching {
        let mut m = Matching {
            left_to_right: vec![None; adj.len()],
            right_to_left: vec![None; right],
        };
        for u in 0..adj.len() {
            let mut seen = vec![false; right];
            m.augment(u, adj, &mut seen);
        }
        m
    }

    fn augment(&mut self, u: usize, adj: &[Vec<usize>], seen: &mut [bool]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if self.right_to_left[v].is_none_or(|w| self.augment(w, adj, seen)) {
                self.left_to_right[u] = Some(v);
                self.right_to_left[v] = Some(u);
                return true;
            }
        }
        false
    }

    pub fn is_left_perfect(&self) -> bool {
        self.left_to_right.iter().all(Option::is_some)
    }

    /// Left vertices reachable by alternating paths from the unmatched left
    /// vertices. For a maximum matching this set S has |N(S)| = |S| − #unmatched.
    pub fn deficient_set(&self, adj: &[Vec<usize>]) -> Vec<usize> {
        let mut in_set = vec![false; adj.len()];
        let mut stack: Vec<usize> = (0..adj.len()).filter(|&u| self.left_to_right[u].is_none()).collect();
        for &u in &stack {
            in_set[u] = true;
        }
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if let Some(w) = self.right_to_left[v] {
                    if !in_set[w] {
                        in_set[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        (0..adj.len()).filter(|&u| in_set[u]).collect()
    }
}

/// r(e_i) = `r[i]`, with r(e_i) ∈ e_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSystem {
    pub r: Vec<usize>,
}

impl RepresentativeSystem {
    /// |r^{-1}(v)| for every vertex (index 0 unused).
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut mult = vec![0; n + 1];
        for &v in &self.r {
            mult[v] += 1;
        }
        mult
    }
}

/// A set S of edges whose k-fold cloned neighbourhood is smaller than |S|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    pub edges: Vec<usize>,
    /// |⋃_{i∈S} e_i × [k]|.
    pub neighborhood_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallOutcome {
    Representatives(RepresentativeSystem),
    Violator(HallViolator),
}

/// Finds r with r(e) ∈ e and |r^{-1}(v)| ≤ k by matching every edge to a distinct
/// vertex copy of the k-fold clone, or reports a Hall violator.
pub fn hall_representatives(h: &Hypergraph, k: usize) -> Result<HallOutcome> {
    let (clone, map) = clone_hypergraph(h, k)?;
    let adj: Vec<Vec<usize>> = clone.edges().iter().map(|e| e.iter().map(|&u| u - 1).collect()).collect();
    let matching = Matching::compute(clone.n(), &adj);
    if matching.is_left_perfect() {
        let r = matching
            .left_to_right
            .iter()
            .map(|u| map.backward(u.unwrap() + 1).0)
            .collect();
        return Ok(HallOutcome::Representatives(RepresentativeSystem { r }));
    }
    let edges = matching.deficient_set(&adj);
    let mut hood = vec![false; clone.n()];
    for &i in &edges {
        for &u in &adj[i] {
            hood[u] = true;
        }
    }
    Ok(HallOutcome::Violator(HallViolator {
        neighborhood_size: hood.iter().filter(|&&b| b).count(),
        edges,
    }))
}

/// Replaces each edge e_i by the pair {r(e_i), smallest other vertex of e_i}, where r is a
/// representative system of multiplicity ≤ k. Fails exactly when ed(H) > k.
pub fn multigraph_reduction(h: &Hypergraph, k: usize) -> Result<(Multigraph, RepresentativeSystem)> {
    let reps = match hall_representatives(h, k)? {
        HallOutcome::Representatives(r) => r,
        HallOutcome::Violator(v) => {
            return Err(invalid!(
                "edge density exceeds {k}: {} edges span only {} vertex copies",
                v.edges.len(),
                v.neighborhood_size
            ))
        }
    };
    let pairs = h
        .edges()
        .iter()
        .zip(&reps.r)
        .map(|(e, &r)| (r, *e.iter().find(|&&v| v != r).expect("edges have two vertices")))
        .collect();
    Ok((Multigraph::new(h.n(), pairs)?, reps))
}
