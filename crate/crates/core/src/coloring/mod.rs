//! Colorings of hypergraphs: chromatic number, colorings from nonvanishing points
//! over roots of unity, list coloring, and the paintability games.

mod paint;
mod unbalanceable;

pub use paint::{exhaustive_lister, f_paintable, AdversaryReport, PainterStrategy, Round, Transcript};
pub use unbalanceable::{unbalanceable_game, unbalanceable_naive, TerminalRule};

use std::fmt;

use crate::arith::{root_of_unity, FieldDescriptor, Scalar};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::LinearSystem;

/// Default cap on backtracking nodes.
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;

/// Vertex colors; `colors[v - 1]` is the color of vertex v.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn color(&self, v: usize) -> usize {
        self.colors[v - 1]
    }

    /// Indices of edges whose vertices all share one color.
    pub fn monochromatic_edges(&self, h: &Hypergraph) -> Vec<usize> {
        (0..h.m())
            .filter(|&i| {
                let e = h.edge(i);
                e.iter().all(|&v| self.color(v) == self.color(e[0]))
            })
            .collect()
    }

    pub fn is_proper(&self, h: &Hypergraph) -> bool {
        self.colors.len() == h.n() && self.monochromatic_edges(h).is_empty()
    }

    pub fn num_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.colors.iter().enumerate().map(|(i, c)| format!("{}:{c}", i + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Assigns vertices 1..=n in order; `choices(v, partial)` lists the candidate
/// colors and `ok(v, partial)` rejects a partial assignment after v is placed.
fn backtrack(
    n: usize,
    budget: usize,
    choices: &dyn Fn(usize, &[usize]) -> Vec<usize>,
    ok: &mut dyn FnMut(usize, &[usize]) -> bool,
) -> Result<Option<Vec<usize>>> {
    let mut partial: Vec<usize> = Vec::with_capacity(n);
    let mut stack: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut nodes = 0usize;
    if n == 0 {
        return Ok(Some(vec![]));
    }
    let ordered = |mut c: Vec<usize>| {
        c.reverse();
        c
    };
    stack.push(ordered(choices(1, &partial)));
    while let Some(top) = stack.last_mut() {
        let Some(c) = top.pop() else {
            stack.pop();
            partial.pop();
            continue;
        };
        nodes += 1;
        if nodes > budget {
            return Err(Error::Budget(format!("coloring search exceeded {budget} nodes")));
        }
        let v = partial.len() + 1;
        partial.push(c);
        if !ok(v, &partial) {
            partial.pop();
            continue;
        }
        if v == n {
            return Ok(Some(partial));
        }
        stack.push(ordered(choices(v + 1, &partial)));
    }
    Ok(None)
}

/// Edges grouped by their largest vertex.
fn edges_by_max(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut by = vec![Vec::new(); h.n() + 1];
    for (i, e) in h.edges().iter().enumerate() {
        by[*e.last().unwrap()].push(i);
    }
    by
}

fn closes_monochromatic(h: &Hypergraph, by_max: &[Vec<usize>], v: usize, partial: &[usize]) -> bool {
    by_max[v].iter().any(|&i| {
        let e = h.edge(i);
        e.iter().all(|&u| partial[u - 1] == partial[v - 1])
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticOutcome {
    /// χ(H) with a proper coloring in colors 0..χ.
    Exact(usize, Coloring),
    /// No proper coloring with at most the given number of colors.
    Exceeds(usize),
}

/// Smallest k ≤ `max_colors` admitting a proper coloring, by backtracking with
/// color-symmetry breaking (a vertex may open at most one new color).
pub fn chromatic_number(h: &Hypergraph, max_colors: usize, budget: usize) -> Result<ChromaticOutcome> {
    if h.n() > 20 {
        return Err(invalid!("chromatic number is limited to 20 vertices, got {}", h.n()));
    }
    let by_max = edges_by_max(h);
    let start = if h.n() == 0 { 0 } else { 1 };
    for k in start..=max_colors {
        let choices = |_v: usize, partial: &[usize]| -> Vec<usize> {
            let open = partial.iter().max().map_or(0, |&c| c + 1);
            (0..k.min(open + 1)).collect()
        };
        let mut ok = |v: usize, partial: &[usize]| !closes_monochromatic(h, &by_max, v, partial);
        if let Some(colors) = backtrack(h.n(), budget, &choices, &mut ok)? {
            return Ok(ChromaticOutcome::Exact(k, Coloring { colors }));
        }
    }
    Ok(ChromaticOutcome::Exceeds(max_colors))
}

/// A proper coloring choosing each vertex's color from `lists[v - 1]`, if one exists.
pub fn list_colorable(h: &Hypergraph, lists: &[Vec<usize>], budget: usize) -> Result<Option<Coloring>> {
    if lists.len() != h.n() {
        return Err(invalid!("{} lists for {} vertices", lists.len(), h.n()));
    }
    let by_max = edges_by_max(h);
    let choices = |v: usize, _: &[usize]| {
        let mut l = lists[v - 1].clone();
        l.sort_unstable();
        l.dedup();
        l
    };
    let mut ok = |v: usize, partial: &[usize]| !closes_monochromatic(h, &by_max, v, partial);
    Ok(backtrack(h.n(), budget, &choices, &mut ok)?.map(|colors| Coloring { colors }))
}

/// The system with bracket x_{i_1} + ⋯ + x_{i_{k−1}} − (k−1)x_{i_k} per edge, where
/// i_k is the edge's largest vertex. Coefficients are rational, so the system
/// embeds into every cyclotomic field.
pub fn unbalanced_linear_system(h: &Hypergraph) -> LinearSystem {
    let q = FieldDescriptor::Rational;
    let rows = h
        .edges()
        .iter()
        .map(|e| {
            let k = e.len() as i64;
            let mut row = vec![q.one(); e.len()];
            row[e.len() - 1] = q.from_i64(-(k - 1));
            row
        })
        .collect();
    LinearSystem::new(h.clone(), q, rows).expect("edges of size at least two")
}

/// Every bracket's coefficients sum to zero, so the polynomial vanishes whenever
/// some edge is monochromatic.
pub fn is_coloring_polynomial(sys: &LinearSystem) -> bool {
    let zero = sys.field().zero();
    (0..sys.m()).all(|i| sys.coeffs(i).fold(zero.clone(), |s, c| &s + c).is_zero())
}

/// A point of U_s^n where the polynomial does not vanish, reported as exponents
/// j of ζ_s^j. Brackets are evaluated as soon as their largest vertex is set.
pub fn cn_coloring(sys: &LinearSystem, s: u32, budget: usize) -> Result<Option<Coloring>> {
    if s < 2 {
        return Err(invalid!("need s ≥ 2 roots of unity, got {s}"));
    }
    let field = FieldDescriptor::cyclotomic(s)?;
    let sys = sys.embed(field)?;
    let h = sys.hypergraph();
    let roots: Vec<Scalar> = (0..s as i64).map(|j| root_of_unity(s, j)).collect::<Result<_>>()?;
    let by_max = edges_by_max(h);
    let choices = |_: usize, _: &[usize]| (0..s as usize).collect::<Vec<_>>();
    let mut ok = |v: usize, partial: &[usize]| {
        by_max[v].iter().all(|&i| {
            let value = h
                .edge(i)
                .iter()
                .zip(sys.coeffs(i))
                .fold(field.zero(), |acc, (&u, a)| &acc + &(a * &roots[partial[u - 1]]));
            !value.is_zero()
        })
    };
    Ok(backtrack(h.n(), budget, &choices, &mut ok)?.map(|colors| Coloring { colors }))
}

#[cfg(test)]
mod tests;
