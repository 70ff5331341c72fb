//! The online list-coloring game: an exact solver for f-paintability and a
//! Painter driven by a nonzero monomial of a coloring polynomial.

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::is_coloring_polynomial;
use crate::error::{internal, invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{ExponentVector, LinearForms, LinearSystem};

/// Submasks of `mask`, largest first (ties by increasing value).
fn submasks_by_size(mask: u32) -> Vec<u32> {
    let mut subs = Vec::with_capacity(1 << mask.count_ones());
    let mut s = mask;
    loop {
        subs.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    subs.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
    subs
}

struct PaintSolver<'a> {
    edges: &'a [u32],
    memo: HashMap<(u32, Vec<u32>), bool>,
    budget: usize,
}

impl PaintSolver<'_> {
    fn wins(&mut self, u: u32, f: Vec<u32>) -> Result<bool> {
        if u == 0 {
            return Ok(true);
        }
        if (0..f.len()).any(|v| u >> v & 1 == 1 && f[v] == 0) {
            return Ok(false);
        }
        let key = (u, f);
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        if self.memo.len() >= self.budget {
            return Err(Error::Budget(format!("paintability search exceeded {} states", self.budget)));
        }
        let (u, f) = key;
        let live: Vec<u32> = self.edges.iter().copied().filter(|&e| e & !u == 0).collect();
        let mut result = true;
        let mut x = u;
        while x != 0 {
            let mut answered = false;
            for xp in submasks_by_size(x) {
                if live.iter().any(|&e| e & !xp == 0) {
                    continue;
                }
                let mut g = f.clone();
                for (v, t) in g.iter_mut().enumerate() {
                    if xp >> v & 1 == 1 || u >> v & 1 == 0 {
                        *t = 0;
                    } else if x >> v & 1 == 1 {
                        *t -= 1;
                    }
                }
                if self.wins(u & !xp, g)? {
                    answered = true;
                    break;
                }
            }
            if !answered {
                result = false;
                break;
            }
            x = (x - 1) & u;
        }
        self.memo.insert((u, f), result);
        Ok(result)
    }
}

/// Decides f-paintability exactly: Painter wins from (U, f) iff U is empty, or no
/// v ∈ U has f(v) = 0 and every nonempty X ⊆ U admits an independent X′ ⊆ X such
/// that Painter wins from (U ∖ X′, f − 1 on X ∖ X′). Edges meeting a colored
/// vertex can no longer become monochromatic and are dropped.
pub fn f_paintable(h: &Hypergraph, f: &[u32], budget: usize) -> Result<bool> {
    if f.len() != h.n() {
        return Err(invalid!("{} token counts for {} vertices", f.len(), h.n()));
    }
    if h.n() > 10 {
        return Err(invalid!("paintability is limited to 10 vertices, got {}", h.n()));
    }
    let edges: Vec<u32> = h.edge_masks().iter().map(|&m| m as u32).collect();
    let mut solver = PaintSolver { edges: &edges, memo: HashMap::new(), budget };
    solver.wins((1u32 << h.n()) - 1, f.to_vec())
}

/// One round of play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub index: usize,
    pub lister: Vec<usize>,
    pub painter: Vec<usize>,
    /// Tokens of the vertices still uncolored after the round.
    pub tokens: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub rounds: Vec<Round>,
}

fn set_text(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rounds {
            let tokens: Vec<String> = r.tokens.iter().map(|(v, t)| format!("{v}:{t}")).collect();
            writeln!(
                f,
                "round {} lister {} painter {} tokens {}",
                r.index,
                set_text(&r.lister),
                set_text(&r.painter),
                if tokens.is_empty() { "-".to_string() } else { tokens.join(" ") }
            )?;
        }
        Ok(())
    }
}

/// Painter for the game with f = α + 1, where x^α has a nonzero coefficient in a
/// coloring polynomial. The invariant is that the product of the brackets lying
/// inside the uncolored set has a nonzero monomial within the current budget,
/// and every uncolored vertex holds more tokens than its budget.
#[derive(Debug, Clone)]
pub struct PainterStrategy {
    sys: LinearSystem,
    uncolored: Vec<bool>,
    budget: Vec<u32>,
    tokens: Vec<u32>,
    live: Vec<usize>,
    guard: usize,
    transcript: Transcript,
}

impl PainterStrategy {
    pub fn new(sys: &LinearSystem, alpha: &ExponentVector, guard: usize) -> Result<Self> {
        if !is_coloring_polynomial(sys) {
            return Err(invalid!("not a coloring polynomial"));
        }
        if sys.coefficient_of(alpha).is_zero() {
            return Err(invalid!("the coefficient of {alpha} vanishes"));
        }
        let n = sys.hypergraph().n();
        let budget = alpha.dense(n);
        Ok(PainterStrategy {
            sys: sys.clone(),
            uncolored: vec![true; n],
            tokens: budget.iter().map(|a| a + 1).collect(),
            budget,
            live: (0..sys.m()).collect(),
            guard,
            transcript: Transcript::default(),
        })
    }

    pub fn uncolored(&self) -> Vec<usize> {
        (1..=self.uncolored.len()).filter(|&v| self.uncolored[v - 1]).collect()
    }

    pub fn is_finished(&self) -> bool {
        !self.uncolored.contains(&true)
    }

    pub fn tokens(&self, v: usize) -> u32 {
        self.tokens[v - 1]
    }

    /// Current exponent budget, per vertex.
    pub fn budget(&self) -> &[u32] {
        &self.budget
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.sys.hypergraph()
    }

    /// Answers Lister's set X with an independent X′ ⊆ X, trying larger sets first.
    pub fn respond(&mut self, lister: &[usize]) -> Result<Vec<usize>> {
        let mut x = lister.to_vec();
        x.sort_unstable();
        x.dedup();
        if x.is_empty() {
            return Err(invalid!("Lister must name a nonempty set"));
        }
        if x.len() != lister.len() || x.iter().any(|&v| v == 0 || v > self.uncolored.len() || !self.uncolored[v - 1]) {
            return Err(invalid!("Lister set {} is not a set of uncolored vertices", set_text(lister)));
        }
        if x.len() > 20 {
            return Err(invalid!("Lister sets are limited to 20 vertices"));
        }
        let h = self.sys.hypergraph();
        let n = h.n();
        let in_set = |mask: u32, v: usize| x.iter().position(|&w| w == v).is_some_and(|p| mask >> p & 1 == 1);
        for mask in submasks_by_size((1u32 << x.len()) - 1) {
            if self.live.iter().any(|&i| h.edge(i).iter().all(|&v| in_set(mask, v))) {
                continue;
            }
            let mut caps = vec![0u32; n];
            let mut feasible = true;
            for v in self.uncolored() {
                let listed = x.contains(&v);
                caps[v - 1] = match (listed, in_set(mask, v)) {
                    (true, true) => 0,
                    (true, false) if self.budget[v - 1] == 0 => {
                        feasible = false;
                        break;
                    }
                    (true, false) => self.budget[v - 1] - 1,
                    (false, _) => self.budget[v - 1],
                };
            }
            if !feasible {
                continue;
            }
            let residual: Vec<usize> =
                self.live.iter().copied().filter(|&i| !h.edge(i).iter().any(|&v| in_set(mask, v))).collect();
            let forms = LinearForms::new(n, self.sys.field(), residual.iter().map(|&i| self.sys.forms().forms()[i].clone()).collect())?;
            let Some((next, _)) = forms.smallest_within(&caps, self.guard)? else {
                continue;
            };
            let chosen: Vec<usize> = x.iter().copied().filter(|&v| in_set(mask, v)).collect();
            for &v in &x {
                if chosen.contains(&v) {
                    self.uncolored[v - 1] = false;
                } else {
                    self.tokens[v - 1] -= 1;
                }
            }
            self.budget = next.dense(n);
            self.live = residual;
            for v in self.uncolored() {
                if self.tokens[v - 1] < self.budget[v - 1] + 1 {
                    return Err(internal!("vertex {v} holds fewer tokens than its budget allows"));
                }
            }
            let tokens = self.uncolored().into_iter().map(|v| (v, self.tokens[v - 1])).collect();
            let index = self.transcript.rounds.len() + 1;
            self.transcript.rounds.push(Round { index, lister: x.clone(), painter: chosen.clone(), tokens });
            return Ok(chosen);
        }
        Err(internal!("no independent subset of {} keeps a monomial within budget", set_text(&x)))
    }
}

/// Outcome of playing a strategy against every Lister schedule.
#[derive(Debug, Clone, Default)]
pub struct AdversaryReport {
    /// Distinct game states visited.
    pub states: usize,
    /// Lister moves examined.
    pub moves: usize,
    /// Plays Painter lost (at most a few are kept).
    pub losses: Vec<Transcript>,
}

/// Explores every sequence of Lister moves against `strategy`, merging repeated
/// states. Each Painter answer is checked against the game rules directly: it
/// must be a subset of Lister's set containing no edge among uncolored vertices,
/// and Painter loses as soon as an uncolored vertex runs out of tokens.
pub fn exhaustive_lister(strategy: &PainterStrategy, state_budget: usize) -> Result<AdversaryReport> {
    let mut report = AdversaryReport::default();
    let mut seen: HashSet<(Vec<bool>, Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut stack = vec![strategy.clone()];
    let h = strategy.hypergraph().clone();
    while let Some(s) = stack.pop() {
        if !seen.insert((s.uncolored.clone(), s.budget.clone(), s.tokens.clone())) {
            continue;
        }
        report.states += 1;
        if report.states > state_budget {
            return Err(Error::Budget(format!("Lister search exceeded {state_budget} states")));
        }
        let u = s.uncolored();
        let full = (1u32 << u.len()) - 1;
        for mask in 1..=full {
            let x: Vec<usize> = u.iter().enumerate().filter(|(p, _)| mask >> p & 1 == 1).map(|(_, &v)| v).collect();
            report.moves += 1;
            let mut next = s.clone();
            let xp = next.respond(&x)?;
            let legal = xp.iter().all(|v| x.contains(v))
                && !h.edges().iter().any(|e| e.iter().all(|v| xp.contains(v)) && e.iter().all(|v| u.contains(v)));
            let starved = next.uncolored().iter().any(|&v| next.tokens(v) == 0);
            if !legal || starved {
                if report.losses.len() < 8 {
                    report.losses.push(next.transcript.clone());
                }
                continue;
            }
            if !next.is_finished() {
                stack.push(next);
            }
        }
    }
    Ok(report)
}
