//! The weighting game in which Lister announces a value a and a set X of
//! unweighted edges, and Painter fixes the weight a on some X′ ⊆ X.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};
use crate::onetwothree::SimpleGraph;

/// When a complete weighting counts as a win.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TerminalRule {
    /// Adjacent vertices have different weighted degrees.
    #[default]
    Adjacent,
    /// All vertices have pairwise different weighted degrees.
    AllDistinct,
}

impl TerminalRule {
    pub fn holds(self, g: &SimpleGraph, w: &[i64]) -> bool {
        let mut sums = vec![0i64; g.n() + 1];
        for (&(u, v), &x) in g.edges().iter().zip(w) {
            sums[u] += x;
            sums[v] += x;
        }
        match self {
            TerminalRule::Adjacent => g.edges().iter().all(|&(u, v)| sums[u] != sums[v]),
            TerminalRule::AllDistinct => {
                let mut s = sums[1..].to_vec();
                s.sort_unstable();
                s.windows(2).all(|p| p[0] != p[1])
            }
        }
    }
}

type Key = (Vec<Option<i64>>, Vec<u32>, u32);

struct Game<'a> {
    g: &'a SimpleGraph,
    values: Vec<i64>,
    rule: TerminalRule,
    memo: Option<HashMap<Key, bool>>,
    budget: usize,
    visited: usize,
}

impl Game<'_> {
    fn wins(&mut self, w: Vec<Option<i64>>, f: Vec<u32>, remaining: u32) -> Result<bool> {
        if remaining == 0 {
            return Ok(false);
        }
        let open: Vec<usize> = (0..w.len()).filter(|&e| w[e].is_none()).collect();
        if open.iter().any(|&e| f[e] == 0) {
            return Ok(false);
        }
        if open.is_empty() {
            let full: Vec<i64> = w.iter().map(|x| x.unwrap()).collect();
            return Ok(self.rule.holds(self.g, &full));
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget(format!("weighting game exceeded {} states", self.budget)));
        }
        let key = (w, f, remaining);
        if let Some(&r) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            return Ok(r);
        }
        let (w, f, remaining) = key.clone();
        let mut result = true;
        'lister: for xmask in 1u32..1 << open.len() {
            for (ai, &a) in self.values.clone().iter().enumerate() {
                if remaining >> ai & 1 == 0 {
                    continue;
                }
                let mut answered = false;
                // X′ ranges over all subsets of X
                let mut sub = xmask;
                loop {
                    let mut w2 = w.clone();
                    let mut f2 = f.clone();
                    for (p, &e) in open.iter().enumerate() {
                        if sub >> p & 1 == 1 {
                            w2[e] = Some(a);
                            f2[e] = 0;
                        } else if xmask >> p & 1 == 1 {
                            f2[e] -= 1;
                        }
                    }
                    if self.wins(w2, f2, remaining & !(1 << ai))? {
                        answered = true;
                        break;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & xmask;
                }
                if !answered {
                    result = false;
                    break 'lister;
                }
            }
        }
        if let Some(m) = self.memo.as_mut() {
            m.insert(key, result);
        }
        Ok(result)
    }
}

fn play(
    g: &SimpleGraph,
    w0: &[Option<i64>],
    f: &[u32],
    a: &[i64],
    rule: TerminalRule,
    budget: usize,
    memo: bool,
) -> Result<bool> {
    if w0.len() != g.m() || f.len() != g.m() {
        return Err(invalid!("weights and tokens must be given for all {} edges", g.m()));
    }
    if g.m() > 8 {
        return Err(invalid!("the weighting game is limited to 8 edges, got {}", g.m()));
    }
    let mut values = a.to_vec();
    values.sort_unstable();
    values.dedup();
    if values.len() > 16 {
        return Err(invalid!("at most 16 values may be announced"));
    }
    let f: Vec<u32> = f.iter().zip(w0).map(|(&t, w)| if w.is_some() { 0 } else { t }).collect();
    let remaining = ((1u64 << values.len()) - 1) as u32;
    let mut game = Game { g, values, rule, memo: memo.then(HashMap::new), budget, visited: 0 };
    game.wins(w0.to_vec(), f, remaining)
}

/// Decides whether (G, w0) is (f, A)-unbalanceable with the finite value set A:
/// A must be nonempty, every unweighted edge needs a token, a complete weighting
/// must satisfy `rule`, and otherwise for every nonempty set X of unweighted
/// edges and every a ∈ A some X′ ⊆ X wins after weighting X′ with a, spending a
/// token on X ∖ X′ and removing a from A. Memoized on the full state.
pub fn unbalanceable_game(
    g: &SimpleGraph,
    w0: &[Option<i64>],
    f: &[u32],
    a: &[i64],
    rule: TerminalRule,
    budget: usize,
) -> Result<bool> {
    play(g, w0, f, a, rule, budget, true)
}

/// The same recursion without memoization.
pub fn unbalanceable_naive(
    g: &SimpleGraph,
    w0: &[Option<i64>],
    f: &[u32],
    a: &[i64],
    rule: TerminalRule,
    budget: usize,
) -> Result<bool> {
    play(g, w0, f, a, rule, budget, false)
}
