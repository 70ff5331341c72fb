//! Small graphs by exhaustive enumeration.

use std::collections::BTreeSet;

use super::SimpleGraph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
    SimpleGraph::new(n, edges).unwrap()
}

/// Every labelled graph on 1..=n (n ≤ 8).
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    assert!(n <= 8);
    let p = pairs(n);
    (0u64..1 << p.len()).map(move |mask| from_mask(n, &p, mask))
}

/// Every connected labelled graph on 1..=n.
pub fn connected_labeled_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    labeled_graphs(n).filter(SimpleGraph::is_connected)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative per isomorphism class of connected graphs on n ≤ 6
/// vertices: the relabelling with the smallest edge mask.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 6);
    let p = pairs(n);
    let mut table = vec![vec![0usize; n + 1]; n + 1];
    for (i, &(a, b)) in p.iter().enumerate() {
        table[a][b] = i;
        table[b][a] = i;
    }
    let index = |a: usize, b: usize| table[a][b];
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        perms.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for mask in 0u64..1 << p.len() {
        let canon = perms
            .iter()
            .map(|s| {
                p.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &(a, b))| acc | 1 << index(s[a - 1], s[b - 1]))
            })
            .min()
            .unwrap();
        if canon == mask && from_mask(n, &p, mask).is_connected() {
            seen.insert(mask);
        }
    }
    seen.into_iter().map(|mask| from_mask(n, &p, mask)).collect()
}

/// Perfect matching by trying every partner of the smallest unmatched vertex.
pub fn has_perfect_matching(g: &SimpleGraph) -> bool {
    fn go(g: &SimpleGraph, matched: &mut [bool]) -> bool {
        let Some(x) = (1..matched.len()).find(|&x| !matched[x]) else {
            return true;
        };
        matched[x] = true;
        for y in g.neighbors(x) {
            if !matched[y] {
                matched[y] = true;
                if go(g, matched) {
                    return true;
                }
                matched[y] = false;
            }
        }
        matched[x] = false;
        false
    }
    g.n() % 2 == 0 && go(g, &mut vec![false; g.n() + 1])
}
