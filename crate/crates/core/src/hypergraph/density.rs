//! ed(H) = max over nonempty X of |E(X)| / |X|: brute force and parametric min cut.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use super::flow::FlowNetwork;
use super::Hypergraph;
use crate::error::{invalid, Result};

/// Largest vertex count accepted by [`edge_density_exact`].
pub const MAX_EXACT_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub density: BigRational,
    /// A maximizer, sorted; the lexicographically smallest among those of smallest size.
    pub witness: Vec<usize>,
}

impl DensityReport {
    /// ⌈ed(H)⌉.
    pub fn ceil(&self) -> usize {
        let c = self.density.ceil().to_integer();
        usize::try_from(c).expect("density is nonnegative and small")
    }
}

/// (|E(X)|, |X|, X) with the order "denser first, then smaller, then lexicographically smaller".
#[derive(Clone, Copy)]
struct Candidate {
    edges: u64,
    size: u64,
    mask: u64,
}

fn better(a: &Candidate, b: &Candidate) -> Ordering {
    // a.edges / a.size vs b.edges / b.size
    let lhs = a.edges * b.size;
    let rhs = b.edges * a.size;
    rhs.cmp(&lhs)
        .then(a.size.cmp(&b.size))
        .then_with(|| lex_mask(a.mask, b.mask))
}

/// Lexicographic comparison of the sorted vertex lists of two sets of equal size: the
/// set containing the smallest vertex of the symmetric difference comes first.
fn lex_mask(a: u64, b: u64) -> Ordering {
    let d = a ^ b;
    if d == 0 {
        Ordering::Equal
    } else if a & (d & d.wrapping_neg()) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn mask_to_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Density and witness of a family given as vertex masks on `n` vertices, by enumeration.
pub(crate) fn density_of_masks(n: usize, edges: &[u64]) -> Result<DensityReport> {
    if n == 0 {
        return Err(invalid!("edge density of an empty vertex set is undefined"));
    }
    if n > MAX_EXACT_VERTICES {
        return Err(invalid!("exact density enumerates subsets; n = {n} exceeds {MAX_EXACT_VERTICES}"));
    }
    let eval = |mask: u64| Candidate {
        edges: edges.iter().filter(|&&e| e & !mask == 0).count() as u64,
        size: u64::from(mask.count_ones()),
        mask,
    };
    let pick = |a: Candidate, b: Candidate| if better(&a, &b) == Ordering::Greater { b } else { a };
    let full = 1u64 << n;
    let best = if n >= 14 {
        (1..full).into_par_iter().map(eval).reduce(|| eval(full - 1), pick)
    } else {
        (1..full).map(eval).fold(eval(full - 1), pick)
    };
    Ok(DensityReport {
        density: BigRational::new(BigInt::from(best.edges), BigInt::from(best.size)),
        witness: mask_to_vertices(best.mask),
    })
}

/// Brute force over all 2^n − 1 nonempty subsets; n ≤ [`MAX_EXACT_VERTICES`].
pub fn edge_density_exact(h: &Hypergraph) -> Result<DensityReport> {
    if h.n() > MAX_EXACT_VERTICES {
        return Err(invalid!("exact density enumerates subsets; n = {} exceeds {MAX_EXACT_VERTICES}", h.n()));
    }
    density_of_masks(h.n(), &h.edge_masks())
}

/// Solves max over X of (q·|E(X)| − p·|X|) for g = p/q by one minimum cut.
/// With `force = Some(v)` the maximum is taken over sets containing v.
/// Returns the value and the inclusion-minimal maximizer.
fn parametric_cut(h: &Hypergraph, p: i64, q: i64, force: Option<usize>) -> (i64, Vec<usize>) {
    let m = h.m();
    let n = h.n();
    let source = 0;
    let sink = 1;
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v - 1;
    let inf = q * m as i64 + p * n as i64 + 1;
    let mut net = FlowNetwork::new(2 + m + n);
    for (i, e) in h.edges().iter().enumerate() {
        net.add_edge(source, edge_node(i), q);
        for &v in e {
            net.add_edge(edge_node(i), vertex_node(v), inf);
        }
    }
    for v in 1..=n {
        if p > 0 {
            net.add_edge(vertex_node(v), sink, p);
        }
    }
    if let Some(v) = force {
        net.add_edge(source, vertex_node(v), inf);
    }
    let cut = net.max_flow(source, sink);
    let reach = net.reachable(source);
    let set: Vec<usize> = (1..=n).filter(|&v| reach[vertex_node(v)]).collect();
    (q * m as i64 - cut, set)
}

fn reduced(a: i64, b: i64) -> (i64, i64) {
    let g = a.gcd(&b).max(1);
    (a / g, b / g)
}

/// Same contract as [`edge_density_exact`], by Dinkelbach iteration on min cuts; no size cap.
pub fn edge_density_flow(h: &Hypergraph) -> Result<DensityReport> {
    let n = h.n();
    if n == 0 {
        return Err(invalid!("edge density of an empty vertex set is undefined"));
    }
    let count = |x: &[usize]| h.induced_edges(x).map(|e| e.len() as i64);
    let (mut p, mut q) = reduced(h.m() as i64, n as i64);
    loop {
        let (value, x) = parametric_cut(h, p, q, None);
        if value <= 0 || x.is_empty() {
            break;
        }
        let (np, nq) = reduced(count(&x)?, x.len() as i64);
        debug_assert!(np * q > p * nq, "Dinkelbach step must increase the density");
        p = np;
        q = nq;
    }
    // Every smallest maximizer is the minimal maximizer containing one of its vertices.
    let mut best: Option<Vec<usize>> = None;
    for v in 1..=n {
        let (value, x) = parametric_cut(h, p, q, Some(v));
        if value != 0 {
            continue;
        }
        best = Some(match best {
            None => x,
            Some(b) => {
                if (x.len(), &x) < (b.len(), &b) {
                    x
                } else {
                    b
                }
            }
        });
    }
    let witness = best.ok_or_else(|| crate::error::internal!("no maximizer found at density {p}/{q}"))?;
    Ok(DensityReport { density: BigRational::new(p.into(), q.into()), witness })
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn exact_examples() {
        let f = edge_density_exact(&named::fano()).unwrap();
        assert_eq!(f.density, q(1, 1));
        assert_eq!(f.witness, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(edge_density_exact(&named::tetrahedron()).unwrap().density, q(1, 1));
        let e = Hypergraph::new(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(edge_density_exact(&e).unwrap().density, q(1, 2));
        assert!(edge_density_exact(&Hypergraph::edgeless(25)).is_err());
        assert!(edge_density_exact(&Hypergraph::edgeless(0)).is_err());
    }

    #[test]
    fn edgeless_witness_is_a_single_vertex() {
        let r = edge_density_exact(&Hypergraph::edgeless(3)).unwrap();
        assert_eq!(r.density, q(0, 1));
        assert_eq!(r.witness, vec![1]);
        assert_eq!(edge_density_flow(&Hypergraph::edgeless(3)).unwrap(), r);
    }

    #[test]
    fn tie_break_prefers_small_then_lexicographic() {
        // two disjoint triangles plus a pendant edge: both triangles have density 1
        let h = Hypergraph::new(
            7,
            vec![vec![4, 5], vec![5, 6], vec![4, 6], vec![1, 2], vec![2, 3], vec![1, 3], vec![6, 7]],
        )
        .unwrap();
        let r = edge_density_exact(&h).unwrap();
        assert_eq!(r.witness, vec![1, 2, 3]);
        assert_eq!(edge_density_flow(&h).unwrap(), r);
    }

    #[test]
    fn flow_examples() {
        assert_eq!(edge_density_flow(&named::fano()).unwrap().density, q(1, 1));
        assert_eq!(edge_density_flow(&named::cycle(5)).unwrap().density, q(1, 1));
        // the flow route has no size cap
        let big = named::cycle(40);
        assert_eq!(edge_density_flow(&big).unwrap().density, q(1, 1));
    }

    fn hypergraph_up_to(nmax: usize) -> impl Strategy<Value = Hypergraph> {
        (1usize..=nmax).prop_flat_map(|n| {
            let edge = prop::collection::btree_set(1..=n.max(2), 2..=n.clamp(2, 4));
            prop::collection::vec(edge, 0..=14).prop_map(move |es| {
                let n = n.max(2);
                Hypergraph::new(n, es.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn flow_matches_enumeration(h in hypergraph_up_to(10)) {
            prop_assert_eq!(edge_density_flow(&h).unwrap(), edge_density_exact(&h).unwrap());
        }

        #[test]
        fn every_subset_respects_the_ceiling(h in hypergraph_up_to(7)) {
            let k = edge_density_exact(&h).unwrap().ceil();
            for x in 1u64..(1 << h.n()) {
                let vs = mask_to_vertices(x);
                prop_assert!(h.induced_edges(&vs).unwrap().len() <= k * vs.len());
            }
        }
    }
}
