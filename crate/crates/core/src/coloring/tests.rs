use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::hypergraph::{degeneracy, named, Hypergraph};
use crate::onetwothree::SimpleGraph;
use crate::poly::{ExponentVector, DEFAULT_TERM_GUARD};

const B: usize = DEFAULT_NODE_BUDGET;

fn single(e: &[usize], n: usize) -> Hypergraph {
    Hypergraph::new(n, vec![e.to_vec()]).unwrap()
}

fn graph_polynomial(g: &SimpleGraph) -> LinearSystem {
    let h = Hypergraph::new(g.n(), g.edges().iter().map(|&(a, b)| vec![a, b]).collect()).unwrap();
    let rows = vec![[1i64, -1].as_slice(); g.m()];
    LinearSystem::from_ints(h, FieldDescriptor::Rational, &rows).unwrap()
}

/// Every assignment of colors 0..k, by counting in base k.
fn all_colorings(n: usize, k: usize) -> impl Iterator<Item = Coloring> {
    (0..k.pow(n as u32)).map(move |mut code| {
        let colors = (0..n)
            .map(|_| {
                let c = code % k;
                code /= k;
                c
            })
            .collect();
        Coloring { colors }
    })
}

#[test]
fn fano_needs_three_colors() {
    let fano = named::fano();
    assert!(all_colorings(7, 2).all(|c| !c.is_proper(&fano)));
    match chromatic_number(&fano, 5, B).unwrap() {
        ChromaticOutcome::Exact(k, c) => {
            assert_eq!(k, 3);
            assert!(c.is_proper(&fano));
            assert_eq!(c.num_colors(), 3);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(chromatic_number(&fano, 2, B).unwrap(), ChromaticOutcome::Exceeds(2));
}

#[test]
fn small_chromatic_numbers() {
    let ChromaticOutcome::Exact(k, _) = chromatic_number(&Hypergraph::edgeless(4), 3, B).unwrap() else { panic!() };
    assert_eq!(k, 1);
    let ChromaticOutcome::Exact(k, c) = chromatic_number(&single(&[1, 2, 3], 3), 3, B).unwrap() else { panic!() };
    assert_eq!(k, 2);
    assert!(c.is_proper(&single(&[1, 2, 3], 3)));
    let k5 = crate::hypergraph::named::complete_graph(5);
    let ChromaticOutcome::Exact(k, _) = chromatic_number(&k5, 6, B).unwrap() else { panic!() };
    assert_eq!(k, 5);
    let k7 = crate::hypergraph::named::complete_graph(7);
    assert!(chromatic_number(&k7, 7, 10).is_err());
}

#[test]
fn unbalanced_brackets() {
    let sys = unbalanced_linear_system(&single(&[1, 2, 3], 3));
    let q = FieldDescriptor::Rational;
    assert_eq!(sys.coefficient_rows(), vec![vec![q.one(), q.one(), q.from_i64(-2)]]);
    let sys = unbalanced_linear_system(&single(&[1, 2], 2));
    assert_eq!(sys.coefficient_rows(), vec![vec![q.one(), q.from_i64(-1)]]);
    let fano = unbalanced_linear_system(&named::fano());
    assert_eq!(fano.m(), 7);
    assert!(fano.coefficient_rows().iter().all(|r| *r == vec![q.one(), q.one(), q.from_i64(-2)]));
    assert!(fano.fully_unbalanced_check().fully_unbalanced);
    assert!(is_coloring_polynomial(&fano));
}

#[test]
fn coloring_polynomial_detection() {
    let ones = LinearSystem::all_ones(named::fano(), FieldDescriptor::Rational).unwrap();
    assert!(!is_coloring_polynomial(&ones));
    // sums 2, 3 and −1
    assert!(!is_coloring_polynomial(&crate::poly::named::k3_system()));
    // x1 + x2 over GF(2) sums to zero
    let gf2 = LinearSystem::all_ones(single(&[1, 2], 2), FieldDescriptor::PrimeField(2)).unwrap();
    assert!(is_coloring_polynomial(&gf2));
}

#[test]
fn nullstellensatz_colorings() {
    let fano = named::fano();
    let sys = unbalanced_linear_system(&fano);
    let c = cn_coloring(&sys, 3, B).unwrap().expect("AT ≤ 3 gives a point");
    assert!(c.is_proper(&fano));
    let edge = single(&[1, 2], 2);
    let c = cn_coloring(&unbalanced_linear_system(&edge), 2, B).unwrap().unwrap();
    assert_ne!(c.color(1), c.color(2));
    assert!(cn_coloring(&unbalanced_linear_system(&edge), 1, B).is_err());
    // two colors cannot work for the Fano plane
    assert_eq!(cn_coloring(&sys, 2, B).unwrap(), None);
}

#[test]
fn vanishing_on_roots_of_unity_means_monochromatic() {
    // every point of U_3^5 for a hypergraph with edges of sizes 2, 3 and 4
    let h = Hypergraph::new(5, vec![vec![1, 2], vec![2, 3, 4], vec![1, 3, 4, 5], vec![3, 5]]).unwrap();
    let sys = unbalanced_linear_system(&h).embed(FieldDescriptor::Cyclotomic(3)).unwrap();
    for c in all_colorings(5, 3) {
        let point: BTreeMap<usize, Scalar> =
            (1..=5).map(|v| (v, root_of_unity(3, c.color(v) as i64).unwrap())).collect();
        assert_eq!(sys.evaluate(&point).unwrap().is_zero(), !c.is_proper(&h), "{c}");
    }
}

#[test]
fn list_colorings() {
    let fano = named::fano();
    let c = list_colorable(&fano, &vec![vec![1, 2, 3]; 7], B).unwrap().unwrap();
    assert!(c.is_proper(&fano));
    assert!(list_colorable(&fano, &vec![vec![1]; 7], B).unwrap().is_none());
    let distinct: Vec<Vec<usize>> = (0..7).map(|v| vec![v]).collect();
    assert!(list_colorable(&fano, &distinct, B).unwrap().is_some());
    assert!(list_colorable(&fano, &[vec![1]], B).is_err());
}

/// Direct transcription of the paintability recursion, without memoization and
/// with independence checked against the original edge list.
fn paintable_oracle(h: &Hypergraph, uncolored: &[usize], f: &BTreeMap<usize, u32>) -> bool {
    if uncolored.is_empty() {
        return true;
    }
    if uncolored.iter().any(|v| f[v] == 0) {
        return false;
    }
    let subsets = |s: &[usize]| -> Vec<Vec<usize>> {
        (0..1u32 << s.len()).map(|m| s.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect()).collect()
    };
    subsets(uncolored).into_iter().filter(|x| !x.is_empty()).all(|x| {
        subsets(&x).into_iter().any(|xp| {
            let independent = !h.edges().iter().any(|e| e.iter().all(|v| xp.contains(v)));
            if !independent {
                return false;
            }
            let rest: Vec<usize> = uncolored.iter().copied().filter(|v| !xp.contains(v)).collect();
            // edges touching a colored vertex are gone
            let kept: Vec<Vec<usize>> =
                h.edges().iter().filter(|e| e.iter().all(|v| rest.contains(v))).cloned().collect();
            let sub = Hypergraph::new(h.n(), kept).unwrap();
            let mut g = f.clone();
            for v in &x {
                if !xp.contains(v) {
                    *g.get_mut(v).unwrap() -= 1;
                }
            }
            paintable_oracle(&sub, &rest, &g)
        })
    })
}

#[test]
fn paintability_examples() {
    let edge = single(&[1, 2], 2);
    assert!(f_paintable(&edge, &[2, 2], B).unwrap());
    assert!(f_paintable(&edge, &[1, 2], B).unwrap());
    assert!(!f_paintable(&edge, &[1, 1], B).unwrap());
    assert!(!f_paintable(&named::fano(), &[3, 3, 3, 0, 3, 3, 3], B).unwrap());
    assert!(f_paintable(&Hypergraph::edgeless(4), &[1; 4], B).unwrap());
    let triangle = crate::hypergraph::named::cycle(3);
    assert!(!f_paintable(&triangle, &[2; 3], B).unwrap());
    assert!(f_paintable(&triangle, &[3; 3], B).unwrap());
    // even cycles are 2-paintable
    assert!(f_paintable(&crate::hypergraph::named::cycle(4), &[2; 4], B).unwrap());
    assert!(f_paintable(&single(&[1, 2, 3], 3), &[1, 1, 2], B).unwrap());
    assert!(f_paintable(&edge, &[1], B).is_err());
}

#[test]
fn painter_on_a_single_edge() {
    let g = SimpleGraph::path(2);
    let sys = graph_polynomial(&g);
    let alpha = ExponentVector::parse("x2").unwrap();
    let painter = PainterStrategy::new(&sys, &alpha, DEFAULT_TERM_GUARD).unwrap();
    assert_eq!((painter.tokens(1), painter.tokens(2)), (1, 2));
    let report = exhaustive_lister(&painter, 10_000).unwrap();
    assert!(report.losses.is_empty());
    assert!(report.states >= 3);
    let mut p = painter.clone();
    assert!(p.respond(&[]).is_err());
    assert!(p.respond(&[3]).is_err());
    assert_eq!(p.respond(&[1, 2]).unwrap(), vec![1]);
    assert_eq!(p.transcript().to_string(), "round 1 lister {1,2} painter {1} tokens 2:1\n");
    assert_eq!(p.respond(&[2]).unwrap(), vec![2]);
    assert!(p.is_finished());
    // x1 alone is not a coefficient of x1 − x2 with the right degree pattern here
    assert!(PainterStrategy::new(&sys, &ExponentVector::parse("x1^2").unwrap(), DEFAULT_TERM_GUARD).is_err());
    let ones = LinearSystem::all_ones(single(&[1, 2], 2), FieldDescriptor::Rational).unwrap();
    assert!(PainterStrategy::new(&ones, &alpha, DEFAULT_TERM_GUARD).is_err());
}

#[test]
fn painter_survives_on_small_graphs() {
    for g in [SimpleGraph::path(2), SimpleGraph::path(3), SimpleGraph::cycle(4), SimpleGraph::complete(3)] {
        let sys = graph_polynomial(&g);
        let cert = sys.alon_tarsi_number(DEFAULT_TERM_GUARD).unwrap();
        let painter = PainterStrategy::new(&sys, &cert.exponents, DEFAULT_TERM_GUARD).unwrap();
        let report = exhaustive_lister(&painter, 1_000_000).unwrap();
        assert!(report.losses.is_empty(), "{g}");
        let f: Vec<u32> = cert.exponents.dense(g.n()).iter().map(|a| a + 1).collect();
        assert!(f_paintable(sys.hypergraph(), &f, B).unwrap());
    }
    // the multilinear monomial of the 4-cycle
    let c4 = graph_polynomial(&SimpleGraph::cycle(4));
    let alpha = ExponentVector::parse("x1*x2*x3*x4").unwrap();
    let painter = PainterStrategy::new(&c4, &alpha, DEFAULT_TERM_GUARD).unwrap();
    assert!(exhaustive_lister(&painter, 1_000_000).unwrap().losses.is_empty());
}

#[test]
fn painter_on_hypergraph_brackets() {
    let fano = unbalanced_linear_system(&named::fano());
    let cert = fano.alon_tarsi_number(DEFAULT_TERM_GUARD).unwrap();
    assert!(cert.at_value <= 3);
    let mut painter = PainterStrategy::new(&fano, &cert.exponents, DEFAULT_TERM_GUARD).unwrap();
    // Lister names everything, every round
    while !painter.is_finished() {
        let u = painter.uncolored();
        painter.respond(&u).unwrap();
    }
    assert!(painter.transcript().rounds.len() <= 3);
}

fn path_edges(m: usize) -> SimpleGraph {
    SimpleGraph::path(m + 1)
}

#[test]
fn unbalanceable_examples() {
    let p = path_edges(2);
    let a: Vec<i64> = (1..=9).collect();
    let exact = unbalanceable_game(&p, &[None, None], &[3, 3], &a, TerminalRule::Adjacent, B).unwrap();
    let five = &a[..5];
    assert_eq!(
        unbalanceable_game(&p, &[None, None], &[3, 3], five, TerminalRule::Adjacent, B).unwrap(),
        unbalanceable_naive(&p, &[None, None], &[3, 3], five, TerminalRule::Adjacent, B).unwrap()
    );
    // adjacent sums w1 vs w1 + w2 always differ for positive weights
    assert!(exact);
    assert!(!unbalanceable_game(&p, &[None, None], &[0, 3], &a, TerminalRule::Adjacent, B).unwrap());
    // weighted edges carry no tokens
    assert!(unbalanceable_game(&p, &[Some(1), None], &[0, 2], &a, TerminalRule::Adjacent, B).unwrap());
    assert!(unbalanceable_game(&p, &[Some(1), Some(2)], &[0, 0], &a, TerminalRule::Adjacent, B).unwrap());
    // the end vertices both have sum 1
    assert!(!unbalanceable_game(&p, &[Some(1), Some(1)], &[0, 0], &a, TerminalRule::AllDistinct, B).unwrap());
    assert!(!unbalanceable_game(&p, &[Some(1), Some(2)], &[0, 0], &[], TerminalRule::Adjacent, B).unwrap());
    // K_2 never works
    let k2 = path_edges(1);
    assert!(!unbalanceable_game(&k2, &[None], &[4], &a, TerminalRule::Adjacent, B).unwrap());
}

#[test]
fn terminal_rules() {
    let p = path_edges(3);
    // sums 1, 3, 4, 2
    assert!(TerminalRule::Adjacent.holds(&p, &[1, 2, 2]));
    assert!(TerminalRule::AllDistinct.holds(&p, &[1, 2, 2]));
    // sums 1, 2, 2, 1
    assert!(!TerminalRule::Adjacent.holds(&p, &[1, 1, 1]));
    // sums 2, 3, 3, 2... adjacent middle pair equal
    assert!(!TerminalRule::Adjacent.holds(&p, &[2, 1, 2]));
    // sums 1, 3, 5, 3: adjacent distinct, not all distinct
    assert!(TerminalRule::Adjacent.holds(&p, &[1, 2, 3]));
    assert!(!TerminalRule::AllDistinct.holds(&p, &[1, 2, 3]));
}

fn tiny_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(1..=n, 2..=n.min(3)), 0..=4)
            .prop_map(move |es| Hypergraph::new(n, es.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap())
    })
}

fn tiny_graph() -> impl Strategy<Value = SimpleGraph> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::btree_set((1..=n, 1..=n), 1..=4).prop_map(move |ps| {
            let mut edges: Vec<(usize, usize)> =
                ps.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            edges.sort_unstable();
            edges.dedup();
            edges.truncate(3);
            SimpleGraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn paintability_matches_the_recursion(h in tiny_hypergraph(), f in prop::collection::vec(0u32..3, 4)) {
        let f = &f[..h.n()];
        let map: BTreeMap<usize, u32> = f.iter().enumerate().map(|(i, &t)| (i + 1, t)).collect();
        let all: Vec<usize> = (1..=h.n()).collect();
        prop_assert_eq!(f_paintable(&h, f, B).unwrap(), paintable_oracle(&h, &all, &map));
    }

    #[test]
    fn paintability_is_monotone_and_bounded(h in tiny_hypergraph(), f in prop::collection::vec(0u32..3, 4), bump in 0usize..4) {
        let f = f[..h.n()].to_vec();
        let mut g = f.clone();
        g[bump % h.n()] += 1;
        if f_paintable(&h, &f, B).unwrap() {
            prop_assert!(f_paintable(&h, &g, B).unwrap());
        }
        let d = degeneracy(&h).value as u32;
        prop_assert!(f_paintable(&h, &vec![d + 1; h.n()], B).unwrap());
    }

    #[test]
    fn coloring_bounds_chain(h in tiny_hypergraph(), seed in any::<u64>()) {
        let ChromaticOutcome::Exact(chi, c) = chromatic_number(&h, 5, B).unwrap() else { panic!() };
        prop_assert!(c.is_proper(&h));
        let paint = (1..=5u32).find(|&k| f_paintable(&h, &vec![k; h.n()], B).unwrap()).unwrap();
        prop_assert!(chi as u32 <= paint);
        // lists of size `paint` drawn from a palette of 6 colors
        let mut s = seed;
        let lists: Vec<Vec<usize>> = (0..h.n()).map(|_| {
            let mut l = Vec::new();
            while l.len() < paint as usize {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = (s >> 33) as usize % 6;
                if !l.contains(&c) { l.push(c); }
            }
            l
        }).collect();
        let lc = list_colorable(&h, &lists, B).unwrap();
        prop_assert!(lc.is_some_and(|c| c.is_proper(&h) && (1..=h.n()).all(|v| lists[v - 1].contains(&c.color(v)))));
    }

    #[test]
    fn cn_colorings_are_proper(h in tiny_hypergraph()) {
        let sys = unbalanced_linear_system(&h);
        let at = sys.alon_tarsi_number(DEFAULT_TERM_GUARD).unwrap().at_value.max(2);
        let c = cn_coloring(&sys, at, B).unwrap();
        prop_assert!(c.is_some_and(|c| c.is_proper(&h)));
    }

    #[test]
    fn certificate_painter_never_loses(g in tiny_graph()) {
        let sys = graph_polynomial(&g);
        let cert = sys.alon_tarsi_number(DEFAULT_TERM_GUARD).unwrap();
        let painter = PainterStrategy::new(&sys, &cert.exponents, DEFAULT_TERM_GUARD).unwrap();
        prop_assert!(exhaustive_lister(&painter, 1_000_000).unwrap().losses.is_empty());
    }

    #[test]
    fn hypergraph_painter_never_loses(h in tiny_hypergraph()) {
        let sys = unbalanced_linear_system(&h);
        let cert = sys.alon_tarsi_number(DEFAULT_TERM_GUARD).unwrap();
        let painter = PainterStrategy::new(&sys, &cert.exponents, DEFAULT_TERM_GUARD).unwrap();
        prop_assert!(exhaustive_lister(&painter, 1_000_000).unwrap().losses.is_empty());
    }

    #[test]
    fn memoized_game_matches_naive(
        m in 1usize..=3,
        f in prop::collection::vec(0u32..3, 3),
        a in prop::collection::btree_set(-2i64..4, 1..=3),
        star in any::<bool>(),
        all_distinct in any::<bool>(),
    ) {
        let g = if star && m == 3 { SimpleGraph::star(3) } else { path_edges(m) };
        let a: Vec<i64> = a.into_iter().collect();
        let rule = if all_distinct { TerminalRule::AllDistinct } else { TerminalRule::Adjacent };
        let w0 = vec![None; m];
        prop_assert_eq!(
            unbalanceable_game(&g, &w0, &f[..m], &a, rule, B).unwrap(),
            unbalanceable_naive(&g, &w0, &f[..m], &a, rule, B).unwrap()
        );
    }
}
