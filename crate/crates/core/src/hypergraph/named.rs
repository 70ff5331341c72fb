//! A few fixed hypergraphs used throughout the tests, examples and CLI.

use super::Hypergraph;

/// The seven lines of the Fano plane.
pub fn fano() -> Hypergraph {
    Hypergraph::new(
        7,
        vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    )
    .unwrap()
}

/// All four triples of a 4-set.
pub fn tetrahedron() -> Hypergraph {
    Hypergraph::new(4, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap()
}

/// C_n as a 2-uniform hypergraph, edges {i, i+1} and {1, n}; n ≥ 3.
pub fn cycle(n: usize) -> Hypergraph {
    assert!(n >= 3);
    let mut edges: Vec<Vec<usize>> = (1..n).map(|i| vec![i, i + 1]).collect();
    edges.push(vec![1, n]);
    Hypergraph::new(n, edges).unwrap()
}

/// P_n (n vertices) as a 2-uniform hypergraph.
pub fn path(n: usize) -> Hypergraph {
    Hypergraph::new(n, (1..n).map(|i| vec![i, i + 1]).collect()).unwrap()
}

pub fn complete_graph(n: usize) -> Hypergraph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            edges.push(vec![a, b]);
        }
    }
    Hypergraph::new(n, edges).unwrap()
}
