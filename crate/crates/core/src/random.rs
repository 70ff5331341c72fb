//! Seeded random hypergraph polynomials.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{root_of_unity, FieldDescriptor, Scalar};
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::LinearSystem;

/// How coefficients are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMode {
    /// Uniformly from the pool.
    Pool,
    /// From the pool, redrawing any edge whose coefficients all coincide.
    FullyUnbalanced,
    /// All ones.
    Balanced,
}

#[derive(Debug, Clone)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub max_edge_size: usize,
    pub field: FieldDescriptor,
    pub mode: CoefficientMode,
    /// Overrides [`default_pool`].
    pub pool: Option<Vec<Scalar>>,
}

impl RandomParams {
    pub fn new(n: usize, m: usize, max_edge_size: usize, field: FieldDescriptor) -> Self {
        RandomParams { n, m, max_edge_size, field, mode: CoefficientMode::Pool, pool: None }
    }

    pub fn mode(mut self, mode: CoefficientMode) -> Self {
        self.mode = mode;
        self
    }
}

/// ±1, ±2 and, in Q(ζ_s), also ζ and ζ²; zero and repeats removed.
pub fn default_pool(field: FieldDescriptor) -> Vec<Scalar> {
    let mut pool: Vec<Scalar> = [1, -1, 2, -2].iter().map(|&c| field.from_i64(c)).collect();
    if let FieldDescriptor::Cyclotomic(s) = field {
        pool.push(root_of_unity(s, 1).unwrap());
        pool.push(root_of_unity(s, 2).unwrap());
    }
    let mut out: Vec<Scalar> = Vec::new();
    for c in pool {
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// A reproducible instance drawn from the default pool.
pub fn random_instance(seed: u64, n: usize, m: usize, max_edge_size: usize, field: FieldDescriptor) -> Result<LinearSystem> {
    random_instance_with(seed, &RandomParams::new(n, m, max_edge_size, field))
}

/// Edge sizes are uniform in [2, min(max_edge_size, n)], vertices uniform without
/// repetition, coefficients per `params.mode`. Equal seeds give equal instances.
pub fn random_instance_with(seed: u64, params: &RandomParams) -> Result<LinearSystem> {
    let RandomParams { n, m, max_edge_size, field, mode, .. } = *params;
    field.validate()?;
    if max_edge_size < 2 {
        return Err(invalid!("max edge size must be at least 2"));
    }
    if m > 0 && n < 2 {
        return Err(invalid!("edges need at least two vertices, n = {n}"));
    }
    let pool = params.pool.clone().unwrap_or_else(|| default_pool(field));
    if pool.is_empty() || pool.iter().any(|c| c.is_zero() || c.descriptor() != field) {
        return Err(invalid!("coefficient pool must be nonempty, nonzero and in {field}"));
    }
    if mode == CoefficientMode::FullyUnbalanced && pool.iter().all(|c| *c == pool[0]) {
        return Err(invalid!("a one-element pool over {field} cannot give unbalanced edges"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = max_edge_size.min(n);
    let mut edges = Vec::with_capacity(m);
    let mut coeffs = Vec::with_capacity(m);
    for _ in 0..m {
        let size = rng.gen_range(2..=top);
        let mut e: Vec<usize> = sample(&mut rng, n, size).into_iter().map(|v| v + 1).collect();
        e.sort_unstable();
        let row: Vec<Scalar> = match mode {
            CoefficientMode::Balanced => vec![field.one(); size],
            _ => loop {
                let row: Vec<Scalar> = (0..size).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
                if mode == CoefficientMode::Pool || row.iter().any(|c| *c != row[0]) {
                    break row;
                }
            },
        };
        edges.push(e);
        coeffs.push(row);
    }
    LinearSystem::new(Hypergraph::new(n, edges)?, field, coeffs)
}
