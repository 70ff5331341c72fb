//! The second route to the 2⌈ed⌉ + 1 bound: every product ∏(x_v − x_w) with
//! {v, w} ⊆ e_i lies in the span of the permuted polynomials, so a nonzero
//! coefficient of the former forces one in some permuted polynomial.

use super::{degeneracy_certificate, density};
use crate::arith::Scalar;
use crate::error::{internal, invalid, Error, Result};
use crate::poly::{ATCertificate, LinearSystem, PermutationAssignment, SparsePoly};
use crate::representatives::multigraph_reduction;

/// Default cap on the number of permutation tuples tried by [`span_route`].
pub const DEFAULT_COMBINATION_BUDGET: usize = 1 << 20;

/// x_u − x_w = Σ weight · (bracket i with coefficients permuted by σ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanDecomposition {
    pub edge: usize,
    /// σ restricted to the edge, as images of the edge's sorted vertices, with its weight.
    pub terms: Vec<(Vec<usize>, Scalar)>,
}

impl SpanDecomposition {
    /// Σ weight · Σ_v a_{σ(v)} x_v as a polynomial.
    pub fn combine(&self, sys: &LinearSystem) -> SparsePoly {
        let field = sys.field();
        let e = sys.hypergraph().edge(self.edge);
        let mut out = SparsePoly::zero(field);
        for (sigma, w) in &self.terms {
            let form: Vec<(usize, Scalar)> = e
                .iter()
                .zip(sigma)
                .map(|(&v, &img)| (v, w * sys.coeff(self.edge, img)))
                .collect();
            out = out.checked_add(&SparsePoly::linear(field, &form)).unwrap();
        }
        out
    }
}

fn swapped(e: &[usize], u: usize, w: usize) -> Vec<usize> {
    let mut s = e.to_vec();
    let (a, b) = (e.binary_search(&u).unwrap(), e.binary_search(&w).unwrap());
    s.swap(a, b);
    s
}

/// Writes x_u − x_w as a combination of permuted copies of bracket i: directly by
/// the transposition (u w) when a_u ≠ a_w, otherwise through a vertex v with
/// a_v ≠ a_u as (x_u − x_v) + (x_v − x_w), giving four terms.
pub fn difference_decomposition(sys: &LinearSystem, i: usize, u: usize, w: usize) -> Result<SpanDecomposition> {
    let h = sys.hypergraph();
    if i >= h.m() {
        return Err(invalid!("no edge {i}"));
    }
    let e = h.edge(i);
    if !e.contains(&u) || !e.contains(&w) {
        return Err(invalid!("x{u} − x{w} does not lie on edge {i}"));
    }
    if u == w {
        return Ok(SpanDecomposition { edge: i, terms: vec![] });
    }
    let pair = |u: usize, w: usize| -> Result<[(Vec<usize>, Scalar); 2]> {
        let d = (sys.coeff(i, u) - sys.coeff(i, w)).inv()?;
        Ok([(e.to_vec(), d.clone()), (swapped(e, u, w), -d)])
    };
    let au = sys.coeff(i, u);
    let terms = if au != sys.coeff(i, w) {
        pair(u, w)?.to_vec()
    } else {
        let v = *e
            .iter()
            .find(|&&v| sys.coeff(i, v) != au)
            .ok_or_else(|| invalid!("edge {i} is balanced"))?;
        let mut t = pair(u, v)?.to_vec();
        t.extend(pair(v, w)?);
        t
    };
    Ok(SpanDecomposition { edge: i, terms })
}

#[derive(Debug, Clone)]
pub struct SpanRouteResult {
    pub permutations: PermutationAssignment,
    pub certificate: ATCertificate,
    /// 2⌈ed(H)⌉ + 1.
    pub bound: u32,
    /// Permutation tuples examined before the first success.
    pub tried: usize,
}

/// Reduces H to pairs f_i = {v_i, w_i} ⊆ e_i of density ≤ ⌈ed⌉, takes the degeneracy
/// certificate α of q = ∏(x_{v_i} − x_{w_i}), and searches the permutation tuples
/// occurring in the product of the per-edge decompositions for one whose
/// coefficient at α is nonzero.
pub fn span_route(sys: &LinearSystem, budget: usize) -> Result<SpanRouteResult> {
    let h = sys.hypergraph();
    if !sys.fully_unbalanced_check().fully_unbalanced {
        return Err(invalid!("the polynomial is not fully unbalanced"));
    }
    let k = density(h)?.ceil();
    let bound = 2 * k as u32 + 1;
    let field = sys.field();
    if h.m() == 0 {
        let cert = ATCertificate::new(crate::poly::ExponentVector::one(), field.one());
        return Ok(SpanRouteResult { permutations: PermutationAssignment::identity(h), certificate: cert, bound, tried: 1 });
    }
    let (g, _) = multigraph_reduction(h, k)?;
    let rows = vec![vec![field.one(), -field.one()]; g.edges().len()];
    let q = LinearSystem::new(g.to_hypergraph(), field, rows)?;
    let alpha = degeneracy_certificate(&q).exponents;

    // distinct permutations per edge, identity first
    let mut options: Vec<Vec<Vec<usize>>> = Vec::with_capacity(h.m());
    for (i, &(v, w)) in g.edges().iter().enumerate() {
        let d = difference_decomposition(sys, i, v, w)?;
        let mut distinct: Vec<Vec<usize>> = vec![h.edge(i).to_vec()];
        for (sigma, _) in d.terms {
            if !distinct.contains(&sigma) {
                distinct.push(sigma);
            }
        }
        options.push(distinct);
    }
    let mut digits = vec![0usize; h.m()];
    for tried in 1..=budget {
        let perms = PermutationAssignment {
            maps: digits.iter().zip(&options).map(|(&d, o)| o[d].clone()).collect(),
        };
        let permuted = sys.apply_permutations(&perms)?;
        let c = permuted.coefficient_of(&alpha);
        if !c.is_zero() {
            let certificate = ATCertificate::new(alpha, c);
            if certificate.at_value > bound {
                return Err(internal!("q-certificate exponent exceeds 2⌈ed⌉"));
            }
            return Ok(SpanRouteResult { permutations: perms, certificate, bound, tried });
        }
        // odometer, first edge fastest
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Err(internal!("no permuted polynomial has a nonzero coefficient at {alpha}"));
            }
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
    Err(Error::Budget(format!("span route tried {budget} permutation tuples")))
}
