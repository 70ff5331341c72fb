//! Constructive bounds on Alon–Tarsi numbers: the degeneracy certificate, the
//! greedy permutation search reaching AT ≤ 2⌈ed(H)⌉ + 1, and the fully balanced case.

mod span;

use std::fmt;

use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{internal, invalid, Result};
use crate::hypergraph::{degeneracy, edge_density_exact, edge_density_flow, DensityReport, Hypergraph, MAX_EXACT_VERTICES};
use crate::poly::{ATCertificate, ExponentVector, LinearForms, LinearSystem, PermutationAssignment};
use crate::representatives::{hall_representatives, multigraph_reduction, HallOutcome, RepresentativeSystem};

pub use span::{difference_decomposition, span_route, SpanDecomposition, SpanRouteResult, DEFAULT_COMBINATION_BUDGET};

/// ed(H), by enumeration when small enough and by min cuts otherwise.
pub fn density(h: &Hypergraph) -> Result<DensityReport> {
    if h.n() <= 16.min(MAX_EXACT_VERTICES) {
        edge_density_exact(h)
    } else {
        edge_density_flow(h)
    }
}

/// The monomial ∏_e x_{max(e)} under a reversed degeneracy order, whose coefficient is
/// ∏_e a_{e,max(e)} because that choice of brackets is the only one producing it.
/// Its largest exponent is at most δ(H).
pub fn degeneracy_certificate(sys: &LinearSystem) -> ATCertificate {
    let h = sys.hypergraph();
    let pos = degeneracy(h).positions();
    let mut coefficient = sys.field().one();
    let mut chosen = Vec::with_capacity(h.m());
    for (i, e) in h.edges().iter().enumerate() {
        // the vertex of e peeled first is the maximum of the reversed order
        let top = *e.iter().min_by_key(|&&v| pos[v]).unwrap();
        coefficient = &coefficient * sys.coeff(i, top);
        chosen.push(top);
    }
    ATCertificate::new(ExponentVector::from_vertices(chosen), coefficient)
}

/// From four (possibly repeated) elements with f(a) ≠ f(b) and g(c) ≠ g(d), returns a
/// pair separated by both f and g, trying ab, cd, ac, ad, bc, bd in that order.
pub fn claim1_pair<T, F, G, X, Y>(elems: [T; 4], f: F, g: G) -> Result<(T, T)>
where
    T: Copy,
    F: Fn(T) -> X,
    G: Fn(T) -> Y,
    X: PartialEq,
    Y: PartialEq,
{
    let [a, b, c, d] = elems;
    if f(a) == f(b) || g(c) == g(d) {
        return Err(invalid!("claim hypothesis f(a) ≠ f(b), g(c) ≠ g(d) violated"));
    }
    for (x, y) in [(a, b), (c, d), (a, c), (a, d), (b, c), (b, d)] {
        if f(x) != f(y) && g(x) != g(y) {
            return Ok((x, y));
        }
    }
    Err(internal!("no separating pair among four elements"))
}

/// A system together with a vertex order; `max(e)` is the vertex of e placed last.
#[derive(Debug, Clone)]
pub struct OrderedInstance<'a> {
    pub sys: &'a LinearSystem,
    /// `position[v]` is the index of v in the order (index 0 unused).
    pub position: Vec<usize>,
    /// Per edge, its maximum under the order.
    pub maxima: Vec<usize>,
}

impl<'a> OrderedInstance<'a> {
    pub fn new(sys: &'a LinearSystem, order: &[usize]) -> Result<Self> {
        let n = sys.hypergraph().n();
        let mut position = vec![usize::MAX; n + 1];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || v > n || position[v] != usize::MAX {
                return Err(invalid!("order is not a permutation of 1..={n}"));
            }
            position[v] = i;
        }
        if order.len() != n {
            return Err(invalid!("order is not a permutation of 1..={n}"));
        }
        let maxima = sys
            .hypergraph()
            .edges()
            .iter()
            .map(|e| *e.iter().max_by_key(|&&v| position[v]).unwrap())
            .collect();
        Ok(OrderedInstance { sys, position, maxima })
    }
}

/// One step of the greedy search, for reports and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStep {
    pub edge: usize,
    /// The transposition applied, if the identity gave coefficient zero.
    pub swap: Option<(usize, usize)>,
    pub coefficient: Scalar,
}

#[derive(Debug, Clone)]
pub struct PermutationSearch {
    pub permutations: PermutationAssignment,
    pub certificate: ATCertificate,
    pub steps: Vec<SearchStep>,
}

/// Finds permutations making the coefficient of ∏_e x_{r(e)} nonzero, assuming the
/// polynomial is fully unbalanced and r(e) precedes max(e) in `order` for every edge.
///
/// Edges are processed by increasing position of their maximum. At each step the
/// bracket is kept unless the running coefficient c = Σ_j a_j b_j vanishes, in which
/// case a transposition (k l) with a_k ≠ a_l and b_k ≠ b_l turns it into
/// (a_k − a_l)(b_l − b_k) ≠ 0.
pub fn permutation_search(sys: &LinearSystem, r: &RepresentativeSystem, order: &[usize]) -> Result<PermutationSearch> {
    let h = sys.hypergraph();
    let unbalance = sys.fully_unbalanced_check();
    if !unbalance.fully_unbalanced {
        return Err(invalid!("the polynomial is not fully unbalanced"));
    }
    let inst = OrderedInstance::new(sys, order)?;
    if r.r.len() != h.m() {
        return Err(invalid!("{} representatives for {} edges", r.r.len(), h.m()));
    }
    for (i, e) in h.edges().iter().enumerate() {
        let ri = r.r[i];
        if !e.contains(&ri) {
            return Err(invalid!("representative {ri} of edge {i} is not in the edge"));
        }
        if inst.position[ri] >= inst.position[inst.maxima[i]] {
            return Err(invalid!("representative of edge {i} does not precede the edge's maximum"));
        }
    }
    let mut queue: Vec<usize> = (0..h.m()).collect();
    queue.sort_by_key(|&i| inst.position[inst.maxima[i]]);

    let field = sys.field();
    let mut perms = PermutationAssignment::identity(h);
    let mut done: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(h.m());
    let mut monomial = ExponentVector::one();
    let mut previous = field.one();
    let mut steps = Vec::with_capacity(h.m());
    for &i in &queue {
        let e = h.edge(i);
        let partial = LinearForms::new(h.n(), field, done.clone())?;
        monomial = monomial.mul(&ExponentVector::from_vertices([r.r[i]]));
        let b = |j: usize| monomial.div_var(j).map_or_else(|| field.zero(), |m| partial.coefficient_of(&m));
        let bs: Vec<Scalar> = e.iter().map(|&j| b(j)).collect();
        let b_of = |v: usize| bs[e.binary_search(&v).unwrap()].clone();
        if b_of(r.r[i]) != previous {
            return Err(internal!("b at the representative differs from the previous coefficient"));
        }
        let a: Vec<Scalar> = sys.coeffs(i).cloned().collect();
        let a_of = |v: usize| a[e.binary_search(&v).unwrap()].clone();
        let dot = |coeffs: &[Scalar]| coeffs.iter().zip(&bs).fold(field.zero(), |s, (x, y)| &s + &(x * y));
        let c = dot(&a);
        let (swap, coefficient, bracket) = if !c.is_zero() {
            (None, c, a)
        } else {
            let (j, j2) = unbalance.witnesses[i].unwrap();
            let (k, l) = claim1_pair([j, j2, r.r[i], inst.maxima[i]], a_of, b_of)?;
            perms.transpose(h, i, k, l);
            let swapped: Vec<Scalar> = perms.maps[i].iter().map(|&v| a_of(v)).collect();
            let c2 = dot(&swapped);
            let predicted = &(&a_of(k) - &a_of(l)) * &(&b_of(l) - &b_of(k));
            if c2 != predicted || c2.is_zero() {
                return Err(internal!("transposition did not yield (a_k − a_l)(b_l − b_k) ≠ 0"));
            }
            (Some((k, l)), c2, swapped)
        };
        done.push(e.iter().copied().zip(bracket).collect());
        previous = coefficient.clone();
        steps.push(SearchStep { edge: i, swap, coefficient });
    }
    let permuted = sys.apply_permutations(&perms)?;
    let coefficient = permuted.coefficient_of(&monomial);
    let cert = ATCertificate::new(monomial, coefficient);
    if cert.coefficient != previous || cert.coefficient.is_zero() {
        return Err(internal!("final coefficient disagrees with the greedy invariant"));
    }
    Ok(PermutationSearch { permutations: perms, certificate: cert, steps })
}

/// Output of [`theorem_main`].
#[derive(Debug, Clone)]
pub struct MainResult {
    pub ed: DensityReport,
    /// 2⌈ed(H)⌉ + 1.
    pub bound: u32,
    pub representatives: RepresentativeSystem,
    pub search: PermutationSearch,
    pub permuted: LinearSystem,
}

/// Permutes coefficients within edges so that AT ≤ 2⌈ed(H)⌉ + 1.
///
/// Reduces H to a multigraph G of density ≤ k = ⌈ed(H)⌉, peels G, takes as r(e) the
/// endpoint of its pair peeled first (at most δ(G) ≤ 2k edges share a
/// representative) and runs the permutation search in the peeling order.
pub fn theorem_main(sys: &LinearSystem) -> Result<MainResult> {
    let h = sys.hypergraph();
    if !sys.fully_unbalanced_check().fully_unbalanced {
        return Err(invalid!("the polynomial is not fully unbalanced"));
    }
    let ed = density(h)?;
    let k = ed.ceil();
    let bound = 2 * k as u32 + 1;
    let (r, order) = if h.m() == 0 {
        (RepresentativeSystem { r: vec![] }, (1..=h.n()).collect())
    } else {
        let (g, _) = multigraph_reduction(h, k)?;
        let peel = degeneracy(&g.to_hypergraph());
        let pos = peel.positions();
        let r = g.edges().iter().map(|&(a, b)| if pos[a] < pos[b] { a } else { b }).collect();
        (RepresentativeSystem { r }, peel.order)
    };
    let search = permutation_search(sys, &r, &order)?;
    if search.certificate.at_value > bound {
        return Err(internal!("certificate exponent {} exceeds 2k", search.certificate.at_value - 1));
    }
    let permuted = sys.apply_permutations(&search.permutations)?;
    Ok(MainResult { ed, bound, representatives: r, search, permuted })
}

/// AT of the all-ones polynomial over a field of characteristic zero is ⌈ed(H)⌉ + 1;
/// the certificate is ∏_e x_{r(e)} for a representative system of multiplicity ≤ ⌈ed⌉.
pub fn fully_balanced_at(h: &Hypergraph, field: FieldDescriptor) -> Result<ATCertificate> {
    if field.characteristic() != 0 {
        return Err(invalid!("the fully balanced bound needs characteristic zero, got {field}"));
    }
    let sys = LinearSystem::all_ones(h.clone(), field)?;
    if h.m() == 0 {
        return Ok(ATCertificate::new(ExponentVector::one(), field.one()));
    }
    let k = density(h)?.ceil();
    let HallOutcome::Representatives(r) = hall_representatives(h, k)? else {
        return Err(internal!("no representative system of multiplicity ⌈ed⌉"));
    };
    let alpha = ExponentVector::from_vertices(r.r.iter().copied());
    let c = sys.coefficient_of(&alpha);
    if c.is_zero() || c.rational_signum() != Some(1) {
        return Err(internal!("balanced coefficient at {alpha} is not a positive integer"));
    }
    Ok(ATCertificate::new(alpha, c))
}

impl fmt::Display for MainResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.permuted.hypergraph();
        writeln!(f, "ed = {}", self.ed.density)?;
        for i in 0..h.m() {
            let verts: Vec<String> = h.edge(i).iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "edge {} {{{}}}: r = {}, sigma = {}",
                i + 1,
                verts.join(","),
                self.representatives.r[i],
                self.search.permutations.cycle_notation(h, i)
            )?;
        }
        let cert = &self.search.certificate;
        writeln!(f, "certificate {}, coeff {}", cert.exponents, cert.coefficient)?;
        let verified = cert.verify(&self.permuted);
        write!(
            f,
            "bound {}, AT(permuted) <= {}, certificate {}",
            self.bound,
            cert.at_value,
            if verified { "verified" } else { "NOT verified" }
        )
    }
}
