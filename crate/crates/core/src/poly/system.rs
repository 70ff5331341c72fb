use std::collections::BTreeMap;
use std::fmt;

use super::{ExponentVector, LinearForms, SparsePoly};
use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{internal, invalid, Error, Result};
use crate::hypergraph::{content_lines, Hypergraph};

/// A hypergraph polynomial ∏_e Σ_{i∈e} a_{e,i} x_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    hypergraph: Hypergraph,
    forms: LinearForms,
}

impl LinearSystem {
    /// `coeffs[i]` lists the coefficients of edge i in the order of its (sorted) vertices.
    pub fn new(hypergraph: Hypergraph, field: FieldDescriptor, coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        if coeffs.len() != hypergraph.m() {
            return Err(invalid!("{} coefficient lists for {} edges", coeffs.len(), hypergraph.m()));
        }
        let mut forms = Vec::with_capacity(coeffs.len());
        for (i, (e, cs)) in hypergraph.edges().iter().zip(coeffs).enumerate() {
            if e.len() != cs.len() {
                return Err(invalid!("edge {i} has {} vertices but {} coefficients", e.len(), cs.len()));
            }
            let cs = cs.into_iter().map(|c| c.embed(&field)).collect::<Result<Vec<_>>>()?;
            forms.push(e.iter().copied().zip(cs).collect());
        }
        let forms = LinearForms::new(hypergraph.n(), field, forms)?;
        Ok(LinearSystem { hypergraph, forms })
    }

    /// The fully balanced polynomial ∏_e Σ_{i∈e} x_i.
    pub fn all_ones(hypergraph: Hypergraph, field: FieldDescriptor) -> Result<Self> {
        let coeffs = hypergraph.edges().iter().map(|e| vec![field.one(); e.len()]).collect();
        Self::new(hypergraph, field, coeffs)
    }

    /// Builds a system with integer coefficients.
    pub fn from_ints(hypergraph: Hypergraph, field: FieldDescriptor, coeffs: &[&[i64]]) -> Result<Self> {
        let cs = coeffs.iter().map(|row| row.iter().map(|&c| field.from_i64(c)).collect()).collect();
        Self::new(hypergraph, field, cs)
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn field(&self) -> FieldDescriptor {
        self.forms.field()
    }

    pub fn forms(&self) -> &LinearForms {
        &self.forms
    }

    pub fn m(&self) -> usize {
        self.hypergraph.m()
    }

    /// Coefficients of edge i, aligned with its vertices.
    pub fn coeffs(&self, i: usize) -> impl Iterator<Item = &Scalar> + '_ {
        self.forms.forms()[i].iter().map(|(_, c)| c)
    }

    /// a_{e_i, v}; panics if v ∉ e_i.
    pub fn coeff(&self, i: usize, v: usize) -> &Scalar {
        let pos = self.hypergraph.edge(i).binary_search(&v).expect("vertex not in edge");
        &self.forms.forms()[i][pos].1
    }

    pub fn coefficient_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.m()).map(|i| self.coeffs(i).cloned().collect()).collect()
    }

    /// Only the first `t` edges.
    pub fn prefix(&self, t: usize) -> LinearSystem {
        let h = Hypergraph::new(self.hypergraph.n(), self.hypergraph.edges()[..t].to_vec()).unwrap();
        let rows = self.coefficient_rows()[..t].to_vec();
        LinearSystem::new(h, self.field(), rows).unwrap()
    }

    /// Full or `cap`-truncated expansion (see [`LinearForms::expand_truncated`]).
    pub fn expand_truncated(&self, cap: Option<u32>, guard: usize) -> Result<SparsePoly> {
        self.forms.expand_truncated(cap, guard)
    }

    pub fn coefficient_of(&self, target: &ExponentVector) -> Scalar {
        self.forms.coefficient_of(target)
    }

    /// AT(p): the least k such that some monomial with all exponents < k has nonzero
    /// coefficient, found by expanding with caps 1, 2, …. The certificate is the
    /// smallest such monomial in the dense lexicographic order.
    pub fn alon_tarsi_number(&self, guard: usize) -> Result<ATCertificate> {
        for k in 1..=self.m() as u32 + 1 {
            let p = self.expand_truncated(Some(k), guard)?;
            if let Some((alpha, c)) = p.terms().iter().next() {
                return Ok(ATCertificate::new(alpha.clone(), c.clone()));
            }
        }
        // a product of nonzero linear forms is a nonzero polynomial of degree m
        Err(internal!("no monomial with exponents ≤ m survived"))
    }

    /// Coefficient of x_v in bracket i becomes a_{e_i, σ_{e_i}(v)}.
    pub fn apply_permutations(&self, perms: &PermutationAssignment) -> Result<LinearSystem> {
        perms.validate(&self.hypergraph)?;
        let rows = self
            .hypergraph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| e.iter().enumerate().map(|(j, _)| self.coeff(i, perms.maps[i][j]).clone()).collect())
            .collect();
        LinearSystem::new(self.hypergraph.clone(), self.field(), rows)
    }

    /// For each edge, a pair of its vertices carrying different coefficients.
    pub fn fully_unbalanced_check(&self) -> UnbalanceReport {
        let witnesses: Vec<Option<(usize, usize)>> = self
            .forms
            .forms()
            .iter()
            .map(|form| {
                let (v0, c0) = &form[0];
                form.iter().find(|(_, c)| c != c0).map(|(v, _)| (*v, *v0).min((*v0, *v)))
            })
            .collect();
        UnbalanceReport { fully_unbalanced: witnesses.iter().all(Option::is_some), witnesses }
    }

    /// Value at a point given per vertex; every vertex of some edge must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<usize, Scalar>) -> Result<Scalar> {
        let zero = self.field().zero();
        let dense: Vec<Scalar> = (1..=self.hypergraph.n())
            .map(|v| point.get(&v).cloned().unwrap_or_else(|| zero.clone()))
            .collect();
        for e in self.hypergraph.edges() {
            if let Some(v) = e.iter().find(|v| !point.contains_key(v)) {
                return Err(invalid!("no value assigned to x{v}"));
            }
        }
        self.forms.evaluate(&dense)
    }

    /// Parses the text document written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = content_lines(text).collect();
        let mut it = lines.iter();
        let field_line = it.next().ok_or_else(|| Error::Parse("empty system".into()))?;
        let field: FieldDescriptor = field_line
            .strip_prefix("field:")
            .ok_or_else(|| Error::Parse("expected 'field: …' first".into()))?
            .trim()
            .parse()?;
        if it.next().map(|l| l.trim()) != Some("hypergraph:") {
            return Err(Error::Parse("expected 'hypergraph:'".into()));
        }
        let rest: Vec<&str> = it.copied().collect();
        let split = rest
            .iter()
            .position(|l| l.trim() == "coefficients:")
            .ok_or_else(|| Error::Parse("expected 'coefficients:'".into()))?;
        let h = Hypergraph::parse(&rest[..split].join("\n"))?;
        let rows = &rest[split + 1..];
        if rows.len() != h.m() {
            return Err(Error::Parse(format!("{} coefficient lines for {} edges", rows.len(), h.m())));
        }
        let coeffs = rows
            .iter()
            .map(|row| row.split(';').map(|c| Scalar::parse(c, &field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LinearSystem::new(h, field, coeffs).map_err(|e| match e {
            Error::Invalid(s) => Error::Parse(s),
            other => other,
        })
    }

    /// The polynomial with every coefficient rewritten in a larger field.
    pub fn embed(&self, field: FieldDescriptor) -> Result<LinearSystem> {
        LinearSystem::new(self.hypergraph.clone(), field, self.coefficient_rows())
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field: {}", self.field())?;
        writeln!(f, "hypergraph:")?;
        write!(f, "{}", self.hypergraph)?;
        writeln!(f, "coefficients:")?;
        for i in 0..self.m() {
            let row: Vec<String> = self.coeffs(i).map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" ; "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbalanceReport {
    pub fully_unbalanced: bool,
    /// Per edge, two vertices (smaller first) with distinct coefficients.
    pub witnesses: Vec<Option<(usize, usize)>>,
}

/// A bijection σ_{e_i} of the vertices of every edge: `maps[i][j] = σ_{e_i}(e_i[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationAssignment {
    pub maps: Vec<Vec<usize>>,
}

impl PermutationAssignment {
    pub fn identity(h: &Hypergraph) -> Self {
        PermutationAssignment { maps: h.edges().to_vec() }
    }

    /// Swaps σ-images at u and w in edge i (right-multiplies σ_{e_i} by (u w)).
    pub fn transpose(&mut self, h: &Hypergraph, i: usize, u: usize, w: usize) {
        let e = h.edge(i);
        let a = e.binary_search(&u).expect("u not in edge");
        let b = e.binary_search(&w).expect("w not in edge");
        self.maps[i].swap(a, b);
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        if self.maps.len() != h.m() {
            return Err(invalid!("{} permutations for {} edges", self.maps.len(), h.m()));
        }
        for (i, (e, map)) in h.edges().iter().zip(&self.maps).enumerate() {
            let mut image = map.clone();
            image.sort_unstable();
            if image != *e {
                return Err(invalid!("permutation {i} is not a bijection of edge {e:?}"));
            }
        }
        Ok(())
    }

    pub fn inverse(&self, h: &Hypergraph) -> Self {
        let maps = h
            .edges()
            .iter()
            .zip(&self.maps)
            .map(|(e, map)| {
                let mut inv = vec![0; e.len()];
                for (j, &img) in map.iter().enumerate() {
                    inv[e.binary_search(&img).unwrap()] = e[j];
                }
                inv
            })
            .collect();
        PermutationAssignment { maps }
    }

    pub fn is_identity(&self, h: &Hypergraph) -> bool {
        self.maps.iter().zip(h.edges()).all(|(m, e)| m == e)
    }

    /// σ_{e_i} in cycle notation, fixed points omitted; `id` for the identity.
    pub fn cycle_notation(&self, h: &Hypergraph, i: usize) -> String {
        let e = h.edge(i);
        let map = &self.maps[i];
        let img = |v: usize| map[e.binary_search(&v).unwrap()];
        let mut seen = vec![false; e.len()];
        let mut out = String::new();
        for (j, &start) in e.iter().enumerate() {
            if seen[j] || img(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[j] = true;
            let mut v = img(start);
            while v != start {
                seen[e.binary_search(&v).unwrap()] = true;
                cycle.push(v);
                v = img(v);
            }
            let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            out.push_str(&format!("({})", body.join(" ")));
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }
}

/// A monomial x^α with nonzero coefficient, witnessing AT ≤ max α + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ATCertificate {
    pub exponents: ExponentVector,
    pub coefficient: Scalar,
    pub at_value: u32,
}

impl ATCertificate {
    pub fn new(exponents: ExponentVector, coefficient: Scalar) -> Self {
        let at_value = exponents.max_exponent() + 1;
        ATCertificate { exponents, coefficient, at_value }
    }

    /// Recomputes the coefficient from scratch and compares.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        !self.coefficient.is_zero() && sys.coefficient_of(&self.exponents) == self.coefficient
    }
}

impl fmt::Display for ATCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AT <= {}, certificate {}, coeff {}", self.at_value, self.exponents, self.coefficient)
    }
}
