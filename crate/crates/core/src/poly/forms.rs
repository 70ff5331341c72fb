use std::collections::HashMap;

use super::{ExponentVector, SparsePoly};
use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{invalid, Error, Result};

/// Default bound on the number of live partial terms during an expansion.
pub const DEFAULT_TERM_GUARD: usize = 5_000_000;

/// A product of linear forms Σ a_v x_v over variables x_1..x_n, each form with
/// distinct variables and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForms {
    n: usize,
    field: FieldDescriptor,
    forms: Vec<Vec<(usize, Scalar)>>,
}

impl LinearForms {
    pub fn new(n: usize, field: FieldDescriptor, forms: Vec<Vec<(usize, Scalar)>>) -> Result<Self> {
        field.validate()?;
        for (i, form) in forms.iter().enumerate() {
            if form.is_empty() {
                return Err(invalid!("form {i} is empty"));
            }
            let mut seen = Vec::with_capacity(form.len());
            for (v, c) in form {
                if *v == 0 || *v > n {
                    return Err(invalid!("form {i} uses x{v} outside 1..={n}"));
                }
                if seen.contains(v) {
                    return Err(invalid!("form {i} repeats x{v}"));
                }
                seen.push(*v);
                if c.descriptor() != field {
                    return Err(Error::FieldMismatch(c.descriptor().to_string(), field.to_string()));
                }
                if c.is_zero() {
                    return Err(invalid!("form {i} has a zero coefficient at x{v}"));
                }
            }
        }
        Ok(LinearForms { n, field, forms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn forms(&self) -> &[Vec<(usize, Scalar)>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Multiplies the forms out one at a time. With `caps`, a partial term whose
    /// exponent of x_v exceeds `caps[v - 1]` is dropped; exponents only grow, so the
    /// result is exactly the full expansion restricted to monomials within the caps.
    pub fn expand(&self, caps: Option<&[u32]>, guard: usize) -> Result<SparsePoly> {
        if let Some(c) = caps {
            if c.len() != self.n {
                return Err(invalid!("expected {} caps, got {}", self.n, c.len()));
            }
        }
        let mut live: HashMap<Box<[u16]>, Scalar> = HashMap::new();
        live.insert(vec![0u16; self.n].into_boxed_slice(), self.field.one());
        for form in &self.forms {
            let mut next: HashMap<Box<[u16]>, Scalar> = HashMap::with_capacity(live.len() * 2);
            for (key, c) in &live {
                for (v, a) in form {
                    let e = key[v - 1];
                    if caps.is_some_and(|caps| u32::from(e) >= caps[v - 1]) {
                        continue;
                    }
                    let mut k = key.clone();
                    k[v - 1] = e + 1;
                    let t = c * a;
                    match next.get_mut(&k) {
                        Some(s) => *s = &*s + &t,
                        None => {
                            next.insert(k, t);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            if next.len() > guard {
                return Err(Error::Budget(format!("expansion exceeded {guard} terms")));
            }
            live = next;
        }
        let mut out = SparsePoly::zero(self.field);
        for (k, c) in live {
            out.add_term(ExponentVector::from_dense(&k), c);
        }
        Ok(out)
    }

    /// Expansion keeping only monomials with every exponent below `cap`.
    pub fn expand_truncated(&self, cap: Option<u32>, guard: usize) -> Result<SparsePoly> {
        match cap {
            Some(0) => Err(invalid!("cap must be positive")),
            Some(k) => self.expand(Some(&vec![k - 1; self.n]), guard),
            None => self.expand(None, guard),
        }
    }

    /// The coefficient of x^target, by a dynamic program over the forms that keeps
    /// only partial monomials dividing the target and still completable by the
    /// remaining forms.
    pub fn coefficient_of(&self, target: &ExponentVector) -> Scalar {
        let zero = self.field.zero();
        if target.total_degree() as usize != self.forms.len() || target.max_vertex() > self.n {
            return zero;
        }
        let support: Vec<(usize, u32)> = target.iter().collect();
        let mut slot = vec![usize::MAX; self.n + 1];
        for (s, &(v, _)) in support.iter().enumerate() {
            slot[v] = s;
        }
        let restricted: Vec<Vec<(usize, &Scalar)>> = self
            .forms
            .iter()
            .map(|f| f.iter().filter(|(v, _)| slot[*v] != usize::MAX).map(|(v, c)| (slot[*v], c)).collect())
            .collect();
        if restricted.iter().any(Vec::is_empty) {
            return zero;
        }
        // remaining[t][s]: forms after t that involve slot s
        let mut remaining = vec![vec![0u32; support.len()]; restricted.len()];
        for t in (0..restricted.len().saturating_sub(1)).rev() {
            remaining[t] = remaining[t + 1].clone();
            for &(s, _) in &restricted[t + 1] {
                remaining[t][s] += 1;
            }
        }
        let mut live: HashMap<Box<[u32]>, Scalar> = HashMap::new();
        live.insert(vec![0u32; support.len()].into_boxed_slice(), self.field.one());
        for (t, form) in restricted.iter().enumerate() {
            let mut next: HashMap<Box<[u32]>, Scalar> = HashMap::with_capacity(live.len() * 2);
            for (key, c) in &live {
                for &(s, a) in form {
                    if key[s] >= support[s].1 {
                        continue;
                    }
                    let mut k = key.clone();
                    k[s] += 1;
                    // every slot of this form just lost one remaining opportunity
                    if form.iter().any(|&(s2, _)| support[s2].1 - k[s2] > remaining[t][s2]) {
                        continue;
                    }
                    let term = c * a;
                    match next.get_mut(&k) {
                        Some(x) => *x = &*x + &term,
                        None => {
                            next.insert(k, term);
                        }
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            if next.is_empty() {
                return zero;
            }
            live = next;
        }
        debug_assert!(live.len() <= 1);
        live.into_values().next().unwrap_or(zero)
    }

    /// Product of the forms at `point[v - 1]`; values are embedded into the field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        let mut acc = self.field.one();
        for form in &self.forms {
            let mut s = self.field.zero();
            for (v, a) in form {
                let x = point
                    .get(v - 1)
                    .ok_or_else(|| invalid!("no value assigned to x{v}"))?
                    .embed(&self.field)?;
                s = &s + &(a * &x);
            }
            acc = &acc * &s;
        }
        Ok(acc)
    }

    /// The smallest monomial (in the dense lexicographic order) with nonzero
    /// coefficient and exponents within `caps`, if any.
    pub fn smallest_within(&self, caps: &[u32], guard: usize) -> Result<Option<(ExponentVector, Scalar)>> {
        let p = self.expand(Some(caps), guard)?;
        Ok(p.terms().iter().next().map(|(a, c)| (a.clone(), c.clone())))
    }
}
