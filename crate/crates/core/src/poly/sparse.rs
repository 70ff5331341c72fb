use std::collections::BTreeMap;
use std::fmt;

use super::ExponentVector;
use crate::arith::{FieldDescriptor, Scalar};
use crate::error::{Error, Result};

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: FieldDescriptor,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl SparsePoly {
    pub fn zero(field: FieldDescriptor) -> Self {
        SparsePoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.descriptor());
        p.add_term(ExponentVector::one(), c);
        p
    }

    /// Σ c_v x_v.
    pub fn linear(field: FieldDescriptor, form: &[(usize, Scalar)]) -> Self {
        let mut p = Self::zero(field);
        for (v, c) in form {
            p.add_term(ExponentVector::from_vertices([*v]), c.clone());
        }
        p
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds c·x^α, dropping the term if it cancels.
    pub fn add_term(&mut self, alpha: ExponentVector, c: Scalar) {
        assert_eq!(c.descriptor(), self.field, "coefficient from another field");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let s = &*slot.get() + &c;
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &SparsePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SparsePoly {
        let mut out = Self::zero(self.field);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.checked_add(&other.scale(&-self.field.one()))
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = Self::zero(self.field);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        Ok(out)
    }

    /// Evaluates at `point[v - 1]` for x_v.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        let mut acc = self.field.zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in a.iter() {
                let x = point
                    .get(v - 1)
                    .ok_or_else(|| Error::Invalid(format!("no value for x{v}")))?
                    .embed(&self.field)?;
                t = &t * &x.pow(u64::from(e));
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Terms whose exponents are all below `k`.
    pub fn filter_below(&self, k: u32) -> SparsePoly {
        SparsePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.max_exponent() < k)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
