use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponents of a monomial, stored sparsely as increasing (vertex, exponent) pairs.
///
/// Ordering is lexicographic on the dense vector (α_1, α_2, …).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector {
    terms: Vec<(usize, u32)>,
}

impl ExponentVector {
    /// The constant monomial.
    pub fn one() -> Self {
        Self::default()
    }

    /// Pairs may come in any order; repeated vertices are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut terms: Vec<(usize, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        terms.sort_unstable();
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(terms.len());
        for (v, e) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        ExponentVector { terms: merged }
    }

    /// `dense[i]` is the exponent of vertex i + 1.
    pub fn from_dense<T: Copy + Into<u32>>(dense: &[T]) -> Self {
        ExponentVector {
            terms: dense
                .iter()
                .enumerate()
                .map(|(i, &e)| (i + 1, e.into()))
                .filter(|p| p.1 > 0)
                .collect(),
        }
    }

    /// The product of the given variables, with multiplicity.
    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        Self::from_pairs(vs.into_iter().map(|v| (v, 1)))
    }

    pub fn dense(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(v, e) in &self.terms {
            out[v - 1] = e;
        }
        out
    }

    pub fn get(&self, v: usize) -> u32 {
        self.terms
            .binary_search_by_key(&v, |p| p.0)
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.terms.iter().copied()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().map(|p| p.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|p| p.1).sum()
    }

    pub fn max_vertex(&self) -> usize {
        self.terms.last().map_or(0, |p| p.0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        Self::from_pairs(self.iter().chain(other.iter()))
    }

    /// The monomial divided by x_v, if x_v divides it.
    pub fn div_var(&self, v: usize) -> Option<ExponentVector> {
        let i = self.terms.binary_search_by_key(&v, |p| p.0).ok()?;
        let mut terms = self.terms.clone();
        if terms[i].1 == 1 {
            terms.remove(i);
        } else {
            terms[i].1 -= 1;
        }
        Some(ExponentVector { terms })
    }

    /// Whether every exponent is at most the corresponding one of `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.iter().all(|(v, e)| e <= other.get(v))
    }

    /// Parses `1`, `x1`, `x1*x3^2`, `x2^0*x4` (variables may repeat).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" {
            return Ok(Self::one());
        }
        let bad = || Error::Parse(format!("not a monomial: {t:?}"));
        let mut pairs = Vec::new();
        for factor in t.split('*') {
            let f = factor.trim().strip_prefix('x').ok_or_else(bad)?;
            let (v, e) = match f.split_once('^') {
                Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (f, 1),
            };
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            pairs.push((v, e));
        }
        Ok(Self::from_pairs(pairs))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // the first vertex where they differ is present in exactly one
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal if ea != eb => return ea.cmp(&eb),
                    Ordering::Equal => {
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
