//! Arithmetic in Q(ζ_s) = Q[x]/(Φ_s(x)).
//!
//! Elements are coordinate vectors of length φ(s) in the power basis
//! 1, ζ, …, ζ^{φ(s)-1}. Because Φ_s is irreducible the quotient is a field,
//! so an element is zero iff every coordinate is zero.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The s-th cyclotomic field: its order and the integer minimal polynomial of ζ_s.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// Φ_s, low degree first; monic.
    phi: Vec<BigInt>,
}

impl CyclotomicField {
    /// Shared, cached field context for order `s`.
    pub fn get(s: u32) -> Result<Arc<CyclotomicField>> {
        if s < 2 {
            return Err(Error::InvalidField(format!(
                "cyclotomic order must be at least 2, got {s}"
            )));
        }
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        if let Some(f) = guard.get(&s) {
            return Ok(f.clone());
        }
        let field = Arc::new(CyclotomicField {
            order: s,
            phi: cyclotomic_polynomial(s, &mut guard),
        });
        guard.insert(s, field.clone());
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(s), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduces a coefficient vector (low degree first) modulo Φ_s in place.
    pub(crate) fn reduce(&self, coords: &mut Vec<BigRational>) {
        let d = self.degree();
        if coords.len() > d {
            for i in (d..coords.len()).rev() {
                let lead = std::mem::replace(&mut coords[i], BigRational::zero());
                if lead.is_zero() {
                    continue;
                }
                for (j, pj) in self.phi[..d].iter().enumerate() {
                    if !pj.is_zero() {
                        coords[i - d + j] -= &lead * BigRational::from_integer(pj.clone());
                    }
                }
            }
        }
        coords.resize(d, BigRational::zero());
    }

    pub(crate) fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    prod[i + j] += ai * bj;
                }
            }
        }
        self.reduce(&mut prod);
        prod
    }

    /// Inverse via the extended Euclidean algorithm in Q[x].
    pub(crate) fn inv(&self, a: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut r0: Vec<BigRational> = self.phi.iter().cloned().map(BigRational::from_integer).collect();
        let mut r1: Vec<BigRational> = a.to_vec();
        trim(&mut r1);
        if r1.is_empty() {
            return Err(Error::DivisionByZero);
        }
        // invariant: s_i * a ≡ r_i (mod Φ)
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul_plain(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd(a, Φ) has positive degree, impossible for Φ irreducible and a ≠ 0
                return Err(Error::Internal("cyclotomic inverse: non-trivial gcd".into()));
            }
        }
        let c = r1[0].clone();
        let mut out: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
        self.reduce(&mut out);
        Ok(out)
    }

    /// Coordinates of ζ^j, j already reduced to [0, s).
    pub(crate) fn power_of_zeta(&self, j: u32) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); j as usize + 1];
        v[j as usize] = BigRational::one();
        self.reduce(&mut v);
        v
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Φ_n(x) = (x^n − 1) / ∏_{d|n, d<n} Φ_d(x), using the already cached smaller ones where present.
fn cyclotomic_polynomial(n: u32, cache: &mut HashMap<u32, Arc<CyclotomicField>>) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = if d == 1 {
            vec![-BigInt::one(), BigInt::one()]
        } else if let Some(f) = cache.get(&d) {
            f.phi.clone()
        } else {
            let p = cyclotomic_polynomial(d, cache);
            cache.insert(d, Arc::new(CyclotomicField { order: d, phi: p.clone() }));
            p
        };
        num = exact_div_monic(&num, &phi_d);
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dn] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dn + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn mul_plain(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = &b[db];
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / lead;
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

/// x ↦ x^stride substitution used when embedding Q(ζ_s) into Q(ζ_t), s | t.
pub(crate) fn spread(coords: &[BigRational], stride: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); (coords.len().max(1) - 1) * stride + 1];
    for (i, c) in coords.iter().enumerate() {
        out[i * stride] = c.clone();
    }
    out
}

/// Least nonnegative residue of `x` modulo `p`.
pub(crate) fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = x.mod_floor(&m);
    debug_assert!(!r.is_negative());
    r.try_into().expect("residue fits in u64")
}
