//! Exact field arithmetic over Q, Q(ζ_s) and GF(p).
//!
//! A [`Scalar`] always knows which field it lives in. Mixing fields is an
//! error in the `checked_*` API and a panic in the operator impls, which are
//! meant for code that has already validated a common field.

mod cyclotomic;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use cyclotomic::CyclotomicField;

use crate::error::{Error, Result};

/// Which field a scalar belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rational,
    /// Q(ζ_s) with s ≥ 2.
    Cyclotomic(u32),
    /// GF(p), p prime.
    PrimeField(u64),
}

impl FieldDescriptor {
    pub fn cyclotomic(s: u32) -> Result<Self> {
        CyclotomicField::get(s)?;
        Ok(FieldDescriptor::Cyclotomic(s))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    /// Re-checks the construction invariants (useful for descriptors built by hand).
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldDescriptor::Rational => Ok(()),
            FieldDescriptor::Cyclotomic(s) => CyclotomicField::get(s).map(|_| ()),
            FieldDescriptor::PrimeField(p) => Self::prime_field(p).map(|_| ()),
        }
    }

    /// 0 for characteristic-zero fields.
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    /// Image of a rational number; fails in GF(p) when p divides the denominator.
    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match *self {
            FieldDescriptor::Rational => Ok(Scalar::Rational(q)),
            FieldDescriptor::Cyclotomic(s) => {
                let field = CyclotomicField::get(s)?;
                let mut coords = vec![BigRational::zero(); field.degree()];
                coords[0] = q;
                Ok(Scalar::Cyclotomic(Cyclotomic { field, coords }))
            }
            FieldDescriptor::PrimeField(p) => {
                let num = cyclotomic::mod_u64(q.numer(), p);
                let den = cyclotomic::mod_u64(q.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Prime(Residue::new(p, num).mul(&Residue::new(p, den).inv()?)))
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "q"),
            FieldDescriptor::Cyclotomic(s) => write!(f, "zeta:{s}"),
            FieldDescriptor::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl std::str::FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown field descriptor {s:?}"));
        if s == "q" || s == "Q" {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(rest) = s.strip_prefix("zeta:") {
            let order: u32 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::cyclotomic(order);
        }
        if let Some(rest) = s.strip_prefix("gf:") {
            let p: u64 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::prime_field(p);
        }
        Err(bad())
    }
}

/// Trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Element of Q(ζ_s) reduced modulo Φ_s.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coords: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Coordinates in the basis ζ^0, …, ζ^{φ(s)-1}.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn from_coords(s: u32, mut coords: Vec<BigRational>) -> Result<Self> {
        let field = CyclotomicField::get(s)?;
        field.reduce(&mut coords);
        Ok(Cyclotomic { field, coords })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coords == other.coords
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coords.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Scalar::Cyclotomic(self.clone()))
    }
}

/// Canonical residue in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    p: u64,
    r: u64,
}

impl Residue {
    pub fn new(p: u64, r: u64) -> Self {
        Residue { p, r: r % p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.r
    }

    fn add(&self, o: &Residue) -> Residue {
        Residue { p: self.p, r: ((self.r as u128 + o.r as u128) % self.p as u128) as u64 }
    }

    fn neg(&self) -> Residue {
        Residue { p: self.p, r: if self.r == 0 { 0 } else { self.p - self.r } }
    }

    fn mul(&self, o: &Residue) -> Residue {
        Residue { p: self.p, r: ((self.r as u128 * o.r as u128) % self.p as u128) as u64 }
    }

    fn inv(&self) -> Result<Residue> {
        if self.r == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on signed 128-bit values
        let (mut a, mut b) = (self.r as i128, self.p as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Ok(Residue::new(self.p, x0.rem_euclid(self.p as i128) as u64))
    }
}

/// An exact element of one of the supported fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
    Prime(Residue),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// ζ_s^{j mod s} in Q(ζ_s).
pub fn root_of_unity(s: u32, j: i64) -> Result<Scalar> {
    let field = CyclotomicField::get(s)?;
    let e = j.rem_euclid(s as i64) as u32;
    let coords = field.power_of_zeta(e);
    Ok(Scalar::Cyclotomic(Cyclotomic { field, coords }))
}

impl Scalar {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rational,
            Scalar::Cyclotomic(c) => FieldDescriptor::Cyclotomic(c.order()),
            Scalar::Prime(r) => FieldDescriptor::PrimeField(r.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(c) => c.coords.iter().all(|x| x.is_zero()),
            Scalar::Prime(r) => r.r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.descriptor().one()
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Cyclotomic(c) => c.coords[1..]
                .iter()
                .all(|x| x.is_zero())
                .then(|| c.coords[0].clone()),
            Scalar::Prime(_) => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.descriptor().to_string(), other.descriptor().to_string())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
                Scalar::Cyclotomic(Cyclotomic { field: a.field.clone(), coords })
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                let coords = a.field.mul(&a.coords, &b.coords);
                Scalar::Cyclotomic(Cyclotomic { field: a.field.clone(), coords })
            }
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coords: c.field.inv(&c.coords)?,
            }),
            Scalar::Prime(r) => Scalar::Prime(r.inv()?),
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coords: c.coords.iter().map(|x| -x).collect(),
            }),
            Scalar::Prime(r) => Scalar::Prime(r.neg()),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.descriptor().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Maps this value into `target` along the canonical inclusion, when one exists:
    /// Q into any field, Q(ζ_s) into Q(ζ_t) for s | t.
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Scalar> {
        if self.descriptor() == *target {
            return Ok(self.clone());
        }
        let refuse = || {
            Error::FieldMismatch(self.descriptor().to_string(), target.to_string())
        };
        match (self, target) {
            (Scalar::Rational(q), _) => target.from_rational(q.clone()),
            (Scalar::Cyclotomic(c), FieldDescriptor::Cyclotomic(t)) if t % c.order() == 0 => {
                let stride = (t / c.order()) as usize;
                Ok(Scalar::Cyclotomic(Cyclotomic::from_coords(*t, cyclotomic::spread(&c.coords, stride))?))
            }
            (Scalar::Cyclotomic(_), _) => match self.as_rational() {
                Some(q) => target.from_rational(q),
                None => Err(refuse()),
            },
            _ => Err(refuse()),
        }
    }

    /// Small-integer view, used for text output of rationals and residues.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Prime(r) => i64::try_from(r.r).ok(),
            _ => {
                let q = self.as_rational()?;
                if q.is_integer() {
                    i64::try_from(q.numer().clone()).ok()
                } else {
                    None
                }
            }
        }
    }

    /// Sign of a rational value (None outside Q).
    pub fn rational_signum(&self) -> Option<i32> {
        let q = self.as_rational()?;
        Some(if q.is_zero() { 0 } else if q.is_positive() { 1 } else { -1 })
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
