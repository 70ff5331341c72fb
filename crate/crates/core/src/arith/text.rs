//! Text forms: `a/b` (or `a`), `[c0, c1, …]@zeta_s`, `r mod p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{root_of_unity, Cyclotomic, FieldDescriptor, Scalar};
use crate::error::{Error, Result};

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write_rational(f, q),
            Scalar::Cyclotomic(c) => {
                write!(f, "[")?;
                for (i, x) in c.coords().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_rational(f, x)?;
                }
                write!(f, "]@zeta_{}", c.order())
            }
            Scalar::Prime(r) => write!(f, "{} mod {}", r.value(), r.modulus()),
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl Scalar {
    /// Parses a scalar of the given field.
    ///
    /// Besides the canonical forms this accepts any rational literal in any
    /// field, and `zeta^j`, `-zeta^j`, `zeta` in cyclotomic fields.
    pub fn parse(text: &str, field: &FieldDescriptor) -> Result<Scalar> {
        let t = text.trim();
        match *field {
            FieldDescriptor::PrimeField(p) => {
                if let Some((r, m)) = t.split_once("mod") {
                    let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))?;
                    if m != p {
                        return Err(Error::FieldMismatch(format!("gf:{m}"), field.to_string()));
                    }
                    return field.from_rational(parse_rational(r)?);
                }
                field.from_rational(parse_rational(t)?)
            }
            FieldDescriptor::Cyclotomic(s) => {
                if let Some(body) = t.strip_prefix('[') {
                    let (inner, tail) = body
                        .split_once(']')
                        .ok_or_else(|| Error::Parse(format!("unterminated coordinate list {t:?}")))?;
                    let order: u32 = tail
                        .trim()
                        .strip_prefix("@zeta_")
                        .and_then(|o| o.trim().parse().ok())
                        .ok_or_else(|| Error::Parse(format!("missing @zeta_s suffix in {t:?}")))?;
                    if order != s {
                        return Err(Error::FieldMismatch(format!("zeta:{order}"), field.to_string()));
                    }
                    let coords = inner
                        .split(',')
                        .filter(|c| !c.trim().is_empty())
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    return Ok(Scalar::Cyclotomic(Cyclotomic::from_coords(s, coords)?));
                }
                let (neg, rest) = match t.strip_prefix('-') {
                    Some(r) if r.trim_start().starts_with("zeta") => (true, r.trim_start()),
                    _ => (false, t),
                };
                if let Some(exp) = rest.strip_prefix("zeta") {
                    let j: i64 = match exp.trim().strip_prefix('^') {
                        Some(e) => e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {t:?}")))?,
                        None if exp.trim().is_empty() => 1,
                        None => return Err(Error::Parse(format!("bad root of unity {t:?}"))),
                    };
                    let z = root_of_unity(s, j)?;
                    return Ok(if neg { -z } else { z });
                }
                field.from_rational(parse_rational(t)?)
            }
            FieldDescriptor::Rational => Ok(Scalar::Rational(parse_rational(t)?)),
        }
    }
}
