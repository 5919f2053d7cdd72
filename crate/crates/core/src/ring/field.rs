use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field elements are stored as rationals. Over a prime field every stored
/// value is an integer in `0..p`.
pub type Scalar = BigRational;

/// The coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(&Scalar::from_integer(BigInt::from(v)))
            .expect("integers always reduce")
    }

    /// Maps a rational into this field. Fails over 𝔽ₚ when p divides the
    /// denominator.
    pub fn reduce(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => Ok(x.clone()),
            FieldSpec::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let den = x.denom().mod_floor(&p_big);
                if den.is_zero() {
                    return Err(Error::BaseChange(format!(
                        "denominator of {x} is divisible by {p}"
                    )));
                }
                let num = x.numer().mod_floor(&p_big).to_u64().unwrap();
                let den = den.to_u64().unwrap();
                let v = mul_mod(num, inv_mod(den, *p as u64), *p as u64);
                Ok(Scalar::from_integer(BigInt::from(v)))
            }
        }
    }

    fn residue(x: &Scalar) -> u64 {
        x.numer().to_u64().expect("prime-field element out of range")
    }

    fn wrap(v: u64) -> Scalar {
        Scalar::from_integer(BigInt::from(v))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a + b,
            FieldSpec::PrimeField(p) => {
                Self::wrap((Self::residue(a) + Self::residue(b)) % *p as u64)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => -a,
            FieldSpec::PrimeField(p) => {
                let r = Self::residue(a);
                Self::wrap(if r == 0 { 0 } else { *p as u64 - r })
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a * b,
            FieldSpec::PrimeField(p) => {
                Self::wrap(mul_mod(Self::residue(a), Self::residue(b), *p as u64))
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::PrimeField(p) => Self::wrap(inv_mod(Self::residue(a), *p as u64)),
        })
    }

    /// Canonical text form of an element: `-3/7`, `5`, `0`.
    pub fn format(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Parses `a`, `-a`, or `a/b` and reduces into the field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(s.parse::<BigInt>().map_err(|_| bad())?),
        };
        self.reduce(&q)
    }

    /// Residues print in the symmetric range so that small negative integers
    /// read naturally; this is only used for human-facing display.
    pub fn display_signed(&self, a: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => a.clone(),
            FieldSpec::PrimeField(p) => {
                let r = Self::residue(a) as i64;
                let p = *p as i64;
                Scalar::from_integer(BigInt::from(if r > p / 2 { r - p } else { r }))
            }
        }
    }

    pub fn is_negative_for_display(&self, a: &Scalar) -> bool {
        self.display_signed(a).is_negative()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p < 2^31 keeps every intermediate product below 2^62.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = FieldSpec::prime(5).unwrap();
        let two = f5.from_i64(2);
        let three = f5.from_i64(3);
        assert_eq!(f5.mul(&two, &three), f5.one());
        assert_eq!(f5.from_i64(-2), f5.from_i64(3));
        assert_eq!(f5.inv(&two).unwrap(), three);
        assert!(f5.inv(&f5.zero()).is_none());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2).is_ok());
    }

    #[test]
    fn parse_normalizes_fractions() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.format(&q.parse("2/4").unwrap()), "1/2");
        assert_eq!(q.format(&q.parse("-6/3").unwrap()), "-2");
        let f5 = FieldSpec::PrimeField(5);
        assert_eq!(f5.format(&f5.parse("1/2").unwrap()), "3");
        assert!(f5.parse("1/5").is_err());
        assert!(q.parse("1/0").is_err());
    }
}
