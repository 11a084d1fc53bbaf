use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;
use crate::error::{Error, Result};

/// Q or F_p. Elements of F_p are stored as integers in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeField {
    Rationals,
    Modular(u64),
}

impl PrimeField {
    pub fn modular(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField::Modular(p))
    }

    fn reduce(&self, x: BigRational) -> BigRational {
        match self {
            PrimeField::Rationals => x,
            PrimeField::Modular(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator divisible by p");
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn elem(&self, x: BigRational) -> BigRational {
        self.reduce(x)
    }

    /// Number of elements, `None` for Q.
    pub fn size(&self) -> Option<u64> {
        match self {
            PrimeField::Rationals => None,
            PrimeField::Modular(p) => Some(*p),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(p);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(p))
    } else {
        None
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` (distinct, ascending).
pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An F_p element, already reduced into `[0, p)`.
fn residue(a: &BigRational) -> u128 {
    a.numer().to_u64().expect("reduced residue") as u128
}

fn small(x: u64) -> BigRational {
    BigRational::from_integer(x.into())
}

impl Field for PrimeField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        self.reduce(BigRational::from_integer(n.into()))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            PrimeField::Rationals => a + b,
            PrimeField::Modular(p) => small(((residue(a) + residue(b)) % *p as u128) as u64),
        }
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        match self {
            PrimeField::Rationals => -a,
            PrimeField::Modular(p) => small(((*p as u128 - residue(a)) % *p as u128) as u64),
        }
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            PrimeField::Rationals => a * b,
            PrimeField::Modular(p) => small(((residue(a) * residue(b)) % *p as u128) as u64),
        }
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            PrimeField::Rationals => Ok(a.recip()),
            PrimeField::Modular(p) => {
                let p = BigInt::from(*p);
                let inv = mod_inverse(a.numer(), &p).ok_or(Error::DivisionByZero)?;
                Ok(BigRational::from_integer(inv))
            }
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        match self {
            PrimeField::Rationals => 0,
            PrimeField::Modular(p) => *p,
        }
    }
}

/// Parses `"a/b"` (or `"a"`) with `b > 0` and `gcd(a, b) = 1`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(Error::InvalidInput(format!(
            "rational {s:?} must have a positive denominator"
        )));
    }
    if !num.gcd(&den).is_one() {
        return Err(Error::InvalidInput(format!("rational {s:?} is not in lowest terms")));
    }
    Ok(BigRational::new_raw(num, den))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
