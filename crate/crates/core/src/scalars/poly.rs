//! Dense univariate polynomials over a [`Field`], little-endian coefficient
//! vectors with no trailing zeros (the zero polynomial is empty).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Field;
use crate::error::{Error, Result};

pub type Poly<E> = Vec<E>;

pub fn trim<K: Field>(k: &K, mut p: Poly<K::Elem>) -> Poly<K::Elem> {
    while p.last().is_some_and(|c| k.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Poly<K::Elem> {
    let n = a.len().max(b.len());
    let zero = k.zero();
    let out = (0..n)
        .map(|i| k.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(k, out)
}

pub fn neg<K: Field>(k: &K, a: &[K::Elem]) -> Poly<K::Elem> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn sub<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Poly<K::Elem> {
    add(k, a, &neg(k, b))
}

pub fn scale<K: Field>(k: &K, a: &[K::Elem], c: &K::Elem) -> Poly<K::Elem> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub fn mul<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Poly<K::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> Result<(Poly<K::Elem>, Poly<K::Elem>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = k.inv(&b[db])?;
    let mut r = trim(k, a.to_vec());
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![k.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = k.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, bj));
        }
        q[shift] = c;
        r = trim(k, r);
    }
    Ok((trim(k, q), r))
}

pub fn monic<K: Field>(k: &K, a: &[K::Elem]) -> Result<Poly<K::Elem>> {
    let d = degree(a).ok_or(Error::DivisionByZero)?;
    let inv = k.inv(&a[d])?;
    Ok(scale(k, a, &inv))
}

/// Returns `(g, s)` with `g = gcd(a, b)` monic and `s·a ≡ g (mod b)`.
pub fn ext_gcd<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> Result<(Poly<K::Elem>, Poly<K::Elem>)> {
    let (mut r0, mut r1) = (trim(k, a.to_vec()), trim(k, b.to_vec()));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1)?;
        let s = sub(k, &s0, &mul(k, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let d = degree(&r0).ok_or(Error::DivisionByZero)?;
    let inv = k.inv(&r0[d])?;
    Ok((scale(k, &r0, &inv), scale(k, &s0, &inv)))
}

pub fn eval<K: Field>(k: &K, p: &[K::Elem], x: &K::Elem) -> K::Elem {
    p.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// The m-th cyclotomic polynomial over Z, as rationals.
pub fn cyclotomic(m: u64) -> Vec<BigRational> {
    assert!(m >= 1);
    let q = super::PrimeField::Rationals;
    let mut num: Vec<BigRational> = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic(d);
            num = divrem(&q, &num, &phi_d).expect("monic divisor").0;
        }
    }
    num
}

/// Clears denominators of a rational polynomial and returns integer coefficients.
pub fn to_integer_poly(p: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PrimeField;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![q(-1), q(1)]);
        assert_eq!(cyclotomic(2), vec![q(1), q(1)]);
        assert_eq!(cyclotomic(4), vec![q(1), q(0), q(1)]);
        assert_eq!(cyclotomic(3), vec![q(1), q(1), q(1)]);
        assert_eq!(cyclotomic(8), vec![q(1), q(0), q(0), q(0), q(1)]);
        assert_eq!(cyclotomic(12), vec![q(1), q(0), q(-1), q(0), q(1)]);
    }

    #[test]
    fn division_and_gcd() {
        let k = PrimeField::Rationals;
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = vec![q(-1), q(0), q(1)];
        let b = vec![q(1), q(1)];
        let (quo, rem) = divrem(&k, &a, &b).unwrap();
        assert_eq!(quo, vec![q(-1), q(1)]);
        assert!(rem.is_empty());
        let (g, _) = ext_gcd(&k, &a, &[q(1), q(0), q(1)]).unwrap();
        assert_eq!(g, vec![q(1)]);
        let (g, _) = ext_gcd(&k, &a, &b).unwrap();
        assert_eq!(g, vec![q(1), q(1)]);
    }
}
