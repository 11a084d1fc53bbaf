use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::prime::prime_factors;
use super::{poly, Field, PrimeField, SimpleExtension};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// Q(ζ_m) in the power basis of ζ_m modulo Φ_m.
    Cyclotomic { m: u64 },
    /// F_p[X]/(poly) with `poly` irreducible of degree k (little-endian).
    Finite { p: u64, k: u32, poly: Vec<u64> },
}

/// The base field F₀.
#[derive(Debug, Clone)]
pub struct BaseField {
    kind: BaseKind,
    ext: SimpleExtension<PrimeField>,
}

/// Largest field size enumerated by exhaustive searches.
const ENUMERATION_LIMIT: u128 = 1 << 22;

impl BaseField {
    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        let ext = SimpleExtension::new(PrimeField::Rationals, poly::cyclotomic(m))?;
        Ok(Self {
            kind: BaseKind::Cyclotomic { m },
            ext,
        })
    }

    pub fn rationals() -> Self {
        Self::cyclotomic(1).expect("Q")
    }

    /// F_{p^k} defined by `poly` (little-endian, over F_p). The polynomial
    /// is checked to be irreducible.
    pub fn finite(p: u64, k: u32, poly_coeffs: Vec<u64>) -> Result<Self> {
        let fp = PrimeField::modular(p)?;
        let coeffs: Vec<BigRational> = poly_coeffs
            .iter()
            .map(|&c| fp.elem(BigRational::from_integer(c.into())))
            .collect();
        let coeffs = poly::trim(&fp, coeffs);
        if poly::degree(&coeffs) != Some(k as usize) || k == 0 {
            return Err(Error::InvalidInput(format!(
                "defining polynomial of F_{p}^{k} must have degree {k}"
            )));
        }
        let ext = SimpleExtension::new(fp, coeffs)?;
        if !irreducible_over_fp(&ext, p, k) {
            return Err(Error::NotIrreducible(format!(
                "{poly_coeffs:?} is reducible over F_{p}"
            )));
        }
        Ok(Self {
            kind: BaseKind::Finite {
                p,
                k,
                poly: poly_coeffs,
            },
            ext,
        })
    }

    /// F_p itself, presented by the polynomial X.
    pub fn prime(p: u64) -> Result<Self> {
        Self::finite(p, 1, vec![0, 1])
    }

    pub fn kind(&self) -> &BaseKind {
        &self.kind
    }

    pub fn prime_field(&self) -> &PrimeField {
        self.ext.base()
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn from_rational(&self, x: BigRational) -> Vec<BigRational> {
        self.ext.from_base(self.prime_field().elem(x))
    }

    /// Builds an element from power-basis coordinates (reduced).
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let pf = *self.prime_field();
        let c: Vec<BigRational> = coeffs.into_iter().map(|x| pf.elem(x)).collect();
        self.ext.reduce(&poly::trim(&pf, c))
    }

    /// Number of elements, `None` in characteristic zero.
    pub fn size(&self) -> Option<u128> {
        match &self.kind {
            BaseKind::Cyclotomic { .. } => None,
            BaseKind::Finite { p, k, .. } => Some((*p as u128).pow(*k)),
        }
    }

    /// All elements of a finite base field in a fixed order.
    pub fn elements(&self) -> Result<Vec<Vec<BigRational>>> {
        let size = self
            .size()
            .ok_or_else(|| Error::InvalidInput("cannot enumerate an infinite field".into()))?;
        if size > ENUMERATION_LIMIT {
            return Err(Error::budget("base field enumeration", size, ENUMERATION_LIMIT));
        }
        let p = self.characteristic() as u128;
        let n = self.degree();
        Ok((0..size)
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        BigRational::from_integer(BigInt::from(c))
                    })
                    .collect()
            })
            .collect())
    }

    /// Decides whether F₀ contains a primitive m-th root of unity and
    /// returns one when it does.
    pub fn primitive_root(&self, m: u64) -> Option<Vec<BigRational>> {
        if m == 0 {
            return None;
        }
        match &self.kind {
            BaseKind::Cyclotomic { m: big_m } => {
                // μ(Q(ζ_M)) is cyclic of order M for even M and 2M for odd M.
                let (order, gen) = if big_m % 2 == 0 {
                    (*big_m, self.ext.generator())
                } else {
                    (2 * big_m, self.neg(&self.ext.generator()))
                };
                (order % m == 0).then(|| self.pow(&gen, order / m))
            }
            BaseKind::Finite { .. } => {
                let q1 = self.size().expect("finite") - 1;
                if !q1.is_multiple_of(m as u128) {
                    return None;
                }
                let g = self.multiplicative_generator().ok()?;
                Some(self.pow(&g, (q1 / m as u128) as u64))
            }
        }
    }

    pub fn has_primitive_root(&self, m: u64) -> bool {
        self.primitive_root(m).is_some()
    }

    pub fn require_primitive_root(&self, m: u64) -> Result<Vec<BigRational>> {
        self.primitive_root(m).ok_or(Error::MissingRootOfUnity(m))
    }

    fn multiplicative_generator(&self) -> Result<Vec<BigRational>> {
        let q1 = self.size().expect("finite") - 1;
        let primes = prime_factors(q1);
        self.elements()?
            .into_iter()
            .find(|x| {
                !self.is_zero(x)
                    && primes
                        .iter()
                        .all(|&l| !self.is_one(&self.pow(x, (q1 / l) as u64)))
            })
            .ok_or_else(|| Error::Verification("no multiplicative generator".into()))
    }

    /// Roots in F₀ of a polynomial over F₀. Supported for Q, F_p and finite
    /// extensions; `None` for proper cyclotomic fields.
    pub fn roots(&self, p: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
        let p = poly::trim(self, p.to_vec());
        if p.is_empty() {
            return None;
        }
        match &self.kind {
            BaseKind::Finite { .. } => {
                let elems = self.elements().ok()?;
                Some(
                    elems
                        .into_iter()
                        .filter(|x| self.is_zero(&poly::eval(self, &p, x)))
                        .collect(),
                )
            }
            BaseKind::Cyclotomic { .. } if self.degree() == 1 => {
                let rat: Vec<BigRational> = p.iter().map(|c| c[0].clone()).collect();
                rational_roots(&rat).map(|rs| rs.into_iter().map(|r| self.from_rational(r)).collect())
            }
            BaseKind::Cyclotomic { .. } => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            BaseKind::Cyclotomic { m } if self.degree() == 1 => format!("Q (ζ_{m})"),
            BaseKind::Cyclotomic { m } => format!("Q(ζ_{m})"),
            BaseKind::Finite { p, k, .. } if *k == 1 => format!("F_{p}"),
            BaseKind::Finite { p, k, .. } => format!("F_{p}^{k}"),
        }
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for BaseField {}

fn irreducible_over_fp(ext: &SimpleExtension<PrimeField>, p: u64, k: u32) -> bool {
    // Ben-Or: no factor of degree i ≤ k/2 divides f, i.e. gcd(X^{p^i} - X, f) = 1.
    let fp = *ext.base();
    let x = ext.generator();
    let mut xp = x.clone();
    for _ in 1..=(k / 2) {
        xp = ext.pow(&xp, p);
        let diff = poly::trim(&fp, ext.sub(&xp, &x));
        if diff.is_empty() {
            return false;
        }
        match poly::ext_gcd(&fp, &diff, ext.modulus()) {
            Ok((g, _)) if g.len() == 1 => {}
            _ => return false,
        }
    }
    true
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u128()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 1 << 24 {
            return None;
        }
    }
    Some(out)
}

/// Rational roots by the rational root theorem.
fn rational_roots(p: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut ints = poly::to_integer_poly(p);
    let mut roots = Vec::new();
    if ints.first().is_some_and(|c| c.is_zero()) {
        roots.push(BigRational::zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let lead = ints.last()?.clone();
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(&lead)?;
    let q = PrimeField::Rationals;
    let rat: Vec<BigRational> = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    for a in &num_divs {
        for b in &den_divs {
            for sign in [BigInt::one(), -BigInt::one()] {
                let r = BigRational::new(a * &sign, b.clone());
                if !roots.contains(&r) && poly::eval(&q, &rat, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

impl Field for BaseField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        self.ext.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ext.one()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.ext.from_i64(n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ext.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.ext.inv(a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.ext.is_zero(a)
    }
    fn characteristic(&self) -> u64 {
        self.ext.characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn q_zeta4_has_minus_one() {
        let f = BaseField::cyclotomic(4).unwrap();
        let r = f.primitive_root(2).unwrap();
        assert_eq!(r, f.from_i64(-1));
        let i = f.primitive_root(4).unwrap();
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
    }

    #[test]
    fn f17_has_eighth_root() {
        let f = BaseField::prime(17).unwrap();
        let r = f.primitive_root(8).unwrap();
        assert!(f.is_one(&f.pow(&r, 8)));
        assert!(!f.is_one(&f.pow(&r, 4)));
        assert!(f.primitive_root(32).is_none());
    }

    #[test]
    fn q_zeta3_lacks_fourth_root() {
        let f = BaseField::cyclotomic(3).unwrap();
        assert!(!f.has_primitive_root(4));
        // ζ_3 is odd order, so Q(ζ_3) = Q(ζ_6) has sixth roots.
        let z6 = f.primitive_root(6).unwrap();
        assert!(f.is_one(&f.pow(&z6, 6)));
        assert!(!f.is_one(&f.pow(&z6, 3)));
        assert!(!f.is_one(&f.pow(&z6, 2)));
    }

    #[test]
    fn rationals_have_only_sign_roots() {
        let f = BaseField::rationals();
        assert_eq!(f.degree(), 1);
        assert!(f.has_primitive_root(1));
        assert!(f.has_primitive_root(2));
        assert!(!f.has_primitive_root(3));
        assert!(!f.has_primitive_root(4));
    }

    #[test]
    fn finite_irreducibility() {
        assert!(BaseField::finite(3, 2, vec![1, 0, 1]).is_ok()); // x^2+1 over F3
        assert!(BaseField::finite(5, 2, vec![1, 0, 1]).is_err()); // 2^2 = -1 in F5
        let f9 = BaseField::finite(3, 2, vec![1, 0, 1]).unwrap();
        assert!(f9.has_primitive_root(8));
        assert_eq!(f9.elements().unwrap().len(), 9);
    }

    #[test]
    fn rational_root_finding() {
        let f = BaseField::rationals();
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        let p: Vec<_> = [1, -3, 2].iter().map(|&c| f.from_i64(c)).collect();
        let roots = f.roots(&p).unwrap();
        assert_eq!(roots, vec![vec![BigRational::new(1.into(), 2.into())], vec![q(1)]]);
        let p: Vec<_> = [-2, 0, 1].iter().map(|&c| f.from_i64(c)).collect();
        assert!(f.roots(&p).unwrap().is_empty());
    }
}
