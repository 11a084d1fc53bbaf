use super::{poly, Field};
use crate::error::{Error, Result};

/// `K[T]/(modulus)` for a monic modulus of degree `n ≥ 1`; elements are
/// coefficient vectors of length exactly `n` in the power basis.
#[derive(Debug, Clone)]
pub struct SimpleExtension<K: Field> {
    base: K,
    modulus: Vec<K::Elem>,
}

impl<K: Field> SimpleExtension<K> {
    pub fn new(base: K, modulus: Vec<K::Elem>) -> Result<Self> {
        let modulus = poly::trim(&base, modulus);
        match poly::degree(&modulus) {
            None | Some(0) => Err(Error::InvalidInput(
                "defining polynomial must have degree at least 1".into(),
            )),
            Some(_) => {
                let modulus = poly::monic(&base, &modulus)?;
                Ok(Self { base, modulus })
            }
        }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn modulus(&self) -> &[K::Elem] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an arbitrary polynomial into canonical form.
    pub fn reduce(&self, p: &[K::Elem]) -> Vec<K::Elem> {
        let mut r = if p.len() > self.degree() {
            poly::divrem(&self.base, p, &self.modulus)
                .expect("monic modulus")
                .1
        } else {
            p.to_vec()
        };
        r.resize(self.degree(), self.base.zero());
        r
    }

    pub fn from_base(&self, c: K::Elem) -> Vec<K::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c;
        v
    }

    /// The class of `T`.
    pub fn generator(&self) -> Vec<K::Elem> {
        self.reduce(&[self.base.zero(), self.base.one()])
    }

    /// `Some(c)` when `a` is the constant `c`.
    pub fn as_base(&self, a: &[K::Elem]) -> Option<K::Elem> {
        if a[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(a[0].clone())
        } else {
            None
        }
    }
}

impl<K: Field> Field for SimpleExtension<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_base(self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.degree() == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        self.reduce(&poly::mul(&self.base, a, b))
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(vec![self.base.inv(&a[0])?]);
        }
        let (g, s) = poly::ext_gcd(&self.base, a, &self.modulus)?;
        if g.len() != 1 {
            return Err(Error::NotIrreducible(format!(
                "found a zero divisor sharing a factor of degree {} with the modulus",
                g.len() - 1
            )));
        }
        Ok(self.reduce(&s))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}
