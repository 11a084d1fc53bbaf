//! Exact scalar arithmetic: the prime fields Q and F_p, the base field F₀
//! (a cyclotomic field or a finite field), and residue fields
//! D₀ = F₀[T]/(g) carrying an explicit abelian Galois group.

mod base;
mod ext;
pub mod linalg;
pub mod poly;
mod prime;
mod residue;

use std::fmt::Debug;
use std::hash::Hash;

pub use base::{BaseField, BaseKind};
pub use ext::SimpleExtension;
pub use prime::{parse_rational, format_rational, PrimeField};
pub(crate) use prime::prime_factors;
pub use residue::{KummerCharacters, ResidueField, Subfield};

use crate::error::Result;

/// A field given as a context object; elements are plain values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Fails with `DivisionByZero` on zero and `NotIrreducible` when a
    /// zero divisor shows that the defining data was not a field.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power; negative exponents invert.
    fn pow_i(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            self.inv(&self.pow(a, e.unsigned_abs()))
        }
    }
}

pub use residue::{BaseElem, Kum0, ResidueElem};
