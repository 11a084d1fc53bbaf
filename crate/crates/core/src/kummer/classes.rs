//! Homogeneous elements of D modulo F*. A class is (σ, u) with u ∈ D₀*
//! normalized modulo F₀*; it stands for u·x_σ·F*.

use crate::crossed::{CrossedProduct, Elem};
use crate::error::{Error, Result};
use crate::grades::GradeVector;
use crate::scalars::{Field, KummerCharacters, ResidueElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    /// Index of σ in `h.elements()`.
    pub sigma: usize,
    pub unit: ResidueElem,
}

/// Class arithmetic for one algebra and one Kummer exponent m.
#[derive(Debug, Clone)]
pub struct KummerContext<'a> {
    pub d: &'a CrossedProduct,
    pub m: u64,
    pub chars: KummerCharacters,
}

/// Largest divisor of deg(D) whose primitive root of unity lies in F₀.
pub fn kummer_exponent(d: &CrossedProduct) -> u64 {
    let deg = d.degree();
    (1..=deg)
        .rev()
        .find(|e| deg.is_multiple_of(*e) && d.d0.base().has_primitive_root(*e))
        .unwrap_or(1)
}

impl<'a> KummerContext<'a> {
    pub fn new(d: &'a CrossedProduct, m: u64) -> Result<Self> {
        let chars = d.d0.kummer_characters(m)?;
        Ok(Self { d, m, chars })
    }

    pub fn with_default_exponent(d: &'a CrossedProduct) -> Result<Self> {
        Self::new(d, kummer_exponent(d))
    }

    pub fn identity(&self) -> ClassKey {
        ClassKey {
            sigma: 0,
            unit: self.d.d0.one(),
        }
    }

    pub fn key(&self, sigma: usize, unit: &ResidueElem) -> Result<ClassKey> {
        Ok(ClassKey {
            sigma,
            unit: self.d.d0.normalize_mod_base(unit)?,
        })
    }

    /// Class of a nonzero homogeneous element.
    pub fn class_of(&self, y: &Elem) -> Result<ClassKey> {
        let (s, _, u) = self
            .d
            .as_homog(y)
            .ok_or_else(|| Error::InvalidInput("generator is not a nonzero homogeneous element".into()))?;
        self.key(s, u)
    }

    /// The representative u·x_σ.
    pub fn element(&self, c: &ClassKey) -> Elem {
        self.d.term(c.sigma, c.unit.clone(), GradeVector::zero(self.d.rank()))
    }

    /// Unnormalized product of the representatives: (σ+τ, u·ω_σ(v)·f(σ,τ)).
    fn raw_mul(&self, a: &ClassKey, b: &ClassKey) -> (usize, ResidueElem, GradeVector) {
        let d0 = &self.d.d0;
        let f = self.d.fs.get_idx(a.sigma, b.sigma);
        let u = d0.mul(&d0.mul(&a.unit, &d0.apply(self.d.omega_idx(a.sigma), &b.unit)), &f.unit);
        (self.d.sum_idx(a.sigma, b.sigma), u, f.grade.clone())
    }

    pub fn mul(&self, a: &ClassKey, b: &ClassKey) -> Result<ClassKey> {
        let (s, u, _) = self.raw_mul(a, b);
        self.key(s, &u)
    }

    pub fn inv(&self, a: &ClassKey) -> Result<ClassKey> {
        let y = self.d.inv_homog(&self.element(a))?;
        self.class_of(&y)
    }

    pub fn commute(&self, a: &ClassKey, b: &ClassKey) -> bool {
        self.raw_mul(a, b) == self.raw_mul(b, a)
    }

    pub fn pow(&self, a: &ClassKey, k: u64) -> Result<ClassKey> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// y^m ∈ F for the representative y.
    pub fn mth_power_in_f(&self, a: &ClassKey) -> Result<bool> {
        Ok(self.pow(a, self.m)? == self.identity())
    }
}
