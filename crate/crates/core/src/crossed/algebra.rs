use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::factor_set::{FactorSet, Homog};
use crate::cohomology::Hom;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grades::{lattice_quotient, FiniteAbelianGroup, GradeVector, GroupElem, Lattice, LatticeQuotient};
use crate::scalars::{Field, ResidueElem, ResidueField};

/// δ_σ = (1/|H|)·Σ_τ gr f(σ,τ), re-verified against
/// gr f(σ,τ) = δ_σ + δ_τ − δ_{σ+τ} on every pair.
pub fn grade_assign(fs: &FactorSet, r: usize) -> Result<Vec<GradeVector>> {
    let h = &fs.h;
    let n = h.order() as usize;
    let inv_n = BigRational::new(1.into(), (n as i64).into());
    let delta: Vec<GradeVector> = (0..n)
        .map(|i| {
            (0..n)
                .fold(GradeVector::zero(r), |acc, j| acc.add(&fs.get_idx(i, j).grade))
                .scale(&inv_n)
        })
        .collect();
    if let Some((i, j)) = grading_defect(fs, &delta) {
        let e = h.elements();
        return Err(Error::InvalidFactorSet(format!(
            "grading identity fails at ({:?}, {:?})",
            e[i], e[j]
        )));
    }
    Ok(delta)
}

/// First pair (σ,τ) where gr f(σ,τ) ≠ δ_σ + δ_τ − δ_{σ+τ}.
pub fn grading_defect(fs: &FactorSet, delta: &[GradeVector]) -> Option<(usize, usize)> {
    let h = &fs.h;
    let n = h.order() as usize;
    let e = h.elements();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| {
        let k = h.index_of(&h.add(&e[i], &e[j]));
        fs.get_idx(i, j).grade != delta[i].add(&delta[j]).sub(&delta[k])
    })
}

/// An element Σ a·t^γ·x_σ of D, keyed by (index of σ, γ ∈ Γ_F).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Elem {
    pub terms: BTreeMap<(usize, GradeVector), ResidueElem>,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamificationKind {
    Inertial,
    TotallyRamified,
    Semiramified,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub kind: RamificationKind,
    pub invariant_factors: Vec<u64>,
    pub rank: usize,
    pub exponent: u64,
    pub residue_degree: usize,
    pub dimension: u64,
    pub degree: u64,
}

#[derive(Debug, Clone)]
pub struct ThetaReport {
    /// θ_D on the basis of Γ_D/Γ_F.
    pub hom: Hom,
    pub surjective: bool,
    /// ker θ as a subset of H.
    pub kernel: Vec<GroupElem>,
}

/// D = (D₀F, H, (ω, f)) with its unique grading.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    pub d0: Arc<ResidueField>,
    pub gamma_f: Lattice,
    pub fs: FactorSet,
    /// δ_σ for σ in `h.elements()` order.
    pub delta: Vec<GradeVector>,
    pub gamma_d: Lattice,
    /// Γ_D/Γ_F.
    pub quotient: LatticeQuotient,
    omegas: Vec<GroupElem>,
    sums: Vec<usize>,
    negs: Vec<usize>,
}

impl CrossedProduct {
    pub fn build(d0: Arc<ResidueField>, gamma_f: Lattice, fs: FactorSet) -> Result<Self> {
        Self::build_with(d0, gamma_f, fs, Exec::default())
    }

    pub fn build_with(d0: Arc<ResidueField>, gamma_f: Lattice, fs: FactorSet, exec: Exec) -> Result<Self> {
        let report = fs.validate_with(&d0, &gamma_f, exec);
        if let Some(v) = report.violations.first() {
            let more = report.violations.len() - 1;
            let suffix = if more > 0 { format!(" (and {more} more)") } else { String::new() };
            return Err(Error::InvalidFactorSet(format!("{v}{suffix}")));
        }
        Self::build_unchecked(d0, gamma_f, fs)
    }

    /// Builds without re-running the axiom check (the grading is still verified).
    pub fn build_unchecked(d0: Arc<ResidueField>, gamma_f: Lattice, fs: FactorSet) -> Result<Self> {
        let r = gamma_f.rank();
        let delta = grade_assign(&fs, r)?;
        let mut gens: Vec<GradeVector> = gamma_f.basis().to_vec();
        gens.extend(delta.iter().cloned());
        let gamma_d = Lattice::from_generators(&gens, r)?;
        let quotient = lattice_quotient(&gamma_d, &gamma_f)?;
        let h = &fs.h;
        let elems = h.elements();
        let n = elems.len();
        if quotient.group().order() != n as u64 {
            return Err(Error::InvalidFactorSet(format!(
                "Gamma_D/Gamma_F has order {} but |H| = {n}: sigma -> delta_sigma + Gamma_F is not injective",
                quotient.group().order()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for d in &delta {
            if !seen.insert(quotient.reduce(d)?) {
                return Err(Error::InvalidFactorSet("two basis elements x_sigma share a grade class".into()));
            }
        }
        let g = d0.group().clone();
        let omegas = elems.iter().map(|s| fs.omega(&g, s)).collect();
        let sums = elems
            .iter()
            .flat_map(|a| elems.iter().map(|b| h.index_of(&h.add(a, b))).collect::<Vec<_>>())
            .collect();
        let negs = elems.iter().map(|a| h.index_of(&h.neg(a))).collect();
        Ok(Self {
            d0,
            gamma_f,
            fs,
            delta,
            gamma_d,
            quotient,
            omegas,
            sums,
            negs,
        })
    }

    pub fn h(&self) -> &FiniteAbelianGroup {
        &self.fs.h
    }

    pub fn rank(&self) -> usize {
        self.gamma_f.rank()
    }

    pub fn sum_idx(&self, i: usize, j: usize) -> usize {
        self.sums[i * self.h().order() as usize + j]
    }

    pub fn neg_idx(&self, i: usize) -> usize {
        self.negs[i]
    }

    /// θ(σ) ∈ G for σ given by index.
    pub fn omega_idx(&self, i: usize) -> &GroupElem {
        &self.omegas[i]
    }

    /// [D:F] = |H|·[D₀:F₀].
    pub fn dimension(&self) -> u64 {
        self.h().order() * self.d0.degree() as u64
    }

    pub fn degree(&self) -> u64 {
        let dim = self.dimension();
        let d = (dim as f64).sqrt().round() as u64;
        debug_assert_eq!(d * d, dim);
        d
    }

    pub fn zero(&self) -> Elem {
        Elem::default()
    }

    pub fn one(&self) -> Elem {
        self.term(0, self.d0.one(), GradeVector::zero(self.rank()))
    }

    /// a·t^γ·x_σ.
    pub fn term(&self, sigma: usize, a: ResidueElem, gamma: GradeVector) -> Elem {
        let mut e = Elem::default();
        if !self.d0.is_zero(&a) {
            e.terms.insert((sigma, gamma), a);
        }
        e
    }

    pub fn basis(&self, sigma: &[u64]) -> Elem {
        self.term(self.h().index_of(sigma), self.d0.one(), GradeVector::zero(self.rank()))
    }

    pub fn from_homog(&self, sigma: usize, u: &Homog) -> Elem {
        self.term(sigma, u.unit.clone(), u.grade.clone())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = a.clone();
        for (k, v) in &b.terms {
            self.accumulate(&mut out, k.clone(), v);
        }
        out
    }

    fn accumulate(&self, out: &mut Elem, key: (usize, GradeVector), v: &ResidueElem) {
        match out.terms.get_mut(&key) {
            Some(x) => {
                *x = self.d0.add(x, v);
                if self.d0.is_zero(x) {
                    out.terms.remove(&key);
                }
            }
            None => {
                if !self.d0.is_zero(v) {
                    out.terms.insert(key, v.clone());
                }
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem {
            terms: a.terms.iter().map(|(k, v)| (k.clone(), self.d0.neg(v))).collect(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::default();
        for ((s, g1), x) in &a.terms {
            for ((t, g2), y) in &b.terms {
                let f = self.fs.get_idx(*s, *t);
                let unit = self.d0.mul(&self.d0.mul(x, &self.d0.apply(&self.omegas[*s], y)), &f.unit);
                let grade = g1.add(g2).add(&f.grade);
                self.accumulate(&mut out, (self.sum_idx(*s, *t), grade), &unit);
            }
        }
        out
    }

    pub fn pow(&self, a: &Elem, k: u64) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// The single term of a nonzero homogeneous element.
    pub fn as_homog<'a>(&self, a: &'a Elem) -> Option<(usize, &'a GradeVector, &'a ResidueElem)> {
        if a.terms.len() != 1 {
            return None;
        }
        let ((s, g), u) = a.terms.iter().next().expect("one term");
        Some((*s, g, u))
    }

    pub fn is_homogeneous(&self, a: &Elem) -> bool {
        a.terms.len() <= 1
    }

    /// Grade δ_σ + γ of a nonzero homogeneous element.
    pub fn grade_of(&self, a: &Elem) -> Option<GradeVector> {
        self.as_homog(a).map(|(s, g, _)| self.delta[s].add(g))
    }

    pub fn inv_homog(&self, a: &Elem) -> Result<Elem> {
        let (s, g, u) = self.as_homog(a).ok_or_else(|| {
            Error::InvalidInput("only nonzero homogeneous elements are inverted".into())
        })?;
        let ns = self.negs[s];
        let f = self.fs.get_idx(ns, s);
        let c = self
            .d0
            .inv(&self.d0.mul(&self.d0.apply(&self.omegas[ns], u), &f.unit))?;
        Ok(self.term(ns, c, g.neg().sub(&f.grade)))
    }

    /// y·b·y⁻¹ for homogeneous y.
    pub fn conjugate(&self, y: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(&self.mul(y, b), &self.inv_homog(y)?))
    }

    pub fn commute(&self, a: &Elem, b: &Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Whether `a` lies in F = F₀[Γ_F] (σ = 0, coefficients in F₀).
    pub fn in_f(&self, a: &Elem) -> bool {
        a.terms.iter().all(|((s, _), u)| *s == 0 && self.d0.as_base(u).is_some())
    }

    /// Whether `a` lies in D₀ (σ = 0, grade 0).
    pub fn in_d0(&self, a: &Elem) -> Option<ResidueElem> {
        match a.terms.len() {
            0 => Some(self.d0.zero()),
            1 => {
                let ((s, g), u) = a.terms.iter().next().expect("one term");
                (*s == 0 && g.is_zero()).then(|| u.clone())
            }
            _ => None,
        }
    }

    /// σ ∈ H with δ_σ + Γ_F equal to the class of `v` ∈ Γ_D.
    pub fn sigma_of_grade(&self, v: &GradeVector) -> Result<usize> {
        let class = self.quotient.reduce(v)?;
        self.delta
            .iter()
            .position(|d| self.quotient.reduce(d).ok().as_ref() == Some(&class))
            .ok_or_else(|| Error::Verification("grade class without basis element".into()))
    }

    pub fn theta(&self) -> Result<ThetaReport> {
        let g = self.d0.group();
        let q = self.quotient.group().clone();
        let images = (0..q.rank())
            .map(|j| {
                let rep = self.quotient.section(&q.basis(j));
                let s = self.sigma_of_grade(&rep)?;
                Ok(self.omegas[s].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let hom = Hom::new(q, g.clone(), images)?;
        let surjective = g.span(&hom.images).len() as u64 == g.order();
        let h = self.h();
        let kernel = h
            .elements()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| self.omegas[*i] == g.zero())
            .map(|(_, e)| e)
            .collect();
        Ok(ThetaReport { hom, surjective, kernel })
    }

    pub fn classify(&self) -> Classification {
        let hs = self.h().order();
        let n = self.d0.degree() as u64;
        let kind = if hs == 1 {
            RamificationKind::Inertial
        } else if n == 1 {
            RamificationKind::TotallyRamified
        } else if n == hs {
            RamificationKind::Semiramified
        } else {
            RamificationKind::Mixed
        };
        let q = self.quotient.group();
        Classification {
            kind,
            invariant_factors: q.factors().to_vec(),
            rank: q.rank(),
            exponent: q.exponent(),
            residue_degree: n as usize,
            dimension: self.dimension(),
            degree: self.degree(),
        }
    }
}
