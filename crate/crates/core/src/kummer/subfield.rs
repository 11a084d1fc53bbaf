use std::collections::{BTreeMap, BTreeSet};

use super::classes::{ClassKey, KummerContext};
use crate::cohomology::{h2_trivial, Cocycle2, Hom};
use crate::crossed::Elem;
use crate::error::{Error, Result};
use crate::grades::presentation::{present, present_subgroup, Presented};
use crate::grades::{FiniteAbelianGroup, GroupElem};
use crate::scalars::{linalg, Field, Kum0, Subfield};

/// A Kummer graded subfield K = F(A) of D.
#[derive(Debug, Clone)]
pub struct KummerSubfield {
    pub m: u64,
    /// kum(K/F) = A ⊆ D*/F*, in invariant-factor coordinates.
    pub kum: Presented<ClassKey, ClassKey>,
    pub k0: Subfield,
    /// kum(K₀/F₀), canonically presented inside Hom(G, μ_m).
    pub kum0: Kum0,
    /// Γ_K/Γ_F as a subgroup R of H (elements are H-elements).
    pub r: Presented<GroupElem, GroupElem>,
    /// ψ: kum(K/F) → Γ_K/Γ_F.
    pub psi: Hom,
    /// Section γ̄ ↦ y_γ̄ (lexicographically least kum-coordinates over γ̄),
    /// aligned with `r.elements`.
    pub generators: Vec<ClassKey>,
    pub alpha: Cocycle2,
    pub alpha_class: GroupElem,
}

/// The data that identifies K up to the theorems' round trip.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Signature {
    pub k0_stabilizer: BTreeSet<GroupElem>,
    pub r: BTreeSet<GroupElem>,
    pub alpha_class: GroupElem,
}

impl KummerSubfield {
    /// [K:F].
    pub fn dimension(&self) -> usize {
        self.kum.len()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            k0_stabilizer: self.k0.stabilizer.clone(),
            r: self.r.elements.iter().cloned().collect(),
            alpha_class: self.alpha_class.clone(),
        }
    }

    /// Sorted class set: identifies K as a subalgebra.
    pub fn class_set(&self) -> BTreeSet<ClassKey> {
        self.kum.elements.iter().cloned().collect()
    }

    /// Galois type: invariant factors of kum(K/F) ≅ Gal(K/F).
    pub fn galois_type(&self) -> &[u64] {
        self.kum.group.factors()
    }
}

impl<'a> KummerContext<'a> {
    /// F(A) for the subgroup A of D*/F* generated by the classes of `gens`.
    pub fn f_of_a(&self, gens: &[Elem], budget: usize) -> Result<KummerSubfield> {
        let keys = gens.iter().map(|g| self.class_of(g)).collect::<Result<Vec<_>>>()?;
        self.f_of_classes(&keys, budget)
    }

    pub fn f_of_classes(&self, gens: &[ClassKey], budget: usize) -> Result<KummerSubfield> {
        let d = self.d;
        let h = d.h();
        for (i, g) in gens.iter().enumerate() {
            if !self.mth_power_in_f(g)? {
                return Err(Error::Hypothesis(format!("generator {i}: its {}-th power is not in F", self.m)));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !self.commute(&gens[i], &gens[j]) {
                    return Err(Error::Hypothesis(format!("generators {i} and {j} do not commute")));
                }
            }
        }
        let kum = present(self.identity(), gens, |a, b| self.mul(a, b), |a| Ok(a.clone()), budget)?;
        // per-σ F₀-independence of the unit parts: [F(A):F] = |A|
        let mut by_sigma: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        for c in &kum.elements {
            by_sigma.entry(c.sigma).or_default().push(c.unit.clone());
        }
        for (s, units) in &by_sigma {
            if linalg::rank(d.d0.base(), units.clone()) != units.len() {
                return Err(Error::Hypothesis(format!(
                    "dimension mismatch: classes over {:?} are F0-linearly dependent",
                    h.element(*s)
                )));
            }
        }
        let deg0: Vec<_> = by_sigma.get(&0).cloned().unwrap_or_default();
        let k0 = d.d0.subfield_spanned(&deg0)?;
        let kum0 = self.chars.kum_of_subfield(&d.d0, &k0.stabilizer)?;
        // KUM(K/F) ∩ D₀ = KUM(K₀/F₀) up to F₀*
        let from_a: BTreeSet<_> = deg0.iter().cloned().collect();
        let from_k0: BTreeSet<_> = kum0.reps.iter().cloned().collect();
        if from_a != from_k0 {
            return Err(Error::Verification(
                "degree-zero part of kum(K/F) differs from kum(K0/F0)".into(),
            ));
        }
        let r_elems: Vec<GroupElem> = by_sigma.keys().map(|&s| h.element(s)).collect();
        let r = present_subgroup(h, &r_elems)?;
        if r.len() != r_elems.len() {
            return Err(Error::Verification("grade classes of kum(K/F) do not form a subgroup".into()));
        }
        if kum.len() != kum0.order() * r.len() {
            return Err(Error::Verification(format!(
                "sequence 1 -> kum(K0/F0) -> kum(K/F) -> Gamma_K/Gamma_F -> 0 not exact: {} != {}·{}",
                kum.len(),
                kum0.order(),
                r.len()
            )));
        }
        let psi_of = |c: &ClassKey| r.coords_of(&h.element(c.sigma)).cloned().expect("grade class in R");
        let psi_images = (0..kum.group.rank())
            .map(|j| psi_of(kum.element_at(&kum.group.basis(j)).expect("basis element")))
            .collect();
        let psi = Hom::new(kum.group.clone(), r.group.clone(), psi_images)?;
        // lexicographically least kum-coordinates over each γ̄
        let mut order: Vec<usize> = (0..kum.len()).collect();
        order.sort_by(|&a, &b| kum.coords[a].cmp(&kum.coords[b]));
        let generators: Vec<ClassKey> = r
            .elements
            .iter()
            .map(|g| {
                let s = h.index_of(g);
                let i = *order.iter().find(|&&i| kum.elements[i].sigma == s).expect("class over every element of R");
                kum.elements[i].clone()
            })
            .collect();
        let mut k = KummerSubfield {
            m: self.m,
            kum,
            k0,
            kum0,
            r,
            psi,
            generators,
            alpha: Cocycle2::trivial(FiniteAbelianGroup::trivial(), FiniteAbelianGroup::trivial()),
            alpha_class: Vec::new(),
        };
        let section: Vec<ClassKey> = k.r.group.elements().iter().map(|e| k.generators[k.r.index_of_coords(e)].clone()).collect();
        k.alpha = self.alpha_for_section(&k, &section)?;
        let h2 = h2_trivial(&k.r.group, &k.kum0.characters.group, true)?;
        k.alpha_class = h2.class_of(&k.alpha)?;
        Ok(k)
    }

    /// Character coordinates in kum(K₀/F₀) of a degree-zero class.
    pub fn kum0_coords(&self, k: &KummerSubfield, c: &ClassKey) -> Result<GroupElem> {
        if c.sigma != 0 {
            return Err(Error::Verification("class is not of degree zero".into()));
        }
        let chi = self
            .chars
            .character_of(&self.d.d0, &c.unit)
            .ok_or_else(|| Error::Verification("degree-zero class is not a Kummer element".into()))?;
        k.kum0
            .characters
            .coords_of(&chi)
            .cloned()
            .ok_or_else(|| Error::Verification("character outside kum(K0/F0)".into()))
    }

    /// α(q, q′) = s(q)·s(q′)·s(q+q′)⁻¹ for a section s given on
    /// `k.r.group.elements()`.
    pub fn alpha_for_section(&self, k: &KummerSubfield, section: &[ClassKey]) -> Result<Cocycle2> {
        let q = &k.r.group;
        let qe = q.elements();
        let d0 = &self.d.d0;
        // (u x_σ)(w x_σ)⁻¹ = u w⁻¹
        let inverses = section.iter().map(|c| d0.inv(&c.unit)).collect::<Result<Vec<_>>>()?;
        let mut table = Vec::with_capacity(qe.len() * qe.len());
        for a in &qe {
            for b in &qe {
                let ab = q.index_of(&q.add(a, b));
                let prod = self.mul(&section[q.index_of(a)], &section[q.index_of(b)])?;
                debug_assert_eq!(prod.sigma, section[ab].sigma);
                let v = self.key(0, &d0.mul(&prod.unit, &inverses[ab]))?;
                table.push(self.kum0_coords(k, &v)?);
            }
        }
        Cocycle2::new(q.clone(), k.kum0.characters.group.clone(), table)
    }
}

trait CoordsIndex {
    fn index_of_coords(&self, c: &[u64]) -> usize;
}

impl CoordsIndex for Presented<GroupElem, GroupElem> {
    fn index_of_coords(&self, c: &[u64]) -> usize {
        self.coords.iter().position(|x| x == c).expect("coordinates of a presented element")
    }
}
