use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_rational::BigRational;

use super::{linalg, poly, BaseField, Field, SimpleExtension};
use crate::error::{Error, Result};
use crate::grades::presentation::{present_subgroup, Presented};
use crate::grades::{FiniteAbelianGroup, GroupElem};

pub type BaseElem = Vec<BigRational>;
pub type ResidueElem = Vec<BaseElem>;

/// D₀ = F₀[T]/(g): a finite abelian Galois extension of F₀ with its Galois
/// group G given by the images of T under a basis of G.
#[derive(Debug, Clone)]
pub struct ResidueField {
    ext: SimpleExtension<BaseField>,
    group: FiniteAbelianGroup,
    generator_images: Vec<ResidueElem>,
    /// For every element of G (in `group.elements()` order) the powers σ(T)^j, j < n.
    autos: Arc<Vec<Vec<ResidueElem>>>,
}

impl ResidueField {
    /// Builds D₀ and verifies: g has the images of T as roots, the images
    /// define an injective homomorphism G → Aut(D₀/F₀), and (over Q and
    /// finite fields) that F₀[T]/(g) is a field.
    pub fn new(
        base: BaseField,
        min_poly: Vec<BaseElem>,
        group: FiniteAbelianGroup,
        generator_images: Vec<ResidueElem>,
    ) -> Result<Self> {
        let ext = SimpleExtension::new(base, min_poly)?;
        let n = ext.degree();
        if group.order() as usize != n {
            return Err(Error::InvalidInput(format!(
                "Galois group of order {} for an extension of degree {n}",
                group.order()
            )));
        }
        if generator_images.len() != group.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator images, got {}",
                group.rank(),
                generator_images.len()
            )));
        }
        let generator_images: Vec<ResidueElem> = generator_images
            .into_iter()
            .map(|img| {
                if img.len() > n {
                    ext.reduce(&img)
                } else {
                    let mut v = img;
                    v.resize(n, ext.base().zero());
                    v
                }
            })
            .collect();
        for (i, img) in generator_images.iter().enumerate() {
            let lifted: Vec<ResidueElem> = ext.modulus().iter().map(|c| ext.from_base(c.clone())).collect();
            if !ext.is_zero(&poly::eval(&ext, &lifted, img)) {
                return Err(Error::InvalidInput(format!(
                    "image of T under Galois generator {i} is not a root of the defining polynomial"
                )));
            }
        }
        let powers_of = |img: &ResidueElem| -> Vec<ResidueElem> {
            let mut out = Vec::with_capacity(n);
            let mut acc = ext.one();
            for _ in 0..n {
                out.push(acc.clone());
                acc = ext.mul(&acc, img);
            }
            out
        };
        let apply_with = |powers: &[ResidueElem], a: &ResidueElem| -> ResidueElem {
            let mut acc = ext.zero();
            for (c, p) in a.iter().zip(powers) {
                if !ext.base().is_zero(c) {
                    acc = ext.add(&acc, &p.iter().map(|x| ext.base().mul(x, c)).collect());
                }
            }
            acc
        };
        let gen_powers: Vec<Vec<ResidueElem>> = generator_images.iter().map(powers_of).collect();
        // images of T for every element, built along the basis and then
        // cross-checked on every edge (homomorphism + relations)
        let order = group.order() as usize;
        let mut images: Vec<Option<ResidueElem>> = vec![None; order];
        images[0] = Some(ext.generator());
        let mut queue = vec![group.zero()];
        while let Some(e) = queue.pop() {
            let img = images[group.index_of(&e)].clone().expect("visited");
            for (i, gp) in gen_powers.iter().enumerate() {
                let next = group.add(&e, &group.basis(i));
                let composed = apply_with(gp, &img);
                let slot = &mut images[group.index_of(&next)];
                match slot {
                    None => {
                        *slot = Some(composed);
                        queue.push(next);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidInput(
                            "Galois generators do not define a homomorphism from G".into(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
        let images: Vec<ResidueElem> = images.into_iter().map(|i| i.expect("connected")).collect();
        let distinct: BTreeSet<&ResidueElem> = images.iter().collect();
        if distinct.len() != order {
            return Err(Error::InvalidInput(
                "Galois action is not faithful: two group elements act identically".into(),
            ));
        }
        let autos = images.iter().map(powers_of).collect();
        let field = Self {
            ext,
            group,
            generator_images,
            autos: Arc::new(autos),
        };
        field.check_is_field()?;
        Ok(field)
    }

    /// The base field viewed as a degree-one residue field.
    pub fn trivial(base: BaseField) -> Self {
        let min_poly = vec![base.zero(), base.one()];
        Self::new(base, min_poly, FiniteAbelianGroup::trivial(), Vec::new()).expect("F₀ over itself")
    }

    fn check_is_field(&self) -> Result<()> {
        let fixed = self.fixed_basis(&self.group.multiples(1))?;
        if fixed.len() != 1 {
            return Err(Error::NotIrreducible(format!(
                "fixed ring of the Galois group has dimension {}",
                fixed.len()
            )));
        }
        // A non-field Galois algebra splits over the fixed ring of some
        // maximal subgroup S; there the orbit polynomial of any non-scalar
        // invariant acquires a root in F₀.
        for s in self.group.subgroups() {
            let index = self.group.order() as usize / s.len();
            if !crate::scalars::prime::is_prime(index as u64) {
                continue;
            }
            let gens: Vec<GroupElem> = s.iter().cloned().collect();
            let basis = self.fixed_basis(&gens)?;
            let Some(theta) = basis.iter().find(|b| self.as_base(b).is_none()) else {
                continue;
            };
            let orbit = self.orbit_polynomial(theta)?;
            if let Some(roots) = self.base().roots(&orbit) {
                if !roots.is_empty() {
                    return Err(Error::NotIrreducible(format!(
                        "the defining polynomial factors (split over a subgroup of index {index})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &BaseField {
        self.ext.base()
    }

    pub fn ext(&self) -> &SimpleExtension<BaseField> {
        &self.ext
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn min_poly(&self) -> &[BaseElem] {
        self.ext.modulus()
    }

    pub fn generator_images(&self) -> &[ResidueElem] {
        &self.generator_images
    }

    pub fn generator(&self) -> ResidueElem {
        self.ext.generator()
    }

    pub fn from_base(&self, c: BaseElem) -> ResidueElem {
        self.ext.from_base(c)
    }

    pub fn as_base(&self, a: &ResidueElem) -> Option<BaseElem> {
        self.ext.as_base(a)
    }

    /// Canonical form of a power-basis coefficient list (reduced, padded).
    pub fn from_coeffs(&self, coeffs: Vec<BaseElem>) -> ResidueElem {
        let coeffs: Vec<BaseElem> = coeffs
            .into_iter()
            .map(|c| self.base().from_coeffs(c))
            .collect();
        self.ext.reduce(&poly::trim(self.base(), coeffs))
    }

    /// σ(a) for σ ∈ G.
    pub fn apply(&self, sigma: &[u64], a: &ResidueElem) -> ResidueElem {
        let powers = &self.autos[self.group.index_of(sigma)];
        let base = self.base();
        let mut acc = self.zero();
        for (c, p) in a.iter().zip(powers) {
            if !base.is_zero(c) {
                for (slot, x) in acc.iter_mut().zip(p) {
                    *slot = base.add(slot, &base.mul(x, c));
                }
            }
        }
        acc
    }

    /// Images of T under every element of G: the roots of g.
    pub fn conjugates_of_generator(&self) -> Vec<ResidueElem> {
        self.autos.iter().map(|p| if self.degree() > 1 { p[1].clone() } else { self.generator() }).collect()
    }

    /// Divides by the first nonzero power-basis coefficient: a canonical
    /// representative of the class of `a` in D₀*/F₀*.
    pub fn normalize_mod_base(&self, a: &ResidueElem) -> Result<ResidueElem> {
        let lead = a
            .iter()
            .find(|c| !self.base().is_zero(c))
            .ok_or(Error::DivisionByZero)?;
        let inv = self.base().inv(lead)?;
        Ok(a.iter().map(|c| self.base().mul(c, &inv)).collect())
    }

    /// F₀-coordinates of `a` (flattened power basis over F₀, then over the
    /// prime field is not needed: linear algebra runs over F₀).
    fn matrix_of(&self, sigma: &[u64]) -> Vec<Vec<BaseElem>> {
        // column j = σ(T^j)
        let powers = &self.autos[self.group.index_of(sigma)];
        let n = self.degree();
        (0..n).map(|i| (0..n).map(|j| powers[j][i].clone()).collect()).collect()
    }

    /// F₀-basis (reduced echelon) of the subspace fixed by `gens`.
    pub fn fixed_basis(&self, gens: &[GroupElem]) -> Result<Vec<ResidueElem>> {
        let n = self.degree();
        let base = self.base();
        let mut rows: Vec<Vec<BaseElem>> = Vec::new();
        for g in gens {
            let m = self.matrix_of(g);
            for (i, mut row) in m.into_iter().enumerate() {
                row[i] = base.sub(&row[i], &base.one());
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Ok((0..n)
                .map(|j| {
                    let mut e = self.zero();
                    e[j] = base.one();
                    e
                })
                .collect());
        }
        let ker = linalg::kernel(base, rows, n);
        Ok(linalg::rref(base, ker).0)
    }

    /// ∏ (X − τθ) over the distinct conjugates τθ; coefficients must lie in F₀.
    pub fn orbit_polynomial(&self, theta: &ResidueElem) -> Result<Vec<BaseElem>> {
        let orbit: BTreeSet<ResidueElem> = self
            .group
            .elements()
            .iter()
            .map(|g| self.apply(g, theta))
            .collect();
        let mut acc: Vec<ResidueElem> = vec![self.one()];
        for c in orbit {
            acc = poly::mul(self, &acc, &[self.neg(&c), self.one()]);
        }
        acc.iter()
            .map(|c| {
                self.as_base(c)
                    .ok_or_else(|| Error::Verification("orbit polynomial not over F₀".into()))
            })
            .collect()
    }

    /// Fixed field of the subgroup S ⊆ G generated by `gens`.
    pub fn fixed_field(&self, gens: &[GroupElem]) -> Result<Subfield> {
        if let Some(bad) = gens.iter().find(|g| !self.group.contains(g)) {
            return Err(Error::NotSubgroup(format!("{bad:?} is not an element of {}", self.group.describe())));
        }
        let s = self.group.span(gens);
        let basis = self.fixed_basis(gens)?;
        let expected = self.group.order() as usize / s.len();
        if basis.len() != expected {
            return Err(Error::Verification(format!(
                "fixed field has degree {} instead of {expected}",
                basis.len()
            )));
        }
        Ok(Subfield {
            stabilizer: s,
            basis,
        })
    }

    /// Stabilizer in G of a set of elements.
    pub fn stabilizer(&self, elems: &[ResidueElem]) -> BTreeSet<GroupElem> {
        self.group
            .elements()
            .into_iter()
            .filter(|g| elems.iter().all(|x| self.apply(g, x) == *x))
            .collect()
    }

    /// The subfield F₀-spanned by a multiplicatively closed set of elements.
    /// Fails unless the span is a field, i.e. equals the fixed field of its
    /// stabilizer.
    pub fn subfield_spanned(&self, elems: &[ResidueElem]) -> Result<Subfield> {
        let stab = self.stabilizer(elems);
        let fixed = self.fixed_field(&stab.into_iter().collect::<Vec<_>>())?;
        let mut span = elems.to_vec();
        span.push(self.one());
        let rank = linalg::rank(self.base(), span);
        if rank != fixed.degree() {
            return Err(Error::InvalidInput(format!(
                "span of the given elements has dimension {rank}, but its fixed field has degree {}",
                fixed.degree()
            )));
        }
        Ok(fixed)
    }

    /// Builds the fixed field of `s` as a standalone residue field together
    /// with the embedding into D₀ (images of the powers of its generator).
    pub fn fixed_field_presented(&self, gens: &[GroupElem]) -> Result<(ResidueField, Vec<ResidueElem>)> {
        let sub = self.fixed_field(gens)?;
        let d = sub.degree();
        let base = self.base().clone();
        if d == 1 {
            return Ok((ResidueField::trivial(base), vec![self.one()]));
        }
        let quotient = self.group.quotient(gens)?;
        let theta = self.primitive_element(&sub)?;
        let mut powers = Vec::with_capacity(d);
        let mut acc = self.one();
        for _ in 0..d {
            powers.push(acc.clone());
            acc = self.mul(&acc, &theta);
        }
        let min_poly = self.orbit_polynomial(&theta)?;
        // coordinates in the θ-power basis: solve Σ c_j θ^j = v
        let n = self.degree();
        let system: Vec<Vec<BaseElem>> = (0..n).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect();
        let images = quotient
            .lifts
            .iter()
            .map(|lift| {
                let g = self.group.reduce(lift);
                let img = self.apply(&g, &theta);
                linalg::solve(self.base(), &system, &img, d)
                    .ok_or_else(|| Error::Verification("conjugate outside the fixed field".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let field = ResidueField::new(base, min_poly, quotient.group.clone(), images)?;
        Ok((field, powers))
    }

    fn primitive_element(&self, sub: &Subfield) -> Result<ResidueElem> {
        let d = sub.degree();
        let orbit_size = |x: &ResidueElem| -> usize {
            self.group
                .elements()
                .iter()
                .map(|g| self.apply(g, x))
                .collect::<BTreeSet<_>>()
                .len()
        };
        for b in &sub.basis {
            if orbit_size(b) == d {
                return Ok(b.clone());
            }
        }
        for k in 1..=64i64 {
            let mut x = self.zero();
            let mut coeff = self.base().one();
            let kk = self.base().from_i64(k);
            for b in &sub.basis {
                x = self.add(&x, &b.iter().map(|c| self.base().mul(c, &coeff)).collect());
                coeff = self.base().mul(&coeff, &kk);
            }
            if orbit_size(&x) == d {
                return Ok(x);
            }
        }
        Err(Error::Verification("no primitive element found for the fixed field".into()))
    }

    /// Characters of G with values in μ_m, for Kummer computations.
    pub fn kummer_characters(&self, m: u64) -> Result<KummerCharacters> {
        KummerCharacters::new(self, m)
    }

    /// kum(D₀/F₀) for this field: requires a primitive m-th root of unity in
    /// F₀ and exp(G) | m.
    pub fn kum0(&self, m: u64) -> Result<Kum0> {
        let chars = self.kummer_characters(m)?;
        chars.kum_of_subfield(self, &BTreeSet::from([self.group.zero()]))
    }
}

impl Field for ResidueField {
    type Elem = ResidueElem;
    fn zero(&self) -> ResidueElem {
        self.ext.zero()
    }
    fn one(&self) -> ResidueElem {
        self.ext.one()
    }
    fn from_i64(&self, n: i64) -> ResidueElem {
        self.ext.from_i64(n)
    }
    fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.ext.add(a, b)
    }
    fn neg(&self, a: &ResidueElem) -> ResidueElem {
        self.ext.neg(a)
    }
    fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        self.ext.mul(a, b)
    }
    fn inv(&self, a: &ResidueElem) -> Result<ResidueElem> {
        self.ext.inv(a)
    }
    fn is_zero(&self, a: &ResidueElem) -> bool {
        self.ext.is_zero(a)
    }
    fn characteristic(&self) -> u64 {
        self.ext.characteristic()
    }
}

/// A subfield of D₀, recorded as the fixed field of its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    pub stabilizer: BTreeSet<GroupElem>,
    /// Reduced echelon F₀-basis.
    pub basis: Vec<ResidueElem>,
}

impl Subfield {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, d0: &ResidueField, x: &ResidueElem) -> bool {
        self.stabilizer.iter().all(|g| d0.apply(g, x) == *x)
    }

    /// Gal(M/F₀) = G/S.
    pub fn galois_group(&self, d0: &ResidueField) -> Result<FiniteAbelianGroup> {
        Ok(d0.group().quotient(&self.stabilizer.iter().cloned().collect::<Vec<_>>())?.group)
    }
}

/// Hom(G, μ_m) with ζ_m fixed, identified with ⊕ Z/gcd(qᵢ, m): the
/// character with coordinates (aᵢ) sends the i-th generator of G to
/// ζ_m^{aᵢ·m/gcd(qᵢ,m)}.
#[derive(Debug, Clone)]
pub struct KummerCharacters {
    pub m: u64,
    pub zeta: BaseElem,
    pub group: FiniteAbelianGroup,
    /// G-generator index for each coordinate of `group`.
    slots: Vec<usize>,
    /// m / gcd(qᵢ, m) for each kept generator.
    steps: Vec<u64>,
    zeta_powers: HashMap<BaseElem, u64>,
}

/// kum(M/F₀) inside the character group, with eigenvector representatives.
#[derive(Debug, Clone)]
pub struct Kum0 {
    pub characters: Presented<GroupElem, GroupElem>,
    /// Normalized representative in D₀* of each class, aligned with
    /// `characters.elements`.
    pub reps: Vec<ResidueElem>,
}

impl Kum0 {
    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

impl KummerCharacters {
    fn new(d0: &ResidueField, m: u64) -> Result<Self> {
        let base = d0.base();
        let zeta = base.require_primitive_root(m)?;
        let mut zeta_powers = HashMap::new();
        let mut acc = base.one();
        for k in 0..m {
            zeta_powers.insert(acc.clone(), k);
            acc = base.mul(&acc, &zeta);
        }
        let mut slots = Vec::new();
        let mut factors = Vec::new();
        let mut steps = Vec::new();
        for (i, &q) in d0.group().factors().iter().enumerate() {
            let c = num_integer::gcd(q, m);
            if c > 1 {
                slots.push(i);
                factors.push(c);
                steps.push(m / c);
            }
        }
        Ok(Self {
            m,
            zeta,
            group: FiniteAbelianGroup::new(factors)?,
            slots,
            steps,
            zeta_powers,
        })
    }

    /// Exponents kᵢ (χ(gᵢ) = ζ^{kᵢ}) for every generator of G.
    fn exponents(&self, d0: &ResidueField, chi: &[u64]) -> Vec<u64> {
        let mut ks = vec![0u64; d0.group().rank()];
        for ((&slot, &step), &a) in self.slots.iter().zip(&self.steps).zip(chi) {
            ks[slot] = a * step % self.m;
        }
        ks
    }

    /// χ(g) as an exponent of ζ_m.
    pub fn evaluate(&self, d0: &ResidueField, chi: &[u64], g: &[u64]) -> u64 {
        let ks = self.exponents(d0, chi);
        ks.iter().zip(g).map(|(k, x)| k * x).sum::<u64>() % self.m
    }

    /// The character by which G acts on `x`, if `x` is a Kummer element
    /// (σ(x) = χ(σ)·x for all σ ∈ G).
    pub fn character_of(&self, d0: &ResidueField, x: &ResidueElem) -> Option<GroupElem> {
        if d0.is_zero(x) {
            return None;
        }
        let inv = d0.inv(x).ok()?;
        let g = d0.group();
        let mut ks = Vec::with_capacity(g.rank());
        for i in 0..g.rank() {
            let ratio = d0.mul(&d0.apply(&g.basis(i), x), &inv);
            let c = d0.as_base(&ratio)?;
            ks.push(*self.zeta_powers.get(&c)?);
        }
        let mut chi = Vec::with_capacity(self.slots.len());
        for (i, k) in ks.iter().enumerate() {
            match self.slots.iter().position(|&s| s == i) {
                Some(pos) => {
                    if k % self.steps[pos] != 0 {
                        return None;
                    }
                    chi.push(k / self.steps[pos]);
                }
                None if *k != 0 => return None,
                None => {}
            }
        }
        Some(chi)
    }

    /// A normalized nonzero element of the χ-eigenspace (one-dimensional).
    pub fn eigenvector(&self, d0: &ResidueField, chi: &[u64]) -> Result<ResidueElem> {
        let base = d0.base();
        let ks = self.exponents(d0, chi);
        let n = d0.degree();
        let mut rows = Vec::new();
        for (i, k) in ks.iter().enumerate() {
            let eig = base.pow(&self.zeta, *k);
            let m = d0.matrix_of(&d0.group().basis(i));
            for (r, mut row) in m.into_iter().enumerate() {
                row[r] = base.sub(&row[r], &eig);
                rows.push(row);
            }
        }
        let ker = if rows.is_empty() {
            vec![d0.one()]
        } else {
            linalg::kernel(base, rows, n)
        };
        if ker.len() != 1 {
            return Err(Error::Verification(format!(
                "eigenspace of dimension {} (expected 1)",
                ker.len()
            )));
        }
        d0.normalize_mod_base(&ker[0])
    }

    /// kum(M/F₀) for M the fixed field of `stabilizer`: the characters
    /// trivial on it. Requires exp(G/S) | m.
    pub fn kum_of_subfield(&self, d0: &ResidueField, stabilizer: &BTreeSet<GroupElem>) -> Result<Kum0> {
        let g = d0.group();
        let gal = g.quotient(&stabilizer.iter().cloned().collect::<Vec<_>>())?.group;
        if !self.m.is_multiple_of(gal.exponent()) {
            return Err(Error::Hypothesis(format!(
                "exponent {} of the Galois group does not divide m = {}",
                gal.exponent(),
                self.m
            )));
        }
        let trivial_on_s: Vec<GroupElem> = self
            .group
            .elements()
            .into_iter()
            .filter(|chi| stabilizer.iter().all(|s| self.evaluate(d0, chi, s) == 0))
            .collect();
        let characters = present_subgroup(&self.group, &trivial_on_s)?;
        if characters.len() != gal.order() as usize {
            return Err(Error::Verification(format!(
                "kum has order {} but the Galois group has order {}",
                characters.len(),
                gal.order()
            )));
        }
        let reps = characters
            .elements
            .iter()
            .map(|chi| self.eigenvector(d0, chi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Kum0 { characters, reps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn conjugation_on_gaussian_rationals() {
        let k = q_i();
        let t = k.generator();
        assert_eq!(k.apply(&[1], &t), k.neg(&t));
        assert_eq!(k.apply(&[0], &t), t);
        let fixed = k.fixed_field(&[vec![1]]).unwrap();
        assert_eq!(fixed.degree(), 1);
        assert_eq!(fixed.stabilizer.len(), 2);
    }

    #[test]
    fn split_algebra_is_rejected() {
        let b = BaseField::rationals();
        let err = ResidueField::new(b.clone(), ints(&b, &[-1, 0, 1]), FiniteAbelianGroup::cyclic(2), vec![ints(&b, &[0, -1])]);
        assert!(matches!(err, Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn unfaithful_action_is_rejected() {
        let b = BaseField::rationals();
        let err = ResidueField::new(b.clone(), ints(&b, &[1, 0, 1]), FiniteAbelianGroup::cyclic(2), vec![ints(&b, &[0, 1])]);
        assert!(err.is_err());
    }

    #[test]
    fn wrong_root_is_rejected() {
        let b = BaseField::rationals();
        let err = ResidueField::new(b.clone(), ints(&b, &[1, 0, 1]), FiniteAbelianGroup::cyclic(2), vec![ints(&b, &[1, 1])]);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn biquadratic_subfields() {
        let k = q_sqrt2_sqrt3();
        // √3 = (11T − T³)/2 is fixed by the generator flipping √2
        let sqrt3 = vec![vec![q(0)], vec![rat(11, 2)], vec![q(0)], vec![rat(-1, 2)]];
        assert_eq!(k.mul(&sqrt3, &sqrt3), k.from_i64(3));
        let s = vec![vec![1, 0]];
        let sub = k.fixed_field(&s).unwrap();
        assert_eq!(sub.degree(), 2);
        assert!(sub.contains(&k, &sqrt3));
        let (l, emb) = k.fixed_field_presented(&s).unwrap();
        assert_eq!(l.degree(), 2);
        assert_eq!(emb.len(), 2);
        assert_eq!(k.subfield_spanned(&[sqrt3]).unwrap(), sub);
    }

    #[test]
    fn kum_of_biquadratic_field() {
        let k = q_sqrt2_sqrt3();
        let kum = k.kum0(2).unwrap();
        assert_eq!(kum.order(), 4);
        assert_eq!(kum.characters.group.factors(), &[2, 2]);
        let chars = k.kummer_characters(2).unwrap();
        for (chi, rep) in kum.characters.elements.iter().zip(&kum.reps) {
            assert!(k.as_base(&k.mul(rep, rep)).is_some());
            assert_eq!(chars.character_of(&k, rep).as_ref(), Some(chi));
        }
        assert!(matches!(k.kum0(3), Err(Error::MissingRootOfUnity(3))));
    }

    #[test]
    fn kum_of_cyclic_octic_over_f17() {
        let k = f17_deg8();
        let kum = k.kum0(8).unwrap();
        assert_eq!(kum.characters.group.factors(), &[8]);
        let chars = k.kummer_characters(8).unwrap();
        assert_eq!(chars.character_of(&k, &k.generator()), Some(vec![1]));
        // kum of the quartic subfield
        let s = k.group().span(&k.group().multiples(4));
        let sub = chars.kum_of_subfield(&k, &s).unwrap();
        assert_eq!(sub.order(), 4);
    }

    #[test]
    fn kum_of_cyclic_quartic_over_gaussian_field() {
        let k = q_i_fourth_root3();
        let kum = k.kum0(4).unwrap();
        assert!(kum.characters.group.is_cyclic());
        assert_eq!(kum.order(), 4);
        let (l, _) = k.fixed_field_presented(&k.group().multiples(2)).unwrap();
        assert_eq!(l.degree(), 2);
        assert!(matches!(k.kum0(2), Err(Error::Hypothesis(_))));
    }
}
