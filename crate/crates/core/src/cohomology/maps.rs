use super::cocycle::Cocycle2;
use crate::error::{Error, Result};
use crate::grades::presentation::{present_subgroup, Presented};
use crate::grades::{FiniteAbelianGroup, GroupElem};

/// A homomorphism of finite abelian groups, given by the images of the
/// basis of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    pub images: Vec<GroupElem>,
}

impl Hom {
    pub fn new(source: FiniteAbelianGroup, target: FiniteAbelianGroup, images: Vec<GroupElem>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidInput(format!("{} basis images for a group of rank {}", images.len(), source.rank())));
        }
        for (i, (img, &q)) in images.iter().zip(source.factors()).enumerate() {
            if !target.contains(img) {
                return Err(Error::InvalidInput(format!("image {img:?} is not in {}", target.describe())));
            }
            if !target.scale(img, q as i64).iter().all(|&x| x == 0) {
                return Err(Error::InvalidInput(format!("basis element {i} has order {q} but its image does not")));
            }
        }
        Ok(Self { source, target, images })
    }

    pub fn identity(g: FiniteAbelianGroup) -> Self {
        let images = (0..g.rank()).map(|i| g.basis(i)).collect();
        Self {
            source: g.clone(),
            target: g,
            images,
        }
    }

    pub fn zero(source: FiniteAbelianGroup, target: FiniteAbelianGroup) -> Self {
        let images = vec![target.zero(); source.rank()];
        Self { source, target, images }
    }

    pub fn apply(&self, x: &[u64]) -> GroupElem {
        x.iter()
            .zip(&self.images)
            .fold(self.target.zero(), |acc, (&k, img)| self.target.add(&acc, &self.target.scale(img, k as i64)))
    }

    pub fn compose(&self, after: &Hom) -> Result<Hom> {
        if self.target != after.source {
            return Err(Error::InvalidInput("homomorphisms are not composable".into()));
        }
        Hom::new(self.source.clone(), after.target.clone(), self.images.iter().map(|x| after.apply(x)).collect())
    }
}

/// φ_* c.
pub fn pushforward(phi: &Hom, c: &Cocycle2) -> Result<Cocycle2> {
    if phi.source != *c.module() {
        return Err(Error::InvalidInput(format!(
            "homomorphism from {} applied to a cocycle in {}",
            phi.source.describe(),
            c.module().describe()
        )));
    }
    Ok(Cocycle2::from_fn(c.group().clone(), phi.target.clone(), |s, t| phi.apply(c.get(s, t))))
}

/// Restriction to the subgroup R generated by `gens`. Returns the cocycle
/// over R (in its own invariant-factor coordinates) and the presentation of
/// R, whose `elements` embed it into H.
pub fn restrict(c: &Cocycle2, gens: &[GroupElem]) -> Result<(Cocycle2, Presented<GroupElem, GroupElem>)> {
    let h = c.group();
    if let Some(bad) = gens.iter().find(|g| !h.contains(g)) {
        return Err(Error::NotSubgroup(format!("{bad:?} is not an element of {}", h.describe())));
    }
    let r = present_subgroup(h, gens)?;
    let embed = |x: &GroupElem| r.element_at(x).expect("coordinates of R").clone();
    let res = Cocycle2::from_fn(r.group.clone(), c.module().clone(), |s, t| c.get(&embed(s), &embed(t)).clone());
    Ok((res, r))
}

/// The cocycle α(q, q′) = s(q) + s(q′) − s(q+q′) of an extension
/// 0 → A → E → Q → 0 of finite abelian groups with section `section`
/// (indexed by `q.elements()`). A is given as a presented subgroup of E.
pub fn extension_cocycle(
    e: &FiniteAbelianGroup,
    a: &Presented<GroupElem, GroupElem>,
    pi: &Hom,
    section: &[GroupElem],
) -> Result<Cocycle2> {
    let q = &pi.target;
    if pi.source != *e {
        return Err(Error::InvalidInput("projection does not start at E".into()));
    }
    if section.len() != q.order() as usize {
        return Err(Error::InvalidInput("section must be given on every element of Q".into()));
    }
    if a.elements.iter().any(|x| !pi.apply(x).iter().all(|&v| v == 0)) {
        return Err(Error::InvalidInput("A is not in the kernel of the projection".into()));
    }
    if (a.len() as u64) * q.order() != e.order() {
        return Err(Error::InvalidInput(format!(
            "sequence is not exact: |A|·|Q| = {}·{} but |E| = {}",
            a.len(),
            q.order(),
            e.order()
        )));
    }
    for (qe, s) in q.elements().iter().zip(section) {
        if pi.apply(s) != *qe {
            return Err(Error::InvalidInput(format!("section value {s:?} does not lie over {qe:?}")));
        }
    }
    let table = q
        .elements()
        .iter()
        .flat_map(|x| {
            q.elements()
                .iter()
                .map(|y| {
                    let sx = &section[q.index_of(x)];
                    let sy = &section[q.index_of(y)];
                    let sxy = &section[q.index_of(&q.add(x, y))];
                    let v = e.sub(&e.add(sx, sy), sxy);
                    a.coords_of(&v).cloned().expect("kernel element lies in A")
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Cocycle2::new(q.clone(), a.group.clone(), table)
}
