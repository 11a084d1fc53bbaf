//! Invariant-factor presentations of finite abelian groups that are only
//! given through generators and a multiplication (classes of algebra
//! elements, subgroups, …). Elements are enumerated breadth-first; the
//! Schreier relations of the resulting spanning tree generate the relation
//! lattice, whose Smith form yields the invariant factors.

use std::collections::HashMap;
use std::hash::Hash;

use super::group::{FiniteAbelianGroup, GroupElem, Quotient};
use super::intmat::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Presented<T, K: Eq + Hash> {
    pub elements: Vec<T>,
    pub index: HashMap<K, usize>,
    pub coords: Vec<GroupElem>,
    pub group: FiniteAbelianGroup,
    /// Coordinates of each generator.
    pub generator_coords: Vec<GroupElem>,
}

impl<T, K: Eq + Hash> Presented<T, K> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn coords_of(&self, key: &K) -> Option<&GroupElem> {
        self.index.get(key).map(|&i| &self.coords[i])
    }

    /// Element with the given coordinates.
    pub fn element_at(&self, c: &[u64]) -> Option<&T> {
        self.coords.iter().position(|x| x == c).map(|i| &self.elements[i])
    }
}

/// Closes `gens` under `mul`, starting from `identity`, and presents the
/// resulting group. The operation must be commutative and associative on
/// keys; fails if more than `budget` elements appear.
pub fn present<T, K, M, KF>(
    identity: T,
    gens: &[T],
    mul: M,
    key: KF,
    budget: usize,
) -> Result<Presented<T, K>>
where
    T: Clone,
    K: Eq + Hash + Clone,
    M: Fn(&T, &T) -> Result<T>,
    KF: Fn(&T) -> Result<K>,
{
    let k = gens.len();
    let mut elements = vec![identity.clone()];
    let mut exps: Vec<Vec<i128>> = vec![vec![0; k]];
    let mut index = HashMap::from([(key(&identity)?, 0usize)]);
    let mut relations: IntMatrix = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (g_idx, g) in gens.iter().enumerate() {
            let prod = mul(&elements[head], g)?;
            let pk = key(&prod)?;
            let mut e = exps[head].clone();
            e[g_idx] += 1;
            match index.get(&pk) {
                Some(&j) => {
                    let rel: Vec<i128> = e.iter().zip(&exps[j]).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&x| x != 0) {
                        relations.push(rel);
                    }
                }
                None => {
                    if elements.len() >= budget {
                        return Err(Error::budget("group closure", elements.len() as u128 + 1, budget as u128));
                    }
                    index.insert(pk, elements.len());
                    elements.push(prod);
                    exps.push(e);
                }
            }
        }
        head += 1;
    }
    let quotient = if k == 0 {
        None
    } else {
        Some(Quotient::from_relations(k, relations)?)
    };
    let (group, coords, generator_coords) = match &quotient {
        None => (FiniteAbelianGroup::trivial(), vec![Vec::new()], Vec::new()),
        Some(q) => {
            let coords = exps.iter().map(|e| q.project(e)).collect::<Result<Vec<_>>>()?;
            let gc = (0..k)
                .map(|i| {
                    let mut e = vec![0i128; k];
                    e[i] = 1;
                    q.project(&e)
                })
                .collect::<Result<Vec<_>>>()?;
            (q.group.clone(), coords, gc)
        }
    };
    if group.order() as usize != elements.len() {
        return Err(Error::Verification(format!(
            "presentation of order {} for {} elements (operation not commutative?)",
            group.order(),
            elements.len()
        )));
    }
    Ok(Presented {
        elements,
        index,
        coords,
        group,
        generator_coords,
    })
}

/// Presentation of the subgroup of `g` generated by `gens`.
pub fn present_subgroup(
    g: &FiniteAbelianGroup,
    gens: &[GroupElem],
) -> Result<Presented<GroupElem, GroupElem>> {
    present(
        g.zero(),
        gens,
        |a, b| Ok(g.add(a, b)),
        |a| Ok(a.clone()),
        g.order() as usize + 1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_mod_fifteen() {
        // (Z/15)* ≅ Z/2 × Z/4, generated by 2 and 14.
        let p = present(1u64, &[2, 14], |a, b| Ok(a * b % 15), |a| Ok(*a), 100).unwrap();
        assert_eq!(p.group.factors(), &[2, 4]);
        assert_eq!(p.len(), 8);
    }

    #[test]
    fn subgroup_of_product() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let p = present_subgroup(&g, &[vec![1, 2]]).unwrap();
        assert_eq!(p.group.factors(), &[2]);
        let p = present_subgroup(&g, &[vec![1, 1]]).unwrap();
        assert_eq!(p.group.factors(), &[4]);
        let p = present_subgroup(&g, &[]).unwrap();
        assert!(p.group.is_trivial());
    }

    #[test]
    fn budget_is_enforced() {
        let r = present(0u64, &[1], |a, b| Ok((a + b) % 1000), |a| Ok(*a), 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
