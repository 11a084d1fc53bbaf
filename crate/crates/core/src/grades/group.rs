use std::collections::BTreeSet;

use super::intmat::{self, IntMatrix};
use crate::error::{Error, Result};

/// Element of a [`FiniteAbelianGroup`]: coordinates reduced modulo the
/// invariant factors.
pub type GroupElem = Vec<u64>;

/// `Z/q₁ × … × Z/q_s` with `1 < q₁ | q₂ | … | q_s`. The i-th basis vector
/// is the class δ̄ᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&q| q < 2) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must exceed 1, got {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must be divisibility-ascending, got {factors:?}"
            )));
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self { factors: vec![n] }
        }
    }

    /// Group with arbitrary cyclic orders, normalised to invariant factors.
    /// Returns the group and, for each input generator, its image.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<(Self, Vec<GroupElem>)> {
        let rel: IntMatrix = orders
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                (0..orders.len())
                    .map(|j| if i == j { q as i128 } else { 0 })
                    .collect()
            })
            .collect();
        let q = Quotient::from_relations(orders.len(), rel)?;
        let images = (0..orders.len())
            .map(|i| {
                let mut e = vec![0i128; orders.len()];
                e[i] = 1;
                q.project(&e)
            })
            .collect::<Result<_>>()?;
        Ok((q.group, images))
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.factors.len()]
    }

    pub fn basis(&self, i: usize) -> GroupElem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, v: &[i128]) -> GroupElem {
        v.iter()
            .zip(&self.factors)
            .map(|(&x, &q)| x.rem_euclid(q as i128) as u64)
            .collect()
    }

    pub fn contains(&self, e: &[u64]) -> bool {
        e.len() == self.factors.len() && e.iter().zip(&self.factors).all(|(x, q)| x < q)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElem {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((x, y), q)| (x + y) % q)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> GroupElem {
        a.iter()
            .zip(&self.factors)
            .map(|(x, q)| (q - x) % q)
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[u64], k: i64) -> GroupElem {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &q)| ((x as i128 * k as i128).rem_euclid(q as i128)) as u64)
            .collect()
    }

    pub fn elem_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &q)| q / num_integer::gcd(x, q))
            .fold(1, num_integer::lcm)
    }

    /// Position of `a` in [`elements`](Self::elements).
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &q)| acc * q as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> GroupElem {
        let mut e = vec![0; self.factors.len()];
        for (slot, &q) in e.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % q as usize) as u64;
            idx /= q as usize;
        }
        e
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order() as usize).map(|i| self.element(i)).collect()
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[GroupElem]) -> BTreeSet<GroupElem> {
        let mut set = BTreeSet::from([self.zero()]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &BTreeSet<GroupElem>) -> bool {
        set.contains(&self.zero())
            && set.iter().all(|a| self.contains(a))
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(&self.add(a, b))))
    }

    /// `self / ⟨gens⟩`, with the projection.
    pub fn quotient(&self, gens: &[GroupElem]) -> Result<Quotient> {
        let s = self.rank();
        let mut rel: IntMatrix = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| if i == j { self.factors[i] as i128 } else { 0 })
                    .collect()
            })
            .collect();
        rel.extend(gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()));
        Quotient::from_relations(s, rel)
    }

    /// Generators of `kG`.
    pub fn multiples(&self, k: i64) -> Vec<GroupElem> {
        (0..self.rank()).map(|i| self.scale(&self.basis(i), k)).collect()
    }

    /// Every subgroup, as sorted element sets, in a deterministic order.
    pub fn subgroups(&self) -> Vec<BTreeSet<GroupElem>> {
        let elems = self.elements();
        let mut found: BTreeSet<BTreeSet<GroupElem>> = BTreeSet::new();
        let mut frontier = vec![BTreeSet::from([self.zero()])];
        found.insert(frontier[0].clone());
        while let Some(sub) = frontier.pop() {
            for e in &elems {
                if sub.contains(e) {
                    continue;
                }
                let mut gens: Vec<GroupElem> = sub.iter().cloned().collect();
                gens.push(e.clone());
                let bigger = self.span(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by_key(|s| s.len());
        out
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|q| format!("Z/{q}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// `(rank, exponent)` of a finite abelian group.
pub fn rank_and_exponent(h: &FiniteAbelianGroup) -> (usize, u64) {
    (h.rank(), h.exponent())
}

/// A quotient `Z^n / ⟨relations⟩` in invariant-factor form.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteAbelianGroup,
    /// Columns of the right transform that survive (factor > 1).
    v: IntMatrix,
    keep: Vec<usize>,
    /// Rows of `v⁻¹` for the kept columns: lifts of the basis classes.
    pub lifts: Vec<Vec<i128>>,
}

impl Quotient {
    pub fn from_relations(n: usize, relations: IntMatrix) -> Result<Self> {
        let compact = intmat::echelon_rows(relations)?;
        if compact.len() < n {
            return Err(Error::InvalidInput("quotient is infinite".into()));
        }
        let s = intmat::smith(&compact, n, false)?;
        if s.d.contains(&0) {
            return Err(Error::InvalidInput("quotient is infinite".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|&j| s.d[j] > 1).collect();
        let factors = keep.iter().map(|&j| s.d[j] as u64).collect();
        let lifts = keep.iter().map(|&j| s.v_inv[j].clone()).collect();
        Ok(Self {
            group: FiniteAbelianGroup { factors },
            v: s.v,
            keep,
            lifts,
        })
    }

    /// Image of an integer vector.
    pub fn project(&self, x: &[i128]) -> Result<GroupElem> {
        let y = intmat::vec_mul(x, &self.v)?;
        let kept: Vec<i128> = self.keep.iter().map(|&j| y[j]).collect();
        Ok(self.group.reduce(&kept))
    }
}
