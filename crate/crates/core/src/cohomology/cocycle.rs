use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grades::{FiniteAbelianGroup, GroupElem};

/// A 2-cochain H × H → M with trivial action, written additively in M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    h: FiniteAbelianGroup,
    m: FiniteAbelianGroup,
    /// Row-major over `h.elements()`.
    table: Vec<GroupElem>,
}

/// One `{sigma, tau, value}` entry of a serialized table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub sigma: GroupElem,
    pub tau: GroupElem,
    pub value: GroupElem,
}

impl Cocycle2 {
    pub fn new(h: FiniteAbelianGroup, m: FiniteAbelianGroup, table: Vec<GroupElem>) -> Result<Self> {
        let n = h.order() as usize;
        if table.len() != n * n {
            return Err(Error::InvalidInput(format!("cocycle table has {} entries, expected {}", table.len(), n * n)));
        }
        if let Some(bad) = table.iter().find(|v| !m.contains(v)) {
            return Err(Error::InvalidInput(format!("{bad:?} is not an element of {}", m.describe())));
        }
        Ok(Self { h, m, table })
    }

    pub fn from_fn(h: FiniteAbelianGroup, m: FiniteAbelianGroup, f: impl Fn(&GroupElem, &GroupElem) -> GroupElem) -> Self {
        let elems = h.elements();
        let table = elems
            .iter()
            .flat_map(|a| elems.iter().map(|b| m.reduce(&f(a, b).iter().map(|&x| x as i128).collect::<Vec<_>>())).collect::<Vec<_>>())
            .collect();
        Self { h, m, table }
    }

    pub fn trivial(h: FiniteAbelianGroup, m: FiniteAbelianGroup) -> Self {
        let z = m.zero();
        Self::from_fn(h, m, |_, _| z.clone())
    }

    pub fn from_entries(h: FiniteAbelianGroup, m: FiniteAbelianGroup, entries: &[TableEntry]) -> Result<Self> {
        let n = h.order() as usize;
        let mut table: Vec<Option<GroupElem>> = vec![None; n * n];
        for e in entries {
            if !h.contains(&e.sigma) || !h.contains(&e.tau) {
                return Err(Error::InvalidInput(format!("({:?}, {:?}) is not a pair of elements of H", e.sigma, e.tau)));
            }
            let slot = &mut table[h.index_of(&e.sigma) * n + h.index_of(&e.tau)];
            if slot.is_some() {
                return Err(Error::InvalidInput(format!("duplicate entry for ({:?}, {:?})", e.sigma, e.tau)));
            }
            *slot = Some(e.value.clone());
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::InvalidInput(format!("missing entry for ({:?}, {:?})", h.element(i / n), h.element(i % n)))))
            .collect::<Result<_>>()?;
        Self::new(h, m, table)
    }

    pub fn entries(&self) -> Vec<TableEntry> {
        let elems = self.h.elements();
        let n = elems.len();
        self.table
            .iter()
            .enumerate()
            .map(|(i, v)| TableEntry {
                sigma: elems[i / n].clone(),
                tau: elems[i % n].clone(),
                value: v.clone(),
            })
            .collect()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.h
    }

    pub fn module(&self) -> &FiniteAbelianGroup {
        &self.m
    }

    pub fn get(&self, sigma: &[u64], tau: &[u64]) -> &GroupElem {
        let n = self.h.order() as usize;
        &self.table[self.h.index_of(sigma) * n + self.h.index_of(tau)]
    }

    pub(crate) fn get_idx(&self, i: usize, j: usize) -> &GroupElem {
        &self.table[i * self.h.order() as usize + j]
    }

    /// Triples (σ, τ, μ) violating c(τ,μ) + c(σ,τ+μ) = c(σ,τ) + c(σ+τ,μ).
    pub fn violations(&self) -> Vec<(GroupElem, GroupElem, GroupElem)> {
        self.violations_with(Exec::default())
    }

    pub fn violations_with(&self, exec: Exec) -> Vec<(GroupElem, GroupElem, GroupElem)> {
        let h = &self.h;
        let m = &self.m;
        let n = h.order() as usize;
        let elems = h.elements();
        exec.map_range(n, |i| {
            let s = &elems[i];
            let mut bad = Vec::new();
            for t in &elems {
                for u in &elems {
                    let lhs = m.add(self.get(t, u), self.get(s, &h.add(t, u)));
                    let rhs = m.add(self.get(s, t), self.get(&h.add(s, t), u));
                    if lhs != rhs {
                        bad.push((s.clone(), t.clone(), u.clone()));
                    }
                }
            }
            bad
        })
        .into_iter()
        .flatten()
        .collect()
    }

    pub fn is_cocycle(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        let elems = self.h.elements();
        elems.iter().all(|a| elems.iter().all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn is_normalized(&self) -> bool {
        let z = self.m.zero();
        self.h.elements().iter().all(|a| *self.get(a, &self.h.zero()) == z && *self.get(&self.h.zero(), a) == z)
    }

    /// Subtracts the constant coboundary c(0,0); for a cocycle this makes
    /// c(0,·) = c(·,0) = 0 without changing the class.
    pub fn normalized(&self) -> Self {
        let c00 = self.table[0].clone();
        let table = self.table.iter().map(|v| self.m.sub(v, &c00)).collect();
        Self {
            h: self.h.clone(),
            m: self.m.clone(),
            table,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| self.m.add(a, b)).collect();
        Ok(Self { table, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let table = self.table.iter().zip(&other.table).map(|(a, b)| self.m.sub(a, b)).collect();
        Ok(Self { table, ..self.clone() })
    }

    pub(crate) fn same_shape(&self, other: &Self) -> Result<()> {
        if self.h != other.h || self.m != other.m {
            return Err(Error::InvalidInput(format!(
                "cocycles over {} in {} and over {} in {}",
                self.h.describe(),
                self.m.describe(),
                other.h.describe(),
                other.m.describe()
            )));
        }
        Ok(())
    }

    /// The coboundary (σ, τ) ↦ a(σ) + a(τ) − a(σ+τ) of a 1-cochain given on
    /// `h.elements()`.
    pub fn coboundary(h: FiniteAbelianGroup, m: FiniteAbelianGroup, a: &[GroupElem]) -> Self {
        let hh = h.clone();
        let mm = m.clone();
        Self::from_fn(h, m, |s, t| {
            let st = hh.add(s, t);
            mm.sub(&mm.add(&a[hh.index_of(s)], &a[hh.index_of(t)]), &a[hh.index_of(&st)])
        })
    }
}
