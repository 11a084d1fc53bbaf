use std::sync::Arc;

use super::algebra::{CrossedProduct, Elem};
use super::factor_set::FactorSet;
use crate::error::{Error, Result};
use crate::grades::presentation::{present_subgroup, Presented};
use crate::grades::GroupElem;

/// B = ⊕_{σ ∈ ker θ} D₀F·x_σ together with the factor set (w, g) of G in B
/// given by z_τ = x_{γ̄_τ}, γ̄_τ the lexicographically least element of H
/// over τ ∈ G.
#[derive(Debug, Clone)]
pub struct Centralizer {
    pub kernel: Presented<GroupElem, GroupElem>,
    pub b: CrossedProduct,
    /// γ̄_τ for τ in `G.elements()` order.
    pub reps: Vec<GroupElem>,
    /// g(τ, τ′) = z_τ z_τ′ z_{τ+τ′}⁻¹ ∈ B, row-major over G.
    pub g: Vec<Elem>,
    /// [B:F], [Z(D₀)F:F], [D:F].
    pub dims: (u64, u64, u64),
}

impl CrossedProduct {
    pub fn centralizer_b(&self) -> Result<Centralizer> {
        let theta = self.theta()?;
        if !theta.surjective {
            return Err(Error::InvalidInput(
                "theta_D is not surjective onto Gal(D0/F0): residue data cannot come from a graded division algebra".into(),
            ));
        }
        let h = self.h();
        let g = self.d0.group();
        let kernel = present_subgroup(h, &theta.kernel)?;
        let embed = |x: &GroupElem| kernel.element_at(x).expect("kernel coordinates").clone();
        let k = &kernel.group;
        let fs_b = FactorSet::from_fn(k.clone(), vec![vec![0; g.rank()]; k.rank()], |a, b| {
            self.fs.get(&embed(a), &embed(b)).clone()
        });
        let b = CrossedProduct::build_unchecked(Arc::clone(&self.d0), self.gamma_f.clone(), fs_b)?;

        let h_elems = h.elements();
        let reps: Vec<GroupElem> = g
            .elements()
            .iter()
            .map(|t| {
                h_elems
                    .iter()
                    .enumerate()
                    .find(|(i, _)| self.omega_idx(*i) == t)
                    .map(|(_, e)| e.clone())
                    .expect("theta is surjective")
            })
            .collect();
        let z: Vec<Elem> = reps.iter().map(|r| self.basis(r)).collect();
        let z_inv: Vec<Elem> = z.iter().map(|x| self.inv_homog(x)).collect::<Result<_>>()?;
        let gg = g.elements();
        let m = gg.len();
        let sum = |i: usize, j: usize| g.index_of(&g.add(&gg[i], &gg[j]));
        let table: Vec<Elem> = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| self.mul(&self.mul(&z[i], &z[j]), &z_inv[sum(i, j)]))
            .collect();

        // g-values lie in B
        let in_b = |e: &Elem| e.terms.keys().all(|(s, _)| theta.kernel.contains(&h_elems[*s]));
        if let Some(pos) = table.iter().position(|e| !in_b(e) || !self.is_homogeneous(e) || e.is_zero()) {
            return Err(Error::Verification(format!(
                "g({:?}, {:?}) is not a homogeneous unit of B",
                gg[pos / m],
                gg[pos % m]
            )));
        }
        let w = |i: usize, e: &Elem| self.mul(&self.mul(&z[i], e), &z_inv[i]);
        // condition (3)
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    let lhs = self.mul(&table[i * m + j], &table[sum(i, j) * m + l]);
                    let rhs = self.mul(&w(i, &table[j * m + l]), &table[i * m + sum(j, l)]);
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "(w, g) violates the factor-set identity at ({:?}, {:?}, {:?})",
                            gg[i], gg[j], gg[l]
                        )));
                    }
                }
            }
        }
        // condition (2) on generators of B over F
        let mut gens = vec![self.term(0, self.d0.generator(), crate::grades::GradeVector::zero(self.rank()))];
        gens.extend((0..k.rank()).map(|i| self.basis(&embed(&k.basis(i)))));
        for i in 0..m {
            for j in 0..m {
                let gij = &table[i * m + j];
                let gij_inv = self.inv_homog(gij)?;
                for x in &gens {
                    let lhs = w(i, &w(j, x));
                    let rhs = self.mul(&self.mul(gij, &w(sum(i, j), x)), &gij_inv);
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "w_s w_t != Inn(g(s,t)) w_(s+t) at ({:?}, {:?})",
                            gg[i], gg[j]
                        )));
                    }
                }
            }
        }
        let n = self.d0.degree() as u64;
        let dims = (b.dimension(), n, self.dimension());
        if dims.0 * dims.1 != dims.2 {
            return Err(Error::Verification(format!(
                "[B:F]·[Z(D0)F:F] = {}·{} differs from [D:F] = {}",
                dims.0, dims.1, dims.2
            )));
        }
        Ok(Centralizer {
            kernel,
            b,
            reps,
            g: table,
            dims,
        })
    }
}
