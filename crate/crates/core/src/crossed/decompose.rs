use super::algebra::CrossedProduct;
use super::factor_set::{FactorSet, Homog};
use crate::error::{Error, Result};
use crate::grades::{beta_reduce, FiniteAbelianGroup, GradeVector, GroupElem};
use crate::scalars::{Field, ResidueElem, ResidueField};

/// f = d·h with d-values in D₀* and h(m̄, n̄) = ∏ xᵢ^{tᵢ} the carry cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub x: Vec<Homog>,
    /// Row-major over `h.elements()`.
    pub d: Vec<ResidueElem>,
    /// Carry exponents t(m̄, n̄) ∈ {0,1}^r.
    pub carries: Vec<Vec<u64>>,
    pub h_values: Vec<Homog>,
    /// Present for semiramified D: d satisfies the cocycle identity of
    /// Z²(G, D₀*) transported along θ.
    pub semiramified_cocycle: Option<bool>,
}

/// h(m̄, n̄) = ∏ xᵢ^{tᵢ} with (β, t) = beta_reduce(q, m̄, n̄).
pub fn carry_value(d0: &ResidueField, x: &[Homog], t: &[u64], r: usize) -> Homog {
    x.iter()
        .zip(t)
        .fold(Homog::one(d0, r), |acc, (xi, &ti)| acc.mul(d0, &xi.pow(d0, ti)))
}

/// The coefficient-one monomials t^{qᵢ·δᵢ}, the default choice of xᵢ.
pub fn default_x(h: &FiniteAbelianGroup, delta: &[GradeVector], d0: &ResidueField) -> Vec<Homog> {
    (0..h.rank())
        .map(|i| {
            let di = &delta[h.index_of(&h.basis(i))];
            Homog::new(d0.one(), di.scale_int(h.factors()[i] as i64))
        })
        .collect()
}

impl FactorSet {
    /// Recombines f(m̄, n̄) = d(m̄, n̄)·∏ xᵢ^{tᵢ}.
    pub fn from_d_and_x(
        d0: &ResidueField,
        h: FiniteAbelianGroup,
        theta: Vec<GroupElem>,
        d: &[ResidueElem],
        x: &[Homog],
        r: usize,
    ) -> Result<Self> {
        let n = h.order() as usize;
        if d.len() != n * n {
            return Err(Error::InvalidInput(format!("d-table has {} entries, expected {}", d.len(), n * n)));
        }
        if x.len() != h.rank() {
            return Err(Error::InvalidInput(format!("{} x-monomials for a group of rank {}", x.len(), h.rank())));
        }
        let q = h.factors().to_vec();
        let elems = h.elements();
        let mut f = Vec::with_capacity(n * n);
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let (_, t) = beta_reduce(&q, a, b);
                let hv = carry_value(d0, x, &t, r);
                f.push(Homog::new(d0.mul(&d[i * n + j], &hv.unit), hv.grade));
            }
        }
        Ok(Self { h, theta, f })
    }
}

impl CrossedProduct {
    /// Splits f into its D₀-part d and the carry cocycle h, for x_σ = z^{m̄}.
    /// `x` defaults to the coefficient-one monomials of grade qᵢ·δᵢ.
    pub fn decompose_f(&self, x: Option<&[Homog]>) -> Result<Decomposition> {
        let h = self.h();
        let d0 = &*self.d0;
        let r = self.rank();
        let q = h.factors().to_vec();
        let x: Vec<Homog> = match x {
            Some(x) => x.to_vec(),
            None => default_x(h, &self.delta, d0),
        };
        if x.len() != h.rank() {
            return Err(Error::InvalidInput(format!("{} x-monomials for a group of rank {}", x.len(), h.rank())));
        }
        for (i, xi) in x.iter().enumerate() {
            let want = self.delta[h.index_of(&h.basis(i))].scale_int(q[i] as i64);
            if xi.grade != want || d0.as_base(&xi.unit).is_none() || d0.is_zero(&xi.unit) {
                return Err(Error::InvalidInput(format!(
                    "x_{i} grade mismatch: x_{i} must be a unit of F of grade {want}, got grade {}",
                    xi.grade
                )));
            }
        }
        let elems = h.elements();
        let basis_delta: Vec<GradeVector> = (0..h.rank()).map(|i| self.delta[h.index_of(&h.basis(i))].clone()).collect();
        for (s, m) in elems.iter().enumerate() {
            let expected = m
                .iter()
                .zip(&basis_delta)
                .fold(GradeVector::zero(r), |acc, (&mi, di)| acc.add(&di.scale_int(mi as i64)));
            if self.delta[s] != expected {
                return Err(Error::InvalidInput(format!(
                    "z-normalization violated: grade of x_{m:?} is {} but z^m has grade {expected}",
                    self.delta[s]
                )));
            }
        }
        let n = elems.len();
        let mut d = Vec::with_capacity(n * n);
        let mut carries = Vec::with_capacity(n * n);
        let mut h_values = Vec::with_capacity(n * n);
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let (_, t) = beta_reduce(&q, a, b);
                let hv = carry_value(d0, &x, &t, r);
                let f = self.fs.get_idx(i, j);
                if f.grade != hv.grade {
                    return Err(Error::Verification(format!("grade of f({a:?}, {b:?}) differs from its carry part")));
                }
                d.push(d0.mul(&f.unit, &d0.inv(&hv.unit)?));
                carries.push(t);
                h_values.push(hv);
            }
        }
        // h: symmetric cocycle on the exponent vectors
        for i in 0..n {
            for j in 0..n {
                if carries[i * n + j] != carries[j * n + i] {
                    return Err(Error::Verification("carry cocycle is not symmetric".into()));
                }
                let ij = self.sum_idx(i, j);
                for k in 0..n {
                    let jk = self.sum_idx(j, k);
                    let lhs: Vec<u64> = carries[i * n + j].iter().zip(&carries[ij * n + k]).map(|(a, b)| a + b).collect();
                    let rhs: Vec<u64> = carries[j * n + k].iter().zip(&carries[i * n + jk]).map(|(a, b)| a + b).collect();
                    if lhs != rhs {
                        return Err(Error::Verification("carry cocycle identity fails".into()));
                    }
                }
            }
        }
        // (ω, d) is a factor set of H in D₀
        for i in 0..n {
            let w = self.omega_idx(i);
            for j in 0..n {
                let ij = self.sum_idx(i, j);
                for k in 0..n {
                    let lhs = d0.mul(&d[i * n + j], &d[ij * n + k]);
                    let rhs = d0.mul(&d0.apply(w, &d[j * n + k]), &d[i * n + self.sum_idx(j, k)]);
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "(omega, d) violates the factor-set identity at ({:?}, {:?}, {:?})",
                            elems[i], elems[j], elems[k]
                        )));
                    }
                }
            }
        }
        let semiramified_cocycle =
            (self.classify().kind == super::algebra::RamificationKind::Semiramified).then_some(true);
        Ok(Decomposition {
            x,
            d,
            carries,
            h_values,
            semiramified_cocycle,
        })
    }
}
