//! H²(H, M) for trivial action, by integer linear algebra.
//!
//! M is split into its cyclic factors Z/m. For each factor the normalized
//! cocycles mod m are the solutions of A·c ≡ 0 (A = the cocycle identity
//! over nonzero triples); with U·A·V = diag(d) they are spanned by the
//! columns kᵢ·V·eᵢ, kᵢ = m / gcd(dᵢ, m). In these coordinates Z²/mZ^N is
//! ⊕ Z/gcd(dᵢ, m), and H² is its quotient by the image of the coboundaries.

use std::sync::{Arc, OnceLock};

use super::cocycle::Cocycle2;
use crate::error::{Error, Result};
use crate::grades::intmat::{self, IntMatrix, Smith};
use crate::grades::{FiniteAbelianGroup, GroupElem, Quotient};

/// The cocycle and coboundary systems of one group H; independent of M.
#[derive(Debug)]
pub struct CocycleSystem {
    h: FiniteAbelianGroup,
    symmetric: bool,
    /// Variable index of each (σ, τ) (row-major over H), `None` on the axes.
    var_of: Vec<Option<usize>>,
    nvars: usize,
    smith: Smith,
    /// δ(e_σ) for each nonzero σ, as vectors over the variables.
    coboundaries: IntMatrix,
    coboundary_smith: OnceLock<Result<Smith>>,
}

impl CocycleSystem {
    pub fn new(h: &FiniteAbelianGroup, symmetric: bool, budget: u128) -> Result<Self> {
        let n = h.order() as usize;
        let needed = (n as u128).pow(3);
        if needed > budget {
            return Err(Error::budget("cocycle identity triples", needed, budget));
        }
        let mut var_of = vec![None; n * n];
        let mut nvars = 0;
        for i in 1..n {
            for j in 1..n {
                if symmetric && j < i {
                    var_of[i * n + j] = var_of[j * n + i];
                } else {
                    var_of[i * n + j] = Some(nvars);
                    nvars += 1;
                }
            }
        }
        let elems = h.elements();
        let sum = |i: usize, j: usize| h.index_of(&h.add(&elems[i], &elems[j]));
        let mut rows = Vec::new();
        for s in 1..n {
            for t in 1..n {
                for u in 1..n {
                    let mut row = vec![0i128; nvars];
                    let mut put = |a: usize, b: usize, sign: i128| {
                        if let Some(v) = var_of[a * n + b] {
                            row[v] += sign;
                        }
                    };
                    put(t, u, 1);
                    put(s, sum(t, u), 1);
                    put(s, t, -1);
                    put(sum(s, t), u, -1);
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let compact = if rows.is_empty() { rows } else { intmat::echelon_rows(rows)? };
        let smith = intmat::smith(&compact, nvars, false)?;
        let mut coboundaries = Vec::with_capacity(n.saturating_sub(1));
        for s in 1..n {
            let mut v = vec![0i128; nvars];
            for a in 1..n {
                for b in 1..n {
                    let Some(x) = var_of[a * n + b] else { continue };
                    if symmetric && b < a {
                        continue;
                    }
                    let ab = sum(a, b);
                    v[x] += (a == s) as i128 + (b == s) as i128 - (ab == s) as i128;
                }
            }
            coboundaries.push(v);
        }
        Ok(Self {
            h: h.clone(),
            symmetric,
            var_of,
            nvars,
            smith,
            coboundaries,
            coboundary_smith: OnceLock::new(),
        })
    }

    fn d(&self, i: usize) -> i128 {
        self.smith.d.get(i).copied().unwrap_or(0)
    }

    /// y = V⁻¹ x mod m.
    fn to_smith_coords(&self, x: &[i128], m: i128) -> Vec<i128> {
        self.smith
            .v_inv
            .iter()
            .map(|row| row.iter().zip(x).fold(0i128, |acc, (a, b)| (acc + a.rem_euclid(m) * b) % m))
            .collect()
    }

    fn from_smith_coords(&self, y: &[i128], m: i128) -> Vec<i128> {
        (0..self.nvars)
            .map(|r| {
                y.iter()
                    .enumerate()
                    .fold(0i128, |acc, (i, yi)| (acc + self.smith.v[r][i].rem_euclid(m) * yi) % m)
            })
            .collect()
    }

    fn values_of(&self, c: &Cocycle2, slot: usize) -> Vec<i128> {
        let n = self.h.order() as usize;
        let mut x = vec![0i128; self.nvars];
        for (idx, v) in self.var_of.iter().enumerate() {
            if let Some(v) = v {
                x[*v] = c.get_idx(idx / n, idx % n)[slot] as i128;
            }
        }
        x
    }

    /// Solves δa ≡ target (mod m) for a normalized 1-cochain a (a(0) = 0).
    fn solve_coboundary(&self, target: &[i128], m: i128) -> Result<Option<Vec<i128>>> {
        let s = self
            .coboundary_smith
            .get_or_init(|| {
                // columns of B are the coboundaries; transpose to rows = variables
                let cols = self.coboundaries.len();
                let b: IntMatrix = (0..self.nvars)
                    .map(|r| self.coboundaries.iter().map(|c| c[r]).collect())
                    .collect();
                intmat::smith(&b, cols, true)
            })
            .as_ref()
            .map_err(|e| e.clone())?;
        let u = s.u.as_ref().expect("left transform tracked");
        let rhs: Vec<i128> = u
            .iter()
            .map(|row| row.iter().zip(target).fold(0i128, |acc, (a, b)| (acc + a.rem_euclid(m) * b) % m))
            .collect();
        let cols = self.coboundaries.len();
        let mut y = vec![0i128; cols];
        for (i, r) in rhs.iter().enumerate() {
            let d = s.d.get(i).copied().unwrap_or(0).rem_euclid(m);
            match solve_linear_congruence(d, *r, m) {
                Some(v) => {
                    if i < cols {
                        y[i] = v;
                    }
                }
                None => return Ok(None),
            }
        }
        let a = (0..cols)
            .map(|r| y.iter().enumerate().fold(0i128, |acc, (i, yi)| (acc + s.v[r][i].rem_euclid(m) * yi) % m))
            .collect();
        Ok(Some(a))
    }
}

/// Some y with d·y ≡ r (mod m).
fn solve_linear_congruence(d: i128, r: i128, m: i128) -> Option<i128> {
    let r = r.rem_euclid(m);
    if d == 0 {
        return (r == 0).then_some(0);
    }
    let g = num_integer::gcd(d, m);
    if r % g != 0 {
        return None;
    }
    let (mg, dg, rg) = (m / g, d / g, r / g);
    let inv = mod_inverse(dg.rem_euclid(mg), mg)?;
    Some(rg * inv % mg)
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let e = num_integer::Integer::extended_gcd(&a, &m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

#[derive(Debug, Clone)]
struct Component {
    modulus: i128,
    /// gcd(dᵢ, m) for every Smith coordinate.
    g: Vec<i128>,
    quotient: Quotient,
}

/// H²(H, M) (or its symmetric part) in invariant-factor form, with a class
/// map and representative cocycles.
#[derive(Debug, Clone)]
pub struct H2 {
    pub h: FiniteAbelianGroup,
    pub m: FiniteAbelianGroup,
    pub symmetric: bool,
    pub group: FiniteAbelianGroup,
    system: Arc<CocycleSystem>,
    components: Vec<Component>,
    combine: Quotient,
}

/// Default bound on |H|³ for cohomology computations.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

impl H2 {
    pub fn compute(h: &FiniteAbelianGroup, m: &FiniteAbelianGroup, symmetric: bool, budget: u128) -> Result<Self> {
        let system = Arc::new(CocycleSystem::new(h, symmetric, budget)?);
        Self::with_system(system, m)
    }

    pub fn with_system(system: Arc<CocycleSystem>, m: &FiniteAbelianGroup) -> Result<Self> {
        let nv = system.nvars;
        let mut components = Vec::new();
        for &q in m.factors() {
            let q = q as i128;
            let g: Vec<i128> = (0..nv).map(|i| num_integer::gcd(system.d(i), q)).collect();
            let mut rel: IntMatrix = (0..nv)
                .map(|i| {
                    let mut r = vec![0i128; nv];
                    r[i] = g[i];
                    r
                })
                .collect();
            for cb in &system.coboundaries {
                let y = system.to_smith_coords(cb, q);
                rel.push(y.iter().zip(&g).map(|(yi, gi)| (yi / (q / gi)) % gi).collect());
            }
            let quotient = Quotient::from_relations(nv, rel)?;
            components.push(Component { modulus: q, g, quotient });
        }
        let orders: Vec<u64> = components.iter().flat_map(|c| c.quotient.group.factors().to_vec()).collect();
        let combine = Quotient::from_relations(
            orders.len(),
            (0..orders.len())
                .map(|i| (0..orders.len()).map(|j| if i == j { orders[i] as i128 } else { 0 }).collect())
                .collect(),
        )?;
        Ok(Self {
            h: system.h.clone(),
            m: m.clone(),
            symmetric: system.symmetric,
            group: combine.group.clone(),
            system,
            components,
            combine,
        })
    }

    fn check(&self, c: &Cocycle2) -> Result<()> {
        if *c.group() != self.h || *c.module() != self.m {
            return Err(Error::InvalidInput(format!(
                "cocycle over {} in {}, expected {} in {}",
                c.group().describe(),
                c.module().describe(),
                self.h.describe(),
                self.m.describe()
            )));
        }
        if let Some((s, t, u)) = c.violations().into_iter().next() {
            return Err(Error::InvalidInput(format!("not a 2-cocycle: identity fails at ({s:?}, {t:?}, {u:?})")));
        }
        if self.symmetric && !c.is_symmetric() {
            return Err(Error::InvalidInput("cocycle is not symmetric".into()));
        }
        Ok(())
    }

    /// Coordinates of the class of `c`.
    pub fn class_of(&self, c: &Cocycle2) -> Result<GroupElem> {
        self.check(c)?;
        let c = c.normalized();
        let mut coords: Vec<i128> = Vec::new();
        for (slot, comp) in self.components.iter().enumerate() {
            let q = comp.modulus;
            let x = self.system.values_of(&c, slot);
            let y = self.system.to_smith_coords(&x, q);
            let z: Vec<i128> = y
                .iter()
                .zip(&comp.g)
                .map(|(yi, gi)| {
                    let k = q / gi;
                    debug_assert_eq!(yi % k, 0);
                    yi / k
                })
                .collect();
            coords.extend(comp.quotient.project(&z)?.into_iter().map(|v| v as i128));
        }
        self.combine.project(&coords)
    }

    /// A cocycle in the class with the given coordinates.
    pub fn representative(&self, e: &[u64]) -> Result<Cocycle2> {
        if !self.group.contains(e) {
            return Err(Error::InvalidInput(format!("{e:?} is not an element of {}", self.group.describe())));
        }
        let total = self.combine.lifts.first().map_or(0, |l| l.len());
        let mut p = vec![0i128; total];
        for (b, &k) in e.iter().enumerate() {
            for (pi, li) in p.iter_mut().zip(&self.combine.lifts[b]) {
                *pi += k as i128 * li;
            }
        }
        let n = self.h.order() as usize;
        let mut values: Vec<Vec<i128>> = vec![vec![0; self.m.rank()]; n * n];
        let mut offset = 0;
        for (slot, comp) in self.components.iter().enumerate() {
            let q = comp.modulus;
            let r = comp.quotient.group.rank();
            let t = &p[offset..offset + r];
            offset += r;
            let nv = self.system.nvars;
            let mut y = vec![0i128; nv];
            for (ti, lift) in t.iter().zip(&comp.quotient.lifts) {
                for (i, l) in lift.iter().enumerate() {
                    y[i] = (y[i] + ti.rem_euclid(q) * l.rem_euclid(q)) % q;
                }
            }
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = *yi * (q / comp.g[i]) % q;
            }
            let x = self.system.from_smith_coords(&y, q);
            for (idx, v) in self.system.var_of.iter().enumerate() {
                if let Some(v) = v {
                    values[idx][slot] = x[*v];
                }
            }
        }
        Cocycle2::new(self.h.clone(), self.m.clone(), values.iter().map(|v| self.m.reduce(v)).collect())
    }

    pub fn generators(&self) -> Result<Vec<Cocycle2>> {
        (0..self.group.rank()).map(|i| self.representative(&self.group.basis(i))).collect()
    }

    /// A 1-cochain a with c2 − c1 = δa, or the two distinct classes.
    pub fn cohomologous(&self, c1: &Cocycle2, c2: &Cocycle2) -> Result<Cohomologous> {
        c1.same_shape(c2)?;
        let k1 = self.class_of(c1)?;
        let k2 = self.class_of(c2)?;
        if k1 != k2 {
            return Ok(Cohomologous::Distinct { first: k1, second: k2 });
        }
        let diff = c2.sub(c1)?;
        let c00 = diff.get(&self.h.zero(), &self.h.zero()).clone();
        let norm = diff.normalized();
        let n = self.h.order() as usize;
        let mut a: Vec<Vec<i128>> = vec![vec![0; self.m.rank()]; n];
        for (slot, comp) in self.components.iter().enumerate() {
            let x = self.system.values_of(&norm, slot);
            let sol = self
                .system
                .solve_coboundary(&x, comp.modulus)?
                .ok_or_else(|| Error::Verification("equal classes but no coboundary solution".into()))?;
            for (s, v) in sol.into_iter().enumerate() {
                a[s + 1][slot] = v;
            }
        }
        let witness: Vec<GroupElem> = a.iter().map(|v| self.m.add(&self.m.reduce(v), &c00)).collect();
        let check = Cocycle2::coboundary(self.h.clone(), self.m.clone(), &witness);
        if check != diff {
            return Err(Error::Verification("coboundary witness does not reproduce the difference".into()));
        }
        Ok(Cohomologous::Witness(witness))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cohomologous {
    /// a(σ) for σ in `h.elements()` order.
    Witness(Vec<GroupElem>),
    Distinct { first: GroupElem, second: GroupElem },
}

/// Convenience: H² presented with the default budget.
pub fn h2_trivial(h: &FiniteAbelianGroup, m: &FiniteAbelianGroup, symmetric_only: bool) -> Result<H2> {
    H2::compute(h, m, symmetric_only, DEFAULT_BUDGET)
}

/// Tests c1 ~ c2 over the full H².
pub fn are_cohomologous(c1: &Cocycle2, c2: &Cocycle2) -> Result<Cohomologous> {
    c1.same_shape(c2)?;
    h2_trivial(c1.group(), c1.module(), false)?.cohomologous(c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn z2_in_z2() {
        let z2 = g(&[2]);
        assert_eq!(h2_trivial(&z2, &z2, false).unwrap().group.factors(), &[2]);
        assert_eq!(h2_trivial(&z2, &z2, true).unwrap().group.factors(), &[2]);
    }

    #[test]
    fn klein_four_in_z2() {
        let v = g(&[2, 2]);
        let z2 = g(&[2]);
        assert_eq!(h2_trivial(&v, &z2, true).unwrap().group.factors(), &[2, 2]);
        // plus the alternating class
        assert_eq!(h2_trivial(&v, &z2, false).unwrap().group.factors(), &[2, 2, 2]);
    }

    #[test]
    fn trivial_coefficients() {
        let h = g(&[2, 4]);
        assert!(h2_trivial(&h, &FiniteAbelianGroup::trivial(), false).unwrap().group.is_trivial());
    }

    #[test]
    fn cyclic_groups_have_cyclic_h2() {
        // H²(Z/a, Z/b) ≅ Z/gcd(a, b), all symmetric
        for (a, b, d) in [(4, 6, 2), (8, 4, 4), (3, 5, 1), (6, 6, 6)] {
            let h = h2_trivial(&FiniteAbelianGroup::cyclic(a), &FiniteAbelianGroup::cyclic(b), false).unwrap();
            assert_eq!(h.group.order(), d);
        }
    }

    #[test]
    fn representatives_round_trip() {
        let h = g(&[2, 2]);
        let m = g(&[2, 4]);
        for sym in [false, true] {
            let h2 = h2_trivial(&h, &m, sym).unwrap();
            for e in h2.group.elements() {
                let c = h2.representative(&e).unwrap();
                assert!(c.is_cocycle());
                assert_eq!(sym, sym && c.is_symmetric());
                assert_eq!(h2.class_of(&c).unwrap(), e);
            }
        }
    }

    #[test]
    fn witness_for_shifted_cocycle() {
        let h = FiniteAbelianGroup::cyclic(4);
        let m = FiniteAbelianGroup::cyclic(4);
        let h2 = h2_trivial(&h, &m, false).unwrap();
        let c1 = h2.representative(&[1]).unwrap();
        let a: Vec<GroupElem> = h.elements().iter().map(|x| vec![(3 * x[0] + 1) % 4]).collect();
        let c2 = c1.add(&Cocycle2::coboundary(h.clone(), m.clone(), &a)).unwrap();
        match h2.cohomologous(&c1, &c2).unwrap() {
            Cohomologous::Witness(w) => {
                assert_eq!(c2.sub(&c1).unwrap(), Cocycle2::coboundary(h.clone(), m.clone(), &w));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        let c0 = Cocycle2::trivial(h.clone(), m.clone());
        assert!(matches!(h2.cohomologous(&c0, &c1).unwrap(), Cohomologous::Distinct { .. }));
        assert_eq!(h2.cohomologous(&c1, &c1).unwrap(), Cohomologous::Witness(vec![vec![0]; 4]));
    }

    #[test]
    fn rejects_non_cocycles() {
        let z2 = g(&[2]);
        let h2 = h2_trivial(&z2, &z2, false).unwrap();
        let bad = Cocycle2::new(z2.clone(), z2.clone(), vec![vec![1], vec![0], vec![0], vec![0]]).unwrap();
        assert!(h2.class_of(&bad).is_err());
    }

    #[test]
    fn budget_is_checked() {
        let h = FiniteAbelianGroup::cyclic(64);
        assert!(matches!(H2::compute(&h, &h, true, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn order_sixteen_sources() {
        for f in [vec![16], vec![2, 2, 2, 2], vec![4, 4], vec![2, 8], vec![2, 2, 4]] {
            let h = g(&f);
            let sym = h2_trivial(&h, &g(&[2]), true).unwrap();
            assert_eq!(sym.group.order(), 1 << f.len());
        }
    }
}
