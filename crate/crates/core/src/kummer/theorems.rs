use super::classes::{ClassKey, KummerContext};
use super::subfield::KummerSubfield;
use crate::cohomology::{h2_trivial, Cocycle2};
use crate::crossed::Decomposition;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grades::presentation::{present_subgroup, Presented};
use crate::grades::GroupElem;
use crate::scalars::{Field, ResidueElem, Subfield};

/// Output of the necessary-condition extraction. Tables are indexed by
/// `r.group.elements()` (row-major for two arguments).
#[derive(Debug, Clone)]
pub struct Extraction {
    pub r: Presented<GroupElem, GroupElem>,
    /// ω′_γ̄ = Inn(b_γ̄)∘ω_γ̄ as an element of G (Inn(b) is trivial on D₀).
    pub omega_prime: Vec<GroupElem>,
    pub b: Vec<ResidueElem>,
    pub d_prime: Vec<ResidueElem>,
    /// e_*(d′) in kum(K₀/F₀).
    pub e_d_prime: Cocycle2,
    pub clauses: Clauses,
}

/// The five verification clauses shared by both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Clauses {
    pub d_prime_in_kum: bool,
    pub d_prime_symmetric_cocycle: bool,
    pub omega_prime_fixes_k0: bool,
    pub cohomologous_with_witness: bool,
    pub e_star_matches_alpha: bool,
}

impl Clauses {
    pub fn all(&self) -> bool {
        self.d_prime_in_kum
            && self.d_prime_symmetric_cocycle
            && self.omega_prime_fixes_k0
            && self.cohomologous_with_witness
            && self.e_star_matches_alpha
    }
}

/// Canonical presentation of the subgroup R ⊆ H with the given elements.
pub fn present_r(h: &crate::grades::FiniteAbelianGroup, elems: &[GroupElem]) -> Result<Presented<GroupElem, GroupElem>> {
    let mut sorted: Vec<GroupElem> = h.span(elems).into_iter().collect();
    sorted.sort();
    present_subgroup(h, &sorted)
}

impl<'a> KummerContext<'a> {
    fn twisted(&self, dec: &Decomposition, r: &Presented<GroupElem, GroupElem>, b: &[ResidueElem]) -> Vec<ResidueElem> {
        let d = self.d;
        let d0 = &d.d0;
        let h = d.h();
        let n = h.order() as usize;
        let re = r.group.elements();
        let mut out = Vec::with_capacity(re.len() * re.len());
        for (i, a) in re.iter().enumerate() {
            for (j, c) in re.iter().enumerate() {
                let ha = r.element_at(a).expect("R coordinates");
                let hc = r.element_at(c).expect("R coordinates");
                let (ia, ic) = (h.index_of(ha), h.index_of(hc));
                let k = r.group.index_of(&r.group.add(a, c));
                let v = d0.mul(
                    &d0.mul(&b[i], &d0.apply(d.omega_idx(ia), &b[j])),
                    &dec.d[ia * n + ic],
                );
                out.push(d0.mul(&v, &d0.inv(&b[k]).expect("witness values are units")));
            }
        }
        out
    }

    fn in_kum_of(&self, m: &Subfield, x: &ResidueElem) -> bool {
        let d0 = &self.d.d0;
        !d0.is_zero(x) && m.contains(d0, x) && d0.as_base(&d0.pow(x, self.m)).is_some()
    }

    fn is_symmetric_cocycle(&self, r: &Presented<GroupElem, GroupElem>, t: &[ResidueElem]) -> bool {
        let d0 = &self.d.d0;
        let q = &r.group;
        let e = q.elements();
        let n = e.len();
        let at = |a: &GroupElem, b: &GroupElem| &t[q.index_of(a) * n + q.index_of(b)];
        e.iter().all(|a| {
            e.iter().all(|b| {
                at(a, b) == at(b, a)
                    && e.iter().all(|c| {
                        d0.mul(at(b, c), at(a, &q.add(b, c))) == d0.mul(at(a, b), at(&q.add(a, b), c))
                    })
            })
        })
    }

    /// e_*: values in KUM(K₀/F₀) pushed to kum(K₀/F₀).
    fn e_star(&self, k: &KummerSubfield, r: &Presented<GroupElem, GroupElem>, t: &[ResidueElem]) -> Result<Cocycle2> {
        let vals = t
            .iter()
            .map(|x| self.kum0_coords(k, &self.key(0, x)?))
            .collect::<Result<Vec<_>>>()?;
        Cocycle2::new(r.group.clone(), k.kum0.characters.group.clone(), vals)
    }

    fn alpha_matches(&self, k: &KummerSubfield, e_d: &Cocycle2) -> Result<bool> {
        let h2 = h2_trivial(&k.r.group, &k.kum0.characters.group, true)?;
        Ok(h2.class_of(e_d)? == k.alpha_class)
    }

    /// Reads off (ω′, d′) and the witness (b_γ̄) from a Kummer subfield,
    /// following y_γ̄ = b_γ̄·c_γ̄·x_γ̄ with c_γ̄ a coefficient-one monomial.
    pub fn extract_24(&self, k: &KummerSubfield, dec: &Decomposition) -> Result<Extraction> {
        let d = self.d;
        let d0 = &d.d0;
        let h = d.h();
        let r = k.r.clone();
        let re = r.group.elements();
        let b: Vec<ResidueElem> = re
            .iter()
            .map(|c| {
                let s = h.index_of(r.element_at(c).expect("R coordinates"));
                k.generators
                    .iter()
                    .find(|g| g.sigma == s)
                    .map(|g| g.unit.clone())
                    .expect("generator over every element of R")
            })
            .collect();
        let omega_prime: Vec<GroupElem> = re
            .iter()
            .map(|c| d.omega_idx(h.index_of(r.element_at(c).expect("R coordinates"))).clone())
            .collect();
        let d_prime = self.twisted(dec, &r, &b);
        let mut clauses = Clauses {
            d_prime_in_kum: d_prime.iter().all(|x| self.in_kum_of(&k.k0, x)),
            d_prime_symmetric_cocycle: self.is_symmetric_cocycle(&r, &d_prime),
            omega_prime_fixes_k0: omega_prime
                .iter()
                .all(|w| k.k0.basis.iter().all(|x| d0.apply(w, x) == *x)),
            ..Clauses::default()
        };
        // (ω′, d′) is a factor set over R, equal to the b-twist of res(ω, d)
        let factor_set_ok = {
            let q = &r.group;
            let n = re.len();
            let at = |a: &GroupElem, c: &GroupElem| &d_prime[q.index_of(a) * n + q.index_of(c)];
            re.iter().zip(&omega_prime).all(|(a, w)| {
                re.iter().all(|c| {
                    re.iter().all(|e| {
                        d0.mul(at(a, c), at(&q.add(a, c), e)) == d0.mul(&d0.apply(w, at(c, e)), at(a, &q.add(c, e)))
                    })
                })
            })
        };
        clauses.cohomologous_with_witness = factor_set_ok && self.twisted(dec, &r, &b) == d_prime;
        let e_d_prime = if clauses.d_prime_in_kum {
            let e = self.e_star(k, &r, &d_prime)?;
            clauses.e_star_matches_alpha = clauses.d_prime_symmetric_cocycle && self.alpha_matches(k, &e)?;
            e
        } else {
            Cocycle2::trivial(r.group.clone(), k.kum0.characters.group.clone())
        };
        if !clauses.all() {
            return Err(Error::Verification(format!("extraction clauses failed: {clauses:?}")));
        }
        Ok(Extraction {
            r,
            omega_prime,
            b,
            d_prime,
            e_d_prime,
            clauses,
        })
    }

    /// Builds K with K₀ = M and Γ_K/Γ_F = R from (d′, b) by y_γ̄ = b_γ̄·x_γ̄.
    /// `d_prime` and `b` are indexed by the canonical presentation of R
    /// (see [`present_r`]).
    pub fn construct_26(
        &self,
        m: &Subfield,
        r_elems: &[GroupElem],
        d_prime: &[ResidueElem],
        b: &[ResidueElem],
        dec: &Decomposition,
        budget: usize,
    ) -> Result<(KummerSubfield, Clauses)> {
        let d = self.d;
        let d0 = &d.d0;
        let h = d.h();
        let r = present_r(h, r_elems)?;
        let re = r.group.elements();
        if d_prime.len() != re.len() * re.len() || b.len() != re.len() {
            return Err(Error::InvalidInput(format!(
                "d' needs {} entries and b needs {} for |R| = {}",
                re.len() * re.len(),
                re.len(),
                re.len()
            )));
        }
        let h_idx = |c: &GroupElem| h.index_of(r.element_at(c).expect("R coordinates"));
        for c in &re {
            let w = d.omega_idx(h_idx(c));
            if m.basis.iter().any(|x| d0.apply(w, x) != *x) {
                return Err(Error::Hypothesis(format!(
                    "omega of {:?} does not fix M",
                    r.element_at(c).expect("R coordinates")
                )));
            }
        }
        if let Some(pos) = d_prime.iter().position(|x| !self.in_kum_of(m, x)) {
            return Err(Error::Hypothesis(format!("d'({:?}, {:?}) is not in KUM(M/F0)", re[pos / re.len()], re[pos % re.len()])));
        }
        if !self.is_symmetric_cocycle(&r, d_prime) {
            return Err(Error::Hypothesis("d' is not a symmetric 2-cocycle".into()));
        }
        if b.iter().any(|x| d0.is_zero(x)) {
            return Err(Error::Hypothesis("witness values must be units".into()));
        }
        if self.twisted(dec, &r, b) != d_prime {
            return Err(Error::Hypothesis("b does not witness (omega', d') ~ res(omega, d)".into()));
        }
        let mut gens: Vec<ClassKey> = re
            .iter()
            .zip(b)
            .map(|(c, u)| self.key(h_idx(c), u))
            .collect::<Result<_>>()?;
        let kum_m = self.chars.kum_of_subfield(d0, &m.stabilizer)?;
        for u in &kum_m.reps {
            gens.push(self.key(0, u)?);
        }
        let k = self.f_of_classes(&gens, budget)?;
        if k.k0.stabilizer != m.stabilizer {
            return Err(Error::Verification("constructed K0 differs from M".into()));
        }
        let k_r: Vec<_> = k.r.elements.iter().cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let want: Vec<_> = r.elements.iter().cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        if k_r != want {
            return Err(Error::Verification("constructed Gamma_K/Gamma_F differs from R".into()));
        }
        let e = self.e_star(&k, &r, d_prime)?;
        let clauses = Clauses {
            d_prime_in_kum: true,
            d_prime_symmetric_cocycle: true,
            omega_prime_fixes_k0: true,
            cohomologous_with_witness: true,
            e_star_matches_alpha: self.alpha_matches(&k, &e)?,
        };
        if !clauses.e_star_matches_alpha {
            return Err(Error::Verification("e_*[d'] differs from [alpha_K]".into()));
        }
        Ok((k, clauses))
    }

    /// Searches b ∈ U₀^R (b at 0 forced to d′(0,0)) for the twisted
    /// coboundary identity. `None` means no witness among the candidates.
    pub fn find_witness(
        &self,
        r_elems: &[GroupElem],
        d_prime: &[ResidueElem],
        dec: &Decomposition,
        units: &[ResidueElem],
        budget: u128,
        exec: Exec,
    ) -> Result<Option<Vec<ResidueElem>>> {
        let r = present_r(self.d.h(), r_elems)?;
        let n = r.len();
        if d_prime.len() != n * n {
            return Err(Error::InvalidInput(format!("d' needs {} entries", n * n)));
        }
        if units.is_empty() {
            return Ok(None);
        }
        let free = n - 1;
        let total = (units.len() as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
        if total > budget {
            return Err(Error::budget("witness candidates", total, budget));
        }
        let b0 = d_prime[0].clone();
        let family = |mut idx: usize| -> Vec<ResidueElem> {
            let mut b = vec![b0.clone()];
            let mut tail = vec![units[0].clone(); free];
            for slot in tail.iter_mut().rev() {
                *slot = units[idx % units.len()].clone();
                idx /= units.len();
            }
            b.extend(tail);
            b
        };
        let found = exec.find_first(total as usize, |i| {
            let b = family(i);
            b.iter().all(|x| !self.d.d0.is_zero(x)) && self.twisted(dec, &r, &b) == d_prime
        });
        Ok(found.map(family))
    }
}
