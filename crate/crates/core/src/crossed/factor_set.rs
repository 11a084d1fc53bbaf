use std::fmt;

use crate::exec::Exec;
use crate::grades::{FiniteAbelianGroup, GradeVector, GroupElem, Lattice};
use crate::scalars::{Field, ResidueElem, ResidueField};

/// A homogeneous unit u·t^γ of D₀F (u ∈ D₀*, γ ∈ Γ_F).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homog {
    pub unit: ResidueElem,
    pub grade: GradeVector,
}

impl Homog {
    pub fn one(d0: &ResidueField, r: usize) -> Self {
        Self {
            unit: d0.one(),
            grade: GradeVector::zero(r),
        }
    }

    pub fn new(unit: ResidueElem, grade: GradeVector) -> Self {
        Self { unit, grade }
    }

    pub fn mul(&self, d0: &ResidueField, o: &Self) -> Self {
        Self {
            unit: d0.mul(&self.unit, &o.unit),
            grade: self.grade.add(&o.grade),
        }
    }

    pub fn inv(&self, d0: &ResidueField) -> Self {
        Self {
            unit: d0.inv(&self.unit).expect("homogeneous units are invertible"),
            grade: self.grade.neg(),
        }
    }

    pub fn pow(&self, d0: &ResidueField, k: u64) -> Self {
        Self {
            unit: d0.pow(&self.unit, k),
            grade: self.grade.scale_int(k as i64),
        }
    }

    /// Applies ω_σ = θ(σ) ∈ G (F is fixed).
    pub fn act(&self, d0: &ResidueField, g: &[u64]) -> Self {
        Self {
            unit: d0.apply(g, &self.unit),
            grade: self.grade.clone(),
        }
    }

    pub fn is_one(&self, d0: &ResidueField) -> bool {
        self.grade.is_zero() && d0.is_one(&self.unit)
    }
}

/// A graded factor set (ω, f) of H in D₀F. ω is given by θ: H → G on the
/// basis of H; f is a total table of homogeneous units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub h: FiniteAbelianGroup,
    /// θ(eᵢ) ∈ G for each basis element of H.
    pub theta: Vec<GroupElem>,
    /// Row-major over `h.elements()`.
    pub f: Vec<Homog>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// θ does not define a homomorphism H → G (condition (1)/(2)).
    Theta { generator: usize, reason: String },
    /// f(σ,τ) is not a unit of D₀F with grade in Γ_F.
    Value { sigma: GroupElem, tau: GroupElem, reason: String },
    /// f(0,·) or f(·,0) is not 1.
    Normalization { sigma: GroupElem, tau: GroupElem },
    /// Condition (3) fails on this triple.
    Cocycle { sigma: GroupElem, tau: GroupElem, mu: GroupElem },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Theta { generator, reason } => write!(f, "theta on generator {generator}: {reason}"),
            Violation::Value { sigma, tau, reason } => write!(f, "f({sigma:?}, {tau:?}): {reason}"),
            Violation::Normalization { sigma, tau } => write!(f, "f({sigma:?}, {tau:?}) must be 1"),
            Violation::Cocycle { sigma, tau, mu } => {
                write!(f, "f(s,t)f(s+t,u) = w_s(f(t,u))f(s,t+u) fails at s={sigma:?}, t={tau:?}, u={mu:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FactorSet {
    pub fn get(&self, sigma: &[u64], tau: &[u64]) -> &Homog {
        let n = self.h.order() as usize;
        &self.f[self.h.index_of(sigma) * n + self.h.index_of(tau)]
    }

    pub fn get_idx(&self, i: usize, j: usize) -> &Homog {
        &self.f[i * self.h.order() as usize + j]
    }

    /// θ(σ) ∈ G.
    pub fn omega(&self, g: &FiniteAbelianGroup, sigma: &[u64]) -> GroupElem {
        sigma
            .iter()
            .zip(&self.theta)
            .fold(g.zero(), |acc, (&k, t)| g.add(&acc, &g.scale(t, k as i64)))
    }

    pub fn from_fn(h: FiniteAbelianGroup, theta: Vec<GroupElem>, f: impl Fn(&GroupElem, &GroupElem) -> Homog) -> Self {
        let elems = h.elements();
        let table = elems.iter().flat_map(|a| elems.iter().map(|b| f(a, b)).collect::<Vec<_>>()).collect();
        Self { h, theta, f: table }
    }

    /// Checks conditions (1)–(3) exhaustively; all violations are reported.
    pub fn validate(&self, d0: &ResidueField, gamma_f: &Lattice) -> ValidationReport {
        self.validate_with(d0, gamma_f, Exec::default())
    }

    pub fn validate_with(&self, d0: &ResidueField, gamma_f: &Lattice, exec: Exec) -> ValidationReport {
        let g = d0.group();
        let h = &self.h;
        let n = h.order() as usize;
        let mut violations = Vec::new();
        if self.theta.len() != h.rank() {
            violations.push(Violation::Theta {
                generator: self.theta.len(),
                reason: format!("{} images given for a group of rank {}", self.theta.len(), h.rank()),
            });
            return ValidationReport {
                triples_checked: 0,
                violations,
            };
        }
        for (i, (t, &q)) in self.theta.iter().zip(h.factors()).enumerate() {
            if !g.contains(t) {
                violations.push(Violation::Theta {
                    generator: i,
                    reason: format!("{t:?} is not an element of {}", g.describe()),
                });
            } else if g.scale(t, q as i64) != g.zero() {
                violations.push(Violation::Theta {
                    generator: i,
                    reason: format!("order of the image does not divide {q}"),
                });
            }
        }
        if self.f.len() != n * n {
            violations.push(Violation::Value {
                sigma: h.zero(),
                tau: h.zero(),
                reason: format!("table has {} entries, expected {}", self.f.len(), n * n),
            });
        }
        if !violations.is_empty() {
            return ValidationReport {
                triples_checked: 0,
                violations,
            };
        }
        let elems = h.elements();
        let r = gamma_f.rank();
        for (idx, v) in self.f.iter().enumerate() {
            let (s, t) = (&elems[idx / n], &elems[idx % n]);
            if v.grade.rank() != r || !gamma_f.contains(&v.grade) {
                violations.push(Violation::Value {
                    sigma: s.clone(),
                    tau: t.clone(),
                    reason: format!("grade {} is not in Gamma_F", v.grade),
                });
            }
            if v.unit.len() != d0.degree() || d0.is_zero(&v.unit) {
                violations.push(Violation::Value {
                    sigma: s.clone(),
                    tau: t.clone(),
                    reason: "unit part is zero or malformed".into(),
                });
            }
            if (idx / n == 0 || idx % n == 0) && !v.is_one(d0) {
                violations.push(Violation::Normalization {
                    sigma: s.clone(),
                    tau: t.clone(),
                });
            }
        }
        if !violations.is_empty() {
            return ValidationReport {
                triples_checked: 0,
                violations,
            };
        }
        let omegas: Vec<GroupElem> = elems.iter().map(|s| self.omega(g, s)).collect();
        let sum = |i: usize, j: usize| h.index_of(&h.add(&elems[i], &elems[j]));
        let bad = exec.map_range(n, |i| {
            let mut out = Vec::new();
            for j in 0..n {
                let ij = sum(i, j);
                for k in 0..n {
                    let lhs = self.get_idx(i, j).mul(d0, self.get_idx(ij, k));
                    let rhs = self.get_idx(j, k).act(d0, &omegas[i]).mul(d0, self.get_idx(i, sum(j, k)));
                    if lhs != rhs {
                        out.push(Violation::Cocycle {
                            sigma: elems[i].clone(),
                            tau: elems[j].clone(),
                            mu: elems[k].clone(),
                        });
                    }
                }
            }
            out
        });
        violations.extend(bad.into_iter().flatten());
        ValidationReport {
            triples_checked: n * n * n,
            violations,
        }
    }
}
