//! Structural predicates on graded data and the subfield census.

use serde::Serialize;

use crate::crossed::{CrossedProduct, RamificationKind};
use crate::error::{Error, Result};
use crate::grades::presentation::present_subgroup;
use crate::grades::GroupElem;
use crate::kummer::{KummerContext, KummerSubfield, SearchOptions};
use crate::scalars::prime_factors;
use crate::scalars::{Field, ResidueElem, ResidueField, Subfield};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub invariant_factors: Vec<u64>,
    pub exponent: u64,
    pub hypotheses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: String,
    pub evidence: Evidence,
    pub scope_notes: Vec<String>,
}

/// deg(D) = p^n, returned as p.
fn prime_power_base(n: u64) -> Option<u64> {
    let ps = prime_factors(n as u128);
    (ps.len() == 1).then(|| ps[0] as u64)
}

fn require_semiramified(d: &CrossedProduct, hyps: &mut Vec<String>) -> Result<()> {
    if d.classify().kind != RamificationKind::Semiramified {
        return Err(Error::Hypothesis(format!("D is {:?}, not semiramified", d.classify().kind)));
    }
    hyps.push("D is semiramified".into());
    Ok(())
}

fn require_tame(d: &CrossedProduct, p: u64, hyps: &mut Vec<String>) -> Result<()> {
    let ch = d.d0.characteristic();
    if ch == p {
        return Err(Error::Hypothesis(format!("char(F0) = {ch} divides deg(D)")));
    }
    hyps.push(format!("char(F0) = {ch} does not divide deg(D)"));
    Ok(())
}

fn evidence(d: &CrossedProduct, hypotheses: Vec<String>) -> Evidence {
    let c = d.classify();
    Evidence {
        invariant_factors: c.invariant_factors,
        exponent: c.exponent,
        hypotheses,
    }
}

const GRADED_NOTE: &str = "valued inputs are taken as their associated graded algebra";

/// Noncyclic when rank(Γ_D/Γ_F) ≥ 3 for semiramified D of prime-power degree.
pub fn noncyclic_by_rank(d: &CrossedProduct) -> Result<Verdict> {
    let mut hyps = Vec::new();
    require_semiramified(d, &mut hyps)?;
    let deg = d.degree();
    let p = prime_power_base(deg)
        .ok_or_else(|| Error::Hypothesis(format!("deg(D) = {deg} is not a prime power")))?;
    hyps.push(format!("deg(D) = {deg} is a power of {p}"));
    require_tame(d, p, &mut hyps)?;
    let ev = evidence(d, hyps);
    let verdict = if ev.invariant_factors.len() >= 3 { "noncyclic" } else { "inconclusive" };
    Ok(Verdict {
        verdict: verdict.into(),
        evidence: ev,
        scope_notes: vec![
            "a rank below 3 never certifies cyclicity".into(),
            GRADED_NOTE.into(),
        ],
    })
}

/// No elementary abelian maximal subfield when p³ | exp(Γ_D/Γ_F).
pub fn no_elem_abelian_by_exp(d: &CrossedProduct, p: u64) -> Result<Verdict> {
    let mut hyps = Vec::new();
    require_semiramified(d, &mut hyps)?;
    let deg = d.degree();
    if prime_power_base(deg) != Some(p) {
        return Err(Error::Hypothesis(format!("deg(D) = {deg} is not a power of {p}")));
    }
    hyps.push(format!("deg(D) = {deg} is a power of {p}"));
    require_tame(d, p, &mut hyps)?;
    let ev = evidence(d, hyps);
    let verdict = if ev.exponent.is_multiple_of(p * p * p) {
        "no_elementary_abelian_maximal_subfield"
    } else {
        "inconclusive"
    };
    Ok(Verdict {
        verdict: verdict.into(),
        evidence: ev,
        scope_notes: vec![GRADED_NOTE.into()],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub m_over_f0_cyclic: bool,
    pub d0_over_m_cyclic: bool,
    pub gal_m_over_f0: Vec<u64>,
    pub gal_d0_over_m: Vec<u64>,
    pub root_of_unity_of_degree: bool,
    pub structural_condition: bool,
    pub scope_notes: Vec<String>,
}

/// Whether M/F₀ and D₀/M are both cyclic.
pub fn thm214_tower_check(d: &CrossedProduct, m: &Subfield) -> Result<TowerReport> {
    let mut hyps = Vec::new();
    require_semiramified(d, &mut hyps)?;
    let g = d.d0.group();
    if !g.is_subgroup(&m.stabilizer) {
        return Err(Error::InvalidInput("M is not Galois-stable".into()));
    }
    let gal_m = m.galois_group(&d.d0)?;
    let stab: Vec<GroupElem> = m.stabilizer.iter().cloned().collect();
    let gal_top = present_subgroup(g, &stab)?.group;
    let (a, b) = (gal_m.is_cyclic(), gal_top.is_cyclic());
    Ok(TowerReport {
        m_over_f0_cyclic: a,
        d0_over_m_cyclic: b,
        gal_m_over_f0: gal_m.factors().to_vec(),
        gal_d0_over_m: gal_top.factors().to_vec(),
        root_of_unity_of_degree: d.d0.base().has_primitive_root(d.degree()),
        structural_condition: a && b,
        scope_notes: vec!["the Brauer-class condition on D0/M is out of scope and not checked".into()],
    })
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub exponent: u64,
    pub exp_ok: bool,
    pub root_of_unity: bool,
    /// G^p.
    pub g_p: Vec<GroupElem>,
    pub l: Subfield,
    pub l_field: ResidueField,
    pub scope_notes: Vec<String>,
}

/// exp(G) ∈ {p, p²} and L = Fix_{G^p}(D₀).
pub fn thm215_structure_check(d: &CrossedProduct, p: u64) -> Result<StructureReport> {
    let mut hyps = Vec::new();
    require_semiramified(d, &mut hyps)?;
    if prime_power_base(d.degree()) != Some(p) {
        return Err(Error::Hypothesis(format!("deg(D) = {} is not a power of {p}", d.degree())));
    }
    let g = d.d0.group();
    let e = g.exponent();
    let gp = g.multiples(p as i64);
    let l = d.d0.fixed_field(&gp)?;
    let (l_field, _) = d.d0.fixed_field_presented(&gp)?;
    Ok(StructureReport {
        exponent: e,
        exp_ok: e == p || e == p * p,
        root_of_unity: d.d0.base().has_primitive_root(p),
        g_p: g.span(&gp).into_iter().collect(),
        l,
        l_field,
        scope_notes: vec!["the Dec/Brauer membership condition is out of scope and not checked".into()],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFilter {
    CyclicMaximal,
    ElementaryAbelianMaximal,
    All,
}

pub fn is_elementary_abelian(factors: &[u64]) -> bool {
    match factors.first() {
        None => true,
        Some(&p) => prime_factors(p as u128).len() == 1 && prime_factors(p as u128)[0] as u64 == p && factors.iter().all(|&f| f == p),
    }
}

/// Maximal Kummer graded subfields generated within U₀ (and the classes of
/// kum(D₀/F₀)), with their Galois types. An under-approximation.
pub fn graded_subfield_census(
    d: &CrossedProduct,
    units: &[ResidueElem],
    filter: CensusFilter,
    opts: &SearchOptions,
) -> Result<Vec<KummerSubfield>> {
    let ctx = KummerContext::with_default_exponent(d)?;
    let deg = d.degree() as usize;
    let opts = SearchOptions {
        target_order: Some(deg),
        residue_translates: true,
        ..opts.clone()
    };
    let found = ctx.kummer_search(units, &opts)?;
    Ok(found
        .into_iter()
        .filter(|k| match filter {
            CensusFilter::CyclicMaximal => k.kum.group.is_cyclic(),
            CensusFilter::ElementaryAbelianMaximal => is_elementary_abelian(k.galois_type()),
            CensusFilter::All => true,
        })
        .collect())
}
