//! One report per subcommand. Reports are JSON values with sorted keys and
//! lexicographic H-order, so equal inputs give equal bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::document::{encode_class, encode_residue, AlgebraDocument, Built, DocError, DocResult};
use crate::cohomology::{h2_trivial, Cocycle2, H2, DEFAULT_BUDGET};
use crate::criteria::{self, CensusFilter};
use crate::crossed::{CrossedProduct, Elem};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grades::{FiniteAbelianGroup, GradeVector};
use crate::kummer::{ClassKey, KummerContext, KummerSubfield, SearchOptions};
use crate::scalars::{Field, ResidueElem};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub summary: String,
    pub body: Value,
}

impl Report {
    fn new(command: &str, summary: impl Into<String>, body: Value) -> Self {
        Self {
            command: command.into(),
            summary: summary.into(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        super::document::to_canonical_json(self)
    }

    /// Summary line, then one `key: value` line per top-level body field.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.summary);
        if let Value::Object(map) = &self.body {
            for (k, v) in map {
                out.push_str(&format!("  {k}: {v}\n"));
            }
        }
        out
    }
}

/// Budgets and execution mode shared by all subcommands.
#[derive(Debug, Clone, Copy)]
#[derive(Default)]
pub struct Settings {
    pub budget: Option<u128>,
    pub seed: u64,
    pub exec: Exec,
}


impl Settings {
    fn search(&self) -> SearchOptions {
        let mut o = SearchOptions {
            exec: self.exec,
            ..SearchOptions::default()
        };
        if let Some(b) = self.budget {
            o.budget = b.min(usize::MAX as u128) as usize;
        }
        o
    }

    fn h2_budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    fn witness_budget(&self) -> u128 {
        self.budget.unwrap_or(1 << 20)
    }
}

fn plain(e: Error) -> DocError {
    DocError { path: String::new(), error: e }
}

trait Plain<T> {
    fn plain(self) -> DocResult<T>;
}

impl<T> Plain<T> for Result<T> {
    fn plain(self) -> DocResult<T> {
        self.map_err(plain)
    }
}

fn rows<T: Clone>(flat: &[T], n: usize) -> Vec<Vec<T>> {
    if n == 0 {
        return Vec::new();
    }
    flat.chunks(n).map(|c| c.to_vec()).collect()
}

fn grade(v: &GradeVector) -> Value {
    json!(v.to_strings())
}

// ---- algebra structure ----

pub fn validate(doc: &AlgebraDocument, s: &Settings) -> DocResult<Report> {
    let parts = doc.parts()?;
    let report = parts.fs.validate_with(&parts.d0, &parts.gamma_f, s.exec);
    if !report.is_valid() {
        let shown: Vec<String> = report.violations.iter().take(10).map(|v| v.to_string()).collect();
        let more = report.violations.len().saturating_sub(shown.len());
        let tail = if more > 0 { format!("; and {more} more") } else { String::new() };
        return Err(DocError {
            path: "factor_set".into(),
            error: Error::InvalidFactorSet(format!("{}{tail}", shown.join("; "))),
        });
    }
    let built = doc.build_with(s.exec)?;
    let d = &built.d;
    let n = report.triples_checked;
    let trials = random_checks(d, s.seed).plain()?;
    Ok(Report::new(
        "validate",
        format!("factor set valid, {n}/{n} triples"),
        json!({
            "triples_checked": n,
            "violations": 0,
            "dimension": d.dimension(),
            "random_associativity": {"seed": s.seed, "trials": trials},
        }),
    ))
}

/// (ab)c = a(bc) and a(b + c) = ab + ac on seeded random elements.
fn random_checks(d: &CrossedProduct, seed: u64) -> Result<usize> {
    const TRIALS: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = |rng: &mut ChaCha8Rng| -> Elem {
        let mut e = d.zero();
        for s in 0..d.h().order() as usize {
            if rng.gen_bool(0.5) {
                continue;
            }
            let coeffs = (0..d.d0.degree())
                .map(|_| d.d0.base().from_i64(rng.gen_range(-3..=3)))
                .collect();
            let a = d.d0.from_coeffs(coeffs);
            e = d.add(&e, &d.term(s, a, d.delta[s].clone()));
        }
        e
    };
    for t in 0..TRIALS {
        let (a, b, c) = (random(&mut rng), random(&mut rng), random(&mut rng));
        if d.mul(&d.mul(&a, &b), &c) != d.mul(&a, &d.mul(&b, &c)) {
            return Err(Error::Verification(format!("associativity fails on random trial {t}")));
        }
        if d.mul(&a, &d.add(&b, &c)) != d.add(&d.mul(&a, &b), &d.mul(&a, &c)) {
            return Err(Error::Verification(format!("distributivity fails on random trial {t}")));
        }
    }
    Ok(TRIALS)
}

pub fn classify(b: &Built) -> Report {
    let c = b.d.classify();
    Report::new(
        "classify",
        format!("{:?}, Gamma_D/Gamma_F = {}", c.kind, FiniteAbelianGroup::new(c.invariant_factors.clone()).map(|g| g.describe()).unwrap_or_default()),
        json!(c),
    )
}

pub fn grade_assign(b: &Built) -> Report {
    let d = &b.d;
    let delta: Vec<Value> = d
        .h()
        .elements()
        .iter()
        .zip(&d.delta)
        .map(|(s, v)| json!({"sigma": s, "delta": grade(v)}))
        .collect();
    Report::new(
        "grade-assign",
        format!("{} grades assigned", delta.len()),
        json!({
            "delta": delta,
            "gamma_D_basis": d.gamma_d.basis().iter().map(grade).collect::<Vec<_>>(),
            "quotient_invariants": d.quotient.group().factors(),
        }),
    )
}

pub fn decompose(b: &Built) -> DocResult<Report> {
    let d = &b.d;
    let dec = d.decompose_f(None).plain()?;
    let n = d.h().order() as usize;
    let d0 = &d.d0;
    let dt: Vec<_> = dec.d.iter().map(|x| encode_residue(d0, x)).collect();
    let ht: Vec<Value> = dec
        .h_values
        .iter()
        .map(|h| json!({"unit": encode_residue(d0, &h.unit), "grade": grade(&h.grade)}))
        .collect();
    Ok(Report::new(
        "decompose",
        "f = d·h on all pairs",
        json!({
            "x": dec.x.iter().map(|h| json!({"unit": encode_residue(d0, &h.unit), "grade": grade(&h.grade)})).collect::<Vec<_>>(),
            "d_table": rows(&dt, n),
            "carries": rows(&dec.carries, n),
            "h_table": rows(&ht, n),
            "semiramified_cocycle": dec.semiramified_cocycle,
        }),
    ))
}

pub fn theta(b: &Built) -> DocResult<Report> {
    let t = b.d.theta().plain()?;
    Ok(Report::new(
        "theta",
        format!("surjective: {}, |ker| = {}", t.surjective, t.kernel.len()),
        json!({
            "source": t.hom.source.factors(),
            "target": t.hom.target.factors(),
            "images": t.hom.images,
            "surjective": t.surjective,
            "kernel": t.kernel,
        }),
    ))
}

pub fn centralizer(b: &Built) -> DocResult<Report> {
    let c = b.d.centralizer_b().plain()?;
    let (bf, zf, df) = c.dims;
    Ok(Report::new(
        "centralizer",
        format!("[B:F]·[Z(D0)F:F] = {bf}·{zf} = {} = [D:F]", df),
        json!({
            "kernel": c.kernel.elements,
            "reps": c.reps,
            "B_dimension": bf,
            "center_dimension": zf,
            "D_dimension": df,
            "identity_holds": bf * zf == df,
        }),
    ))
}

// ---- Kummer subfields ----

fn context(d: &CrossedProduct) -> DocResult<KummerContext<'_>> {
    KummerContext::with_default_exponent(d).plain()
}

/// The given subfield, or every subfield found within U₀.
fn subfields(ctx: &KummerContext, b: &Built, s: &Settings) -> DocResult<Vec<KummerSubfield>> {
    let deg = b.d.degree() as usize;
    match &b.subfield {
        Some(gens) => Ok(vec![ctx.f_of_classes(gens, deg * deg + 1).map_err(|error| DocError {
            path: "subfield_generators".into(),
            error,
        })?]),
        None => ctx.kummer_search(&b.units, &s.search()).plain(),
    }
}

fn classes(d: &CrossedProduct, cs: &[ClassKey]) -> Value {
    json!(cs.iter().map(|c| encode_class(d, c)).collect::<Vec<_>>())
}

fn subfield_json(d: &CrossedProduct, k: &KummerSubfield) -> Value {
    json!({
        "dimension": k.dimension(),
        "galois_type": k.galois_type(),
        "generators": classes(d, &k.generators),
        "k0_degree": k.k0.degree(),
        "k0_stabilizer": k.k0.stabilizer,
        "r": k.r.elements,
        "alpha_class": k.alpha_class,
    })
}

pub fn kummer_search(b: &Built, s: &Settings, target: Option<usize>, translates: bool) -> DocResult<Report> {
    let ctx = context(&b.d)?;
    let opts = SearchOptions {
        target_order: target,
        residue_translates: translates,
        ..s.search()
    };
    let found = ctx.kummer_search(&b.units, &opts).plain()?;
    Ok(Report::new(
        "kummer-search",
        format!("{} Kummer graded subfields within U0", found.len()),
        json!({
            "exponent": ctx.m,
            "subfields": found.iter().map(|k| subfield_json(&b.d, k)).collect::<Vec<_>>(),
        }),
    ))
}

fn table_json(d: &CrossedProduct, t: &[ResidueElem], n: usize) -> Value {
    let enc: Vec<_> = t.iter().map(|x| encode_residue(&d.d0, x)).collect();
    json!(rows(&enc, n))
}

fn cocycle_json(c: &Cocycle2) -> Value {
    json!(c.entries())
}

pub fn kummer_extract(b: &Built, s: &Settings) -> DocResult<Report> {
    let d = &b.d;
    let ctx = context(d)?;
    let dec = d.decompose_f(None).plain()?;
    let mut out = Vec::new();
    let mut ok = 0;
    for k in subfields(&ctx, b, s)? {
        let e = ctx.extract_24(&k, &dec).plain()?;
        ok += usize::from(e.clauses.all());
        out.push(json!({
            "subfield": subfield_json(d, &k),
            "r": e.r.elements,
            "b": e.b.iter().map(|x| encode_residue(&d.d0, x)).collect::<Vec<_>>(),
            "d_prime": table_json(d, &e.d_prime, e.r.len()),
            "omega_prime": e.omega_prime,
            "e_d_prime": cocycle_json(&e.e_d_prime),
            "clauses": e.clauses,
        }));
    }
    Ok(Report::new(
        "kummer-extract",
        format!("{ok}/{} extractions pass all clauses", out.len()),
        json!({"extractions": out}),
    ))
}

pub fn kummer_construct(b: &Built, s: &Settings) -> DocResult<Report> {
    let d = &b.d;
    let ctx = context(d)?;
    let dec = d.decompose_f(None).plain()?;
    let deg = d.degree() as usize;
    if let Some(c) = &b.construct {
        let m = d.d0.fixed_field(&c.m_stabilizer).map_err(|error| DocError { path: "construct.m_stabilizer".into(), error })?;
        let witness = match &c.b {
            Some(bs) => Some(bs.clone()),
            None => ctx.find_witness(&c.r, &c.d_prime, &dec, &b.units, s.witness_budget(), s.exec).plain()?,
        };
        let Some(bs) = witness else {
            return Ok(Report::new("kummer-construct", "no witness b found within U0", json!({"found": false})));
        };
        let (k, clauses) = ctx
            .construct_26(&m, &c.r, &c.d_prime, &bs, &dec, deg * deg + 1)
            .map_err(|error| DocError { path: "construct".into(), error })?;
        return Ok(Report::new(
            "kummer-construct",
            format!("constructed a subfield of dimension {}; clauses {}", k.dimension(), if clauses.all() { "hold" } else { "fail" }),
            json!({
                "found": true,
                "b": bs.iter().map(|x| encode_residue(&d.d0, x)).collect::<Vec<_>>(),
                "subfield": subfield_json(d, &k),
                "clauses": clauses,
            }),
        ));
    }
    // round trip over the given or searched subfields
    let mut out = Vec::new();
    let mut stable = 0;
    for k in subfields(&ctx, b, s)? {
        let e = ctx.extract_24(&k, &dec).plain()?;
        let (k2, clauses) = ctx.construct_26(&k.k0, &e.r.elements, &e.d_prime, &e.b, &dec, deg * deg + 1).plain()?;
        let same = k.signature() == k2.signature();
        stable += usize::from(same && clauses.all() && e.clauses.all());
        out.push(json!({
            "subfield": subfield_json(d, &k),
            "reconstructed": subfield_json(d, &k2),
            "signature_preserved": same,
            "extract_clauses": e.clauses,
            "construct_clauses": clauses,
        }));
    }
    Ok(Report::new(
        "kummer-construct",
        format!("{stable}/{} round trips class-stable", out.len()),
        json!({"round_trips": out}),
    ))
}

pub fn alpha(b: &Built, s: &Settings) -> DocResult<Report> {
    let d = &b.d;
    let ctx = context(d)?;
    let mut out = Vec::new();
    for k in subfields(&ctx, b, s)? {
        let h2 = h2_trivial(&k.r.group, &k.kum0.characters.group, true).plain()?;
        out.push(json!({
            "subfield": subfield_json(d, &k),
            "R_invariants": k.r.group.factors(),
            "kum0_invariants": k.kum0.characters.group.factors(),
            "alpha": cocycle_json(&k.alpha),
            "alpha_class": k.alpha_class,
            "H2_sym_invariants": h2.group.factors(),
            "split": k.alpha_class.iter().all(|&x| x == 0),
        }));
    }
    Ok(Report::new("alpha", format!("{} alpha classes", out.len()), json!({"subfields": out})))
}

pub fn h2(h: &[u64], m: &[u64], symmetric: bool, s: &Settings) -> DocResult<Report> {
    let hg = FiniteAbelianGroup::new(h.to_vec()).map_err(|error| DocError { path: "--h".into(), error })?;
    let mg = FiniteAbelianGroup::new(m.to_vec()).map_err(|error| DocError { path: "--m".into(), error })?;
    let c = H2::compute(&hg, &mg, symmetric, s.h2_budget()).plain()?;
    let name = if symmetric { "H2_sym" } else { "H2" };
    Ok(Report::new(
        "h2",
        format!("{name}({}, {}) = {}", hg.describe(), mg.describe(), c.group.describe()),
        json!({
            "H": hg.factors(),
            "M": mg.factors(),
            "symmetric": symmetric,
            "invariants": c.group.factors(),
            "order": c.group.order(),
        }),
    ))
}

// ---- criteria ----

fn verdict_or_reason<T: Serialize>(r: Result<T>) -> DocResult<Value> {
    match r {
        Ok(v) => Ok(json!(v)),
        Err(Error::Hypothesis(why)) => Ok(json!({"verdict": "not_applicable", "reason": why})),
        Err(e) => Err(plain(e)),
    }
}

pub fn criteria(b: &Built) -> DocResult<Report> {
    let d = &b.d;
    let deg = d.degree();
    let p = crate::scalars::prime_factors(deg as u128).first().map(|&p| p as u64);
    let rank = verdict_or_reason(criteria::noncyclic_by_rank(d))?;
    let exp = match p {
        Some(p) => verdict_or_reason(criteria::no_elem_abelian_by_exp(d, p))?,
        None => json!({"verdict": "not_applicable", "reason": "deg(D) = 1"}),
    };
    let structure = match p {
        Some(p) => match criteria::thm215_structure_check(d, p) {
            Ok(r) => json!({
                "exponent": r.exponent,
                "exp_ok": r.exp_ok,
                "root_of_unity": r.root_of_unity,
                "G_p": r.g_p,
                "L_degree": r.l.degree(),
                "L_stabilizer": r.l.stabilizer,
                "scope_notes": r.scope_notes,
            }),
            Err(Error::Hypothesis(why)) => json!({"verdict": "not_applicable", "reason": why}),
            Err(e) => return Err(plain(e)),
        },
        None => json!({"verdict": "not_applicable", "reason": "deg(D) = 1"}),
    };
    let g = d.d0.group();
    let mut towers = Vec::new();
    for sub in g.subgroups() {
        let gens: Vec<_> = sub.iter().cloned().collect();
        let m = d.d0.fixed_field(&gens).plain()?;
        towers.push(match criteria::thm214_tower_check(d, &m) {
            Ok(t) => json!({"M_stabilizer": sub, "M_degree": m.degree(), "report": t}),
            Err(Error::Hypothesis(why)) => json!({"M_stabilizer": sub, "verdict": "not_applicable", "reason": why}),
            Err(e) => return Err(plain(e)),
        });
    }
    let headline = rank.get("verdict").and_then(Value::as_str).unwrap_or("inconclusive").to_string();
    Ok(Report::new(
        "criteria",
        format!("rank criterion: {headline}"),
        json!({
            "noncyclic_by_rank": rank,
            "no_elem_abelian_by_exp": exp,
            "structure_check": structure,
            "tower_checks": towers,
        }),
    ))
}

pub fn census(b: &Built, s: &Settings, filter: CensusFilter) -> DocResult<Report> {
    let found = criteria::graded_subfield_census(&b.d, &b.units, filter, &s.search()).plain()?;
    let mut types: Vec<Vec<u64>> = found.iter().map(|k| k.galois_type().to_vec()).collect();
    types.sort();
    types.dedup();
    Ok(Report::new(
        "census",
        format!("{} maximal Kummer graded subfields found within U0; types {:?}", found.len(), types),
        json!({
            "filter": format!("{filter:?}"),
            "types_found": types,
            "subfields": found.iter().map(|k| subfield_json(&b.d, k)).collect::<Vec<_>>(),
            "scope_notes": ["an under-approximation: only subfields generated within U0 and kum(D0/F0) are found"],
        }),
    ))
}
