use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use super::classes::{ClassKey, KummerContext};
use super::subfield::KummerSubfield;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::scalars::{Field, ResidueElem};

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Keep only subfields with [K:F] equal to this.
    pub target_order: Option<usize>,
    /// Also use the classes of kum(D₀/F₀) as unit parts.
    pub residue_translates: bool,
    /// Bound on the number of subgroups explored.
    pub budget: usize,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            target_order: None,
            residue_translates: false,
            budget: 100_000,
            exec: Exec::default(),
        }
    }
}

impl<'a> KummerContext<'a> {
    /// Candidate classes u·x_σ, u ∈ U₀ ∪ {1}, whose m-th power lies in F.
    pub fn candidates(&self, units: &[ResidueElem], residue_translates: bool) -> Result<Vec<ClassKey>> {
        let d0 = &self.d.d0;
        let mut us: Vec<ResidueElem> = vec![d0.one()];
        us.extend(units.iter().filter(|u| !d0.is_zero(u)).cloned());
        if residue_translates {
            us.extend(d0.kum0(self.m)?.reps);
        }
        let n = self.d.h().order() as usize;
        let mut out = BTreeSet::new();
        for s in 0..n {
            for u in &us {
                let c = self.key(s, u)?;
                if c != self.identity() && self.mth_power_in_f(&c)? {
                    out.insert(c);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// All subgroups of D*/F* generated by pairwise commuting candidates
    /// with [F(A):F] = |A|, as Kummer subfields, in a deterministic order.
    pub fn kummer_search(&self, units: &[ResidueElem], opts: &SearchOptions) -> Result<Vec<KummerSubfield>> {
        let cands = self.candidates(units, opts.residue_translates)?;
        let deg = self.d.degree() as usize;
        if let Some(t) = opts.target_order {
            if t == 0 || !(deg * deg).is_multiple_of(t) {
                return Err(Error::InvalidInput(format!("target order {t} does not divide [D:F] = {}", deg * deg)));
            }
        }
        let table = ClassTable::new(self);
        let cand_ids: Vec<usize> = cands.iter().map(|c| table.intern(c.clone())).collect();
        let one = table.intern(self.identity());

        type Group = (BTreeSet<usize>, Vec<usize>);
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut layer: Vec<Group> = vec![(BTreeSet::from([one]), Vec::new())];
        seen.insert(layer[0].0.clone());
        let mut found: Vec<Group> = layer.clone();
        while !layer.is_empty() {
            // enlargements of each group by one commuting candidate
            let grown: Vec<Result<Vec<Group>>> = opts.exec.map(&layer, |(set, gens)| {
                let mut out: Vec<Group> = Vec::new();
                // c ∈ S·c' gives ⟨S, c⟩ = ⟨S, c'⟩
                let mut covered: BTreeSet<usize> = BTreeSet::new();
                for &c in &cand_ids {
                    if set.contains(&c) || covered.contains(&c) {
                        continue;
                    }
                    let mut commuting = true;
                    for &g in gens {
                        if !table.commute(g, c)? {
                            commuting = false;
                            break;
                        }
                    }
                    if !commuting {
                        continue;
                    }
                    for &x in set {
                        covered.insert(table.mul(x, c)?);
                    }
                    if let Some(s2) = table.extend(set, c, deg)? {
                        let mut g2 = gens.clone();
                        g2.push(c);
                        out.push((s2, g2));
                    }
                }
                Ok(out)
            });
            let mut fresh = Vec::new();
            for group in grown {
                for (s, g) in group? {
                    if seen.insert(s.clone()) {
                        if seen.len() > opts.budget {
                            return Err(Error::budget("kummer search subgroups", seen.len() as u128, opts.budget as u128));
                        }
                        fresh.push((s, g));
                    }
                }
            }
            let ok = opts.exec.map(&fresh, |(s, _)| self.independent(&table.keys(s)));
            layer = fresh.into_iter().zip(ok).filter(|(_, ok)| *ok).map(|(g, _)| g).collect();
            found.extend(layer.iter().cloned());
        }
        let mut keyed: Vec<(BTreeSet<ClassKey>, Vec<ClassKey>)> = found
            .into_iter()
            .filter(|(s, _)| opts.target_order.is_none_or(|t| s.len() == t))
            .map(|(s, g)| (table.keys(&s).into_iter().collect(), table.keys(&g)))
            .collect();
        keyed.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let built = opts.exec.map(&keyed, |(_, g)| self.f_of_classes(g, deg + 1));
        built.into_iter().collect()
    }

    fn independent(&self, set: &[ClassKey]) -> bool {
        let mut by_sigma: std::collections::BTreeMap<usize, Vec<ResidueElem>> = Default::default();
        for c in set {
            by_sigma.entry(c.sigma).or_default().push(c.unit.clone());
        }
        by_sigma
            .values()
            .all(|u| crate::scalars::linalg::rank(self.d.d0.base(), u.clone()) == u.len())
    }
}

/// Interned classes with memoized products, shared across search workers.
struct ClassTable<'c, 'a> {
    ctx: &'c KummerContext<'a>,
    state: Mutex<TableState>,
}

#[derive(Default)]
struct TableState {
    ids: HashMap<ClassKey, usize>,
    keys: Vec<ClassKey>,
    products: HashMap<(usize, usize), usize>,
    commuting: HashMap<(usize, usize), bool>,
}

impl<'c, 'a> ClassTable<'c, 'a> {
    fn new(ctx: &'c KummerContext<'a>) -> Self {
        Self { ctx, state: Mutex::default() }
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, TableState> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn intern(&self, k: ClassKey) -> usize {
        let mut st = self.lock();
        if let Some(&i) = st.ids.get(&k) {
            return i;
        }
        let i = st.keys.len();
        st.keys.push(k.clone());
        st.ids.insert(k, i);
        i
    }

    fn key(&self, i: usize) -> ClassKey {
        self.lock().keys[i].clone()
    }

    fn keys<'i>(&self, ids: impl IntoIterator<Item = &'i usize>) -> Vec<ClassKey> {
        let st = self.lock();
        ids.into_iter().map(|&i| st.keys[i].clone()).collect()
    }

    fn mul(&self, a: usize, b: usize) -> Result<usize> {
        if let Some(&p) = self.lock().products.get(&(a, b)) {
            return Ok(p);
        }
        let p = self.ctx.mul(&self.key(a), &self.key(b))?;
        let p = self.intern(p);
        self.lock().products.insert((a, b), p);
        Ok(p)
    }

    fn commute(&self, a: usize, b: usize) -> Result<bool> {
        let k = (a.min(b), a.max(b));
        if let Some(&c) = self.lock().commuting.get(&k) {
            return Ok(c);
        }
        let c = self.ctx.commute(&self.key(a), &self.key(b));
        self.lock().commuting.insert(k, c);
        Ok(c)
    }

    /// ⟨S, c⟩ for a group S and c commuting with S, or None past `cap`.
    fn extend(&self, set: &BTreeSet<usize>, c: usize, cap: usize) -> Result<Option<BTreeSet<usize>>> {
        let mut out = set.clone();
        let mut p = c;
        while !set.contains(&p) {
            for &s in set {
                out.insert(self.mul(s, p)?);
            }
            if out.len() > cap {
                return Ok(None);
            }
            p = self.mul(p, c)?;
        }
        Ok(Some(out))
    }
}
