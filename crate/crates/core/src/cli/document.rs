//! The JSON algebra document: parsing with pointered diagnostics, building
//! the algebra, and canonical serialization.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::crossed::{CrossedProduct, FactorSet, Homog};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grades::{FiniteAbelianGroup, GradeVector, GroupElem, Lattice};
use crate::kummer::ClassKey;
use crate::scalars::{format_rational, parse_rational, BaseElem, BaseField, BaseKind, Field, ResidueElem, ResidueField};

pub const SCHEMA: &str = "graded-kummer/algebra/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
    pub base_field: BaseFieldDoc,
    pub lattice_rank: usize,
    /// Defaults to the standard basis of Z^r.
    #[serde(rename = "gamma_F_basis", default, skip_serializing_if = "Option::is_none")]
    pub gamma_f_basis: Option<Vec<Vec<String>>>,
    pub residue: ResidueDoc,
    #[serde(rename = "H_invariants")]
    pub h_invariants: Vec<u64>,
    /// Image in G of each generator of H.
    pub theta: Vec<Vec<u64>>,
    pub factor_set: FactorSetDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_units: Option<Vec<ResidueRepr>>,
    /// Generators of one Kummer subfield, for the kummer subcommands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield_generators: Option<Vec<ClassDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructDoc>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.name.is_empty() && self.description.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseFieldDoc {
    Cyclotomic { m: u64 },
    Finite { p: u64, k: u32, poly: Vec<u64> },
}

/// An F₀-element: a rational string, or power-basis coordinates over the
/// prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rational(String),
    Coeffs(Vec<String>),
}

/// A D₀-element: coefficients of 1, T, T², … (trailing zeros optional).
pub type ResidueRepr = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueDoc {
    /// Monic minimal polynomial g of T over F₀, constant term first.
    pub min_poly: Vec<Scalar>,
    /// Invariant factors of G = Gal(D₀/F₀).
    pub galois_group: Vec<u64>,
    /// σ(T) for each basis element σ of G.
    pub galois_generators: Vec<ResidueRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogDoc {
    pub unit: ResidueRepr,
    pub grade: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorSetForm {
    FullF,
    DAndX,
}

/// `table` for the full form; `d_table` and `x_monomials` for the split
/// form. When both are present they must describe the same factor set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSetDoc {
    pub form: FactorSetForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<HomogDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_table: Option<Vec<Vec<ResidueRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_monomials: Option<Vec<HomogDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub sigma: Vec<u64>,
    pub unit: ResidueRepr,
}

/// Input for building a subfield from (M, R, d′, b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructDoc {
    /// Generators of the stabilizer of M in G.
    pub m_stabilizer: Vec<Vec<u64>>,
    pub r: Vec<Vec<u64>>,
    /// |R|×|R| table in the canonical order of R.
    pub d_prime: Vec<Vec<ResidueRepr>>,
    /// One unit per element of R; found by search when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<ResidueRepr>>,
}

/// An error located at a path inside the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub path: String,
    pub error: Error,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.error)
        } else {
            write!(f, "at {}: {}", self.path, self.error)
        }
    }
}

impl std::error::Error for DocError {}

pub type DocResult<T> = std::result::Result<T, DocError>;

trait At<T> {
    fn at(self, path: impl Into<String>) -> DocResult<T>;
}

impl<T> At<T> for Result<T> {
    fn at(self, path: impl Into<String>) -> DocResult<T> {
        self.map_err(|error| DocError { path: path.into(), error })
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Parses a document, reporting the JSON path of any malformed field.
pub fn parse(text: &str) -> DocResult<AlgebraDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: AlgebraDocument = serde_path_to_error::deserialize(de).map_err(|e| DocError {
        path: e.path().to_string(),
        error: invalid(e.inner().to_string()),
    })?;
    if doc.schema != SCHEMA {
        return Err(DocError {
            path: "schema".into(),
            error: invalid(format!("unsupported schema {:?}, expected {SCHEMA:?}", doc.schema)),
        });
    }
    Ok(doc)
}

/// Pretty JSON with a trailing newline; the canonical on-disk form.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone)]
pub struct Parts {
    pub d0: ResidueField,
    pub gamma_f: Lattice,
    pub fs: FactorSet,
}

/// Everything a subcommand needs from a document.
#[derive(Debug, Clone)]
pub struct Built {
    pub d: CrossedProduct,
    pub units: Vec<ResidueElem>,
    pub subfield: Option<Vec<ClassKey>>,
    pub construct: Option<ConstructInput>,
}

#[derive(Debug, Clone)]
pub struct ConstructInput {
    pub m_stabilizer: Vec<GroupElem>,
    pub r: Vec<GroupElem>,
    pub d_prime: Vec<ResidueElem>,
    pub b: Option<Vec<ResidueElem>>,
}

/// Element decoding against a fixed base and residue field.
struct Decoder<'a> {
    base: &'a BaseField,
    d0: Option<&'a ResidueField>,
}

impl Decoder<'_> {
    fn rational(&self, s: &str, path: &str) -> DocResult<BigRational> {
        parse_rational(s).at(path)
    }

    fn scalar(&self, s: &Scalar, path: &str) -> DocResult<BaseElem> {
        match s {
            Scalar::Rational(x) => Ok(self.base.from_rational(self.rational(x, path)?)),
            Scalar::Coeffs(cs) => {
                if cs.len() > self.base.degree() {
                    return Err(invalid(format!(
                        "{} coordinates for a base field of degree {}",
                        cs.len(),
                        self.base.degree()
                    )))
                    .at(path);
                }
                let v = cs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| self.rational(c, &format!("{path}[{i}]")))
                    .collect::<DocResult<Vec<_>>>()?;
                Ok(self.base.from_coeffs(v))
            }
        }
    }

    fn residue(&self, r: &ResidueRepr, path: &str) -> DocResult<ResidueElem> {
        let d0 = self.d0.expect("residue field decoded first");
        if r.len() > d0.degree() {
            return Err(invalid(format!("{} coefficients for a residue field of degree {}", r.len(), d0.degree()))).at(path);
        }
        let cs = r
            .iter()
            .enumerate()
            .map(|(i, c)| self.scalar(c, &format!("{path}[{i}]")))
            .collect::<DocResult<Vec<_>>>()?;
        Ok(d0.from_coeffs(cs))
    }

    fn grade(&self, g: &[String], r: usize, path: &str) -> DocResult<GradeVector> {
        if g.len() != r {
            return Err(Error::RankMismatch(g.len(), r)).at(path);
        }
        GradeVector::parse(g).at(path)
    }

    fn homog(&self, h: &HomogDoc, r: usize, path: &str) -> DocResult<Homog> {
        let unit = self.residue(&h.unit, &format!("{path}.unit"))?;
        if self.d0.expect("residue field").is_zero(&unit) {
            return Err(invalid("factor set values must be nonzero")).at(format!("{path}.unit"));
        }
        Ok(Homog::new(unit, self.grade(&h.grade, r, &format!("{path}.grade"))?))
    }

    fn table<T, U>(&self, rows: &[Vec<T>], n: usize, path: &str, f: impl Fn(&T, &str) -> DocResult<U>) -> DocResult<Vec<U>> {
        if rows.len() != n {
            return Err(invalid(format!("expected {n} rows, found {}", rows.len()))).at(path);
        }
        let mut out = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("expected {n} entries, found {}", row.len()))).at(format!("{path}[{i}]"));
            }
            for (j, x) in row.iter().enumerate() {
                out.push(f(x, &format!("{path}[{i}][{j}]"))?);
            }
        }
        Ok(out)
    }
}

fn group_elem(g: &FiniteAbelianGroup, e: &[u64], path: &str) -> DocResult<GroupElem> {
    if !g.contains(e) {
        return Err(invalid(format!("{e:?} is not an element of {}", g.describe()))).at(path);
    }
    Ok(e.to_vec())
}

impl BaseFieldDoc {
    pub fn build(&self) -> Result<BaseField> {
        match self {
            BaseFieldDoc::Cyclotomic { m } => BaseField::cyclotomic(*m),
            BaseFieldDoc::Finite { p, k, poly } => BaseField::finite(*p, *k, poly.clone()),
        }
    }

    pub fn of(base: &BaseField) -> Self {
        match base.kind() {
            BaseKind::Cyclotomic { m } => BaseFieldDoc::Cyclotomic { m: *m },
            BaseKind::Finite { p, k, poly } => BaseFieldDoc::Finite { p: *p, k: *k, poly: poly.clone() },
        }
    }
}

impl AlgebraDocument {
    pub fn build(&self) -> DocResult<Built> {
        self.build_with(Exec::default())
    }

    /// Residue field, Γ_F and the factor set, without checking the axioms.
    pub fn parts(&self) -> DocResult<Parts> {
        let base = self.base_field.build().at("base_field")?;
        let dec = Decoder { base: &base, d0: None };
        let r = self.lattice_rank;

        let g = FiniteAbelianGroup::new(self.residue.galois_group.clone()).at("residue.galois_group")?;
        let min_poly = self
            .residue
            .min_poly
            .iter()
            .enumerate()
            .map(|(i, c)| dec.scalar(c, &format!("residue.min_poly[{i}]")))
            .collect::<DocResult<Vec<_>>>()?;
        // images are decoded in the extension before the field is validated
        let ext = crate::scalars::SimpleExtension::new(base.clone(), min_poly.clone()).at("residue.min_poly")?;
        let images = self
            .residue
            .galois_generators
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let path = format!("residue.galois_generators[{i}]");
                if img.len() > ext.degree() {
                    return Err(invalid(format!("{} coefficients for degree {}", img.len(), ext.degree()))).at(path);
                }
                let cs = img
                    .iter()
                    .enumerate()
                    .map(|(j, c)| dec.scalar(c, &format!("{path}[{j}]")))
                    .collect::<DocResult<Vec<_>>>()?;
                Ok(ext.reduce(&cs))
            })
            .collect::<DocResult<Vec<_>>>()?;
        let d0 = ResidueField::new(base.clone(), min_poly, g.clone(), images).at("residue")?;
        let dec = Decoder { base: &base, d0: Some(&d0) };

        let gamma_f = match &self.gamma_f_basis {
            None => Lattice::standard(r),
            Some(rows) => {
                let basis = rows
                    .iter()
                    .enumerate()
                    .map(|(i, v)| dec.grade(v, r, &format!("gamma_F_basis[{i}]")))
                    .collect::<DocResult<Vec<_>>>()?;
                if basis.len() != r {
                    return Err(Error::RankMismatch(basis.len(), r)).at("gamma_F_basis");
                }
                Lattice::new(basis).at("gamma_F_basis")?
            }
        };

        let h = FiniteAbelianGroup::new(self.h_invariants.clone()).at("H_invariants")?;
        if self.theta.len() != h.rank() {
            return Err(invalid(format!("theta has {} images for {} generators of H", self.theta.len(), h.rank()))).at("theta");
        }
        let theta = self
            .theta
            .iter()
            .enumerate()
            .map(|(i, e)| group_elem(&g, e, &format!("theta[{i}]")))
            .collect::<DocResult<Vec<_>>>()?;

        let fs = self.factor_set(&dec, &d0, &h, theta, r)?;
        Ok(Parts { d0, gamma_f, fs })
    }

    pub fn build_with(&self, exec: Exec) -> DocResult<Built> {
        let Parts { d0, gamma_f, fs } = self.parts()?;
        let h = fs.h.clone();
        let g = d0.group().clone();
        let base = d0.base().clone();
        let dec = Decoder { base: &base, d0: Some(&d0) };
        let d = CrossedProduct::build_with(Arc::new(d0.clone()), gamma_f, fs, exec).at("factor_set")?;

        let units = match &self.candidate_units {
            None => Vec::new(),
            Some(us) => us
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    let path = format!("candidate_units[{i}]");
                    let x = dec.residue(u, &path)?;
                    if d0.is_zero(&x) {
                        return Err(invalid("candidate units must be nonzero")).at(path);
                    }
                    Ok(x)
                })
                .collect::<DocResult<_>>()?,
        };
        let subfield = match &self.subfield_generators {
            None => None,
            Some(gens) => Some(
                gens.iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let path = format!("subfield_generators[{i}]");
                        let s = group_elem(&h, &c.sigma, &format!("{path}.sigma"))?;
                        let u = dec.residue(&c.unit, &format!("{path}.unit"))?;
                        let unit = d0.normalize_mod_base(&u).at(format!("{path}.unit"))?;
                        Ok(ClassKey { sigma: h.index_of(&s), unit })
                    })
                    .collect::<DocResult<_>>()?,
            ),
        };
        let construct = match &self.construct {
            None => None,
            Some(c) => {
                let m_stabilizer = c
                    .m_stabilizer
                    .iter()
                    .enumerate()
                    .map(|(i, e)| group_elem(&g, e, &format!("construct.m_stabilizer[{i}]")))
                    .collect::<DocResult<_>>()?;
                let r_elems: Vec<GroupElem> = c
                    .r
                    .iter()
                    .enumerate()
                    .map(|(i, e)| group_elem(&h, e, &format!("construct.r[{i}]")))
                    .collect::<DocResult<_>>()?;
                let n = h.span(&r_elems).len();
                let d_prime = dec.table(&c.d_prime, n, "construct.d_prime", |x, p| dec.residue(x, p))?;
                let b = match &c.b {
                    None => None,
                    Some(bs) => Some(
                        bs.iter()
                            .enumerate()
                            .map(|(i, u)| dec.residue(u, &format!("construct.b[{i}]")))
                            .collect::<DocResult<_>>()?,
                    ),
                };
                Some(ConstructInput { m_stabilizer, r: r_elems, d_prime, b })
            }
        };
        Ok(Built { d, units, subfield, construct })
    }

    fn factor_set(&self, dec: &Decoder, d0: &ResidueField, h: &FiniteAbelianGroup, theta: Vec<GroupElem>, r: usize) -> DocResult<FactorSet> {
        let n = h.order() as usize;
        let doc = &self.factor_set;
        let full = match &doc.table {
            None => None,
            Some(t) => {
                let f = dec.table(t, n, "factor_set.table", |x, p| dec.homog(x, r, p))?;
                Some(FactorSet { h: h.clone(), theta: theta.clone(), f })
            }
        };
        let split = match (&doc.d_table, &doc.x_monomials) {
            (Some(dt), Some(xs)) => {
                let d = dec.table(dt, n, "factor_set.d_table", |x, p| dec.residue(x, p))?;
                let x = xs
                    .iter()
                    .enumerate()
                    .map(|(i, m)| dec.homog(m, r, &format!("factor_set.x_monomials[{i}]")))
                    .collect::<DocResult<Vec<_>>>()?;
                Some(FactorSet::from_d_and_x(d0, h.clone(), theta, &d, &x, r).at("factor_set")?)
            }
            (None, None) => None,
            (Some(_), None) => return Err(invalid("d_table given without x_monomials")).at("factor_set"),
            (None, Some(_)) => return Err(invalid("x_monomials given without d_table")).at("factor_set"),
        };
        match (doc.form, full, split) {
            (FactorSetForm::FullF, Some(f), other) | (FactorSetForm::DAndX, other, Some(f)) => {
                if let Some(g) = other {
                    if let Some(k) = (0..n * n).find(|&k| f.f[k] != g.f[k]) {
                        let (i, j) = (k / n, k % n);
                        return Err(invalid("the full and split forms of the factor set disagree"))
                            .at(format!("factor_set.table[{i}][{j}]"));
                    }
                }
                Ok(f)
            }
            (FactorSetForm::FullF, None, _) => Err(invalid("form full_f requires table")).at("factor_set"),
            (FactorSetForm::DAndX, _, None) => Err(invalid("form d_and_x requires d_table and x_monomials")).at("factor_set"),
        }
    }
}

// ---- encoding ----

fn encode_scalar(base: &BaseField, x: &BaseElem) -> Scalar {
    if base.degree() == 1 {
        return Scalar::Rational(format_rational(&x[0]));
    }
    let mut cs: Vec<String> = x.iter().map(format_rational).collect();
    while cs.len() > 1 && cs.last().is_some_and(|c| c == "0") {
        cs.pop();
    }
    Scalar::Coeffs(cs)
}

pub fn encode_residue(d0: &ResidueField, a: &ResidueElem) -> ResidueRepr {
    let base = d0.base();
    let mut n = a.len();
    while n > 1 && a[n - 1].iter().all(|c| c.is_zero()) {
        n -= 1;
    }
    a[..n].iter().map(|c| encode_scalar(base, c)).collect()
}

fn encode_homog(d0: &ResidueField, h: &Homog) -> HomogDoc {
    HomogDoc {
        unit: encode_residue(d0, &h.unit),
        grade: h.grade.to_strings(),
    }
}

fn rows<T: Clone>(flat: &[T], n: usize) -> Vec<Vec<T>> {
    flat.chunks(n).map(|c| c.to_vec()).collect()
}

impl AlgebraDocument {
    /// The document of an algebra, with its factor set in the given form.
    pub fn from_algebra(d: &CrossedProduct, form: FactorSetForm, metadata: Metadata) -> Result<Self> {
        let d0 = &d.d0;
        let base = d0.base();
        let n = d.h().order() as usize;
        let factor_set = match form {
            FactorSetForm::FullF => FactorSetDoc {
                form,
                table: Some(rows(&d.fs.f.iter().map(|h| encode_homog(d0, h)).collect::<Vec<_>>(), n)),
                d_table: None,
                x_monomials: None,
            },
            FactorSetForm::DAndX => {
                let dec = d.decompose_f(None)?;
                FactorSetDoc {
                    form,
                    table: None,
                    d_table: Some(rows(&dec.d.iter().map(|x| encode_residue(d0, x)).collect::<Vec<_>>(), n)),
                    x_monomials: Some(dec.x.iter().map(|h| encode_homog(d0, h)).collect()),
                }
            }
        };
        let standard = Lattice::standard(d.rank());
        Ok(Self {
            schema: SCHEMA.into(),
            metadata,
            base_field: BaseFieldDoc::of(base),
            lattice_rank: d.rank(),
            gamma_f_basis: (d.gamma_f != standard).then(|| d.gamma_f.basis().iter().map(|v| v.to_strings()).collect()),
            residue: ResidueDoc {
                min_poly: d0.min_poly().iter().map(|c| encode_scalar(base, c)).collect(),
                galois_group: d0.group().factors().to_vec(),
                galois_generators: d0.generator_images().iter().map(|x| encode_residue(d0, x)).collect(),
            },
            h_invariants: d.h().factors().to_vec(),
            theta: d.fs.theta.clone(),
            factor_set,
            candidate_units: None,
            subfield_generators: None,
            construct: None,
        })
    }
}

pub fn encode_class(d: &CrossedProduct, c: &ClassKey) -> ClassDoc {
    ClassDoc {
        sigma: d.h().element(c.sigma),
        unit: encode_residue(&d.d0, &c.unit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn meta(name: &str, description: &str) -> Metadata {
        Metadata { name: name.into(), description: description.into() }
    }

    fn units(d: &CrossedProduct, xs: &[ResidueElem]) -> Option<Vec<ResidueRepr>> {
        Some(xs.iter().map(|x| encode_residue(&d.d0, x)).collect())
    }

    /// The bundled corpus, generated from the test fixtures.
    fn corpus() -> Vec<(&'static str, AlgebraDocument)> {
        let mut out = Vec::new();
        let d = ex_q();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::FullF, meta("EX-Q", "quaternion algebra (x1, x2) over Q[Z^2]; D0 = Q")).unwrap();
        doc.candidate_units = units(&d, &[d.d0.from_i64(1), d.d0.from_i64(-1)]);
        out.push(("ex_q", doc));

        let d = ex_sr2();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::DAndX, meta("EX-SR2", "semiramified quaternion algebra: D0 = Q(i), z i z^-1 = -i, z^2 = x")).unwrap();
        let i = d.d0.generator();
        doc.candidate_units = units(&d, &[d.d0.from_i64(1), d.d0.from_i64(-1), i.clone(), d.d0.neg(&i)]);
        out.push(("ex_sr2", doc));

        let d = ex_sr8();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::DAndX, meta("EX-SR8", "semiramified degree 8: D0 = Q(sqrt2, sqrt3, sqrt5), H = (Z/2)^3")).unwrap();
        let mut u = vec![d.d0.from_i64(1), d.d0.from_i64(-1)];
        u.extend(sqrt235(&d.d0));
        doc.candidate_units = units(&d, &u);
        out.push(("ex_sr8", doc));

        let d = ex_c8();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::DAndX, meta("EX-C8", "cyclic semiramified degree 8 over F17: D0 = F17[T]/(T^8 - 3)")).unwrap();
        let u: Vec<_> = (1..17).map(|k| d.d0.from_i64(k)).collect();
        doc.candidate_units = units(&d, &u);
        out.push(("ex_c8", doc));

        let d = ex_m();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::FullF, meta("EX-M", "mixed: D0 = Q(i), H = (Z/2)^3, theta with kernel of order 4")).unwrap();
        let i = d.d0.generator();
        doc.candidate_units = units(&d, &[d.d0.from_i64(1), d.d0.from_i64(-1), i.clone(), d.d0.neg(&i)]);
        out.push(("ex_m", doc));

        let d = ex_c4();
        let doc = AlgebraDocument::from_algebra(&d, FactorSetForm::DAndX, meta("EX-C4", "cyclic semiramified degree 4 over Q(i): D0 = Q(i)(w), w^4 = 3")).unwrap();
        out.push(("ex_c4", doc));

        let d = ex_sr4();
        let mut doc = AlgebraDocument::from_algebra(&d, FactorSetForm::FullF, meta("EX-SR4", "semiramified degree 4: D0 = Q(sqrt2, sqrt3), H = (Z/2)^2")).unwrap();
        let t = d.d0.generator();
        let t3 = d.d0.pow(&t, 3);
        let half = d.d0.from_base(d.d0.base().from_rational(rat(1, 2)));
        let s2 = d.d0.mul(&half, &d.d0.sub(&t3, &d.d0.mul(&d.d0.from_i64(9), &t)));
        let s3 = d.d0.mul(&half, &d.d0.sub(&d.d0.mul(&d.d0.from_i64(11), &t), &t3));
        doc.candidate_units = units(&d, &[d.d0.from_i64(1), d.d0.from_i64(-1), s2, s3]);
        out.push(("ex_sr4", doc));
        out
    }

    #[test]
    #[ignore = "rewrites the bundled corpus documents"]
    fn write_corpus() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        std::fs::create_dir_all(&dir).unwrap();
        for (name, doc) in corpus() {
            std::fs::write(dir.join(format!("{name}.json")), to_canonical_json(&doc)).unwrap();
        }
    }

    #[test]
    fn documents_round_trip_and_rebuild() {
        for (name, doc) in corpus() {
            let text = to_canonical_json(&doc);
            let back = parse(&text).unwrap();
            assert_eq!(back, doc, "{name}");
            assert_eq!(to_canonical_json(&back), text, "{name}");
            let built = back.build().unwrap();
            assert_eq!(built.units.len(), doc.candidate_units.as_ref().map_or(0, |u| u.len()));
        }
    }

    #[test]
    fn both_forms_give_the_same_algebra() {
        for d in [ex_q(), ex_sr2(), ex_c8(), ex_m()] {
            let full = AlgebraDocument::from_algebra(&d, FactorSetForm::FullF, Metadata::default()).unwrap();
            let split = AlgebraDocument::from_algebra(&d, FactorSetForm::DAndX, Metadata::default()).unwrap();
            let a = full.build().unwrap().d;
            let b = split.build().unwrap().d;
            assert_eq!(a.fs, b.fs);
            assert_eq!(a.delta, b.delta);
            // both forms at once must agree
            let mut both = full.clone();
            both.factor_set.d_table = split.factor_set.d_table.clone();
            both.factor_set.x_monomials = split.factor_set.x_monomials.clone();
            assert!(both.build().is_ok());
            let mut t = both.factor_set.table.clone().unwrap();
            t[1][1].unit = vec![Scalar::Rational("5".into())];
            both.factor_set.table = Some(t);
            let e = both.build().unwrap_err();
            assert_eq!(e.path, "factor_set.table[1][1]");
        }
    }

    #[test]
    fn diagnostics_name_the_offending_field() {
        let doc = AlgebraDocument::from_algebra(&ex_q(), FactorSetForm::FullF, Metadata::default()).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&to_canonical_json(&doc)).unwrap();
        v["factor_set"]["table"][0][1]["grade"] = serde_json::json!([1, 0]);
        let e = parse(&v.to_string()).unwrap_err();
        assert!(e.path.starts_with("factor_set.table[0][1].grade"), "{}", e.path);

        let mut bad = doc.clone();
        bad.residue.galois_group = vec![2];
        assert_eq!(bad.build().unwrap_err().path, "residue");
        let mut bad = doc.clone();
        bad.theta = vec![vec![1], vec![]];
        assert_eq!(bad.build().unwrap_err().path, "theta[0]");
        let mut bad = doc.clone();
        let mut t = bad.factor_set.table.clone().unwrap();
        t[2][3].grade = vec!["1/3".into(), "0".into()];
        bad.factor_set.table = Some(t);
        assert!(bad.build().is_err());
        let e = parse(r#"{"schema": "other"}"#).unwrap_err();
        assert!(e.error.is_input_contract());
    }
}
