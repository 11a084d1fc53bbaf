use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::group::{FiniteAbelianGroup, GroupElem, Quotient};
use super::intmat::IntMatrix;
use crate::error::{Error, Result};
use crate::scalars::{format_rational, linalg, parse_rational, PrimeField};

/// An exact vector in Q^r, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradeVector(pub Vec<BigRational>);

impl GradeVector {
    pub fn zero(r: usize) -> Self {
        Self(vec![BigRational::zero(); r])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn parse(v: &[String]) -> Result<Self> {
        v.iter().map(|s| parse_rational(s)).collect::<Result<_>>().map(Self)
    }
}

impl fmt::Debug for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for GradeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        GradeVector::parse(&v).map_err(serde::de::Error::custom)
    }
}

/// A full-rank lattice in Q^r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<GradeVector>,
    /// Inverse of the basis matrix (rows = basis vectors).
    inverse: Vec<Vec<BigRational>>,
}

fn invert(rows: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let q = PrimeField::Rationals;
    let aug: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let (red, piv) = linalg::rref(&q, aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Lattice {
    pub fn new(basis: Vec<GradeVector>) -> Result<Self> {
        let r = basis.len();
        if r == 0 {
            return Err(Error::InvalidInput("lattice needs a nonempty basis".into()));
        }
        if let Some(b) = basis.iter().find(|b| b.rank() != r) {
            return Err(Error::RankMismatch(b.rank(), r));
        }
        let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.0.clone()).collect();
        let inverse = invert(&rows)
            .ok_or_else(|| Error::InvalidInput("lattice basis is linearly dependent".into()))?;
        Ok(Self { basis, inverse })
    }

    /// Z^r.
    pub fn standard(r: usize) -> Self {
        Self::new(
            (0..r)
                .map(|i| GradeVector::from_ints(&(0..r).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
                .collect(),
        )
        .expect("identity basis")
    }

    /// Lattice spanned by arbitrary generators (must have full rank).
    pub fn from_generators(gens: &[GradeVector], r: usize) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.rank() != r) {
            return Err(Error::RankMismatch(g.rank(), r));
        }
        let den = gens
            .iter()
            .flat_map(|g| g.0.iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = BigRational::from_integer(den.clone());
        let int_rows: IntMatrix = gens
            .iter()
            .map(|g| {
                g.0.iter()
                    .map(|x| {
                        (x * &scale)
                            .to_integer()
                            .to_i128()
                            .ok_or(Error::Overflow("lattice generators"))
                    })
                    .collect::<Result<Vec<i128>>>()
            })
            .collect::<Result<_>>()?;
        let rows = super::intmat::echelon_rows(int_rows)?;
        if rows.len() != r {
            return Err(Error::InvalidInput("generators do not span a full-rank lattice".into()));
        }
        let inv_scale = BigRational::new(BigInt::one(), den);
        Self::new(
            rows.into_iter()
                .map(|row| {
                    GradeVector(
                        row.into_iter()
                            .map(|x| BigRational::from_integer(x.into()) * &inv_scale)
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradeVector] {
        &self.basis
    }

    /// Rational coordinates of `v` in this basis.
    pub fn coordinates(&self, v: &GradeVector) -> Vec<BigRational> {
        (0..self.rank())
            .map(|j| {
                v.0.iter()
                    .zip(&self.inverse)
                    .fold(BigRational::zero(), |acc, (x, row)| acc + x * &row[j])
            })
            .collect()
    }

    /// Integer coordinates when `v` is a lattice point.
    pub fn integer_coordinates(&self, v: &GradeVector) -> Option<Vec<i128>> {
        self.coordinates(v)
            .into_iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i128() } else { None })
            .collect()
    }

    pub fn contains(&self, v: &GradeVector) -> bool {
        v.rank() == self.rank() && self.integer_coordinates(v).is_some()
    }

    pub fn combine(&self, coeffs: &[i128]) -> GradeVector {
        let mut acc = GradeVector::zero(self.rank());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(&BigRational::from_integer(BigInt::from(*c))));
        }
        acc
    }
}

/// `big / small` presented in invariant-factor form, with a section.
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    pub big: Lattice,
    pub small: Lattice,
    quotient: Quotient,
    /// Representatives δᵢ of the basis classes δ̄ᵢ.
    pub basis_reps: Vec<GradeVector>,
}

impl LatticeQuotient {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.quotient.group
    }

    /// Class of a vector of `big`.
    pub fn reduce(&self, v: &GradeVector) -> Result<GroupElem> {
        let x = self
            .big
            .integer_coordinates(v)
            .ok_or_else(|| Error::InvalidInput(format!("{v} is not in the lattice")))?;
        self.quotient.project(&x)
    }

    /// Representative `Σ eᵢ δᵢ` of a group element.
    pub fn section(&self, e: &[u64]) -> GradeVector {
        let r = self.big.rank();
        e.iter()
            .zip(&self.basis_reps)
            .fold(GradeVector::zero(r), |acc, (&k, d)| acc.add(&d.scale_int(k as i64)))
    }
}

/// Computes `big / small` by Smith normal form of the change-of-basis matrix.
pub fn lattice_quotient(big: &Lattice, small: &Lattice) -> Result<LatticeQuotient> {
    if big.rank() != small.rank() {
        return Err(Error::RankMismatch(big.rank(), small.rank()));
    }
    let change: IntMatrix = small
        .basis()
        .iter()
        .map(|b| {
            big.integer_coordinates(b)
                .ok_or_else(|| Error::NotSublattice(format!("{b} is not in the larger lattice")))
        })
        .collect::<Result<_>>()?;
    let quotient = Quotient::from_relations(big.rank(), change)?;
    let basis_reps = quotient.lifts.iter().map(|l| big.combine(l)).collect();
    Ok(LatticeQuotient {
        big: big.clone(),
        small: small.clone(),
        quotient,
        basis_reps,
    })
}

/// |det| of the change-of-basis matrix, computed over Q.
pub fn index(big: &Lattice, small: &Lattice) -> Result<BigInt> {
    let rows: Vec<Vec<BigRational>> = small.basis().iter().map(|b| big.coordinates(b)).collect();
    // determinant by elimination
    let n = rows.len();
    let mut m = rows;
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            let pivot = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    Ok(det.to_integer().magnitude().clone().into())
}
