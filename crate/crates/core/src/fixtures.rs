//! Small residue fields shared by unit tests.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::grades::FiniteAbelianGroup;
use crate::scalars::{BaseElem, BaseField, ResidueElem, ResidueField};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Elements of F₀ = Q or F_p given by integers.
pub fn ints(base: &BaseField, v: &[i64]) -> Vec<BaseElem> {
    v.iter().map(|&n| base.from_rational(q(n))).collect()
}

/// Q(i) with complex conjugation.
pub fn q_i() -> ResidueField {
    let b = BaseField::rationals();
    ResidueField::new(b.clone(), ints(&b, &[1, 0, 1]), FiniteAbelianGroup::cyclic(2), vec![ints(&b, &[0, -1])])
        .unwrap()
}

/// Q(√2, √3) = Q(T), T = √2 + √3.
pub fn q_sqrt2_sqrt3() -> ResidueField {
    let b = BaseField::rationals();
    ResidueField::new(
        b.clone(),
        ints(&b, &[1, 0, -10, 0, 1]),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
        vec![ints(&b, &[0, 10, 0, -1]), ints(&b, &[0, -10, 0, 1])],
    )
    .unwrap()
}

fn rats(base: &BaseField, v: &[(i64, i64)]) -> Vec<BaseElem> {
    v.iter().map(|&(a, b)| base.from_rational(rat(a, b))).collect()
}

/// Q(√2, √3, √5) = Q(T), T = √2 + √3 + √5, σᵢ negating the i-th root.
pub fn q_sqrt235() -> ResidueField {
    let b = BaseField::rationals();
    ResidueField::new(
        b.clone(),
        ints(&b, &[576, 0, -960, 0, 352, 0, -40, 0, 1]),
        FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap(),
        vec![
            rats(&b, &[(0, 1), (-7, 3), (0, 1), (7, 36), (0, 1), (7, 72), (0, 1), (-1, 288)]),
            rats(&b, &[(0, 1), (-13, 2), (0, 1), (61, 12), (0, 1), (-37, 48), (0, 1), (1, 48)]),
            rats(&b, &[(0, 1), (59, 6), (0, 1), (-95, 18), (0, 1), (97, 144), (0, 1), (-5, 288)]),
        ],
    )
    .unwrap()
}

/// √2, √3, √5 in [`q_sqrt235`].
pub fn sqrt235(d0: &ResidueField) -> Vec<ResidueElem> {
    let b = d0.base();
    vec![
        rats(b, &[(0, 1), (5, 3), (0, 1), (-7, 72), (0, 1), (-7, 144), (0, 1), (1, 576)]),
        rats(b, &[(0, 1), (15, 4), (0, 1), (-61, 24), (0, 1), (37, 96), (0, 1), (-1, 96)]),
        rats(b, &[(0, 1), (-53, 12), (0, 1), (95, 36), (0, 1), (-97, 288), (0, 1), (5, 576)]),
    ]
    .into_iter()
    .map(|c| d0.from_coeffs(c))
    .collect()
}

/// F₁₇[T]/(T⁸ − 3), Frobenius T ↦ 9T.
pub fn f17_deg8() -> ResidueField {
    let b = BaseField::prime(17).unwrap();
    ResidueField::new(
        b.clone(),
        ints(&b, &[-3, 0, 0, 0, 0, 0, 0, 0, 1]),
        FiniteAbelianGroup::cyclic(8),
        vec![ints(&b, &[0, 9])],
    )
    .unwrap()
}

/// Q(i)[T]/(T⁴ − 3) with T ↦ iT.
pub fn q_i_fourth_root3() -> ResidueField {
    let b = BaseField::cyclotomic(4).unwrap();
    let i: BaseElem = vec![q(0), q(1)];
    let img: ResidueElem = vec![b.from_rational(q(0)), i];
    ResidueField::new(
        b.clone(),
        ints(&b, &[-3, 0, 0, 0, 1]),
        FiniteAbelianGroup::cyclic(4),
        vec![img],
    )
    .unwrap()
}

use std::sync::Arc;

use crate::crossed::{CrossedProduct, FactorSet, Homog};
use crate::grades::{GradeVector, Lattice};
use crate::scalars::Field;

fn monomial(d0: &ResidueField, g: &[i64]) -> Homog {
    Homog::new(d0.one(), GradeVector::from_ints(g))
}

fn build(d0: ResidueField, r: usize, h: FiniteAbelianGroup, theta: Vec<Vec<u64>>, d: impl Fn(&[u64], &[u64]) -> i64, x: Vec<Vec<i64>>) -> CrossedProduct {
    let elems = h.elements();
    let table: Vec<ResidueElem> = elems
        .iter()
        .flat_map(|a| elems.iter().map(|b| d0.from_i64(d(a, b))).collect::<Vec<_>>())
        .collect();
    let x: Vec<Homog> = x.iter().map(|g| monomial(&d0, g)).collect();
    let fs = FactorSet::from_d_and_x(&d0, h, theta, &table, &x, r).unwrap();
    CrossedProduct::build(Arc::new(d0), Lattice::standard(r), fs).unwrap()
}

/// Quaternion algebra (x₁, x₂) over Q[Γ], Γ = Z².
pub fn ex_q() -> CrossedProduct {
    let d0 = ResidueField::trivial(BaseField::rationals());
    let h = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    build(d0, 2, h, vec![vec![], vec![]], |m, n| if m[1] * n[0] % 2 == 1 { -1 } else { 1 }, vec![vec![1, 0], vec![0, 1]])
}

/// Q(i) with z·i·z⁻¹ = −i, z² = x.
pub fn ex_sr2() -> CrossedProduct {
    build(q_i(), 1, FiniteAbelianGroup::cyclic(2), vec![vec![1]], |_, _| 1, vec![vec![1]])
}

/// F₁₇[T]/(T⁸−3) with z·T·z⁻¹ = 9T, z⁸ = x.
pub fn ex_c8() -> CrossedProduct {
    build(f17_deg8(), 1, FiniteAbelianGroup::cyclic(8), vec![vec![1]], |_, _| 1, vec![vec![1]])
}

/// Mixed: D₀ = Q(i), H = (Z/2)³, θ(e₁) = conjugation.
pub fn ex_m() -> CrossedProduct {
    let h = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
    build(
        q_i(),
        3,
        h,
        vec![vec![1], vec![0], vec![0]],
        |m, n| if m[2] * n[1] % 2 == 1 { -1 } else { 1 },
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
    )
}

/// Q(i)[w]/(w⁴−3) with z·w·z⁻¹ = iw, z⁴ = x.
pub fn ex_c4() -> CrossedProduct {
    build(q_i_fourth_root3(), 1, FiniteAbelianGroup::cyclic(4), vec![vec![1]], |_, _| 1, vec![vec![1]])
}

/// Q(√2, √3) with zᵢ acting by the i-th sign change, zᵢ² = xᵢ.
pub fn ex_sr4() -> CrossedProduct {
    let h = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    build(q_sqrt2_sqrt3(), 2, h, vec![vec![1, 0], vec![0, 1]], |_, _| 1, vec![vec![1, 0], vec![0, 1]])
}

/// Q(√2, √3, √5) with three commuting sign-change generators.
pub fn ex_sr8() -> CrossedProduct {
    let h = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
    let id = (0..3).map(|i| h.basis(i)).collect();
    let x = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
    build(q_sqrt235(), 3, h, id, |_, _| 1, x)
}
