//! Algebraic invariants under random inputs.

use std::path::Path;
use std::sync::OnceLock;

use graded_kummer::cli::document::{parse, Built};
use graded_kummer::cohomology::{Cocycle2, DEFAULT_BUDGET, H2};
use graded_kummer::crossed::{CrossedProduct, Elem};
use graded_kummer::grades::{beta_reduce, FiniteAbelianGroup, GradeVector};
use graded_kummer::kummer::KummerContext;
use graded_kummer::scalars::Field;
use graded_kummer::Exec;
use proptest::prelude::*;

fn load(name: &str) -> Built {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap().build().unwrap()
}

fn algebras() -> &'static [Built] {
    static CELL: OnceLock<Vec<Built>> = OnceLock::new();
    CELL.get_or_init(|| ["ex_q", "ex_sr2", "ex_c4", "ex_m", "ex_sr4"].into_iter().map(load).collect())
}

/// Element with a few terms; `coeffs` drive σ, the Γ_F-offset and the unit.
fn element(d: &CrossedProduct, coeffs: &[(usize, i64, i64, i64)]) -> Elem {
    let n = d.h().order() as usize;
    let deg = d.d0.degree();
    coeffs.iter().fold(d.zero(), |acc, &(s, g, a, b)| {
        let mut gamma = vec![0i64; d.rank()];
        gamma[s % d.rank()] = g;
        // a + b·θ with θ the residue generator when D₀ ≠ F₀
        let mut unit = d.d0.from_i64(a);
        if deg > 1 {
            unit = d.d0.add(&unit, &d.d0.mul(&d.d0.from_i64(b), &d.d0.generator()));
        }
        let gamma = d.gamma_f.combine(&gamma.iter().map(|&x| x as i128).collect::<Vec<_>>());
        d.add(&acc, &d.term(s % n, unit, gamma))
    })
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64, i64, i64)>> {
    prop::collection::vec((0usize..8, -1i64..2, -3i64..4, -2i64..3), 1..4)
}

fn small_group() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![
        Just(vec![2]),
        Just(vec![3]),
        Just(vec![4]),
        Just(vec![6]),
        Just(vec![2, 2]),
        Just(vec![2, 4]),
        Just(vec![3, 3]),
        Just(vec![2, 2, 2]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_distributive(which in 0usize..5, a in terms(), b in terms(), c in terms()) {
        let d = &algebras()[which].d;
        let (x, y, z) = (element(d, &a), element(d, &b), element(d, &c));
        prop_assert_eq!(d.mul(&d.mul(&x, &y), &z), d.mul(&x, &d.mul(&y, &z)));
        prop_assert_eq!(d.mul(&x, &d.add(&y, &z)), d.add(&d.mul(&x, &y), &d.mul(&x, &z)));
    }

    #[test]
    fn homogeneous_units_invert(which in 0usize..5, t in (0usize..8, -1i64..2, 1i64..4, -2i64..3)) {
        let d = &algebras()[which].d;
        let y = element(d, &[t]);
        prop_assume!(!y.is_zero());
        let yi = d.inv_homog(&y).unwrap();
        prop_assert_eq!(d.mul(&y, &yi), d.one());
        prop_assert_eq!(d.mul(&yi, &y), d.one());
        let g = d.grade_of(&y).unwrap();
        prop_assert_eq!(d.grade_of(&yi).unwrap(), g.neg());
    }

    #[test]
    fn kummer_classes_form_a_group(which in 0usize..5, t in (0usize..8, 0i64..1, 1i64..4, -2i64..3)) {
        let d = &algebras()[which].d;
        let ctx = KummerContext::with_default_exponent(d).unwrap();
        let y = element(d, &[t]);
        prop_assume!(!y.is_zero());
        let c = ctx.class_of(&y).unwrap();
        prop_assert_eq!(ctx.mul(&c, &ctx.inv(&c).unwrap()).unwrap(), ctx.identity());
        // the class of a representative is the class itself
        prop_assert_eq!(ctx.class_of(&ctx.element(&c)).unwrap(), c.clone());
        // scaling by F* does not move the class
        let scaled = d.mul(&d.term(0, d.d0.from_i64(5), GradeVector::zero(d.rank())), &y);
        prop_assert_eq!(ctx.class_of(&scaled).unwrap(), c);
    }

    #[test]
    fn h2_class_map_is_additive(hq in small_group(), mq in small_group(), seed in prop::collection::vec(0u64..1000, 2)) {
        let h = FiniteAbelianGroup::new(hq).unwrap();
        let m = FiniteAbelianGroup::new(mq).unwrap();
        let h2 = H2::compute(&h, &m, true, DEFAULT_BUDGET).unwrap();
        let pick = |s: u64| h2.group.element((s % h2.group.order()) as usize);
        let (e1, e2) = (pick(seed[0]), pick(seed[1]));
        let c1 = h2.representative(&e1).unwrap();
        let c2 = h2.representative(&e2).unwrap();
        prop_assert!(c1.is_cocycle() && c1.is_symmetric());
        prop_assert_eq!(h2.class_of(&c1.add(&c2).unwrap()).unwrap(), h2.group.add(&e1, &e2));
    }

    #[test]
    fn coboundaries_are_trivial(hq in small_group(), mq in small_group(), vals in prop::collection::vec(0u64..64, 8)) {
        let h = FiniteAbelianGroup::new(hq).unwrap();
        let m = FiniteAbelianGroup::new(mq).unwrap();
        let a: Vec<_> = (0..h.order() as usize)
            .map(|i| m.reduce(&[vals[i % vals.len()] as i128 * (i as i128 + 1)].repeat(m.rank())))
            .collect();
        let c = Cocycle2::coboundary(h.clone(), m.clone(), &a);
        prop_assert!(c.is_cocycle());
        let h2 = H2::compute(&h, &m, true, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(h2.class_of(&c.normalized()).unwrap(), h2.group.zero());
    }

    #[test]
    fn carries_reassemble_the_sum(q in prop::collection::vec(2u64..9, 1..4), raw in prop::collection::vec((0u64..64, 0u64..64), 3)) {
        let m: Vec<u64> = q.iter().zip(&raw).map(|(qi, r)| r.0 % qi).collect();
        let n: Vec<u64> = q.iter().zip(&raw).map(|(qi, r)| r.1 % qi).collect();
        let (b, t) = beta_reduce(&q, &m, &n);
        for i in 0..q.len() {
            prop_assert!(b[i] < q[i] && t[i] <= 1);
            prop_assert_eq!(m[i] + n[i], b[i] + t[i] * q[i]);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for b in algebras() {
        let d = &b.d;
        let seq = d.fs.validate_with(&d.d0, &d.gamma_f, Exec::Sequential);
        let par = d.fs.validate_with(&d.d0, &d.gamma_f, Exec::Parallel);
        assert_eq!(seq, par);
    }
    let h = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
    let m = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    let c = Cocycle2::from_fn(h.clone(), m.clone(), |s, t| vec![(s[0] * t[1]) % 2, (s[1] * t[1] / 2) % 2]);
    assert_eq!(c.violations_with(Exec::Sequential), c.violations_with(Exec::Parallel));
}
