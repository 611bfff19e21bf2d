mod common;

use std::collections::HashMap;
use std::sync::Arc;

use common::*;
use maclane_core::engine::LinearSolver;
use maclane_core::equations::Operator;
use maclane_core::snf::{determinant, mat_mul};
use maclane_core::*;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn instance(i: usize) -> FiniteBimodule {
    match i {
        0 => z4z2(),
        1 => dual2(),
        2 => z3z3(),
        3 => make_bimodule_via_hom(Arc::new(make_zn(6)), 3, &[0, 1, 2, 0, 1, 2]).unwrap(),
        _ => make_bimodule_via_hom(Arc::new(make_zn(4)), 4, &[0, 1, 2, 3]).unwrap(),
    }
}

fn cochain<C: CochainData>(m: &FiniteBimodule, seed: &[u64]) -> C {
    let b = slot_basis(m, C::SHAPE);
    let x: Vec<u64> = b
        .orders()
        .iter()
        .zip(seed.iter().cycle())
        .map(|(&d, &s)| s % d)
        .collect();
    b.cochain(m, &x)
}

fn raw_structure(m: &FiniteBimodule, seed: &[u64]) -> AnnStructure {
    let n = m.ring().order();
    let mut it = seed.iter().cycle();
    let mut next = || (*it.next().unwrap() % m.size() as u64) as usize;
    let tables = Shape::Ann3
        .arities()
        .iter()
        .map(|&a| {
            let data = (0..n.pow(a as u32)).map(|_| next()).collect();
            Table::from_data(n, a, data).unwrap()
        })
        .collect();
    AnnStructure::from_tables(tables)
}

fn defects(v: &ViolationList) -> HashMap<(String, Vec<usize>), usize> {
    v.entries
        .iter()
        .map(|e| ((e.equation.clone(), e.args.clone()), e.defect))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d2_kills_coboundaries(i in 0usize..5, seed in prop::collection::vec(0u64..12, 1..16)) {
        let m = instance(i);
        let t: Cochain1 = cochain(&m, &seed);
        prop_assert!(d2(&m, &d1(&m, &t)).is_zero());
    }

    #[test]
    fn coboundaries_solve_back(i in 0usize..3, seed in prop::collection::vec(0u64..12, 1..32)) {
        let m = instance(i);
        let g: Cochain2 = cochain(&m, &seed);
        let c = d2(&m, &g);
        let w = LinearSolver::for_operator(&m, Operator::D2).solve::<Cochain2, _>(&m, &c).unwrap();
        prop_assert_eq!(d2(&m, &w), c);
        let h = d2_ann(&m, &g);
        let w = LinearSolver::for_operator(&m, Operator::D2Ann).solve::<Cochain2, _>(&m, &h).unwrap();
        prop_assert_eq!(d2_ann(&m, &w), h);
    }

    #[test]
    fn structure_defects_are_additive(
        a in prop::collection::vec(0u64..4, 1..40),
        b in prop::collection::vec(0u64..4, 1..40),
    ) {
        let m = z4z2();
        let (h, h2) = (raw_structure(&m, &a), raw_structure(&m, &b));
        let (da, db) = (defects(&is_structure(&m, &h)), defects(&is_structure(&m, &h2)));
        let dsum = defects(&is_structure(&m, &h.add(&m, &h2)));
        let mut keys: Vec<_> = da.keys().chain(db.keys()).chain(dsum.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let get = |d: &HashMap<_, usize>| d.get(&k).copied().unwrap_or(0);
            prop_assert_eq!(get(&dsum), m.add(get(&da), get(&db)), "{:?}", k);
        }
    }

    #[test]
    fn smith_form_postconditions(
        rows in 1usize..6,
        cols in 1usize..6,
        entries in prop::collection::vec(-20i64..20, 36),
    ) {
        let a: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| (0..cols).map(|c| BigInt::from(entries[r * 6 + c])).collect())
            .collect();
        let f = smith_normal_form(&a);
        prop_assert_eq!(&mat_mul(&mat_mul(&f.u, &a), &f.v), &f.s);
        let one = BigInt::from(1);
        prop_assert!(determinant(&f.u) == one || determinant(&f.u) == -one.clone());
        prop_assert!(determinant(&f.v) == one || determinant(&f.v) == -one);
        let d = f.diagonal();
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn appendix_lambda_has_no_integer_defects(seed in 0u64..1000) {
        let rep = counterexample_report(2, seed);
        prop_assert_eq!(rep.sample_defects, 0);
        prop_assert!(rep.is_categorical_ring());
        prop_assert!(!rep.is_ann_category());
    }
}
