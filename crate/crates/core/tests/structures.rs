mod common;

use std::collections::HashSet;

use common::*;
use maclane_core::engine::LinearSolver;
use maclane_core::equations::Operator;
use maclane_core::search::all_cochains;
use maclane_core::*;

#[test]
fn d1_example_over_z4() {
    let m = z4z2();
    let mut t = Cochain1::zero(m.ring());
    t.t.set(&[2], 1);
    let g = d1(&m, &t);
    assert_eq!(g.tau.get(&[1, 1]), 1);
    assert_eq!(g.tau.get(&[2, 2]), 0);
    assert!(g.nu.is_zero());
    assert!(d1(&m, &Cochain1::zero(m.ring())).is_zero());
}

#[test]
fn d2_example_over_z2() {
    let m = z2z2();
    let mut g = Cochain2::zero(m.ring());
    g.tau.set(&[1, 1], 1);
    let c = d2(&m, &g);
    assert_eq!(c.sigma.get(&[1, 1, 1, 1]), 0);
    assert!(c.alpha.is_zero());
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                let expected = m.sub(m.act_left(x, g.tau.get(&[y, z])), g.tau.get(&[x * y, x * z]));
                assert_eq!(c.lambda.get(&[x, y, z]), expected);
            }
        }
    }
}

#[test]
fn z2_has_only_the_zero_structure() {
    let m = z2z2();
    let all = enumerate_structures(&m, &budget()).unwrap();
    assert_eq!(all, vec![AnnStructure::zero(m.ring())]);
    let t = trivial();
    assert_eq!(enumerate_structures(&t, &budget()).unwrap(), vec![AnnStructure::zero(t.ring())]);
}

#[test]
fn structures_are_a_group() {
    let m = dual2();
    let all = enumerate_structures(&m, &budget()).unwrap();
    let set: HashSet<&AnnStructure> = all.iter().collect();
    for h in sample(&all, 40, 2) {
        assert!(set.contains(&h.neg(&m)));
        for h2 in sample(&all, 40, 3) {
            assert!(set.contains(&h.add(&m, &h2)));
        }
    }
}

#[test]
fn sigma_restricts_to_xi_and_eta() {
    let m = dual2();
    let all = enumerate_structures(&m, &budget()).unwrap();
    let n = m.ring().order();
    for h in sample(&all, 64, 4) {
        let c = structure_to_cocycle(&m, &h).unwrap();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(c.sigma.get(&[0, x, y, 0]), h.eta.get(&[x, y]));
                for z in 0..n {
                    assert_eq!(c.sigma.get(&[x, 0, y, z]), h.xi.get(&[x, y, z]));
                }
            }
        }
        assert_eq!(c.alpha, h.alpha);
        assert_eq!(c.lambda, h.lambda);
        assert_eq!(c.rho, h.rho);
    }
}

#[test]
fn round_trips() {
    let m = dual2();
    let all = enumerate_structures(&m, &budget()).unwrap();
    for h in sample(&all, 64, 5) {
        let c = structure_to_cocycle(&m, &h).unwrap();
        assert_eq!(cocycle_to_structure(&m, &c).unwrap(), h);
    }
    let m = z2z2();
    for c in enumerate_cocycles3(&m, &budget()).unwrap() {
        let back = structure_to_cocycle(&m, &cocycle_to_structure(&m, &c).unwrap()).unwrap();
        assert!(is_coboundary3(&m, &back.sub(&m, &c)).unwrap().is_some());
    }
}

#[test]
fn conversions_reject_bad_input() {
    let m = z2z2();
    let mut h = AnnStructure::zero(m.ring());
    h.xi.set(&[1, 1, 1], 1);
    assert!(matches!(structure_to_cocycle(&m, &h), Err(Error::NotStructure { .. })));
    let mut c = MacLane3Cochain::zero(m.ring());
    c.sigma.set(&[1, 1, 1, 1], 1);
    assert!(matches!(cocycle_to_structure(&m, &c), Err(Error::NotCocycle { .. })));
    let v = is_cocycle3(&m, &c);
    assert!(v.find("M5", &[1, 1, 1, 1]).is_some());
}

#[test]
fn lone_eta_defect() {
    let m = z2z2();
    let mut h = AnnStructure::zero(m.ring());
    h.eta.set(&[1, 1], 1);
    let v = is_structure(&m, &h);
    let e = v.find("A8", &[1, 1, 1, 1]).expect("A8 violation");
    assert_eq!(e.defect, m.neg(1));
}

#[test]
fn cohomologous_structures_examples() {
    let m = dual2();
    let all = enumerate_structures(&m, &budget()).unwrap();
    let h = &all[all.len() / 2];
    assert!(cohomologous_structures(&m, h, h).unwrap().unwrap().is_zero());

    let gs: Vec<Cochain2> = all_cochains::<Cochain2>(&m, &budget()).unwrap().collect();
    for g in sample(&gs, 4, 6) {
        let h2 = h.sub(&m, &d2_ann(&m, &g));
        let w = cohomologous_structures(&m, h, &h2).unwrap().unwrap();
        assert_eq!(d2_ann(&m, &w), h.sub(&m, &h2));
    }

    let solver = LinearSolver::for_operator(&m, Operator::D2Ann);
    let other = all
        .iter()
        .find(|h2| solver.solve::<Cochain2, _>(&m, &h.sub(&m, h2)).is_none())
        .expect("H3 is nontrivial here");
    assert_eq!(cohomologous_structures(&m, h, other).unwrap(), None);
}

#[test]
fn coboundaries_are_cocycles() {
    let m = dual2();
    let gs: Vec<Cochain2> = all_cochains::<Cochain2>(&m, &budget()).unwrap().collect();
    for g in sample(&gs, 20, 8) {
        assert!(is_cocycle3(&m, &d2(&m, &g)).is_empty());
        assert!(is_structure(&m, &d2_ann(&m, &g)).is_empty());
    }
}

#[test]
fn inner_derivations_vanish_on_symmetric_modules() {
    let m = dual2();
    for a in m.elements() {
        assert!(inner_derivation(&m, a).is_zero());
    }
}

#[test]
fn regularity() {
    let m = z4z2();
    assert!(is_regular(&m, &AnnStructure::zero(m.ring())));
    let all = enumerate_structures(&m, &budget()).unwrap();
    let bad = all
        .iter()
        .find(|h| m.ring().elements().any(|x| h.eta.get(&[x, x]) != 0))
        .expect("a structure with eta(x,x) != 0");
    assert!(!is_regular(&m, bad));
    let m = dual2();
    let reg: Vec<AnnStructure> = enumerate_structures(&m, &budget())
        .unwrap()
        .into_iter()
        .filter(|h| is_regular(&m, h))
        .collect();
    for h in sample(&reg, 20, 9) {
        for h2 in sample(&reg, 20, 10) {
            assert!(is_regular(&m, &h.add(&m, &h2)));
        }
    }
}
