//! A categorical ring over the dual numbers `(Z/n)[ε]` whose only nontrivial
//! constraint is a left distributivity `λ`, and which is not an Ann-category.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{
    AnnStructure, CochainData, LeftDistLambda, Table, ViolationEntry, ViolationList,
};
use crate::complex::{is_structure, system_violations};
use crate::equations::System;
use crate::ring::{make_bimodule_via_hom, make_dual_numbers, make_zn, FiniteBimodule};

/// Failures of R1–R5 for `lam`.
pub fn check_r1_r5(m: &FiniteBimodule, lam: &LeftDistLambda) -> ViolationList {
    system_violations(System::CategoricalRing, m, &lam.tables())
}

#[derive(Clone, Debug)]
pub struct AppendixLambda {
    pub module: FiniteBimodule,
    pub lambda: LeftDistLambda,
}

/// `R = (Z/n)[ε]`, `M = Z/n` through `a + bε ↦ a`, and
/// `λ(a_r + b_r ε, a_s + b_s ε, a_t + b_t ε) = b_r (a_s + a_t)`.
///
/// Ring element `a + bε` has index `a·n + b`.
pub fn appendix_lambda(n: usize) -> AppendixLambda {
    assert!(n >= 2, "the base ring needs n >= 2");
    let ring = Arc::new(make_dual_numbers(&make_zn(n)));
    let order = ring.order();
    let phi: Vec<u64> = (0..order).map(|i| (i / n) as u64).collect();
    let module = make_bimodule_via_hom(ring, n as u64, &phi).expect("quotient map is a hom");
    let parts = |i: usize| (i / n, i % n);
    let data = (0..order.pow(3))
        .map(|idx| {
            let (r, s, t) = (idx / (order * order), (idx / order) % order, idx % order);
            let (_, b_r) = parts(r);
            let (a_s, _) = parts(s);
            let (a_t, _) = parts(t);
            (b_r * (a_s + a_t)) % n
        })
        .collect();
    let lambda = LeftDistLambda {
        lam: Table::from_data(order, 3, data).expect("one entry per triple"),
    };
    AppendixLambda { module, lambda }
}

/// Cells where `λ` breaks `λ(1,y,z) = λ(0,y,z) = λ(x,0,z) = λ(x,y,0) = 0`,
/// each listed once under `N:lambda`.
pub fn is_ann_normalized(m: &FiniteBimodule, lam: &LeftDistLambda) -> ViolationList {
    let (zero, one) = (m.ring().zero(), m.ring().one());
    let mut out = ViolationList::default();
    for idx in 0..lam.lam.len() {
        let v = lam.lam.at(idx);
        if v == m.zero() {
            continue;
        }
        let args = lam.lam.args(idx);
        let slot = args[0] == one || args[0] == zero || args[1] == zero || args[2] == zero;
        if slot {
            out.entries.push(ViolationEntry {
                equation: "N:lambda".into(),
                args,
                defect: v,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub n: usize,
    pub seed: u64,
    pub r1_r5_violations: ViolationList,
    pub normalization_violations: ViolationList,
    /// First `λ(x,0,z) ≠ 0`.
    pub witness: Option<ViolationEntry>,
    pub samples: usize,
    pub sample_defects: usize,
    /// Violations of `(0, 0, 0, λ, 0)` as an Ann structure.
    pub embedding_violations: usize,
}

impl CounterexampleReport {
    pub fn is_categorical_ring(&self) -> bool {
        self.r1_r5_violations.is_empty() && self.sample_defects == 0
    }

    pub fn is_ann_category(&self) -> bool {
        self.normalization_violations.is_empty() && self.embedding_violations == 0
    }
}

pub const SAMPLES: usize = 500;
pub const SAMPLE_BOUND: i64 = 10;

type Dual = (i64, i64);

fn lam_z(r: Dual, s: Dual, t: Dual) -> i64 {
    r.1 * (s.0 + t.0)
}

fn mul_z(r: Dual, s: Dual) -> Dual {
    (r.0 * s.0, r.0 * s.1 + r.1 * s.0)
}

fn add_z(r: Dual, s: Dual) -> Dual {
    (r.0 + s.0, r.1 + s.1)
}

/// R1–R5 over `Z[ε]` with `M = Z`, at one random tuple; the number of
/// equations that fail.
fn integer_defects(x: &[Dual; 5]) -> usize {
    let [r, s, t, u, v] = *x;
    let checks = [
        r.0 * lam_z(s, t, u) - lam_z(mul_z(r, s), t, u) + lam_z(r, mul_z(s, t), mul_z(s, u)),
        lam_z(r, s, t) * u.0 - lam_z(r, mul_z(s, u), mul_z(t, u)),
        lam_z((1, 0), s, t),
        lam_z(r, add_z(s, t), add_z(u, v)) + lam_z(r, s, t) + lam_z(r, u, v)
            - lam_z(r, add_z(s, u), add_z(t, v))
            - lam_z(r, s, u)
            - lam_z(r, t, v),
        lam_z(add_z(r, s), t, u) - lam_z(r, t, u) - lam_z(s, t, u),
    ];
    checks.iter().filter(|&&c| c != 0).count()
}

pub fn counterexample_report(n: usize, seed: u64) -> CounterexampleReport {
    let AppendixLambda { module, lambda } = appendix_lambda(n);
    let r1_r5_violations = check_r1_r5(&module, &lambda);
    let normalization_violations = is_ann_normalized(&module, &lambda);
    let witness = normalization_violations
        .entries
        .iter()
        .find(|e| e.args[1] == module.ring().zero())
        .cloned();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        (
            rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
            rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
        )
    };
    let sample_defects = (0..SAMPLES)
        .map(|_| integer_defects(&[draw(), draw(), draw(), draw(), draw()]))
        .sum();

    let mut embedded = AnnStructure::zero(module.ring());
    embedded.lambda = lambda.lam.clone();
    let embedding_violations = is_structure(&module, &embedded).len();

    CounterexampleReport {
        n,
        seed,
        r1_r5_violations,
        normalization_violations,
        witness,
        samples: SAMPLES,
        sample_defects,
        embedding_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: usize, a: usize, b: usize) -> usize {
        a * n + b
    }

    #[test]
    fn formula_values() {
        let ap = appendix_lambda(2);
        assert_eq!(ap.lambda.lam.get(&[idx(2, 0, 1), idx(2, 1, 0), idx(2, 1, 0)]), 0);
        assert_eq!(ap.lambda.lam.get(&[idx(2, 0, 1), 0, idx(2, 1, 0)]), 1);
        let ap = appendix_lambda(3);
        assert_eq!(ap.lambda.lam.get(&[idx(3, 1, 1), idx(3, 2, 0), idx(3, 2, 1)]), 1);
        for r in (0..9).filter(|r| r % 3 == 0) {
            for s in 0..9 {
                for t in 0..9 {
                    assert_eq!(ap.lambda.lam.get(&[r, s, t]), 0);
                }
            }
        }
    }

    #[test]
    fn zero_lambda_is_fine() {
        let ap = appendix_lambda(2);
        let z = LeftDistLambda::zero(ap.module.ring());
        assert!(check_r1_r5(&ap.module, &z).is_empty());
        assert!(is_ann_normalized(&ap.module, &z).is_empty());
    }

    #[test]
    fn lambda_at_one_breaks_r3() {
        let ap = appendix_lambda(2);
        let one = ap.module.ring().one();
        let mut l = LeftDistLambda::zero(ap.module.ring());
        l.lam.set(&[one, one, one], 1);
        assert!(check_r1_r5(&ap.module, &l).find("R3", &[one, one]).is_some());
    }

    #[test]
    fn dual_numbers_over_z2() {
        let rep = counterexample_report(2, 0);
        assert!(rep.r1_r5_violations.is_empty());
        assert!(rep.is_categorical_ring());
        assert!(!rep.is_ann_category());
        let w = rep.witness.expect("witness");
        assert_eq!((w.args.as_slice(), w.defect), (&[1, 0, 2][..], 1));
        assert_eq!(rep.sample_defects, 0);
        assert!(rep.embedding_violations > 0);
    }

    #[test]
    fn broken_integer_lambda_is_caught() {
        let r = (1, 1);
        let s = (2, 0);
        let t = (3, 1);
        assert_eq!(integer_defects(&[r, s, t, (1, 0), (0, 1)]), 0);
        assert_ne!(lam_z(r, (0, 0), t), 0);
    }
}
