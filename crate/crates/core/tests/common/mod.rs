#![allow(dead_code)]

use std::sync::Arc;

use maclane_core::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn z2z2() -> FiniteBimodule {
    make_bimodule_via_hom(Arc::new(make_zn(2)), 2, &[0, 1]).unwrap()
}

pub fn z4z2() -> FiniteBimodule {
    make_bimodule_via_hom(Arc::new(make_zn(4)), 2, &[0, 1, 0, 1]).unwrap()
}

/// `Z/2[ε]` acting on `Z/2` through `a + bε ↦ a`.
pub fn dual2() -> FiniteBimodule {
    make_bimodule_via_hom(Arc::new(make_dual_numbers(&make_zn(2))), 2, &[0, 0, 1, 1]).unwrap()
}

pub fn z3z3() -> FiniteBimodule {
    make_bimodule_via_hom(Arc::new(make_zn(3)), 3, &[0, 1, 2]).unwrap()
}

pub fn trivial() -> FiniteBimodule {
    make_bimodule_via_hom(Arc::new(make_zn(1)), 1, &[0]).unwrap()
}

pub fn budget() -> Budget {
    Budget::default()
}

pub fn sample<T: Clone>(all: &[T], k: usize, seed: u64) -> Vec<T> {
    let mut v = all.to_vec();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v.truncate(k);
    v
}

pub fn table(n: usize, arity: usize, cells: &[(&[usize], usize)]) -> Table {
    let mut t = Table::zeros(n, arity);
    for (args, v) in cells {
        t.set(args, *v);
    }
    t
}
