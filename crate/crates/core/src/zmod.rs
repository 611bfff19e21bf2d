//! Linear algebra over `Z/e`.
//!
//! [`Span`] keeps a submodule of `(Z/e)^n` in Howell form, which gives
//! membership tests, canonical coset representatives and the order of the
//! submodule. [`snf_mod`] diagonalizes a matrix over `Z/e` with tracked
//! transforms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;

/// `(g, s, t)` with `g = gcd(a, b) = s·a + t·b`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[inline]
pub fn md(x: i128, e: u64) -> u64 {
    x.rem_euclid(e as i128) as u64
}

/// A unit `u` of `Z/e` with `u·a ≡ gcd(a, e)`, together with that gcd.
/// For `a ≡ 0` this is `(1, e)`.
pub fn unit_normalizer(a: u64, e: u64) -> (u64, u64) {
    let a = a % e;
    if a == 0 {
        return (1, e);
    }
    let g = a.gcd(&e);
    let f = e / g;
    if f == 1 {
        return (1, g);
    }
    let (_, s, _) = ext_gcd((a / g) as i128, f as i128);
    let u0 = md(s, f);
    let mut u = u0;
    while u.gcd(&e) != 1 {
        u += f;
    }
    (u % e, g)
}

/// Solves `s·y ≡ c (mod e)` if possible.
pub fn solve_scalar(s: u64, c: u64, e: u64) -> Option<u64> {
    let (s, c) = (s % e, c % e);
    let g = s.gcd(&e);
    if c % g != 0 {
        return None;
    }
    if s == 0 {
        return Some(0);
    }
    let f = e / g;
    let (_, inv, _) = ext_gcd((s / g) as i128, f as i128);
    Some(md((c / g) as i128 * inv, f))
}

/// A submodule of `(Z/e)^n` in Howell form: at most one row per pivot column,
/// pivots dividing `e`, and closed under the annihilator multiples that make
/// reduction canonical.
#[derive(Clone, Debug)]
pub struct Span {
    e: u64,
    n: usize,
    rows: BTreeMap<usize, Vec<u64>>,
}

impl Span {
    pub fn new(e: u64, n: usize) -> Self {
        Self {
            e,
            n,
            rows: BTreeMap::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.e
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.rows.values()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds a vector (entries taken mod `e`).
    pub fn insert(&mut self, v: Vec<u64>) {
        let e = self.e;
        debug_assert_eq!(v.len(), self.n);
        let mut work = vec![v.into_iter().map(|x| x % e).collect::<Vec<_>>()];
        while let Some(mut v) = work.pop() {
            while let Some(c) = v.iter().position(|&x| x != 0) {
                match self.rows.get_mut(&c) {
                    None => {
                        let (u, g) = unit_normalizer(v[c], e);
                        scale_in_place(&mut v, u, e);
                        if g != 1 {
                            let ann = scaled(&v, e / g, e);
                            if ann.iter().any(|&x| x != 0) {
                                work.push(ann);
                            }
                        }
                        self.rows.insert(c, v);
                        break;
                    }
                    Some(row) => {
                        let p = row[c];
                        if v[c] % p == 0 {
                            let k = e - (v[c] / p) % e;
                            axpy(&mut v, k, row, e);
                            continue;
                        }
                        let (g, s, t) = ext_gcd(p as i128, v[c] as i128);
                        let (a, b) = ((v[c] as i128) / g, (p as i128) / g);
                        let mut new = combine(row, s, &v, t, e);
                        let other = combine(row, a, &v, -b, e);
                        let (u, g2) = unit_normalizer(new[c], e);
                        scale_in_place(&mut new, u, e);
                        if g2 != 1 {
                            let ann = scaled(&new, e / g2, e);
                            if ann.iter().any(|&x| x != 0) {
                                work.push(ann);
                            }
                        }
                        *row = new;
                        v = other;
                    }
                }
            }
        }
    }

    /// Reduces `v` against the rows: the result is the same for every
    /// element of the coset `v + span`, and zero exactly on the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let e = self.e;
        let mut v: Vec<u64> = v.iter().map(|x| x % e).collect();
        for (&c, row) in &self.rows {
            let q = v[c] / row[c];
            if q != 0 {
                axpy(&mut v, e - q % e, row, e);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Number of elements, `∏ e / pivot`.
    pub fn order(&self) -> BigUint {
        self.rows
            .iter()
            .fold(BigUint::from(1u32), |acc, (&c, row)| acc * (self.e / row[c]))
    }

    pub fn includes(&self, other: &Span) -> bool {
        other.rows().all(|r| self.contains(r))
    }
}

fn scale_in_place(v: &mut [u64], u: u64, e: u64) {
    if u != 1 {
        for x in v.iter_mut() {
            *x = mulmod(*x, u, e);
        }
    }
}

fn scaled(v: &[u64], u: u64, e: u64) -> Vec<u64> {
    v.iter().map(|&x| mulmod(x, u, e)).collect()
}

#[inline]
fn mulmod(a: u64, b: u64, e: u64) -> u64 {
    ((a as u128 * b as u128) % e as u128) as u64
}

/// `v += k·w`
fn axpy(v: &mut [u64], k: u64, w: &[u64], e: u64) {
    for (x, &y) in v.iter_mut().zip(w) {
        if y != 0 {
            *x = ((*x as u128 + k as u128 * y as u128) % e as u128) as u64;
        }
    }
}

fn combine(a: &[u64], s: i128, b: &[u64], t: i128, e: u64) -> Vec<u64> {
    let (s, t) = (md(s, e) as u128, md(t, e) as u128);
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((s * x as u128 + t * y as u128) % e as u128) as u64)
        .collect()
}

/// `P·A·Q = diag(s)` over `Z/e`, with `P`, `Q` invertible.
#[derive(Clone, Debug)]
pub struct ModSnf {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    /// Diagonal entries, each a divisor of `e` or `0`; length `min(rows, cols)`.
    pub diag: Vec<u64>,
    pub p: Option<Vec<Vec<u64>>>,
    pub q: Vec<Vec<u64>>,
    pub q_inv: Vec<Vec<u64>>,
}

struct Work {
    e: u64,
    a: Vec<Vec<u64>>,
    p: Option<Vec<Vec<u64>>>,
    q: Vec<Vec<u64>>,
    qi: Vec<Vec<u64>>,
}

impl Work {
    fn row_combine(&mut self, i: usize, j: usize, s: i128, t: i128, a: i128, b: i128) {
        // row_i ← s·row_i + t·row_j, row_j ← a·row_i + b·row_j
        let e = self.e;
        let apply = |m: &mut Vec<Vec<u64>>| {
            let ri = combine(&m[i], s, &m[j], t, e);
            let rj = combine(&m[i], a, &m[j], b, e);
            m[i] = ri;
            m[j] = rj;
        };
        apply(&mut self.a);
        if let Some(p) = self.p.as_mut() {
            apply(p);
        }
    }

    fn row_axpy(&mut self, i: usize, k: u64, j: usize) {
        // row_i += k·row_j
        let e = self.e;
        let rj = self.a[j].clone();
        axpy(&mut self.a[i], k, &rj, e);
        if let Some(p) = self.p.as_mut() {
            let pj = p[j].clone();
            axpy(&mut p[i], k, &pj, e);
        }
    }

    fn row_scale(&mut self, i: usize, u: u64) {
        let e = self.e;
        scale_in_place(&mut self.a[i], u, e);
        if let Some(p) = self.p.as_mut() {
            scale_in_place(&mut p[i], u, e);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(p) = self.p.as_mut() {
            p.swap(i, j);
        }
    }

    fn col_combine(&mut self, i: usize, j: usize, s: i128, t: i128, a: i128, b: i128) {
        // col_i ← s·col_i + t·col_j, col_j ← a·col_i + b·col_j (det = s·b − t·a = 1)
        let e = self.e;
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                let (x, y) = (row[i] as i128, row[j] as i128);
                row[i] = md(s * x + t * y, e);
                row[j] = md(a * x + b * y, e);
            }
        }
        // Q⁻¹ ← E⁻¹·Q⁻¹ acting on rows i, j.
        let (ri, rj) = (self.qi[i].clone(), self.qi[j].clone());
        self.qi[i] = combine(&ri, b, &rj, -a, e);
        self.qi[j] = combine(&ri, -t, &rj, s, e);
    }

    fn col_axpy(&mut self, i: usize, k: u64, j: usize) {
        // col_i += k·col_j  ⇒  Q⁻¹: row_j −= k·row_i
        let e = self.e;
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                if row[j] != 0 {
                    row[i] = ((row[i] as u128 + k as u128 * row[j] as u128) % e as u128) as u64;
                }
            }
        }
        let ri = self.qi[i].clone();
        axpy(&mut self.qi[j], (e - k % e) % e, &ri, e);
    }

    fn col_scale(&mut self, i: usize, u: u64) {
        let e = self.e;
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                row[i] = mulmod(row[i], u, e);
            }
        }
        let (_, inv, _) = ext_gcd(u as i128, e as i128);
        scale_in_place(&mut self.qi[i], md(inv, e), e);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
        self.qi.swap(i, j);
    }
}

fn identity(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Smith normal form over `Z/e`. `P` is only tracked when `track_p` is set.
pub fn snf_mod(a: Vec<Vec<u64>>, cols: usize, e: u64, track_p: bool) -> ModSnf {
    let rows = a.len();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let mut w = Work {
        e,
        a: a.into_iter()
            .map(|r| r.into_iter().map(|x| x % e).collect())
            .collect(),
        p: track_p.then(|| identity(rows)),
        q: identity(cols),
        qi: identity(cols),
    };
    let mut diag = Vec::with_capacity(rows.min(cols));
    for k in 0..rows.min(cols) {
        // Pivot: the entry generating the largest ideal, first in row-major order.
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = w.a[i][j];
                if x != 0 {
                    let g = x.gcd(&e);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            diag.extend(std::iter::repeat_n(0, rows.min(cols) - k));
            break;
        };
        w.row_swap(k, pi);
        w.col_swap(k, pj);
        loop {
            let (u, _) = unit_normalizer(w.a[k][k], e);
            w.row_scale(k, u);
            let mut dirty = false;
            for i in k + 1..rows {
                let x = w.a[i][k];
                if x == 0 {
                    continue;
                }
                let p = w.a[k][k];
                if x.is_multiple_of(p) {
                    w.row_axpy(i, e - (x / p) % e, k);
                } else {
                    let (g, s, t) = ext_gcd(p as i128, x as i128);
                    let (a, b) = (x as i128 / g, p as i128 / g);
                    w.row_combine(k, i, s, t, -a, b);
                    let (u, _) = unit_normalizer(w.a[k][k], e);
                    w.row_scale(k, u);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let x = w.a[k][j];
                if x == 0 {
                    continue;
                }
                let p = w.a[k][k];
                if x.is_multiple_of(p) {
                    w.col_axpy(j, e - (x / p) % e, k);
                } else {
                    let (g, s, t) = ext_gcd(p as i128, x as i128);
                    let (a, b) = (x as i128 / g, p as i128 / g);
                    w.col_combine(k, j, s, t, -a, b);
                    let (u, _) = unit_normalizer(w.a[k][k], e);
                    w.col_scale(k, u);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let p = w.a[k][k];
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !w.a[i][j].is_multiple_of(p)));
            match bad {
                Some(i) => w.row_axpy(k, 1, i),
                None => break,
            }
        }
        diag.push(w.a[k][k]);
    }
    ModSnf {
        modulus: e,
        rows,
        cols,
        diag,
        p: w.p,
        q: w.q,
        q_inv: w.qi,
    }
}

impl ModSnf {
    /// Generators of `{x : A·x = 0}`, as vectors of length `cols`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let e = self.modulus;
        (0..self.cols)
            .filter_map(|i| {
                let f = match self.diag.get(i) {
                    Some(&s) => e / s.gcd(&e),
                    None => 1,
                };
                if f % e == 0 {
                    return None;
                }
                Some(self.q.iter().map(|row| mulmod(row[i], f, e)).collect())
            })
            .collect()
    }

    /// Some `x` with `A·x = b`, if one exists. Needs `P`.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let e = self.modulus;
        let p = self.p.as_ref().expect("solve needs the row transform");
        let c: Vec<u64> = p
            .iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .fold(0u128, |acc, (&x, &y)| (acc + x as u128 * y as u128) % e as u128)
                    as u64
            })
            .collect();
        let mut y = vec![0u64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            match self.diag.get(i) {
                Some(&s) => y[i] = solve_scalar(s, ci, e)?,
                None if ci != 0 => return None,
                None => {}
            }
        }
        Some(
            self.q
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&y)
                        .fold(0u128, |acc, (&x, &v)| (acc + x as u128 * v as u128) % e as u128)
                        as u64
                })
                .collect(),
        )
    }
}

/// Orders of the cyclic factors of `(Z/e)^k / span(relations)`, unit factors
/// dropped, in the order produced by the diagonalization.
pub fn quotient_cyclic_orders(relations: Vec<Vec<u64>>, k: usize, e: u64) -> (Vec<u64>, ModSnf) {
    let snf = snf_mod(relations, k, e, false);
    let orders = (0..k)
        .map(|i| match snf.diag.get(i) {
            Some(&s) => s.gcd(&e),
            None => e,
        })
        .collect();
    (orders, snf)
}

/// Invariant factors `d₁ | d₂ | …` (all ≥ 2) of `⊕ Z/cᵢ`.
pub fn invariant_factors(cyclic: &[u64]) -> Vec<u64> {
    let mut powers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &c in cyclic {
        let mut c = c;
        let mut p = 2;
        while c > 1 {
            if p * p > c {
                p = c;
            }
            if c % p == 0 {
                let mut q = 1;
                while c % p == 0 {
                    c /= p;
                    q *= p;
                }
                powers.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = powers.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for qs in powers.values_mut() {
        qs.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in qs.iter().enumerate() {
            out[i] *= q;
        }
    }
    out.reverse();
    out
}
