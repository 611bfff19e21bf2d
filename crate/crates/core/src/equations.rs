//! The equation systems and coboundary formulas as explicit linear forms.
//!
//! Each equation instance (or each output cell of a coboundary map) is a list
//! of [`Term`]s `coeff · (left · T[cell] · right)` over the tables of one
//! cochain shape. The same term lists drive pointwise evaluation, the
//! exhaustive search and the matrix assembly in the engine.

use crate::cochain::{Shape, Table};
use crate::ring::{tuples, FiniteBimodule, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub coeff: i64,
    pub left: usize,
    pub right: usize,
    pub table: usize,
    pub cell: usize,
}

/// Builder for one linear form; `x·T(..)` and `T(..)·z` terms carry the
/// acting ring element, plain terms act by `1` on both sides.
pub(crate) struct Lin<'r> {
    ring: &'r FiniteRing,
    terms: Vec<Term>,
}

impl<'r> Lin<'r> {
    pub(crate) fn new(ring: &'r FiniteRing) -> Self {
        Self {
            ring,
            terms: Vec::with_capacity(12),
        }
    }

    fn clear(&mut self) {
        self.terms.clear();
    }

    fn cell(&self, args: &[usize]) -> usize {
        let n = self.ring.order();
        args.iter().fold(0, |acc, &a| acc * n + a)
    }

    fn term(&mut self, coeff: i64, left: usize, table: usize, args: &[usize], right: usize) -> &mut Self {
        let cell = self.cell(args);
        self.terms.push(Term {
            coeff,
            left,
            right,
            table,
            cell,
        });
        self
    }

    fn p(&mut self, table: usize, args: &[usize]) -> &mut Self {
        let one = self.ring.one();
        self.term(1, one, table, args, one)
    }

    fn m(&mut self, table: usize, args: &[usize]) -> &mut Self {
        let one = self.ring.one();
        self.term(-1, one, table, args, one)
    }

    /// `+ x·T(args)`
    fn lp(&mut self, x: usize, table: usize, args: &[usize]) -> &mut Self {
        let one = self.ring.one();
        self.term(1, x, table, args, one)
    }

    fn lm(&mut self, x: usize, table: usize, args: &[usize]) -> &mut Self {
        let one = self.ring.one();
        self.term(-1, x, table, args, one)
    }

    /// `+ T(args)·z`
    fn rp(&mut self, table: usize, args: &[usize], z: usize) -> &mut Self {
        let one = self.ring.one();
        self.term(1, one, table, args, z)
    }

    fn rm(&mut self, table: usize, args: &[usize], z: usize) -> &mut Self {
        let one = self.ring.one();
        self.term(-1, one, table, args, z)
    }

    pub(crate) fn terms(&self) -> &[Term] {
        &self.terms
    }
}

/// Evaluates a linear form on concrete tables.
pub fn eval_terms(m: &FiniteBimodule, tables: &[&Table], terms: &[Term]) -> usize {
    terms.iter().fold(m.zero(), |acc, t| {
        let v = tables[t.table].at(t.cell);
        if v == 0 {
            return acc;
        }
        let v = m.act_right(m.act_left(t.left, v), t.right);
        match t.coeff {
            1 => m.add(acc, v),
            -1 => m.sub(acc, v),
            k => m.add(acc, m.scale(k, v)),
        }
    })
}

/// Equation systems whose solution sets are the cocycle-like groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// M1–M8 over [`Shape::MacLane3`].
    MacLaneCocycle,
    /// A1–A12 over [`Shape::Ann3`].
    AnnStructure,
    /// R1–R5 over [`Shape::LambdaOnly`].
    CategoricalRing,
}

impl System {
    pub fn shape(self) -> Shape {
        match self {
            System::MacLaneCocycle => Shape::MacLane3,
            System::AnnStructure => Shape::Ann3,
            System::CategoricalRing => Shape::LambdaOnly,
        }
    }

    /// Equation tags with their argument counts, in evaluation order.
    pub fn equations(self) -> &'static [(&'static str, usize)] {
        match self {
            System::MacLaneCocycle => &[
                ("M1", 4),
                ("M2", 4),
                ("M3", 4),
                ("M4", 4),
                ("M5", 4),
                ("M6", 5),
                ("M7", 5),
                ("M8", 8),
            ],
            System::AnnStructure => &[
                ("A1", 4),
                ("A2", 3),
                ("A3", 2),
                ("A4", 3),
                ("A5", 3),
                ("A6", 4),
                ("A7", 4),
                ("A8", 4),
                ("A9", 4),
                ("A10", 4),
                ("A11", 4),
                ("A12", 4),
            ],
            System::CategoricalRing => &[("R1", 4), ("R2", 4), ("R3", 2), ("R4", 5), ("R5", 4)],
        }
    }
}

// Table indices per shape.
const T: usize = 0;
const TAU: usize = 0;
const NU: usize = 1;
const SIGMA: usize = 0;
const M_ALPHA: usize = 1;
const M_LAMBDA: usize = 2;
const M_RHO: usize = 3;
const XI: usize = 0;
const ETA: usize = 1;
const A_ALPHA: usize = 2;
const A_LAMBDA: usize = 3;
const A_RHO: usize = 4;
const LAM: usize = 0;

/// Calls `emit(tag, args, terms)` for every instance of every equation of the
/// system, equations in order and arguments lexicographically.
pub fn for_each_equation(
    system: System,
    ring: &FiniteRing,
    mut emit: impl FnMut(&'static str, &[usize], &[Term]),
) {
    let n = ring.order();
    let mut lin = Lin::new(ring);
    for &(tag, arity) in system.equations() {
        for args in tuples(n, arity) {
            lin.clear();
            build_equation(&mut lin, ring, tag, &args);
            emit(tag, &args, lin.terms());
        }
    }
}

fn build_equation(e: &mut Lin, r: &FiniteRing, tag: &str, a: &[usize]) {
    let ad = |x: usize, y: usize| r.add(x, y);
    let mu = |x: usize, y: usize| r.mul(x, y);
    let zero = r.zero();
    let one = r.one();
    match tag {
        // Mac Lane 3-cocycle conditions.
        "M1" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.lp(x, M_ALPHA, &[y, z, t])
                .m(M_ALPHA, &[mu(x, y), z, t])
                .p(M_ALPHA, &[x, mu(y, z), t])
                .m(M_ALPHA, &[x, y, mu(z, t)])
                .rp(M_ALPHA, &[x, y, z], t);
        }
        "M2" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.m(M_ALPHA, &[x, z, t])
                .m(M_ALPHA, &[y, z, t])
                .p(M_ALPHA, &[ad(x, y), z, t])
                .p(M_RHO, &[mu(x, z), mu(y, z), t])
                .m(M_RHO, &[x, y, mu(z, t)])
                .rp(M_RHO, &[x, y, z], t);
        }
        "M3" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.m(M_ALPHA, &[x, y, t])
                .m(M_ALPHA, &[x, z, t])
                .p(M_ALPHA, &[x, ad(y, z), t])
                .lm(x, M_RHO, &[y, z, t])
                .p(M_RHO, &[mu(x, y), mu(x, z), t])
                .m(M_LAMBDA, &[x, mu(y, t), mu(z, t)])
                .rp(M_LAMBDA, &[x, y, z], t);
        }
        "M4" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(M_ALPHA, &[x, y, z])
                .p(M_ALPHA, &[x, y, t])
                .m(M_ALPHA, &[x, y, ad(z, t)])
                .lp(x, M_LAMBDA, &[y, z, t])
                .m(M_LAMBDA, &[mu(x, y), z, t])
                .p(M_LAMBDA, &[x, mu(y, z), mu(y, t)]);
        }
        "M5" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.m(M_LAMBDA, &[x, z, t])
                .m(M_LAMBDA, &[y, z, t])
                .p(M_LAMBDA, &[ad(x, y), z, t])
                .p(M_RHO, &[x, y, z])
                .p(M_RHO, &[x, y, t])
                .m(M_RHO, &[x, y, ad(z, t)])
                .m(SIGMA, &[mu(x, z), mu(x, t), mu(y, z), mu(y, t)]);
        }
        "M6" => {
            let (rr, x, y, z, t) = (a[0], a[1], a[2], a[3], a[4]);
            e.p(M_LAMBDA, &[rr, x, y])
                .p(M_LAMBDA, &[rr, z, t])
                .m(M_LAMBDA, &[rr, ad(x, z), ad(y, t)])
                .m(M_LAMBDA, &[rr, x, z])
                .m(M_LAMBDA, &[rr, y, t])
                .p(M_LAMBDA, &[rr, ad(x, y), ad(z, t)])
                .lm(rr, SIGMA, &[x, y, z, t])
                .p(SIGMA, &[mu(rr, x), mu(rr, y), mu(rr, z), mu(rr, t)]);
        }
        "M7" => {
            let (rr, x, y, z, t) = (a[0], a[1], a[2], a[3], a[4]);
            e.m(M_RHO, &[x, y, rr])
                .m(M_RHO, &[z, t, rr])
                .p(M_RHO, &[ad(x, z), ad(y, t), rr])
                .p(M_RHO, &[x, z, rr])
                .p(M_RHO, &[y, t, rr])
                .m(M_RHO, &[ad(x, y), ad(z, t), rr])
                .m(SIGMA, &[mu(x, rr), mu(y, rr), mu(z, rr), mu(t, rr)])
                .rp(SIGMA, &[x, y, z, t], rr);
        }
        "M8" => {
            let (rr, s, u, v, x, y, z, t) = (a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]);
            e.m(SIGMA, &[rr, s, u, v])
                .m(SIGMA, &[x, y, z, t])
                .p(SIGMA, &[ad(rr, x), ad(s, y), ad(u, z), ad(v, t)])
                .p(SIGMA, &[rr, s, x, y])
                .p(SIGMA, &[u, v, z, t])
                .m(SIGMA, &[ad(rr, u), ad(s, v), ad(x, z), ad(y, t)])
                .m(SIGMA, &[rr, u, x, z])
                .m(SIGMA, &[s, v, y, t])
                .p(SIGMA, &[ad(rr, s), ad(u, v), ad(x, y), ad(z, t)]);
        }

        // Structure equations, written as LHS − RHS.
        "A1" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(XI, &[y, z, t])
                .m(XI, &[ad(x, y), z, t])
                .p(XI, &[x, ad(y, z), t])
                .m(XI, &[x, y, ad(z, t)])
                .p(XI, &[x, y, z]);
        }
        "A2" => {
            let (x, y, z) = (a[0], a[1], a[2]);
            e.p(XI, &[x, y, z])
                .m(XI, &[x, z, y])
                .p(XI, &[z, x, y])
                .p(ETA, &[ad(x, y), z])
                .m(ETA, &[x, z])
                .m(ETA, &[y, z]);
        }
        "A3" => {
            let (x, y) = (a[0], a[1]);
            e.p(ETA, &[x, y]).p(ETA, &[y, x]);
        }
        "A4" => {
            let (x, y, z) = (a[0], a[1], a[2]);
            e.lp(x, ETA, &[y, z])
                .m(ETA, &[mu(x, y), mu(x, z)])
                .m(A_LAMBDA, &[x, y, z])
                .p(A_LAMBDA, &[x, z, y]);
        }
        "A5" => {
            let (x, y, z) = (a[0], a[1], a[2]);
            e.rp(ETA, &[x, y], z)
                .m(ETA, &[mu(x, z), mu(y, z)])
                .m(A_RHO, &[x, y, z])
                .p(A_RHO, &[y, x, z]);
        }
        "A6" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.lp(x, XI, &[y, z, t])
                .m(XI, &[mu(x, y), mu(x, z), mu(x, t)])
                .m(A_LAMBDA, &[x, z, t])
                .p(A_LAMBDA, &[x, ad(y, z), t])
                .m(A_LAMBDA, &[x, y, ad(z, t)])
                .p(A_LAMBDA, &[x, y, z]);
        }
        "A7" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.rp(XI, &[x, y, z], t)
                .m(XI, &[mu(x, t), mu(y, t), mu(z, t)])
                .m(A_RHO, &[y, z, t])
                .p(A_RHO, &[ad(x, y), z, t])
                .m(A_RHO, &[x, ad(y, z), t])
                .p(A_RHO, &[x, y, t]);
        }
        "A8" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            let (xz, xt, yz, yt) = (mu(x, z), mu(x, t), mu(y, z), mu(y, t));
            e.p(A_RHO, &[x, y, ad(z, t)])
                .m(A_RHO, &[x, y, z])
                .m(A_RHO, &[x, y, t])
                .p(A_LAMBDA, &[x, z, t])
                .p(A_LAMBDA, &[y, z, t])
                .m(A_LAMBDA, &[ad(x, y), z, t])
                .p(XI, &[ad(xz, xt), yz, yt])
                .m(XI, &[xz, xt, yz])
                .p(ETA, &[xt, yz])
                .m(XI, &[ad(xz, yz), xt, yt])
                .p(XI, &[xz, yz, xt]);
        }
        "A9" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(A_ALPHA, &[x, y, ad(z, t)])
                .m(A_ALPHA, &[x, y, z])
                .m(A_ALPHA, &[x, y, t])
                .lm(x, A_LAMBDA, &[y, z, t])
                .m(A_LAMBDA, &[x, mu(y, z), mu(y, t)])
                .p(A_LAMBDA, &[mu(x, y), z, t]);
        }
        "A10" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(A_ALPHA, &[x, ad(y, z), t])
                .m(A_ALPHA, &[x, y, t])
                .m(A_ALPHA, &[x, z, t])
                .lm(x, A_RHO, &[y, z, t])
                .p(A_RHO, &[mu(x, y), mu(x, z), t])
                .m(A_LAMBDA, &[x, mu(y, t), mu(z, t)])
                .rp(A_LAMBDA, &[x, y, z], t);
        }
        "A11" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(A_ALPHA, &[ad(x, y), z, t])
                .m(A_ALPHA, &[x, z, t])
                .m(A_ALPHA, &[y, z, t])
                .rp(A_RHO, &[x, y, z], t)
                .p(A_RHO, &[mu(x, z), mu(y, z), t])
                .m(A_RHO, &[x, y, mu(z, t)]);
        }
        "A12" => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.lp(x, A_ALPHA, &[y, z, t])
                .m(A_ALPHA, &[mu(x, y), z, t])
                .p(A_ALPHA, &[x, mu(y, z), t])
                .m(A_ALPHA, &[x, y, mu(z, t)])
                .rp(A_ALPHA, &[x, y, z], t);
        }

        // Categorical-ring equations for a lone left-distributivity constraint.
        "R1" => {
            let (rr, s, t, u) = (a[0], a[1], a[2], a[3]);
            e.lp(rr, LAM, &[s, t, u])
                .m(LAM, &[mu(rr, s), t, u])
                .p(LAM, &[rr, mu(s, t), mu(s, u)]);
        }
        "R2" => {
            let (rr, s, t, u) = (a[0], a[1], a[2], a[3]);
            e.rp(LAM, &[rr, s, t], u).m(LAM, &[rr, mu(s, u), mu(t, u)]);
        }
        "R3" => {
            let (s, t) = (a[0], a[1]);
            e.p(LAM, &[one, s, t]);
        }
        "R4" => {
            let (rr, s, t, u, v) = (a[0], a[1], a[2], a[3], a[4]);
            e.p(LAM, &[rr, ad(s, t), ad(u, v)])
                .p(LAM, &[rr, s, t])
                .p(LAM, &[rr, u, v])
                .m(LAM, &[rr, ad(s, u), ad(t, v)])
                .m(LAM, &[rr, s, u])
                .m(LAM, &[rr, t, v]);
        }
        "R5" => {
            let (rr, r2, s, t) = (a[0], a[1], a[2], a[3]);
            e.p(LAM, &[ad(rr, r2), s, t])
                .m(LAM, &[rr, s, t])
                .m(LAM, &[r2, s, t]);
        }
        _ => unreachable!("unknown equation tag {tag} (zero = {zero})"),
    }
}

/// Linear maps between cochain shapes, given cell by cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    /// `t ↦ (τ, ν)`
    D1,
    /// `(τ, ν) ↦ (σ, α, λ, ρ)`
    D2,
    /// `(τ, ν) ↦ (ξ, η, α, λ, ρ)`: the difference of two cohomologous
    /// structures.
    D2Ann,
    /// `(ξ, η, α, λ, ρ) ↦ (σ, α, λ, ρ)`
    StructureToCocycle,
    /// `(σ, α, λ, ρ) ↦ (ξ, η, α, λ, ρ)`
    CocycleToStructure,
}

impl Operator {
    pub fn source(self) -> Shape {
        match self {
            Operator::D1 => Shape::C1,
            Operator::D2 | Operator::D2Ann => Shape::C2,
            Operator::StructureToCocycle => Shape::Ann3,
            Operator::CocycleToStructure => Shape::MacLane3,
        }
    }

    pub fn target(self) -> Shape {
        match self {
            Operator::D1 => Shape::C2,
            Operator::D2 | Operator::StructureToCocycle => Shape::MacLane3,
            Operator::D2Ann | Operator::CocycleToStructure => Shape::Ann3,
        }
    }
}

/// Calls `emit(table, cell, terms)` for every cell of every output table.
pub fn for_each_output(
    op: Operator,
    ring: &FiniteRing,
    mut emit: impl FnMut(usize, usize, &[Term]),
) {
    let n = ring.order();
    let mut lin = Lin::new(ring);
    for (table, &arity) in op.target().arities().iter().enumerate() {
        for (cell, args) in tuples(n, arity).enumerate() {
            lin.clear();
            build_output(&mut lin, ring, op, table, &args);
            emit(table, cell, lin.terms());
        }
    }
}

fn build_output(e: &mut Lin, r: &FiniteRing, op: Operator, table: usize, a: &[usize]) {
    let ad = |x: usize, y: usize| r.add(x, y);
    let mu = |x: usize, y: usize| r.mul(x, y);
    let zero = r.zero();
    match (op, table) {
        (Operator::D1, 0) => {
            let (x, y) = (a[0], a[1]);
            e.p(T, &[y]).m(T, &[ad(x, y)]).p(T, &[x]);
        }
        (Operator::D1, 1) => {
            let (x, y) = (a[0], a[1]);
            e.lp(x, T, &[y]).m(T, &[mu(x, y)]).rp(T, &[x], y);
        }
        (Operator::D2, 0) => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(TAU, &[x, y])
                .p(TAU, &[z, t])
                .m(TAU, &[ad(x, z), ad(y, t)])
                .m(TAU, &[x, z])
                .m(TAU, &[y, t])
                .p(TAU, &[ad(x, y), ad(z, t)]);
        }
        (Operator::D2, 1) | (Operator::D2Ann, 2) => alpha_of(e, r, a),
        (Operator::D2, 2) | (Operator::D2Ann, 3) => lambda_of(e, r, a),
        (Operator::D2, 3) | (Operator::D2Ann, 4) => rho_of(e, r, a),
        (Operator::D2Ann, 0) => {
            let (x, y, z) = (a[0], a[1], a[2]);
            e.p(TAU, &[y, z])
                .m(TAU, &[ad(x, y), z])
                .p(TAU, &[x, ad(y, z)])
                .m(TAU, &[x, y]);
        }
        (Operator::D2Ann, 1) => {
            let (x, y) = (a[0], a[1]);
            e.p(TAU, &[x, y]).m(TAU, &[y, x]);
        }
        (Operator::StructureToCocycle, 0) => {
            let (x, y, z, t) = (a[0], a[1], a[2], a[3]);
            e.p(XI, &[ad(x, y), z, t])
                .m(XI, &[x, y, z])
                .p(ETA, &[y, z])
                .p(XI, &[x, z, y])
                .m(XI, &[ad(x, z), y, t]);
        }
        (Operator::StructureToCocycle, k) => {
            e.p(k + 1, a);
        }
        (Operator::CocycleToStructure, 0) => {
            let (x, y, z) = (a[0], a[1], a[2]);
            e.m(SIGMA, &[x, y, zero, z]);
        }
        (Operator::CocycleToStructure, 1) => {
            let (x, y) = (a[0], a[1]);
            e.p(SIGMA, &[zero, x, y, zero]);
        }
        (Operator::CocycleToStructure, k) => {
            e.p(k - 1, a);
        }
        _ => unreachable!("operator {op:?} has no table {table}"),
    }
    let _ = mu;
}

fn alpha_of(e: &mut Lin, r: &FiniteRing, a: &[usize]) {
    let mu = |x: usize, y: usize| r.mul(x, y);
    let (x, y, z) = (a[0], a[1], a[2]);
    e.lp(x, NU, &[y, z])
        .m(NU, &[mu(x, y), z])
        .p(NU, &[x, mu(y, z)])
        .rm(NU, &[x, y], z);
}

fn lambda_of(e: &mut Lin, r: &FiniteRing, a: &[usize]) {
    let (ad, mu) = (|x, y| r.add(x, y), |x, y| r.mul(x, y));
    let (x, y, z) = (a[0], a[1], a[2]);
    e.p(NU, &[x, ad(y, z)])
        .m(NU, &[x, y])
        .m(NU, &[x, z])
        .lp(x, TAU, &[y, z])
        .m(TAU, &[mu(x, y), mu(x, z)]);
}

fn rho_of(e: &mut Lin, r: &FiniteRing, a: &[usize]) {
    let (ad, mu) = (|x, y| r.add(x, y), |x, y| r.mul(x, y));
    let (x, y, z) = (a[0], a[1], a[2]);
    e.p(NU, &[ad(x, y), z])
        .m(NU, &[x, z])
        .m(NU, &[y, z])
        .rp(TAU, &[x, y], z)
        .m(TAU, &[mu(x, z), mu(y, z)]);
}

/// Applies an operator pointwise.
pub fn apply_operator(op: Operator, m: &FiniteBimodule, input: &[&Table]) -> Vec<Table> {
    let ring = m.ring();
    let n = ring.order();
    let mut out: Vec<Table> = op
        .target()
        .arities()
        .iter()
        .map(|&a| Table::zeros(n, a))
        .collect();
    for_each_output(op, ring, |table, cell, terms| {
        out[table].set_at(cell, eval_terms(m, input, terms));
    });
    out
}
