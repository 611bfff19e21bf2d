//! Coboundaries, the cocycle and structure checkers, and the conversions
//! between structures and Mac Lane 3-cocycles.

use crate::cochain::{
    AnnStructure, Cochain1, Cochain2, CochainData, MacLane3Cochain, Table, ViolationEntry,
    ViolationList,
};
use crate::engine::LinearSolver;
use crate::equations::{apply_operator, eval_terms, for_each_equation, Operator, System};
use crate::error::{Error, Result};
use crate::ring::FiniteBimodule;

/// Evaluates every instance of `system` and reports the nonzero defects.
pub fn system_violations(system: System, m: &FiniteBimodule, tables: &[&Table]) -> ViolationList {
    let mut out = ViolationList::default();
    for_each_equation(system, m.ring(), |tag, args, terms| {
        let defect = eval_terms(m, tables, terms);
        if defect != m.zero() {
            out.entries.push(ViolationEntry {
                equation: tag.to_string(),
                args: args.to_vec(),
                defect,
            });
        }
    });
    out
}

pub(crate) fn apply<S: CochainData, T: CochainData>(op: Operator, m: &FiniteBimodule, c: &S) -> T {
    debug_assert_eq!(S::SHAPE, op.source());
    debug_assert_eq!(T::SHAPE, op.target());
    T::from_tables(apply_operator(op, m, &c.tables()))
}

/// `(τ, ν) = ∂t`
pub fn d1(m: &FiniteBimodule, t: &Cochain1) -> Cochain2 {
    apply(Operator::D1, m, t)
}

/// `(σ, α, λ, ρ) = ∂(τ, ν)`
pub fn d2(m: &FiniteBimodule, g: &Cochain2) -> MacLane3Cochain {
    apply(Operator::D2, m, g)
}

/// The difference `h − h′` of two structures related through `(τ, ν)`.
pub fn d2_ann(m: &FiniteBimodule, g: &Cochain2) -> AnnStructure {
    apply(Operator::D2Ann, m, g)
}

/// Normalization failures followed by M1–M8 failures.
pub fn is_cocycle3(m: &FiniteBimodule, c: &MacLane3Cochain) -> ViolationList {
    let mut out = c.normalization_violations(m.ring());
    out.extend(system_violations(System::MacLaneCocycle, m, &c.tables()));
    out
}

/// Normalization failures followed by A1–A12 failures.
pub fn is_structure(m: &FiniteBimodule, h: &AnnStructure) -> ViolationList {
    let mut out = h.normalization_violations(m.ring());
    out.extend(system_violations(System::AnnStructure, m, &h.tables()));
    out
}

fn require_structure(m: &FiniteBimodule, h: &AnnStructure) -> Result<()> {
    h.check_shape(m)?;
    let v = is_structure(m, h);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::NotStructure { violations: v.len() })
    }
}

fn require_cocycle(m: &FiniteBimodule, c: &MacLane3Cochain) -> Result<()> {
    c.check_shape(m)?;
    let v = is_cocycle3(m, c);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::NotCocycle { violations: v.len() })
    }
}

/// `σ(x,y,z,t) = ξ(x+y,z,t) − ξ(x,y,z) + η(y,z) + ξ(x,z,y) − ξ(x+z,y,t)`,
/// with `α, λ, ρ` carried over unchanged.
pub fn structure_to_cocycle(m: &FiniteBimodule, h: &AnnStructure) -> Result<MacLane3Cochain> {
    require_structure(m, h)?;
    Ok(apply(Operator::StructureToCocycle, m, h))
}

/// `ξ(x,y,z) = −σ(x,y,0,z)`, `η(x,y) = σ(0,x,y,0)`, with `α, λ, ρ` carried
/// over unchanged.
pub fn cocycle_to_structure(m: &FiniteBimodule, c: &MacLane3Cochain) -> Result<AnnStructure> {
    require_cocycle(m, c)?;
    Ok(apply(Operator::CocycleToStructure, m, c))
}

/// A pair `(τ, ν)` with `h − h2 = d2_ann(τ, ν)`, if the structures are
/// cohomologous.
pub fn cohomologous_structures(
    m: &FiniteBimodule,
    h: &AnnStructure,
    h2: &AnnStructure,
) -> Result<Option<Cochain2>> {
    require_structure(m, h)?;
    require_structure(m, h2)?;
    let solver = LinearSolver::for_operator(m, Operator::D2Ann);
    Ok(solver.solve(m, &h.sub(m, h2)))
}

/// `t(x) = a·x − x·a`
pub fn inner_derivation(m: &FiniteBimodule, a: usize) -> Cochain1 {
    let ring = m.ring();
    let data = ring
        .elements()
        .map(|x| m.sub(m.act_right(a, x), m.act_left(x, a)))
        .collect();
    Cochain1 {
        t: Table::from_data(ring.order(), 1, data).expect("one entry per ring element"),
    }
}

/// `η(x,x) = 0` for every `x`.
pub fn is_regular(m: &FiniteBimodule, h: &AnnStructure) -> bool {
    m.ring().elements().all(|x| h.eta.get(&[x, x]) == m.zero())
}
