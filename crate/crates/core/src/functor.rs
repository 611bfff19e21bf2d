//! Homomorphism pairs `(p, q)`, transport of cochains along them, and the
//! obstruction to an Ann-functor of a given type.

use std::collections::HashSet;
use std::sync::Arc;

use crate::cochain::{
    AnyCochain, Cochain1, Cochain2, CochainData, MacLane3Cochain, Table, ViolationEntry,
    ViolationList,
};
use crate::complex::{d1, d2, is_cocycle3, structure_to_cocycle};
use crate::engine::{cohomology, is_coboundary3, CohomologyResult, LinearSolver};
use crate::equations::Operator;
use crate::error::{Error, Result};
use crate::ring::{FiniteBimodule, FiniteRing};
use crate::search::{all_cochains, Budget};

/// `p: R → R′` and `q: M → M′` as index tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPair {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

fn check_ring_hom(source: &FiniteRing, target: &FiniteRing, p: &[usize]) -> Result<()> {
    if p.len() != source.order() {
        return Err(Error::InvalidPair(format!(
            "p has {} entries, source ring has order {}",
            p.len(),
            source.order()
        )));
    }
    if let Some(x) = p.iter().find(|&&x| x >= target.order()) {
        return Err(Error::InvalidPair(format!(
            "p takes value {x} outside the target ring"
        )));
    }
    if p[source.one()] != target.one() {
        return Err(Error::InvalidPair("p(1) is not 1".into()));
    }
    for x in source.elements() {
        for y in source.elements() {
            if p[source.add(x, y)] != target.add(p[x], p[y]) {
                return Err(Error::InvalidPair(format!("p({x}+{y}) != p({x}) + p({y})")));
            }
            if p[source.mul(x, y)] != target.mul(p[x], p[y]) {
                return Err(Error::InvalidPair(format!("p({x}*{y}) != p({x}) * p({y})")));
            }
        }
    }
    Ok(())
}

impl HomPair {
    /// Checks that `p` is a unital ring homomorphism, `q` is additive and
    /// `q(x·a) = p(x)·q(a)`, `q(a·x) = q(a)·p(x)`.
    pub fn new(
        source: &FiniteBimodule,
        target: &FiniteBimodule,
        p: Vec<usize>,
        q: Vec<usize>,
    ) -> Result<Self> {
        check_ring_hom(source.ring(), target.ring(), &p)?;
        if q.len() != source.size() {
            return Err(Error::InvalidPair(format!(
                "q has {} entries, source module has {} elements",
                q.len(),
                source.size()
            )));
        }
        if let Some(v) = q.iter().find(|&&v| v >= target.size()) {
            return Err(Error::InvalidPair(format!(
                "q takes value {v} outside the target module"
            )));
        }
        for a in source.elements() {
            for b in source.elements() {
                if q[source.add(a, b)] != target.add(q[a], q[b]) {
                    return Err(Error::InvalidPair(format!("q({a}+{b}) != q({a}) + q({b})")));
                }
            }
            for x in source.ring().elements() {
                if q[source.act_left(x, a)] != target.act_left(p[x], q[a]) {
                    return Err(Error::InvalidPair(format!("q({x}·{a}) != p({x})·q({a})")));
                }
                if q[source.act_right(a, x)] != target.act_right(q[a], p[x]) {
                    return Err(Error::InvalidPair(format!("q({a}·{x}) != q({a})·p({x})")));
                }
            }
        }
        Ok(Self { p, q })
    }

    pub fn identity(m: &FiniteBimodule) -> Self {
        Self {
            p: m.ring().elements().collect(),
            q: m.elements().collect(),
        }
    }

    fn is_bijective(&self, source: &FiniteBimodule, target: &FiniteBimodule) -> bool {
        let bij = |f: &[usize], n: usize| {
            f.len() == n && f.iter().copied().collect::<HashSet<_>>().len() == n
        };
        bij(&self.p, target.ring().order()) && bij(&self.q, target.size()) && source.size() == target.size()
    }
}

/// `M′` as an `R`-bimodule through `p`.
pub fn restrict_bimodule(
    target: &FiniteBimodule,
    ring: Arc<FiniteRing>,
    p: &[usize],
) -> Result<FiniteBimodule> {
    check_ring_hom(&ring, target.ring(), p)?;
    target.pulled_back(ring, p)
}

/// `(q∗c)(args) = q(c(args))`
pub fn pushforward<C: CochainData>(q: &[usize], c: &C) -> C {
    C::from_tables(c.tables().iter().map(|t| t.map(|v| q[v])).collect())
}

/// `(p^*c′)(args) = c′(p(args))` over a source ring of order `n`.
pub fn pullback<C: CochainData>(p: &[usize], n: usize, c: &C) -> C {
    C::from_tables(
        c.tables()
            .iter()
            .map(|t| {
                let data = (0..n.pow(t.arity() as u32))
                    .map(|idx| {
                        let mut rest = idx;
                        let mut args = vec![0; t.arity()];
                        for a in args.iter_mut().rev() {
                            *a = p[rest % n];
                            rest /= n;
                        }
                        t.get(&args)
                    })
                    .collect();
                Table::from_data(n, t.arity(), data).expect("table size")
            })
            .collect(),
    )
}

/// A 3-cocycle from either kind of degree-3 data.
pub fn as_cocycle(m: &FiniteBimodule, h: &AnyCochain) -> Result<MacLane3Cochain> {
    match h {
        AnyCochain::Ann3(s) => structure_to_cocycle(m, s),
        AnyCochain::MacLane3(c) => {
            c.check_shape(m)?;
            let v = is_cocycle3(m, c);
            if v.is_empty() {
                Ok(c.clone())
            } else {
                Err(Error::NotCocycle {
                    violations: v.len(),
                })
            }
        }
        other => Err(Error::InvalidCochain(format!(
            "expected a structure or a 3-cocycle, got shape {}",
            other.shape()
        ))),
    }
}

/// The setting of a functor question: `(R, M, h)`, `(R′, M′, h′)` and `(p, q)`.
#[derive(Clone, Debug)]
pub struct FunctorSetting {
    pub source: FiniteBimodule,
    pub target: FiniteBimodule,
    pub pair: HomPair,
    /// `M′` restricted along `p`.
    pub restricted: FiniteBimodule,
    /// `k = q∗ĥ − p^*ĥ′` over the restricted module.
    pub k: MacLane3Cochain,
}

impl FunctorSetting {
    pub fn new(
        source: &FiniteBimodule,
        h: &AnyCochain,
        target: &FiniteBimodule,
        h2: &AnyCochain,
        pair: &HomPair,
    ) -> Result<Self> {
        let pair = HomPair::new(source, target, pair.p.clone(), pair.q.clone())?;
        let restricted = restrict_bimodule(target, source.ring().clone(), &pair.p)?;
        let c = as_cocycle(source, h)?;
        let c2 = as_cocycle(target, h2)?;
        let pushed = pushforward(&pair.q, &c);
        let pulled = pullback(&pair.p, source.ring().order(), &c2);
        let k = pushed.sub(&restricted, &pulled);
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            pair,
            restricted,
            k,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorTriple {
    pub pair: HomPair,
    pub g: Cochain2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub k: MacLane3Cochain,
    pub vanishes: bool,
    /// `g` with `d2(g) = k` when the obstruction vanishes.
    pub witness: Option<Cochain2>,
    /// `H²(R, M′)` when the obstruction vanishes.
    pub hom_class_group: Option<CohomologyResult>,
}

pub fn obstruction(
    source: &FiniteBimodule,
    h: &AnyCochain,
    target: &FiniteBimodule,
    h2: &AnyCochain,
    pair: &HomPair,
) -> Result<ObstructionReport> {
    let s = FunctorSetting::new(source, h, target, h2, pair)?;
    let witness = is_coboundary3(&s.restricted, &s.k)?;
    let hom_class_group = match witness {
        Some(_) => Some(cohomology(&s.restricted, 2)?),
        None => None,
    };
    Ok(ObstructionReport {
        vanishes: witness.is_some(),
        k: s.k,
        witness,
        hom_class_group,
    })
}

/// Cells where `q∗ĥ − p^*ĥ′ − d2(g)` is nonzero, tagged `F:<table>`.
pub fn check_functor(
    source: &FiniteBimodule,
    h: &AnyCochain,
    target: &FiniteBimodule,
    h2: &AnyCochain,
    triple: &FunctorTriple,
) -> Result<ViolationList> {
    let s = FunctorSetting::new(source, h, target, h2, &triple.pair)?;
    triple.g.check_shape(&s.restricted)?;
    let defect = s.k.sub(&s.restricted, &d2(&s.restricted, &triple.g));
    let mut out = ViolationList::default();
    for (t, name) in defect
        .tables()
        .iter()
        .zip(MacLane3Cochain::SHAPE.table_names())
    {
        for idx in 0..t.len() {
            if t.at(idx) != 0 {
                out.entries.push(ViolationEntry {
                    equation: format!("F:{name}"),
                    args: t.args(idx),
                    defect: t.at(idx),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homotopy {
    /// `t` with `d1(t) = g₂ − g₁`.
    Witness(Cochain1),
    NotHomotopic,
    /// The triples have different `(p, q)`.
    DifferentType,
}

/// Decides whether two triples of the same type differ by a coboundary.
/// `restricted` is `M′` viewed over `R`.
pub fn homotopic(
    restricted: &FiniteBimodule,
    t1: &FunctorTriple,
    t2: &FunctorTriple,
) -> Result<Homotopy> {
    if t1.pair != t2.pair {
        return Ok(Homotopy::DifferentType);
    }
    t1.g.check_shape(restricted)?;
    t2.g.check_shape(restricted)?;
    let diff = t2.g.sub(restricted, &t1.g);
    let solver = LinearSolver::for_operator(restricted, Operator::D1);
    Ok(match solver.solve(restricted, &diff) {
        Some(t) => Homotopy::Witness(t),
        None => Homotopy::NotHomotopic,
    })
}

/// Counts valid `g` up to `g ~ g + d1(t)` by listing every normalized
/// 2-cochain and 1-cochain.
pub fn count_hom_classes_bruteforce(
    source: &FiniteBimodule,
    h: &AnyCochain,
    target: &FiniteBimodule,
    h2: &AnyCochain,
    pair: &HomPair,
    budget: &Budget,
) -> Result<u64> {
    let s = FunctorSetting::new(source, h, target, h2, pair)?;
    let m = &s.restricted;
    let mut valid: Vec<Cochain2> = all_cochains::<Cochain2>(m, budget)?
        .filter(|g| d2(m, g) == s.k)
        .collect();
    if valid.is_empty() {
        return Ok(0);
    }
    let boundaries: HashSet<Cochain2> = all_cochains::<Cochain1>(m, budget)?
        .map(|t| d1(m, &t))
        .collect();
    let mut remaining: HashSet<Cochain2> = valid.iter().cloned().collect();
    valid.sort_by(|a, b| {
        a.tables()
            .iter()
            .map(|t| t.data())
            .cmp(b.tables().iter().map(|t| t.data()))
    });
    let mut classes = 0;
    for g in &valid {
        if !remaining.contains(g) {
            continue;
        }
        classes += 1;
        for b in &boundaries {
            remaining.remove(&g.add(m, b));
        }
    }
    Ok(classes)
}

/// `q⁻¹∗ p^* ĥ` over `(R, M)` for bijective `p: R → R′`, `q: M → M′`, where
/// `ĥ` lives over `(R′, M′)`.
pub fn prestick_invariant(
    source: &FiniteBimodule,
    target: &FiniteBimodule,
    h: &AnyCochain,
    pair: &HomPair,
) -> Result<MacLane3Cochain> {
    let pair = HomPair::new(source, target, pair.p.clone(), pair.q.clone())?;
    if !pair.is_bijective(source, target) {
        return Err(Error::InvalidPair("p and q must be bijections".into()));
    }
    let c = as_cocycle(target, h)?;
    let mut q_inv = vec![0; pair.q.len()];
    for (a, &b) in pair.q.iter().enumerate() {
        q_inv[b] = a;
    }
    let pulled = pullback(&pair.p, source.ring().order(), &c);
    Ok(pushforward(&q_inv, &pulled))
}
