//! Cochain groups as finite abelian groups and the cohomology computations.
//!
//! A normalized cochain is a vector of slot coordinates, one slot per free
//! table cell and module generator, slot `s` living in `Z/d_s`. All
//! computations happen in the lifted group `(Z/e)^n` for `e` the exponent of
//! `M`; a subgroup of the cochain group corresponds to a subgroup of the lift
//! that contains the relations `d_s·e_s`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::cochain::{
    AnyCochain, Cochain1, Cochain2, CochainData, MacLane3Cochain, Shape, Table,
};
use crate::complex::{inner_derivation, is_cocycle3};
use crate::equations::{for_each_equation, for_each_output, Operator, System, Term};
use crate::error::{Error, Result};
use crate::ring::{tuples, FiniteBimodule};
use crate::zmod::{invariant_factors, quotient_cyclic_orders, snf_mod, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub table: usize,
    pub cell: usize,
    pub generator: usize,
}

/// The free coordinates of one cochain shape over `(R, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotBasis {
    shape: Shape,
    ring_order: usize,
    module_orders: Vec<u64>,
    slots: Vec<Slot>,
    orders: Vec<u64>,
    lookup: Vec<Vec<Option<usize>>>,
}

impl SlotBasis {
    pub fn new(m: &FiniteBimodule, shape: Shape) -> Self {
        let ring = m.ring();
        let n = ring.order();
        let k = m.rank();
        let mut slots = Vec::new();
        let mut orders = Vec::new();
        let mut lookup = Vec::new();
        for (table, &arity) in shape.arities().iter().enumerate() {
            let mut lk = vec![None; n.pow(arity as u32) * k];
            for (cell, args) in tuples(n, arity).enumerate() {
                if shape.is_forced_zero(table, &args, ring.zero(), ring.one()) {
                    continue;
                }
                for (generator, &d) in m.orders().iter().enumerate() {
                    if d == 1 {
                        continue;
                    }
                    lk[cell * k + generator] = Some(slots.len());
                    slots.push(Slot {
                        table,
                        cell,
                        generator,
                    });
                    orders.push(d);
                }
            }
            lookup.push(lk);
        }
        Self {
            shape,
            ring_order: n,
            module_orders: m.orders().to_vec(),
            slots,
            orders,
            lookup,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    #[inline]
    pub fn index(&self, table: usize, cell: usize, generator: usize) -> Option<usize> {
        self.lookup[table][cell * self.module_orders.len() + generator]
    }

    /// `(table name, argument tuple, generator)` of a slot.
    pub fn describe(&self, i: usize) -> (&'static str, Vec<usize>, usize) {
        let s = self.slots[i];
        let arity = self.shape.arities()[s.table];
        let mut args = vec![0; arity];
        let mut c = s.cell;
        for a in args.iter_mut().rev() {
            *a = c % self.ring_order;
            c /= self.ring_order;
        }
        (self.shape.table_names()[s.table], args, s.generator)
    }

    /// Number of cochains, `∏ d_s`.
    pub fn group_order(&self) -> BigUint {
        self.orders
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }

    /// Coordinates of a cochain given by its tables. Values in forced cells are
    /// ignored.
    pub fn coordinates(&self, m: &FiniteBimodule, tables: &[&Table]) -> Vec<u64> {
        self.slots
            .iter()
            .map(|s| m.decode(tables[s.table].at(s.cell))[s.generator])
            .collect()
    }

    pub fn coordinates_of<C: CochainData>(&self, m: &FiniteBimodule, c: &C) -> Vec<u64> {
        debug_assert_eq!(C::SHAPE, self.shape);
        self.coordinates(m, &c.tables())
    }

    /// The tables of the cochain with the given coordinates (taken mod the
    /// slot orders).
    pub fn tables(&self, m: &FiniteBimodule, coords: &[u64]) -> Vec<Table> {
        let n = self.ring_order;
        let k = m.rank();
        let mut raw: Vec<Vec<Vec<u64>>> = self
            .shape
            .arities()
            .iter()
            .map(|&a| vec![vec![0u64; k]; n.pow(a as u32)])
            .collect();
        for (s, &x) in self.slots.iter().zip(coords) {
            raw[s.table][s.cell][s.generator] = x % self.module_orders[s.generator];
        }
        raw.into_iter()
            .zip(self.shape.arities())
            .map(|(cells, &a)| {
                let data = cells
                    .iter()
                    .map(|c| m.encode(&crate::ring::ModuleElement::new(c.clone())).expect("in range"))
                    .collect();
                Table::from_data(n, a, data).expect("table size")
            })
            .collect()
    }

    pub fn cochain<C: CochainData>(&self, m: &FiniteBimodule, coords: &[u64]) -> C {
        debug_assert_eq!(C::SHAPE, self.shape);
        C::from_tables(self.tables(m, coords))
    }

    pub fn any_cochain(&self, m: &FiniteBimodule, coords: &[u64]) -> AnyCochain {
        AnyCochain::from_tables(self.shape, self.tables(m, coords)).expect("shape arities")
    }

    /// The relations `d_s·e_s` of the lift, skipping those that vanish mod `e`.
    fn relations(&self, e: u64) -> Vec<Vec<u64>> {
        self.orders
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d % e != 0)
            .map(|(i, &d)| {
                let mut v = vec![0; self.len()];
                v[i] = d;
                v
            })
            .collect()
    }
}

pub fn slot_basis(m: &FiniteBimodule, shape: Shape) -> SlotBasis {
    SlotBasis::new(m, shape)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    /// Target table name or equation tag.
    pub name: String,
    pub args: Vec<usize>,
    pub generator: usize,
}

/// An integer matrix presenting a homomorphism from a cochain group to a
/// product of cyclic groups. Row `r` is read modulo `row_orders[r]`.
#[derive(Clone, Debug)]
pub struct AdditiveMap {
    pub source: SlotBasis,
    /// Present when the target is itself a cochain group.
    pub target: Option<SlotBasis>,
    pub row_labels: Vec<RowLabel>,
    pub row_orders: Vec<u64>,
    /// Sparse rows: `(column, coefficient)` sorted by column.
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl AdditiveMap {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.source.len()
    }

    /// Triplet list `(row, column, coefficient)`.
    pub fn triplets(&self) -> Vec<(usize, usize, u64)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
            .collect()
    }

    pub fn dense(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![0; self.num_cols()];
                for &(c, v) in row {
                    d[c] = v;
                }
                d
            })
            .collect()
    }

    /// Image of a coordinate vector, row `r` reduced mod its order.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.row_orders)
            .map(|(row, &d)| {
                row.iter()
                    .fold(0u128, |acc, &(c, v)| (acc + v as u128 * x[c] as u128) % d as u128)
                    as u64
            })
            .collect()
    }

    /// Order of the kernel, as a subgroup of the source cochain group.
    pub fn kernel_order(&self) -> BigUint {
        let e = self.lift_modulus();
        kernel_span(self, e).order() / relation_span(&self.source, e).order()
    }

    /// Order of the image.
    pub fn image_order(&self) -> BigUint {
        self.source.group_order() / self.kernel_order()
    }

    fn lift_modulus(&self) -> u64 {
        self.source
            .orders()
            .iter()
            .chain(&self.row_orders)
            .fold(1, |acc, &d| num_integer::lcm(acc, d))
    }

    /// `d_s · column_s ≡ 0` in every row, for every source slot.
    pub fn is_well_defined(&self) -> bool {
        let orders = self.source.orders();
        self.rows.iter().zip(&self.row_orders).all(|(row, &d)| {
            row.iter()
                .all(|&(c, v)| (v as u128 * orders[c] as u128).is_multiple_of(d as u128))
        })
    }
}

/// Coordinates of `left · e_i · right`, cached per `(left, right)`.
struct ActionCache<'a> {
    m: &'a FiniteBimodule,
    cache: HashMap<(usize, usize), Vec<Vec<u64>>>,
}

impl<'a> ActionCache<'a> {
    fn new(m: &'a FiniteBimodule) -> Self {
        Self {
            m,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, left: usize, right: usize) -> &Vec<Vec<u64>> {
        let m = self.m;
        self.cache.entry((left, right)).or_insert_with(|| {
            (0..m.rank())
                .map(|i| m.decode(m.act_right(m.act_left(left, m.generator(i)), right)))
                .collect()
        })
    }
}

/// One row per module generator for a linear form in the source tables.
fn term_rows(
    cache: &mut ActionCache,
    source: &SlotBasis,
    orders: &[u64],
    terms: &[Term],
) -> Vec<Vec<(usize, u64)>> {
    let k = orders.len();
    let mut acc: Vec<Vec<(usize, i64)>> = vec![Vec::new(); k];
    for t in terms {
        let img = cache.get(t.left, t.right);
        for (i, row) in img.iter().enumerate() {
            let Some(s) = source.index(t.table, t.cell, i) else {
                continue;
            };
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    acc[j].push((s, t.coeff * c as i64));
                }
            }
        }
    }
    acc.into_iter()
        .zip(orders)
        .map(|(mut entries, &d)| {
            entries.sort_unstable_by_key(|&(c, _)| c);
            let mut out: Vec<(usize, u64)> = Vec::with_capacity(entries.len());
            for (c, v) in entries {
                let v = v.rem_euclid(d as i64) as u64;
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 = (last.1 + v) % d,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|&(_, v)| v != 0);
            out
        })
        .collect()
}

/// The matrix of a cochain-level operator on slot coordinates.
pub fn matrix_of_operator(m: &FiniteBimodule, op: Operator) -> AdditiveMap {
    let source = SlotBasis::new(m, op.source());
    let target = SlotBasis::new(m, op.target());
    let mut cache = ActionCache::new(m);
    let mut rows = vec![Vec::new(); target.len()];
    let names = op.target().table_names();
    let arities = op.target().arities();
    for_each_output(op, m.ring(), |table, cell, terms| {
        let tr = term_rows(&mut cache, &source, m.orders(), terms);
        for (j, row) in tr.into_iter().enumerate() {
            if let Some(r) = target.index(table, cell, j) {
                rows[r] = row;
            }
        }
    });
    let row_labels = (0..target.len())
        .map(|r| {
            let (_, args, generator) = target.describe(r);
            let table = target.slots()[r].table;
            debug_assert_eq!(args.len(), arities[table]);
            RowLabel {
                name: names[table].to_string(),
                args,
                generator,
            }
        })
        .collect();
    AdditiveMap {
        row_orders: target.orders().to_vec(),
        source,
        target: Some(target),
        row_labels,
        rows,
    }
}

pub fn matrix_of_d1(m: &FiniteBimodule) -> AdditiveMap {
    matrix_of_operator(m, Operator::D1)
}

pub fn matrix_of_d2(m: &FiniteBimodule) -> AdditiveMap {
    matrix_of_operator(m, Operator::D2)
}

pub fn matrix_of_d2_ann(m: &FiniteBimodule) -> AdditiveMap {
    matrix_of_operator(m, Operator::D2Ann)
}

/// Constraint rows of M1–M8 (`Shape::MacLane3`), A1–A12 (`Shape::Ann3`) or
/// R1–R5 (`Shape::LambdaOnly`). Identically zero rows are dropped.
pub fn matrix_of_z3_constraints(m: &FiniteBimodule, shape: Shape) -> Result<AdditiveMap> {
    let system = match shape {
        Shape::MacLane3 => System::MacLaneCocycle,
        Shape::Ann3 => System::AnnStructure,
        Shape::LambdaOnly => System::CategoricalRing,
        other => {
            return Err(Error::InvalidArgument(format!(
                "no constraint system for shape {other}"
            )))
        }
    };
    let source = SlotBasis::new(m, shape);
    let mut cache = ActionCache::new(m);
    let mut rows = Vec::new();
    let mut row_labels = Vec::new();
    let mut row_orders = Vec::new();
    for_each_equation(system, m.ring(), |tag, args, terms| {
        let tr = term_rows(&mut cache, &source, m.orders(), terms);
        for (j, row) in tr.into_iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            rows.push(row);
            row_orders.push(m.orders()[j]);
            row_labels.push(RowLabel {
                name: tag.to_string(),
                args: args.to_vec(),
                generator: j,
            });
        }
    });
    Ok(AdditiveMap {
        source,
        target: None,
        row_labels,
        row_orders,
        rows,
    })
}

fn exponent(m: &FiniteBimodule) -> u64 {
    m.exponent()
}

fn relation_span(basis: &SlotBasis, e: u64) -> Span {
    let mut s = Span::new(e, basis.len());
    for r in basis.relations(e) {
        s.insert(r);
    }
    s
}

/// `{x : A·x ≡ 0}` in the lifted source coordinates.
fn kernel_span(map: &AdditiveMap, e: u64) -> Span {
    let n = map.num_cols();
    let mut compressed = Span::new(e, n);
    let mut seen: HashSet<Vec<(usize, u64)>> = HashSet::new();
    for (row, &d) in map.rows.iter().zip(&map.row_orders) {
        let f = e / d;
        let scaled: Vec<(usize, u64)> = row.iter().map(|&(c, v)| (c, (v * f) % e)).collect();
        if scaled.iter().all(|&(_, v)| v == 0) || !seen.insert(scaled.clone()) {
            continue;
        }
        let mut dense = vec![0; n];
        for (c, v) in scaled {
            dense[c] = v;
        }
        compressed.insert(dense);
    }
    let rows: Vec<Vec<u64>> = compressed.rows().cloned().collect();
    let snf = snf_mod(rows, n, e, false);
    let mut out = Span::new(e, n);
    for k in snf.kernel() {
        out.insert(k);
    }
    for r in map.source.relations(e) {
        out.insert(r);
    }
    out
}

/// Image of the source group plus the target relations, in lifted target
/// coordinates.
fn image_span(map: &AdditiveMap, e: u64) -> Span {
    let target = map
        .target
        .as_ref()
        .expect("image spans need a cochain target");
    let mut cols: Vec<Vec<u64>> = vec![vec![0; map.num_rows()]; map.num_cols()];
    for (r, row) in map.rows.iter().enumerate() {
        for &(c, v) in row {
            cols[c][r] = v;
        }
    }
    let mut out = Span::new(e, map.num_rows());
    for c in cols {
        out.insert(c);
    }
    for r in target.relations(e) {
        out.insert(r);
    }
    out
}

/// A finite abelian group `sub / rel` presented by cyclic generators.
#[derive(Clone, Debug)]
pub(crate) struct Quotient {
    pub cyclic: Vec<u64>,
    pub class_gens: Vec<Vec<u64>>,
    pub sub: Span,
    pub rel: Span,
}

impl Quotient {
    pub fn order(&self) -> BigUint {
        self.cyclic
            .iter()
            .fold(BigUint::one(), |acc, &c| acc * BigUint::from(c))
    }

    /// Canonical lifted representatives, one per class.
    pub fn representatives(&self) -> Vec<Vec<u64>> {
        let e = self.sub.modulus();
        let n = self.sub.dim();
        let total: usize = self.cyclic.iter().map(|&c| c as usize).product();
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0u64; n];
                for (g, &c) in self.class_gens.iter().zip(&self.cyclic) {
                    let y = (idx % c as usize) as u64;
                    idx /= c as usize;
                    for (x, &gv) in v.iter_mut().zip(g) {
                        *x = (*x + y * gv) % e;
                    }
                }
                self.rel.reduce(&v)
            })
            .collect()
    }
}

pub(crate) fn quotient(sub: Span, rel: Span) -> Quotient {
    let e = sub.modulus();
    let n = sub.dim();
    debug_assert!(sub.includes(&rel));
    let gens: Vec<Vec<u64>> = sub.rows().cloned().collect();
    let hs: Vec<Vec<u64>> = rel.rows().cloned().collect();
    let (k, l) = (gens.len(), hs.len());
    // Columns G_i and −H_j; kernel vectors (z, w) give relations z among the G_i.
    let a: Vec<Vec<u64>> = (0..n)
        .map(|t| {
            gens.iter()
                .map(|g| g[t])
                .chain(hs.iter().map(|h| (e - h[t]) % e))
                .collect()
        })
        .collect();
    let relations: Vec<Vec<u64>> = snf_mod(a, k + l, e, false)
        .kernel()
        .into_iter()
        .map(|v| v[..k].to_vec())
        .filter(|z| z.iter().any(|&x| x != 0))
        .collect();
    let (orders, snf) = quotient_cyclic_orders(relations, k, e);
    let mut cyclic = Vec::new();
    let mut class_gens = Vec::new();
    for (i, &c) in orders.iter().enumerate() {
        if c == 1 {
            continue;
        }
        let mut v = vec![0u64; n];
        for (j, g) in gens.iter().enumerate() {
            let coef = snf.q_inv[i][j];
            if coef != 0 {
                for (x, &gv) in v.iter_mut().zip(g) {
                    *x = ((*x as u128 + coef as u128 * gv as u128) % e as u128) as u64;
                }
            }
        }
        cyclic.push(c);
        class_gens.push(v);
    }
    let q = Quotient {
        cyclic,
        class_gens,
        sub,
        rel,
    };
    debug_assert_eq!(q.order() * q.rel.order(), q.sub.order());
    q
}

/// Summary of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub invariant_factors: Vec<u64>,
    pub order: BigUint,
}

impl GroupSummary {
    fn of(q: &Quotient) -> Self {
        Self {
            invariant_factors: invariant_factors(&q.cyclic),
            order: q.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: u8,
    /// `d₁ | d₂ | …`, all at least 2; empty for the trivial group.
    pub invariant_factors: Vec<u64>,
    pub order: BigUint,
    /// Orders of the cocycle and coboundary groups.
    pub cocycle_order: BigUint,
    pub coboundary_order: BigUint,
    /// One cocycle per class, the zero class first.
    pub representatives: Option<Vec<AnyCochain>>,
}

impl CohomologyResult {
    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }
}

fn cohomology_quotient(m: &FiniteBimodule, degree: u8) -> Result<(Quotient, SlotBasis)> {
    let e = exponent(m);
    match degree {
        1 => {
            let d1 = matrix_of_d1(m);
            let z = kernel_span(&d1, e);
            let basis = d1.source.clone();
            let mut b = Span::new(e, basis.len());
            for i in 0..m.rank() {
                let t = inner_derivation(m, m.generator(i));
                b.insert(basis.coordinates_of(m, &t));
            }
            for r in basis.relations(e) {
                b.insert(r);
            }
            Ok((quotient(z, b), basis))
        }
        2 => {
            let d2 = matrix_of_d2(m);
            let z = kernel_span(&d2, e);
            let b = image_span(&matrix_of_d1(m), e);
            Ok((quotient(z, b), d2.source))
        }
        3 => {
            let cons = matrix_of_z3_constraints(m, Shape::MacLane3)?;
            let z = kernel_span(&cons, e);
            let b = image_span(&matrix_of_d2(m), e);
            Ok((quotient(z, b), cons.source))
        }
        d => Err(Error::InvalidArgument(format!(
            "cohomology degree must be 1, 2 or 3, got {d}"
        ))),
    }
}

/// `H^degree(R, M)` as invariant factors.
pub fn cohomology(m: &FiniteBimodule, degree: u8) -> Result<CohomologyResult> {
    let (q, _) = cohomology_quotient(m, degree)?;
    Ok(result_of(degree, &q, None))
}

/// As [`cohomology`], with one representative cocycle per class. Refuses
/// groups of order above `max_order`.
pub fn cohomology_with_representatives(
    m: &FiniteBimodule,
    degree: u8,
    max_order: u64,
) -> Result<CohomologyResult> {
    let (q, basis) = cohomology_quotient(m, degree)?;
    let order = q.order();
    if order > BigUint::from(max_order) {
        return Err(Error::Budget {
            budget: "repr_order",
            detail: format!("H^{degree} has order {order}, limit is {max_order}"),
        });
    }
    let reps = q
        .representatives()
        .into_iter()
        .map(|v| basis.any_cochain(m, &v))
        .collect();
    Ok(result_of(degree, &q, Some(reps)))
}

fn result_of(degree: u8, q: &Quotient, representatives: Option<Vec<AnyCochain>>) -> CohomologyResult {
    let g = GroupSummary::of(q);
    CohomologyResult {
        degree,
        invariant_factors: g.invariant_factors,
        order: g.order,
        cocycle_order: q.sub.order(),
        coboundary_order: q.rel.order(),
        representatives,
    }
}

/// The group of structures on `(R, M)` under pointwise addition.
pub fn structure_group(m: &FiniteBimodule) -> GroupSummary {
    let e = exponent(m);
    let cons = matrix_of_z3_constraints(m, Shape::Ann3).expect("structure system");
    let z = kernel_span(&cons, e);
    let trivial = relation_span(&cons.source, e);
    GroupSummary::of(&quotient(z, trivial))
}

/// Structures modulo the action of 2-cochains.
pub fn structure_classes(m: &FiniteBimodule) -> GroupSummary {
    let e = exponent(m);
    let cons = matrix_of_z3_constraints(m, Shape::Ann3).expect("structure system");
    let z = kernel_span(&cons, e);
    let b = image_span(&matrix_of_d2_ann(m), e);
    GroupSummary::of(&quotient(z, b))
}

/// Order of the subgroup of `H³` generated by the classes of `cocycles`.
pub fn class_subgroup_order(m: &FiniteBimodule, cocycles: &[MacLane3Cochain]) -> BigUint {
    let e = exponent(m);
    let d2 = matrix_of_d2(m);
    let b = image_span(&d2, e);
    let basis = d2.target.as_ref().expect("cochain target");
    let mut s = b.clone();
    for c in cocycles {
        s.insert(basis.coordinates_of(m, c));
    }
    s.order() / b.order()
}

/// Solves `op(x) = y` for `x`, reusing one factorization for many `y`.
///
/// The columns of the operator matrix, tagged with unit vectors, are kept in
/// Howell form over `Z/e`; reducing `(y, 0)` leaves `(0, −x)` exactly when `y`
/// lies in the image.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    op: Operator,
    map: AdditiveMap,
    span: Span,
    e: u64,
}

impl LinearSolver {
    pub fn for_operator(m: &FiniteBimodule, op: Operator) -> Self {
        let map = matrix_of_operator(m, op);
        let e = exponent(m);
        let (rows, cols) = (map.num_rows(), map.num_cols());
        let mut span = Span::new(e, rows + cols);
        let mut columns: Vec<Vec<u64>> = vec![vec![0; rows + cols]; cols];
        for (r, row) in map.rows.iter().enumerate() {
            for &(c, v) in row {
                columns[c][r] = v;
            }
        }
        for (c, mut col) in columns.into_iter().enumerate() {
            col[rows + c] = 1;
            span.insert(col);
        }
        for rel in map.target.as_ref().expect("cochain target").relations(e) {
            let mut v = rel;
            v.resize(rows + cols, 0);
            span.insert(v);
        }
        Self { op, map, span, e }
    }

    pub fn operator(&self) -> Operator {
        self.op
    }

    /// Coordinates `x` with `A·x = y`, if any.
    pub fn solve_coordinates(&self, y: &[u64]) -> Option<Vec<u64>> {
        let (rows, cols) = (self.map.num_rows(), self.map.num_cols());
        let mut v = y.to_vec();
        v.resize(rows + cols, 0);
        let r = self.span.reduce(&v);
        if r[..rows].iter().any(|&x| x != 0) {
            return None;
        }
        let orders = self.map.source.orders();
        let x: Vec<u64> = r[rows..]
            .iter()
            .zip(orders)
            .map(|(&t, &d)| ((self.e - t) % self.e) % d)
            .collect();
        debug_assert_eq!(
            self.map.apply(&x),
            y.iter()
                .zip(&self.map.row_orders)
                .map(|(&a, &d)| a % d)
                .collect::<Vec<_>>()
        );
        Some(x)
    }

    /// A preimage of `target` under the operator, if any.
    pub fn solve<S: CochainData, T: CochainData>(&self, m: &FiniteBimodule, target: &T) -> Option<S> {
        let tb = self.map.target.as_ref().expect("cochain target");
        let y = tb.coordinates_of(m, target);
        self.solve_coordinates(&y)
            .map(|x| self.map.source.cochain(m, &x))
    }

    /// Order of the image of the operator.
    pub fn image_order(&self) -> BigUint {
        let rows = self.map.num_rows();
        let mut img = Span::new(self.e, rows);
        for r in self.span.rows() {
            if r[..rows].iter().any(|&x| x != 0) {
                img.insert(r[..rows].to_vec());
            }
        }
        let mut rel = Span::new(self.e, rows);
        for r in self.map.target.as_ref().expect("cochain target").relations(self.e) {
            rel.insert(r);
        }
        img.order() / rel.order()
    }
}

/// A 1-cochain `t` with `d1(t) = g`, for a 2-cocycle `g`.
pub fn is_coboundary2(m: &FiniteBimodule, g: &Cochain2) -> Result<Option<Cochain1>> {
    g.check_shape(m)?;
    if !g.is_normalized(m.ring()) || !crate::complex::d2(m, g).is_zero() {
        return Err(Error::NotCocycle2);
    }
    Ok(LinearSolver::for_operator(m, Operator::D1).solve(m, g))
}

/// A 2-cochain `g` with `d2(g) = c`, for a 3-cocycle `c`.
pub fn is_coboundary3(m: &FiniteBimodule, c: &MacLane3Cochain) -> Result<Option<Cochain2>> {
    c.check_shape(m)?;
    let v = is_cocycle3(m, c);
    if !v.is_empty() {
        return Err(Error::NotCocycle {
            violations: v.len(),
        });
    }
    Ok(LinearSolver::for_operator(m, Operator::D2).solve(m, c))
}
