//! Exhaustive search for the solutions of an equation system.
//!
//! The search assigns module elements to free table cells and evaluates the
//! equation instances directly, so it shares no linear algebra with the
//! engine and serves as its oracle.

use crate::cochain::{AnnStructure, CochainData, MacLane3Cochain, Shape, Table};
use crate::equations::{for_each_equation, System};
use crate::error::{Error, Result};
use crate::ring::{tuples, FiniteBimodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes are capped at `2^enum_bits`.
    pub enum_bits: u32,
    /// Largest group whose elements are listed one by one.
    pub repr_order: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            enum_bits: 24,
            repr_order: 4096,
        }
    }
}

impl Budget {
    pub fn max_nodes(&self) -> u64 {
        1u64.checked_shl(self.enum_bits).unwrap_or(u64::MAX)
    }
}

/// Free cells of a shape as `(table, cell)` pairs.
pub fn free_cells(m: &FiniteBimodule, shape: Shape) -> Vec<(usize, usize)> {
    let ring = m.ring();
    shape
        .arities()
        .iter()
        .enumerate()
        .flat_map(|(table, &arity)| {
            tuples(ring.order(), arity)
                .enumerate()
                .filter(move |(_, args)| !shape.is_forced_zero(table, args, ring.zero(), ring.one()))
                .map(move |(cell, _)| (table, cell))
        })
        .collect()
}

struct Constraint {
    /// `(variable, coeff, left, right)`
    terms: Vec<(usize, i64, usize, usize)>,
    vars: Vec<usize>,
}

struct Search<'a> {
    m: &'a FiniteBimodule,
    constraints: Vec<Constraint>,
    by_var: Vec<Vec<usize>>,
    unassigned: Vec<usize>,
    value: Vec<Option<usize>>,
    order: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Search<'a> {
    fn eval(&self, c: &Constraint, var: usize, x: usize) -> usize {
        let m = self.m;
        c.terms.iter().fold(m.zero(), |acc, &(v, k, l, r)| {
            let val = if v == var { x } else { self.value[v].unwrap_or(0) };
            if val == 0 {
                return acc;
            }
            let y = m.act_right(m.act_left(l, val), r);
            match k {
                1 => m.add(acc, y),
                -1 => m.sub(acc, y),
                k => m.add(acc, m.scale(k, y)),
            }
        })
    }

    fn assign(&mut self, var: usize, x: usize, trail: &mut Vec<usize>) {
        self.value[var] = Some(x);
        trail.push(var);
        for &ci in &self.by_var[var] {
            self.unassigned[ci] -= 1;
        }
    }

    fn undo(&mut self, trail: &mut Vec<usize>, keep: usize) {
        while trail.len() > keep {
            let var = trail.pop().expect("nonempty trail");
            self.value[var] = None;
            for &ci in &self.by_var[var] {
                self.unassigned[ci] += 1;
            }
        }
    }

    /// Unit propagation from the constraints touching `start..` of the trail.
    fn propagate(&mut self, trail: &mut Vec<usize>, mut pos: usize) -> bool {
        while pos < trail.len() {
            let var = trail[pos];
            pos += 1;
            for idx in 0..self.by_var[var].len() {
                let ci = self.by_var[var][idx];
                match self.unassigned[ci] {
                    0 => {
                        if self.eval(&self.constraints[ci], usize::MAX, 0) != 0 {
                            return false;
                        }
                    }
                    1 => {
                        let c = &self.constraints[ci];
                        let free = *c
                            .vars
                            .iter()
                            .find(|&&v| self.value[v].is_none())
                            .expect("one unassigned variable");
                        let fits: Vec<usize> = (0..self.m.size())
                            .filter(|&x| self.eval(c, free, x) == 0)
                            .take(2)
                            .collect();
                        match fits.len() {
                            0 => return false,
                            1 => self.assign(free, fits[0], trail),
                            _ => {}
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let mut trail = Vec::new();
        if !self.initial(&mut trail) {
            return Ok(());
        }
        self.descend(&mut trail, out)
    }

    /// Constraints without variables, and those with exactly one.
    fn initial(&mut self, trail: &mut Vec<usize>) -> bool {
        for ci in 0..self.constraints.len() {
            if self.constraints[ci].vars.is_empty() {
                continue;
            }
            if self.unassigned[ci] == 1 {
                let start = trail.len();
                let c = &self.constraints[ci];
                let v = c.vars[0];
                if self.value[v].is_some() {
                    continue;
                }
                let fits: Vec<usize> = (0..self.m.size()).filter(|&x| self.eval(c, v, x) == 0).collect();
                match fits.len() {
                    0 => return false,
                    1 => {
                        self.assign(v, fits[0], trail);
                        if !self.propagate(trail, start) {
                            return false;
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn descend(&mut self, trail: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let Some(&var) = self.order.iter().find(|&&v| self.value[v].is_none()) else {
            out.push(self.value.iter().map(|v| v.expect("complete")).collect());
            return Ok(());
        };
        for x in 0..self.m.size() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::Budget {
                    budget: "enum_bits",
                    detail: format!("search exceeded {} nodes", self.max_nodes),
                });
            }
            let keep = trail.len();
            self.assign(var, x, trail);
            if self.propagate(trail, keep) {
                self.descend(trail, out)?;
            }
            self.undo(trail, keep);
        }
        Ok(())
    }
}

/// All normalized solutions of `system`, as table lists sorted by their data.
pub fn enumerate_solutions(
    m: &FiniteBimodule,
    system: System,
    budget: &Budget,
) -> Result<Vec<Vec<Table>>> {
    let shape = system.shape();
    let ring = m.ring();
    let n = ring.order();
    let cells = free_cells(m, shape);
    let mut var_of: Vec<Vec<Option<usize>>> = shape
        .arities()
        .iter()
        .map(|&a| vec![None; n.pow(a as u32)])
        .collect();
    for (v, &(t, c)) in cells.iter().enumerate() {
        var_of[t][c] = Some(v);
    }

    let mut constraints = Vec::new();
    for_each_equation(system, ring, |_, _, terms| {
        let ts: Vec<(usize, i64, usize, usize)> = terms
            .iter()
            .filter_map(|t| var_of[t.table][t.cell].map(|v| (v, t.coeff, t.left, t.right)))
            .collect();
        if ts.is_empty() {
            return;
        }
        let mut vars: Vec<usize> = ts.iter().map(|t| t.0).collect();
        vars.sort_unstable();
        vars.dedup();
        constraints.push(Constraint { terms: ts, vars });
    });

    let mut by_var = vec![Vec::new(); cells.len()];
    for (ci, c) in constraints.iter().enumerate() {
        for &v in &c.vars {
            by_var[v].push(ci);
        }
    }
    let unassigned: Vec<usize> = constraints.iter().map(|c| c.vars.len()).collect();
    let order = branching_order(&constraints, &by_var, cells.len());

    let mut search = Search {
        m,
        constraints,
        by_var,
        unassigned,
        value: vec![None; cells.len()],
        order,
        nodes: 0,
        max_nodes: budget.max_nodes(),
    };
    let mut raw = Vec::new();
    search.run(&mut raw)?;

    let mut out: Vec<Vec<Table>> = raw
        .into_iter()
        .map(|vals| {
            let mut tables: Vec<Table> = shape.arities().iter().map(|&a| Table::zeros(n, a)).collect();
            for (&(t, c), x) in cells.iter().zip(vals) {
                tables[t].set_at(c, x);
            }
            tables
        })
        .collect();
    out.sort_by(|a, b| {
        a.iter()
            .map(Table::data)
            .cmp(b.iter().map(Table::data))
    });
    Ok(out)
}

/// Greedy order: repeatedly take a variable from the constraint with the
/// fewest variables still open.
fn branching_order(constraints: &[Constraint], by_var: &[Vec<usize>], nvars: usize) -> Vec<usize> {
    let mut open: Vec<usize> = constraints.iter().map(|c| c.vars.len()).collect();
    let mut taken = vec![false; nvars];
    let mut order = Vec::with_capacity(nvars);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); open.iter().copied().max().unwrap_or(0) + 1];
    for (ci, &k) in open.iter().enumerate() {
        buckets[k].push(ci);
    }
    while order.len() < nvars {
        let mut pick = None;
        'outer: for (k, bucket) in buckets.iter_mut().enumerate().skip(1) {
            while let Some(&ci) = bucket.last() {
                if open[ci] != k {
                    bucket.pop();
                    continue;
                }
                if let Some(&v) = constraints[ci].vars.iter().find(|&&v| !taken[v]) {
                    pick = Some(v);
                    break 'outer;
                }
                bucket.pop();
            }
        }
        let v = pick.unwrap_or_else(|| (0..nvars).find(|&v| !taken[v]).expect("variables left"));
        taken[v] = true;
        order.push(v);
        for &ci in &by_var[v] {
            open[ci] -= 1;
            buckets[open[ci]].push(ci);
        }
    }
    order
}

/// Every structure on `(R, M)`.
pub fn enumerate_structures(m: &FiniteBimodule, budget: &Budget) -> Result<Vec<AnnStructure>> {
    Ok(enumerate_solutions(m, System::AnnStructure, budget)?
        .into_iter()
        .map(AnnStructure::from_tables)
        .collect())
}

/// Every normalized Mac Lane 3-cocycle on `(R, M)`.
pub fn enumerate_cocycles3(m: &FiniteBimodule, budget: &Budget) -> Result<Vec<MacLane3Cochain>> {
    Ok(enumerate_solutions(m, System::MacLaneCocycle, budget)?
        .into_iter()
        .map(MacLane3Cochain::from_tables)
        .collect())
}

/// Every normalized cochain of `shape`, in mixed-radix order of the free
/// cells. Refuses when there are more than `2^enum_bits` of them.
pub fn all_cochains<C: CochainData>(
    m: &FiniteBimodule,
    budget: &Budget,
) -> Result<impl Iterator<Item = C>> {
    let cells = free_cells(m, C::SHAPE);
    let size = m.size() as u64;
    let total = cells
        .iter()
        .try_fold(1u64, |acc, _| acc.checked_mul(size))
        .filter(|&t| t <= budget.max_nodes())
        .ok_or_else(|| Error::Budget {
            budget: "enum_bits",
            detail: format!(
                "{} free cells over a module of order {size} exceed 2^{}",
                cells.len(),
                budget.enum_bits
            ),
        })?;
    let n = m.ring().order();
    Ok((0..total).map(move |mut idx| {
        let mut tables: Vec<Table> = C::SHAPE.arities().iter().map(|&a| Table::zeros(n, a)).collect();
        for &(t, c) in &cells {
            tables[t].set_at(c, (idx % size) as usize);
            idx /= size;
        }
        C::from_tables(tables)
    }))
}
