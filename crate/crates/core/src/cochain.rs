//! Normalized cochain tables in degrees 1–3.
//!
//! Every cochain is a list of function tables `R^a → M`. A table stores module
//! element indices in lexicographic argument order. The [`Shape`] of a cochain
//! fixes the table names, arities and which positions normalization forces to
//! zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{FiniteBimodule, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `t`
    C1,
    /// `(τ, ν)`
    C2,
    /// `(σ, α, λ, ρ)`
    MacLane3,
    /// `(ξ, η, α, λ, ρ)`
    Ann3,
    /// A bare left-distributivity table `λ`, not normalized.
    LambdaOnly,
}

impl Shape {
    pub fn table_names(self) -> &'static [&'static str] {
        match self {
            Shape::C1 => &["t"],
            Shape::C2 => &["tau", "nu"],
            Shape::MacLane3 => &["sigma", "alpha", "lambda", "rho"],
            Shape::Ann3 => &["xi", "eta", "alpha", "lambda", "rho"],
            Shape::LambdaOnly => &["lambda"],
        }
    }

    pub fn arities(self) -> &'static [usize] {
        match self {
            Shape::C1 => &[1],
            Shape::C2 => &[2, 2],
            Shape::MacLane3 => &[4, 3, 3, 3],
            Shape::Ann3 => &[3, 2, 3, 3, 3],
            Shape::LambdaOnly => &[3],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::C1 => "c1",
            Shape::C2 => "c2",
            Shape::MacLane3 => "maclane3",
            Shape::Ann3 => "ann3",
            Shape::LambdaOnly => "lambda-only",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Shape::C1,
            Shape::C2,
            Shape::MacLane3,
            Shape::Ann3,
            Shape::LambdaOnly,
        ]
        .into_iter()
        .find(|sh| sh.name() == s)
    }

    /// Whether normalization forces `table(args) = 0`.
    pub fn is_forced_zero(self, table: usize, args: &[usize], zero: usize, one: usize) -> bool {
        let has = |v: usize| args.contains(&v);
        match (self, table) {
            (Shape::C1, 0) => has(zero) || has(one),
            (Shape::C2, 0) => has(zero),
            (Shape::C2, 1) => has(zero) || has(one),
            (Shape::MacLane3, 0) => {
                let z = |i: usize| args[i] == zero;
                let (r, s, u, v) = (z(0), z(1), z(2), z(3));
                (u && v) || (r && s) || (s && v) || (r && u) || (s && u)
            }
            (Shape::MacLane3, 1) => has(zero) || has(one),
            (Shape::MacLane3, 2) => has(zero) || args[0] == one,
            (Shape::MacLane3, 3) => has(zero) || args[2] == one,
            (Shape::Ann3, 0) | (Shape::Ann3, 1) => has(zero),
            (Shape::Ann3, 2) => has(zero) || has(one),
            (Shape::Ann3, 3) => has(zero) || args[0] == one,
            (Shape::Ann3, 4) => has(zero) || args[2] == one,
            (Shape::LambdaOnly, _) => false,
            _ => panic!("table {table} out of range for shape {self:?}"),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A function `R^arity → M` stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    arity: usize,
    n: usize,
    data: Vec<usize>,
}

impl Table {
    pub fn zeros(n: usize, arity: usize) -> Self {
        Self {
            arity,
            n,
            data: vec![0; n.pow(arity as u32)],
        }
    }

    pub fn from_data(n: usize, arity: usize, data: Vec<usize>) -> Result<Self> {
        if data.len() != n.pow(arity as u32) {
            return Err(Error::Shape(format!(
                "table of arity {arity} over a ring of order {n} needs {} entries, got {}",
                n.pow(arity as u32),
                data.len()
            )));
        }
        Ok(Self { arity, n, data })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn ring_order(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[usize] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn index(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &a| acc * self.n + a)
    }

    pub fn args(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for a in out.iter_mut().rev() {
            *a = idx % self.n;
            idx /= self.n;
        }
        out
    }

    #[inline]
    pub fn get(&self, args: &[usize]) -> usize {
        self.data[self.index(args)]
    }

    #[inline]
    pub fn at(&self, idx: usize) -> usize {
        self.data[idx]
    }

    pub fn set(&mut self, args: &[usize], value: usize) {
        let i = self.index(args);
        self.data[i] = value;
    }

    pub fn set_at(&mut self, idx: usize, value: usize) {
        self.data[idx] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            arity: self.arity,
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(usize, usize) -> usize) -> Self {
        assert_eq!((self.arity, self.n), (other.arity, other.n));
        Self {
            arity: self.arity,
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// Common access to the tables of a typed cochain.
pub trait CochainData: Sized + Clone {
    const SHAPE: Shape;

    fn tables(&self) -> Vec<&Table>;

    fn tables_mut(&mut self) -> Vec<&mut Table>;

    fn from_tables(tables: Vec<Table>) -> Self;

    fn zero(ring: &FiniteRing) -> Self {
        let n = ring.order();
        Self::from_tables(
            Self::SHAPE
                .arities()
                .iter()
                .map(|&a| Table::zeros(n, a))
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.tables().iter().all(|t| t.is_zero())
    }

    fn add(&self, m: &FiniteBimodule, other: &Self) -> Self {
        Self::from_tables(
            self.tables()
                .iter()
                .zip(other.tables())
                .map(|(a, b)| a.zip_with(b, |x, y| m.add(x, y)))
                .collect(),
        )
    }

    fn sub(&self, m: &FiniteBimodule, other: &Self) -> Self {
        Self::from_tables(
            self.tables()
                .iter()
                .zip(other.tables())
                .map(|(a, b)| a.zip_with(b, |x, y| m.sub(x, y)))
                .collect(),
        )
    }

    fn neg(&self, m: &FiniteBimodule) -> Self {
        Self::from_tables(self.tables().iter().map(|t| t.map(|x| m.neg(x))).collect())
    }

    /// Checks dimensions and value ranges against `(R, M)`.
    fn check_shape(&self, m: &FiniteBimodule) -> Result<()> {
        let n = m.ring().order();
        for ((t, &arity), name) in self
            .tables()
            .iter()
            .zip(Self::SHAPE.arities())
            .zip(Self::SHAPE.table_names())
        {
            if t.arity() != arity || t.ring_order() != n {
                return Err(Error::Shape(format!(
                    "table {name} has arity {} over order {}, expected arity {arity} over order {n}",
                    t.arity(),
                    t.ring_order()
                )));
            }
            if let Some(v) = t.data().iter().find(|&&v| v >= m.size()) {
                return Err(Error::Shape(format!(
                    "table {name} holds module index {v}, module has {} elements",
                    m.size()
                )));
            }
        }
        Ok(())
    }

    /// Normalization failures: one entry per nonzero forced position.
    fn normalization_violations(&self, ring: &FiniteRing) -> ViolationList {
        let mut out = ViolationList::default();
        for (ti, t) in self.tables().iter().enumerate() {
            for idx in 0..t.len() {
                let args = t.args(idx);
                if t.at(idx) != 0 && Self::SHAPE.is_forced_zero(ti, &args, ring.zero(), ring.one()) {
                    out.entries.push(ViolationEntry {
                        equation: format!("N:{}", Self::SHAPE.table_names()[ti]),
                        args,
                        defect: t.at(idx),
                    });
                }
            }
        }
        out
    }

    fn is_normalized(&self, ring: &FiniteRing) -> bool {
        self.normalization_violations(ring).is_empty()
    }
}

macro_rules! cochain_type {
    ($(#[$meta:meta])* $name:ident, $shape:expr, [$($field:ident),+]) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            $(pub $field: Table,)+
        }

        impl CochainData for $name {
            const SHAPE: Shape = $shape;

            fn tables(&self) -> Vec<&Table> {
                vec![$(&self.$field),+]
            }

            fn tables_mut(&mut self) -> Vec<&mut Table> {
                vec![$(&mut self.$field),+]
            }

            fn from_tables(tables: Vec<Table>) -> Self {
                let mut it = tables.into_iter();
                Self {
                    $($field: it.next().expect(concat!("missing table ", stringify!($field))),)+
                }
            }
        }
    };
}

cochain_type!(
    /// A 1-cochain `t: R → M` with `t(0) = t(1) = 0`.
    Cochain1, Shape::C1, [t]
);
cochain_type!(
    /// A 2-cochain `(τ, ν)`.
    Cochain2, Shape::C2, [tau, nu]
);
cochain_type!(
    /// A Mac Lane 3-cochain `(σ, α, λ, ρ)`.
    MacLane3Cochain, Shape::MacLane3, [sigma, alpha, lambda, rho]
);
cochain_type!(
    /// Constraint data `(ξ, η, α, λ, ρ)` of a reduced Ann-category.
    AnnStructure, Shape::Ann3, [xi, eta, alpha, lambda, rho]
);
cochain_type!(
    /// A left-distributivity constraint table with no normalization.
    LeftDistLambda, Shape::LambdaOnly, [lam]
);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationEntry {
    /// Equation tag such as `A7`, `M3`, `R2`, or `N:<table>` for normalization.
    pub equation: String,
    pub args: Vec<usize>,
    /// Left-hand side minus right-hand side, as a module element index.
    pub defect: usize,
}

/// Failed equation instances, in equation order and then lexicographic
/// argument order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationList {
    pub entries: Vec<ViolationEntry>,
}

impl ViolationList {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn find(&self, equation: &str, args: &[usize]) -> Option<&ViolationEntry> {
        self.entries
            .iter()
            .find(|e| e.equation == equation && e.args == args)
    }

    pub fn extend(&mut self, other: ViolationList) {
        self.entries.extend(other.entries);
    }
}

/// A cochain of any shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyCochain {
    C1(Cochain1),
    C2(Cochain2),
    MacLane3(MacLane3Cochain),
    Ann3(AnnStructure),
    LambdaOnly(LeftDistLambda),
}

impl AnyCochain {
    pub fn shape(&self) -> Shape {
        match self {
            AnyCochain::C1(_) => Shape::C1,
            AnyCochain::C2(_) => Shape::C2,
            AnyCochain::MacLane3(_) => Shape::MacLane3,
            AnyCochain::Ann3(_) => Shape::Ann3,
            AnyCochain::LambdaOnly(_) => Shape::LambdaOnly,
        }
    }

    pub fn tables(&self) -> Vec<&Table> {
        match self {
            AnyCochain::C1(c) => c.tables(),
            AnyCochain::C2(c) => c.tables(),
            AnyCochain::MacLane3(c) => c.tables(),
            AnyCochain::Ann3(c) => c.tables(),
            AnyCochain::LambdaOnly(c) => c.tables(),
        }
    }

    /// Wraps tables whose arities match `shape`.
    pub fn from_tables(shape: Shape, tables: Vec<Table>) -> Result<Self> {
        let arities: Vec<usize> = tables.iter().map(Table::arity).collect();
        if arities != shape.arities() {
            return Err(Error::Shape(format!(
                "shape {shape} needs tables of arities {:?}, got {arities:?}",
                shape.arities()
            )));
        }
        Ok(match shape {
            Shape::C1 => AnyCochain::C1(Cochain1::from_tables(tables)),
            Shape::C2 => AnyCochain::C2(Cochain2::from_tables(tables)),
            Shape::MacLane3 => AnyCochain::MacLane3(MacLane3Cochain::from_tables(tables)),
            Shape::Ann3 => AnyCochain::Ann3(AnnStructure::from_tables(tables)),
            Shape::LambdaOnly => AnyCochain::LambdaOnly(LeftDistLambda::from_tables(tables)),
        })
    }
}
