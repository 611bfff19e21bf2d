//! Finite unital rings and finite bimodules, stored as explicit tables.
//!
//! Ring elements are indices in `0..order`. Module elements are indices into a
//! mixed-radix encoding of coordinate tuples `(c_1, .., c_k)` with
//! `c_i < orders[i]`; [`ModuleElement`] is the coordinate view used at API
//! boundaries.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest bimodule (as a set) the table representation will build.
pub const MAX_MODULE_SIZE: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

/// Violated axioms, one entry per axiom with the lexicographically first witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: &str, witness: Vec<usize>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witness,
        });
    }

    fn first_failure<I, F>(&mut self, axiom: &str, tuples: I, mut holds: F)
    where
        I: IntoIterator<Item = Vec<usize>>,
        F: FnMut(&[usize]) -> bool,
    {
        if let Some(w) = tuples.into_iter().find(|w| !holds(w)) {
            self.push(axiom, w);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// All tuples of length `arity` over `0..n` in lexicographic order.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(arity as u32).unwrap_or(0);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    label: String,
    names: Vec<String>,
}

impl FiniteRing {
    /// Builds a ring from raw tables. Only shapes are checked here; the ring
    /// axioms are checked by [`validate_ring`].
    pub fn from_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        let order = add.len();
        if order == 0 {
            return Err(Error::Shape("ring must have at least one element".into()));
        }
        for (name, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != order {
                return Err(Error::Shape(format!(
                    "{name} table has {} rows, expected {order}",
                    table.len()
                )));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != order {
                    return Err(Error::Shape(format!(
                        "{name} table row {i} has {} entries, expected {order}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                    return Err(Error::Shape(format!(
                        "{name} table row {i} contains out-of-range index {bad}"
                    )));
                }
            }
        }
        if zero >= order || one >= order {
            return Err(Error::Shape("zero/one index out of range".into()));
        }
        let add: Vec<usize> = add.into_iter().flatten().collect();
        let mul: Vec<usize> = mul.into_iter().flatten().collect();
        let neg = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| add[x * order + y] == zero)
                    .unwrap_or(zero)
            })
            .collect();
        Ok(Self {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            label: label.into(),
            names: (0..order).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Shape(format!(
                "{} element names given for a ring of order {}",
                names.len(),
                self.order
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

pub fn make_zn(n: usize) -> FiniteRing {
    assert!(n >= 1, "Z/n needs n >= 1");
    let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let mul = (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect();
    FiniteRing::from_tables(add, mul, 0, 1 % n, format!("Z/{n}")).expect("Z/n tables are well-shaped")
}

/// Index of `a + b·ε` in [`make_dual_numbers`] over a base of order `n`.
pub fn dual_index(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

/// The ring `base[ε]/(ε²)`; element `(a, b)` stands for `a + bε`.
pub fn make_dual_numbers(base: &FiniteRing) -> FiniteRing {
    let n = base.order();
    let split = |i: usize| (i / n, i % n);
    let size = n * n;
    let add = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let ((a, b), (c, d)) = (split(x), split(y));
                    dual_index(n, base.add(a, c), base.add(b, d))
                })
                .collect()
        })
        .collect();
    let mul = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let ((a, b), (c, d)) = (split(x), split(y));
                    let eps = base.add(base.mul(a, d), base.mul(b, c));
                    dual_index(n, base.mul(a, c), eps)
                })
                .collect()
        })
        .collect();
    let names = (0..size)
        .map(|i| {
            let (a, b) = split(i);
            format!("{}+{}e", base.name(a), base.name(b))
        })
        .collect();
    FiniteRing::from_tables(
        add,
        mul,
        dual_index(n, base.zero(), base.zero()),
        dual_index(n, base.one(), base.zero()),
        format!("({})[e]", base.label()),
    )
    .and_then(|r| r.with_names(names))
    .expect("dual number tables are well-shaped")
}

/// Componentwise product; element `(i, j)` has index `i * r2.order() + j`.
pub fn make_product(r1: &FiniteRing, r2: &FiniteRing) -> FiniteRing {
    let n2 = r2.order();
    let size = r1.order() * n2;
    let split = |i: usize| (i / n2, i % n2);
    let table = |op: &dyn Fn(usize, usize, usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| {
                        let ((a, b), (c, d)) = (split(x), split(y));
                        op(a, b, c, d)
                    })
                    .collect()
            })
            .collect()
    };
    let add = table(&|a, b, c, d| r1.add(a, c) * n2 + r2.add(b, d));
    let mul = table(&|a, b, c, d| r1.mul(a, c) * n2 + r2.mul(b, d));
    let names = (0..size)
        .map(|i| {
            let (a, b) = split(i);
            format!("({},{})", r1.name(a), r2.name(b))
        })
        .collect();
    FiniteRing::from_tables(
        add,
        mul,
        r1.zero() * n2 + r2.zero(),
        r1.one() * n2 + r2.one(),
        format!("{} x {}", r1.label(), r2.label()),
    )
    .and_then(|r| r.with_names(names))
    .expect("product tables are well-shaped")
}

/// Upper-triangular 2×2 matrices over Z/n; `[[a, b], [0, c]]` has index
/// `(a * n + b) * n + c`.
pub fn make_upper_triangular(n: usize) -> FiniteRing {
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let split = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let size = n * n * n;
    let add = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let ((a, b, c), (d, e, f)) = (split(x), split(y));
                    idx((a + d) % n, (b + e) % n, (c + f) % n)
                })
                .collect()
        })
        .collect();
    let mul = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let ((a, b, c), (d, e, f)) = (split(x), split(y));
                    idx((a * d) % n, (a * e + b * f) % n, (c * f) % n)
                })
                .collect()
        })
        .collect();
    FiniteRing::from_tables(add, mul, 0, idx(1 % n, 0, 1 % n), format!("UT2(Z/{n})"))
        .expect("upper-triangular tables are well-shaped")
}

/// Checks every ring axiom exhaustively.
pub fn validate_ring(r: &FiniteRing) -> ValidationReport {
    let n = r.order();
    let mut rep = ValidationReport::default();
    rep.first_failure("addition not associative", tuples(n, 3), |w| {
        r.add(r.add(w[0], w[1]), w[2]) == r.add(w[0], r.add(w[1], w[2]))
    });
    rep.first_failure("addition not commutative", tuples(n, 2), |w| {
        r.add(w[0], w[1]) == r.add(w[1], w[0])
    });
    rep.first_failure("zero is not an additive identity", tuples(n, 1), |w| {
        r.add(r.zero(), w[0]) == w[0] && r.add(w[0], r.zero()) == w[0]
    });
    rep.first_failure("element has no additive inverse", tuples(n, 1), |w| {
        r.add(w[0], r.neg(w[0])) == r.zero()
    });
    rep.first_failure("multiplication not associative", tuples(n, 3), |w| {
        r.mul(r.mul(w[0], w[1]), w[2]) == r.mul(w[0], r.mul(w[1], w[2]))
    });
    rep.first_failure("one is not a two-sided identity", tuples(n, 1), |w| {
        r.mul(r.one(), w[0]) == w[0] && r.mul(w[0], r.one()) == w[0]
    });
    rep.first_failure("left distributivity fails", tuples(n, 3), |w| {
        r.mul(w[0], r.add(w[1], w[2])) == r.add(r.mul(w[0], w[1]), r.mul(w[0], w[2]))
    });
    rep.first_failure("right distributivity fails", tuples(n, 3), |w| {
        r.mul(r.add(w[0], w[1]), w[2]) == r.add(r.mul(w[0], w[2]), r.mul(w[1], w[2]))
    });
    rep
}

/// Coordinate view of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub coords: Vec<u64>,
}

impl ModuleElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self { coords }
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A finite abelian group `Z/d_1 × .. × Z/d_k` with left and right actions of a
/// ring, given on generators and extended additively.
#[derive(Clone, Debug)]
pub struct FiniteBimodule {
    ring: Arc<FiniteRing>,
    orders: Vec<u64>,
    left_gen: Vec<Vec<Vec<u64>>>,
    right_gen: Vec<Vec<Vec<u64>>>,
    size: usize,
    strides: Vec<usize>,
    add: Vec<usize>,
    neg: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl PartialEq for FiniteBimodule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.orders == other.orders
            && self.left_gen == other.left_gen
            && self.right_gen == other.right_gen
    }
}

impl Eq for FiniteBimodule {}

impl FiniteBimodule {
    /// `left[r][i]` holds the coordinates of `r·e_i`, `right[i][r]` those of
    /// `e_i·r`. Only shapes and coordinate ranges are checked here.
    pub fn from_tables(
        ring: Arc<FiniteRing>,
        orders: Vec<u64>,
        left: Vec<Vec<Vec<u64>>>,
        right: Vec<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let k = orders.len();
        let n = ring.order();
        if orders.contains(&0) {
            return Err(Error::Shape("cyclic orders must be >= 1".into()));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .filter(|&s| s <= MAX_MODULE_SIZE)
            .ok_or_else(|| Error::Shape(format!("module larger than {MAX_MODULE_SIZE} elements")))?;
        let check_coords = |what: &str, c: &[u64]| -> Result<()> {
            if c.len() != k {
                return Err(Error::Shape(format!(
                    "{what}: coordinate tuple of length {}, expected {k}",
                    c.len()
                )));
            }
            if let Some((i, v)) = c.iter().enumerate().find(|(i, &v)| v >= orders[*i]) {
                return Err(Error::Shape(format!(
                    "{what}: coordinate {i} = {v} out of range for order {}",
                    orders[i]
                )));
            }
            Ok(())
        };
        if left.len() != n || left.iter().any(|row| row.len() != k) {
            return Err(Error::Shape(format!("left action table must be {n}x{k}")));
        }
        if right.len() != k || right.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("right action table must be {k}x{n}")));
        }
        for (r, row) in left.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                check_coords(&format!("left action [{r}][{i}]"), c)?;
            }
        }
        for (i, row) in right.iter().enumerate() {
            for (r, c) in row.iter().enumerate() {
                check_coords(&format!("right action [{i}][{r}]"), c)?;
            }
        }

        let mut strides = Vec::with_capacity(k);
        let mut s = 1usize;
        for &d in &orders {
            strides.push(s);
            s *= d as usize;
        }
        let mut module = Self {
            ring,
            orders,
            left_gen: left,
            right_gen: right,
            size,
            strides,
            add: Vec::new(),
            neg: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
        };
        module.build_tables();
        Ok(module)
    }

    /// Builds a bimodule from closures giving the generator images.
    pub fn from_fn(
        ring: Arc<FiniteRing>,
        orders: Vec<u64>,
        left: impl Fn(usize, usize) -> Vec<u64>,
        right: impl Fn(usize, usize) -> Vec<u64>,
    ) -> Result<Self> {
        let n = ring.order();
        let k = orders.len();
        let l = (0..n).map(|r| (0..k).map(|i| left(r, i)).collect()).collect();
        let rt = (0..k).map(|i| (0..n).map(|r| right(i, r)).collect()).collect();
        Self::from_tables(ring, orders, l, rt)
    }

    fn build_tables(&mut self) {
        let size = self.size;
        let coords: Vec<Vec<u64>> = (0..size).map(|m| self.decode(m)).collect();
        self.add = (0..size * size)
            .map(|ab| {
                let (a, b) = (ab / size, ab % size);
                let c: Vec<u64> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&self.orders)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                self.encode_unchecked(&c)
            })
            .collect();
        self.neg = coords
            .iter()
            .map(|c| {
                let n: Vec<u64> = c.iter().zip(&self.orders).map(|(x, d)| (d - x) % d).collect();
                self.encode_unchecked(&n)
            })
            .collect();
        let nr = self.ring.order();
        let mut left = vec![0; nr * size];
        let mut right = vec![0; size * nr];
        for r in 0..nr {
            for (m, c) in coords.iter().enumerate() {
                left[r * size + m] = self.combine(c, |i| &self.left_gen[r][i]);
                right[m * nr + r] = self.combine(c, |i| &self.right_gen[i][r]);
            }
        }
        self.left = left;
        self.right = right;
    }

    fn combine<'a>(&'a self, c: &[u64], image: impl Fn(usize) -> &'a Vec<u64>) -> usize {
        let mut acc = vec![0u64; self.orders.len()];
        for (i, &ci) in c.iter().enumerate() {
            for (j, v) in image(i).iter().enumerate() {
                acc[j] = (acc[j] + ci * v) % self.orders[j];
            }
        }
        self.encode_unchecked(&acc)
    }

    fn encode_unchecked(&self, c: &[u64]) -> usize {
        c.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &d| num_integer::lcm(acc, d))
    }

    pub fn left_generator_table(&self) -> &[Vec<Vec<u64>>] {
        &self.left_gen
    }

    pub fn right_generator_table(&self) -> &[Vec<Vec<u64>>] {
        &self.right_gen
    }

    pub fn encode(&self, e: &ModuleElement) -> Result<usize> {
        if e.coords.len() != self.rank() {
            return Err(Error::Shape(format!(
                "module element {e} has {} coordinates, expected {}",
                e.coords.len(),
                self.rank()
            )));
        }
        if e.coords.iter().zip(&self.orders).any(|(x, d)| x >= d) {
            return Err(Error::Shape(format!(
                "module element {e} out of range for orders {:?}",
                self.orders
            )));
        }
        Ok(self.encode_unchecked(&e.coords))
    }

    pub fn decode(&self, m: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| ((m / s) as u64) % d)
            .collect()
    }

    pub fn element(&self, m: usize) -> ModuleElement {
        ModuleElement::new(self.decode(m))
    }

    /// The `i`-th generator `e_i`.
    pub fn generator(&self, i: usize) -> usize {
        if self.orders[i] == 1 {
            0
        } else {
            self.strides[i]
        }
    }

    #[inline]
    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    /// `k·a` for any integer `k`.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let c: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (k.rem_euclid(d as i64) as u64 * x) % d)
            .collect();
        self.encode_unchecked(&c)
    }

    /// `r·a`
    #[inline]
    pub fn act_left(&self, r: usize, a: usize) -> usize {
        self.left[r * self.size + a]
    }

    /// `a·r`
    #[inline]
    pub fn act_right(&self, a: usize, r: usize) -> usize {
        self.right[a * self.ring.order() + r]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Same group, actions replaced by `r·m = p(r)·m`, `m·r = m·p(r)`. The
    /// caller guarantees that `p` maps `ring` into this module's ring.
    pub(crate) fn pulled_back(&self, ring: Arc<FiniteRing>, p: &[usize]) -> Result<Self> {
        let k = self.rank();
        let left = p
            .iter()
            .map(|&pr| (0..k).map(|i| self.left_gen[pr][i].clone()).collect())
            .collect();
        let right = (0..k)
            .map(|i| p.iter().map(|&pr| self.right_gen[i][pr].clone()).collect())
            .collect();
        Self::from_tables(ring, self.orders.clone(), left, right)
    }
}

impl fmt::Display for FiniteBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        let group = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        };
        write!(f, "{group} over {}", self.ring.label())
    }
}

/// `M = Z/m` with `r·x = x·r = φ(r)·x`, for a unital ring homomorphism
/// `φ: R → Z/m`.
pub fn make_bimodule_via_hom(ring: Arc<FiniteRing>, m: u64, phi: &[u64]) -> Result<FiniteBimodule> {
    let n = ring.order();
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    if phi.len() != n {
        return Err(Error::Shape(format!(
            "phi has {} entries, ring has order {n}",
            phi.len()
        )));
    }
    if phi.iter().any(|&v| v >= m) {
        return Err(Error::Shape(format!("phi values must lie in 0..{m}")));
    }
    if phi[ring.one()] != 1 % m {
        return Err(Error::NotHomomorphism(format!(
            "phi(1) = {} but must be 1 mod {m}",
            phi[ring.one()]
        )));
    }
    for x in 0..n {
        for y in 0..n {
            if phi[ring.add(x, y)] != (phi[x] + phi[y]) % m {
                return Err(Error::NotHomomorphism(format!(
                    "phi({x}+{y}) != phi({x}) + phi({y})"
                )));
            }
            if phi[ring.mul(x, y)] != (phi[x] * phi[y]) % m {
                return Err(Error::NotHomomorphism(format!(
                    "phi({x}*{y}) != phi({x}) * phi({y})"
                )));
            }
        }
    }
    let act = |r: usize| vec![phi[r] % m];
    FiniteBimodule::from_fn(ring, vec![m], |r, _| act(r), |_, r| act(r))
}

/// Every invariant of a bimodule, checked exhaustively on generators.
pub fn validate_bimodule(module: &FiniteBimodule) -> ValidationReport {
    let ring = module.ring();
    let n = ring.order();
    let k = module.rank();
    let mut rep = ValidationReport::default();
    let gens: Vec<usize> = (0..k).map(|i| module.generator(i)).collect();
    let lg = |r: usize, i: usize| module.encode_unchecked(&module.left_gen[r][i]);
    let rg = |i: usize, r: usize| module.encode_unchecked(&module.right_gen[i][r]);
    let ord = |i: usize| module.orders[i] as i64;

    rep.first_failure("left action ignores generator order", tuples2(n, k), |w| {
        module.scale(ord(w[1]), lg(w[0], w[1])) == 0
    });
    rep.first_failure("right action ignores generator order", tuples2(n, k), |w| {
        module.scale(ord(w[1]), rg(w[1], w[0])) == 0
    });
    rep.first_failure("left action not additive in the ring", tuples3(n, n, k), |w| {
        lg(ring.add(w[0], w[1]), w[2]) == module.add(lg(w[0], w[2]), lg(w[1], w[2]))
    });
    rep.first_failure("right action not additive in the ring", tuples3(n, n, k), |w| {
        rg(w[2], ring.add(w[0], w[1])) == module.add(rg(w[2], w[0]), rg(w[2], w[1]))
    });
    rep.first_failure("left action not associative", tuples3(n, n, k), |w| {
        let (r, s, e) = (w[0], w[1], gens[w[2]]);
        module.act_left(ring.mul(r, s), e) == module.act_left(r, module.act_left(s, e))
    });
    rep.first_failure("right action not associative", tuples3(n, n, k), |w| {
        let (r, s, e) = (w[0], w[1], gens[w[2]]);
        module.act_right(e, ring.mul(r, s)) == module.act_right(module.act_right(e, r), s)
    });
    rep.first_failure("left and right actions do not commute", tuples3(n, n, k), |w| {
        let (r, s, e) = (w[0], w[1], gens[w[2]]);
        module.act_right(module.act_left(r, e), s) == module.act_left(r, module.act_right(e, s))
    });
    rep.first_failure("one does not act as the identity", tuples(k, 1), |w| {
        let e = gens[w[0]];
        module.act_left(ring.one(), e) == e && module.act_right(e, ring.one()) == e
    });
    rep.first_failure("zero does not act as zero", tuples(k, 1), |w| {
        let e = gens[w[0]];
        module.act_left(ring.zero(), e) == 0 && module.act_right(e, ring.zero()) == 0
    });
    rep
}

fn tuples2(a: usize, b: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..a).flat_map(move |x| (0..b).map(move |y| vec![x, y]))
}

fn tuples3(a: usize, b: usize, c: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..a).flat_map(move |x| (0..b).flat_map(move |y| (0..c).map(move |z| vec![x, y, z])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(r: FiniteRing) -> Arc<FiniteRing> {
        Arc::new(r)
    }

    #[test]
    fn zn_instances() {
        let z1 = make_zn(1);
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.zero(), z1.one());
        assert!(validate_ring(&make_zn(2)).is_valid());
        let z4 = make_zn(4);
        assert_eq!(z4.add(2, 3), 1);
        assert_eq!(z4.mul(2, 2), 0);
        assert!(validate_ring(&make_zn(6)).is_valid());
    }

    #[test]
    fn dual_numbers() {
        let d2 = make_dual_numbers(&make_zn(2));
        assert_eq!(d2.order(), 4);
        let eps = dual_index(2, 0, 1);
        assert_eq!(d2.mul(eps, eps), d2.zero());
        assert!(validate_ring(&d2).is_valid());

        assert_eq!(make_dual_numbers(&make_zn(1)).order(), 1);

        let d3 = make_dual_numbers(&make_zn(3));
        assert_eq!(d3.mul(dual_index(3, 1, 1), dual_index(3, 1, 2)), dual_index(3, 1, 0));
        assert!(validate_ring(&d3).is_valid());
    }

    #[test]
    fn products() {
        let p = make_product(&make_zn(2), &make_zn(2));
        assert_eq!(p.order(), 4);
        assert_eq!(p.one(), 3); // (1,1)
        assert!(validate_ring(&p).is_valid());

        let base = make_dual_numbers(&make_zn(2));
        let q = make_product(&make_zn(1), &base);
        assert_eq!(q.order(), base.order());
        assert!(validate_ring(&q).is_valid());

        let r = make_product(&make_zn(2), &make_zn(3));
        assert_eq!(r.add(r.one(), r.one()), 2); // (0,2)
    }

    #[test]
    fn upper_triangular_is_a_noncommutative_ring() {
        let r = make_upper_triangular(2);
        assert_eq!(r.order(), 8);
        assert!(validate_ring(&r).is_valid());
        assert!((0..8).any(|x| (0..8).any(|y| r.mul(x, y) != r.mul(y, x))));
    }

    #[test]
    fn patched_z4_breaks_distributivity() {
        let z4 = make_zn(4);
        let mut mul = z4.mul_table();
        mul[2][2] = 1;
        let bad = FiniteRing::from_tables(z4.add_table(), mul, 0, 1, "patched").unwrap();
        let rep = validate_ring(&bad);
        let v = rep
            .violations
            .iter()
            .find(|v| v.axiom == "left distributivity fails")
            .expect("distributivity violation");
        assert_eq!(v.witness, vec![2, 1, 1]);
    }

    #[test]
    fn noncommutative_addition_is_reported() {
        let add = vec![vec![0, 1], vec![0, 1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let bad = FiniteRing::from_tables(add, mul, 0, 1, "bad").unwrap();
        let rep = validate_ring(&bad);
        let v = rep
            .violations
            .iter()
            .find(|v| v.axiom == "addition not commutative")
            .unwrap();
        assert_eq!(v.witness, vec![0, 1]);
    }

    #[test]
    fn shape_errors_are_not_violations() {
        let err = FiniteRing::from_tables(vec![vec![0, 1], vec![1]], vec![vec![0, 0], vec![0, 1]], 0, 1, "x");
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn via_hom_modules() {
        let d2 = arc(make_dual_numbers(&make_zn(2)));
        let phi: Vec<u64> = (0..4).map(|i| (i / 2) as u64).collect();
        let m = make_bimodule_via_hom(d2.clone(), 2, &phi).unwrap();
        assert!(validate_bimodule(&m).is_valid());
        assert_eq!(m.act_left(dual_index(2, 0, 1), 1), 0);
        assert_eq!(m.act_right(1, dual_index(2, 1, 1)), 1);

        let trivial = make_bimodule_via_hom(d2, 1, &[0, 0, 0, 0]).unwrap();
        assert_eq!(trivial.size(), 1);
        assert!(validate_bimodule(&trivial).is_valid());

        let z4 = arc(make_zn(4));
        let m = make_bimodule_via_hom(z4.clone(), 2, &[0, 1, 0, 1]).unwrap();
        assert_eq!(m.act_left(3, 1), 1);
        assert!(validate_bimodule(&m).is_valid());

        let err = make_bimodule_via_hom(z4, 3, &[0, 1, 2, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism(_)));
    }

    #[test]
    fn planted_bimodule_violations() {
        let z2 = arc(make_zn(2));
        // 1·e ≠ e
        let m = FiniteBimodule::from_fn(z2.clone(), vec![2], |_, _| vec![0], |_, r| vec![r as u64]).unwrap();
        let rep = validate_bimodule(&m);
        assert!(rep.violations.iter().any(|v| v.axiom == "one does not act as the identity"));

        // 3·(3·e) = 0 but (3·3)·e = e
        let z4 = arc(make_zn(4));
        let m = FiniteBimodule::from_fn(
            z4,
            vec![4],
            |r, _| vec![[0, 1, 2, 2][r]],
            |_, r| vec![r as u64],
        )
        .unwrap();
        let rep = validate_bimodule(&m);
        assert!(rep.violations.iter().any(|v| v.axiom == "left action not associative"));
    }

    #[test]
    fn module_arithmetic() {
        let z2 = arc(make_zn(2));
        let m = FiniteBimodule::from_fn(z2, vec![2, 3], |r, i| {
            let mut c = vec![0, 0];
            c[i] = r as u64;
            c
        }, |i, r| {
            let mut c = vec![0, 0];
            c[i] = r as u64;
            c
        })
        .unwrap();
        assert_eq!(m.size(), 6);
        assert_eq!(m.exponent(), 6);
        let a = m.encode(&ModuleElement::new(vec![1, 2])).unwrap();
        assert_eq!(m.decode(m.add(a, a)), vec![0, 1]);
        assert_eq!(m.add(a, m.neg(a)), 0);
        assert_eq!(m.scale(-1, a), m.neg(a));
        assert!(m.encode(&ModuleElement::new(vec![2, 0])).is_err());
    }
}
