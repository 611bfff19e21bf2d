//! The JSON workspace file: a ring, an optional bimodule, named cochains,
//! named homomorphism pairs and budgets.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use maclane_core::ring::ModuleElement;
use maclane_core::{
    make_bimodule_via_hom, make_dual_numbers, make_product, make_zn, validate_bimodule,
    validate_ring, AnyCochain, Budget, FiniteBimodule, FiniteRing, HomPair, Shape, Table,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "maclane-coh/1";

#[derive(Debug)]
pub enum InputError {
    /// Unreadable file or malformed JSON; exit code 2.
    Parse(String),
    /// Well-formed JSON that does not describe valid data; exit code 3.
    Invalid(String),
}

impl InputError {
    pub fn exit_code(&self) -> i32 {
        match self {
            InputError::Parse(_) => 2,
            InputError::Invalid(_) => 3,
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(s) => write!(f, "parse error: {s}"),
            InputError::Invalid(s) => write!(f, "validation error: {s}"),
        }
    }
}

impl std::error::Error for InputError {}

fn invalid(s: impl Into<String>) -> InputError {
    InputError::Invalid(s.into())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingSpec {
    Zn {
        n: usize,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    /// `(Z/n)[ε]`, or `base[ε]` for an explicit base.
    Dual {
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        base: Option<Box<RingSpec>>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    Product {
        factors: Vec<RingSpec>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        zero: usize,
        one: usize,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BimoduleSpec {
    /// `Z/m` with `r·k = φ(r)k = k·r`.
    ViaHom { m: u64, phi: Vec<u64> },
    /// `left[r][i]` = coordinates of `r·e_i`, `right[i][r]` = those of `e_i·r`.
    Tables {
        orders: Vec<u64>,
        left: Vec<Vec<Vec<u64>>>,
        right: Vec<Vec<Vec<u64>>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    /// `p` as a list of target ring indices.
    pub p: Vec<usize>,
    /// `q(e_i)` for each generator `e_i` of the source module.
    pub q: Vec<Vec<u64>>,
    /// Another workspace file, relative to this one; this workspace if absent.
    #[serde(default)]
    pub target: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainSpec {
    pub shape: String,
    #[serde(flatten)]
    pub tables: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default = "default_enum_bits")]
    pub enum_bits: u32,
    #[serde(default = "default_repr_order")]
    pub repr_order: u64,
}

fn default_enum_bits() -> u32 {
    Budget::default().enum_bits
}

fn default_repr_order() -> u64 {
    Budget::default().repr_order
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub schema: Option<String>,
    pub ring: RingSpec,
    #[serde(default)]
    pub bimodule: Option<BimoduleSpec>,
    #[serde(default)]
    pub cochains: BTreeMap<String, CochainSpec>,
    #[serde(default)]
    pub hom_pairs: BTreeMap<String, PairSpec>,
    #[serde(default)]
    pub budgets: Option<BudgetSpec>,
}

#[derive(Clone, Debug)]
pub struct ResolvedPair {
    pub pair: HomPair,
    pub target: Box<Workspace>,
}

/// A parsed and validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub path: PathBuf,
    pub ring: Arc<FiniteRing>,
    pub module: Option<FiniteBimodule>,
    pub cochains: BTreeMap<String, AnyCochain>,
    pub hom_pairs: BTreeMap<String, ResolvedPair>,
    pub budget: Budget,
}

impl Workspace {
    pub fn module(&self) -> Result<&FiniteBimodule, InputError> {
        self.module
            .as_ref()
            .ok_or_else(|| invalid(format!("{}: no bimodule given", self.path.display())))
    }

    pub fn cochain(&self, name: &str) -> Result<&AnyCochain, InputError> {
        self.cochains
            .get(name)
            .ok_or_else(|| invalid(format!("undefined cochain `{name}`")))
    }

    pub fn pair(&self, name: &str) -> Result<&ResolvedPair, InputError> {
        self.hom_pairs
            .get(name)
            .ok_or_else(|| invalid(format!("undefined hom pair `{name}`")))
    }
}

pub fn parse_workspace(path: &Path) -> Result<Workspace, InputError> {
    load(path, true)
}

fn load(path: &Path, follow_pairs: bool) -> Result<Workspace, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Parse(format!("{}: {e}", path.display())))?;
    let doc: Document = serde_json::from_str(&text).map_err(|e| {
        InputError::Parse(format!(
            "{} line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    resolve(path, doc, follow_pairs)
}

/// Builds and validates everything a document describes.
pub fn resolve(path: &Path, doc: Document, follow_pairs: bool) -> Result<Workspace, InputError> {
    if let Some(s) = &doc.schema {
        if s != SCHEMA {
            return Err(invalid(format!("unsupported schema `{s}`, expected `{SCHEMA}`")));
        }
    }
    let ring = Arc::new(build_ring(&doc.ring)?);
    let report = validate_ring(&ring);
    if !report.is_valid() {
        return Err(invalid(format!("ring axioms fail: {report}")));
    }
    let module = doc
        .bimodule
        .as_ref()
        .map(|spec| build_module(ring.clone(), spec))
        .transpose()?;
    if let Some(m) = &module {
        let report = validate_bimodule(m);
        if !report.is_valid() {
            return Err(invalid(format!("bimodule axioms fail: {report}")));
        }
    }

    let mut cochains = BTreeMap::new();
    for (name, spec) in &doc.cochains {
        let m = module
            .as_ref()
            .ok_or_else(|| invalid(format!("cochain `{name}` needs a bimodule")))?;
        let c = parse_cochain(m, spec).map_err(|e| invalid(format!("cochain `{name}`: {e}")))?;
        cochains.insert(name.clone(), c);
    }

    let budget = doc.budgets.map_or_else(Budget::default, |b| Budget {
        enum_bits: b.enum_bits,
        repr_order: b.repr_order,
    });

    let mut ws = Workspace {
        path: path.to_path_buf(),
        ring,
        module,
        cochains,
        hom_pairs: BTreeMap::new(),
        budget,
    };
    if follow_pairs {
        for (name, spec) in &doc.hom_pairs {
            let target = match &spec.target {
                Some(rel) => {
                    let dir = path.parent().unwrap_or_else(|| Path::new("."));
                    load(&dir.join(rel), false)?
                }
                None => Workspace {
                    hom_pairs: BTreeMap::new(),
                    ..ws.clone()
                },
            };
            let pair = build_pair(&ws, &target, spec)
                .map_err(|e| invalid(format!("hom pair `{name}`: {e}")))?;
            ws.hom_pairs.insert(
                name.clone(),
                ResolvedPair {
                    pair,
                    target: Box::new(target),
                },
            );
        }
    }
    Ok(ws)
}

fn build_ring(spec: &RingSpec) -> Result<FiniteRing, InputError> {
    let (ring, names) = match spec {
        RingSpec::Zn { n, names } => {
            if *n < 1 {
                return Err(invalid("zn ring needs n >= 1"));
            }
            (make_zn(*n), names)
        }
        RingSpec::Dual { n, base, names } => {
            let base = match (n, base) {
                (Some(n), None) if *n >= 1 => make_zn(*n),
                (None, Some(b)) => build_ring(b)?,
                _ => return Err(invalid("dual ring needs exactly one of `n` >= 1 or `base`")),
            };
            (make_dual_numbers(&base), names)
        }
        RingSpec::Product { factors, names } => {
            let mut it = factors.iter();
            let first = it
                .next()
                .ok_or_else(|| invalid("product ring needs at least one factor"))?;
            let mut r = build_ring(first)?;
            for f in it {
                r = make_product(&r, &build_ring(f)?);
            }
            (r, names)
        }
        RingSpec::Tables {
            add,
            mul,
            zero,
            one,
            names,
        } => (
            FiniteRing::from_tables(add.clone(), mul.clone(), *zero, *one, "R")
                .map_err(|e| invalid(e.to_string()))?,
            names,
        ),
    };
    match names {
        Some(names) => ring.with_names(names.clone()).map_err(|e| invalid(e.to_string())),
        None => Ok(ring),
    }
}

fn build_module(ring: Arc<FiniteRing>, spec: &BimoduleSpec) -> Result<FiniteBimodule, InputError> {
    match spec {
        BimoduleSpec::ViaHom { m, phi } => make_bimodule_via_hom(ring, *m, phi),
        BimoduleSpec::Tables {
            orders,
            left,
            right,
        } => FiniteBimodule::from_tables(ring, orders.clone(), left.clone(), right.clone()),
    }
    .map_err(|e| invalid(e.to_string()))
}

fn build_pair(source: &Workspace, target: &Workspace, spec: &PairSpec) -> Result<HomPair, String> {
    let m = source.module().map_err(|e| e.to_string())?;
    let m2 = target.module().map_err(|e| e.to_string())?;
    if spec.q.len() != m.rank() {
        return Err(format!(
            "q lists {} generator images, the source module has {} generators",
            spec.q.len(),
            m.rank()
        ));
    }
    let images = spec
        .q
        .iter()
        .map(|c| m2.encode(&ModuleElement::new(c.clone())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let q = m
        .elements()
        .map(|a| {
            m.decode(a)
                .iter()
                .zip(&images)
                .fold(m2.zero(), |acc, (&c, &img)| m2.add(acc, m2.scale(c as i64, img)))
        })
        .collect();
    HomPair::new(m, m2, spec.p.clone(), q).map_err(|e| e.to_string())
}

/// Reads a cochain from its shape tag and named nested tables. Missing tables
/// are zero.
pub fn parse_cochain(m: &FiniteBimodule, spec: &CochainSpec) -> Result<AnyCochain, String> {
    let shape = Shape::from_name(&spec.shape).ok_or_else(|| format!("unknown shape `{}`", spec.shape))?;
    let names = shape.table_names();
    if let Some(extra) = spec.tables.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(format!("shape {shape} has no table `{extra}`"));
    }
    let n = m.ring().order();
    let tables = names
        .iter()
        .zip(shape.arities())
        .map(|(&name, &arity)| match spec.tables.get(name) {
            None => Ok(Table::zeros(n, arity)),
            Some(v) => {
                let mut data = Vec::with_capacity(n.pow(arity as u32));
                read_nested(m, v, arity, name, &mut data)?;
                Table::from_data(n, arity, data).map_err(|e| e.to_string())
            }
        })
        .collect::<Result<Vec<_>, String>>()?;
    AnyCochain::from_tables(shape, tables).map_err(|e| e.to_string())
}

fn read_nested(
    m: &FiniteBimodule,
    v: &Value,
    depth: usize,
    path: &str,
    out: &mut Vec<usize>,
) -> Result<(), String> {
    if depth == 0 {
        let coords: Vec<u64> = serde_json::from_value(v.clone())
            .map_err(|_| format!("table {path}: expected a coordinate array"))?;
        let idx = m
            .encode(&ModuleElement::new(coords))
            .map_err(|e| format!("table {path}: {e}"))?;
        out.push(idx);
        return Ok(());
    }
    let n = m.ring().order();
    let arr = v
        .as_array()
        .filter(|a| a.len() == n)
        .ok_or_else(|| format!("table {path}: expected an array of {n} entries"))?;
    for (i, x) in arr.iter().enumerate() {
        read_nested(m, x, depth - 1, &format!("{path}[{i}]"), out)?;
    }
    Ok(())
}

/// The inverse of [`parse_cochain`]: every table written out in full.
pub fn cochain_spec(m: &FiniteBimodule, c: &AnyCochain) -> CochainSpec {
    let shape = c.shape();
    let tables = shape
        .table_names()
        .iter()
        .zip(c.tables())
        .map(|(&name, t)| (name.to_string(), write_nested(m, t, 0, t.arity())))
        .collect();
    CochainSpec {
        shape: shape.name().to_string(),
        tables,
    }
}

fn write_nested(m: &FiniteBimodule, t: &Table, prefix: usize, depth: usize) -> Value {
    if depth == 0 {
        return Value::from(m.decode(t.at(prefix)));
    }
    let n = t.ring_order();
    Value::Array(
        (0..n)
            .map(|i| write_nested(m, t, prefix * n + i, depth - 1))
            .collect(),
    )
}
