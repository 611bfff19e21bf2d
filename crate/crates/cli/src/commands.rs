//! One function per subcommand. Each returns a report and an exit code.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use maclane_core::engine::{cohomology_with_representatives, structure_classes, structure_group, GroupSummary};
use maclane_core::functor::FunctorSetting;
use maclane_core::{
    check_r1_r5, cocycle_to_structure, cohomologous_structures, cohomology, count_hom_classes_bruteforce,
    counterexample_report, enumerate_structures, is_coboundary2, is_coboundary3, is_cocycle3,
    is_structure, obstruction, structure_to_cocycle, AnyCochain, CohomologyResult, FiniteBimodule,
    ViolationList,
};

use crate::report::{Body, Group, Report, Violation, MAX_LISTED};
use crate::workspace::{cochain_spec, parse_workspace, InputError, Workspace};

#[derive(Parser, Debug)]
#[command(name = "maclane-coh", version, about = "Mac Lane cohomology and Ann-category structures of finite rings")]
pub struct Cli {
    /// Workspace file (JSON, schema maclane-coh/1).
    #[arg(short, long, global = true)]
    pub workspace: Option<PathBuf>,

    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate the workspace.
    Validate,
    /// Check a cochain against an equation system.
    Check { kind: CheckKind, name: String },
    /// Convert between structures and 3-cocycles.
    Convert { direction: Direction, name: String },
    Cohomology {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        degree: u8,
        /// List one cocycle per class.
        #[arg(long)]
        representatives: bool,
    },
    /// Decide whether two structures are cohomologous.
    Cohomologous { first: String, second: String },
    Coboundary {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        degree: u8,
        name: String,
    },
    /// The obstruction to a functor of the given type.
    Obstruction {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Count functors of the given type up to homotopy, by exhaustive search.
    HomClasses {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    Enumerate { what: EnumerateWhat },
    /// The dual-number categorical ring that is not an Ann-category.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Cocycle3,
    Structure,
    Catring,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    StructToCocycle,
    CocycleToStruct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EnumerateWhat {
    Structures,
}

#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Core(maclane_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use maclane_core::Error as E;
        match self {
            CliError::Input(e) => e.exit_code(),
            CliError::Core(E::Budget { .. }) => 4,
            CliError::Core(E::NotCocycle { .. } | E::NotStructure { .. } | E::NotCocycle2) => 1,
            CliError::Core(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => e.fmt(f),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<maclane_core::Error> for CliError {
    fn from(e: maclane_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

fn done(body: Body, holds: bool) -> Result<Outcome, CliError> {
    Ok(Outcome {
        report: Report::new(body),
        code: if holds { 0 } else { 1 },
    })
}

fn shape_error(name: &str, c: &AnyCochain, wanted: &str) -> CliError {
    CliError::Input(InputError::Invalid(format!(
        "cochain `{name}` has shape {}, expected {wanted}",
        c.shape()
    )))
}

fn violations(m: &FiniteBimodule, v: &ViolationList) -> Vec<Violation> {
    v.entries
        .iter()
        .take(MAX_LISTED)
        .map(|e| Violation {
            equation: e.equation.clone(),
            args: e.args.clone(),
            defect: m.decode(e.defect),
        })
        .collect()
}

fn group(g: &GroupSummary) -> Group {
    Group {
        invariant_factors: g.invariant_factors.clone(),
        order: g.order.to_string(),
    }
}

fn group_of(h: &CohomologyResult) -> Group {
    Group {
        invariant_factors: h.invariant_factors.clone(),
        order: h.order.to_string(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Counterexample { n, seed } = cli.command {
        return counterexample(n, seed);
    }
    let path = cli.workspace.as_ref().ok_or_else(|| {
        CliError::Input(InputError::Parse("this command needs --workspace <file>".into()))
    })?;
    let ws = parse_workspace(path)?;
    match &cli.command {
        Command::Validate => validate(&ws),
        Command::Check { kind, name } => check(&ws, *kind, name),
        Command::Convert { direction, name } => convert(&ws, *direction, name),
        Command::Cohomology {
            degree,
            representatives,
        } => cohomology_cmd(&ws, *degree, *representatives),
        Command::Cohomologous { first, second } => cohomologous(&ws, first, second),
        Command::Coboundary { degree, name } => coboundary(&ws, *degree, name),
        Command::Obstruction {
            pair,
            source,
            target,
        } => obstruction_cmd(&ws, pair, source, target),
        Command::HomClasses {
            pair,
            source,
            target,
        } => hom_classes(&ws, pair, source, target),
        Command::Enumerate {
            what: EnumerateWhat::Structures,
        } => enumerate(&ws),
        Command::Counterexample { .. } => unreachable!("handled above"),
    }
}

fn validate(ws: &Workspace) -> Result<Outcome, CliError> {
    done(
        Body::Validate {
            ring_order: ws.ring.order(),
            module_orders: ws.module.as_ref().map(|m| m.orders().to_vec()),
            cochains: ws
                .cochains
                .iter()
                .map(|(k, c)| (k.clone(), c.shape().name().to_string()))
                .collect(),
            hom_pairs: ws.hom_pairs.keys().cloned().collect(),
        },
        true,
    )
}

fn check(ws: &Workspace, kind: CheckKind, name: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let c = ws.cochain(name)?;
    let (label, v) = match (kind, c) {
        (CheckKind::Cocycle3, AnyCochain::MacLane3(c)) => ("cocycle3", is_cocycle3(m, c)),
        (CheckKind::Structure, AnyCochain::Ann3(h)) => ("structure", is_structure(m, h)),
        (CheckKind::Catring, AnyCochain::LambdaOnly(l)) => ("catring", check_r1_r5(m, l)),
        (CheckKind::Cocycle3, _) => return Err(shape_error(name, c, "maclane3")),
        (CheckKind::Structure, _) => return Err(shape_error(name, c, "ann3")),
        (CheckKind::Catring, _) => return Err(shape_error(name, c, "lambda-only")),
    };
    let holds = v.is_empty();
    done(
        Body::Check {
            kind: label.to_string(),
            name: name.to_string(),
            holds,
            violation_count: v.len(),
            violations: violations(m, &v),
        },
        holds,
    )
}

fn convert(ws: &Workspace, direction: Direction, name: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let c = ws.cochain(name)?;
    let (label, bad, result) = match (direction, c) {
        (Direction::StructToCocycle, AnyCochain::Ann3(h)) => {
            let bad = is_structure(m, h).len();
            let r = (bad == 0)
                .then(|| structure_to_cocycle(m, h).map(AnyCochain::MacLane3))
                .transpose()?;
            ("struct-to-cocycle", bad, r)
        }
        (Direction::CocycleToStruct, AnyCochain::MacLane3(x)) => {
            let bad = is_cocycle3(m, x).len();
            let r = (bad == 0)
                .then(|| cocycle_to_structure(m, x).map(AnyCochain::Ann3))
                .transpose()?;
            ("cocycle-to-struct", bad, r)
        }
        (Direction::StructToCocycle, _) => return Err(shape_error(name, c, "ann3")),
        (Direction::CocycleToStruct, _) => return Err(shape_error(name, c, "maclane3")),
    };
    done(
        Body::Convert {
            direction: label.to_string(),
            name: name.to_string(),
            result: result.as_ref().map(|r| cochain_spec(m, r)),
            input_violations: bad,
        },
        bad == 0,
    )
}

fn cohomology_cmd(ws: &Workspace, degree: u8, reps: bool) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let h = if reps {
        cohomology_with_representatives(m, degree, ws.budget.repr_order)?
    } else {
        cohomology(m, degree)?
    };
    done(
        Body::Cohomology {
            degree,
            group: group_of(&h),
            cocycle_order: h.cocycle_order.to_string(),
            coboundary_order: h.coboundary_order.to_string(),
            representatives: h
                .representatives
                .as_ref()
                .map(|r| r.iter().map(|c| cochain_spec(m, c)).collect()),
        },
        true,
    )
}

fn structure<'a>(ws: &'a Workspace, name: &str) -> Result<&'a maclane_core::AnnStructure, CliError> {
    match ws.cochain(name)? {
        AnyCochain::Ann3(h) => Ok(h),
        c => Err(shape_error(name, c, "ann3")),
    }
}

fn cohomologous(ws: &Workspace, first: &str, second: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let w = cohomologous_structures(m, structure(ws, first)?, structure(ws, second)?)?;
    let holds = w.is_some();
    done(
        Body::Cohomologous {
            first: first.to_string(),
            second: second.to_string(),
            cohomologous: holds,
            witness: w.map(|g| cochain_spec(m, &AnyCochain::C2(g))),
        },
        holds,
    )
}

fn coboundary(ws: &Workspace, degree: u8, name: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let c = ws.cochain(name)?;
    let witness = match (degree, c) {
        (2, AnyCochain::C2(g)) => is_coboundary2(m, g)?.map(AnyCochain::C1),
        (3, AnyCochain::MacLane3(x)) => is_coboundary3(m, x)?.map(AnyCochain::C2),
        (2, _) => return Err(shape_error(name, c, "c2")),
        _ => return Err(shape_error(name, c, "maclane3")),
    };
    let holds = witness.is_some();
    done(
        Body::Coboundary {
            degree,
            name: name.to_string(),
            is_coboundary: holds,
            witness: witness.map(|w| cochain_spec(m, &w)),
        },
        holds,
    )
}

fn obstruction_cmd(ws: &Workspace, pair: &str, source: &str, target: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let p = ws.pair(pair)?;
    let m2 = p.target.module()?;
    let h = ws.cochain(source)?;
    let h2 = p.target.cochain(target)?;
    let r = obstruction(m, h, m2, h2, &p.pair)?;
    let restricted = FunctorSetting::new(m, h, m2, h2, &p.pair)?.restricted;
    done(
        Body::Obstruction {
            pair: pair.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            obstruction: cochain_spec(&restricted, &AnyCochain::MacLane3(r.k.clone())),
            vanishes: r.vanishes,
            witness: r
                .witness
                .as_ref()
                .map(|g| cochain_spec(&restricted, &AnyCochain::C2(g.clone()))),
            hom_classes: r.hom_class_group.as_ref().map(group_of),
        },
        r.vanishes,
    )
}

fn hom_classes(ws: &Workspace, pair: &str, source: &str, target: &str) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let p = ws.pair(pair)?;
    let m2 = p.target.module()?;
    let h = ws.cochain(source)?;
    let h2 = p.target.cochain(target)?;
    let r = obstruction(m, h, m2, h2, &p.pair)?;
    let count = count_hom_classes_bruteforce(m, h, m2, h2, &p.pair, &ws.budget)?;
    let agree = match &r.hom_class_group {
        Some(g) => g.order == count.into(),
        None => count == 0,
    };
    done(
        Body::HomClasses {
            pair: pair.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            vanishes: r.vanishes,
            bruteforce_count: count,
            h2: r.hom_class_group.as_ref().map(group_of),
        },
        agree,
    )
}

fn enumerate(ws: &Workspace) -> Result<Outcome, CliError> {
    let m = ws.module()?;
    let all = enumerate_structures(m, &ws.budget)?;
    let listed = (all.len() as u64 <= ws.budget.repr_order).then(|| {
        all.iter()
            .map(|h| cochain_spec(m, &AnyCochain::Ann3(h.clone())))
            .collect()
    });
    done(
        Body::EnumerateStructures {
            count: all.len(),
            group: group(&structure_group(m)),
            classes: group(&structure_classes(m)),
            structures: listed,
        },
        true,
    )
}

fn counterexample(n: usize, seed: u64) -> Result<Outcome, CliError> {
    if n < 2 {
        return Err(CliError::Input(InputError::Invalid("--n must be at least 2".into())));
    }
    let r = counterexample_report(n, seed);
    let ap = maclane_core::appendix_lambda(n);
    let ring = ap.module.ring();
    let witness = r.witness.as_ref().map(|e| Violation {
        equation: e.equation.clone(),
        args: e.args.clone(),
        defect: ap.module.decode(e.defect),
    });
    let witness_names = r
        .witness
        .as_ref()
        .map(|e| e.args.iter().map(|&x| ring.name(x).to_string()).collect());
    let (cat, ann) = (r.is_categorical_ring(), r.is_ann_category());
    done(
        Body::Counterexample {
            n,
            seed,
            categorical_ring: cat,
            ann_category: ann,
            r1_r5_violations: r.r1_r5_violations.len(),
            normalization_violations: r.normalization_violations.len(),
            witness,
            witness_names,
            samples: r.samples,
            sample_defects: r.sample_defects,
            embedding_violations: r.embedding_violations,
        },
        cat && !ann,
    )
}
