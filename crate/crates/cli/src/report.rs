//! Report types. Every report serializes to JSON with a `schema` and a
//! `command` field and parses back to the same value.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::workspace::{CochainSpec, SCHEMA};

/// Violations listed in a report before the list is cut off.
pub const MAX_LISTED: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub equation: String,
    pub args: Vec<usize>,
    /// Left side minus right side, as module coordinates.
    pub defect: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub invariant_factors: Vec<u64>,
    pub order: String,
}

impl Group {
    pub fn describe(&self) -> String {
        if self.invariant_factors.is_empty() {
            return "trivial group (order 1)".to_string();
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        format!("{} (order {})", parts.join(" x "), self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Body {
    Validate {
        ring_order: usize,
        module_orders: Option<Vec<u64>>,
        cochains: Vec<(String, String)>,
        hom_pairs: Vec<String>,
    },
    Check {
        kind: String,
        name: String,
        holds: bool,
        violation_count: usize,
        violations: Vec<Violation>,
    },
    Convert {
        direction: String,
        name: String,
        result: Option<CochainSpec>,
        input_violations: usize,
    },
    Cohomology {
        degree: u8,
        group: Group,
        cocycle_order: String,
        coboundary_order: String,
        representatives: Option<Vec<CochainSpec>>,
    },
    Cohomologous {
        first: String,
        second: String,
        cohomologous: bool,
        witness: Option<CochainSpec>,
    },
    Coboundary {
        degree: u8,
        name: String,
        is_coboundary: bool,
        witness: Option<CochainSpec>,
    },
    Obstruction {
        pair: String,
        source: String,
        target: String,
        obstruction: CochainSpec,
        vanishes: bool,
        witness: Option<CochainSpec>,
        hom_classes: Option<Group>,
    },
    HomClasses {
        pair: String,
        source: String,
        target: String,
        vanishes: bool,
        bruteforce_count: u64,
        h2: Option<Group>,
    },
    EnumerateStructures {
        count: usize,
        group: Group,
        classes: Group,
        structures: Option<Vec<CochainSpec>>,
    },
    Counterexample {
        n: usize,
        seed: u64,
        categorical_ring: bool,
        ann_category: bool,
        r1_r5_violations: usize,
        normalization_violations: usize,
        witness: Option<Violation>,
        witness_names: Option<Vec<String>>,
        samples: usize,
        sample_defects: usize,
        embedding_violations: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(body: Body) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let w = &mut out;
        match &self.body {
            Body::Validate {
                ring_order,
                module_orders,
                cochains,
                hom_pairs,
            } => {
                let _ = writeln!(w, "ring: order {ring_order}, valid");
                match module_orders {
                    Some(o) => {
                        let _ = writeln!(w, "bimodule: cyclic orders {o:?}, valid");
                    }
                    None => {
                        let _ = writeln!(w, "bimodule: none");
                    }
                }
                for (name, shape) in cochains {
                    let _ = writeln!(w, "cochain {name}: {shape}");
                }
                for name in hom_pairs {
                    let _ = writeln!(w, "hom pair {name}: valid");
                }
            }
            Body::Check {
                kind,
                name,
                holds,
                violation_count,
                violations,
            } => {
                let _ = writeln!(w, "{kind} check of {name}: {}", if *holds { "holds" } else { "fails" });
                let _ = writeln!(w, "violations: {violation_count}");
                write_violations(w, violations, *violation_count);
            }
            Body::Convert {
                direction,
                name,
                result,
                input_violations,
            } => {
                let _ = writeln!(w, "convert {direction} {name}");
                match result {
                    Some(c) => {
                        let _ = writeln!(w, "result:");
                        write_cochain(w, c);
                    }
                    None => {
                        let _ = writeln!(w, "input rejected: {input_violations} violated equation instances");
                    }
                }
            }
            Body::Cohomology {
                degree,
                group,
                cocycle_order,
                coboundary_order,
                representatives,
            } => {
                let _ = writeln!(w, "H^{degree}: {}", group.describe());
                let _ = writeln!(w, "cocycles: {cocycle_order}, coboundaries: {coboundary_order}");
                if let Some(reps) = representatives {
                    for (i, c) in reps.iter().enumerate() {
                        let _ = writeln!(w, "class {i}:");
                        write_cochain(w, c);
                    }
                }
            }
            Body::Cohomologous {
                first,
                second,
                cohomologous,
                witness,
            } => {
                let _ = writeln!(w, "{first} ~ {second}: {}", yes_no(*cohomologous));
                if let Some(c) = witness {
                    let _ = writeln!(w, "witness (tau, nu) with {first} - {second} = d(tau, nu):");
                    write_cochain(w, c);
                }
            }
            Body::Coboundary {
                degree,
                name,
                is_coboundary,
                witness,
            } => {
                let _ = writeln!(w, "{name} in B^{degree}: {}", yes_no(*is_coboundary));
                if let Some(c) = witness {
                    let _ = writeln!(w, "witness:");
                    write_cochain(w, c);
                }
            }
            Body::Obstruction {
                pair,
                source,
                target,
                vanishes,
                witness,
                hom_classes,
                ..
            } => {
                let _ = writeln!(w, "obstruction of {pair} from {source} to {target}: {}", if *vanishes { "vanishes" } else { "nonzero class" });
                if let Some(c) = witness {
                    let _ = writeln!(w, "g with d(g) = k:");
                    write_cochain(w, c);
                }
                if let Some(g) = hom_classes {
                    let _ = writeln!(w, "functor classes of this type: H^2 = {}", g.describe());
                }
            }
            Body::HomClasses {
                pair,
                source,
                target,
                vanishes,
                bruteforce_count,
                h2,
            } => {
                let _ = writeln!(w, "functors of type {pair} from {source} to {target}");
                let _ = writeln!(w, "obstruction vanishes: {}", yes_no(*vanishes));
                let _ = writeln!(w, "homotopy classes (exhaustive): {bruteforce_count}");
                if let Some(g) = h2 {
                    let _ = writeln!(w, "H^2: {}", g.describe());
                }
            }
            Body::EnumerateStructures {
                count,
                group,
                classes,
                structures,
            } => {
                let _ = writeln!(w, "structures: {count}");
                let _ = writeln!(w, "structure group: {}", group.describe());
                let _ = writeln!(w, "cohomology classes: {}", classes.describe());
                if structures.is_none() {
                    let _ = writeln!(w, "(list omitted: above repr_order)");
                }
            }
            Body::Counterexample {
                n,
                seed,
                categorical_ring,
                ann_category,
                r1_r5_violations,
                normalization_violations,
                witness,
                witness_names,
                samples,
                sample_defects,
                embedding_violations,
            } => {
                let _ = writeln!(w, "dual numbers over Z/{n}, lambda(r,s,t) = b_r(a_s + a_t)");
                let _ = writeln!(w, "R1-R5 violations: {r1_r5_violations}");
                let _ = writeln!(w, "integer samples: {samples} (seed {seed}), defects: {sample_defects}");
                let _ = writeln!(w, "categorical ring: {}", yes_no(*categorical_ring));
                let _ = writeln!(w, "normalization violations: {normalization_violations}");
                if let (Some(v), Some(names)) = (witness, witness_names) {
                    let _ = writeln!(w, "witness: lambda({}) = {:?}", names.join(", "), v.defect);
                }
                let _ = writeln!(w, "violations as an Ann structure: {embedding_violations}");
                let _ = writeln!(w, "Ann-category: {}", yes_no(*ann_category));
            }
        }
        out
    }
}

fn write_violations(w: &mut String, v: &[Violation], total: usize) {
    for e in v {
        let _ = writeln!(w, "  {} {:?}: {:?}", e.equation, e.args, e.defect);
    }
    if total > v.len() {
        let _ = writeln!(w, "  ... {} more", total - v.len());
    }
}

fn write_cochain(w: &mut String, c: &CochainSpec) {
    let _ = writeln!(w, "  shape: {}", c.shape);
    for (name, t) in &c.tables {
        let _ = writeln!(w, "  {name}: {t}");
    }
}
