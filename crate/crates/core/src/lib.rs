//! Low-degree Mac Lane cohomology of finite rings with bimodule coefficients,
//! Ann-category structures over a reduced model `(R, M)`, the correspondence
//! between the two, functor obstructions and the dual-number categorical ring
//! that is not an Ann-category.
//!
//! Everything is exact: rings and bimodules are finite tables, cochains are
//! finite function tables, and every group-theoretic answer comes out of
//! linear algebra over `Z/e` or an exhaustive search.

pub mod appendix;
pub mod cochain;
pub mod complex;
pub mod engine;
pub mod equations;
pub mod error;
pub mod functor;
pub mod ring;
pub mod search;
pub mod snf;
pub mod zmod;

pub use appendix::{
    appendix_lambda, check_r1_r5, counterexample_report, is_ann_normalized, AppendixLambda,
    CounterexampleReport,
};
pub use cochain::{
    AnnStructure, AnyCochain, Cochain1, Cochain2, CochainData, LeftDistLambda, MacLane3Cochain, Shape, Table,
    ViolationEntry, ViolationList,
};
pub use complex::{
    cocycle_to_structure, cohomologous_structures, d1, d2, d2_ann, inner_derivation, is_cocycle3,
    is_regular, is_structure, structure_to_cocycle,
};
pub use engine::{
    cohomology, is_coboundary2, is_coboundary3, matrix_of_d1, matrix_of_d2, matrix_of_z3_constraints,
    slot_basis, AdditiveMap, CohomologyResult, SlotBasis,
};
pub use error::{Error, Result};
pub use functor::{
    check_functor, count_hom_classes_bruteforce, homotopic, obstruction, prestick_invariant,
    pullback, pushforward, restrict_bimodule, FunctorTriple, HomPair, Homotopy, ObstructionReport,
};
pub use ring::{
    make_bimodule_via_hom, make_dual_numbers, make_product, make_upper_triangular, make_zn,
    validate_bimodule, validate_ring, FiniteBimodule, FiniteRing, ModuleElement,
    ValidationReport,
};
pub use search::{enumerate_cocycles3, enumerate_structures, Budget};
pub use snf::{smith_normal_form, SmithForm};
