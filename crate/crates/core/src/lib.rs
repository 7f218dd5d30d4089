//! Polymorphic Boolean functions `f1/f2`: dual-mode evaluation, subcube
//! algebra, gate-semantic rule matching over 1–3 cubes, and a greedy
//! minimizer that produces multi-level polymorphic gate expressions.

pub mod cubes;
pub mod io;
pub mod minimizer;
pub mod polyfunc;
pub mod rules;

mod par;

pub use cubes::{Cube, CubeClass, CubeError};
pub use minimizer::{
    baseline_mux, baseline_sop, exact_search, minimize, Cover, MinimizeConfig, MinimizeError,
};
pub use polyfunc::{
    equivalent, parse_expr, print_expr, table_of, Assignment, CostReport, Mode, Op, PolyError,
    PolyExpr, PolyFunction, PolyGate, PolyValue,
};
pub use rules::{match_pair, match_single, match_triple, tag_rule, RuleTag, Shape, TermCandidate};
