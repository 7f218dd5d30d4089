//! Polymorphic values, gates, expressions and truth tables.

mod expr;
mod gate;
mod parse;
mod table;
mod value;

pub use expr::{BoolExpr, CostReport, PolyExpr};
pub use gate::{Op, PolyGate};
pub use parse::{parse_expr, print_expr, ParseError};
pub use table::{
    equivalent, first_mismatch, table_of, Assignment, Mismatch, PolyFunction, MAX_ARITY,
};
pub use value::{Mode, ParseValueError, PolyValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable x{var} is out of range for arity {n}")]
    Arity { var: usize, n: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity {0} outside supported range 1..=16")]
    ArityRange(usize),
    #[error("assignment index {index} out of range for arity {n}")]
    IndexRange { index: u32, n: usize },
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("invalid bit string {0:?}")]
    BadBits(String),
}


#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::strategies;
    use super::*;

    #[test]
    fn gate_semantics_exhaustive() {
        for g in PolyGate::all() {
            for p in [false, true] {
                for q in [false, true] {
                    let e = PolyExpr::gate(
                        g,
                        PolyExpr::Const(PolyValue::new(p, p)),
                        PolyExpr::Const(PolyValue::new(q, q)),
                    );
                    let a = Assignment::new(1, 0).unwrap();
                    for m in Mode::BOTH {
                        assert_eq!(e.eval(&a, m).unwrap(), g.op(m).apply(p, q));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_expression_evaluates_per_mode() {
        let e = parse_expr("~x2 * x3 XOR/OR x1 + ~x4").unwrap();
        let a: Assignment = "1011".parse().unwrap();
        assert!(!e.eval(&a, Mode::One).unwrap());
        assert!(e.eval(&a, Mode::Two).unwrap());
        let x1 = PolyExpr::lit(1);
        let a: Assignment = "1".parse().unwrap();
        assert!(x1.eval(&a, Mode::One).unwrap() && x1.eval(&a, Mode::Two).unwrap());
    }

    #[test]
    fn eval_rejects_out_of_range_variable() {
        let a: Assignment = "10".parse().unwrap();
        assert_eq!(
            PolyExpr::lit(3).eval(&a, Mode::One),
            Err(PolyError::Arity { var: 3, n: 2 })
        );
    }

    proptest! {
        #[test]
        fn projection_commutes_with_eval(e in strategies::expr(6), k in 0u32..64) {
            let a = Assignment::new(6, k).unwrap();
            for m in Mode::BOTH {
                prop_assert_eq!(e.eval(&a, m).unwrap(), e.mode_project(m).eval(&a).unwrap());
            }
        }

        #[test]
        fn print_parse_round_trip(e in strategies::expr(6)) {
            let text = print_expr(&e);
            let back = parse_expr(&text).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(print_expr(&back), text);
            prop_assert_eq!(table_of(&back, 6).unwrap(), table_of(&e, 6).unwrap());
        }

        #[test]
        fn table_of_is_deterministic(e in strategies::expr(4)) {
            prop_assert_eq!(table_of(&e, 4).unwrap(), table_of(&e, 4).unwrap());
        }
    }
}
