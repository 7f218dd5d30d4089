//! Exhaustive smallest-expression search for tiny arities.
//!
//! Bottom-up enumeration by node count with observational-equivalence
//! pruning: an expression is kept only if its table has not been produced by
//! a smaller (or earlier same-size) expression. A smallest expression for
//! any function has subtrees that can be swapped for smallest equivalents
//! without growing, so the first hit is of minimum size.

use std::collections::HashMap;

use crate::polyfunc::{Mode, Op, PolyExpr, PolyFunction, PolyGate, PolyValue};

use super::MinimizeError;

pub const EXACT_MAX_ARITY: usize = 3;

/// Mode-1 table in the high byte, mode-2 table in the low byte.
type Key = u16;

fn key_of(f: &PolyFunction) -> Key {
    let (mut hi, mut lo) = (0u16, 0u16);
    for (k, v) in f.cells().iter().enumerate() {
        hi |= (v.mode1 as u16) << k;
        lo |= (v.mode2 as u16) << k;
    }
    hi << 8 | lo
}

fn combine(gate: PolyGate, a: Key, b: Key, width_mask: u16) -> Key {
    let per = |op: Op, x: u16, y: u16| {
        (match op {
            Op::And => x & y,
            Op::Or => x | y,
            Op::Xor => x ^ y,
            Op::Nand => !(x & y),
            Op::Nor => !(x | y),
            Op::Xnor => !(x ^ y),
        }) & width_mask
    };
    per(gate.op1, a >> 8, b >> 8) << 8 | per(gate.op2, a & 0xff, b & 0xff)
}

fn leaves(n: usize) -> Vec<(Key, PolyExpr)> {
    let cells = 1u32 << n;
    let table = |e: &PolyExpr| -> Key {
        let (mut hi, mut lo) = (0u16, 0u16);
        for k in 0..cells {
            hi |= (e.eval_index(n, k, Mode::One) as u16) << k;
            lo |= (e.eval_index(n, k, Mode::Two) as u16) << k;
        }
        hi << 8 | lo
    };
    let mut out: Vec<PolyExpr> = PolyValue::ALL.iter().map(|&v| PolyExpr::Const(v)).collect();
    for v in 1..=n as u16 {
        out.push(PolyExpr::lit(v));
        out.push(PolyExpr::not_lit(v));
    }
    out.into_iter().map(|e| (table(&e), e)).collect()
}

/// Smallest-node-count expression equal to `f`, searching up to `budget`
/// nodes over constants, literals and zero-preserving gates. Only if that
/// fails is a single non-zero-preserving gate admitted at the root.
/// `Ok(None)` means the budget ran out.
pub fn exact_search(f: &PolyFunction, budget: usize) -> Result<Option<PolyExpr>, MinimizeError> {
    let n = f.n();
    if n > EXACT_MAX_ARITY {
        return Err(MinimizeError::ArityOverLimit {
            n,
            max: EXACT_MAX_ARITY,
        });
    }
    let target = key_of(f);
    let width_mask: u16 = ((1u32 << (1 << n)) - 1) as u16;
    let mut seen: HashMap<Key, ()> = HashMap::new();
    // by_size[s] holds the functions whose smallest expression has s nodes
    let mut by_size: Vec<Vec<(Key, PolyExpr)>> = vec![Vec::new(); budget + 1];
    if budget == 0 {
        return Ok(None);
    }
    for (k, e) in leaves(n) {
        if k == target {
            return Ok(Some(e));
        }
        if seen.insert(k, ()).is_none() {
            by_size[1].push((k, e));
        }
    }
    let zp: Vec<PolyGate> = PolyGate::zero_preserving().collect();
    for size in (3..=budget).step_by(2) {
        let mut level = Vec::new();
        for left in (1..size - 1).step_by(2) {
            let right = size - 1 - left;
            if left > right {
                break;
            }
            for (i, (ka, ea)) in by_size[left].iter().enumerate() {
                let start = if left == right { i } else { 0 };
                for (kb, eb) in &by_size[right][start..] {
                    for &g in &zp {
                        let k = combine(g, *ka, *kb, width_mask);
                        if seen.contains_key(&k) {
                            continue;
                        }
                        let e = PolyExpr::gate(g, ea.clone(), eb.clone());
                        if k == target {
                            return Ok(Some(e));
                        }
                        seen.insert(k, ());
                        level.push((k, e));
                    }
                }
            }
        }
        by_size[size] = level;
    }
    let root: Vec<PolyGate> = PolyGate::all()
        .filter(|g| !g.is_zero_preserving())
        .collect();
    for size in (3..=budget).step_by(2) {
        for left in (1..size - 1).step_by(2) {
            let right = size - 1 - left;
            for (ka, ea) in &by_size[left] {
                for (kb, eb) in &by_size[right] {
                    for &g in &root {
                        if combine(g, *ka, *kb, width_mask) == target {
                            return Ok(Some(PolyExpr::gate(g, ea.clone(), eb.clone())));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfunc::{equivalent, parse_expr, table_of};

    #[test]
    fn all_one_variable_functions_within_three_nodes() {
        for a in PolyValue::ALL {
            for b in PolyValue::ALL {
                let f = PolyFunction::new(1, vec![a, b]).unwrap();
                let e = exact_search(&f, 3).unwrap().expect("found");
                assert!(equivalent(&e, &f).unwrap());
                assert!(e.cost().node_count <= 3, "{a} {b}: {e}");
            }
        }
    }

    #[test]
    fn finds_single_gate() {
        let f = table_of(&parse_expr("x1 AND/XOR x2").unwrap(), 2).unwrap();
        let e = exact_search(&f, 15).unwrap().unwrap();
        assert_eq!(e.cost().node_count, 3);
        assert!(equivalent(&e, &f).unwrap());
    }

    #[test]
    fn constant_zero_is_one_node() {
        let f = PolyFunction::constant(3, PolyValue::ZERO).unwrap();
        assert_eq!(
            exact_search(&f, 15).unwrap(),
            Some(PolyExpr::Const(PolyValue::ZERO))
        );
    }

    #[test]
    fn budget_exhaustion_and_arity() {
        let f = table_of(&parse_expr("x1 AND/XOR x2").unwrap(), 2).unwrap();
        assert_eq!(exact_search(&f, 1).unwrap(), None);
        let big = PolyFunction::constant(4, PolyValue::ZERO).unwrap();
        assert!(exact_search(&big, 15).is_err());
    }

    #[test]
    fn three_variable_search_is_minimal_against_known_size() {
        let f = table_of(&parse_expr("x1 XOR/OR x2 XOR/AND x3").unwrap(), 3).unwrap();
        let e = exact_search(&f, 15).unwrap().unwrap();
        assert!(equivalent(&e, &f).unwrap());
        assert!(e.cost().node_count <= 5);
    }
}
