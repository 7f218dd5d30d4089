use std::collections::BTreeSet;

use polykmap_core::{
    match_pair, match_single, match_triple, tag_rule, Cube, Mode, Op, PolyFunction, PolyGate,
    PolyValue, Shape,
};
use proptest::prelude::*;

fn ap(g: PolyGate, m: Mode, a: bool, b: bool) -> bool {
    let op = if m == Mode::One { g.op1 } else { g.op2 };
    match op {
        Op::And => a & b,
        Op::Or => a | b,
        Op::Xor => a ^ b,
        _ => unreachable!("only zero-preserving gates"),
    }
}

fn bit(f: &PolyFunction, k: u32, m: Mode) -> bool {
    let v = f.get(k);
    if m == Mode::One {
        v.mode1
    } else {
        v.mode2
    }
}

/// Gate sets that reproduce `f` on the union, found by direct search.
fn brute(
    f: &PolyFunction,
    cubes: &[Cube],
    tree: impl Fn(&[bool], Mode, &[PolyGate]) -> bool,
    arity: usize,
) -> BTreeSet<Vec<PolyGate>> {
    let gates: Vec<PolyGate> = PolyGate::zero_preserving().collect();
    let combos: Vec<Vec<PolyGate>> = if arity == 1 {
        gates.iter().map(|&g| vec![g]).collect()
    } else {
        gates
            .iter()
            .flat_map(|&g| gates.iter().map(move |&h| vec![g, h]))
            .collect()
    };
    combos
        .into_iter()
        .filter(|gs| {
            (0..f.len() as u32).all(|k| {
                let ind: Vec<bool> = cubes.iter().map(|c| c.contains_point(k)).collect();
                !ind.iter().any(|&b| b)
                    || Mode::BOTH
                        .into_iter()
                        .all(|m| tree(&ind, m, gs) == bit(f, k, m))
            })
        })
        .collect()
}

fn func(n: usize, codes: &[u8]) -> PolyFunction {
    PolyFunction::from_fn(n, |k| PolyValue::from_code(codes[k as usize])).unwrap()
}

fn all_cubes(n: usize) -> Vec<Cube> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| ["0", "1", "-"].map(|c| format!("{s}{c}")))
            .collect();
    }
    out.iter().map(|s| s.parse().unwrap()).collect()
}

fn pair_gates(f: &PolyFunction, a: &Cube, b: &Cube) -> BTreeSet<Vec<PolyGate>> {
    match_pair(f, a, b)
        .unwrap()
        .into_iter()
        .map(|t| t.gates)
        .collect()
}

#[test]
fn pairs_exhaustive_at_two_variables() {
    let cubes = all_cubes(2);
    for code in 0..256u32 {
        let codes: Vec<u8> = (0..4).map(|k| ((code >> (2 * k)) & 3) as u8).collect();
        let f = func(2, &codes);
        for a in &cubes {
            for b in &cubes {
                if a == b {
                    continue;
                }
                let want = brute(&f, &[*a, *b], |ind, m, gs| ap(gs[0], m, ind[0], ind[1]), 1);
                assert_eq!(pair_gates(&f, a, b), want, "f={codes:?} {a} {b}");
            }
        }
    }
}

#[test]
fn single_matches_only_all_one_cubes() {
    let cubes = all_cubes(2);
    for code in 0..256u32 {
        let codes: Vec<u8> = (0..4).map(|k| ((code >> (2 * k)) & 3) as u8).collect();
        let f = func(2, &codes);
        for c in &cubes {
            let all_one = (0..4u32)
                .filter(|&k| c.contains_point(k))
                .all(|k| codes[k as usize] == 3);
            let t = match_single(&f, c).unwrap();
            assert_eq!(t.is_some(), all_one, "{c}");
            if let Some(t) = t {
                assert_eq!(t.shape, Shape::Single);
                assert_eq!(t.cost.poly_gate_count, 0);
            }
        }
    }
}

fn arb_function(n: usize) -> impl Strategy<Value = PolyFunction> {
    prop::collection::vec(0u8..4, 1 << n).prop_map(move |codes| func(n, &codes))
}

fn arb_cube(n: usize) -> impl Strategy<Value = Cube> {
    prop::collection::vec(prop::sample::select(vec!['0', '1', '-']), n)
        .prop_map(|cs| cs.into_iter().collect::<String>().parse().unwrap())
}

fn case(n_max: usize) -> impl Strategy<Value = (PolyFunction, Vec<Cube>)> {
    (1..=n_max).prop_flat_map(|n| (arb_function(n), prop::collection::vec(arb_cube(n), 3)))
}

proptest! {
    #[test]
    fn pair_completeness((f, cubes) in case(3)) {
        let (a, b) = (cubes[0], cubes[1]);
        prop_assume!(a != b);
        let want = brute(&f, &[a, b], |ind, m, gs| ap(gs[0], m, ind[0], ind[1]), 1);
        prop_assert_eq!(pair_gates(&f, &a, &b), want);
    }

    #[test]
    fn pair_operand_order_is_irrelevant((f, cubes) in case(3)) {
        let (a, b) = (cubes[0], cubes[1]);
        prop_assume!(a != b);
        prop_assert_eq!(pair_gates(&f, &a, &b), pair_gates(&f, &b, &a));
    }

    #[test]
    fn triple_completeness((f, cubes) in case(3)) {
        let [a, b, c] = [cubes[0], cubes[1], cubes[2]];
        prop_assume!(a != b && b != c && a != c);
        let found = match_triple(&f, &a, &b, &c).unwrap();
        for shape in [Shape::TripleLeft, Shape::TripleRight] {
            let got: BTreeSet<Vec<PolyGate>> =
                found.iter().filter(|t| t.shape == shape).map(|t| t.gates.clone()).collect();
            let want = brute(&f, &[a, b, c], |ind, m, gs| match shape {
                Shape::TripleLeft => ap(gs[1], m, ap(gs[0], m, ind[0], ind[1]), ind[2]),
                _ => ap(gs[0], m, ind[0], ap(gs[1], m, ind[1], ind[2])),
            }, 2);
            prop_assert_eq!(got, want, "{:?}", shape);
        }
    }

    #[test]
    fn r1_iff_prose_condition((f, cubes) in case(3)) {
        let (a, b) = (cubes[0], cubes[1]);
        prop_assume!(a != b);
        let cond = (0..f.len() as u32).all(|k| {
            let (ia, ib) = (a.contains_point(k), b.contains_point(k));
            let v = f.get(k);
            if ia && ib {
                v == PolyValue { mode1: true, mode2: false }
            } else if ia || ib {
                v == PolyValue { mode1: false, mode2: true }
            } else {
                true
            }
        });
        let r1 = match_pair(&f, &a, &b).unwrap().iter().any(|t| tag_rule(t).to_string() == "R1");
        prop_assert_eq!(cond, r1);
    }
}
