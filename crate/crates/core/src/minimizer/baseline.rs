//! Baselines: a classical per-mode SOP and the polymorphic multiplexer that
//! selects between the two SOPs with a mode-dependent constant.

use crate::cubes::{prime_implicants, Cube};
use crate::polyfunc::{Mode, Op, PolyExpr, PolyFunction, PolyGate};

use super::sum_of;

/// Greedy prime-implicant cover of `f_mode`, as an AND/AND-OR/OR expression
/// whose table equals `f_mode` in both modes.
pub fn baseline_sop(f: &PolyFunction, mode: Mode) -> PolyExpr {
    let primes = prime_implicants(f, mode);
    let mut uncovered: Vec<bool> = f.mode_view(mode);
    let mut chosen: Vec<Cube> = Vec::new();
    loop {
        let gain = |c: &Cube| c.indices().filter(|&k| uncovered[k as usize]).count();
        // first maximum in canonical order
        let best = primes
            .iter()
            .map(|c| (gain(c), c))
            .filter(|(g, _)| *g > 0)
            .fold(None, |acc: Option<(usize, &Cube)>, (g, c)| match acc {
                Some((bg, _)) if bg >= g => acc,
                _ => Some((g, c)),
            });
        let Some((_, best)) = best else { break };
        for k in best.indices() {
            uncovered[k as usize] = false;
        }
        chosen.push(*best);
    }
    chosen.sort();
    sum_of(chosen.iter().map(Cube::product_term))
}

/// `x1 XNOR/XOR x1` (value 1/0 everywhere) for mode 1, `x1 XOR/XNOR x1`
/// (0/1) for mode 2.
pub fn mode_select(mode: Mode) -> PolyExpr {
    let gate = match mode {
        Mode::One => PolyGate::new(Op::Xnor, Op::Xor),
        Mode::Two => PolyGate::new(Op::Xor, Op::Xnor),
    };
    PolyExpr::gate(gate, PolyExpr::lit(1), PolyExpr::lit(1))
}

/// `SOP_1 * k + SOP_2 * k̄` with `k` the mode-1 selector.
pub fn baseline_mux(f: &PolyFunction) -> PolyExpr {
    let arm = |m: Mode| PolyExpr::gate(PolyGate::AND, baseline_sop(f, m), mode_select(m));
    PolyExpr::gate(PolyGate::OR, arm(Mode::One), arm(Mode::Two))
}
