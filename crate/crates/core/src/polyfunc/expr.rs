use serde::{Deserialize, Serialize};

use super::{Assignment, Mode, Op, PolyError, PolyGate, PolyValue};

/// Polymorphic algebraic expression. Complement appears only as literal
/// polarity and acts the same in both modes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolyExpr {
    Const(PolyValue),
    /// Variable `x_var` (1-based), complemented when `negated`.
    Literal {
        var: u16,
        negated: bool,
    },
    Gate(PolyGate, Box<PolyExpr>, Box<PolyExpr>),
}

/// Single-mode Boolean expression, the result of projecting a [`PolyExpr`]
/// onto one mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolExpr {
    Const(bool),
    Literal { var: u16, negated: bool },
    Op(Op, Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn eval(&self, a: &Assignment) -> Result<bool, PolyError> {
        Ok(match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Literal { var, negated } => a.get(*var)? ^ negated,
            BoolExpr::Op(op, l, r) => op.apply(l.eval(a)?, r.eval(a)?),
        })
    }
}

/// Size and shape metrics of an expression.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct CostReport {
    pub literal_count: usize,
    pub gate_count: usize,
    /// Gates whose two modes compute different operators.
    pub poly_gate_count: usize,
    /// Longest root-to-leaf path counted in gates.
    pub depth: usize,
    /// Leaves plus gates.
    pub node_count: usize,
}

impl PolyExpr {
    pub fn lit(var: u16) -> Self {
        PolyExpr::Literal {
            var,
            negated: false,
        }
    }

    pub fn not_lit(var: u16) -> Self {
        PolyExpr::Literal { var, negated: true }
    }

    pub fn gate(gate: PolyGate, left: PolyExpr, right: PolyExpr) -> Self {
        PolyExpr::Gate(gate, Box::new(left), Box::new(right))
    }

    /// Highest variable index referenced, or 0 for variable-free expressions.
    pub fn max_var(&self) -> u16 {
        match self {
            PolyExpr::Const(_) => 0,
            PolyExpr::Literal { var, .. } => *var,
            PolyExpr::Gate(_, l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Mode-uniform complement, pushed into gate operators and literal
    /// polarities.
    pub fn complement(self) -> Self {
        match self {
            PolyExpr::Const(v) => PolyExpr::Const(v.complement()),
            PolyExpr::Literal { var, negated } => PolyExpr::Literal {
                var,
                negated: !negated,
            },
            PolyExpr::Gate(g, l, r) => PolyExpr::Gate(g.negated(), l, r),
        }
    }

    pub fn eval(&self, a: &Assignment, mode: Mode) -> Result<bool, PolyError> {
        self.check_arity(a.n())?;
        Ok(self.eval_index(a.n(), a.index(), mode))
    }

    pub(crate) fn check_arity(&self, n: usize) -> Result<(), PolyError> {
        let max = self.max_var() as usize;
        if max > n {
            Err(PolyError::Arity { var: max, n })
        } else {
            Ok(())
        }
    }

    /// Evaluates at the assignment with integer encoding `index`; arity
    /// must already be checked.
    pub(crate) fn eval_index(&self, n: usize, index: u32, mode: Mode) -> bool {
        match self {
            PolyExpr::Const(v) => v.get(mode),
            PolyExpr::Literal { var, negated } => {
                ((index >> (n - *var as usize)) & 1 == 1) ^ negated
            }
            PolyExpr::Gate(g, l, r) => g.apply(
                mode,
                l.eval_index(n, index, mode),
                r.eval_index(n, index, mode),
            ),
        }
    }

    /// Replace every gate by its operator for `mode`.
    pub fn mode_project(&self, mode: Mode) -> BoolExpr {
        match self {
            PolyExpr::Const(v) => BoolExpr::Const(v.get(mode)),
            PolyExpr::Literal { var, negated } => BoolExpr::Literal {
                var: *var,
                negated: *negated,
            },
            PolyExpr::Gate(g, l, r) => BoolExpr::Op(
                g.op(mode),
                Box::new(l.mode_project(mode)),
                Box::new(r.mode_project(mode)),
            ),
        }
    }

    /// Word-parallel truth table for one mode: bit `k` of the result is the
    /// value at assignment `k`.
    pub(crate) fn mode_words(&self, n: usize, mode: Mode) -> Vec<u64> {
        let len = 1usize << n;
        let words = len.div_ceil(64);
        let tail_mask = if len.is_multiple_of(64) {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut out = match self {
            PolyExpr::Const(v) => vec![if v.get(mode) { u64::MAX } else { 0 }; words],
            PolyExpr::Literal { var, negated } => {
                let shift = n - *var as usize;
                let mut w = vec![0u64; words];
                for k in 0..len {
                    if ((k >> shift) & 1 == 1) ^ negated {
                        w[k / 64] |= 1 << (k % 64);
                    }
                }
                w
            }
            PolyExpr::Gate(g, l, r) => {
                let op = g.op(mode);
                let lw = l.mode_words(n, mode);
                let rw = r.mode_words(n, mode);
                lw.iter()
                    .zip(&rw)
                    .map(|(&a, &b)| match op {
                        Op::And => a & b,
                        Op::Or => a | b,
                        Op::Xor => a ^ b,
                        Op::Nand => !(a & b),
                        Op::Nor => !(a | b),
                        Op::Xnor => !(a ^ b),
                    })
                    .collect()
            }
        };
        if let Some(last) = out.last_mut() {
            *last &= tail_mask;
        }
        out
    }

    pub fn cost(&self) -> CostReport {
        match self {
            PolyExpr::Const(_) => CostReport {
                node_count: 1,
                ..CostReport::default()
            },
            PolyExpr::Literal { .. } => CostReport {
                literal_count: 1,
                node_count: 1,
                ..CostReport::default()
            },
            PolyExpr::Gate(g, l, r) => {
                let (a, b) = (l.cost(), r.cost());
                CostReport {
                    literal_count: a.literal_count + b.literal_count,
                    gate_count: a.gate_count + b.gate_count + 1,
                    poly_gate_count: a.poly_gate_count
                        + b.poly_gate_count
                        + g.is_polymorphic() as usize,
                    depth: a.depth.max(b.depth) + 1,
                    node_count: a.node_count + b.node_count + 1,
                }
            }
        }
    }

    /// Orders the operands of every gate. All six operators are commutative,
    /// so the result denotes the same function.
    pub fn canonical(&self) -> PolyExpr {
        match self {
            PolyExpr::Gate(g, l, r) => {
                let (l, r) = (l.canonical(), r.canonical());
                if r < l {
                    PolyExpr::gate(*g, r, l)
                } else {
                    PolyExpr::gate(*g, l, r)
                }
            }
            leaf => leaf.clone(),
        }
    }

    /// Left-associated chain `items[0] g items[1] g ...`; `None` when empty.
    pub fn fold(gate: PolyGate, items: impl IntoIterator<Item = PolyExpr>) -> Option<PolyExpr> {
        items
            .into_iter()
            .reduce(|acc, next| PolyExpr::gate(gate, acc, next))
    }
}
