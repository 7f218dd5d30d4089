//! Rule matching: when do one, two or three polymorphic cubes combine,
//! through zero-preserving polymorphic gates, into a single term that equals
//! the function on the union of the cubes (and is 0 elsewhere)?
//!
//! Instead of transcribing a fixed list of rule templates, the matcher
//! enumerates every gate assignment for a given cube shape and keeps the
//! ones that agree with the function. A term built from cube indicators
//! `1_{c_i}(x)` can only depend on *which* cubes contain `x`, so the check
//! reduces to the (at most seven) indicator combinations that occur in the
//! union: each must see a single function value per mode, equal to what the
//! gate tree produces for that combination.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::cubes::Cube;
use crate::polyfunc::{CostReport, Mode, Op, PolyExpr, PolyFunction, PolyGate, PolyValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("arity mismatch: function has {function} variables, cube has {cube}")]
    ArityMismatch { function: usize, cube: usize },
    #[error("cubes must be pairwise distinct, {0} repeats")]
    NotDistinct(Cube),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `P1`
    Single,
    /// `P1 g P2`
    Pair,
    /// `(P1 g P2) h P3`
    TripleLeft,
    /// `P1 g (P2 h P3)`
    TripleRight,
}

impl Shape {
    /// Value of the shape's gate tree on indicator bits `ind` (bit `i` set
    /// when the point lies in cube `i`).
    pub fn eval(self, gates: &[PolyGate], ind: u8, mode: Mode) -> bool {
        let b = |i: u8| ind >> i & 1 == 1;
        match self {
            Shape::Single => b(0),
            Shape::Pair => gates[0].apply(mode, b(0), b(1)),
            Shape::TripleLeft => gates[1].apply(mode, gates[0].apply(mode, b(0), b(1)), b(2)),
            Shape::TripleRight => gates[0].apply(mode, b(0), gates[1].apply(mode, b(1), b(2))),
        }
    }

    fn build(self, cubes: &[Cube], gates: &[PolyGate]) -> PolyExpr {
        let p = |i: usize| cubes[i].product_term();
        match self {
            Shape::Single => p(0),
            Shape::Pair => PolyExpr::gate(gates[0], p(0), p(1)),
            Shape::TripleLeft => {
                PolyExpr::gate(gates[1], PolyExpr::gate(gates[0], p(0), p(1)), p(2))
            }
            Shape::TripleRight => {
                PolyExpr::gate(gates[0], p(0), PolyExpr::gate(gates[1], p(1), p(2)))
            }
        }
    }
}

/// One applied rule instance: 1–3 cubes, the gates joining their product
/// terms, and the region (union of the cubes) on which the term equals the
/// function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCandidate {
    pub shape: Shape,
    pub cubes: Vec<Cube>,
    pub gates: Vec<PolyGate>,
    pub region: FixedBitSet,
    pub expr: PolyExpr,
    pub cost: CostReport,
}

impl TermCandidate {
    fn new(shape: Shape, cubes: &[Cube], gates: &[PolyGate]) -> Self {
        let n = cubes[0].n();
        let mut region = FixedBitSet::with_capacity(1 << n);
        for c in cubes {
            for k in c.indices() {
                region.insert(k as usize);
            }
        }
        let expr = shape.build(cubes, gates);
        TermCandidate {
            shape,
            cubes: cubes.to_vec(),
            gates: gates.to_vec(),
            region,
            cost: expr.cost(),
            expr,
        }
    }

    /// Indicator bits of point `index` with respect to the term's cubes.
    pub fn indicators(&self, index: u32) -> u8 {
        self.cubes
            .iter()
            .enumerate()
            .fold(0, |acc, (i, c)| acc | (c.contains_point(index) as u8) << i)
    }

    /// The term's value at `index`, computed from cube membership.
    pub fn value_at(&self, index: u32) -> PolyValue {
        let ind = self.indicators(index);
        PolyValue::new(
            self.shape.eval(&self.gates, ind, Mode::One),
            self.shape.eval(&self.gates, ind, Mode::Two),
        )
    }

    pub fn in_region(&self, index: u32) -> bool {
        self.region.contains(index as usize)
    }

    /// Demand of `f` in `mode` that this term covers.
    pub fn covered(&self, f: &PolyFunction, mode: Mode) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(f.len());
        for k in self.region.ones() {
            if f.bit(k as u32, mode) {
                out.insert(k);
            }
        }
        out
    }

    /// Key under which commutatively-equal candidates collide.
    pub fn dedup_key(&self) -> PolyExpr {
        self.expr.canonical()
    }

    pub fn view(&self) -> CandidateView {
        CandidateView {
            shape: self.shape,
            cubes: self.cubes.iter().map(|c| c.to_string()).collect(),
            gates: self.gates.iter().map(|g| g.to_string()).collect(),
            expr: self.expr.to_string(),
            rule: tag_rule(self),
        }
    }
}

/// Serialized form of a candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateView {
    pub shape: Shape,
    pub cubes: Vec<String>,
    pub gates: Vec<String>,
    pub expr: String,
    pub rule: RuleTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    /// `P1 AND/XOR P2`: intersection 1/0, symmetric difference 0/1.
    R1,
    /// Any other gate combination.
    #[serde(rename = "EXT")]
    Ext,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleTag {
    pub id: RuleId,
    pub gates: Vec<PolyGate>,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id {
            RuleId::R1 => f.write_str("R1"),
            RuleId::Ext => {
                f.write_str("EXT(")?;
                for (i, g) in self.gates.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
        }
    }
}

const R1_GATE: PolyGate = PolyGate::new(Op::And, Op::Xor);

pub fn tag_rule(t: &TermCandidate) -> RuleTag {
    let id = if t.shape == Shape::Pair && t.gates == [R1_GATE] {
        RuleId::R1
    } else {
        RuleId::Ext
    };
    RuleTag {
        id,
        gates: t.gates.clone(),
    }
}

/// Per indicator combination and mode: bit 0 set when some point with that
/// combination has value 0, bit 1 when some point has value 1.
type Observed = [[u8; 2]; 8];

/// `None` when some combination sees both values in one mode, which no gate
/// tree can reproduce.
fn observe(f: &PolyFunction, cubes: &[Cube]) -> Option<Observed> {
    let mut seen: Observed = [[0; 2]; 8];
    for (i, c) in cubes.iter().enumerate() {
        for k in c.indices() {
            if cubes[..i].iter().any(|d| d.contains_point(k)) {
                continue;
            }
            let ind = cubes
                .iter()
                .enumerate()
                .fold(0u8, |acc, (j, d)| acc | (d.contains_point(k) as u8) << j);
            let v = f.get(k);
            let slot = &mut seen[ind as usize];
            slot[0] |= 1 << v.mode1 as u8;
            slot[1] |= 1 << v.mode2 as u8;
            if slot[0] == 3 || slot[1] == 3 {
                return None;
            }
        }
    }
    Some(seen)
}

fn consistent(seen: &Observed, shape: Shape, gates: &[PolyGate]) -> bool {
    seen.iter().enumerate().all(|(ind, slot)| {
        Mode::BOTH
            .into_iter()
            .zip(slot)
            .all(|(m, &obs)| obs == 0 || obs == 1 << shape.eval(gates, ind as u8, m) as u8)
    })
}

fn check_arity(f: &PolyFunction, cubes: &[Cube]) -> Result<(), RuleError> {
    match cubes.iter().find(|c| c.n() != f.n()) {
        Some(c) => Err(RuleError::ArityMismatch {
            function: f.n(),
            cube: c.n(),
        }),
        None => Ok(()),
    }
}

/// A plain group: the product term of `c`, when every point is 1/1.
pub fn match_single(f: &PolyFunction, c: &Cube) -> Result<Option<TermCandidate>, RuleError> {
    check_arity(f, &[*c])?;
    Ok(c.indices()
        .all(|k| f.get(k) == PolyValue::ONE)
        .then(|| TermCandidate::new(Shape::Single, &[*c], &[])))
}

/// Every zero-preserving gate `g` for which `P1 g P2` equals `f` on
/// `c1 ∪ c2` in both modes.
pub fn match_pair(f: &PolyFunction, c1: &Cube, c2: &Cube) -> Result<Vec<TermCandidate>, RuleError> {
    check_arity(f, &[*c1, *c2])?;
    if c1 == c2 {
        return Err(RuleError::NotDistinct(*c1));
    }
    let cubes = [*c1, *c2];
    let Some(seen) = observe(f, &cubes) else {
        return Ok(Vec::new());
    };
    Ok(PolyGate::zero_preserving()
        .filter(|&g| consistent(&seen, Shape::Pair, &[g]))
        .map(|g| TermCandidate::new(Shape::Pair, &cubes, &[g]))
        .collect())
}

/// Every shape in {`(P1 g P2) h P3`, `P1 g (P2 h P3)`} and zero-preserving
/// gate pair `(g, h)` that equals `f` on `c1 ∪ c2 ∪ c3`. Operand order is
/// taken as given.
pub fn match_triple(
    f: &PolyFunction,
    c1: &Cube,
    c2: &Cube,
    c3: &Cube,
) -> Result<Vec<TermCandidate>, RuleError> {
    let cubes = [*c1, *c2, *c3];
    check_arity(f, &cubes)?;
    for (i, a) in cubes.iter().enumerate() {
        if cubes[i + 1..].contains(a) {
            return Err(RuleError::NotDistinct(*a));
        }
    }
    let Some(seen) = observe(f, &cubes) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for shape in [Shape::TripleLeft, Shape::TripleRight] {
        for g in PolyGate::zero_preserving() {
            for h in PolyGate::zero_preserving() {
                if consistent(&seen, shape, &[g, h]) {
                    out.push(TermCandidate::new(shape, &cubes, &[g, h]));
                }
            }
        }
    }
    Ok(out)
}

/// Drops candidates whose expression equals an earlier one up to operand
/// order.
pub fn dedup_candidates(candidates: Vec<TermCandidate>) -> Vec<TermCandidate> {
    let mut seen = HashSet::new();
    candidates
        .into_iter()
        .filter(|t| seen.insert(t.dedup_key()))
        .collect()
}
