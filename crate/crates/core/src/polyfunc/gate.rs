use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Mode;

/// Two-input Boolean operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Op {
    And,
    Or,
    Xor,
    Nand,
    Nor,
    Xnor,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::And, Op::Or, Op::Xor, Op::Nand, Op::Nor, Op::Xnor];
    /// Operators with `op(0,0) = 0`.
    pub const ZERO_PRESERVING: [Op; 3] = [Op::And, Op::Or, Op::Xor];

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            Op::And => a & b,
            Op::Or => a | b,
            Op::Xor => a ^ b,
            Op::Nand => !(a & b),
            Op::Nor => !(a | b),
            Op::Xnor => !(a ^ b),
        }
    }

    /// The operator computing `!self(a, b)`.
    pub fn negated(self) -> Op {
        match self {
            Op::And => Op::Nand,
            Op::Or => Op::Nor,
            Op::Xor => Op::Xnor,
            Op::Nand => Op::And,
            Op::Nor => Op::Or,
            Op::Xnor => Op::Xor,
        }
    }

    pub fn is_zero_preserving(self) -> bool {
        !self.apply(false, false)
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::And => "AND",
            Op::Or => "OR",
            Op::Xor => "XOR",
            Op::Nand => "NAND",
            Op::Nor => "NOR",
            Op::Xnor => "XNOR",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Op::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| s.to_string())
    }
}

/// A polymorphic gate: `op1` in mode 1, `op2` in mode 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyGate {
    pub op1: Op,
    pub op2: Op,
}

impl PolyGate {
    pub const AND: PolyGate = PolyGate::new(Op::And, Op::And);
    pub const OR: PolyGate = PolyGate::new(Op::Or, Op::Or);

    pub const fn new(op1: Op, op2: Op) -> Self {
        PolyGate { op1, op2 }
    }

    pub fn op(self, mode: Mode) -> Op {
        match mode {
            Mode::One => self.op1,
            Mode::Two => self.op2,
        }
    }

    pub fn apply(self, mode: Mode, a: bool, b: bool) -> bool {
        self.op(mode).apply(a, b)
    }

    pub fn is_zero_preserving(self) -> bool {
        self.op1.is_zero_preserving() && self.op2.is_zero_preserving()
    }

    /// True when the two modes compute different operators.
    pub fn is_polymorphic(self) -> bool {
        self.op1 != self.op2
    }

    pub fn negated(self) -> PolyGate {
        PolyGate::new(self.op1.negated(), self.op2.negated())
    }

    /// All 36 ordered operator pairs.
    pub fn all() -> impl Iterator<Item = PolyGate> {
        Op::ALL
            .into_iter()
            .flat_map(|a| Op::ALL.into_iter().map(move |b| PolyGate::new(a, b)))
    }

    /// The 9 ordered pairs over {AND, OR, XOR}.
    pub fn zero_preserving() -> impl Iterator<Item = PolyGate> {
        Op::ZERO_PRESERVING.into_iter().flat_map(|a| {
            Op::ZERO_PRESERVING
                .into_iter()
                .map(move |b| PolyGate::new(a, b))
        })
    }
}

impl fmt::Display for PolyGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.op1, self.op2)
    }
}

impl FromStr for PolyGate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('/').ok_or_else(|| s.to_string())?;
        Ok(PolyGate::new(a.parse()?, b.parse()?))
    }
}

impl Serialize for PolyGate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PolyGate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse()
            .map_err(|bad| serde::de::Error::custom(format!("invalid gate {bad:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_tables() {
        let rows = [(false, false), (false, true), (true, false), (true, true)];
        let table = |op: Op| rows.map(|(a, b)| op.apply(a, b) as u8);
        assert_eq!(table(Op::And), [0, 0, 0, 1]);
        assert_eq!(table(Op::Or), [0, 1, 1, 1]);
        assert_eq!(table(Op::Xor), [0, 1, 1, 0]);
        assert_eq!(table(Op::Nand), [1, 1, 1, 0]);
        assert_eq!(table(Op::Nor), [1, 0, 0, 0]);
        assert_eq!(table(Op::Xnor), [1, 0, 0, 1]);
    }

    #[test]
    fn gate_sets() {
        assert_eq!(PolyGate::all().count(), 36);
        let zp: Vec<_> = PolyGate::zero_preserving().collect();
        assert_eq!(zp.len(), 9);
        assert!(zp.iter().all(|g| g.is_zero_preserving()));
        assert_eq!(
            PolyGate::all().filter(|g| g.is_zero_preserving()).count(),
            9
        );
    }

    #[test]
    fn gate_text() {
        let g: PolyGate = "XOR/OR".parse().unwrap();
        assert_eq!(g, PolyGate::new(Op::Xor, Op::Or));
        assert_eq!(g.to_string(), "XOR/OR");
        assert!("XOR".parse::<PolyGate>().is_err());
        assert!("XOR/IMP".parse::<PolyGate>().is_err());
    }
}
