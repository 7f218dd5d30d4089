use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the two operating modes of a polymorphic circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::One, Mode::Two];

    /// 1 or 2.
    pub fn number(self) -> u8 {
        match self {
            Mode::One => 1,
            Mode::Two => 2,
        }
    }

    pub fn from_number(m: u8) -> Option<Mode> {
        match m {
            1 => Some(Mode::One),
            2 => Some(Mode::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A polymorphic cell value: the pair (mode-1 bit, mode-2 bit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PolyValue {
    pub mode1: bool,
    pub mode2: bool,
}

impl PolyValue {
    pub const ZERO: PolyValue = PolyValue::new(false, false);
    pub const ONE: PolyValue = PolyValue::new(true, true);

    /// All four values in the order 0/0, 0/1, 1/0, 1/1.
    pub const ALL: [PolyValue; 4] = [
        PolyValue::new(false, false),
        PolyValue::new(false, true),
        PolyValue::new(true, false),
        PolyValue::new(true, true),
    ];

    pub const fn new(mode1: bool, mode2: bool) -> Self {
        PolyValue { mode1, mode2 }
    }

    pub fn get(self, mode: Mode) -> bool {
        match mode {
            Mode::One => self.mode1,
            Mode::Two => self.mode2,
        }
    }

    /// Mode-uniform complement.
    pub fn complement(self) -> Self {
        PolyValue::new(!self.mode1, !self.mode2)
    }

    /// Two-bit code `mode1 << 1 | mode2`, matching the order of [`PolyValue::ALL`].
    pub fn code(self) -> u8 {
        (self.mode1 as u8) << 1 | self.mode2 as u8
    }

    pub fn from_code(code: u8) -> Self {
        PolyValue::new(code & 2 != 0, code & 1 != 0)
    }
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.mode1 as u8, self.mode2 as u8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid polymorphic value {0:?}, expected one of 0/0, 0/1, 1/0, 1/1")]
pub struct ParseValueError(pub String);

impl FromStr for PolyValue {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bit = |c: u8| match c {
            b'0' => Some(false),
            b'1' => Some(true),
            _ => None,
        };
        match s.as_bytes() {
            [a, b'/', b] => match (bit(*a), bit(*b)) {
                (Some(m1), Some(m2)) => Ok(PolyValue::new(m1, m2)),
                _ => Err(ParseValueError(s.to_string())),
            },
            _ => Err(ParseValueError(s.to_string())),
        }
    }
}

impl Serialize for PolyValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PolyValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
