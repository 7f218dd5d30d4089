use std::fmt;
use std::str::FromStr;

use super::{Mode, PolyError, PolyExpr, PolyValue};

/// Largest supported variable count.
pub const MAX_ARITY: usize = 16;

/// Values for variables `x_1..x_n`, stored as the integer encoding where
/// `x_1` is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    n: u8,
    index: u32,
}

impl Assignment {
    pub fn new(n: usize, index: u32) -> Result<Self, PolyError> {
        check_arity(n)?;
        if (index as u64) >> n != 0 {
            return Err(PolyError::IndexRange { index, n });
        }
        Ok(Assignment { n: n as u8, index })
    }

    pub(crate) fn new_unchecked(n: usize, index: u32) -> Self {
        Assignment { n: n as u8, index }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, PolyError> {
        check_arity(bits.len())?;
        let index = bits.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
        Ok(Assignment {
            n: bits.len() as u8,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Value of variable `x_var` (1-based).
    pub fn get(&self, var: u16) -> Result<bool, PolyError> {
        let var = var as usize;
        if var == 0 || var > self.n() {
            return Err(PolyError::Arity { var, n: self.n() });
        }
        Ok((self.index >> (self.n() - var)) & 1 == 1)
    }

    pub fn bits(&self) -> Vec<bool> {
        (1..=self.n as u16).map(|v| self.get(v).unwrap()).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return Ok(());
        }
        write!(f, "{:0width$b}", self.index, width = self.n())
    }
}

impl FromStr for Assignment {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(PolyError::BadBits(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Assignment::from_bits(&bits)
    }
}

fn check_arity(n: usize) -> Result<(), PolyError> {
    if n == 0 || n > MAX_ARITY {
        Err(PolyError::ArityRange(n))
    } else {
        Ok(())
    }
}

/// A polymorphic Boolean function `f1/f2` as a complete table of `2^n`
/// paired values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFunction {
    n: usize,
    cells: Vec<PolyValue>,
}

impl PolyFunction {
    pub fn new(n: usize, cells: Vec<PolyValue>) -> Result<Self, PolyError> {
        check_arity(n)?;
        if cells.len() != 1 << n {
            return Err(PolyError::CellCount {
                expected: 1 << n,
                got: cells.len(),
            });
        }
        Ok(PolyFunction { n, cells })
    }

    pub fn constant(n: usize, value: PolyValue) -> Result<Self, PolyError> {
        PolyFunction::new(n, vec![value; 1 << n])
    }

    /// Pairs two single-mode truth tables of equal length.
    pub fn from_modes(mode1: &[bool], mode2: &[bool]) -> Result<Self, PolyError> {
        if mode1.len() != mode2.len() {
            return Err(PolyError::CellCount {
                expected: mode1.len(),
                got: mode2.len(),
            });
        }
        let n = mode1.len().trailing_zeros() as usize;
        let cells = mode1
            .iter()
            .zip(mode2)
            .map(|(&a, &b)| PolyValue::new(a, b))
            .collect();
        PolyFunction::new(n, cells)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> PolyValue) -> Result<Self, PolyError> {
        check_arity(n)?;
        Ok(PolyFunction {
            n,
            cells: (0..1u32 << n).map(&mut f).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[PolyValue] {
        &self.cells
    }

    pub fn get(&self, index: u32) -> PolyValue {
        self.cells[index as usize]
    }

    pub fn at(&self, a: &Assignment) -> Result<PolyValue, PolyError> {
        if a.n() != self.n {
            return Err(PolyError::ArityMismatch {
                expected: self.n,
                got: a.n(),
            });
        }
        Ok(self.get(a.index()))
    }

    pub fn bit(&self, index: u32, mode: Mode) -> bool {
        self.get(index).get(mode)
    }

    /// The single-mode truth table `f_mode`.
    pub fn mode_view(&self, mode: Mode) -> Vec<bool> {
        self.cells.iter().map(|v| v.get(mode)).collect()
    }

    /// `(index, mode)` pairs where the function is 1, mode-1 entries first.
    pub fn demand(&self) -> Vec<(u32, Mode)> {
        Mode::BOTH
            .into_iter()
            .flat_map(|m| {
                (0..self.cells.len() as u32)
                    .filter(move |&k| self.cells[k as usize].get(m))
                    .map(move |k| (k, m))
            })
            .collect()
    }
}

/// Tabulates `expr` over all `2^n` assignments in both modes.
pub fn table_of(expr: &PolyExpr, n: usize) -> Result<PolyFunction, PolyError> {
    check_arity(n)?;
    expr.check_arity(n)?;
    let w1 = expr.mode_words(n, Mode::One);
    let w2 = expr.mode_words(n, Mode::Two);
    let bit = |w: &[u64], k: usize| (w[k / 64] >> (k % 64)) & 1 == 1;
    let cells = (0..1usize << n)
        .map(|k| PolyValue::new(bit(&w1, k), bit(&w2, k)))
        .collect();
    Ok(PolyFunction { n, cells })
}

/// A cell where an expression and a function disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub assignment: Assignment,
    pub mode: Mode,
    pub expected: bool,
    pub got: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "assignment={} mode={} expected={} got={}",
            self.assignment, self.mode, self.expected as u8, self.got as u8
        )
    }
}

/// First differing `(assignment, mode)` in ascending index order, mode 1
/// before mode 2.
pub fn first_mismatch(expr: &PolyExpr, f: &PolyFunction) -> Result<Option<Mismatch>, PolyError> {
    let table = table_of(expr, f.n())?;
    Ok(table
        .cells
        .iter()
        .zip(&f.cells)
        .enumerate()
        .find_map(|(k, (got, want))| {
            Mode::BOTH
                .into_iter()
                .find(|&m| got.get(m) != want.get(m))
                .map(|m| Mismatch {
                    assignment: Assignment::new_unchecked(f.n(), k as u32),
                    mode: m,
                    expected: want.get(m),
                    got: got.get(m),
                })
        }))
}

/// True iff `expr` reproduces `f` in both modes on every assignment.
pub fn equivalent(expr: &PolyExpr, f: &PolyFunction) -> Result<bool, PolyError> {
    Ok(table_of(expr, f.n())?.cells == f.cells)
}
