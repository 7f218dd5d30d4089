//! Single-mode benchmark functions and their pairing into polymorphic
//! functions.
//!
//! Spec syntax: `<mode1>/<mode2>`, each side one of `parity<N>`,
//! `majority<N>`, `multiplier<A>x<B>[:<out>]`, `sortingnet<N>[:<out>]`.
//! Output indices are 0-based and default to 2.

use std::fmt;
use std::str::FromStr;

use crate::polyfunc::{PolyFunction, MAX_ARITY};

pub const DEFAULT_OUT_INDEX: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchmarkError {
    #[error("unknown benchmark {0:?}")]
    Unknown(String),
    #[error("arity mismatch between modes: {0} has {1} inputs, {2} has {3}")]
    ArityMismatch(String, usize, String, usize),
    #[error("invalid benchmark parameters: {0}")]
    Params(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Benchmark {
    /// XOR of all inputs.
    Parity(usize),
    /// 1 iff more than half of the inputs are 1.
    Majority(usize),
    /// Bit `out` (0 = least significant) of `a * b`; inputs are the bits of
    /// `a` then `b`, most significant first.
    Multiplier {
        a_bits: usize,
        b_bits: usize,
        out: usize,
    },
    /// Output `out` of a descending sorting network: 1 iff at least
    /// `out + 1` inputs are 1.
    SortingNet { n: usize, out: usize },
}

impl Benchmark {
    pub fn arity(&self) -> usize {
        match *self {
            Benchmark::Parity(n) | Benchmark::Majority(n) => n,
            Benchmark::Multiplier { a_bits, b_bits, .. } => a_bits + b_bits,
            Benchmark::SortingNet { n, .. } => n,
        }
    }

    pub fn eval(&self, index: u32) -> bool {
        let ones = index.count_ones() as usize;
        match *self {
            Benchmark::Parity(_) => ones % 2 == 1,
            Benchmark::Majority(n) => 2 * ones > n,
            Benchmark::Multiplier { b_bits, out, .. } => {
                let a = (index >> b_bits) as u64;
                let b = (index & ((1 << b_bits) - 1)) as u64;
                (a * b) >> out & 1 == 1
            }
            Benchmark::SortingNet { out, .. } => ones > out,
        }
    }

    pub fn table(&self) -> Vec<bool> {
        (0..1u32 << self.arity()).map(|k| self.eval(k)).collect()
    }

    fn validate(self) -> Result<Self, BenchmarkError> {
        let n = self.arity();
        if n == 0 || n > MAX_ARITY {
            return Err(BenchmarkError::Params(format!(
                "{self}: arity {n} outside 1..=16"
            )));
        }
        match self {
            Benchmark::Multiplier {
                a_bits,
                b_bits,
                out,
            } if a_bits == 0 || b_bits == 0 || out >= a_bits + b_bits => Err(
                BenchmarkError::Params(format!("{self}: output index out of range")),
            ),
            Benchmark::SortingNet { n, out } if out >= n => Err(BenchmarkError::Params(format!(
                "{self}: output index out of range"
            ))),
            b => Ok(b),
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Benchmark::Parity(n) => write!(f, "parity{n}"),
            Benchmark::Majority(n) => write!(f, "majority{n}"),
            Benchmark::Multiplier {
                a_bits,
                b_bits,
                out,
            } => {
                write!(f, "multiplier{a_bits}x{b_bits}:{out}")
            }
            Benchmark::SortingNet { n, out } => write!(f, "sortingnet{n}:{out}"),
        }
    }
}

impl FromStr for Benchmark {
    type Err = BenchmarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || BenchmarkError::Unknown(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let (body, out) = match s.split_once(':') {
            Some((body, out)) => (body, Some(num(out)?)),
            None => (s, None),
        };
        let bench = if let Some(n) = body.strip_prefix("parity") {
            out.map_or(Ok(()), |_| Err(unknown()))?;
            Benchmark::Parity(num(n)?)
        } else if let Some(n) = body.strip_prefix("majority") {
            out.map_or(Ok(()), |_| Err(unknown()))?;
            Benchmark::Majority(num(n)?)
        } else if let Some(dims) = body.strip_prefix("multiplier") {
            let (a, b) = dims.split_once('x').ok_or_else(unknown)?;
            Benchmark::Multiplier {
                a_bits: num(a)?,
                b_bits: num(b)?,
                out: out.unwrap_or(DEFAULT_OUT_INDEX),
            }
        } else if let Some(n) = body.strip_prefix("sortingnet") {
            Benchmark::SortingNet {
                n: num(n)?,
                out: out.unwrap_or(DEFAULT_OUT_INDEX),
            }
        } else {
            return Err(unknown());
        };
        bench.validate()
    }
}

/// Parses `<mode1>/<mode2>`.
pub fn parse_benchmark_spec(spec: &str) -> Result<(Benchmark, Benchmark), BenchmarkError> {
    let (a, b) = spec
        .split_once('/')
        .ok_or_else(|| BenchmarkError::Unknown(spec.to_string()))?;
    let (a, b): (Benchmark, Benchmark) = (a.trim().parse()?, b.trim().parse()?);
    if a.arity() != b.arity() {
        return Err(BenchmarkError::ArityMismatch(
            a.to_string(),
            a.arity(),
            b.to_string(),
            b.arity(),
        ));
    }
    Ok((a, b))
}

/// Zips the two mode tables named by `spec`.
pub fn gen_benchmark(spec: &str) -> Result<PolyFunction, BenchmarkError> {
    let (a, b) = parse_benchmark_spec(spec)?;
    PolyFunction::from_modes(&a.table(), &b.table())
        .map_err(|e| BenchmarkError::Params(e.to_string()))
}
