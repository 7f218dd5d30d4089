//! `.ppla`: a PLA-like text format for one polymorphic output.
//!
//! ```text
//! # 4-parity / 4-majority
//! .i 4
//! .m 2
//! .ob parity4 majority4
//! 0001 1/0
//! 0111 1/1
//! .e
//! ```
//!
//! Rows not listed are 0/0.

use std::fmt::Write as _;

use crate::polyfunc::{PolyFunction, PolyValue, MAX_ARITY};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PplaError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate row {bits}")]
    DuplicateRow { line: usize, bits: String },
    #[error("missing .i directive")]
    MissingInputs,
    #[error("missing .e terminator")]
    MissingEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PplaDocument {
    pub n: usize,
    pub mode_names: Option<(String, String)>,
    /// `(assignment index, value)` in document order.
    pub rows: Vec<(u32, PolyValue)>,
}

impl PplaDocument {
    pub fn parse(text: &str) -> Result<PplaDocument, PplaError> {
        let mut n: Option<usize> = None;
        let mut mode_names = None;
        let mut rows: Vec<(u32, PolyValue)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut ended = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| PplaError::Syntax { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().expect("non-empty line");
            let rest: Vec<&str> = parts.collect();
            match head {
                ".i" => {
                    if n.is_some() {
                        return Err(err("repeated .i".into()));
                    }
                    let [count] = rest[..] else {
                        return Err(err(".i takes one argument".into()));
                    };
                    let count: usize = count
                        .parse()
                        .map_err(|_| err(format!("bad input count {count:?}")))?;
                    if count == 0 || count > MAX_ARITY {
                        return Err(err(format!("input count {count} outside 1..=16")));
                    }
                    n = Some(count);
                }
                ".m" => match rest[..] {
                    ["2"] => {}
                    _ => return Err(err(format!(".m must be 2, got {:?}", rest.join(" ")))),
                },
                ".ob" => {
                    let [a, b] = rest[..] else {
                        return Err(err(".ob takes two names".into()));
                    };
                    mode_names = Some((a.to_string(), b.to_string()));
                }
                ".e" => {
                    if !rest.is_empty() {
                        return Err(err(".e takes no arguments".into()));
                    }
                    ended = true;
                    break;
                }
                d if d.starts_with('.') => return Err(err(format!("unknown directive {d}"))),
                bits => {
                    let width = n.ok_or(PplaError::MissingInputs)?;
                    let [value] = rest[..] else {
                        return Err(err("row must be `<bits> <a>/<b>`".into()));
                    };
                    if bits.len() != width || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                        return Err(err(format!("row {bits:?} is not {width} bits")));
                    }
                    let index = u32::from_str_radix(bits, 2).expect("validated bits");
                    let value: PolyValue = value.parse().map_err(|e| err(format!("{e}")))?;
                    if !seen.insert(index) {
                        return Err(PplaError::DuplicateRow {
                            line: line_no,
                            bits: bits.to_string(),
                        });
                    }
                    rows.push((index, value));
                }
            }
        }
        let n = n.ok_or(PplaError::MissingInputs)?;
        if !ended {
            return Err(PplaError::MissingEnd);
        }
        Ok(PplaDocument {
            n,
            mode_names,
            rows,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, ".i {}", self.n).unwrap();
        writeln!(out, ".m 2").unwrap();
        if let Some((a, b)) = &self.mode_names {
            writeln!(out, ".ob {a} {b}").unwrap();
        }
        for (index, value) in &self.rows {
            writeln!(out, "{:0width$b} {value}", index, width = self.n).unwrap();
        }
        out.push_str(".e\n");
        out
    }

    /// Rows sorted ascending.
    pub fn canonicalize(mut self) -> Self {
        self.rows.sort();
        self
    }

    pub fn to_function(&self) -> PolyFunction {
        let mut cells = vec![PolyValue::ZERO; 1 << self.n];
        for &(k, v) in &self.rows {
            cells[k as usize] = v;
        }
        PolyFunction::new(self.n, cells).expect("arity validated on parse")
    }

    /// Canonical document listing every non-0/0 cell.
    pub fn from_function(f: &PolyFunction, mode_names: Option<(String, String)>) -> Self {
        PplaDocument {
            n: f.n(),
            mode_names,
            rows: f
                .cells()
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != PolyValue::ZERO)
                .map(|(k, v)| (k as u32, *v))
                .collect(),
        }
    }
}
