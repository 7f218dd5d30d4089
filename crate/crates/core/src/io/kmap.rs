//! Polymorphic Karnaugh maps: rows are the low-indexed `⌊n/2⌋` variables,
//! columns the rest, both in Gray order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::polyfunc::PolyFunction;

pub const KMAP_MIN_ARITY: usize = 2;
pub const KMAP_MAX_ARITY: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("K-map rendering supports 2..=6 variables, got {0}")]
pub struct KmapArityError(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmapLayout {
    pub row_vars: Vec<u16>,
    pub col_vars: Vec<u16>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// `grid[r][c]` is the assignment index shown at row `r`, column `c`.
    pub grid: Vec<Vec<u32>>,
}

fn gray(bits: usize) -> Vec<u32> {
    (0..1u32 << bits).map(|i| i ^ (i >> 1)).collect()
}

pub fn kmap_layout(n: usize) -> Result<KmapLayout, KmapArityError> {
    if !(KMAP_MIN_ARITY..=KMAP_MAX_ARITY).contains(&n) {
        return Err(KmapArityError(n));
    }
    let rbits = n / 2;
    let cbits = n - rbits;
    let rows = gray(rbits);
    let cols = gray(cbits);
    let label = |code: u32, width: usize| format!("{code:0width$b}");
    Ok(KmapLayout {
        row_vars: (1..=rbits as u16).collect(),
        col_vars: (rbits as u16 + 1..=n as u16).collect(),
        row_labels: rows.iter().map(|&r| label(r, rbits)).collect(),
        col_labels: cols.iter().map(|&c| label(c, cbits)).collect(),
        grid: rows
            .iter()
            .map(|&r| cols.iter().map(|&c| r << cbits | c).collect())
            .collect(),
    })
}

pub fn render_kmap(f: &PolyFunction) -> Result<String, KmapArityError> {
    let layout = kmap_layout(f.n())?;
    let vars = |vs: &[u16]| vs.iter().map(|v| format!("x{v}")).collect::<String>();
    let corner = format!("{}\\{}", vars(&layout.row_vars), vars(&layout.col_vars));
    let cell_w = layout.col_labels[0].len().max(3);
    let mut out = String::new();
    write!(out, "{corner}").unwrap();
    for c in &layout.col_labels {
        write!(out, " {c:>cell_w$}").unwrap();
    }
    out.push('\n');
    for (label, row) in layout.row_labels.iter().zip(&layout.grid) {
        write!(out, "{label:>w$}", w = corner.len()).unwrap();
        for &k in row {
            write!(out, " {:>cell_w$}", f.get(k).to_string()).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
