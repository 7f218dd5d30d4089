//! Greedy polymorphic minimization and the comparison baselines.
//!
//! The cover loop treats every `(assignment, mode)` with `f_mode = 1` as one
//! unit of demand, regardless of whether the cell is 1/1, 1/0 or 0/1. Each
//! candidate term is exact on its region and 0 elsewhere, so any OR/OR sum of
//! candidates never produces a spurious 1 and the sum is equivalent as soon
//! as the demand is exhausted.

mod baseline;
mod exact;
mod pool;

use std::cmp::Reverse;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::par;
use crate::polyfunc::{
    first_mismatch, Assignment, CostReport, Mode, PolyExpr, PolyFunction, PolyGate, PolyValue,
};
use crate::rules::{tag_rule, RuleTag, Shape, TermCandidate};

pub use baseline::{baseline_mux, baseline_sop, mode_select};
pub use exact::{exact_search, EXACT_MAX_ARITY};
pub use pool::{candidate_pool, PoolStats};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizeConfig {
    pub max_arity: usize,
    /// Upper bound on pool size and on triple match attempts.
    pub max_candidates: usize,
    pub enable_triples: bool,
    /// Node budget for [`exact_search`].
    pub budget: usize,
    /// Cubes considered for pairs.
    pub max_pair_cubes: usize,
    /// Leading cubes of the pair universe that arbitrary triples draw from.
    pub max_triple_cubes: usize,
    /// Fan candidate generation and scoring out over threads (needs the
    /// `parallel` feature).
    pub parallel: bool,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            max_arity: 10,
            max_candidates: 50_000,
            enable_triples: true,
            budget: 15,
            max_pair_cubes: 256,
            max_triple_cubes: 24,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinimizeError {
    #[error("arity {n} exceeds limit {max}")]
    ArityOverLimit { n: usize, max: usize },
    #[error("candidate pool exhausted with {} uncovered (assignment, mode) cells, first {}", .0.len(), fmt_cells(.0))]
    Uncovered(Vec<(Assignment, Mode)>),
    #[error("internal error: cover does not reproduce the function at {0}")]
    Verification(String),
}

fn fmt_cells(cells: &[(Assignment, Mode)]) -> String {
    cells
        .iter()
        .take(8)
        .map(|(a, m)| format!("{a}@{m}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// A verified OR/OR sum of term candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub terms: Vec<TermCandidate>,
    pub expr: PolyExpr,
    pub cost: CostReport,
    pub stats: PoolStats,
}

impl Cover {
    /// Rule tags of the selected terms, in selection order.
    pub fn trace(&self) -> Vec<RuleTag> {
        self.terms.iter().map(tag_rule).collect()
    }

    pub fn uses_shape(&self, pred: impl Fn(Shape) -> bool) -> bool {
        self.terms.iter().any(|t| pred(t.shape))
    }
}

/// OR/OR sum of expressions, `0/0` for none.
pub fn sum_of(terms: impl IntoIterator<Item = PolyExpr>) -> PolyExpr {
    PolyExpr::fold(PolyGate::OR, terms).unwrap_or(PolyExpr::Const(PolyValue::ZERO))
}

fn count_common(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Remaining demand as one bitset per mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub mode1: FixedBitSet,
    pub mode2: FixedBitSet,
}

impl Demand {
    pub fn of(f: &PolyFunction) -> Demand {
        let mut d = Demand {
            mode1: FixedBitSet::with_capacity(f.len()),
            mode2: FixedBitSet::with_capacity(f.len()),
        };
        for (k, v) in f.cells().iter().enumerate() {
            d.mode1.set(k, v.mode1);
            d.mode2.set(k, v.mode2);
        }
        d
    }

    pub fn len(&self) -> usize {
        self.mode1.count_ones(..) + self.mode2.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Demand units of `self` that `t` covers.
    pub fn gain(&self, t: &TermCandidate) -> usize {
        count_common(&self.mode1, &t.region) + count_common(&self.mode2, &t.region)
    }

    pub fn remove(&mut self, t: &TermCandidate) {
        self.mode1.difference_with(&t.region);
        self.mode2.difference_with(&t.region);
    }

    pub fn cells(&self, n: usize) -> Vec<(Assignment, Mode)> {
        let mut out: Vec<(Assignment, Mode)> = self
            .mode1
            .ones()
            .map(|k| (Assignment::new(n, k as u32).expect("in range"), Mode::One))
            .chain(
                self.mode2
                    .ones()
                    .map(|k| (Assignment::new(n, k as u32).expect("in range"), Mode::Two)),
            )
            .collect();
        out.sort();
        out
    }
}

/// Greedy score: most new demand, then fewer literals, then fewer
/// polymorphic gates. Ties go to the earliest candidate.
pub fn score(demand: &Demand, t: &TermCandidate) -> (usize, Reverse<usize>, Reverse<usize>) {
    (
        demand.gain(t),
        Reverse(t.cost.literal_count),
        Reverse(t.cost.poly_gate_count),
    )
}

/// Indices of the `k` best-scoring candidates with positive gain, best first.
pub fn top_candidates(demand: &Demand, pool: &[TermCandidate], k: usize) -> Vec<usize> {
    let mut scored: Vec<(usize, _)> = pool
        .iter()
        .enumerate()
        .map(|(i, t)| (i, score(demand, t)))
        .filter(|(_, s)| s.0 > 0)
        .collect();
    scored.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.into_iter().take(k).map(|(i, _)| i).collect()
}

/// Greedy weighted set cover of the demand of `f` by rule candidates.
pub fn minimize(f: &PolyFunction, cfg: &MinimizeConfig) -> Result<Cover, MinimizeError> {
    if f.n() > cfg.max_arity {
        return Err(MinimizeError::ArityOverLimit {
            n: f.n(),
            max: cfg.max_arity,
        });
    }
    let mut demand = Demand::of(f);
    let (pool, stats) = if demand.is_empty() {
        (Vec::new(), PoolStats::default())
    } else {
        candidate_pool(f, cfg)
    };
    let mut terms = Vec::new();
    while !demand.is_empty() {
        let best = par::argmax_by_key(cfg.parallel, &pool, |t| score(&demand, t))
            .filter(|&i| demand.gain(&pool[i]) > 0);
        let Some(best) = best else {
            return Err(MinimizeError::Uncovered(demand.cells(f.n())));
        };
        let before = demand.len();
        demand.remove(&pool[best]);
        debug_assert!(demand.len() < before);
        terms.push(pool[best].clone());
    }
    let expr = sum_of(terms.iter().map(|t| t.expr.clone()));
    if let Some(m) = first_mismatch(&expr, f).expect("arity checked") {
        return Err(MinimizeError::Verification(m.to_string()));
    }
    Ok(Cover {
        cost: expr.cost(),
        terms,
        expr,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfunc::{equivalent, parse_expr, table_of};

    fn parity_majority() -> PolyFunction {
        PolyFunction::from_fn(4, |k| {
            PolyValue::new(k.count_ones() % 2 == 1, k.count_ones() >= 3)
        })
        .unwrap()
    }

    #[test]
    fn constant_zero_gives_empty_cover() {
        let f = PolyFunction::constant(3, PolyValue::ZERO).unwrap();
        let c = minimize(&f, &MinimizeConfig::default()).unwrap();
        assert!(c.terms.is_empty());
        assert_eq!(c.expr, PolyExpr::Const(PolyValue::ZERO));
    }

    #[test]
    fn constant_one_is_single_term() {
        let f = PolyFunction::constant(3, PolyValue::ONE).unwrap();
        let c = minimize(&f, &MinimizeConfig::default()).unwrap();
        assert_eq!(c.expr, PolyExpr::Const(PolyValue::ONE));
    }

    #[test]
    fn recovers_single_gate() {
        let f = table_of(&parse_expr("x1 AND/XOR x2").unwrap(), 2).unwrap();
        let c = minimize(&f, &MinimizeConfig::default()).unwrap();
        assert_eq!(c.expr.to_string(), "x1 AND/XOR x2");
    }

    #[test]
    fn parity_majority_verifies() {
        let f = parity_majority();
        let c = minimize(&f, &MinimizeConfig::default()).unwrap();
        assert!(equivalent(&c.expr, &f).unwrap());
        assert!(c.uses_shape(|s| s == Shape::Pair));
    }

    #[test]
    fn arity_limit() {
        let f = PolyFunction::constant(5, PolyValue::ONE).unwrap();
        let cfg = MinimizeConfig {
            max_arity: 4,
            ..MinimizeConfig::default()
        };
        assert_eq!(
            minimize(&f, &cfg),
            Err(MinimizeError::ArityOverLimit { n: 5, max: 4 })
        );
    }

    #[test]
    fn single_mode_point_without_triples_is_reported() {
        // A lone 1/0 cell needs a triple; with triples disabled the greedy
        // loop has to say so.
        let f = PolyFunction::from_fn(2, |k| {
            if k == 0 {
                PolyValue::new(true, false)
            } else {
                PolyValue::ZERO
            }
        })
        .unwrap();
        let cfg = MinimizeConfig {
            enable_triples: false,
            ..MinimizeConfig::default()
        };
        match minimize(&f, &cfg) {
            Err(MinimizeError::Uncovered(cells)) => {
                assert_eq!(cells.len(), 1);
                assert_eq!(cells[0].0.to_string(), "00");
                assert_eq!(cells[0].1, Mode::One);
            }
            other => panic!("expected uncovered report, got {other:?}"),
        }
        assert!(minimize(&f, &MinimizeConfig::default()).is_ok());
    }

    #[test]
    fn deterministic_and_parallel_agnostic() {
        let f = parity_majority();
        let a = minimize(&f, &MinimizeConfig::default()).unwrap();
        let b = minimize(&f, &MinimizeConfig::default()).unwrap();
        let seq = minimize(
            &f,
            &MinimizeConfig {
                parallel: false,
                ..MinimizeConfig::default()
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, seq);
    }
}
