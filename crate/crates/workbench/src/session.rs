//! Session state for the manual simplification flow.
//!
//! Accepted terms are the only coverage state; the remaining demand is
//! always recomputed from them. Offers (candidates returned by the latest
//! try-group or hint) live beside the state and are replaced wholesale, so
//! an id can only be accepted once and only against the state it was
//! computed for.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use polykmap_core::cubes::Cube;
use polykmap_core::minimizer::{candidate_pool, sum_of, top_candidates, Demand};
use polykmap_core::polyfunc::{first_mismatch, Mode, PolyExpr, PolyFunction};
use polykmap_core::rules::{match_pair, match_single, match_triple, CandidateView, RuleError};
use polykmap_core::{MinimizeConfig, TermCandidate};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("{0}")]
    BadRequest(String),
    #[error("candidate {0:?} is stale or unknown")]
    StaleCandidate(String),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("assembled expression disagrees with the function at {0}")]
    Internal(String),
}

impl From<RuleError> for SessionError {
    fn from(e: RuleError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Accept(PolyExpr),
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub function: PolyFunction,
    pub mode_names: Option<(String, String)>,
    pub accepted: Vec<TermCandidate>,
    pub history: Vec<Action>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemandCell {
    pub cell: String,
    pub index: u32,
    pub mode: Mode,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateView {
    pub schema: u32,
    pub id: String,
    pub demand_remaining: Vec<DemandCell>,
    pub expr: String,
    pub complete: bool,
    pub accepted: Vec<CandidateView>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Offer {
    pub id: String,
    pub newly_covered: usize,
    #[serde(flatten)]
    pub candidate: CandidateView,
}

impl Session {
    pub fn new(id: String, function: PolyFunction, mode_names: Option<(String, String)>) -> Self {
        Session {
            id,
            function,
            mode_names,
            accepted: Vec::new(),
            history: Vec::new(),
        }
    }

    pub fn demand_remaining(&self) -> Demand {
        let mut d = Demand::of(&self.function);
        for t in &self.accepted {
            d.remove(t);
        }
        d
    }

    pub fn expr(&self) -> PolyExpr {
        sum_of(self.accepted.iter().map(|t| t.expr.clone()))
    }

    /// Complete means no demand left and the assembled sum reproduces the
    /// function; a sum that covers everything but disagrees is an error.
    pub fn complete(&self) -> Result<bool, SessionError> {
        if !self.demand_remaining().is_empty() {
            return Ok(false);
        }
        match first_mismatch(&self.expr(), &self.function).expect("arity") {
            None => Ok(true),
            Some(m) => Err(SessionError::Internal(m.to_string())),
        }
    }

    pub fn view(&self) -> Result<StateView, SessionError> {
        let demand = self
            .demand_remaining()
            .cells(self.function.n())
            .into_iter()
            .map(|(a, mode)| DemandCell {
                cell: a.to_string(),
                index: a.index(),
                mode,
            })
            .collect();
        Ok(StateView {
            schema: crate::SCHEMA,
            id: self.id.clone(),
            demand_remaining: demand,
            expr: self.expr().to_string(),
            complete: self.complete()?,
            accepted: self.accepted.iter().map(TermCandidate::view).collect(),
        })
    }

    /// Hash of the coverage state (function, accepted terms, history).
    pub fn state_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.function.hash(&mut h);
        for t in &self.accepted {
            t.expr.hash(&mut h);
        }
        self.history.hash(&mut h);
        h.finish()
    }

    fn parse_cubes(&self, cubes: &[String]) -> Result<Vec<Cube>, SessionError> {
        if !(1..=3).contains(&cubes.len()) {
            return Err(SessionError::BadRequest(format!(
                "expected 1 to 3 cubes, got {}",
                cubes.len()
            )));
        }
        cubes
            .iter()
            .map(|s| {
                let c: Cube = s.parse().map_err(|e: polykmap_core::CubeError| {
                    SessionError::BadRequest(e.to_string())
                })?;
                if c.n() != self.function.n() {
                    return Err(SessionError::BadRequest(format!(
                        "cube {s:?} has {} variables, session has {}",
                        c.n(),
                        self.function.n()
                    )));
                }
                Ok(c)
            })
            .collect()
    }

    /// Runs the matcher for 1–3 cubes. Does not touch the session.
    pub fn try_group(&self, cubes: &[String]) -> Result<Vec<TermCandidate>, SessionError> {
        let cubes = self.parse_cubes(cubes)?;
        let f = &self.function;
        Ok(match cubes[..] {
            [a] => match_single(f, &a)?.into_iter().collect(),
            [a, b] => match_pair(f, &a, &b)?,
            [a, b, c] => match_triple(f, &a, &b, &c)?,
            _ => unreachable!("length checked"),
        })
    }

    /// The best `k` candidates of the minimizer's pool for the remaining
    /// demand.
    pub fn hint(&self, pool: &[TermCandidate], k: usize) -> Vec<TermCandidate> {
        let demand = self.demand_remaining();
        top_candidates(&demand, pool, k)
            .into_iter()
            .map(|i| pool[i].clone())
            .collect()
    }

    pub fn hint_pool(&self) -> Vec<TermCandidate> {
        candidate_pool(&self.function, &MinimizeConfig::default()).0
    }

    pub fn accept(&mut self, term: TermCandidate) {
        self.history.push(Action::Accept(term.expr.clone()));
        self.accepted.push(term);
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        match self.history.pop() {
            Some(Action::Accept(_)) => {
                self.accepted.pop();
                Ok(())
            }
            None => Err(SessionError::NothingToUndo),
        }
    }

    /// Wraps candidates as offers with fresh ids.
    pub fn offers(
        &self,
        candidates: Vec<TermCandidate>,
    ) -> (Vec<Offer>, HashMap<String, TermCandidate>) {
        let demand = self.demand_remaining();
        let mut table = HashMap::new();
        let offers = candidates
            .into_iter()
            .map(|t| {
                let id = uuid::Uuid::new_v4().simple().to_string();
                let offer = Offer {
                    id: id.clone(),
                    newly_covered: demand.gain(&t),
                    candidate: t.view(),
                };
                table.insert(id, t);
                offer
            })
            .collect();
        (offers, table)
    }
}
