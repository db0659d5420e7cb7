//! Dependency problems: a requirement plus a monotone cost, minimized over
//! the states that satisfy it. Monotonicity means only minimal models matter.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::completion::BlLattice;
use crate::dsc::EventId;
use crate::error::{Error, Result};
use crate::logic::{Formula, RequirementAlgebra};
use crate::nucleus::Nucleus;
use crate::rdp::RdpLattice;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    Cardinality,
    /// Events without a weight cost nothing.
    Weighted { weights: BTreeMap<EventId, f64> },
    /// Number of listed pairs fully present.
    Conflicts { pairs: Vec<(EventId, EventId)> },
}

impl Objective {
    pub fn validate(&self, r: &RdpLattice) -> Result<()> {
        let known = |e: &EventId| -> Result<()> {
            if r.events().contains(e) {
                Ok(())
            } else {
                Err(Error::InvalidObjective(format!("unknown event `{e}`")))
            }
        };
        match self {
            Objective::Cardinality => Ok(()),
            Objective::Weighted { weights } => {
                for (e, w) in weights {
                    known(e)?;
                    if !(w.is_finite() && *w >= 0.0) {
                        return Err(Error::InvalidObjective(format!("weight of `{e}` must be a nonnegative number")));
                    }
                }
                Ok(())
            }
            Objective::Conflicts { pairs } => {
                for (a, b) in pairs {
                    known(a)?;
                    known(b)?;
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self, state: &BTreeSet<EventId>) -> f64 {
        match self {
            Objective::Cardinality => state.len() as f64,
            Objective::Weighted { weights } => state.iter().map(|e| weights.get(e).copied().unwrap_or(0.0)).sum(),
            Objective::Conflicts { pairs } => {
                pairs.iter().filter(|(a, b)| state.contains(a) && state.contains(b)).count() as f64
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct DependencyProblem {
    pub formula: Formula,
    pub objective: Objective,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub state: Vec<EventId>,
    /// Completion element of the chosen minimal model.
    pub trace_state: String,
    pub value: f64,
    /// Event sets of every optimal minimal model, in tie-break order.
    pub all_optima: Vec<Vec<EventId>>,
}

/// Minimal elements of the completion satisfying `f`, as lattice indices.
/// `modality` interprets `<>` as a map on completion elements.
pub fn minimal_models(b: &BlLattice, f: &Formula, modality: Option<&Nucleus>) -> Result<Vec<usize>> {
    let alg = RequirementAlgebra::for_bl(b);
    let req = alg.eval(f, modality.map(|n| n.map()))?;
    // Reduced clauses are exactly the minimal satisfying downsets.
    let mut out: Vec<usize> = req
        .clauses()
        .iter()
        .map(|c| b.states().index_of(c).expect("clauses are downsets"))
        .collect();
    out.sort();
    Ok(out)
}

/// Events of a completion element: the union of its irreducibles' states.
pub fn event_set(r: &RdpLattice, b: &BlLattice, element: usize) -> BTreeSet<EventId> {
    let mut s = BitSet::new();
    for j in b.states().set(element).iter() {
        s.union_with(r.state(b.irreducible_sources()[j]));
    }
    r.names(&s).into_iter().collect()
}

pub fn solve(r: &RdpLattice, b: &BlLattice, p: &DependencyProblem) -> Result<Solution> {
    solve_with(r, b, p, None)
}

pub fn solve_with(r: &RdpLattice, b: &BlLattice, p: &DependencyProblem, modality: Option<&Nucleus>) -> Result<Solution> {
    p.objective.validate(r)?;
    let models = minimal_models(b, &p.formula, modality)?;
    let mut scored: Vec<(f64, Vec<EventId>, usize)> = models
        .into_iter()
        .map(|m| {
            let events = event_set(r, b, m);
            (p.objective.evaluate(&events), events.into_iter().collect(), m)
        })
        .collect();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    let Some((best, state, element)) = scored.first().cloned() else {
        return Err(Error::Unsatisfiable);
    };
    let mut all_optima: Vec<Vec<EventId>> = scored.into_iter().filter(|s| s.0 == best).map(|s| s.1).collect();
    all_optima.dedup();
    Ok(Solution { state, trace_state: b.lattice().id(element).to_string(), value: best, all_optima })
}
