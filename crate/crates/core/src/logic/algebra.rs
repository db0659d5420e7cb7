//! Requirements as irredundant DNF over a base poset. A clause is a downset
//! of the base (the conjunction of its members); a requirement is an
//! antichain of clauses. Its models are the downsets containing some clause.

use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::completion::BlLattice;
use crate::error::{Error, Result};
use crate::logic::formula::{Atom, Formula};
use crate::order::{downsets, FinitePoset, SetLattice};

/// Minimal clauses, sorted. Equal requirements have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Requirement {
    clauses: Vec<BitSet>,
}

impl Requirement {
    pub fn clauses(&self) -> &[BitSet] {
        &self.clauses
    }

    pub fn is_true(&self) -> bool {
        self.clauses.len() == 1 && self.clauses[0].is_empty()
    }

    pub fn is_false(&self) -> bool {
        self.clauses.is_empty()
    }
}

/// How atoms name base elements.
#[derive(Clone, Debug)]
struct AtomKey {
    event: String,
    /// Other events of the trace; `None` when the base carries no traces.
    context: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct RequirementAlgebra {
    base: FinitePoset,
    states: SetLattice,
    keys: Vec<AtomKey>,
}

impl RequirementAlgebra {
    /// Atoms are the base ids.
    pub fn new(base: FinitePoset) -> Self {
        let keys = base.ids().iter().map(|id| AtomKey { event: id.clone(), context: None }).collect();
        let states = downsets(&base);
        RequirementAlgebra { base, states, keys }
    }

    /// Base = the irreducibles of the completion; atoms resolve through
    /// trace labels when present.
    pub fn for_bl(b: &BlLattice) -> Self {
        let base = b.irreducibles().clone();
        let keys = match b.labels() {
            Some(labels) => labels
                .iter()
                .map(|l| AtomKey {
                    event: l.event.to_string(),
                    context: Some(l.context().iter().map(|e| e.to_string()).collect()),
                })
                .collect(),
            None => base.ids().iter().map(|id| AtomKey { event: id.clone(), context: None }).collect(),
        };
        RequirementAlgebra { states: b.states().clone(), base, keys }
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// Downsets of the base: the states requirements are evaluated on.
    pub fn states(&self) -> &SetLattice {
        &self.states
    }

    pub fn truth(&self) -> Requirement {
        Requirement { clauses: vec![BitSet::new()] }
    }

    pub fn falsity(&self) -> Requirement {
        Requirement { clauses: Vec::new() }
    }

    /// Requirement that base element `j` is present.
    pub fn atom(&self, j: usize) -> Requirement {
        Requirement { clauses: vec![self.base.down_set(j).clone()] }
    }

    /// Requirement with a single clause; `clause` must be a downset.
    pub fn clause(&self, clause: BitSet) -> Requirement {
        debug_assert!(self.base.is_downset(&clause));
        Requirement { clauses: vec![clause] }
    }

    /// Drops clauses that contain another clause.
    pub fn reduce(&self, mut clauses: Vec<BitSet>) -> Requirement {
        clauses.sort();
        clauses.dedup();
        // Sorted by size first, so any subset of a clause comes before it.
        let mut kept: Vec<BitSet> = Vec::with_capacity(clauses.len());
        for c in clauses {
            if !kept.iter().any(|k| k.is_subset(&c)) {
                kept.push(c);
            }
        }
        Requirement { clauses: kept }
    }

    pub fn and(&self, x: &Requirement, y: &Requirement) -> Requirement {
        let mut out = Vec::with_capacity(x.clauses.len() * y.clauses.len());
        for a in &x.clauses {
            for b in &y.clauses {
                out.push(a.union(b));
            }
        }
        self.reduce(out)
    }

    pub fn or(&self, x: &Requirement, y: &Requirement) -> Requirement {
        self.reduce(x.clauses.iter().chain(&y.clauses).cloned().collect())
    }

    /// Weakest requirement whose conjunction with `x` entails `y`.
    pub fn implies(&self, x: &Requirement, y: &Requirement) -> Requirement {
        let bad = self.models(x).difference(&self.models(y));
        let blocked = self.states.poset().down_closure(&bad);
        let all = BitSet::full(self.states.len());
        self.from_models(&all.difference(&blocked))
    }

    /// State indices satisfying `x`.
    pub fn models(&self, x: &Requirement) -> BitSet {
        (0..self.states.len())
            .filter(|&s| x.clauses.iter().any(|c| c.is_subset(self.states.set(s))))
            .collect()
    }

    /// Inverse of `models`; `m` must be an up-set of states.
    pub fn from_models(&self, m: &BitSet) -> Requirement {
        let minimal = self.states.poset().minimal_in(m);
        self.reduce(minimal.iter().map(|s| self.states.set(s).clone()).collect())
    }

    /// `x` entails `y`: every model of `x` is a model of `y`.
    pub fn entails(&self, x: &Requirement, y: &Requirement) -> bool {
        x.clauses.iter().all(|c| y.clauses.iter().any(|d| d.is_subset(c)))
    }

    pub fn satisfied_by(&self, x: &Requirement, state: &BitSet) -> bool {
        x.clauses.iter().any(|c| c.is_subset(state))
    }

    /// Image under a map on states, applied clause by clause.
    pub fn map_clauses(&self, x: &Requirement, state_map: &[usize]) -> Requirement {
        let out = x
            .clauses
            .iter()
            .map(|c| {
                let s = self.states.index_of(c).expect("clauses are downsets");
                self.states.set(state_map[s]).clone()
            })
            .collect();
        self.reduce(out)
    }

    /// Base elements an atom denotes. An unqualified atom names every trace of its event.
    pub fn resolve(&self, atom: &Atom) -> Result<Vec<usize>> {
        let hits: Vec<usize> = (0..self.keys.len())
            .filter(|&j| {
                let k = &self.keys[j];
                match (&atom.trace, &k.context) {
                    (None, _) => k.event == atom.event || self.base.id(j) == atom.event,
                    (Some(t), Some(ctx)) => k.event == atom.event && t == ctx,
                    (Some(_), None) => self.base.id(j) == atom.to_string(),
                }
            })
            .collect();
        if hits.is_empty() {
            return Err(Error::UnknownAtom(atom.to_string()));
        }
        Ok(hits)
    }

    /// Normal form of a formula. `modality` is a map on state indices used for `<>`.
    pub fn eval(&self, f: &Formula, modality: Option<&[usize]>) -> Result<Requirement> {
        Ok(match f {
            Formula::True => self.truth(),
            Formula::False => self.falsity(),
            Formula::Atom(a) => {
                let clauses = self.resolve(a)?.into_iter().map(|j| self.base.down_set(j).clone()).collect();
                self.reduce(clauses)
            }
            Formula::And(a, b) => self.and(&self.eval(a, modality)?, &self.eval(b, modality)?),
            Formula::Or(a, b) => self.or(&self.eval(a, modality)?, &self.eval(b, modality)?),
            Formula::Imp(a, b) => self.implies(&self.eval(a, modality)?, &self.eval(b, modality)?),
            Formula::Modal(a) => {
                let m = modality.ok_or(Error::ModalWithoutNucleus)?;
                self.map_clauses(&self.eval(a, modality)?, m)
            }
        })
    }

    /// Formula syntax: clauses joined by `|`, maximal members of a clause by `&`.
    pub fn display(&self, x: &Requirement) -> String {
        if x.is_false() {
            return "false".into();
        }
        let mut out = String::new();
        for (i, c) in x.clauses.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            let tops = self.base.maximal_in(c);
            if tops.is_empty() {
                out.push_str("true");
            }
            for (k, j) in tops.iter().enumerate() {
                if k > 0 {
                    out.push_str(" & ");
                }
                let _ = write!(out, "{}", self.base.id(j));
            }
        }
        out
    }
}
