//! The free distributive lattice of requirements over a base poset,
//! materialized and ordered by requirement strength: `true` at the bottom,
//! `false` at the top.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::completion::BlLattice;
use crate::error::{Error, Result};
use crate::logic::algebra::{Requirement, RequirementAlgebra};
use crate::logic::formula::Formula;
use crate::nucleus::Nucleus;
use crate::order::{enumerate_antichains, FiniteLattice, FinitePoset};

/// Default cap on materialized requirement lattices.
pub const DEFAULT_UBL_CAP: usize = 20_000;

/// Bases with more maximal elements than this are never materialized.
pub const MAX_UBL_MAXIMAL: usize = 6;

#[derive(Clone, Debug)]
pub struct UblLattice {
    algebra: RequirementAlgebra,
    elements: Vec<Requirement>,
    models: Vec<BitSet>,
    lattice: FiniteLattice,
    index: HashMap<Requirement, usize>,
}

impl UblLattice {
    pub fn algebra(&self) -> &RequirementAlgebra {
        &self.algebra
    }

    /// Requirement order: `x <= y` when `y` entails `x`.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, i: usize) -> &Requirement {
        &self.elements[i]
    }

    pub fn index_of(&self, r: &Requirement) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn models(&self, i: usize) -> &BitSet {
        &self.models[i]
    }

    pub fn truth(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn falsity(&self) -> usize {
        self.lattice.top()
    }

    pub fn eval(&self, f: &Formula, n: Option<&Nucleus>) -> Result<usize> {
        let r = match n {
            None => self.algebra.eval(f, None)?,
            Some(n) => self.eval_with(f, n)?,
        };
        Ok(self.index_of(&r).expect("every requirement is an element"))
    }

    fn eval_with(&self, f: &Formula, n: &Nucleus) -> Result<Requirement> {
        let alg = &self.algebra;
        Ok(match f {
            Formula::And(a, b) => alg.and(&self.eval_with(a, n)?, &self.eval_with(b, n)?),
            Formula::Or(a, b) => alg.or(&self.eval_with(a, n)?, &self.eval_with(b, n)?),
            Formula::Imp(a, b) => alg.implies(&self.eval_with(a, n)?, &self.eval_with(b, n)?),
            Formula::Modal(a) => {
                let inner = self.index_of(&self.eval_with(a, n)?).expect("every requirement is an element");
                self.elements[n.apply(inner)].clone()
            }
            other => alg.eval(other, None)?,
        })
    }

    /// Relative pseudo-complement of the requirement order for every pair:
    /// entry `x * n + y` is the greatest `z` with `x ∧ z <= y`.
    pub fn implication_table(&self) -> Vec<usize> {
        // Lattice meet is disjunction, so `x ∧ z <= y` reads: models of `y`
        // lie inside those of `x` or `z`. The greatest such `z` has the
        // fewest models: the up-closure of models(y) \ models(x).
        let n = self.len();
        let states = self.algebra.states().poset();
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let need = states.up_closure(&self.models[y].difference(&self.models[x]));
                t.push(self.index_of(&self.algebra.from_models(&need)).expect("up-sets are elements"));
            }
        }
        t
    }
}

/// Materializes every requirement over `base` as an antichain of its downsets.
pub fn build_ubl(algebra: RequirementAlgebra, cap: usize) -> Result<UblLattice> {
    let maximal = algebra.base().maximal_elements().len();
    if maximal > MAX_UBL_MAXIMAL {
        return Err(Error::CapExceeded { what: "maximal elements of the requirement base", cap: MAX_UBL_MAXIMAL });
    }
    let states = algebra.states();
    let antichains = enumerate_antichains(states.poset(), cap)?;
    let mut items: Vec<(Requirement, BitSet)> = antichains
        .into_iter()
        .map(|a| {
            let r = algebra.reduce(a.iter().map(|s| states.set(s).clone()).collect());
            let m = states.poset().up_closure(&a);
            (r, m)
        })
        .collect();
    // More models means weaker, hence lower; this is a linear extension.
    items.sort_by(|(ra, ma), (rb, mb)| mb.len().cmp(&ma.len()).then_with(|| ra.cmp(rb)));
    let n = items.len();
    let up: Vec<BitSet> = (0..n)
        .map(|i| (i..n).filter(|&j| items[j].1.is_subset(&items[i].1)).collect())
        .collect();
    let ids = items.iter().map(|(r, _)| algebra.display(r)).collect();
    let lattice = FiniteLattice::trusted(FinitePoset::trusted(ids, up));
    let (elements, models): (Vec<Requirement>, Vec<BitSet>) = items.into_iter().unzip();
    let index = elements.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    Ok(UblLattice { algebra, elements, models, lattice, index })
}

pub fn build_ubl_for_bl(b: &BlLattice, cap: usize) -> Result<UblLattice> {
    build_ubl(RequirementAlgebra::for_bl(b), cap)
}

/// Lifts a map on the states (the completion's elements) to requirements,
/// clause by clause. The state map must preserve joins.
pub fn lift_nucleus_ubl(u: &UblLattice, state_map: &Nucleus) -> Result<Nucleus> {
    let report = state_map.check();
    if !report.join_preserving {
        return Err(Error::NotJoinPreserving("state map does not preserve joins".into()));
    }
    let map = u
        .elements
        .iter()
        .map(|r| {
            let img = u.algebra.map_clauses(r, state_map.map());
            u.index_of(&img).expect("every requirement is an element")
        })
        .collect();
    Ok(Nucleus::from_raw(u.lattice.clone(), map))
}
