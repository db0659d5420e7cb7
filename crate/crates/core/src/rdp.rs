//! The reachable dependency lattice of a DSC: complete event sets under inclusion.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::dsc::{Dsc, EventId};
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, SetLattice};

/// Default cap on the number of reachable event sets.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct RdpLattice {
    dsc: Dsc,
    events: Vec<EventId>,
    alternatives: Vec<Vec<BitSet>>,
    states: SetLattice,
}

impl RdpLattice {
    pub fn dsc(&self) -> &Dsc {
        &self.dsc
    }

    /// Events in index order.
    pub fn events(&self) -> &[EventId] {
        &self.events
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.states.lattice()
    }

    pub fn states(&self) -> &SetLattice {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Event set of lattice element `i`.
    pub fn state(&self, i: usize) -> &BitSet {
        self.states.set(i)
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.states.index_of(set)
    }

    /// Event set from names; `None` when a name is unknown.
    pub fn set_of(&self, names: &[&str]) -> Option<BitSet> {
        names
            .iter()
            .map(|n| self.events.iter().position(|e| e.as_str() == *n))
            .collect()
    }

    /// Lattice index of the state with exactly these events.
    pub fn element(&self, names: &[&str]) -> Option<usize> {
        self.index_of(&self.set_of(names)?)
    }

    pub fn names(&self, set: &BitSet) -> Vec<EventId> {
        set.iter().map(|i| self.events[i].clone()).collect()
    }

    pub fn is_complete(&self, set: &BitSet) -> bool {
        set.iter().all(|e| self.alternatives[e].iter().any(|a| a.is_subset(set)))
    }

    /// Largest complete subset of `set` (the union of all its reachable subsets).
    pub fn greatest_reachable_subset(&self, set: &BitSet) -> BitSet {
        let mut s = set.clone();
        loop {
            let drop: Vec<usize> = s
                .iter()
                .filter(|&e| !self.alternatives[e].iter().any(|a| a.is_subset(&s)))
                .collect();
            if drop.is_empty() {
                return s;
            }
            for e in drop {
                s.remove(e);
            }
        }
    }
}

pub fn event_set_label(events: &[EventId], set: &BitSet) -> String {
    let parts: Vec<&str> = set.iter().map(|i| events[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Enumerates reachable sets bottom-up from the empty set by single-event accretion.
pub fn build_rdp(d: &Dsc, cap: usize) -> Result<RdpLattice> {
    let events: Vec<EventId> = d.events().cloned().collect();
    let alternatives = d.index_alternatives();
    let n = events.len();
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(BitSet::new());
    let mut frontier = vec![BitSet::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for e in 0..n {
                if s.contains(e) || !alternatives[e].iter().any(|a| a.is_subset(s)) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(e);
                if seen.insert(t.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "reachable state count", cap });
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let states = SetLattice::from_family(seen.into_iter().collect(), |s| event_set_label(&events, s));
    Ok(RdpLattice { dsc: d.clone(), events, alternatives, states })
}

/// Reachable sets by filtering every subset of the events for completeness.
/// Exponential; for cross-checking small instances.
pub fn complete_sets_by_filter(d: &Dsc) -> Vec<BitSet> {
    let alternatives = d.index_alternatives();
    let n = d.len();
    assert!(n < 24, "subset filter is exponential");
    let mut out: Vec<BitSet> = (0u64..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<BitSet>())
        .filter(|s| s.iter().all(|e| alternatives[e].iter().any(|a| a.is_subset(s))))
        .collect();
    out.sort();
    out
}

/// Reachable sets as the empty set plus all unions of `S ∪ {e}` over
/// dependency sets `S` of every event `e`.
pub fn complete_sets_by_unions(d: &Dsc) -> Vec<BitSet> {
    let alternatives = d.index_alternatives();
    let mut basis: Vec<BitSet> = Vec::new();
    for (e, alts) in alternatives.iter().enumerate() {
        for a in alts {
            let mut s = a.clone();
            s.insert(e);
            basis.push(s);
        }
    }
    let mut all: HashSet<BitSet> = HashSet::new();
    all.insert(BitSet::new());
    let mut frontier = vec![BitSet::new()];
    while let Some(s) = frontier.pop() {
        for b in &basis {
            let u = s.union(b);
            if all.insert(u.clone()) {
                frontier.push(u);
            }
        }
    }
    let mut out: Vec<BitSet> = all.into_iter().collect();
    out.sort();
    out
}

/// Meet of two reachable sets: the greatest reachable subset of their intersection.
pub fn rdp_meet(r: &RdpLattice, x: &BitSet, y: &BitSet) -> Result<BitSet> {
    for s in [x, y] {
        if r.index_of(s).is_none() {
            return Err(Error::NotAnElement(event_set_label(&r.events, s)));
        }
    }
    Ok(r.greatest_reachable_subset(&x.intersection(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsc::PreDsc;
    use crate::order::classify::{classify_lattice, s7};
    use crate::order::{is_isomorphic, DEFAULT_ISO_CAP};

    pub(crate) fn running() -> Dsc {
        Dsc::try_from_pre(PreDsc::from_lists(&[("a", &[&["b"], &["c"]]), ("b", &[&[]]), ("c", &[&[]])]).unwrap()).unwrap()
    }

    #[test]
    fn running_example_is_s7() {
        let r = build_rdp(&running(), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.len(), 7);
        let labels: Vec<&str> = r.lattice().poset().ids().iter().map(|s| s.as_str()).collect();
        assert_eq!(labels, ["{}", "{b}", "{c}", "{a,b}", "{a,c}", "{b,c}", "{a,b,c}"]);
        assert!(is_isomorphic(r.lattice().poset(), s7().poset(), DEFAULT_ISO_CAP).unwrap().is_some());
        let c = classify_lattice(r.lattice());
        assert!(c.upper_semimodular && !c.modular && !c.distributive && !c.has_m3);
    }

    #[test]
    fn chain_and_empty() {
        let d = Dsc::try_from_pre(PreDsc::from_lists(&[("a", &[&["b"]]), ("b", &[&[]])]).unwrap()).unwrap();
        let r = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.lattice().poset().ids(), &["{}", "{b}", "{a,b}"]);
        let e = build_rdp(&Dsc::default(), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn three_enumerations_agree() {
        let d = running();
        let r = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.states().sets(), complete_sets_by_filter(&d).as_slice());
        assert_eq!(r.states().sets(), complete_sets_by_unions(&d).as_slice());
    }

    #[test]
    fn meets() {
        let r = build_rdp(&running(), DEFAULT_STATE_CAP).unwrap();
        let s = |n: &[&str]| r.set_of(n).unwrap();
        assert_eq!(rdp_meet(&r, &s(&["a", "b"]), &s(&["a", "c"])).unwrap(), BitSet::new());
        assert_eq!(rdp_meet(&r, &s(&["a", "b"]), &s(&["b", "c"])).unwrap(), s(&["b"]));
        assert_eq!(rdp_meet(&r, &s(&["a", "b"]), &s(&["a", "b"])).unwrap(), s(&["a", "b"]));
        assert!(matches!(rdp_meet(&r, &s(&["a"]), &s(&["b"])), Err(Error::NotAnElement(_))));
        for x in 0..r.len() {
            for y in 0..r.len() {
                let m = rdp_meet(&r, r.state(x), r.state(y)).unwrap();
                assert_eq!(r.index_of(&m), Some(r.lattice().meet(x, y)));
                assert_eq!(r.state(r.lattice().join(x, y)), &r.state(x).union(r.state(y)));
            }
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(build_rdp(&running(), 3), Err(Error::CapExceeded { .. })));
    }
}
