//! Slow reference implementations used to cross-check the library.

use std::collections::{BTreeSet, HashSet};

use depchoice::bitset::BitSet;
use depchoice::completion::BlLattice;
use depchoice::dsc::EventId;
use depchoice::logic::{Atom, Formula, Requirement, RequirementAlgebra};
use depchoice::order::FinitePoset;
use depchoice::solver::Objective;

fn atom_holds(b: &BlLattice, a: &Atom, state: &BitSet) -> bool {
    let labels = b.labels().expect("rdp completions carry labels");
    state.iter().any(|j| {
        let l = &labels[j];
        l.event.as_str() == a.event
            && match &a.trace {
                None => true,
                Some(t) => l.context().iter().map(|e| e.to_string()).collect::<Vec<_>>() == *t,
            }
    })
}

/// Truth of a modality-free formula at one completion element, by recursion.
pub fn holds(b: &BlLattice, f: &Formula, element: usize) -> bool {
    let state = b.states().set(element);
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => atom_holds(b, a, state),
        Formula::And(x, y) => holds(b, x, element) && holds(b, y, element),
        Formula::Or(x, y) => holds(b, x, element) || holds(b, y, element),
        // Intuitionistic: every larger state satisfying x satisfies y.
        Formula::Imp(x, y) => b
            .lattice()
            .poset()
            .up_set(element)
            .iter()
            .all(|u| !holds(b, x, u) || holds(b, y, u)),
        Formula::Modal(_) => panic!("oracle does not interpret <>"),
    }
}

pub fn events_of(b: &BlLattice, element: usize) -> BTreeSet<EventId> {
    let labels = b.labels().expect("rdp completions carry labels");
    b.states().set(element).iter().map(|j| labels[j].event.clone()).collect()
}

/// Least objective value over every satisfying completion element, with
/// the event sets attaining it.
pub fn brute_minimum(b: &BlLattice, f: &Formula, o: &Objective) -> Option<(f64, BTreeSet<Vec<EventId>>)> {
    let mut best: Option<(f64, BTreeSet<Vec<EventId>>)> = None;
    for s in 0..b.len() {
        if !holds(b, f, s) {
            continue;
        }
        let ev = events_of(b, s);
        let v = o.evaluate(&ev);
        let ev: Vec<EventId> = ev.into_iter().collect();
        match &mut best {
            Some((bv, sets)) if v == *bv => {
                sets.insert(ev);
            }
            Some((bv, _)) if v > *bv => {}
            _ => best = Some((v, BTreeSet::from([ev]))),
        }
    }
    best
}

/// Number of distinct requirements reachable from true, false and the atoms
/// under conjunction and disjunction.
pub fn closure_count(alg: &RequirementAlgebra) -> usize {
    let mut seen: HashSet<Requirement> = HashSet::new();
    let mut all: Vec<Requirement> = Vec::new();
    let push = |r: Requirement, seen: &mut HashSet<Requirement>, all: &mut Vec<Requirement>| {
        if seen.insert(r.clone()) {
            all.push(r);
        }
    };
    push(alg.truth(), &mut seen, &mut all);
    push(alg.falsity(), &mut seen, &mut all);
    for j in 0..alg.base().len() {
        push(alg.atom(j), &mut seen, &mut all);
    }
    let mut done = 0;
    while done < all.len() {
        let x = all[done].clone();
        for i in 0..=done {
            let y = all[i].clone();
            push(alg.and(&x, &y), &mut seen, &mut all);
            push(alg.or(&x, &y), &mut seen, &mut all);
        }
        done += 1;
    }
    all.len()
}

/// Every poset on `n` labelled elements whose order extends 0 < 1 < ... < n-1.
/// Up to isomorphism this covers all posets of that size.
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let pairs: Vec<(usize, usize)> = slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| *p).collect();
        let ids = (0..n).map(|i| format!("x{i}")).collect();
        let p = FinitePoset::from_pairs(ids, &pairs).unwrap();
        let key: Vec<Vec<usize>> = (0..n).map(|i| p.up_set(i).to_vec()).collect();
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

/// Largest family of pairwise incomparable subsets of an `n`-set, by search.
pub fn sperner_brute(n: usize) -> usize {
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    fn go(subsets: &[u32], start: usize, chosen: &mut Vec<u32>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (subsets.len() - start) <= *best {
            return;
        }
        for k in start..subsets.len() {
            let s = subsets[k];
            if chosen.iter().all(|&c| c & s != c && c & s != s) {
                chosen.push(s);
                go(subsets, k + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(&subsets, 0, &mut Vec::new(), &mut best);
    best
}
