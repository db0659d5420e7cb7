//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;

use depchoice::dsc::{complete_pre_dsc, Alternatives, DepSet, Dsc, EventId, PreDsc, DEFAULT_EXPANSION_CAP};
use depchoice::logic::Formula;
use depchoice::order::FinitePoset;
use depchoice::versioning::{validate_version_map, VersionMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn event_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Random pre-DSC on up to `max_events` events, then completed. Dependency
/// sets may reference any event, so completion has real work to do.
pub fn random_dsc(rng: &mut StdRng, max_events: usize) -> Dsc {
    loop {
        let n = rng.gen_range(1..=max_events);
        let mut deps: BTreeMap<EventId, Alternatives> = BTreeMap::new();
        for e in 0..n {
            let mut alts = Alternatives::new();
            let k = rng.gen_range(1..=3);
            for _ in 0..k {
                let set: DepSet = (0..n)
                    .filter(|&o| o != e && rng.gen_bool(0.3))
                    .map(|o| EventId::new(event_name(o)).unwrap())
                    .collect();
                alts.insert(set);
            }
            deps.insert(EventId::new(event_name(e)).unwrap(), alts);
        }
        let pre = PreDsc::new(deps).unwrap();
        if let Ok(d) = complete_pre_dsc(&pre, DEFAULT_EXPANSION_CAP) {
            if !d.is_empty() {
                return d;
            }
        }
    }
}

/// Random poset on `n` elements: a random DAG over a random linear order,
/// transitively closed by `FinitePoset::from_pairs`.
pub fn random_poset(rng: &mut StdRng, n: usize, density: f64) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let ids = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::from_pairs(ids, &pairs).unwrap()
}

/// Random DNF over the given event names, optionally with trace-qualified atoms.
pub fn random_dnf(rng: &mut StdRng, events: &[String]) -> Formula {
    let clauses = rng.gen_range(1..=3);
    let mut f: Option<Formula> = None;
    for _ in 0..clauses {
        let width = rng.gen_range(1..=2.min(events.len()));
        let mut c: Option<Formula> = None;
        for _ in 0..width {
            let a = Formula::atom(&events[rng.gen_range(0..events.len())]);
            c = Some(match c {
                None => a,
                Some(prev) => Formula::and(prev, a),
            });
        }
        let c = c.unwrap();
        f = Some(match f {
            None => c,
            Some(prev) => Formula::or(prev, c),
        });
    }
    f.unwrap()
}

/// A random version map the DSC accepts: one to three pairs tried, the
/// first valid nonempty combination kept, otherwise the empty map.
pub fn random_version_map(rng: &mut StdRng, d: &Dsc) -> VersionMap {
    let events: Vec<EventId> = d.events().cloned().collect();
    if events.len() < 2 {
        return VersionMap::default();
    }
    for _ in 0..20 {
        let mut raise = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let l = rng.gen_range(0..events.len());
            let h = rng.gen_range(0..events.len());
            if l != h {
                raise.insert(events[l].clone(), events[h].clone());
            }
        }
        let v = VersionMap::new(raise);
        if !v.is_empty() && validate_version_map(d, &v).is_valid() {
            return v;
        }
    }
    VersionMap::default()
}
