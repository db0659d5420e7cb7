//! Version maps on DSCs and the closure operators they induce on reachable
//! states and on the completion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::completion::BlLattice;
use crate::dsc::{DepSet, Dsc, EventId};
use crate::error::{Error, Result};
use crate::nucleus::Nucleus;
use crate::order::{FiniteLattice, FinitePoset};
use crate::rdp::RdpLattice;

/// Sends lower versions to higher ones; events not mentioned are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VersionMap {
    raise: BTreeMap<EventId, EventId>,
}

impl VersionMap {
    /// Identity pairs are dropped.
    pub fn new(raise: BTreeMap<EventId, EventId>) -> Self {
        let raise = raise.into_iter().filter(|(l, h)| l != h).collect();
        VersionMap { raise }
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let mut raise = BTreeMap::new();
        for (l, h) in pairs {
            raise.insert(EventId::new(*l)?, EventId::new(*h)?);
        }
        Ok(Self::new(raise))
    }

    pub fn is_empty(&self) -> bool {
        self.raise.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&EventId, &EventId)> {
        self.raise.iter()
    }

    pub fn apply<'a>(&'a self, e: &'a EventId) -> &'a EventId {
        self.raise.get(e).unwrap_or(e)
    }

    pub fn is_lower(&self, e: &EventId) -> bool {
        self.raise.contains_key(e)
    }

    /// Version class of every event, as the image of `apply` it shares.
    fn class_of(&self, events: &[EventId]) -> Vec<BitSet> {
        events
            .iter()
            .map(|e| {
                let top = self.apply(e);
                (0..events.len()).filter(|&o| self.apply(&events[o]) == top).collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VersionViolation {
    UnknownEvent { event: EventId },
    /// `higher` is itself raised to `next`.
    NotIdempotent { lower: EventId, higher: EventId, next: EventId },
    /// `event` has `set` but not the set with versions raised.
    MissingSubstitute { event: EventId, set: DepSet, substitute: DepSet },
}

impl fmt::Display for VersionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &DepSet| format!("{{{}}}", s.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(","));
        match self {
            VersionViolation::UnknownEvent { event } => write!(f, "version map mentions unknown event `{event}`"),
            VersionViolation::NotIdempotent { lower, higher, next } => {
                write!(f, "`{lower}` raises to `{higher}`, which itself raises to `{next}`")
            }
            VersionViolation::MissingSubstitute { event, set, substitute } => write!(
                f,
                "`{event}` can depend on {} but not on {}",
                show(set),
                show(substitute)
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VersionReport {
    pub violations: Vec<VersionViolation>,
    /// Higher versions that list their own lower version as a dependency.
    pub warnings: Vec<String>,
}

impl VersionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_version_map(d: &Dsc, v: &VersionMap) -> VersionReport {
    let mut report = VersionReport::default();
    for (l, h) in v.pairs() {
        for e in [l, h] {
            if !d.contains(e.as_str()) {
                report.violations.push(VersionViolation::UnknownEvent { event: e.clone() });
            }
        }
        if let Some(next) = v.raise.get(h) {
            report.violations.push(VersionViolation::NotIdempotent {
                lower: l.clone(),
                higher: h.clone(),
                next: next.clone(),
            });
        }
        if let Some(alts) = d.alternatives(h.as_str()) {
            if alts.iter().any(|s| s.contains(l)) {
                report.warnings.push(format!("`{h}` can depend on its own lower version `{l}`"));
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    for (e, alts) in d.deps() {
        for set in alts {
            if !set.iter().any(|x| v.is_lower(x)) {
                continue;
            }
            let substitute: DepSet = set.iter().map(|x| v.apply(x).clone()).collect();
            if !alts.contains(&substitute) {
                report.violations.push(VersionViolation::MissingSubstitute {
                    event: e.clone(),
                    set: set.clone(),
                    substitute,
                });
            }
        }
    }
    report
}

/// Idempotent monotone endomap of a poset preserving existing finite meets.
#[derive(Clone, Debug)]
pub struct Ponucleus {
    carrier: FinitePoset,
    map: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PonucleusReport {
    pub monotone: bool,
    pub idempotent: bool,
    pub inflationary: bool,
    pub meet_preserving: bool,
    pub join_preserving: bool,
    pub counterexamples: Vec<String>,
}

impl PonucleusReport {
    pub fn is_ponucleus(&self) -> bool {
        self.monotone && self.idempotent && self.meet_preserving
    }
}

impl Ponucleus {
    pub fn from_raw(carrier: FinitePoset, map: Vec<usize>) -> Self {
        assert_eq!(carrier.len(), map.len(), "map must be total");
        Ponucleus { carrier, map }
    }

    pub fn carrier(&self) -> &FinitePoset {
        &self.carrier
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == x).collect()
    }

    /// Checks meets and joins wherever they exist in the carrier.
    pub fn check(&self) -> PonucleusReport {
        let p = &self.carrier;
        let f = &self.map;
        let name = |x: usize| p.id(x).to_string();
        let mut r = PonucleusReport {
            monotone: true,
            idempotent: true,
            inflationary: true,
            meet_preserving: true,
            join_preserving: true,
            counterexamples: Vec::new(),
        };
        for x in 0..p.len() {
            if r.idempotent && f[f[x]] != f[x] {
                r.idempotent = false;
                r.counterexamples.push(format!("not idempotent at {}", name(x)));
            }
            if r.inflationary && !p.leq(x, f[x]) {
                r.inflationary = false;
            }
            for y in 0..p.len() {
                if r.monotone && p.leq(x, y) && !p.leq(f[x], f[y]) {
                    r.monotone = false;
                    r.counterexamples.push(format!("not monotone at {} <= {}", name(x), name(y)));
                }
                if r.meet_preserving {
                    if let Some(m) = p.meet(x, y) {
                        if p.meet(f[x], f[y]) != Some(f[m]) {
                            r.meet_preserving = false;
                            r.counterexamples.push(format!("meet of {} and {} not preserved", name(x), name(y)));
                        }
                    }
                }
                if r.join_preserving {
                    if let Some(j) = p.join(x, y) {
                        if p.join(f[x], f[y]) != Some(f[j]) {
                            r.join_preserving = false;
                            r.counterexamples.push(format!("join of {} and {} not preserved", name(x), name(y)));
                        }
                    }
                }
            }
        }
        r
    }

    /// The same map on the carrier viewed as a lattice. The nucleus laws
    /// are not enforced; see `Nucleus::check`.
    pub fn to_nucleus(&self) -> Result<Nucleus> {
        let l = FiniteLattice::from_poset(self.carrier.clone())?;
        Ok(Nucleus::from_raw(l, self.map.clone()))
    }
}

/// Sends each reachable state to the union of all reachable variants of
/// its reachable substates, where a variant swaps events for others of the
/// same version class; repeated until nothing changes. Taking substates
/// into account keeps the map monotone.
pub fn induced_pvp(r: &RdpLattice, v: &VersionMap) -> Result<Ponucleus> {
    let report = validate_version_map(r.dsc(), v);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|x| x.to_string()).collect();
        return Err(Error::InvalidVersionMap(msgs.join("; ")));
    }
    let classes = v.class_of(r.events());
    let step: Vec<BitSet> = (0..r.len()).map(|i| variant_union(r, &classes, r.state(i))).collect();
    let poset = r.lattice().poset();
    let map = (0..r.len())
        .map(|i| {
            let mut s = r.state(i).clone();
            loop {
                let at = r.index_of(&s).expect("union of reachable states is reachable");
                let mut grown = s.clone();
                for j in poset.down_set(at).iter() {
                    grown.union_with(&step[j]);
                }
                if grown == s {
                    return at;
                }
                s = grown;
            }
        })
        .collect();
    Ok(Ponucleus::from_raw(poset.clone(), map))
}

/// Union of `s` with every reachable set that replaces each member by a
/// member of its version class.
fn variant_union(r: &RdpLattice, classes: &[BitSet], s: &BitSet) -> BitSet {
    let members = s.to_vec();
    let mut out = s.clone();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut choice = vec![0usize; members.len()];
    let options: Vec<Vec<usize>> = members.iter().map(|&e| classes[e].to_vec()).collect();
    loop {
        let variant: BitSet = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        if seen.insert(variant.to_vec()) && r.is_complete(&variant) {
            out.union_with(&variant);
        }
        // Odometer over the product of classes.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Lifts a join-preserving map on the completion's source to the
/// completion. Irreducibles go through `p`, composites through joins.
///
/// The result is monotone, inflationary and idempotent whenever `p` is, but
/// need not preserve meets: version maps that merge two incomparable
/// events already fail there. Callers wanting a nucleus check it.
pub fn lift_nucleus_bl(b: &BlLattice, p: &Ponucleus) -> Result<Nucleus> {
    let report = p.check();
    if !report.join_preserving {
        return Err(Error::NotJoinPreserving(report.counterexamples.join("; ")));
    }
    Ok(Nucleus::from_raw(b.lattice().clone(), b.lift_monotone(p.map())))
}
