//! Dependency structures with choice: each event lists alternative
//! dependency sets, read as a DNF over events.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Default cap on dependency sets generated for one event during completion.
pub const DEFAULT_EXPANSION_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EventId(String);

impl EventId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Format("event names must be non-empty".into()));
        }
        Ok(EventId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for EventId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

pub type DepSet = BTreeSet<EventId>;
pub type Alternatives = BTreeSet<DepSet>;

/// A finite event set with a (possibly empty) collection of alternative
/// dependency sets per event. Every referenced event must be declared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreDsc {
    deps: BTreeMap<EventId, Alternatives>,
}

impl PreDsc {
    /// Events without any alternative are rejected; use `{}` for "no prerequisites".
    pub fn new(deps: BTreeMap<EventId, Alternatives>) -> Result<Self> {
        for (e, alts) in &deps {
            if alts.is_empty() {
                return Err(Error::NoAlternatives(e.to_string()));
            }
            for f in alts.iter().flatten() {
                if !deps.contains_key(f) {
                    return Err(Error::UnknownEvent(f.to_string()));
                }
            }
        }
        Ok(PreDsc { deps })
    }

    /// Builds from string literals: `(event, [[dep, ...], ...])`.
    pub fn from_lists(spec: &[(&str, &[&[&str]])]) -> Result<Self> {
        let mut deps = BTreeMap::new();
        for (e, alts) in spec {
            let mut set = Alternatives::new();
            for alt in alts.iter() {
                set.insert(alt.iter().map(|s| EventId::new(*s)).collect::<Result<DepSet>>()?);
            }
            if deps.insert(EventId::new(*e)?, set).is_some() {
                return Err(Error::DuplicateId(e.to_string()));
            }
        }
        Self::new(deps)
    }

    pub fn len(&self) -> usize {
        self.deps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deps.is_empty()
    }

    /// Events in canonical (name) order.
    pub fn events(&self) -> impl Iterator<Item = &EventId> {
        self.deps.keys()
    }

    pub fn contains(&self, e: &str) -> bool {
        self.deps.contains_key(e)
    }

    pub fn alternatives(&self, e: &str) -> Option<&Alternatives> {
        self.deps.get(e)
    }

    pub fn deps(&self) -> &BTreeMap<EventId, Alternatives> {
        &self.deps
    }

    pub fn event_index(&self, e: &str) -> Option<usize> {
        self.deps.keys().position(|k| k.as_str() == e)
    }

    /// Alternatives as bitsets over canonical event indices.
    pub fn index_alternatives(&self) -> Vec<Vec<BitSet>> {
        let index: BTreeMap<&EventId, usize> = self.deps.keys().enumerate().map(|(i, e)| (e, i)).collect();
        self.deps
            .values()
            .map(|alts| alts.iter().map(|s| s.iter().map(|f| index[f]).collect()).collect())
            .collect()
    }

    /// Is `set` a complete event set: every member has an alternative inside it.
    pub fn is_complete(&self, set: &DepSet) -> bool {
        set.iter().all(|f| self.supported(f, set))
    }

    fn supported(&self, f: &EventId, within: &DepSet) -> bool {
        self.deps
            .get(f)
            .is_some_and(|alts| alts.iter().any(|a| a.is_subset(within)))
    }

    /// Events reachable from the empty set by adding one supported event at a time.
    pub fn accretion_closure(&self) -> DepSet {
        let mut have = DepSet::new();
        loop {
            let next: Vec<EventId> = self
                .deps
                .keys()
                .filter(|e| !have.contains(*e) && self.supported(e, &have))
                .cloned()
                .collect();
            if next.is_empty() {
                return have;
            }
            have.extend(next);
        }
    }
}

/// A pre-DSC that passes `validate_dsc`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dsc {
    pre: PreDsc,
}

impl Dsc {
    pub fn try_from_pre(pre: PreDsc) -> Result<Self> {
        let report = validate_dsc(&pre);
        if report.is_valid() {
            Ok(Dsc { pre })
        } else {
            Err(Error::ValidationFailed(report.to_string()))
        }
    }

    pub fn as_pre(&self) -> &PreDsc {
        &self.pre
    }

    pub fn into_pre(self) -> PreDsc {
        self.pre
    }
}

impl Deref for Dsc {
    type Target = PreDsc;

    fn deref(&self) -> &PreDsc {
        &self.pre
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `member` has no alternative contained in `set`.
    Incomplete { event: EventId, set: DepSet, member: EventId },
    SelfDependent { event: EventId, set: DepSet },
    NoAlternatives { event: EventId },
    /// Events never enabled by stepwise accretion from the empty set.
    Unreachable { events: Vec<EventId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &DepSet| {
            let v: Vec<&str> = s.iter().map(|e| e.as_str()).collect();
            format!("{{{}}}", v.join(","))
        };
        match self {
            Violation::Incomplete { event, set, member } => write!(
                f,
                "dependency set {} of `{event}` is incomplete: `{member}` has no alternative inside it",
                show(set)
            ),
            Violation::SelfDependent { event, set } => {
                write!(f, "dependency set {} of `{event}` contains the event itself", show(set))
            }
            Violation::NoAlternatives { event } => write!(f, "`{event}` has no dependency alternatives"),
            Violation::Unreachable { events } => {
                let v: Vec<&str> = events.iter().map(|e| e.as_str()).collect();
                write!(f, "events never become installable (cyclic support): {}", v.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

pub fn validate_dsc(d: &PreDsc) -> ValidationReport {
    let mut violations = Vec::new();
    for (e, alts) in d.deps() {
        if alts.is_empty() {
            violations.push(Violation::NoAlternatives { event: e.clone() });
        }
        for set in alts {
            if set.contains(e) {
                violations.push(Violation::SelfDependent { event: e.clone(), set: set.clone() });
            }
            for member in set {
                if !d.supported(member, set) {
                    violations.push(Violation::Incomplete {
                        event: e.clone(),
                        set: set.clone(),
                        member: member.clone(),
                    });
                }
            }
        }
    }
    let reached = d.accretion_closure();
    let stuck: Vec<EventId> = d.events().filter(|e| !reached.contains(*e)).cloned().collect();
    if !stuck.is_empty() {
        violations.push(Violation::Unreachable { events: stuck });
    }
    ValidationReport { violations }
}

/// What completion changed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompletionDelta {
    pub deleted_events: Vec<EventId>,
    /// Dependency sets replaced by their transitive completions.
    pub closed_sets: usize,
    /// Dependency sets dropped as cyclic or unsatisfiable.
    pub dropped_sets: usize,
    pub rounds: usize,
}

pub fn complete_pre_dsc(d: &PreDsc, cap: usize) -> Result<Dsc> {
    complete_with_delta(d, cap).map(|(dsc, _)| dsc)
}

/// Repeats, until nothing changes: replace every incomplete dependency set by
/// all its unions with one alternative of each unsupported member (closed
/// transitively), drop sets containing their own event or a deleted event,
/// and delete events left without alternatives.
pub fn complete_with_delta(d: &PreDsc, cap: usize) -> Result<(Dsc, CompletionDelta)> {
    let mut deps = d.deps().clone();
    let mut delta = CompletionDelta::default();
    loop {
        delta.rounds += 1;
        let current = PreDsc { deps: deps.clone() };
        let mut changed = false;
        let mut next = BTreeMap::new();
        for (e, alts) in &deps {
            let mut out = Alternatives::new();
            for set in alts {
                if set.contains(e) {
                    delta.dropped_sets += 1;
                    changed = true;
                    continue;
                }
                if current.is_complete(set) {
                    out.insert(set.clone());
                    continue;
                }
                let expanded = expand(&current, e, set, cap)?;
                changed = true;
                if expanded.is_empty() {
                    delta.dropped_sets += 1;
                } else {
                    delta.closed_sets += 1;
                }
                out.extend(expanded);
                if out.len() > cap {
                    return Err(Error::Exploded { event: e.to_string(), cap });
                }
            }
            next.insert(e.clone(), out);
        }
        let dead: Vec<EventId> = next
            .iter()
            .filter(|(_, alts)| alts.is_empty())
            .map(|(e, _)| e.clone())
            .collect();
        for e in &dead {
            next.remove(e);
            delta.deleted_events.push(e.clone());
            changed = true;
        }
        deps = next;
        if !changed {
            break;
        }
    }
    delta.deleted_events.sort();
    let pre = PreDsc { deps };
    debug_assert!(validate_dsc(&pre).is_valid(), "{}", validate_dsc(&pre));
    Ok((Dsc { pre }, delta))
}

fn expand(d: &PreDsc, owner: &EventId, set: &DepSet, cap: usize) -> Result<BTreeSet<DepSet>> {
    let mut done = BTreeSet::new();
    let mut queue = vec![set.clone()];
    let mut seen = BTreeSet::new();
    while let Some(t) = queue.pop() {
        if t.contains(owner) {
            continue;
        }
        let unsupported: Vec<&EventId> = t.iter().filter(|f| !d.supported(f, &t)).collect();
        if unsupported.is_empty() {
            done.insert(t);
            continue;
        }
        let mut partial = vec![t.clone()];
        for f in unsupported {
            let choices: Vec<&DepSet> = d.alternatives(f.as_str()).map(|a| a.iter().collect()).unwrap_or_default();
            partial = partial
                .iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut u = p.clone();
                        u.extend(c.iter().cloned());
                        u
                    })
                })
                .collect();
            if partial.len() > cap {
                return Err(Error::Exploded { event: owner.to_string(), cap });
            }
        }
        for u in partial {
            if seen.insert(u.clone()) {
                queue.push(u);
            }
        }
        if seen.len() > cap {
            return Err(Error::Exploded { event: owner.to_string(), cap });
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> PreDsc {
        PreDsc::from_lists(&[("a", &[&["b"], &["c"]]), ("b", &[&[]]), ("c", &[&[]])]).unwrap()
    }

    fn set(names: &[&str]) -> DepSet {
        names.iter().map(|s| EventId::new(*s).unwrap()).collect()
    }

    #[test]
    fn running_example_is_valid() {
        assert!(validate_dsc(&running()).is_valid());
        assert!(Dsc::try_from_pre(running()).is_ok());
    }

    #[test]
    fn self_containment_reported() {
        let d = PreDsc::from_lists(&[("a", &[&["a"]])]).unwrap();
        let r = validate_dsc(&d);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::SelfDependent { .. })));
    }

    #[test]
    fn two_cycle_reported_and_deleted() {
        let d = PreDsc::from_lists(&[("a", &[&["b"]]), ("b", &[&["a"]])]).unwrap();
        let r = validate_dsc(&d);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Unreachable { events } if events.len() == 2)));
        let (c, delta) = complete_with_delta(&d, DEFAULT_EXPANSION_CAP).unwrap();
        assert!(c.is_empty());
        assert_eq!(delta.deleted_events.len(), 2);
        assert!(validate_dsc(&c).is_valid());
    }

    #[test]
    fn chain_closes_transitively() {
        let d = PreDsc::from_lists(&[("a", &[&["b"]]), ("b", &[&["c"]]), ("c", &[&[]])]).unwrap();
        let c = complete_pre_dsc(&d, DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(c.alternatives("a").unwrap(), &[set(&["b", "c"])].into_iter().collect());
        for (e, alts) in c.deps() {
            for s in alts {
                assert!(c.is_complete(s), "{e}");
            }
        }
    }

    #[test]
    fn completion_fixes_valid_input() {
        let c = complete_pre_dsc(&running(), DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(c.as_pre(), &running());
    }

    #[test]
    fn choice_inside_chain_is_expanded() {
        // x needs a; a needs b or c
        let d = PreDsc::from_lists(&[("x", &[&["a"]]), ("a", &[&["b"], &["c"]]), ("b", &[&[]]), ("c", &[&[]])]).unwrap();
        let c = complete_pre_dsc(&d, DEFAULT_EXPANSION_CAP).unwrap();
        let expect: Alternatives = [set(&["a", "b"]), set(&["a", "c"])].into_iter().collect();
        assert_eq!(c.alternatives("x").unwrap(), &expect);
    }

    #[test]
    fn unknown_and_empty_rejected() {
        assert!(matches!(PreDsc::from_lists(&[("a", &[&["zz"]])]), Err(Error::UnknownEvent(_))));
        assert!(matches!(PreDsc::from_lists(&[("a", &[])]), Err(Error::NoAlternatives(_))));
    }

    #[test]
    fn explosion_capped() {
        // e depends on all of x0..x5, each with two alternatives
        let mut spec: Vec<(String, Vec<Vec<String>>)> = Vec::new();
        let mut all = Vec::new();
        for i in 0..6 {
            spec.push((format!("x{i}"), vec![vec![format!("l{i}")], vec![format!("r{i}")]]));
            spec.push((format!("l{i}"), vec![vec![]]));
            spec.push((format!("r{i}"), vec![vec![]]));
            all.push(format!("x{i}"));
        }
        spec.push(("e".into(), vec![all]));
        let deps = spec
            .into_iter()
            .map(|(e, alts)| {
                (
                    EventId::new(e).unwrap(),
                    alts.into_iter().map(|a| a.into_iter().map(|s| EventId::new(s).unwrap()).collect()).collect(),
                )
            })
            .collect();
        let d = PreDsc::new(deps).unwrap();
        assert!(matches!(complete_pre_dsc(&d, 16), Err(Error::Exploded { .. })));
        let ok = complete_pre_dsc(&d, DEFAULT_EXPANSION_CAP).unwrap();
        assert_eq!(ok.alternatives("e").unwrap().len(), 64);
    }
}
