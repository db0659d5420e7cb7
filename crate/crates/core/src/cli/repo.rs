//! TOML repository and problem files.
//!
//! ```toml
//! events = ["a", "b", "c"]
//! conflicts = [["a", "b"]]
//!
//! [deps]
//! a = [["b"], ["c"]]
//!
//! [versions]
//! b = "c"
//! ```
//!
//! Events without a `deps` entry have no prerequisites.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dsc::{complete_with_delta, validate_dsc, Alternatives, CompletionDelta, DepSet, Dsc, EventId, PreDsc};
use crate::error::{Error, Result};
use crate::logic::{parse_formula, Formula};
use crate::solver::{DependencyProblem, Objective};
use crate::versioning::{validate_version_map, VersionMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepoFile {
    pub events: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conflicts: Vec<(String, String)>,
    #[serde(default)]
    pub deps: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub versions: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Repository {
    pub dsc: Dsc,
    pub versions: VersionMap,
    pub conflicts: Vec<(EventId, EventId)>,
    pub delta: CompletionDelta,
    pub warnings: Vec<String>,
}

impl RepoFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("repository files always serialize")
    }

    /// Checks names and builds the uncompleted structure.
    pub fn to_pre(&self) -> Result<PreDsc> {
        let mut deps: BTreeMap<EventId, Alternatives> = BTreeMap::new();
        for e in &self.events {
            if deps.insert(EventId::new(e.as_str())?, Alternatives::new()).is_some() {
                return Err(Error::DuplicateId(e.clone()));
            }
        }
        for (e, alts) in &self.deps {
            let slot = deps.get_mut(e.as_str()).ok_or_else(|| Error::UnknownEvent(e.clone()))?;
            for alt in alts {
                slot.insert(alt.iter().map(|f| EventId::new(f.as_str())).collect::<Result<DepSet>>()?);
            }
            if alts.is_empty() {
                return Err(Error::NoAlternatives(e.clone()));
            }
        }
        for alts in deps.values_mut() {
            if alts.is_empty() {
                alts.insert(DepSet::new());
            }
        }
        let known = |n: &String| -> Result<EventId> {
            if deps.contains_key(n.as_str()) {
                EventId::new(n.as_str())
            } else {
                Err(Error::UnknownEvent(n.clone()))
            }
        };
        for (l, h) in &self.versions {
            known(l)?;
            known(h)?;
        }
        for (a, b) in &self.conflicts {
            known(a)?;
            known(b)?;
        }
        PreDsc::new(deps)
    }

    /// Normal form of an ingested repository.
    pub fn from_repository(r: &Repository) -> Self {
        let events = r.dsc.events().map(|e| e.to_string()).collect();
        let deps = r
            .dsc
            .deps()
            .iter()
            .filter(|(_, alts)| !(alts.len() == 1 && alts.iter().all(|s| s.is_empty())))
            .map(|(e, alts)| {
                let alts = alts.iter().map(|s| s.iter().map(|f| f.to_string()).collect()).collect();
                (e.to_string(), alts)
            })
            .collect();
        let versions = r.versions.pairs().map(|(l, h)| (l.to_string(), h.to_string())).collect();
        let conflicts = r.conflicts.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        RepoFile { events, conflicts, deps, versions }
    }
}

/// Parses, completes and validates a repository.
pub fn ingest_str(text: &str, expansion_cap: usize) -> Result<Repository> {
    let file = RepoFile::parse(text)?;
    let pre = file.to_pre()?;
    let (dsc, delta) = complete_with_delta(&pre, expansion_cap)?;
    let report = validate_dsc(&dsc);
    if !report.is_valid() {
        return Err(Error::ValidationFailed(report.to_string()));
    }
    let mut warnings = Vec::new();
    if !delta.deleted_events.is_empty() {
        let names: Vec<&str> = delta.deleted_events.iter().map(|e| e.as_str()).collect();
        warnings.push(format!("completion deleted events without a finite history: {}", names.join(", ")));
    }
    let alive = |n: &str| dsc.contains(n);
    let mut raise = BTreeMap::new();
    for (l, h) in &file.versions {
        if alive(l) && alive(h) {
            raise.insert(EventId::new(l.as_str())?, EventId::new(h.as_str())?);
        } else {
            warnings.push(format!("dropped version pair {l} -> {h}: event deleted by completion"));
        }
    }
    let versions = VersionMap::new(raise);
    let vr = validate_version_map(&dsc, &versions);
    if !vr.is_valid() {
        let lines: Vec<String> = vr.violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidVersionMap(lines.join("; ")));
    }
    warnings.extend(vr.warnings);
    let mut conflicts = Vec::new();
    for (a, b) in &file.conflicts {
        if alive(a) && alive(b) {
            conflicts.push((EventId::new(a.as_str())?, EventId::new(b.as_str())?));
        } else {
            warnings.push(format!("dropped conflict {a}, {b}: event deleted by completion"));
        }
    }
    conflicts.sort();
    conflicts.dedup();
    Ok(Repository { dsc, versions, conflicts, delta, warnings })
}

pub fn ingest(path: &Path, expansion_cap: usize) -> Result<Repository> {
    ingest_str(&std::fs::read_to_string(path)?, expansion_cap)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub formula: String,
    pub objective: ObjectiveSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveSpec {
    Cardinality,
    Weights { weights: BTreeMap<String, f64> },
    /// Uses the repository's conflict list when `pairs` is absent.
    Conflicts {
        #[serde(default)]
        pairs: Option<Vec<(String, String)>>,
    },
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(e.message().to_string()))
    }

    pub fn formula(&self) -> Result<Formula> {
        Ok(parse_formula(&self.formula)?)
    }

    pub fn to_problem(&self, repo: &Repository) -> Result<DependencyProblem> {
        let id = |n: &String| EventId::new(n.as_str()).map_err(|e| Error::InvalidObjective(e.to_string()));
        let objective = match &self.objective {
            ObjectiveSpec::Cardinality => Objective::Cardinality,
            ObjectiveSpec::Weights { weights } => Objective::Weighted {
                weights: weights.iter().map(|(e, w)| Ok((id(e)?, *w))).collect::<Result<_>>()?,
            },
            ObjectiveSpec::Conflicts { pairs: Some(pairs) } => Objective::Conflicts {
                pairs: pairs.iter().map(|(a, b)| Ok((id(a)?, id(b)?))).collect::<Result<_>>()?,
            },
            ObjectiveSpec::Conflicts { pairs: None } => Objective::Conflicts { pairs: repo.conflicts.clone() },
        };
        Ok(DependencyProblem { formula: self.formula()?, objective })
    }
}
