//! Command-line front end. `run` is the whole program; the binary only
//! forwards its arguments and exit status.
//!
//! Exit codes: 0 success, 2 usage, 3 parse or i/o error, 4 validation
//! error, 5 cap exceeded, 6 unsatisfiable, 7 a law or invariant failed,
//! 8 any other error.

mod export;
mod repo;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::combinatorics::{chain_product_width, width_bound};
use crate::completion::{bl_of_rdp, bl_topology, merkle_digest, BlLattice};
use crate::dsc::DEFAULT_EXPANSION_CAP;
use crate::error::{Error, Result};
use crate::logic::{build_ubl_for_bl, check_modal_laws_with, lift_nucleus_ubl, UblLattice, DEFAULT_UBL_CAP};
use crate::nucleus::{nucleus_quotient, Nucleus, NucleusReport};
use crate::order::{classify_lattice, width_height, FinitePoset};
use crate::rdp::{build_rdp, RdpLattice, DEFAULT_STATE_CAP};
use crate::representation::roundtrip_check;
use crate::solver::solve_with;
use crate::versioning::{induced_pvp, lift_nucleus_bl};

pub use export::{diagram, export_dot, Diagram, DEFAULT_RENDER_CAP};
pub use repo::{ingest, ingest_str, ObjectiveSpec, ProblemFile, RepoFile, Repository};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_CAP: i32 = 5;
pub const EXIT_UNSATISFIABLE: i32 = 6;
pub const EXIT_LAWS: i32 = 7;
pub const EXIT_OTHER: i32 = 8;

#[derive(Parser, Debug)]
#[command(name = "depchoice", version, about = "Dependency structures with choice")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on reachable states.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    max_states: usize,
    /// Cap on materialized requirement lattices.
    #[arg(long, global = true, default_value_t = DEFAULT_UBL_CAP)]
    max_ubl: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct View {
    /// Print only the number of elements.
    #[arg(long)]
    count: bool,
    /// Print the Hasse diagram as DOT.
    #[arg(long)]
    dot: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Rdp,
    Bl,
    Ubl,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complete and validate a repository.
    Validate { repo: PathBuf },
    /// Lattice of reachable states.
    Rdp {
        repo: PathBuf,
        #[command(flatten)]
        view: View,
    },
    /// Distributive completion by traces.
    Bl {
        repo: PathBuf,
        #[command(flatten)]
        view: View,
        /// List the Merkle digest of every trace.
        #[arg(long)]
        digests: bool,
    },
    /// Lattice of requirements over the traces.
    Ubl {
        repo: PathBuf,
        #[command(flatten)]
        view: View,
    },
    /// Nucleus induced by the version map.
    Nucleus {
        repo: PathBuf,
        #[arg(long, value_enum, default_value = "bl")]
        on: Target,
        /// List fixed elements only.
        #[arg(long)]
        fixpoints: bool,
        /// Show the lattice of fixed elements.
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Minimize an objective over the states satisfying a formula.
    Solve { repo: PathBuf, problem: PathBuf },
    /// Check modal laws, nucleus invariants and the representation roundtrip.
    Laws { repo: PathBuf },
    /// Widths and heights, and the width bound.
    Widths {
        repo: Option<PathBuf>,
        /// Chain lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        chains: Vec<usize>,
    },
}

struct Output {
    text: String,
    json: Value,
    status: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, status: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Format(_) | Error::Io(_) => EXIT_PARSE,
        Error::UnknownEvent(_)
        | Error::NoAlternatives(_)
        | Error::DuplicateId(_)
        | Error::ValidationFailed(_)
        | Error::InvalidVersionMap(_)
        | Error::InvalidObjective(_)
        | Error::UnknownAtom(_)
        | Error::ModalWithoutNucleus => EXIT_VALIDATION,
        Error::CapExceeded { .. } | Error::Exploded { .. } => EXIT_CAP,
        Error::Unsatisfiable => EXIT_UNSATISFIABLE,
        _ => EXIT_OTHER,
    }
}

/// Runs one command; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json values serialize"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            o.status
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "code": exit_code(&e) }));
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Built {
    repo: Repository,
    rdp: RdpLattice,
    bl: BlLattice,
}

fn load(path: &Path, cli: &Cli) -> Result<Built> {
    let repo = ingest(path, DEFAULT_EXPANSION_CAP)?;
    let rdp = build_rdp(&repo.dsc, cli.max_states)?;
    let bl = bl_of_rdp(&rdp);
    Ok(Built { repo, rdp, bl })
}

fn version_nuclei(b: &Built) -> Result<(Nucleus, Nucleus)> {
    let p = induced_pvp(&b.rdp, &b.repo.versions)?;
    Ok((p.to_nucleus()?, lift_nucleus_bl(&b.bl, &p)?))
}

fn ubl(b: &Built, cli: &Cli) -> Result<UblLattice> {
    build_ubl_for_bl(&b.bl, cli.max_ubl)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { repo } => validate(repo),
        Command::Rdp { repo, view } => {
            let b = load(repo, cli)?;
            show_lattice(b.rdp.lattice().poset(), view)
        }
        Command::Bl { repo, view, digests } => {
            let b = load(repo, cli)?;
            if *digests {
                show_digests(&b.bl)
            } else {
                show_lattice(b.bl.lattice().poset(), view)
            }
        }
        Command::Ubl { repo, view } => {
            let b = load(repo, cli)?;
            show_lattice(ubl(&b, cli)?.lattice().poset(), view)
        }
        Command::Nucleus { repo, on, fixpoints, quotient, dot } => {
            let b = load(repo, cli)?;
            let (rn, bn) = version_nuclei(&b)?;
            let n = match on {
                Target::Rdp => rn,
                Target::Bl => bn,
                Target::Ubl => lift_nucleus_ubl(&ubl(&b, cli)?, &bn)?,
            };
            show_nucleus(&n, *fixpoints, *quotient, *dot)
        }
        Command::Solve { repo, problem } => {
            let b = load(repo, cli)?;
            let pf = ProblemFile::parse(&std::fs::read_to_string(problem)?)?;
            let p = pf.to_problem(&b.repo)?;
            let modality = if p.formula.has_modality() { Some(version_nuclei(&b)?.1) } else { None };
            let s = solve_with(&b.rdp, &b.bl, &p, modality.as_ref())?;
            let show = |v: &[crate::dsc::EventId]| {
                format!("{{{}}}", v.iter().map(|e| e.as_str()).collect::<Vec<_>>().join(","))
            };
            let mut text = format!("state: {}\ntrace state: {}\nvalue: {}\n", show(&s.state), s.trace_state, s.value);
            for o in &s.all_optima {
                text.push_str(&format!("optimum: {}\n", show(o)));
            }
            Ok(Output::ok(text, serde_json::to_value(&s).expect("solutions serialize")))
        }
        Command::Laws { repo } => laws(&load(repo, cli)?, cli),
        Command::Widths { repo, chains } => widths(repo.as_deref(), chains, cli),
    }
}

fn validate(path: &Path) -> Result<Output> {
    let r = ingest(path, DEFAULT_EXPANSION_CAP)?;
    let mut text = format!(
        "events: {}\ncompletion: {} deleted, {} sets closed, {} sets dropped\nversion pairs: {}\nconflicts: {}\n",
        r.dsc.len(),
        r.delta.deleted_events.len(),
        r.delta.closed_sets,
        r.delta.dropped_sets,
        r.versions.pairs().count(),
        r.conflicts.len()
    );
    for w in &r.warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    text.push_str("valid\n");
    let json = json!({
        "valid": true,
        "events": r.dsc.events().collect::<Vec<_>>(),
        "completion": r.delta,
        "versions": r.versions.pairs().collect::<Vec<_>>(),
        "conflicts": r.conflicts,
        "warnings": r.warnings,
        "normalized": RepoFile::from_repository(&r),
    });
    Ok(Output::ok(text, json))
}

fn show_lattice(p: &FinitePoset, view: &View) -> Result<Output> {
    let d = diagram(p, None);
    let json = if view.count { json!({ "count": p.len() }) } else { serde_json::to_value(&d).expect("diagrams serialize") };
    if view.count {
        return Ok(Output::ok(format!("{}\n", p.len()), json));
    }
    if view.dot {
        return Ok(Output::ok(export_dot(p, None, DEFAULT_RENDER_CAP)?, json));
    }
    let mut text = format!("{} elements\n", p.len());
    if let Ok(l) = crate::order::FiniteLattice::from_poset(p.clone()) {
        let c = classify_lattice(&l);
        text.push_str(&format!(
            "distributive: {}, modular: {}, upper semimodular: {}, contains M3: {}\n",
            c.distributive, c.modular, c.upper_semimodular, c.has_m3
        ));
    }
    for (lo, hi) in &d.covers {
        text.push_str(&format!("{} < {}\n", d.elements[*lo], d.elements[*hi]));
    }
    Ok(Output::ok(text, json))
}

fn show_digests(b: &BlLattice) -> Result<Output> {
    let d = merkle_digest(b)?;
    let labels = d.labels().ok_or(Error::MissingLabels)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for l in labels {
        let hex = l.digest_hex().unwrap_or_default();
        text.push_str(&format!("{} {}\n", l.name(), hex));
        rows.push(json!({ "trace": l.name(), "digest": hex }));
    }
    Ok(Output::ok(text, Value::Array(rows)))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text(r: &NucleusReport) -> String {
    let mut t = format!(
        "monotone: {}\ninflationary: {}\nidempotent: {}\nmeet preserving: {}\njoin preserving: {}\n",
        yes(r.monotone),
        yes(r.inflationary),
        yes(r.idempotent),
        yes(r.meet_preserving),
        yes(r.join_preserving)
    );
    for c in &r.counterexamples {
        t.push_str(&format!("counterexample: {c}\n"));
    }
    t
}

fn show_nucleus(n: &Nucleus, fixpoints: bool, quotient: bool, dot: bool) -> Result<Output> {
    let l = n.carrier();
    let fixed = n.fixed_points();
    let ids: Vec<&str> = fixed.iter().map(|&i| l.id(i)).collect();
    if quotient {
        let q = nucleus_quotient(n);
        let p = q.lattice.poset();
        let json = serde_json::to_value(diagram(p, None)).expect("diagrams serialize");
        if dot {
            return Ok(Output::ok(export_dot(p, None, DEFAULT_RENDER_CAP)?, json));
        }
        let mut text = format!("quotient: {} elements\n", p.len());
        for (lo, hi) in p.cover_pairs() {
            text.push_str(&format!("{} < {}\n", p.id(lo), p.id(hi)));
        }
        return Ok(Output::ok(text, json));
    }
    let marked: BitSet = fixed.iter().copied().collect();
    if dot {
        let json = serde_json::to_value(diagram(l.poset(), Some(&marked))).expect("diagrams serialize");
        return Ok(Output::ok(export_dot(l.poset(), Some(&marked), DEFAULT_RENDER_CAP)?, json));
    }
    if fixpoints {
        let text = ids.iter().map(|s| format!("{s}\n")).collect();
        return Ok(Output::ok(text, json!(ids)));
    }
    let report = n.check();
    let mut text = format!("{} elements, {} fixed\n", l.len(), fixed.len());
    text.push_str(&format!("fixed: {}\n", ids.join(", ")));
    text.push_str(&report_text(&report));
    let image: Vec<(&str, &str)> = (0..l.len()).map(|x| (l.id(x), l.id(n.apply(x)))).collect();
    Ok(Output::ok(text, json!({ "fixed": ids, "report": report, "map": image })))
}

fn laws(b: &Built, cli: &Cli) -> Result<Output> {
    let mut checks: Vec<(String, bool, Option<String>)> = Vec::new();
    let (rn, bn) = version_nuclei(b)?;
    let describe = |r: &NucleusReport| r.counterexamples.first().cloned();
    let rr = rn.check();
    checks.push(("version nucleus on rdp".into(), rr.is_nucleus(), describe(&rr)));
    let br = bn.check();
    checks.push(("version nucleus on bl".into(), br.is_nucleus(), describe(&br)));
    let top = bl_topology(b.bl.lattice())?.check();
    checks.push(("topology nucleus on bl".into(), top.is_nucleus(), describe(&top)));
    let u = ubl(b, cli)?;
    let un = lift_nucleus_ubl(&u, &bn)?;
    let ur = un.check();
    checks.push(("version nucleus on ubl".into(), ur.is_nucleus(), describe(&ur)));
    let report = check_modal_laws_with(&un, &u.implication_table());
    for l in &report.laws {
        checks.push((format!("modal law {}", l.law), l.holds, l.counterexample.clone()));
    }
    let rt = roundtrip_check(&b.repo.dsc, cli.max_states)?;
    let rt_note = (!rt.passed).then(|| format!("{} states became {}", rt.states, rt.roundtrip_states));
    checks.push(("representation roundtrip".into(), rt.passed, rt_note));

    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, ok, note) in &checks {
        text.push_str(&format!("{} {name}", if *ok { "PASS" } else { "FAIL" }));
        if let Some(n) = note.as_ref().filter(|_| !ok) {
            text.push_str(&format!(" ({n})"));
        }
        text.push('\n');
        rows.push(json!({ "check": name, "passed": ok, "counterexample": note }));
    }
    let status = if checks.iter().all(|c| c.1) { EXIT_OK } else { EXIT_LAWS };
    Ok(Output { text, json: Value::Array(rows), status })
}

fn widths(repo: Option<&Path>, chains: &[usize], cli: &Cli) -> Result<Output> {
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    if let Some(path) = repo {
        let b = load(path, cli)?;
        let (rw, rh) = width_height(b.rdp.lattice().poset());
        let (bw, bh) = width_height(b.bl.lattice().poset());
        let (jw, jh) = width_height(b.bl.irreducibles());
        let bound = width_bound(b.bl.irreducibles());
        text.push_str(&format!("rdp: width {rw}, height {rh}\n"));
        text.push_str(&format!("bl: width {bw}, height {bh}\n"));
        text.push_str(&format!("traces: width {jw}, height {jh}\n"));
        text.push_str(&format!("width bound: {bound} (exact {bw})\n"));
        json.insert("rdp".into(), json!({ "width": rw, "height": rh }));
        json.insert("bl".into(), json!({ "width": bw, "height": bh }));
        json.insert("traces".into(), json!({ "width": jw, "height": jh }));
        json.insert("width_bound".into(), json!(bound.to_string()));
    }
    if !chains.is_empty() {
        if chains.contains(&0) {
            return Err(Error::Format("chain lengths must be positive".into()));
        }
        let w = chain_product_width(chains);
        let shown: Vec<String> = chains.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("chains {}: width {w}\n", shown.join(",")));
        json.insert("chain_product_width".into(), json!(w.to_string()));
    }
    if repo.is_none() && chains.is_empty() {
        return Err(Error::Format("widths needs a repository or --chains".into()));
    }
    Ok(Output::ok(text, Value::Object(json)))
}
