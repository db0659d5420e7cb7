//! Hasse diagrams as DOT, and element/edge lists as JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Largest diagram `export_dot` renders.
pub const DEFAULT_RENDER_CAP: usize = 5_000;

fn escape_html(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Cover relation drawn bottom to top. Elements in `marked` are underlined.
pub fn export_dot(p: &FinitePoset, marked: Option<&BitSet>, cap: usize) -> Result<String> {
    if p.len() > cap {
        return Err(Error::CapExceeded { what: "rendered elements", cap });
    }
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for i in 0..p.len() {
        let label = escape_html(p.id(i));
        if marked.is_some_and(|m| m.contains(i)) {
            let _ = writeln!(out, "  n{i} [label=<<u>{label}</u>>];");
        } else {
            let _ = writeln!(out, "  n{i} [label=<{label}>];");
        }
    }
    for (lo, hi) in p.cover_pairs() {
        let _ = writeln!(out, "  n{lo} -> n{hi} [arrowhead=none];");
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagram {
    pub elements: Vec<String>,
    /// Cover pairs `(lower, upper)` by element index.
    pub covers: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed: Option<Vec<usize>>,
}

pub fn diagram(p: &FinitePoset, marked: Option<&BitSet>) -> Diagram {
    Diagram {
        elements: p.ids().to_vec(),
        covers: p.cover_pairs(),
        fixed: marked.map(|m| m.iter().collect()),
    }
}
