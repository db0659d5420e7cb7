//! The modal laws of a nucleus, evaluated in the lattice it acts on.

use serde::Serialize;

use crate::error::Result;
use crate::nucleus::Nucleus;

pub const MODAL_LAWS: [&str; 6] = [
    "x -> <>x",
    "<><>x -> <>x",
    "(x -> y) -> (<>x -> <>y)",
    "<>(x & y) = <>x & <>y",
    "x & <>y -> <>(x & y)",
    "<>x & (x -> <>y) -> <>y",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub holds: bool,
    /// First failing assignment, as element ids.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModalLawReport {
    pub laws: Vec<LawResult>,
}

impl ModalLawReport {
    pub fn all_hold(&self) -> bool {
        self.laws.iter().all(|l| l.holds)
    }
}

/// Evaluates every law on all elements (pairs for binary laws), using the
/// lattice's own meet and implication; a law holds when it evaluates to top.
/// Fails with `NotDistributive` when implications do not exist.
pub fn check_modal_laws(n: &Nucleus) -> Result<ModalLawReport> {
    let table = n.carrier().implication_table()?;
    Ok(check_modal_laws_with(n, &table))
}

/// As `check_modal_laws`, with a precomputed implication table
/// (`x * len + y` holds `x -> y`).
pub fn check_modal_laws_with(n: &Nucleus, implication: &[usize]) -> ModalLawReport {
    let l = n.carrier();
    let size = l.len();
    let top = l.top();
    let imp = |a: usize, b: usize| implication[a * size + b];
    let d = |a: usize| n.apply(a);
    let m = |a: usize, b: usize| l.meet(a, b);
    let unary: [(usize, fn(&dyn Fn(usize) -> usize, &dyn Fn(usize, usize) -> usize, usize) -> usize); 2] = [
        (0, |d, imp, x| imp(x, d(x))),
        (1, |d, imp, x| imp(d(d(x)), d(x))),
    ];
    let mut laws = Vec::with_capacity(6);
    for (k, law) in unary {
        let bad = (0..size).find(|&x| law(&d, &imp, x) != top);
        laws.push(LawResult {
            law: MODAL_LAWS[k],
            holds: bad.is_none(),
            counterexample: bad.map(|x| format!("x = {}", l.id(x))),
        });
    }
    let binary: [Box<dyn Fn(usize, usize) -> bool>; 4] = [
        Box::new(|x, y| imp(imp(x, y), imp(d(x), d(y))) == top),
        Box::new(|x, y| d(m(x, y)) == m(d(x), d(y))),
        Box::new(|x, y| imp(m(x, d(y)), d(m(x, y))) == top),
        Box::new(|x, y| imp(m(d(x), imp(x, d(y))), d(y)) == top),
    ];
    for (k, law) in binary.iter().enumerate() {
        let bad = (0..size).flat_map(|x| (0..size).map(move |y| (x, y))).find(|&(x, y)| !law(x, y));
        laws.push(LawResult {
            law: MODAL_LAWS[k + 2],
            holds: bad.is_none(),
            counterexample: bad.map(|(x, y)| format!("x = {}, y = {}", l.id(x), l.id(y))),
        });
    }
    ModalLawReport { laws }
}
