//! Nuclei on finite lattices: inflationary, idempotent, meet-preserving
//! endomaps. Also the quotient onto the fixed elements.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::{FiniteLattice, FinitePoset};

#[derive(Clone, Debug)]
pub struct Nucleus {
    carrier: FiniteLattice,
    map: Vec<usize>,
}

/// Outcome of checking the nucleus laws; each flag lists one counterexample if it fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NucleusReport {
    pub monotone: bool,
    pub inflationary: bool,
    pub idempotent: bool,
    pub meet_preserving: bool,
    pub join_preserving: bool,
    pub counterexamples: Vec<String>,
}

impl NucleusReport {
    /// Join preservation is reported but not required.
    pub fn is_nucleus(&self) -> bool {
        self.monotone && self.inflationary && self.idempotent && self.meet_preserving
    }
}

impl Nucleus {
    pub fn new(carrier: FiniteLattice, map: Vec<usize>) -> Result<Self> {
        let n = Self::from_raw(carrier, map);
        let r = n.check();
        if r.is_nucleus() {
            Ok(n)
        } else {
            Err(Error::InvalidNucleus(r.counterexamples.join("; ")))
        }
    }

    /// No law checks; use `check` before relying on it.
    pub fn from_raw(carrier: FiniteLattice, map: Vec<usize>) -> Self {
        assert_eq!(carrier.len(), map.len(), "map must be total");
        Nucleus { carrier, map }
    }

    pub fn identity(carrier: FiniteLattice) -> Self {
        let map = (0..carrier.len()).collect();
        Nucleus { carrier, map }
    }

    /// Nucleus whose fixed elements are exactly `fixed`; that set must
    /// contain the top and be closed under meets and implications.
    pub fn from_fixed_set(carrier: FiniteLattice, fixed: &BitSet) -> Self {
        let map = (0..carrier.len())
            .map(|x| carrier.meet_all(fixed.iter().filter(|&f| carrier.leq(x, f))))
            .collect();
        Nucleus { carrier, map }
    }

    pub fn carrier(&self) -> &FiniteLattice {
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

    pub fn check(&self) -> NucleusReport {
        let l = &self.carrier;
        let j = &self.map;
        let n = l.len();
        let name = |x: usize| l.id(x).to_string();
        let mut r = NucleusReport {
            monotone: true,
            inflationary: true,
            idempotent: true,
            meet_preserving: true,
            join_preserving: true,
            counterexamples: Vec::new(),
        };
        for x in 0..n {
            if r.inflationary && !l.leq(x, j[x]) {
                r.inflationary = false;
                r.counterexamples.push(format!("not inflationary at {}", name(x)));
            }
            if r.idempotent && j[j[x]] != j[x] {
                r.idempotent = false;
                r.counterexamples.push(format!("not idempotent at {}", name(x)));
            }
            for y in 0..n {
                if r.monotone && l.leq(x, y) && !l.leq(j[x], j[y]) {
                    r.monotone = false;
                    r.counterexamples.push(format!("not monotone at {} <= {}", name(x), name(y)));
                }
                if r.meet_preserving && j[l.meet(x, y)] != l.meet(j[x], j[y]) {
                    r.meet_preserving = false;
                    r.counterexamples.push(format!("meet of {} and {} not preserved", name(x), name(y)));
                }
                if r.join_preserving && j[l.join(x, y)] != l.join(j[x], j[y]) {
                    r.join_preserving = false;
                }
            }
        }
        r
    }
}

/// The lattice of fixed elements together with the surjection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: FiniteLattice,
    /// Carrier index of each quotient element.
    pub fixed: Vec<usize>,
    /// Quotient index of the image of each carrier element.
    pub surjection: Vec<usize>,
}

/// Fixed elements in the induced order; meets are carrier meets and joins
/// are `j` of carrier joins.
pub fn nucleus_quotient(n: &Nucleus) -> Quotient {
    let l = n.carrier();
    let fixed = n.fixed_points();
    let fixed_set: BitSet = fixed.iter().copied().collect();
    let poset: FinitePoset = l.poset().induced(&fixed_set).0;
    let lattice = FiniteLattice::from_poset(poset).expect("fixed points of a nucleus form a lattice");
    let surjection = (0..l.len())
        .map(|x| fixed.iter().position(|&f| f == n.apply(x)).expect("image is fixed"))
        .collect();
    Quotient { lattice, fixed, surjection }
}
