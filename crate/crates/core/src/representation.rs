//! Recovering a DSC from a lattice in the image of rdp.
//!
//! The free DSC on the join-irreducibles has rdp equal to the downsets of
//! the irreducibles. Pairs of irreducibles that the lattice glues together
//! (some `x < a ∨ b` with `x ∨ a = x ∨ b = a ∨ b`) are then merged into one
//! event with the union of their alternatives.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dsc::{complete_pre_dsc, Alternatives, DepSet, Dsc, EventId, PreDsc, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::order::classify::{find_m3, is_upper_semimodular};
use crate::order::{is_isomorphic, join_irreducibles, FiniteLattice, DEFAULT_ISO_CAP};
use crate::rdp::build_rdp;

/// An identified pair of join-irreducibles with the element witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPair {
    pub a: String,
    pub b: String,
    pub witness: String,
}

/// Pairs of join-irreducibles that add the same event: with `x` the join of
/// their lower covers, `x < a ∨ b` and `x ∨ a = x ∨ b = a ∨ b`. Reported with
/// lattice indices `a < b`; the witness is that `x`.
pub fn compute_q(l: &FiniteLattice) -> Vec<QPair> {
    let (_, irr) = join_irreducibles(l.poset());
    let lower = |j: usize| l.poset().lower_covers(j)[0];
    let mut out = Vec::new();
    for (i, &a) in irr.iter().enumerate() {
        for &b in &irr[i + 1..] {
            let ab = l.join(a, b);
            let x = l.join(lower(a), lower(b));
            if x != ab && l.join(x, a) == ab && l.join(x, b) == ab {
                out.push(QPair { a: l.id(a).to_string(), b: l.id(b).to_string(), witness: l.id(x).to_string() });
            }
        }
    }
    out
}

/// Pairs satisfying the witness condition with any `x` at all. This is a
/// superset of `compute_q` and can glue distinct events together.
pub fn compute_q_any_witness(l: &FiniteLattice) -> Vec<QPair> {
    let (_, irr) = join_irreducibles(l.poset());
    let mut out = Vec::new();
    for (i, &a) in irr.iter().enumerate() {
        for &b in &irr[i + 1..] {
            let ab = l.join(a, b);
            let witness = (0..l.len()).find(|&x| x != ab && l.leq(x, ab) && l.join(x, a) == ab && l.join(x, b) == ab);
            if let Some(x) = witness {
                out.push(QPair { a: l.id(a).to_string(), b: l.id(b).to_string(), witness: l.id(x).to_string() });
            }
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra.max(rb)] = ra.min(rb);
    }
}

/// DSC whose rdp is `l`, for upper semimodular lattices without M3.
pub fn uds(l: &FiniteLattice) -> Result<Dsc> {
    uds_with_order(l, &compute_q(l))
}

/// As `uds`, merging along `pairs` in the given order.
pub fn uds_with_order(l: &FiniteLattice, pairs: &[QPair]) -> Result<Dsc> {
    if !is_upper_semimodular(l) {
        return Err(Error::NotInImage("not upper semimodular".into()));
    }
    if let Some([a, b, c]) = find_m3(l) {
        return Err(Error::NotInImage(format!("contains M3 on {}, {}, {}", l.id(a), l.id(b), l.id(c))));
    }
    let (jposet, _) = join_irreducibles(l.poset());
    let ids = jposet.ids();
    // Union-find over names sorted by id so the root is the least id.
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&x, &y| ids[x].cmp(&ids[y]));
    let rank: Vec<usize> = {
        let mut r = vec![0; ids.len()];
        for (pos, &x) in order.iter().enumerate() {
            r[x] = pos;
        }
        r
    };
    let mut uf = UnionFind::new(ids.len());
    for p in pairs {
        let a = jposet.index_of(&p.a).ok_or_else(|| Error::NotAnElement(p.a.clone()))?;
        let b = jposet.index_of(&p.b).ok_or_else(|| Error::NotAnElement(p.b.clone()))?;
        uf.union(rank[a], rank[b]);
    }
    let rep = |uf: &mut UnionFind, x: usize| EventId::new(ids[order[uf.find(rank[x])]].clone());
    let mut deps: BTreeMap<EventId, Alternatives> = BTreeMap::new();
    for x in 0..jposet.len() {
        let set: DepSet = jposet
            .strictly_below(x)
            .iter()
            .map(|y| rep(&mut uf, y))
            .collect::<Result<_>>()?;
        deps.entry(rep(&mut uf, x)?).or_default().insert(set);
    }
    complete_pre_dsc(&PreDsc::new(deps)?, DEFAULT_EXPANSION_CAP)
}

/// Classes of names merged by `pairs`, keyed by their least member.
pub fn identification_classes(pairs: &[QPair]) -> BTreeMap<String, Vec<String>> {
    let mut names: Vec<&str> = pairs.iter().flat_map(|p| [p.a.as_str(), p.b.as_str()]).collect();
    names.sort();
    names.dedup();
    let pos = |n: &str| names.binary_search(&n).expect("collected above");
    let mut uf = UnionFind::new(names.len());
    for p in pairs {
        uf.union(pos(&p.a), pos(&p.b));
    }
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        let root = uf.find(i);
        out.entry(names[root].to_string()).or_default().push(n.to_string());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub passed: bool,
    pub states: usize,
    pub roundtrip_states: usize,
    /// Each event of the recovered DSC with the irreducible states merged into it.
    pub identifications: Vec<(String, Vec<String>)>,
    /// Original rdp index of each recovered rdp element, when isomorphic.
    pub isomorphism: Option<Vec<usize>>,
}

pub fn roundtrip_check(d: &Dsc, state_cap: usize) -> Result<RoundtripReport> {
    let r = build_rdp(d, state_cap)?;
    let back = uds(r.lattice())?;
    let r2 = build_rdp(&back, state_cap)?;
    let isomorphism = is_isomorphic(r2.lattice().poset(), r.lattice().poset(), DEFAULT_ISO_CAP)?;
    let classes = identification_classes(&compute_q(r.lattice()));
    let identifications = back
        .events()
        .map(|e| {
            let merged = classes.get(e.as_str()).cloned().unwrap_or_else(|| vec![e.to_string()]);
            (e.to_string(), merged)
        })
        .collect();
    Ok(RoundtripReport {
        passed: isomorphism.is_some(),
        states: r.len(),
        roundtrip_states: r2.len(),
        identifications,
        isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::classify::{m3, n5, s7};
    use crate::order::{downsets, FinitePoset};
    use crate::rdp::DEFAULT_STATE_CAP;

    #[test]
    fn s7_has_one_pair() {
        let q = compute_q(&s7());
        assert_eq!(q, vec![QPair { a: "ab".into(), b: "ac".into(), witness: "bc".into() }]);
    }

    #[test]
    fn any_witness_overidentifies() {
        // a needs b or c, d needs c or both a and b. The states {a,c} and
        // {a,b,d} add different events but {b,c,d} joins each up to the top.
        let pre = PreDsc::from_lists(&[
            ("a", &[&["b"], &["c"]]),
            ("b", &[&[]]),
            ("c", &[&[]]),
            ("d", &[&["c"], &["a", "b"]]),
        ])
        .unwrap();
        let r = build_rdp(&Dsc::try_from_pre(pre).unwrap(), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.len(), 12);
        let loose = compute_q_any_witness(r.lattice());
        assert!(loose.iter().any(|p| p.a == "{a,c}" && p.b == "{a,b,d}" && p.witness == "{b,c,d}"));
        let q = compute_q(r.lattice());
        assert_eq!(q.len(), 2);
        assert!(q.iter().all(|p| loose.contains(p) || loose.iter().any(|l| l.a == p.a && l.b == p.b)));
    }

    #[test]
    fn distributive_has_none() {
        let cube = downsets(&FinitePoset::discrete(3)).lattice().clone();
        assert!(compute_q(&cube).is_empty());
    }

    #[test]
    fn s7_recovers_choice() {
        let d = uds(&s7()).unwrap();
        let ab = d.alternatives("ab").unwrap();
        let expect: Alternatives = [["b"], ["c"]]
            .iter()
            .map(|s| s.iter().map(|e| EventId::new(*e).unwrap()).collect())
            .collect();
        assert_eq!(ab, &expect);
        assert_eq!(d.len(), 3);
        let r = build_rdp(&d, DEFAULT_STATE_CAP).unwrap();
        assert!(is_isomorphic(r.lattice().poset(), s7().poset(), DEFAULT_ISO_CAP).unwrap().is_some());
    }

    #[test]
    fn chain_gives_chain() {
        let c = FiniteLattice::from_poset(FinitePoset::chain(3)).unwrap();
        let d = uds(&c).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.alternatives("x2").unwrap().iter().all(|s| s.len() == 1));
    }

    #[test]
    fn outside_the_image() {
        assert!(matches!(uds(&m3()), Err(Error::NotInImage(_))));
        assert!(matches!(uds(&n5()), Err(Error::NotInImage(_))));
    }

    #[test]
    fn running_example_roundtrips() {
        let pre = PreDsc::from_lists(&[("a", &[&["b"], &["c"]]), ("b", &[&[]]), ("c", &[&[]])]).unwrap();
        let rep = roundtrip_check(&Dsc::try_from_pre(pre).unwrap(), DEFAULT_STATE_CAP).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.states, 7);
        assert!(rep.identifications.iter().any(|(_, m)| m == &["{a,b}".to_string(), "{a,c}".to_string()]));
    }
}
