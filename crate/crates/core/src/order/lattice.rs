use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// A finite lattice. Meets and joins are read off the reachability matrix of
/// the underlying poset, so no quadratic tables are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    top: usize,
    bottom: usize,
}

impl FiniteLattice {
    /// Checks that every pair of elements has a meet and a join.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        if poset.is_empty() {
            return Err(Error::NotALattice("empty poset".into()));
        }
        let n = poset.len();
        for a in 0..n {
            for b in a + 1..n {
                if poset.join(a, b).is_none() {
                    return Err(Error::NotALattice(format!(
                        "`{}` and `{}` have no join",
                        poset.id(a),
                        poset.id(b)
                    )));
                }
                if poset.meet(a, b).is_none() {
                    return Err(Error::NotALattice(format!(
                        "`{}` and `{}` have no meet",
                        poset.id(a),
                        poset.id(b)
                    )));
                }
            }
        }
        Ok(Self::trusted(poset))
    }

    pub(crate) fn trusted(poset: FinitePoset) -> Self {
        let n = poset.len();
        debug_assert!(n > 0);
        FiniteLattice { poset, top: n - 1, bottom: 0 }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn id(&self, i: usize) -> &str {
        self.poset.id(i)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.poset.meet(a, b).expect("lattice meet")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.poset.join(a, b).expect("lattice join")
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a set; the empty meet is the top.
    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Relative pseudo-complement: greatest `x` with `a ∧ x <= b`, if it exists.
    /// Always exists in a distributive lattice.
    pub fn implies(&self, a: usize, b: usize) -> Option<usize> {
        let candidates: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(self.meet(a, x), b))
            .collect();
        let best = self.join_all(candidates.iter().copied());
        self.leq(self.meet(a, best), b).then_some(best)
    }

    /// Precomputed implication table for distributive lattices.
    pub fn implication_table(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = self.implies(a, b).ok_or(Error::NotDistributive)?;
            }
        }
        Ok(t)
    }
}

/// A lattice whose elements are subsets of some ground set, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct SetLattice {
    lattice: FiniteLattice,
    sets: Vec<BitSet>,
    index: HashMap<BitSet, usize>,
}

impl SetLattice {
    /// `sets` must contain a least and greatest member and be closed under the
    /// lattice operations induced by inclusion; the caller vouches for this.
    pub(crate) fn from_family(mut sets: Vec<BitSet>, label: impl Fn(&BitSet) -> String) -> Self {
        sets.sort();
        sets.dedup();
        let n = sets.len();
        let up: Vec<BitSet> = (0..n)
            .map(|i| (i..n).filter(|&j| sets[i].is_subset(&sets[j])).collect())
            .collect();
        let ids = sets.iter().map(&label).collect();
        let poset = FinitePoset::trusted(ids, up);
        let index = sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        SetLattice { lattice: FiniteLattice::trusted(poset), sets, index }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn poset(&self) -> &FinitePoset {
        self.lattice.poset()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &BitSet {
        &self.sets[i]
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }
}

/// The join-irreducible elements with the induced order, plus the map back to
/// the indices of `poset`. A global bottom (the empty join) is excluded.
pub fn join_irreducibles(poset: &FinitePoset) -> (FinitePoset, Vec<usize>) {
    let keep: BitSet = (0..poset.len())
        .filter(|&x| is_join_irreducible(poset, x))
        .collect();
    poset.induced(&keep)
}

/// `x` is join-reducible exactly when it is the least upper bound of the
/// elements strictly below it.
pub fn is_join_irreducible(poset: &FinitePoset, x: usize) -> bool {
    let below = poset.strictly_below(x);
    let ub = poset.upper_bounds(&below.to_vec());
    poset.least_of(&ub) != Some(x)
}

/// Downsets ordered by inclusion; members are sets of `poset` indices.
pub fn downsets(poset: &FinitePoset) -> SetLattice {
    closed_family(poset, |x| poset.strictly_below(x))
}

/// Up-sets ordered by inclusion.
pub fn upsets(poset: &FinitePoset) -> SetLattice {
    closed_family(poset, |x| poset.strictly_above(x))
}

fn closed_family(poset: &FinitePoset, needs: impl Fn(usize) -> BitSet) -> SetLattice {
    let n = poset.len();
    let prereq: Vec<BitSet> = (0..n).map(needs).collect();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut stack = vec![BitSet::new()];
    seen.insert(BitSet::new());
    while let Some(s) = stack.pop() {
        for x in 0..n {
            if !s.contains(x) && prereq[x].is_subset(&s) {
                let mut t = s.clone();
                t.insert(x);
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
    }
    SetLattice::from_family(seen.into_iter().collect(), |s| poset.set_label(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vees() -> FinitePoset {
        FinitePoset::from_named(&["b", "c", "ab", "ac"], &[("b", "ab"), ("c", "ac")]).unwrap()
    }

    #[test]
    fn downsets_small_cases() {
        let chain = downsets(&FinitePoset::chain(2));
        assert_eq!(chain.len(), 3);
        assert_eq!(chain.lattice().poset().cover_pairs().len(), 2);
        assert_eq!(downsets(&FinitePoset::discrete(2)).len(), 4);
        assert_eq!(downsets(&two_vees()).len(), 9);
        assert_eq!(downsets(&FinitePoset::discrete(0)).len(), 1);
    }

    #[test]
    fn upsets_small_cases() {
        assert_eq!(upsets(&FinitePoset::chain(2)).len(), 3);
        assert_eq!(upsets(&FinitePoset::discrete(2)).len(), 4);
    }

    #[test]
    fn join_irreducibles_of_boolean_lattice_are_atoms() {
        let b3 = downsets(&FinitePoset::discrete(3));
        let (j, map) = join_irreducibles(b3.lattice().poset());
        assert_eq!(j.len(), 3);
        assert!(map.iter().all(|&i| b3.set(i).len() == 1));
        assert!(j.maximal_elements().len() == 3);
    }

    #[test]
    fn single_element_has_no_irreducibles() {
        let (j, _) = join_irreducibles(&FinitePoset::discrete(1));
        assert!(j.is_empty());
        // two minimal elements are both irreducible
        let (j2, _) = join_irreducibles(&FinitePoset::discrete(2));
        assert_eq!(j2.len(), 2);
    }

    #[test]
    fn implication_in_chain() {
        let l = FiniteLattice::from_poset(FinitePoset::chain(3)).unwrap();
        assert_eq!(l.implies(2, 1), Some(1));
        assert_eq!(l.implies(1, 2), Some(2));
        assert_eq!(l.implies(0, 0), Some(2));
    }

    #[test]
    fn non_lattice_rejected() {
        assert!(FiniteLattice::from_poset(FinitePoset::discrete(2)).is_err());
    }
}
