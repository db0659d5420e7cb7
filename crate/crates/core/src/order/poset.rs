use std::collections::{BTreeSet, HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite partially ordered set stored as a reachability matrix.
///
/// Element indices always form a linear extension of the order: `i <= j`
/// implies `i` is not after `j`. Public constructors pick the extension by
/// repeatedly taking the minimal element with the smallest id.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    ids: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    index: HashMap<String, usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.up == other.up
    }
}

impl FinitePoset {
    /// Builds a poset from ids and a `leq` predicate over the given indices.
    pub fn new(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = ids.len();
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let up: Vec<BitSet> = (0..n)
            .map(|i| (0..n).filter(|&j| leq(i, j)).collect())
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::InvalidOrder(format!("`{}` is not <= itself", ids[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!(
                        "`{}` and `{}` are mutually below each other",
                        ids[i], ids[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidOrder(format!(
                        "relation is not transitive through `{}`",
                        ids[j]
                    )));
                }
            }
        }
        Ok(Self::canonicalize(ids, up))
    }

    /// Builds a poset as the reflexive-transitive closure of strict pairs `(lo, hi)`.
    pub fn from_pairs(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let mut up: Vec<BitSet> = (0..n).map(BitSet::singleton).collect();
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::InvalidOrder(format!("pair ({lo}, {hi}) out of range")));
            }
            up[lo].insert(hi);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::new(ids, |i, j| up[i].contains(j))
    }

    /// Convenience: poset over string ids with strict pairs given by id.
    pub fn from_named(ids: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let pos = |s: &str| {
            ids.iter()
                .position(|x| *x == s)
                .ok_or_else(|| Error::UnknownEvent(s.to_string()))
        };
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
            .collect::<Result<_>>()?;
        Self::from_pairs(ids.iter().map(|s| s.to_string()).collect(), &idx)
    }

    /// Discrete (antichain) poset on `n` elements named `0..n`.
    pub fn discrete(n: usize) -> Self {
        Self::trusted((0..n).map(|i| format!("x{i}")).collect(), (0..n).map(BitSet::singleton).collect())
    }

    /// Chain `x0 < x1 < ... < x(n-1)`.
    pub fn chain(n: usize) -> Self {
        Self::trusted(
            (0..n).map(|i| format!("x{i}")).collect(),
            (0..n).map(|i| (i..n).collect()).collect(),
        )
    }

    /// Product of chains with the given lengths, ordered componentwise.
    pub fn chain_product(lengths: &[usize]) -> Self {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for &h in lengths {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..h).map(move |v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        tuples.sort_by_key(|t| (t.iter().sum::<usize>(), t.clone()));
        let ids = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let up = tuples
            .iter()
            .map(|a| {
                (0..tuples.len())
                    .filter(|&j| a.iter().zip(&tuples[j]).all(|(x, y)| x <= y))
                    .collect()
            })
            .collect();
        Self::trusted(ids, up)
    }

    /// Accepts `up` rows whose index order is already a linear extension.
    pub(crate) fn trusted(ids: Vec<String>, up: Vec<BitSet>) -> Self {
        let n = ids.len();
        let mut down: Vec<BitSet> = vec![BitSet::new(); n];
        for (i, row) in up.iter().enumerate() {
            debug_assert!(row.first() == Some(i), "index order must be a linear extension");
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FinitePoset { ids, up, down, index }
    }

    fn canonicalize(ids: Vec<String>, up: Vec<BitSet>) -> Self {
        let n = ids.len();
        let mut indegree: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| i != j && up[i].contains(j)).count()).collect();
        let mut ready: BTreeSet<(String, usize)> =
            (0..n).filter(|&i| indegree[i] == 0).map(|i| (ids[i].clone(), i)).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(first) = ready.iter().next().cloned() {
            ready.remove(&first);
            let i = first.1;
            order.push(i);
            for j in up[i].iter() {
                if j != i {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.insert((ids[j].clone(), j));
                    }
                }
            }
        }
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let new_ids = order.iter().map(|&o| ids[o].clone()).collect();
        let new_up = order
            .iter()
            .map(|&o| up[o].iter().map(|j| pos[j]).collect())
            .collect();
        Self::trusted(new_ids, new_up)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{x : a <= x}`
    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// `{x : x <= a}`
    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn strictly_below(&self, a: usize) -> BitSet {
        let mut s = self.down[a].clone();
        s.remove(a);
        s
    }

    pub fn strictly_above(&self, a: usize) -> BitSet {
        let mut s = self.up[a].clone();
        s.remove(a);
        s
    }

    /// Elements covered by `a`, ascending.
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.strictly_below(a)
            .iter()
            .filter(|&y| self.up[y].intersection(&self.down[a]).len() == 2)
            .collect()
    }

    /// Elements covering `a`, ascending.
    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.strictly_above(a)
            .iter()
            .filter(|&y| self.down[y].intersection(&self.up[a]).len() == 2)
            .collect()
    }

    pub fn covers(&self, lo: usize, hi: usize) -> bool {
        lo != hi && self.leq(lo, hi) && self.up[lo].intersection(&self.down[hi]).len() == 2
    }

    /// All cover pairs `(lo, hi)` in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|hi| self.lower_covers(hi).into_iter().map(move |lo| (lo, hi)))
            .collect()
    }

    /// Least element of `set`, if it has one.
    pub fn least_of(&self, set: &BitSet) -> Option<usize> {
        let m = set.first()?;
        set.is_subset(&self.up[m]).then_some(m)
    }

    /// Greatest element of `set`, if it has one.
    pub fn greatest_of(&self, set: &BitSet) -> Option<usize> {
        let m = set.last()?;
        set.is_subset(&self.down[m]).then_some(m)
    }

    pub fn upper_bounds<'a>(&self, elems: impl IntoIterator<Item = &'a usize>) -> BitSet {
        let mut ub = BitSet::full(self.len());
        for &e in elems {
            ub.intersect_with(&self.up[e]);
        }
        ub
    }

    pub fn lower_bounds<'a>(&self, elems: impl IntoIterator<Item = &'a usize>) -> BitSet {
        let mut lb = BitSet::full(self.len());
        for &e in elems {
            lb.intersect_with(&self.down[e]);
        }
        lb
    }

    /// Least upper bound when it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.least_of(&self.up[a].intersection(&self.up[b]))
    }

    /// Greatest lower bound when it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest_of(&self.down[a].intersection(&self.down[b]))
    }

    pub fn join_of(&self, elems: &BitSet) -> Option<usize> {
        self.least_of(&self.upper_bounds(&elems.to_vec()))
    }

    pub fn meet_of(&self, elems: &BitSet) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(&elems.to_vec()))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].len() == 1).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].len() == 1).collect()
    }

    /// Maximal members of `set` under this order.
    pub fn maximal_in(&self, set: &BitSet) -> BitSet {
        set.iter()
            .filter(|&x| self.up[x].intersection(set).len() == 1)
            .collect()
    }

    /// Minimal members of `set` under this order.
    pub fn minimal_in(&self, set: &BitSet) -> BitSet {
        set.iter()
            .filter(|&x| self.down[x].intersection(set).len() == 1)
            .collect()
    }

    pub fn is_antichain(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.up[x].intersection(set).len() == 1)
    }

    pub fn is_downset(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    pub fn is_upset(&self, set: &BitSet) -> bool {
        set.iter().all(|x| self.up[x].is_subset(set))
    }

    /// Downward closure of `set`.
    pub fn down_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new();
        for x in set.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    /// Upward closure of `set`.
    pub fn up_closure(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new();
        for x in set.iter() {
            out.union_with(&self.up[x]);
        }
        out
    }

    /// The order-dual poset; ids are unchanged.
    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let rev = |i: usize| n - 1 - i;
        let ids = (0..n).map(|i| self.ids[rev(i)].clone()).collect();
        let up = (0..n)
            .map(|i| self.down[rev(i)].iter().map(rev).collect())
            .collect();
        Self::trusted(ids, up)
    }

    /// Sub-poset induced on `subset`, with the map from new to old indices.
    pub fn induced(&self, subset: &BitSet) -> (FinitePoset, Vec<usize>) {
        let old: Vec<usize> = subset.to_vec();
        let mut pos = HashMap::new();
        for (new, &o) in old.iter().enumerate() {
            pos.insert(o, new);
        }
        let ids = old.iter().map(|&o| self.ids[o].clone()).collect();
        let up = old
            .iter()
            .map(|&o| self.up[o].intersection(subset).iter().map(|j| pos[&j]).collect())
            .collect();
        (Self::trusted(ids, up), old)
    }

    /// Relabels elements; ids must stay unique.
    pub fn with_ids(&self, ids: Vec<String>) -> Result<FinitePoset> {
        assert_eq!(ids.len(), self.len());
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(Self::trusted(ids, self.up.clone()))
    }

    /// Number of elements in the longest chain.
    pub fn height(&self) -> usize {
        let mut best = vec![0usize; self.len()];
        for i in 0..self.len() {
            best[i] = 1 + self
                .strictly_below(i)
                .iter()
                .map(|j| best[j])
                .max()
                .unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Renders a set of element indices as `{id1,id2}`.
    pub fn set_label(&self, set: &BitSet) -> String {
        let parts: Vec<&str> = set.iter().map(|i| self.ids[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}
