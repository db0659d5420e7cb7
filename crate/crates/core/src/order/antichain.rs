use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Default cap on the number of antichains `enumerate_antichains` may produce.
pub const DEFAULT_ANTICHAIN_CAP: usize = 1_000_000;

/// Above this size `width` switches from enumeration to chain-cover matching.
pub const BRUTE_WIDTH_LIMIT: usize = 15;

/// All antichains of `poset`, including the empty one, in lexicographic
/// order of their sorted index sequences.
pub fn enumerate_antichains(poset: &FinitePoset, cap: usize) -> Result<Vec<BitSet>> {
    let mut out = Vec::new();
    let mut current = BitSet::new();
    let candidates = BitSet::full(poset.len());
    extend(poset, &mut current, &candidates, cap, &mut out)?;
    Ok(out)
}

fn extend(
    poset: &FinitePoset,
    current: &mut BitSet,
    candidates: &BitSet,
    cap: usize,
    out: &mut Vec<BitSet>,
) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::CapExceeded { what: "antichain count", cap });
    }
    out.push(current.clone());
    for x in candidates.iter() {
        let mut next = candidates.clone();
        next.difference_with(poset.up_set(x));
        next.difference_with(poset.down_set(x));
        // only later indices, so each antichain is produced once
        next = next.iter().filter(|&y| y > x).collect();
        current.insert(x);
        extend(poset, current, &next, cap, out)?;
        current.remove(x);
    }
    Ok(())
}

/// Number of antichains without materializing them.
pub fn count_antichains(poset: &FinitePoset) -> u128 {
    fn go(poset: &FinitePoset, candidates: &BitSet) -> u128 {
        let mut total = 1;
        for x in candidates.iter() {
            let next: BitSet = candidates
                .iter()
                .filter(|&y| y > x && !poset.comparable(x, y))
                .collect();
            total += go(poset, &next);
        }
        total
    }
    go(poset, &BitSet::full(poset.len()))
}

/// Largest antichain size by exhaustive search.
pub fn width_brute(poset: &FinitePoset) -> usize {
    fn go(poset: &FinitePoset, size: usize, candidates: &BitSet, best: &mut usize) {
        *best = (*best).max(size);
        if size + candidates.len() <= *best {
            return;
        }
        for x in candidates.iter() {
            let next: BitSet = candidates
                .iter()
                .filter(|&y| y > x && !poset.comparable(x, y))
                .collect();
            go(poset, size + 1, &next, best);
        }
    }
    let mut best = 0;
    go(poset, 0, &BitSet::full(poset.len()), &mut best);
    best
}

/// Width as `n - (maximum matching in the strict comparability graph)`,
/// i.e. minimum chain cover.
pub fn width_matching(poset: &FinitePoset) -> usize {
    let n = poset.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut matched = 0;
    for left in 0..n {
        let mut visited = vec![false; n];
        if augment(poset, left, &mut visited, &mut match_right) {
            matched += 1;
        }
    }
    n - matched
}

fn augment(poset: &FinitePoset, left: usize, visited: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for right in poset.strictly_above(left).iter() {
        if visited[right] {
            continue;
        }
        visited[right] = true;
        let free = match match_right[right] {
            None => true,
            Some(other) => augment(poset, other, visited, match_right),
        };
        if free {
            match_right[right] = Some(left);
            return true;
        }
    }
    false
}

pub fn width(poset: &FinitePoset) -> usize {
    if poset.len() <= BRUTE_WIDTH_LIMIT {
        width_brute(poset)
    } else {
        width_matching(poset)
    }
}

/// `(width, height)`: largest antichain and number of elements in the longest chain.
pub fn width_height(poset: &FinitePoset) -> (usize, usize) {
    (width(poset), poset.height())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{downsets, FinitePoset};

    #[test]
    fn antichains_small() {
        let d = enumerate_antichains(&FinitePoset::discrete(2), 100).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d[0], BitSet::new());
        assert_eq!(enumerate_antichains(&FinitePoset::chain(2), 100).unwrap().len(), 3);
        let vees = FinitePoset::from_named(&["b", "c", "ab", "ac"], &[("b", "ab"), ("c", "ac")]).unwrap();
        assert_eq!(enumerate_antichains(&vees, 100).unwrap().len(), 9);
        assert_eq!(count_antichains(&vees), 9);
    }

    #[test]
    fn cap_is_enforced() {
        let r = enumerate_antichains(&FinitePoset::discrete(5), 10);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn widths() {
        assert_eq!(width_height(&FinitePoset::discrete(4)), (4, 1));
        let b4 = downsets(&FinitePoset::discrete(4));
        assert_eq!(width(b4.poset()), 6);
        assert_eq!(width_matching(b4.poset()), 6);
        assert_eq!(width(&FinitePoset::chain_product(&[2, 3])), 2);
        assert_eq!(width_height(&FinitePoset::chain(5)), (1, 5));
        assert_eq!(width_height(&FinitePoset::discrete(0)), (0, 0));
    }
}
