use serde::Serialize;

use crate::order::FiniteLattice;

/// Which of the classical lattice conditions hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeClass {
    pub distributive: bool,
    pub modular: bool,
    pub upper_semimodular: bool,
    pub has_m3: bool,
    pub has_s7_cover: bool,
}

pub fn classify_lattice(l: &FiniteLattice) -> LatticeClass {
    LatticeClass {
        distributive: is_distributive(l),
        modular: find_n5(l).is_none(),
        upper_semimodular: is_upper_semimodular(l),
        has_m3: find_m3(l).is_some(),
        has_s7_cover: find_s7_cover(l).is_some(),
    }
}

/// `x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)` over all triples.
pub fn is_distributive(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (y..n).all(|z| l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), l.join(x, z)))
        })
    })
}

/// Whenever `a` and `b` both cover `a ∧ b`, both are covered by `a ∨ b`.
pub fn is_upper_semimodular(l: &FiniteLattice) -> bool {
    let p = l.poset();
    let n = l.len();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let m = l.meet(a, b);
            let j = l.join(a, b);
            !(p.covers(m, a) && p.covers(m, b)) || (p.covers(a, j) && p.covers(b, j))
        })
    })
}

/// An N5 sublattice `(bottom, a, lo, hi, top)` with `lo < hi` and `a` a common
/// complement of both.
pub fn find_n5(l: &FiniteLattice) -> Option<[usize; 5]> {
    let n = l.len();
    for lo in 0..n {
        for hi in l.poset().strictly_above(lo).iter() {
            for a in 0..n {
                if l.poset().comparable(a, lo) || l.poset().comparable(a, hi) {
                    continue;
                }
                let (j, m) = (l.join(a, lo), l.meet(a, hi));
                if l.join(a, hi) == j && l.meet(a, lo) == m {
                    return Some([m, a, lo, hi, j]);
                }
            }
        }
    }
    None
}

/// Three pairwise incomparable elements with common pairwise meets and joins.
pub fn find_m3(l: &FiniteLattice) -> Option<[usize; 3]> {
    let n = l.len();
    let p = l.poset();
    for x in 0..n {
        for y in x + 1..n {
            if p.comparable(x, y) {
                continue;
            }
            let (j, m) = (l.join(x, y), l.meet(x, y));
            for z in y + 1..n {
                if p.comparable(x, z) || p.comparable(y, z) {
                    continue;
                }
                if l.join(x, z) == j && l.join(y, z) == j && l.meet(x, z) == m && l.meet(y, z) == m {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

// S7 abstract elements: 0 = bottom, 1 = b, 2 = c, 3 = ab, 4 = bc, 5 = ac, 6 = top.
const S7_UP: [&[usize]; 7] = [
    &[0, 1, 2, 3, 4, 5, 6],
    &[1, 3, 4, 6],
    &[2, 4, 5, 6],
    &[3, 6],
    &[4, 6],
    &[5, 6],
    &[6],
];
const S7_COVERS: [(usize, usize); 9] = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)];

fn s7_leq(a: usize, b: usize) -> bool {
    S7_UP[a].contains(&b)
}

fn s7_join(a: usize, b: usize) -> usize {
    (0..7).find(|&x| s7_leq(a, x) && s7_leq(b, x) && (0..7).all(|y| !(s7_leq(a, y) && s7_leq(b, y)) || s7_leq(x, y))).unwrap()
}

fn s7_meet(a: usize, b: usize) -> usize {
    (0..7).rev().find(|&x| s7_leq(x, a) && s7_leq(x, b) && (0..7).all(|y| !(s7_leq(y, a) && s7_leq(y, b)) || s7_leq(y, x))).unwrap()
}

/// A sublattice isomorphic to S7 whose covers are covers of `l`.
/// Returned in the order bottom, b, c, ab, bc, ac, top.
pub fn find_s7_cover(l: &FiniteLattice) -> Option<[usize; 7]> {
    let p = l.poset();
    for bot in 0..l.len() {
        let ups = p.upper_covers(bot);
        for &b in &ups {
            for &c in &ups {
                if b == c {
                    continue;
                }
                let bc = l.join(b, c);
                if !(p.covers(b, bc) && p.covers(c, bc)) {
                    continue;
                }
                for ab in p.upper_covers(b) {
                    if ab == bc {
                        continue;
                    }
                    for ac in p.upper_covers(c) {
                        if ac == bc || ac == ab {
                            continue;
                        }
                        let top = l.join(ab, ac);
                        let m = [bot, b, c, ab, bc, ac, top];
                        let ok = S7_COVERS.iter().all(|&(x, y)| p.covers(m[x], m[y]))
                            && (0..7).all(|x| {
                                (0..7).all(|y| {
                                    l.join(m[x], m[y]) == m[s7_join(x, y)]
                                        && l.meet(m[x], m[y]) == m[s7_meet(x, y)]
                                })
                            });
                        if ok {
                            return Some(m);
                        }
                    }
                }
            }
        }
    }
    None
}

/// The S7 "centered hexagon" as an abstract lattice.
pub fn s7() -> FiniteLattice {
    use crate::order::FinitePoset;
    let ids = ["0", "b", "c", "ab", "bc", "ac", "1"];
    let poset = FinitePoset::new(ids.iter().map(|s| s.to_string()).collect(), |a, b| s7_leq(a, b)).unwrap();
    FiniteLattice::from_poset(poset).unwrap()
}

/// M3, the diamond.
pub fn m3() -> FiniteLattice {
    use crate::order::FinitePoset;
    let p = FinitePoset::from_named(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    .unwrap();
    FiniteLattice::from_poset(p).unwrap()
}

/// N5, the pentagon.
pub fn n5() -> FiniteLattice {
    use crate::order::FinitePoset;
    let p = FinitePoset::from_named(
        &["0", "a", "b", "b'", "1"],
        &[("0", "a"), ("0", "b"), ("b", "b'"), ("a", "1"), ("b'", "1")],
    )
    .unwrap();
    FiniteLattice::from_poset(p).unwrap()
}
