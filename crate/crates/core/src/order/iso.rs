use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Default branch-node budget for isomorphism search.
pub const DEFAULT_ISO_CAP: usize = 10_000_000;

/// Searches for an order-isomorphism `P -> Q`. On success returns the image
/// of every element of `P`.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset, cap: usize) -> Result<Option<Vec<usize>>> {
    if p.len() != q.len() {
        return Ok(None);
    }
    let sig = |x: &FinitePoset, i: usize| {
        (
            x.down_set(i).len(),
            x.up_set(i).len(),
            x.lower_covers(i).len(),
            x.upper_covers(i).len(),
        )
    };
    let sp: Vec<_> = (0..p.len()).map(|i| sig(p, i)).collect();
    let sq: Vec<_> = (0..q.len()).map(|i| sig(q, i)).collect();
    let (mut a, mut b) = (sp.clone(), sq.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut search = Search { p, q, sp, sq, image: Vec::new(), used: vec![false; q.len()], nodes: 0, cap };
    if search.go()? {
        Ok(Some(search.image))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    sp: Vec<(usize, usize, usize, usize)>,
    sq: Vec<(usize, usize, usize, usize)>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    cap: usize,
}

impl Search<'_> {
    fn go(&mut self) -> Result<bool> {
        let x = self.image.len();
        if x == self.p.len() {
            return Ok(true);
        }
        for y in 0..self.q.len() {
            if self.used[y] || self.sp[x] != self.sq[y] {
                continue;
            }
            let consistent = self.image.iter().enumerate().all(|(px, &qy)| {
                self.p.leq(px, x) == self.q.leq(qy, y) && self.p.leq(x, px) == self.q.leq(y, qy)
            });
            if !consistent {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::CapExceeded { what: "isomorphism search nodes", cap: self.cap });
            }
            self.used[y] = true;
            self.image.push(y);
            if self.go()? {
                return Ok(true);
            }
            self.image.pop();
            self.used[y] = false;
        }
        Ok(false)
    }
}
