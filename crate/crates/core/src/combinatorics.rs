//! Widths of chain products and the width bound for downset lattices.

use std::fmt;

use num_bigint::BigUint;

use crate::order::{width_height, FinitePoset};

/// Polynomial with nonnegative integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<BigUint>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigUint>) -> Self {
        while coefficients.last().is_some_and(|c| *c == BigUint::ZERO) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn one() -> Self {
        Self::new(vec![BigUint::from(1u32)])
    }

    /// `1 + x + ... + x^(h-1)`.
    pub fn chain(h: usize) -> Self {
        Self::new(vec![BigUint::from(1u32); h])
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigUint {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigUint::ZERO; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Coefficient at `floor(degree / 2)`.
    pub fn middle(&self) -> BigUint {
        self.coefficient(self.degree() / 2)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != BigUint::ZERO)
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}x"),
                _ => format!("{c}x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub fn chain_product_polynomial(heights: &[usize]) -> IntPolynomial {
    heights.iter().fold(IntPolynomial::one(), |acc, &h| acc.mul(&IntPolynomial::chain(h)))
}

/// Width of a product of chains with the given numbers of elements.
pub fn chain_product_width(heights: &[usize]) -> BigUint {
    assert!(heights.iter().all(|&h| h >= 1), "chain heights must be positive");
    chain_product_polynomial(heights).middle()
}

/// Central coefficient of `(1 + x + ... + x^(a-1))^b`.
pub fn central_coefficient(a: usize, b: usize) -> BigUint {
    chain_product_width(&vec![a; b])
}

/// Upper bound on the width of the downset lattice of `p`:
/// `Mf(2, w) * Mf(h, ceil(w / 2))` with `w`, `h` the width and height of `p`.
pub fn width_bound(p: &FinitePoset) -> BigUint {
    let (w, h) = width_height(p);
    central_coefficient(2, w) * central_coefficient(h.max(1), w.div_ceil(2))
}
