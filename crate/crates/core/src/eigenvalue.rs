//! Eigenvalues: rational affine combinations of formal weight symbols.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, int, Rational};

/// `constant + sum_i weights[i] * w_i` over declared weight symbols `w_i`.
///
/// Trailing zero weight coordinates are trimmed, so eigenvalues built over
/// different numbers of declared symbols still compare coordinatewise.
/// The total order is lexicographic: the constant first, then the weight
/// coordinates in declaration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Eigenvalue {
    constant: Rational,
    weights: Vec<Rational>,
}

impl Eigenvalue {
    pub fn new(constant: Rational, mut weights: Vec<Rational>) -> Self {
        while weights.last().is_some_and(Zero::is_zero) {
            weights.pop();
        }
        Eigenvalue { constant, weights }
    }

    pub fn rational(q: Rational) -> Self {
        Eigenvalue { constant: q, weights: Vec::new() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    /// The formal symbol `w_index` with coefficient one.
    pub fn symbol(index: usize) -> Self {
        let mut w = vec![Rational::zero(); index + 1];
        w[index] = int(1);
        Self::new(Rational::zero(), w)
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn weight(&self, i: usize) -> Rational {
        self.weights.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.weights.is_empty()
    }

    /// `Some(q)` when there is no formal weight part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.weights.is_empty().then_some(&self.constant)
    }

    pub fn scale(&self, c: &Rational) -> Eigenvalue {
        Eigenvalue::new(&self.constant * c, self.weights.iter().map(|w| w * c).collect())
    }

    /// Text over the given symbol names; extra coordinates fall back to `w<i+1>`.
    pub fn format_with(&self, symbols: &[String]) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let name = symbols.get(i).cloned().unwrap_or_else(|| format!("w{}", i + 1));
            let abs = w.abs();
            let body = if abs.is_one() { name } else { format!("{}*{name}", format_rational(&abs)) };
            parts.push((w.is_negative(), body));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), format_rational(&self.constant.abs())));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.constant.cmp(&other.constant).then_with(|| {
            let n = self.weights.len().max(other.weights.len());
            (0..n).map(|i| self.weight(i).cmp(&other.weight(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Eigenvalue {
    type Output = Eigenvalue;

    fn add(self, rhs: &Eigenvalue) -> Eigenvalue {
        let n = self.weights.len().max(rhs.weights.len());
        Eigenvalue::new(&self.constant + &rhs.constant, (0..n).map(|i| self.weight(i) + rhs.weight(i)).collect())
    }
}

impl Sub for &Eigenvalue {
    type Output = Eigenvalue;

    fn sub(self, rhs: &Eigenvalue) -> Eigenvalue {
        self + &(-rhs)
    }
}

impl Neg for &Eigenvalue {
    type Output = Eigenvalue;

    fn neg(self) -> Eigenvalue {
        self.scale(&int(-1))
    }
}

impl From<Rational> for Eigenvalue {
    fn from(q: Rational) -> Self {
        Eigenvalue::rational(q)
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn trailing_zero_weights_do_not_matter() {
        let a = Eigenvalue::new(int(1), vec![int(0), int(0)]);
        assert_eq!(a, Eigenvalue::from_int(1));
        assert_eq!(a.as_rational(), Some(&int(1)));
    }

    #[test]
    fn lexicographic_order() {
        let w1 = Eigenvalue::symbol(0);
        let w2 = Eigenvalue::symbol(1);
        assert!(Eigenvalue::zero() < w2);
        assert!(w2 < w1);
        assert!(Eigenvalue::from_int(1) > &w1 + &w1);
        assert!(-&w1 < Eigenvalue::zero());
        assert!(&w1 - &w2 > Eigenvalue::zero());
    }

    #[test]
    fn arithmetic_is_coordinatewise() {
        let w1 = Eigenvalue::symbol(0);
        let w2 = Eigenvalue::symbol(1);
        let s = &(&w1 + &w2) - &w2;
        assert_eq!(s, w1);
        assert!((&s - &w1).is_zero());
    }

    #[test]
    fn formatting() {
        let names = vec!["a".to_string(), "b".to_string()];
        let e = Eigenvalue::new(ratio(-1, 2), vec![int(2), int(-1)]);
        assert_eq!(e.format_with(&names), "2*a - b - 1/2");
        assert_eq!(Eigenvalue::zero().to_string(), "0");
        assert_eq!(Eigenvalue::symbol(1).to_string(), "w2");
        assert_eq!(Eigenvalue::from_int(-3).to_string(), "-3");
    }
}
