//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_negative, Rational};

/// An ordered list of variable names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        Ring { vars: vars.iter().map(|v| v.as_ref().to_string()).collect() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(", "))
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring{self}")
    }
}

/// Exponent vector, one slot per ring variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared lexicographically in declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over a [`Ring`]. Zero coefficients are never stored, so two
/// polynomials are equal exactly when their rings and term maps are.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, int(1))
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), index), int(1))
    }

    /// Builds a canonical polynomial from arbitrary terms: like monomials are
    /// combined and zero coefficients dropped.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.len(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Returns the common degree when every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `self += c * other`, the workhorse of elimination.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// `self += c * x^m * other`.
    pub(crate) fn add_scaled_shifted(&mut self, other: &Poly, m: &Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (mo, a) in &other.terms {
            self.add_term(mo.mul(m), a * c);
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        Ok(out)
    }

    /// Exact product. Fails when the operands live in different rings.
    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        let mut out = Poly::zero(&self.ring);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn diff(&self, var: &str) -> Result<Poly> {
        let i = self.ring.index_of(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.diff_at(i))
    }

    pub fn diff_at(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.terms.insert(Monomial(exps), c * int(e as i64));
        }
        out
    }

    /// Image under the ring endomorphism sending each variable to its image.
    pub fn substitute(&self, images: &BTreeMap<String, Poly>) -> Result<Poly> {
        let ordered = self
            .ring
            .vars()
            .iter()
            .map(|v| images.get(v).cloned().ok_or_else(|| Error::MissingImage(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.substitute_ordered(&ordered)
    }

    /// Same as [`Poly::substitute`] with images listed in ring order.
    pub fn substitute_ordered(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.len() {
            return Err(Error::DimensionMismatch { expected: self.ring.len(), found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        for img in images {
            target.check_same(&img.ring)?;
        }
        // Powers of each image are cached since monomials share them.
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out.add_scaled(&term, &int(1));
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn promote(&self, target: &Ring) -> Result<Poly> {
        let map = self
            .ring
            .vars()
            .iter()
            .map(|v| target.index_of(v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            (Monomial(e), c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }
}

impl Add for &Poly {
    type Output = Poly;

    /// Panics on ring mismatch; use [`Poly::try_add`] for a checked sum.
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial addition across rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial subtraction across rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial product across rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&int(-1))
    }
}

impl fmt::Display for Poly {
    /// Canonical text: descending graded-lex, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| {
                        let v = &self.ring.vars()[j];
                        if e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn xy() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn mono(ring: &Ring, c: Rational, e: &[u32]) -> Poly {
        Poly::monomial(ring, Monomial::new(e.to_vec()), c)
    }

    #[test]
    fn difference_of_squares() {
        let r = xy();
        let x = Poly::var(&r, "x").unwrap();
        let y = Poly::var(&r, "y").unwrap();
        let p = &(&x + &y) * &(&x - &y);
        let expected = &mono(&r, int(1), &[2, 0]) - &mono(&r, int(1), &[0, 2]);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn identity_and_square() {
        let r = xy();
        let x = Poly::var(&r, "x").unwrap();
        let p = &x + &Poly::one(&r);
        assert_eq!(&p * &Poly::one(&r), p);
        assert_eq!((&p * &p).to_string(), "x^2 + 2*x + 1");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Poly::one(&xy());
        let b = Poly::one(&Ring::new(&["x", "z"]));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn partial_derivatives() {
        let r = xy();
        let x2y = mono(&r, int(1), &[2, 1]);
        assert_eq!(x2y.diff("x").unwrap(), mono(&r, int(2), &[1, 1]));
        assert!(mono(&r, int(1), &[0, 3]).diff("x").unwrap().is_zero());
        let p = &mono(&r, int(1), &[2, 0]) + &mono(&r, int(1), &[1, 0]);
        assert_eq!(p.diff("x").unwrap().to_string(), "2*x + 1");
        assert!(matches!(p.diff("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution() {
        let r = xy();
        let x = Poly::var(&r, "x").unwrap();
        let y = Poly::var(&r, "y").unwrap();
        let even = &(&x * &x) + &(&y * &y);
        let neg: BTreeMap<_, _> = [("x".to_string(), -&x), ("y".to_string(), -&y)].into();
        assert_eq!(even.substitute(&neg).unwrap(), even);

        let rot: BTreeMap<_, _> = [("x".to_string(), -&y), ("y".to_string(), x.clone())].into();
        assert_eq!((&x * &y).substitute(&rot).unwrap(), -&(&x * &y));

        let id: BTreeMap<_, _> = [("x".to_string(), x.clone()), ("y".to_string(), y.clone())].into();
        assert_eq!(x.substitute(&id).unwrap(), x);

        let partial: BTreeMap<_, _> = [("x".to_string(), x.clone())].into();
        assert!(matches!(x.substitute(&partial), Err(Error::MissingImage(v)) if v == "y"));
    }

    #[test]
    fn printing() {
        let r = xy();
        assert_eq!(Poly::zero(&r).to_string(), "0");
        let p = &mono(&r, ratio(3, 2), &[0, 3]) + &mono(&r, int(1), &[2, 1]);
        assert_eq!(p.to_string(), "x^2*y + 3/2*y^3");
        let q = &mono(&r, int(-1), &[1, 0]) + &Poly::constant(&r, ratio(-1, 2));
        assert_eq!(q.to_string(), "-x - 1/2");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 3]);
        let b = Monomial::new(vec![2, 0]);
        let c = Monomial::new(vec![1, 1]);
        assert!(a > b);
        assert!(b > c);
    }

    #[test]
    fn promote_embeds_by_name() {
        let ry = Ring::new(&["y"]);
        let y = Poly::var(&ry, "y").unwrap().pow(2);
        let lifted = y.promote(&xy()).unwrap();
        assert_eq!(lifted, mono(&xy(), int(1), &[0, 2]));
        assert!(lifted.promote(&ry).is_err());
    }
}
