//! Derivations on a polynomial ring and the truncated exponential series
//! `b -> sum_n D^n(b) t^n / n!` they generate.

use std::collections::BTreeMap;

use num_traits::One;

use crate::eigenvalue::Eigenvalue;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Ring};
use crate::rational::{factorial, int, Rational};

/// How the derivation acts on the ring variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    /// `x_i -> images[i]`, extended to the ring by the Leibniz rule.
    General { images: Vec<Poly> },
    /// `x_i -> weights[i] * x_i`; every monomial is an eigenvector.
    Diagonal { weights: Vec<Eigenvalue> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    kind: DerivationKind,
    weight_symbols: Vec<String>,
}

impl Derivation {
    pub fn general(ring: &Ring, images: Vec<Poly>) -> Result<Self> {
        if images.len() != ring.len() {
            return Err(Error::DimensionMismatch { expected: ring.len(), found: images.len() });
        }
        for img in &images {
            ring.check_same(img.ring())?;
        }
        Ok(Derivation { ring: ring.clone(), kind: DerivationKind::General { images }, weight_symbols: Vec::new() })
    }

    /// General derivation from a variable-name map; every ring variable needs an image.
    pub fn from_images(ring: &Ring, images: &BTreeMap<String, Poly>) -> Result<Self> {
        if let Some(extra) = images.keys().find(|v| ring.index_of(v).is_none()) {
            return Err(Error::UnknownVariable(extra.clone()));
        }
        let ordered = ring
            .vars()
            .iter()
            .map(|v| images.get(v).cloned().ok_or_else(|| Error::MissingImage(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::general(ring, ordered)
    }

    pub fn diagonal(ring: &Ring, weights: Vec<Eigenvalue>, weight_symbols: Vec<String>) -> Result<Self> {
        if weights.len() != ring.len() {
            return Err(Error::DimensionMismatch { expected: ring.len(), found: weights.len() });
        }
        Ok(Derivation { ring: ring.clone(), kind: DerivationKind::Diagonal { weights }, weight_symbols })
    }

    /// `sum_i x_i d/dx_i`, as a general derivation.
    pub fn euler(ring: &Ring) -> Self {
        let images = (0..ring.len()).map(|i| Poly::var_at(ring, i)).collect();
        Self::general(ring, images).expect("euler images live in the ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> &DerivationKind {
        &self.kind
    }

    pub fn weight_symbols(&self) -> &[String] {
        &self.weight_symbols
    }

    pub fn is_general(&self) -> bool {
        matches!(self.kind, DerivationKind::General { .. })
    }

    /// The equivalent general derivation. Diagonal weights must be rational.
    pub fn to_general(&self) -> Result<Derivation> {
        match &self.kind {
            DerivationKind::General { .. } => Ok(self.clone()),
            DerivationKind::Diagonal { weights } => {
                let images = weights
                    .iter()
                    .enumerate()
                    .map(|(i, w)| Ok(Poly::var_at(&self.ring, i).scale(rational_weight(w)?)))
                    .collect::<Result<Vec<_>>>()?;
                Derivation::general(&self.ring, images)
            }
        }
    }

    /// Eigenvalue of the monomial `m` under a diagonal derivation.
    pub fn monomial_weight(&self, m: &Monomial) -> Option<Eigenvalue> {
        let DerivationKind::Diagonal { weights } = &self.kind else {
            return None;
        };
        let w =
            m.exponents().iter().zip(weights).fold(Eigenvalue::zero(), |acc, (&e, w)| &acc + &w.scale(&int(e as i64)));
        Some(w)
    }

    /// `D(p) = sum_i D(x_i) * dp/dx_i`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.ring.check_same(p.ring())?;
        let mut out = Poly::zero(&self.ring);
        match &self.kind {
            DerivationKind::General { images } => {
                for (m, c) in p.terms() {
                    for (i, &e) in m.exponents().iter().enumerate() {
                        if e == 0 || images[i].is_zero() {
                            continue;
                        }
                        let mut lowered = m.exponents().to_vec();
                        lowered[i] -= 1;
                        out.add_scaled_shifted(&images[i], &Monomial::new(lowered), &(c * int(e as i64)));
                    }
                }
            }
            DerivationKind::Diagonal { .. } => {
                for (m, c) in p.terms() {
                    let w = self.monomial_weight(m).expect("diagonal");
                    out.add_term(m.clone(), c * rational_weight(&w)?);
                }
            }
        }
        Ok(out)
    }

    /// `D^n(p)`; `n = 0` is the identity.
    pub fn apply_power(&self, p: &Poly, n: u32) -> Result<Poly> {
        self.ring.check_same(p.ring())?;
        let mut q = p.clone();
        for _ in 0..n {
            if q.is_zero() {
                break;
            }
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// The shifted operator `q -> D(q) - lambda q`.
    ///
    /// This is only linear (it breaks the Leibniz rule for `lambda != 0`), so
    /// it is a closure rather than another [`Derivation`].
    pub fn shifted(&self, lambda: &Rational) -> impl Fn(&Poly) -> Result<Poly> + '_ {
        let lambda = lambda.clone();
        move |q: &Poly| {
            let mut out = self.apply(q)?;
            out.add_scaled(q, &-lambda.clone());
            Ok(out)
        }
    }

    pub fn phi_truncated(&self, p: &Poly, order: usize) -> Result<TruncatedSeries> {
        phi_truncated_with(|q| self.apply(q), p, order)
    }
}

impl std::fmt::Display for Derivation {
    /// `x -> image, y -> image`; diagonal images are written `weight*x`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = self.ring.vars();
        let images: Vec<String> = match &self.kind {
            DerivationKind::General { images } => {
                vars.iter().zip(images).map(|(v, img)| format!("{v} -> {img}")).collect()
            }
            DerivationKind::Diagonal { weights } => vars
                .iter()
                .zip(weights)
                .map(|(v, w)| format!("{v} -> ({})*{v}", w.format_with(&self.weight_symbols)))
                .collect(),
        };
        f.write_str(&images.join(", "))
    }
}

fn rational_weight(w: &Eigenvalue) -> Result<&Rational> {
    w.as_rational().ok_or_else(|| Error::UnsupportedScalar(w.to_string()))
}

/// `sum_{n <= order} op^n(p) t^n / n!` for any linear operator `op`.
pub fn phi_truncated_with<F>(op: F, p: &Poly, order: usize) -> Result<TruncatedSeries>
where
    F: Fn(&Poly) -> Result<Poly>,
{
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut iterate = p.clone();
    for n in 0..=order {
        if n > 0 {
            iterate = op(&iterate)?;
        }
        coefficients.push(iterate.scale(&factorial(n as u32).recip()));
    }
    Ok(TruncatedSeries { coefficients })
}

/// A power series in `t` with polynomial coefficients, known modulo `t^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<Poly>) -> Self {
        assert!(!coefficients.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order().min(other.order());
        let coefficients = (0..=order)
            .map(|n| {
                (0..=n).try_fold(Poly::zero(self.coefficients[0].ring()), |acc, i| {
                    acc.try_add(&self.coefficients[i].try_mul(&other.coefficients[n - i])?)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { coefficients })
    }

    /// Product with a scalar series, truncated at the smaller order.
    pub fn scalar_mul(&self, s: &ScalarSeries) -> TruncatedSeries {
        let order = self.order().min(s.order());
        let ring = self.coefficients[0].ring();
        let coefficients = (0..=order)
            .map(|n| {
                let mut acc = Poly::zero(ring);
                for i in 0..=n {
                    acc.add_scaled(&self.coefficients[n - i], &s.coefficients[i]);
                }
                acc
            })
            .collect();
        TruncatedSeries { coefficients }
    }

    /// True when every coefficient past the first `k` vanishes.
    pub fn is_polynomial_below(&self, k: usize) -> bool {
        self.coefficients.iter().skip(k).all(Poly::is_zero)
    }
}

/// A rational power series in `t` modulo `t^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    coefficients: Vec<Rational>,
}

impl ScalarSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }
}

/// `e^(lambda t)` truncated: the coefficient of `t^n` is `lambda^n / n!`.
pub fn exp_truncated(lambda: &Eigenvalue, order: usize) -> Result<ScalarSeries> {
    let l = lambda.as_rational().ok_or_else(|| Error::UnsupportedScalar(lambda.to_string()))?;
    let mut coefficients = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    for n in 0..=order {
        if n > 0 {
            term = term * l / int(n as i64);
        }
        coefficients.push(term.clone());
    }
    Ok(ScalarSeries { coefficients })
}
