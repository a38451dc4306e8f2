//! Finite linear groups acting on the variables, Reynolds averaging, and the
//! Euler derivation restricted to invariant rings.

use std::collections::HashSet;
use std::collections::VecDeque;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::Poly;
use crate::rational::{int, Rational};

pub const DEFAULT_GROUP_CAP: usize = 4096;

/// A finite group of invertible rational `r x r` matrices, fully enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    dimension: usize,
    generators: Vec<QMatrix>,
    elements: Vec<QMatrix>,
}

impl MatrixGroup {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }

    /// Breadth-first from the identity, generators in the order given.
    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closes `generators` under multiplication.
pub fn enumerate_group(dimension: usize, generators: &[QMatrix], cap: usize) -> Result<MatrixGroup> {
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() {
            return Err(Error::NonSquare { rows: g.rows(), cols: g.cols() });
        }
        if g.rows() != dimension {
            return Err(Error::DimensionMismatch { expected: dimension, found: g.rows() });
        }
        if g.inverse().is_none() {
            return Err(Error::NonInvertibleGenerator(i));
        }
    }
    let key = |m: &QMatrix| -> Vec<Rational> { m.to_rows().into_iter().flatten().collect() };
    let identity = QMatrix::identity(dimension);
    let mut seen: HashSet<Vec<Rational>> = HashSet::from([key(&identity)]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.mul(s)?;
            if seen.insert(key(&h)) {
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(MatrixGroup { dimension, generators: generators.to_vec(), elements })
}

/// `p(g^T x)`: variable `x_i` goes to `sum_j g[j][i] x_j`.
///
/// With this convention `act(g*h, p) = act(g, act(h, p))`.
pub fn act(g: &QMatrix, p: &Poly) -> Result<Poly> {
    let ring = p.ring();
    if !g.is_square() || g.rows() != ring.len() {
        return Err(Error::DimensionMismatch { expected: ring.len(), found: g.rows() });
    }
    let images: Vec<Poly> = (0..ring.len())
        .map(|i| {
            let mut img = Poly::zero(ring);
            for j in 0..ring.len() {
                img.add_scaled(&Poly::var_at(ring, j), &g[(j, i)]);
            }
            img
        })
        .collect();
    p.substitute_ordered(&images)
}

/// Average of `p` over the group; always invariant.
pub fn reynolds(group: &MatrixGroup, p: &Poly) -> Result<Poly> {
    let mut acc = Poly::zero(p.ring());
    for g in group.elements() {
        acc.add_scaled(&act(g, p)?, &int(1));
    }
    Ok(acc.scale(&int(group.order() as i64).recip()))
}

/// Index of the first group element that moves `p`, if any.
pub fn invariance_witness(group: &MatrixGroup, p: &Poly) -> Result<Option<usize>> {
    for (i, g) in group.elements().iter().enumerate() {
        if &act(g, p)? != p {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerDescentReport {
    pub invariant: Poly,
    pub derivative: Poly,
    /// `D(p)` is again fixed by every group element.
    pub derivative_invariant: bool,
    pub homogeneous_degree: Option<u32>,
    /// `D(p) = n p` when `p` is homogeneous of degree `n`.
    pub degree_map_holds: Option<bool>,
}

impl EulerDescentReport {
    pub fn passed(&self) -> bool {
        self.derivative_invariant && self.degree_map_holds != Some(false)
    }

    /// The restriction of `D` to the invariants is nonzero on this element.
    pub fn nontrivial(&self) -> bool {
        !self.derivative.is_zero()
    }
}

/// Checks that the Euler derivation maps the invariant `p` to an invariant,
/// and acts as multiplication by the degree when `p` is homogeneous.
pub fn check_euler_descends(group: &MatrixGroup, p: &Poly) -> Result<EulerDescentReport> {
    if let Some(i) = invariance_witness(group, p)? {
        return Err(Error::NotInvariant(i));
    }
    let euler = Derivation::euler(p.ring());
    let derivative = euler.apply(p)?;
    let derivative_invariant = invariance_witness(group, &derivative)?.is_none();
    let homogeneous_degree = p.homogeneous_degree();
    let degree_map_holds = homogeneous_degree.map(|n| derivative == p.scale(&int(n as i64)));
    Ok(EulerDescentReport {
        invariant: p.clone(),
        derivative,
        derivative_invariant,
        homogeneous_degree,
        degree_map_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Ring};
    use crate::rational::ratio;

    fn xy() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn mono(c: i64, e: &[u32]) -> Poly {
        Poly::monomial(&xy(), Monomial::new(e.to_vec()), int(c))
    }

    fn group(rows: &[&[i64]]) -> MatrixGroup {
        enumerate_group(2, &[QMatrix::from_i64(rows)], DEFAULT_GROUP_CAP).unwrap()
    }

    fn minus_identity() -> MatrixGroup {
        group(&[&[-1, 0], &[0, -1]])
    }

    fn rotation() -> MatrixGroup {
        group(&[&[0, -1], &[1, 0]])
    }

    fn swap() -> MatrixGroup {
        group(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn group_orders() {
        let g = minus_identity();
        assert_eq!(g.order(), 2);
        assert_eq!(g.elements()[0], QMatrix::identity(2));
        assert_eq!(g.elements()[1], QMatrix::from_i64(&[&[-1, 0], &[0, -1]]));
        assert_eq!(rotation().order(), 4);
        assert_eq!(swap().order(), 2);
        assert_eq!(enumerate_group(2, &[], 8).unwrap().order(), 1);
    }

    #[test]
    fn enumeration_errors() {
        let singular = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(enumerate_group(2, &[singular], 10), Err(Error::NonInvertibleGenerator(0)));
        assert_eq!(enumerate_group(2, &[QMatrix::from_i64(&[&[0, -1], &[1, 0]])], 3), Err(Error::GroupTooLarge(3)));
        let infinite = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(enumerate_group(2, &[infinite], 50), Err(Error::GroupTooLarge(50)));
        assert!(matches!(enumerate_group(3, &[QMatrix::identity(2)], 5), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn actions() {
        let s = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let p = &mono(1, &[2, 0]) - &mono(1, &[0, 2]);
        assert_eq!(act(&s, &p).unwrap(), -&p);
        let m = QMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        assert_eq!(act(&m, &mono(1, &[1, 1])).unwrap(), mono(1, &[1, 1]));
        assert_eq!(act(&QMatrix::identity(2), &p).unwrap(), p);
        assert!(act(&QMatrix::identity(3), &p).is_err());
    }

    #[test]
    fn reynolds_examples() {
        let g = minus_identity();
        assert_eq!(reynolds(&g, &mono(1, &[2, 0])).unwrap(), mono(1, &[2, 0]));
        assert!(reynolds(&g, &mono(1, &[1, 0])).unwrap().is_zero());
        let avg = reynolds(&swap(), &mono(1, &[1, 0])).unwrap();
        assert_eq!(avg, (&mono(1, &[1, 0]) + &mono(1, &[0, 1])).scale(&ratio(1, 2)));
    }

    #[test]
    fn euler_descends_examples() {
        let r = check_euler_descends(&minus_identity(), &mono(1, &[1, 1])).unwrap();
        assert_eq!(r.derivative, mono(2, &[1, 1]));
        assert!(r.passed() && r.nontrivial());
        assert_eq!(r.homogeneous_degree, Some(2));

        let p = &mono(1, &[1, 0]) + &mono(1, &[0, 1]);
        let r = check_euler_descends(&swap(), &p).unwrap();
        assert_eq!(r.derivative, p);
        assert_eq!(r.degree_map_holds, Some(true));

        let p = &mono(1, &[2, 0]) + &mono(1, &[0, 2]);
        let r = check_euler_descends(&rotation(), &p).unwrap();
        assert_eq!(r.derivative, p.scale(&int(2)));
        assert!(r.passed());

        assert_eq!(check_euler_descends(&swap(), &mono(1, &[1, 0])), Err(Error::NotInvariant(1)));
    }
}
