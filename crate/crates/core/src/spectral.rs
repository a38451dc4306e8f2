//! Generalized eigenspace decomposition of polynomials under a derivation.
//!
//! For an element `p` the iterates `p, D(p), D^2(p), ...` are row-reduced
//! until the first one that depends on its predecessors. If that happens
//! within the caps, `p` generates a finite-dimensional `D`-stable space `V`
//! and `D|V` is a companion matrix. Splitting its characteristic polynomial
//! over the rationals and applying the CRT idempotents of the factors to the
//! coordinate vector of `p` yields the components `p = sum_lambda p_lambda`
//! with `(D - lambda)^(h+1) p_lambda = 0`.
//!
//! Algebraicity is only semi-decidable here: a cap hit means "unknown", never
//! "not algebraic".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::derivation::{Derivation, DerivationKind};
use crate::eigenvalue::Eigenvalue;
use crate::error::{Error, Result};
use crate::linalg::{char_poly, rational_root_split, QMatrix, UniPoly};
use crate::poly::{Monomial, Poly};
use crate::rational::{int, Rational};

/// Which limit stopped an iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cap {
    Dim,
    Degree,
    Iterations,
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cap::Dim => "dim",
            Cap::Degree => "degree",
            Cap::Iterations => "iterations",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_krylov_dim: usize,
    pub max_degree: u32,
    pub max_iterations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_krylov_dim: 256, max_degree: 512, max_iterations: 1024 }
    }
}

impl Caps {
    pub fn with_dim(self, max_krylov_dim: usize) -> Self {
        Caps { max_krylov_dim, ..self }
    }
}

/// The span of the iterates of a generator together with `D` restricted to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrylovSpace {
    /// `generator, D(generator), ..., D^(n-1)(generator)`.
    pub basis: Vec<Poly>,
    /// Column `j` holds the coordinates of `D(basis[j])`.
    pub matrix: QMatrix,
    pub generator: Poly,
}

impl KrylovSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, coords: &[Rational]) -> Poly {
        let mut out = Poly::zero(self.generator.ring());
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(b, c);
        }
        out
    }
}

/// Incrementally built semi-echelon basis: every row has a distinct leading
/// monomial, and each row remembers which combination of iterates it is.
struct Echelon {
    rows: Vec<(Poly, Vec<Rational>)>,
    pivots: BTreeMap<Monomial, usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    fn reduce(&self, mut v: Poly, mut combo: Vec<Rational>) -> (Poly, Vec<Rational>) {
        // Eliminating with a row only introduces monomials below its pivot,
        // so scanning from the top terminates.
        loop {
            let hit = v.terms().rev().find_map(|(m, _)| self.pivots.get(m).map(|&r| (m.clone(), r)));
            let Some((m, row_idx)) = hit else { break };
            let (row, row_combo) = &self.rows[row_idx];
            let factor = v.coeff(&m) / row.coeff(&m);
            v.add_scaled(row, &-factor.clone());
            for (c, rc) in combo.iter_mut().zip(row_combo) {
                if !rc.is_zero() {
                    *c -= &factor * rc;
                }
            }
        }
        (v, combo)
    }

    fn push(&mut self, v: Poly, combo: Vec<Rational>) {
        let (lead, _) = v.leading_term().expect("nonzero row");
        self.pivots.insert(lead.clone(), self.rows.len());
        self.rows.push((v, combo));
    }
}

/// Builds the span of `p, D(p), D^2(p), ...`, stopping at the first iterate
/// that depends on its predecessors.
pub fn krylov_space(d: &Derivation, p: &Poly, caps: &Caps) -> Result<KrylovSpace> {
    let d = d.to_general()?;
    d.ring().check_same(p.ring())?;
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    if p.total_degree().unwrap_or(0) > caps.max_degree {
        return Err(Error::CapExceeded(Cap::Degree));
    }
    if caps.max_krylov_dim == 0 {
        return Err(Error::CapExceeded(Cap::Dim));
    }

    let mut echelon = Echelon::new();
    let mut basis = vec![p.clone()];
    echelon.push(p.clone(), vec![int(1)]);
    let mut iterations = 0;
    let relation = loop {
        if iterations >= caps.max_iterations {
            return Err(Error::CapExceeded(Cap::Iterations));
        }
        let next = d.apply(basis.last().unwrap())?;
        iterations += 1;
        let n = basis.len();
        if next.is_zero() {
            break vec![Rational::zero(); n];
        }
        if next.total_degree().unwrap_or(0) > caps.max_degree {
            return Err(Error::CapExceeded(Cap::Degree));
        }
        let mut unit = vec![Rational::zero(); n + 1];
        unit[n] = int(1);
        for (_, combo) in &mut echelon.rows {
            combo.resize(n + 1, Rational::zero());
        }
        let (residue, combo) = echelon.reduce(next.clone(), unit);
        if residue.is_zero() {
            // 0 = D^n(p) + sum_{i<n} combo[i] D^i(p)
            break combo[..n].iter().map(|c| -c.clone()).collect();
        }
        if n >= caps.max_krylov_dim {
            return Err(Error::CapExceeded(Cap::Dim));
        }
        echelon.push(residue, combo);
        basis.push(next);
    };

    let n = basis.len();
    let mut matrix = QMatrix::zeros(n, n);
    for j in 0..n - 1 {
        matrix[(j + 1, j)] = int(1);
    }
    for (i, c) in relation.into_iter().enumerate() {
        matrix[(i, n - 1)] = c;
    }
    Ok(KrylovSpace { basis, matrix, generator: p.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Algebraicity {
    Finite { dim: usize },
    UnknownUpToCaps { cap: Cap },
}

/// One-sided algebraicity test: `Finite` is a certificate, the other answer
/// only reports which cap was hit.
pub fn is_algebraic_element(d: &Derivation, p: &Poly, caps: &Caps) -> Result<Algebraicity> {
    if p.is_zero() {
        return Ok(Algebraicity::Finite { dim: 0 });
    }
    if let DerivationKind::Diagonal { .. } = d.kind() {
        // monomials are eigenvectors
        let distinct: BTreeSet<Eigenvalue> = p.terms().filter_map(|(m, _)| d.monomial_weight(m)).collect();
        return Ok(Algebraicity::Finite { dim: distinct.len() });
    }
    match krylov_space(d, p, caps) {
        Ok(k) => Ok(Algebraicity::Finite { dim: k.dim() }),
        Err(Error::CapExceeded(cap)) => Ok(Algebraicity::UnknownUpToCaps { cap }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub lambda: Eigenvalue,
    pub component: Poly,
    /// Largest `h` with `(D - lambda)^h (component) != 0`.
    pub height: u32,
}

/// `p = sum of components`, eigenvalues strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn single_part(&self) -> Option<&Part> {
        match self.parts.as_slice() {
            [part] => Some(part),
            _ => None,
        }
    }

    /// True when the element lies in exactly one eigenspace, at `lambda`.
    pub fn is_single_at(&self, lambda: &Eigenvalue) -> bool {
        self.single_part().is_some_and(|p| &p.lambda == lambda)
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.parts.iter().map(|p| &p.lambda)
    }

    pub fn part(&self, lambda: &Eigenvalue) -> Option<&Part> {
        self.parts.iter().find(|p| &p.lambda == lambda)
    }

    pub fn sum(&self) -> Option<Poly> {
        let first = self.parts.first()?;
        let mut acc = Poly::zero(first.component.ring());
        for part in &self.parts {
            acc.add_scaled(&part.component, &int(1));
        }
        Some(acc)
    }
}

/// Splits `p` into generalized eigencomponents of `d`.
pub fn decompose_element(d: &Derivation, p: &Poly, caps: &Caps) -> Result<Decomposition> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let DerivationKind::Diagonal { .. } = d.kind() {
        return decompose_diagonal(d, p);
    }
    let space = match krylov_space(d, p, caps) {
        Ok(s) => s,
        Err(Error::CapExceeded(cap)) => return Err(Error::NotAlgebraicUpToCaps(cap)),
        Err(e) => return Err(e),
    };
    decompose_in_space(&space)
}

/// Decomposes the generator of an already computed space.
pub fn decompose_in_space(space: &KrylovSpace) -> Result<Decomposition> {
    let chi = char_poly(&space.matrix)?;
    let split = rational_root_split(&chi);
    if !split.is_split() {
        return Err(Error::NonRationalSpectrum(split.residual.monic()));
    }

    let n = space.dim();
    let mut generator_coords = vec![Rational::zero(); n];
    generator_coords[0] = int(1);

    let factors: Vec<(Rational, UniPoly)> =
        split.roots.iter().map(|(root, &mult)| (root.clone(), UniPoly::linear(root).pow(mult))).collect();

    let mut parts = Vec::with_capacity(factors.len());
    for (root, factor) in &factors {
        let idempotent = if factors.len() == 1 {
            UniPoly::one()
        } else {
            // e = 1 mod factor, e = 0 mod cofactor
            let cofactor = chi.div_rem(factor).0;
            let (g, s, _) = cofactor.ext_gcd(factor);
            debug_assert!(g.is_monic() && g.degree() == Some(0));
            s.mul(&cofactor).rem(&chi)
        };
        let coords = space.matrix.apply_poly(&idempotent, &generator_coords);
        if coords.iter().all(Zero::is_zero) {
            continue;
        }
        let shifted = space.matrix.add_scaled_identity(&-root.clone());
        let mut height = 0;
        let mut v = shifted.mul_vec(&coords);
        while !v.iter().all(Zero::is_zero) {
            height += 1;
            v = shifted.mul_vec(&v);
        }
        parts.push(Part { lambda: Eigenvalue::rational(root.clone()), component: space.combine(&coords), height });
    }
    Ok(Decomposition { parts })
}

/// Groups the monomials of `p` by their weight under a diagonal derivation.
/// Every part has height zero.
pub fn decompose_diagonal(d: &Derivation, p: &Poly) -> Result<Decomposition> {
    if !matches!(d.kind(), DerivationKind::Diagonal { .. }) {
        return Err(Error::NotDiagonal);
    }
    d.ring().check_same(p.ring())?;
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut groups: BTreeMap<Eigenvalue, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let w = d.monomial_weight(m).expect("diagonal");
        groups.entry(w).or_insert_with(|| Poly::zero(p.ring())).add_term(m.clone(), c.clone());
    }
    let parts = groups.into_iter().map(|(lambda, component)| Part { lambda, component, height: 0 }).collect();
    Ok(Decomposition { parts })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuHeight {
    Height(u32),
    NotInEigenspace,
}

/// The `mu`-height of `p`, or `NotInEigenspace` when `p` has components
/// outside the generalized `mu`-eigenspace.
pub fn mu_height(d: &Derivation, p: &Poly, mu: &Eigenvalue, caps: &Caps) -> Result<MuHeight> {
    let dec = decompose_element(d, p, caps)?;
    Ok(match dec.single_part() {
        Some(part) if &part.lambda == mu => MuHeight::Height(part.height),
        _ => MuHeight::NotInEigenspace,
    })
}

/// Evidence that an element is not killed by any power of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralWitness {
    /// A nonzero rational (or formal) eigenvalue in the element's spectrum.
    Eigenvalue(Eigenvalue),
    /// The spectrum has irrational eigenvalues, all roots of this monic
    /// factor, which does not vanish at zero.
    Irrational(UniPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotenceVerdict {
    /// `D^r(p) != 0` and `D^(r+1)(p) = 0`.
    Nilpotent(u32),
    NotNilpotent(SpectralWitness),
    Undetermined(Cap),
}

pub fn is_nilpotent_element(d: &Derivation, p: &Poly, caps: &Caps) -> Result<NilpotenceVerdict> {
    if p.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let DerivationKind::Diagonal { .. } = d.kind() {
        let dec = decompose_diagonal(d, p)?;
        return Ok(match dec.parts.iter().find(|part| !part.lambda.is_zero()) {
            None => NilpotenceVerdict::Nilpotent(0),
            Some(part) => NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(part.lambda.clone())),
        });
    }
    let space = match krylov_space(d, p, caps) {
        Ok(s) => s,
        Err(Error::CapExceeded(cap)) => return Ok(NilpotenceVerdict::Undetermined(cap)),
        Err(e) => return Err(e),
    };
    let chi = char_poly(&space.matrix)?;
    let split = rational_root_split(&chi);
    if let Some(root) = split.roots.keys().find(|r| !r.is_zero()) {
        return Ok(NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(Eigenvalue::rational(root.clone()))));
    }
    if !split.is_split() {
        return Ok(NilpotenceVerdict::NotNilpotent(SpectralWitness::Irrational(split.residual.monic())));
    }
    // chi = X^n: the n-th iterate vanished.
    Ok(NilpotenceVerdict::Nilpotent(space.dim() as u32 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalNilpotence {
    Nilpotent,
    NotNilpotent { witness: String },
    Undetermined { variable: String, cap: Cap },
}

/// Locally nilpotent iff every variable is: the elements killed by a power of
/// `D` form a subalgebra (binomial Leibniz formula), and the variables
/// generate the ring.
pub fn is_locally_nilpotent(d: &Derivation, caps: &Caps) -> LocalNilpotence {
    let mut undetermined = None;
    for (i, name) in d.ring().vars().iter().enumerate() {
        let x = Poly::var_at(d.ring(), i);
        match is_nilpotent_element(d, &x, caps).expect("variables are nonzero and live in the ring") {
            NilpotenceVerdict::Nilpotent(_) => {}
            NilpotenceVerdict::NotNilpotent(_) => return LocalNilpotence::NotNilpotent { witness: name.clone() },
            NilpotenceVerdict::Undetermined(cap) => {
                undetermined.get_or_insert(LocalNilpotence::Undetermined { variable: name.clone(), cap });
            }
        }
    }
    undetermined.unwrap_or(LocalNilpotence::Nilpotent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// Eigenvalues occurring in each ring variable, in ring order.
    pub generators: Vec<(String, BTreeSet<Eigenvalue>)>,
    /// Sums of one to `sum_bound` generator eigenvalues, sorted.
    pub monoid_sample: BTreeSet<Eigenvalue>,
}

/// Decomposes every ring variable and closes the observed eigenvalues under
/// bounded sums.
///
/// Zero appears in the sample only when some generator has a zero
/// component.
pub fn spectrum_and_monoid(d: &Derivation, caps: &Caps, sum_bound: usize) -> Result<Spectrum> {
    let mut generators = Vec::with_capacity(d.ring().len());
    let mut observed = BTreeSet::new();
    for (i, name) in d.ring().vars().iter().enumerate() {
        let dec = decompose_element(d, &Poly::var_at(d.ring(), i), caps)?;
        let set: BTreeSet<Eigenvalue> = dec.eigenvalues().cloned().collect();
        observed.extend(set.iter().cloned());
        generators.push((name.clone(), set));
    }
    let mut sample = BTreeSet::new();
    let mut level = observed.clone();
    for k in 1..=sum_bound {
        if k > 1 {
            level = level.iter().flat_map(|a| observed.iter().map(move |b| a + b)).collect();
        }
        sample.extend(level.iter().cloned());
    }
    Ok(Spectrum { generators, monoid_sample: sample })
}

/// `(D - lambda)^k (p)` computed directly, without any spectral machinery.
pub fn shifted_power(d: &Derivation, p: &Poly, lambda: &Rational, k: u32) -> Result<Poly> {
    let op = d.shifted(lambda);
    let mut q = p.clone();
    for _ in 0..k {
        if q.is_zero() {
            break;
        }
        q = op(&q)?;
    }
    Ok(q)
}

/// True when `lambda` is the unique eigenvalue and `p` is a `lambda`-eigenvector.
pub fn is_eigenvector(d: &Derivation, p: &Poly, lambda: &Rational) -> Result<bool> {
    Ok(!p.is_zero() && shifted_power(d, p, lambda, 1)?.is_zero())
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "lambda={} height={}: {}", part.lambda, part.height, part.component)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn xy() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn mono(c: i64, e: &[u32]) -> Poly {
        Poly::monomial(&xy(), Monomial::new(e.to_vec()), int(c))
    }

    fn scale_translate() -> Derivation {
        let r = xy();
        Derivation::general(&r, vec![Poly::var_at(&r, 0), Poly::one(&r)]).unwrap()
    }

    fn shear(n: u32) -> Derivation {
        Derivation::general(&xy(), vec![mono(1, &[n, n]), mono(-1, &[n - 1, n + 1])]).unwrap()
    }

    fn ev(n: i64) -> Eigenvalue {
        Eigenvalue::from_int(n)
    }

    #[test]
    fn krylov_of_eigenvector() {
        let k = krylov_space(&Derivation::euler(&xy()), &mono(1, &[1, 0]), &Caps::default()).unwrap();
        assert_eq!(k.basis, vec![mono(1, &[1, 0])]);
        assert_eq!(k.matrix, QMatrix::from_i64(&[&[1]]));
    }

    #[test]
    fn krylov_of_translation_orbit() {
        let k = krylov_space(&scale_translate(), &mono(1, &[0, 1]), &Caps::default()).unwrap();
        assert_eq!(k.dim(), 2);
        assert_eq!(char_poly(&k.matrix).unwrap(), UniPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn krylov_hits_dim_cap_on_shear() {
        let caps = Caps::default().with_dim(32);
        assert_eq!(krylov_space(&shear(1), &mono(1, &[0, 1]), &caps), Err(Error::CapExceeded(Cap::Dim)));
    }

    #[test]
    fn algebraic_elements() {
        let caps = Caps::default();
        assert_eq!(
            is_algebraic_element(&scale_translate(), &mono(1, &[2, 3]), &caps).unwrap(),
            Algebraicity::Finite { dim: 4 }
        );
        assert_eq!(is_algebraic_element(&shear(1), &mono(5, &[0, 0]), &caps).unwrap(), Algebraicity::Finite { dim: 1 });
        assert!(matches!(
            is_algebraic_element(&shear(1), &mono(1, &[0, 1]), &caps).unwrap(),
            Algebraicity::UnknownUpToCaps { .. }
        ));
    }

    #[test]
    fn decompose_scale_translate() {
        let p = &mono(1, &[1, 1]) + &mono(1, &[0, 2]);
        let dec = decompose_element(&scale_translate(), &p, &Caps::default()).unwrap();
        assert_eq!(
            dec.parts,
            vec![
                Part { lambda: ev(0), component: mono(1, &[0, 2]), height: 2 },
                Part { lambda: ev(1), component: mono(1, &[1, 1]), height: 1 },
            ]
        );
        assert_eq!(dec.to_string(), "lambda=0 height=2: y^2\nlambda=1 height=1: x*y");
    }

    #[test]
    fn decompose_euler_by_degree() {
        let r = Ring::new(&["x", "y", "z"]);
        let x = Poly::var_at(&r, 0);
        let p = &(&Poly::one(&r) + &x) + &x.pow(2);
        let dec = decompose_element(&Derivation::euler(&r), &p, &Caps::default()).unwrap();
        let got: Vec<_> = dec.parts.iter().map(|p| (p.lambda.clone(), p.component.clone(), p.height)).collect();
        assert_eq!(got, vec![(ev(0), Poly::one(&r), 0), (ev(1), x.clone(), 0), (ev(2), x.pow(2), 0)]);
    }

    #[test]
    fn kernel_element_is_single_zero_part() {
        let p = mono(3, &[2, 2]);
        let dec = decompose_element(&shear(2), &p, &Caps::default()).unwrap();
        assert_eq!(dec.parts, vec![Part { lambda: ev(0), component: p, height: 0 }]);
    }

    #[test]
    fn rotation_field_has_irrational_spectrum() {
        let r = xy();
        let d = Derivation::general(&r, vec![Poly::var_at(&r, 1), -&Poly::var_at(&r, 0)]).unwrap();
        let err = decompose_element(&d, &Poly::var_at(&r, 0), &Caps::default()).unwrap_err();
        assert_eq!(err, Error::NonRationalSpectrum(UniPoly::from_i64(&[1, 0, 1])));
        assert_eq!(
            is_nilpotent_element(&d, &Poly::var_at(&r, 0), &Caps::default()).unwrap(),
            NilpotenceVerdict::NotNilpotent(SpectralWitness::Irrational(UniPoly::from_i64(&[1, 0, 1])))
        );
    }

    #[test]
    fn zero_is_rejected() {
        let z = Poly::zero(&xy());
        assert_eq!(decompose_element(&scale_translate(), &z, &Caps::default()), Err(Error::ZeroElement));
    }

    #[test]
    fn mu_heights() {
        let d = scale_translate();
        let caps = Caps::default();
        assert_eq!(mu_height(&d, &mono(1, &[2, 3]), &ev(2), &caps).unwrap(), MuHeight::Height(3));
        assert_eq!(mu_height(&d, &mono(1, &[3, 0]), &ev(3), &caps).unwrap(), MuHeight::Height(0));
        let p = &mono(1, &[1, 0]) + &mono(1, &[0, 1]);
        assert_eq!(mu_height(&d, &p, &ev(1), &caps).unwrap(), MuHeight::NotInEigenspace);
    }

    #[test]
    fn nilpotence_verdicts() {
        let caps = Caps::default();
        assert_eq!(is_nilpotent_element(&shear(2), &mono(1, &[2, 1]), &caps).unwrap(), NilpotenceVerdict::Nilpotent(1));
        assert_eq!(
            is_nilpotent_element(&Derivation::euler(&xy()), &mono(1, &[1, 0]), &caps).unwrap(),
            NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(ev(1)))
        );
        assert_eq!(
            is_nilpotent_element(&shear(1), &mono(1, &[0, 1]), &caps).unwrap(),
            NilpotenceVerdict::Undetermined(Cap::Dim)
        );
    }

    #[test]
    fn local_nilpotence() {
        let r = xy();
        let caps = Caps::default();
        let dx = Derivation::general(&r, vec![Poly::one(&r), Poly::zero(&r)]).unwrap();
        assert_eq!(is_locally_nilpotent(&dx, &caps), LocalNilpotence::Nilpotent);
        let r3 = Ring::new(&["x1", "x2", "x3"]);
        assert_eq!(
            is_locally_nilpotent(&Derivation::euler(&r3), &caps),
            LocalNilpotence::NotNilpotent { witness: "x1".into() }
        );
        assert!(matches!(is_locally_nilpotent(&shear(1), &caps), LocalNilpotence::Undetermined { .. }));
    }

    #[test]
    fn spectrum_examples() {
        let caps = Caps::default();
        let s = spectrum_and_monoid(&scale_translate(), &caps, 3).unwrap();
        assert_eq!(s.generators, vec![("x".into(), [ev(1)].into()), ("y".into(), [ev(0)].into())]);
        assert_eq!(s.monoid_sample, (0..=3).map(ev).collect());

        let s = spectrum_and_monoid(&Derivation::euler(&xy()), &caps, 2).unwrap();
        assert_eq!(s.monoid_sample, [ev(1), ev(2)].into());

        let (w1, w2) = (Eigenvalue::symbol(0), Eigenvalue::symbol(1));
        let d = Derivation::diagonal(&xy(), vec![w1.clone(), w2.clone()], vec!["w1".into(), "w2".into()]).unwrap();
        let s = spectrum_and_monoid(&d, &caps, 2).unwrap();
        let expected: BTreeSet<_> = [w1.clone(), w2.clone(), &w1 + &w1, &w1 + &w2, &w2 + &w2].into();
        assert_eq!(s.monoid_sample, expected);
    }

    #[test]
    fn diagonal_examples() {
        let (w1, w2) = (Eigenvalue::symbol(0), Eigenvalue::symbol(1));
        let d = Derivation::diagonal(&xy(), vec![w1.clone(), w2.clone()], vec![]).unwrap();
        let p = &mono(1, &[2, 1]) + &mono(1, &[1, 2]);
        let dec = decompose_diagonal(&d, &p).unwrap();
        let lambdas: Vec<_> = dec.eigenvalues().cloned().collect();
        // 2w1 + w2 sorts after w1 + 2w2
        assert_eq!(lambdas, vec![&(&w1 + &w2) + &w2, &(&w1 + &w1) + &w2]);
        assert!(dec.parts.iter().all(|p| p.height == 0));

        let ones = Derivation::diagonal(&xy(), vec![ev(1), ev(1)], vec![]).unwrap();
        let p = &(&Poly::one(&xy()) + &mono(1, &[1, 0])) + &mono(1, &[2, 0]);
        let dec = decompose_diagonal(&ones, &p).unwrap();
        assert_eq!(dec.eigenvalues().cloned().collect::<Vec<_>>(), vec![ev(0), ev(1), ev(2)]);
        assert_eq!(dec, decompose_element(&Derivation::euler(&xy()), &p, &Caps::default()).unwrap());
        assert_eq!(decompose_diagonal(&Derivation::euler(&xy()), &p), Err(Error::NotDiagonal));
    }
}
