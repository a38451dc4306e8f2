//! Seeded property suites over the spectral machinery.
//!
//! Every suite is a pure function of its seed. Failures carry the concrete
//! input, the contract that was expected and what was observed, so a failing
//! case can be replayed by hand.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derivation::{exp_truncated, phi_truncated_with, Derivation, DerivationKind};
use crate::eigenvalue::Eigenvalue;
use crate::error::{Error, Result};
use crate::invariants::{act, check_euler_descends, enumerate_group, reynolds, MatrixGroup, DEFAULT_GROUP_CAP};
use crate::linalg::QMatrix;
use crate::poly::{Monomial, Poly, Ring};
use crate::rational::{int, ratio, Rational};
use crate::spectral::{decompose_element, is_nilpotent_element, mu_height, shifted_power, Caps, Decomposition};
use crate::spectral::{MuHeight, NilpotenceVerdict, SpectralWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub skipped: Vec<String>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        SuiteReport { suite: suite.to_string(), seed, cases: 0, skipped: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, input: impl FnOnce() -> String, expected: &str, observed: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { input: input(), expected: expected.to_string(), observed: observed() });
        }
    }

    fn fail(&mut self, input: String, expected: &str, observed: String) {
        self.cases += 1;
        self.failures.push(Failure { input, expected: expected.to_string(), observed });
    }

    fn merge(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.skipped.extend(other.skipped);
        self.failures.extend(other.failures);
    }
}

fn coefficient_pool() -> Vec<Rational> {
    let mut pool: Vec<Rational> = (-9..=9).filter(|&k| k != 0).map(int).collect();
    pool.extend((-9..=9).filter(|k| k % 2 != 0).map(|k| ratio(k, 2)));
    pool
}

fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_degree, &mut out);
    out.sort();
    out
}

/// Deterministic nonzero polynomial with between one and `max_terms` distinct
/// monomials of total degree at most `max_degree`.
pub fn random_poly(seed: u64, ring: &Ring, max_degree: u32, max_terms: usize) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly_with(&mut rng, ring, max_degree, max_terms)
}

fn random_poly_with(rng: &mut ChaCha8Rng, ring: &Ring, max_degree: u32, max_terms: usize) -> Poly {
    let monomials = monomials_up_to(ring.len(), max_degree);
    let pool = coefficient_pool();
    let count = rng.random_range(1..=max_terms.max(1)).min(monomials.len());
    let chosen: Vec<&Monomial> = monomials.choose_multiple(rng, count).collect();
    Poly::from_terms(ring, chosen.into_iter().map(|m| (m.clone(), pool.choose(rng).unwrap().clone())))
}

/// Random univariate polynomial in `var` of degree exactly `degree`.
pub fn random_univariate(seed: u64, ring: &Ring, var: usize, degree: u32) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = coefficient_pool();
    let mut terms = Vec::new();
    for e in 0..=degree {
        if e < degree && rng.random_bool(0.4) {
            continue;
        }
        let mut exps = vec![0; ring.len()];
        exps[var] = e;
        terms.push((Monomial::new(exps), pool.choose(&mut rng).unwrap().clone()));
    }
    Poly::from_terms(ring, terms)
}

/// Derivations with known behaviour, shared by the suites and their tests.
pub mod fixtures {
    use super::*;

    pub fn xy() -> Ring {
        Ring::new(&["x", "y"])
    }

    fn mono(c: i64, e: &[u32]) -> Poly {
        Poly::monomial(&xy(), Monomial::new(e.to_vec()), int(c))
    }

    fn general(images: [Poly; 2]) -> Derivation {
        Derivation::general(&xy(), images.to_vec()).expect("fixture images")
    }

    /// `x d/dx + y d/dy`
    pub fn euler() -> Derivation {
        Derivation::euler(&xy())
    }

    /// `x d/dx + d/dy`
    pub fn scale_x_translate_y() -> Derivation {
        general([mono(1, &[1, 0]), mono(1, &[0, 0])])
    }

    /// `d/dx + y d/dy`
    pub fn translate_x_scale_y() -> Derivation {
        general([mono(1, &[0, 0]), mono(1, &[0, 1])])
    }

    /// `y d/dy`
    pub fn scale_y() -> Derivation {
        general([Poly::zero(&xy()), mono(1, &[0, 1])])
    }

    /// `d/dx`
    pub fn translate_x() -> Derivation {
        general([mono(1, &[0, 0]), Poly::zero(&xy())])
    }

    /// `x d/dx - y d/dy`
    pub fn hyperbolic() -> Derivation {
        general([mono(1, &[1, 0]), mono(-1, &[0, 1])])
    }

    /// `y d/dx`, locally nilpotent.
    pub fn triangular() -> Derivation {
        general([mono(1, &[0, 1]), Poly::zero(&xy())])
    }

    /// `x^(n-1) y^n (x d/dx - y d/dy)`, not locally finite.
    pub fn shear(n: u32) -> Derivation {
        assert!(n >= 1);
        general([mono(1, &[n, n]), mono(-1, &[n - 1, n + 1])])
    }

    /// `y d/dx - x d/dy`, whose eigenvalues on linear forms are `+-i`.
    pub fn rotation_field() -> Derivation {
        general([mono(1, &[0, 1]), mono(-1, &[1, 0])])
    }

    /// `w1 x d/dx + w2 y d/dy` with formal weights.
    pub fn formal_diagonal() -> Derivation {
        Derivation::diagonal(&xy(), vec![Eigenvalue::symbol(0), Eigenvalue::symbol(1)], vec!["w1".into(), "w2".into()])
            .expect("two weights")
    }

    /// The linear derivations the decomposition laws are run against.
    pub fn algebraic_pool() -> Vec<Derivation> {
        vec![
            scale_x_translate_y(),
            euler(),
            translate_x_scale_y(),
            scale_y(),
            translate_x(),
            hyperbolic(),
            triangular(),
            formal_diagonal(),
        ]
    }

    pub fn minus_identity() -> MatrixGroup {
        enumerate_group(2, &[QMatrix::from_i64(&[&[-1, 0], &[0, -1]])], DEFAULT_GROUP_CAP).expect("order 2")
    }

    pub fn quarter_turn() -> MatrixGroup {
        enumerate_group(2, &[QMatrix::from_i64(&[&[0, -1], &[1, 0]])], DEFAULT_GROUP_CAP).expect("order 4")
    }

    pub fn swap() -> MatrixGroup {
        enumerate_group(2, &[QMatrix::from_i64(&[&[0, 1], &[1, 0]])], DEFAULT_GROUP_CAP).expect("order 2")
    }
}

/// Compares `phi_D(p)` with `e^(lambda t) phi_(D - lambda)(p)` coefficientwise.
pub fn check_shift_identity(d: &Derivation, p: &Poly, lambda: &Rational, order: usize) -> Result<bool> {
    let lhs = d.phi_truncated(p, order)?;
    let shifted = phi_truncated_with(d.shifted(lambda), p, order)?;
    let rhs = shifted.scalar_mul(&exp_truncated(&Eigenvalue::rational(lambda.clone()), order)?);
    Ok(lhs == rhs)
}

pub fn shift_identity_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("shift-identity", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = [fixtures::euler(), fixtures::scale_x_translate_y(), fixtures::scale_y(), fixtures::translate_x()];
    let lambdas = [int(0), int(1), int(-1), int(2), ratio(1, 2)];
    for _ in 0..cases {
        let d = pool.choose(&mut rng).unwrap();
        let lambda = lambdas.choose(&mut rng).unwrap();
        let p = random_poly_with(&mut rng, &fixtures::xy(), 3, 4);
        let input = || format!("D: {d}; p = {p}; lambda = {lambda}; order 8");
        match check_shift_identity(d, &p, lambda, 8) {
            Ok(ok) => {
                report.check(ok, input, "phi_D(p) = e^(lambda t) phi_(D-lambda)(p) mod t^9", || "mismatch".into())
            }
            Err(e) => report.fail(input(), "identity evaluated", e.to_string()),
        }
    }
    report
}

fn is_formal(d: &Derivation) -> bool {
    matches!(d.kind(), DerivationKind::Diagonal { .. }) && d.to_general().is_err()
}

/// `(D - lambda)^h c != 0` and `(D - lambda)^(h+1) c = 0`, checked without
/// the decomposition code path.
fn annihilation_holds(d: &Derivation, c: &Poly, lambda: &Eigenvalue, height: u32) -> Result<bool> {
    if is_formal(d) {
        let uniform = c.terms().all(|(m, _)| d.monomial_weight(m).as_ref() == Some(lambda));
        return Ok(uniform && height == 0 && !c.is_zero());
    }
    let d = d.to_general()?;
    let l = lambda.as_rational().ok_or_else(|| Error::UnsupportedScalar(lambda.to_string()))?;
    let top = shifted_power(&d, c, l, height)?;
    Ok(!top.is_zero() && shifted_power(&d, &top, l, 1)?.is_zero())
}

/// Reconstruction, annihilation, uniqueness, D-stability, product grading and
/// closure of the zero eigenspace, on one concrete pair.
pub fn check_decomposition_laws(d: &Derivation, p: &Poly, q: &Poly, caps: &Caps) -> SuiteReport {
    let mut report = SuiteReport::new("decomposition-laws", 0);
    let label = |x: &Poly| format!("D: {d}; element {x}");
    let mut decs: Vec<(Poly, Decomposition)> = Vec::new();
    for x in [p, q] {
        match decompose_element(d, x, caps) {
            Ok(dec) => decs.push((x.clone(), dec)),
            Err(Error::NotAlgebraicUpToCaps(cap)) => {
                report.skipped.push(format!("{}: not algebraic up to the {cap} cap", label(x)));
                return report;
            }
            Err(e) => {
                report.fail(label(x), "decomposition succeeds", e.to_string());
                return report;
            }
        }
    }

    for (x, dec) in &decs {
        report.check(dec.sum().as_ref() == Some(x), || label(x), "components sum to the element", || dec.to_string());
        let ordered = dec.parts.windows(2).all(|w| w[0].lambda < w[1].lambda);
        let nonzero = dec.parts.iter().all(|part| !part.component.is_zero());
        report.check(ordered && nonzero, || label(x), "nonzero components, increasing eigenvalues", || dec.to_string());
        for part in &dec.parts {
            let c = &part.component;
            let lam = &part.lambda;
            match annihilation_holds(d, c, lam, part.height) {
                Ok(ok) => report.check(
                    ok,
                    || label(c),
                    "(D-lambda)^h c != 0 and (D-lambda)^(h+1) c = 0",
                    || format!("lambda {lam}, height {}", part.height),
                ),
                Err(e) => report.fail(label(c), "annihilation evaluated", e.to_string()),
            }
            match decompose_element(d, c, caps) {
                Ok(again) => report.check(
                    again.parts.len() == 1 && &again.parts[0] == part,
                    || label(c),
                    "a component decomposes to itself",
                    || again.to_string(),
                ),
                Err(e) => report.fail(label(c), "component decomposes", e.to_string()),
            }
            if !is_formal(d) {
                let image = d.apply(c).expect("rational derivation");
                if !image.is_zero() {
                    match decompose_element(d, &image, caps) {
                        Ok(dd) => report.check(
                            dd.is_single_at(lam),
                            || label(&image),
                            "D maps each eigenspace into itself",
                            || dd.to_string(),
                        ),
                        Err(e) => report.fail(label(&image), "D(component) decomposes", e.to_string()),
                    }
                }
            }
        }
    }

    let (dp, dq) = (&decs[0].1, &decs[1].1);
    for a in &dp.parts {
        for b in &dq.parts {
            let prod = &a.component * &b.component;
            let target = &a.lambda + &b.lambda;
            match decompose_element(d, &prod, caps) {
                Ok(dec) => report.check(
                    dec.is_single_at(&target),
                    || label(&prod),
                    "product of eigencomponents lies in the eigenspace of the summed eigenvalue",
                    || {
                        format!(
                            "expected {target}, got {}",
                            dec.eigenvalues().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
                        )
                    },
                ),
                Err(e) => report.fail(label(&prod), "product decomposes", e.to_string()),
            }
        }
    }

    let zero = Eigenvalue::zero();
    if let (Some(a), Some(b)) = (dp.part(&zero), dq.part(&zero)) {
        let sum = &a.component + &b.component;
        if !sum.is_zero() {
            match decompose_element(d, &sum, caps) {
                Ok(dec) => report.check(
                    dec.is_single_at(&zero),
                    || label(&sum),
                    "zero eigenspace closed under sums",
                    || dec.to_string(),
                ),
                Err(e) => report.fail(label(&sum), "sum decomposes", e.to_string()),
            }
        }
    }
    report
}

pub fn decomposition_laws_suite(seed: u64, pairs_per_fixture: usize) -> SuiteReport {
    let mut report = SuiteReport::new("decomposition-laws", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let caps = Caps::default();
    for d in fixtures::algebraic_pool() {
        for _ in 0..pairs_per_fixture {
            let p = random_poly_with(&mut rng, &fixtures::xy(), 3, 4);
            let q = random_poly_with(&mut rng, &fixtures::xy(), 3, 4);
            report.merge(check_decomposition_laws(&d, &p, &q, &caps));
        }
    }
    report
}

/// For each pair whose product lies in the zero eigenspace, both factors must
/// too. Pairs whose product does not are recorded as skipped.
pub fn check_factorially_closed_sample(d: &Derivation, pairs: &[(Poly, Poly)], caps: &Caps) -> SuiteReport {
    let mut report = SuiteReport::new("factorial-closure", 0);
    let zero = Eigenvalue::zero();
    let in_kernel_space = |x: &Poly| decompose_element(d, x, caps).map(|dec| dec.is_single_at(&zero));
    for (a, b) in pairs {
        let input = || format!("D: {d}; factors ({a}) * ({b})");
        let prod = a * b;
        match in_kernel_space(&prod) {
            Ok(true) => {}
            Ok(false) => {
                report.skipped.push(format!("{}: product outside the zero eigenspace", input()));
                continue;
            }
            Err(e) => {
                report.skipped.push(format!("{}: {e}", input()));
                continue;
            }
        }
        for factor in [a, b] {
            match in_kernel_space(factor) {
                Ok(ok) => {
                    report.check(ok, input, "both factors lie in the zero eigenspace", || format!("{factor} does not"))
                }
                Err(e) => report.fail(input(), "factor decomposes", e.to_string()),
            }
        }
    }
    report
}

pub fn factorial_closure_suite(seed: u64, pairs: usize) -> SuiteReport {
    let mut report = SuiteReport::new("factorial-closure", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = fixtures::xy();
    let caps = Caps::default();

    // x d/dx + d/dy: the zero eigenspace is Q[y].
    let mut sample = Vec::new();
    for _ in 0..pairs {
        let a = random_univariate(rng.random(), &ring, 1, rng.random_range(0..=3));
        let b = random_univariate(rng.random(), &ring, 1, rng.random_range(0..=3));
        sample.push((a, b));
    }
    let (x, y) = (Poly::var_at(&ring, 0), Poly::var_at(&ring, 1));
    sample.push((x.clone(), y.clone()));
    report.merge(check_factorially_closed_sample(&fixtures::scale_x_translate_y(), &sample, &caps));

    // y d/dy: the zero eigenspace is Q[x].
    let mut sample = vec![(&x + &Poly::one(&ring), x.pow(2))];
    for _ in 0..pairs {
        let a = random_univariate(rng.random(), &ring, 0, rng.random_range(0..=3));
        let b = random_univariate(rng.random(), &ring, 0, rng.random_range(0..=3));
        sample.push((a, b));
    }
    report.merge(check_factorially_closed_sample(&fixtures::scale_y(), &sample, &caps));
    report
}

/// `d/dx + y d/dy`: `x^m y^n` is nilpotent iff `n = 0`, and `f(x) y^n` has
/// `n`-height `deg f`.
pub fn translation_scaling_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("translation-scaling", seed);
    let d = fixtures::translate_x_scale_y();
    let ring = fixtures::xy();
    let caps = Caps::default();
    for m in 0..=5u32 {
        for n in 0..=5u32 {
            let p = Poly::monomial(&ring, Monomial::new(vec![m, n]), int(1));
            let expected = if n == 0 {
                NilpotenceVerdict::Nilpotent(m)
            } else {
                NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(Eigenvalue::from_int(n as i64)))
            };
            match is_nilpotent_element(&d, &p, &caps) {
                Ok(v) => report.check(
                    v == expected,
                    || format!("D: {d}; p = {p}"),
                    "nilpotent exactly when n = 0",
                    || format!("{v:?}"),
                ),
                Err(e) => report.fail(format!("p = {p}"), "verdict", e.to_string()),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let deg = rng.random_range(0..=4);
        let f = random_univariate(rng.random(), &ring, 0, deg);
        for n in 0..=3u32 {
            let p = &f * &Poly::monomial(&ring, Monomial::new(vec![0, n]), int(1));
            let mu = Eigenvalue::from_int(n as i64);
            match mu_height(&d, &p, &mu, &caps) {
                Ok(h) => report.check(
                    h == MuHeight::Height(deg),
                    || format!("D: {d}; p = {p}; mu = {n}"),
                    "height = deg f",
                    || format!("{h:?}"),
                ),
                Err(e) => report.fail(format!("p = {p}"), "height", e.to_string()),
            }
        }
    }
    report
}

/// `y d/dy`: every `x^m y^n` is a pure eigenvector for `n`, and the zero
/// eigenspace `Q[x]` is factorially closed on seeded samples.
pub fn pure_scaling_suite(seed: u64, pairs: usize) -> SuiteReport {
    let mut report = SuiteReport::new("pure-scaling", seed);
    let d = fixtures::scale_y();
    let ring = fixtures::xy();
    let caps = Caps::default();
    for m in 0..=5u32 {
        for n in 0..=5u32 {
            let p = Poly::monomial(&ring, Monomial::new(vec![m, n]), int(1));
            match decompose_element(&d, &p, &caps) {
                Ok(dec) => {
                    let ok = dec
                        .single_part()
                        .is_some_and(|part| part.lambda == Eigenvalue::from_int(n as i64) && part.height == 0);
                    report.check(ok, || format!("D: {d}; p = {p}"), "single part at n, height 0", || dec.to_string())
                }
                Err(e) => report.fail(format!("p = {p}"), "decomposition", e.to_string()),
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = Vec::new();
    for _ in 0..pairs {
        let a = random_univariate(rng.random(), &ring, 0, rng.random_range(0..=4));
        let b = random_univariate(rng.random(), &ring, 0, rng.random_range(0..=4));
        sample.push((a, b));
    }
    report.merge(check_factorially_closed_sample(&d, &sample, &caps));
    report
}

/// Formal weights put `x^a y^b` at `a w1 + b w2`; weights `(1, 1)` agree with
/// the Euler derivation decomposed through its iterates.
pub fn diagonal_weights_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("diagonal-weights", seed);
    let ring = fixtures::xy();
    let formal = fixtures::formal_diagonal();
    for m in monomials_up_to(2, 6) {
        let e = m.exponents();
        let expected = Eigenvalue::new(int(0), vec![int(e[0] as i64), int(e[1] as i64)]);
        let p = Poly::monomial(&ring, m.clone(), int(1));
        match crate::spectral::decompose_diagonal(&formal, &p) {
            Ok(dec) => report.check(
                dec.is_single_at(&expected) && dec.parts[0].height == 0,
                || format!("p = {p}"),
                "single part at the monomial weight",
                || dec.to_string(),
            ),
            Err(e) => report.fail(format!("p = {p}"), "decomposition", e.to_string()),
        }
    }
    let ones = Derivation::diagonal(&ring, vec![Eigenvalue::from_int(1), Eigenvalue::from_int(1)], vec![])
        .expect("two weights");
    let euler = fixtures::euler();
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_poly_with(&mut rng, &ring, 4, 5);
        let lhs = crate::spectral::decompose_diagonal(&ones, &p);
        let rhs = decompose_element(&euler, &p, &caps);
        report.check(
            lhs.is_ok() && lhs == rhs,
            || format!("p = {p}"),
            "weights (1,1) match the Euler decomposition",
            || format!("{lhs:?} vs {rhs:?}"),
        );
    }
    report
}

/// Euler derivation on Reynolds images for `{+-I}`, the quarter turn and the
/// swap, plus commutation of the Euler derivation with each group element.
pub fn euler_descent_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("euler-descent", seed);
    let ring = fixtures::xy();
    let euler = fixtures::euler();
    let groups =
        [("{+-I}", fixtures::minus_identity()), ("quarter turn", fixtures::quarter_turn()), ("swap", fixtures::swap())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, group) in &groups {
        let mut nontrivial = false;
        for _ in 0..samples {
            let p = random_poly_with(&mut rng, &ring, 4, 5);
            let inv = reynolds(group, &p).expect("same ring");
            if inv.is_zero() {
                report.skipped.push(format!("{name}: Reynolds image of {p} is zero"));
                continue;
            }
            let mut candidates = vec![inv.clone()];
            candidates.extend(homogeneous_components(&inv).into_iter().filter(|c| c != &inv));
            for f in candidates {
                match check_euler_descends(group, &f) {
                    Ok(r) => {
                        nontrivial |= r.nontrivial();
                        report.check(
                            r.passed(),
                            || format!("group {name}; invariant {f}"),
                            "D(f) invariant; D(f) = n f on degree-n invariants",
                            || format!("D(f) = {}", r.derivative),
                        )
                    }
                    Err(e) => report.fail(format!("group {name}; invariant {f}"), "check runs", e.to_string()),
                }
            }
            for g in group.elements() {
                let lhs = act(g, &euler.apply(&p).expect("ring")).expect("dimension");
                let rhs = euler.apply(&act(g, &p).expect("dimension")).expect("ring");
                report.check(
                    lhs == rhs,
                    || format!("group {name}; g = {g}; p = {p}"),
                    "act(g, D p) = D(act(g, p))",
                    || format!("{lhs} vs {rhs}"),
                );
            }
        }
        report.check(
            nontrivial,
            || format!("group {name}"),
            "some invariant with D(f) != 0",
            || "all derivatives vanished".into(),
        );
    }
    report
}

fn homogeneous_components(p: &Poly) -> Vec<Poly> {
    let degrees: BTreeSet<u32> = p.terms().map(|(m, _)| m.degree()).collect();
    degrees
        .into_iter()
        .map(|deg| {
            Poly::from_terms(
                p.ring(),
                p.terms().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect()
}

pub const SUITES: [&str; 7] = [
    "shift-identity",
    "decomposition-laws",
    "factorial-closure",
    "translation-scaling",
    "pure-scaling",
    "diagonal-weights",
    "euler-descent",
];

/// Runs a suite by name at its standard size. `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    Some(match name {
        "shift-identity" => shift_identity_suite(seed, 200),
        "decomposition-laws" => decomposition_laws_suite(seed, 100),
        "factorial-closure" => factorial_closure_suite(seed, 20),
        "translation-scaling" => translation_scaling_suite(seed, 20),
        "pure-scaling" => pure_scaling_suite(seed, 20),
        "diagonal-weights" => diagonal_weights_suite(seed, 50),
        "euler-descent" => euler_descent_suite(seed, 50),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, seed).expect("known suite")).collect()
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn random_poly_is_deterministic() {
        let r = xy();
        let a = random_poly(1, &r, 2, 3);
        assert_eq!(a, random_poly(1, &r, 2, 3));
        assert!(!a.is_zero());
        assert!(a.total_degree().unwrap() <= 2 && a.len() <= 3);
        assert_ne!(a, random_poly(2, &r, 2, 3));
    }

    #[test]
    fn random_univariate_has_exact_degree() {
        let r = xy();
        for seed in 0..20 {
            let f = random_univariate(seed, &r, 1, 3);
            assert_eq!(f.total_degree(), Some(3));
            assert!(f.terms().all(|(m, _)| m.exponents()[0] == 0));
        }
    }

    #[test]
    fn shift_identity_examples() {
        let r = xy();
        let xy_ = Poly::monomial(&r, Monomial::new(vec![1, 1]), int(1));
        assert!(check_shift_identity(&scale_x_translate_y(), &xy_, &int(1), 5).unwrap());
        assert!(check_shift_identity(&shear(1), &Poly::one(&r), &int(0), 3).unwrap());
        assert!(check_shift_identity(&euler(), &Poly::var_at(&r, 0), &int(1), 6).unwrap());
    }

    #[test]
    fn decomposition_laws_examples() {
        let r = xy();
        let caps = Caps::default();
        let p = random_poly(7, &r, 3, 4);
        let q = random_poly(8, &r, 3, 4);
        let rep = check_decomposition_laws(&scale_x_translate_y(), &p, &q, &caps);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.cases > 5);

        let one_x = &Poly::one(&r) + &Poly::var_at(&r, 0);
        assert!(check_decomposition_laws(&euler(), &one_x, &one_x, &caps).passed());

        let a = Poly::monomial(&r, Monomial::new(vec![2, 1]), int(1));
        let b = Poly::monomial(&r, Monomial::new(vec![0, 3]), int(-2));
        let rep = check_decomposition_laws(&formal_diagonal(), &a, &b, &caps);
        assert!(rep.passed() && rep.cases > 0);
    }

    #[test]
    fn non_algebraic_pairs_are_skipped() {
        let r = xy();
        let y = Poly::var_at(&r, 1);
        let rep = check_decomposition_laws(&shear(1), &y, &y, &Caps::default().with_dim(16));
        assert!(rep.passed());
        assert_eq!(rep.skipped.len(), 1);
    }

    #[test]
    fn factorial_closure_examples() {
        let r = xy();
        let caps = Caps::default();
        let (x, y) = (Poly::var_at(&r, 0), Poly::var_at(&r, 1));
        let ys = vec![(&y + &Poly::one(&r), y.pow(2))];
        assert!(check_factorially_closed_sample(&scale_x_translate_y(), &ys, &caps).passed());
        let rep = check_factorially_closed_sample(&scale_y(), &[(&x + &Poly::one(&r), x.pow(2))], &caps);
        assert!(rep.passed() && rep.cases == 2);
        let rep = check_factorially_closed_sample(&scale_x_translate_y(), &[(x.clone(), y.clone())], &caps);
        assert_eq!((rep.cases, rep.skipped.len()), (0, 1));
    }

    #[test]
    fn factorial_closure_detects_a_negative_spectrum() {
        // x d/dx - y d/dy has x*y in its kernel while x and y are not: the
        // check must flag this family, where eigenvalues are not all >= 0.
        let r = xy();
        let (x, y) = (Poly::var_at(&r, 0), Poly::var_at(&r, 1));
        let rep = check_factorially_closed_sample(&hyperbolic(), &[(x, y)], &Caps::default());
        assert_eq!(rep.failures.len(), 2);
    }

    #[test]
    fn fingerprint_examples() {
        let d = translate_x_scale_y();
        let r = xy();
        let caps = Caps::default();
        let x3 = Poly::monomial(&r, Monomial::new(vec![3, 0]), int(1));
        assert_eq!(is_nilpotent_element(&d, &x3, &caps).unwrap(), NilpotenceVerdict::Nilpotent(3));
        let x2y = Poly::monomial(&r, Monomial::new(vec![2, 1]), int(1));
        assert_eq!(
            is_nilpotent_element(&d, &x2y, &caps).unwrap(),
            NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(Eigenvalue::from_int(1)))
        );
        let f = &Poly::var_at(&r, 0).pow(2) + &Poly::one(&r);
        let p = &f * &Poly::var_at(&r, 1).pow(2);
        assert_eq!(mu_height(&d, &p, &Eigenvalue::from_int(2), &caps).unwrap(), MuHeight::Height(2));
    }

    #[test]
    fn suites_are_reproducible() {
        let a = translation_scaling_suite(3, 4);
        assert_eq!(a, translation_scaling_suite(3, 4));
        assert!(a.passed());
        assert!(run_suite("nope", 1).is_none());
    }
}
