//! The eleven acceptance criteria, each checked exactly and reported on one
//! line. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use algder::linalg::UniPoly;
use algder::rational::{factorial, int};
use algder::verify::{
    decomposition_laws_suite, diagonal_weights_suite, euler_descent_suite, fixtures, pure_scaling_suite, random_poly,
    random_univariate, shift_identity_suite, translation_scaling_suite, SuiteReport,
};
use algder::{
    decompose_element, is_algebraic_element, is_nilpotent_element, spectrum_and_monoid, Algebraicity, Caps, Derivation,
    Eigenvalue, Error, Monomial, NilpotenceVerdict, Poly, Ring,
};
use algder_cli::parse::ParseErrorKind;
use algder_cli::{format_poly, parse_poly};

const SEED: u64 = 42;

type Check = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(report: SuiteReport) -> Check {
    ensure(report.cases > 0, || format!("{} ran no cases", report.suite))?;
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{} failures; first: {} | expected {} | observed {}",
            report.failures.len(),
            f.input,
            f.expected,
            f.observed
        )),
    }
}

fn mono(ring: &Ring, exps: &[u32]) -> Poly {
    Poly::monomial(ring, Monomial::new(exps.to_vec()), int(1))
}

fn euler_monomials() -> Check {
    let ring = Ring::new(&["x", "y", "z"]);
    let d = Derivation::euler(&ring);
    let caps = Caps::default();
    for a in 0..=6u32 {
        for b in 0..=6 - a {
            for c in 0..=6 - a - b {
                let p = mono(&ring, &[a, b, c]);
                let dec = decompose_element(&d, &p, &caps).map_err(|e| format!("{p}: {e}"))?;
                let deg = Eigenvalue::from_int((a + b + c) as i64);
                let part = dec.single_part().ok_or_else(|| format!("{p}: {} parts", dec.parts.len()))?;
                ensure(part.lambda == deg && part.height == 0 && part.component == p, || format!("{p}: {dec}"))?;
                ensure(part.lambda.is_zero() == p.is_constant(), || format!("{p} at lambda 0"))?;
            }
        }
    }
    for seed in 0..20 {
        let p = random_poly(seed, &ring, 4, 5);
        let dec = decompose_element(&d, &p, &caps).map_err(|e| e.to_string())?;
        let single_zero = dec.is_single_at(&Eigenvalue::zero());
        ensure(single_zero == p.is_constant(), || format!("{p} decomposes as {dec}"))?;
    }
    Ok(())
}

fn scale_translate() -> Check {
    let d = fixtures::scale_x_translate_y();
    let ring = fixtures::xy();
    let caps = Caps::default();
    for n in 0..=6u32 {
        for m in 0..=6u32 {
            let got = d.apply(&mono(&ring, &[n, m])).map_err(|e| e.to_string())?;
            let mut want = mono(&ring, &[n, m]).scale(&int(n as i64));
            if m > 0 {
                want = &want + &mono(&ring, &[n, m - 1]).scale(&int(m as i64));
            }
            ensure(got == want, || format!("D(x^{n}*y^{m}) = {got}, expected {want}"))?;
        }
    }
    for n in 0..=4u32 {
        for seed in 0..20u64 {
            let deg = (seed % 5) as u32;
            let f = random_univariate(SEED * 1000 + seed, &ring, 1, deg);
            let p = &mono(&ring, &[n, 0]) * &f;
            let dec = decompose_element(&d, &p, &caps).map_err(|e| format!("{p}: {e}"))?;
            let ok = dec
                .single_part()
                .is_some_and(|part| part.lambda == Eigenvalue::from_int(n as i64) && part.height == deg);
            ensure(ok, || format!("{p}: {dec}"))?;
        }
    }
    let s = spectrum_and_monoid(&d, &caps, 6).map_err(|e| e.to_string())?;
    let want: BTreeSet<Eigenvalue> = (0..=6).map(Eigenvalue::from_int).collect();
    ensure(s.monoid_sample == want, || format!("monoid sample {:?}", s.monoid_sample))
}

fn shear_family() -> Check {
    let ring = fixtures::xy();
    for n in [1u32, 2] {
        let d = fixtures::shear(n);
        let y = mono(&ring, &[0, 1]);
        for k in 0..=6u32 {
            let got = d.apply_power(&y, k).map_err(|e| e.to_string())?;
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let want = mono(&ring, &[k * (n - 1), k * n + 1]).scale(&(sign * factorial(k)));
            ensure(got == want, || format!("n={n}: D^{k}(y) = {got}, expected {want}"))?;
        }
        let caps = Caps::default().with_dim(32);
        let alg = is_algebraic_element(&d, &y, &caps).map_err(|e| e.to_string())?;
        ensure(matches!(alg, Algebraicity::UnknownUpToCaps { .. }), || format!("n={n}: {alg:?}"))?;
        let caps = Caps::default();
        for i in 0..=6u32 {
            for j in 0..=6u32 {
                let p = mono(&ring, &[i, j]);
                let v = is_nilpotent_element(&d, &p, &caps).map_err(|e| e.to_string())?;
                let ok = if j <= i {
                    v == NilpotenceVerdict::Nilpotent(i - j)
                } else {
                    matches!(v, NilpotenceVerdict::Undetermined(_))
                };
                ensure(ok, || format!("n={n}, x^{i}*y^{j}: {v:?}"))?;
            }
        }
    }
    Ok(())
}

fn rotation_field() -> Check {
    let d = fixtures::rotation_field();
    let x = mono(&fixtures::xy(), &[1, 0]);
    let want = Error::NonRationalSpectrum(UniPoly::from_i64(&[1, 0, 1]));
    match decompose_element(&d, &x, &Caps::default()) {
        Err(e) if e == want => Ok(()),
        other => Err(format!("got {other:?}")),
    }
}

fn parser_round_trip() -> Check {
    let rings = [Ring::new(&["x", "y"]), Ring::new(&["x", "y", "z"])];
    for seed in 0..500u64 {
        let ring = &rings[(seed % 2) as usize];
        let p = random_poly(SEED + seed, ring, 1 + (seed % 5) as u32, 1 + (seed % 7) as usize);
        let text = format_poly(&p);
        let back = parse_poly(&text, ring).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == p && format_poly(&back) == text, || format!("{text} round-trips to {back}"))?;
    }
    let ring = Ring::new(&["x", "y"]);
    let rejections = [
        ("x^-1", 3, ParseErrorKind::NegativeExponent),
        ("x + z", 5, ParseErrorKind::UnknownVariable("z".into())),
        ("2x", 2, ParseErrorKind::UnexpectedToken { found: "x".into(), expected: "an operator or end of input" }),
    ];
    for (text, column, kind) in rejections {
        let err = parse_poly(text, &ring).map(|p| p.to_string()).map_err(|e| (e.column, e.kind));
        ensure(err == Err((column, kind.clone())), || format!("`{text}` gave {err:?}"))?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Euler derivation: monomials are pure eigenvectors at their degree", Box::new(euler_monomials)),
        ("x d/dx + d/dy: action, components x^n f(y), spectrum {0..6}", Box::new(scale_translate)),
        ("shear family n=1,2: iterates, unknown algebraicity, nilpotence orders", Box::new(shear_family)),
        ("shift identity on 200 seeded cases", Box::new(|| suite(shift_identity_suite(SEED, 200)))),
        (
            "decomposition laws on 100 seeded pairs per fixture",
            Box::new(|| {
                let r = decomposition_laws_suite(SEED, 100);
                ensure(r.skipped.is_empty(), || format!("skipped: {:?}", r.skipped))?;
                suite(r)
            }),
        ),
        ("d/dx + y d/dy: nilpotence and mu-heights", Box::new(|| suite(translation_scaling_suite(SEED, 20)))),
        ("y d/dy: pure eigenvectors and factorial closure of Q[x]", Box::new(|| suite(pure_scaling_suite(SEED, 20)))),
        ("formal diagonal weights and (1,1) specialization", Box::new(|| suite(diagonal_weights_suite(SEED, 50)))),
        ("Euler derivation on invariants of {+-I}, rotation, swap", Box::new(|| suite(euler_descent_suite(SEED, 50)))),
        ("rotation field: non-rational spectrum X^2 + 1", Box::new(rotation_field)),
        ("parser: 500 round trips and three rejections with positions", Box::new(parser_round_trip)),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = check();
        let ms = t.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS {:>2}  {name}  ({ms} ms)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2}  {name}  ({ms} ms): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {} ms", criteria.len() - failed, criteria.len(), start.elapsed().as_millis());
    if failed > 0 {
        std::process::exit(1);
    }
}
