//! Command-line front end: expression parser, spec files and subcommands.

pub mod parse;
pub mod spec;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use algder::invariants::{check_euler_descends, reynolds, DEFAULT_GROUP_CAP};
use algder::verify::{run_suite, SuiteReport, SUITES};
use algder::{
    decompose_element, is_algebraic_element, is_locally_nilpotent, is_nilpotent_element, mu_height,
    spectrum_and_monoid, Algebraicity, Caps, Decomposition, Derivation, Eigenvalue, LocalNilpotence, Monomial,
    MuHeight, NilpotenceVerdict, Poly, Ring, SpectralWitness,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use parse::{format_poly, parse_poly, ParseError};
pub use spec::{load_derivation, DerivationSpec, GroupSpec, SpecError};

#[derive(Debug, Parser)]
#[command(name = "algder", version, about = "Spectral analysis of polynomial derivations over the rationals")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_name = "N")]
    pub cap_dim: Option<usize>,
    #[arg(long, global = true, value_name = "N")]
    pub cap_deg: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    pub cap_iter: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Derivation spec file (TOML).
    #[arg(long)]
    pub spec: PathBuf,
    /// Polynomial over the spec's variables.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a polynomial into generalized eigencomponents.
    Decompose(Target),
    /// Dimension of the space spanned by the iterates, if finite within caps.
    Algebraic(Target),
    /// Nilpotence of one element, or local nilpotence of the derivation when --poly is absent.
    Nilpotent {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Height of an element in the generalized eigenspace of --mu.
    Height {
        #[command(flatten)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Truncated series sum D^n(p) t^n / n!.
    Phi {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Eigenvalues of each variable and their sums of up to --sum-bound terms.
    Spectrum {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        sum_bound: usize,
    },
    /// Euler derivation on Reynolds images of monomials up to --max-deg.
    Invariants {
        /// Group spec file (TOML).
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        /// Comma-separated variable names; defaults to x1, x2, ...
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Run seeded property suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input { code: &'static str, message: String },
    Domain(algder::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            _ => 2,
        }
    }

    fn line(&self) -> String {
        let (code, msg) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::Input { code, message } => (*code, message.clone()),
            Failure::Domain(e) => (e.code(), e.to_string()),
        };
        format!("error[{code}]: {}", msg.replace('\n', " "))
    }
}

impl From<algder::Error> for Failure {
    fn from(e: algder::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        let code = match &e {
            SpecError::Core(inner) => inner.code(),
            _ => "spec",
        };
        Failure::Input { code, message: e.to_string() }
    }
}

struct Output {
    text: String,
    json: Value,
    /// Exit 1 with the result still printed: the answer is "unknown".
    inconclusive: bool,
}

impl Output {
    fn done(text: String, json: Value) -> Self {
        Output { text, json, inconclusive: false }
    }
}

/// Parses `args` (program name first) and executes the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.to_string();
            if !e.use_stderr() {
                return Outcome { code: 0, stdout: rendered, stderr: String::new() };
            }
            let first = rendered.lines().next().unwrap_or_default();
            let msg = first.strip_prefix("error: ").unwrap_or(first);
            let line = Failure::Usage(msg.to_string()).line();
            return Outcome { code: 2, stdout: String::new(), stderr: line + "\n" };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n"
            } else {
                out.text
            };
            Outcome { code: i32::from(out.inconclusive), stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: f.exit_code(), stdout: String::new(), stderr: f.line() + "\n" },
    }
}

fn caps(cli: &Cli) -> Caps {
    let d = Caps::default();
    Caps {
        max_krylov_dim: cli.cap_dim.unwrap_or(d.max_krylov_dim),
        max_degree: cli.cap_deg.unwrap_or(d.max_degree),
        max_iterations: cli.cap_iter.unwrap_or(d.max_iterations),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input { code: "io", message: format!("{}: {e}", path.display()) })
}

fn derivation(path: &Path) -> Result<Derivation, Failure> {
    Ok(load_derivation(&read(path)?)?)
}

fn poly_arg(text: &str, ring: &Ring) -> Result<Poly, Failure> {
    parse_poly(text, ring).map_err(|e| Failure::Input { code: "parse", message: e.to_string() })
}

fn target(t: &Target) -> Result<(Derivation, Poly), Failure> {
    let d = derivation(&t.spec)?;
    let p = poly_arg(&t.poly, d.ring())?;
    Ok((d, p))
}

fn ev(d: &Derivation, e: &Eigenvalue) -> String {
    e.format_with(d.weight_symbols())
}

fn decomposition_output(d: &Derivation, dec: &Decomposition) -> Output {
    let mut text = String::new();
    let mut parts = Vec::new();
    for part in &dec.parts {
        let lambda = ev(d, &part.lambda);
        let _ = writeln!(text, "lambda={lambda} height={}: {}", part.height, part.component);
        parts.push(json!({ "lambda": lambda, "height": part.height, "component": part.component.to_string() }));
    }
    Output::done(text, json!({ "parts": parts }))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let caps = caps(cli);
    match &cli.command {
        Command::Decompose(t) => {
            let (d, p) = target(t)?;
            Ok(decomposition_output(&d, &decompose_element(&d, &p, &caps)?))
        }
        Command::Algebraic(t) => {
            let (d, p) = target(t)?;
            Ok(match is_algebraic_element(&d, &p, &caps)? {
                Algebraicity::Finite { dim } => {
                    Output::done(format!("finite dim={dim}\n"), json!({ "status": "finite", "dim": dim }))
                }
                Algebraicity::UnknownUpToCaps { cap } => Output {
                    text: format!("unknown-up-to-caps cap={cap}\n"),
                    json: json!({ "status": "unknown-up-to-caps", "cap": cap.to_string() }),
                    inconclusive: true,
                },
            })
        }
        Command::Nilpotent { spec, poly } => {
            let d = derivation(spec)?;
            match poly {
                Some(text) => {
                    let p = poly_arg(text, d.ring())?;
                    Ok(nilpotence_output(&d, is_nilpotent_element(&d, &p, &caps)?))
                }
                None => Ok(match is_locally_nilpotent(&d, &caps) {
                    LocalNilpotence::Nilpotent => {
                        Output::done("locally-nilpotent\n".into(), json!({ "status": "locally-nilpotent" }))
                    }
                    LocalNilpotence::NotNilpotent { witness } => Output::done(
                        format!("not-locally-nilpotent witness={witness}\n"),
                        json!({ "status": "not-locally-nilpotent", "witness": witness }),
                    ),
                    LocalNilpotence::Undetermined { variable, cap } => Output {
                        text: format!("undetermined variable={variable} cap={cap}\n"),
                        json: json!({ "status": "undetermined", "variable": variable, "cap": cap.to_string() }),
                        inconclusive: true,
                    },
                }),
            }
        }
        Command::Height { target: t, mu } => {
            let (d, p) = target(t)?;
            let symbols = Ring::new(d.weight_symbols());
            let mu = spec::parse_weight(mu, &symbols)
                .map_err(|e| Failure::Input { code: "parse", message: e.to_string() })?;
            Ok(match mu_height(&d, &p, &mu, &caps)? {
                MuHeight::Height(h) => {
                    Output::done(format!("height={h}\n"), json!({ "status": "height", "height": h }))
                }
                MuHeight::NotInEigenspace => {
                    Output::done("not-in-eigenspace\n".into(), json!({ "status": "not-in-eigenspace" }))
                }
            })
        }
        Command::Phi { target: t, order } => {
            let (d, p) = target(t)?;
            let series = d.phi_truncated(&p, *order)?;
            let coefficients: Vec<String> = series.coefficients().iter().map(|c| c.to_string()).collect();
            let mut text = String::new();
            for (n, c) in coefficients.iter().enumerate() {
                let _ = writeln!(text, "t^{n}: {c}");
            }
            Ok(Output::done(text, json!({ "order": order, "coefficients": coefficients })))
        }
        Command::Spectrum { spec, sum_bound } => {
            let d = derivation(spec)?;
            let s = spectrum_and_monoid(&d, &caps, *sum_bound)?;
            let set = |xs: &BTreeSet<Eigenvalue>| xs.iter().map(|e| ev(&d, e)).collect::<Vec<_>>();
            let mut text = String::new();
            let mut gens = serde_json::Map::new();
            for (name, values) in &s.generators {
                let _ = writeln!(text, "{name}: {{{}}}", set(values).join(", "));
                gens.insert(name.clone(), json!(set(values)));
            }
            let _ = writeln!(text, "monoid (sums of up to {sum_bound}): {{{}}}", set(&s.monoid_sample).join(", "));
            Ok(Output::done(
                text,
                json!({ "generators": gens, "sum_bound": sum_bound, "monoid_sample": set(&s.monoid_sample) }),
            ))
        }
        Command::Invariants { group, max_deg, vars } => invariants(group, *max_deg, vars.as_deref()),
        Command::Check { suite, seed } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let report = run_suite(name, *seed).ok_or_else(|| {
                    Failure::Usage(format!("unknown suite `{name}` (expected all or one of: {})", SUITES.join(", ")))
                })?;
                reports.push(report);
            }
            Ok(suite_output(&reports))
        }
    }
}

fn nilpotence_output(d: &Derivation, verdict: NilpotenceVerdict) -> Output {
    match verdict {
        NilpotenceVerdict::Nilpotent(r) => {
            Output::done(format!("nilpotent order={r}\n"), json!({ "status": "nilpotent", "order": r }))
        }
        NilpotenceVerdict::NotNilpotent(SpectralWitness::Eigenvalue(e)) => Output::done(
            format!("not-nilpotent eigenvalue={}\n", ev(d, &e)),
            json!({ "status": "not-nilpotent", "eigenvalue": ev(d, &e) }),
        ),
        NilpotenceVerdict::NotNilpotent(SpectralWitness::Irrational(f)) => Output::done(
            format!("not-nilpotent irrational-factor={f}\n"),
            json!({ "status": "not-nilpotent", "irrational_factor": f.to_string() }),
        ),
        NilpotenceVerdict::Undetermined(cap) => Output {
            text: format!("undetermined cap={cap}\n"),
            json: json!({ "status": "undetermined", "cap": cap.to_string() }),
            inconclusive: true,
        },
    }
}

fn suite_output(reports: &[SuiteReport]) -> Output {
    let mut text = String::new();
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{verdict} {} seed={} cases={} skipped={} failures={}",
            r.suite,
            r.seed,
            r.cases,
            r.skipped.len(),
            r.failures.len()
        );
        for f in &r.failures {
            let _ = writeln!(text, "  input: {}\n  expected: {}\n  observed: {}", f.input, f.expected, f.observed);
        }
    }
    Output {
        text,
        json: serde_json::to_value(reports).expect("reports serialize"),
        inconclusive: reports.iter().any(|r| !r.passed()),
    }
}

fn invariants(group: &Path, max_deg: u32, vars: Option<&[String]>) -> Result<Output, Failure> {
    let spec = GroupSpec::from_toml(&read(group)?)?;
    let names: Vec<String> = match vars {
        Some(v) => v.to_vec(),
        None => (1..=spec.dimension).map(|i| format!("x{i}")).collect(),
    };
    if names.len() != spec.dimension {
        return Err(Failure::Usage(format!(
            "--vars names {} variables, group dimension is {}",
            names.len(),
            spec.dimension
        )));
    }
    if let Some(bad) = names.iter().find(|n| !parse::is_variable_name(n)) {
        return Err(Failure::Usage(format!("`{bad}` is not a valid variable name")));
    }
    let ring = Ring::new(&names);
    let g = spec.enumerate(DEFAULT_GROUP_CAP)?;

    let mut seen = BTreeSet::new();
    let mut text = format!("group order={}\n", g.order());
    let mut rows = Vec::new();
    let mut all_passed = true;
    for deg in 1..=max_deg {
        for m in monomials_of_degree(ring.len(), deg) {
            let f = reynolds(&g, &Poly::monomial(&ring, m, algder::rational::int(1)))?;
            let Some((_, lead)) = f.leading_term() else { continue };
            let f = f.scale(&lead.recip());
            if !seen.insert(f.to_string()) {
                continue;
            }
            let report = check_euler_descends(&g, &f)?;
            all_passed &= report.passed();
            let degree = report.homogeneous_degree.map_or("-".to_string(), |n| n.to_string());
            let _ = writeln!(
                text,
                "{} f = {f}; D(f) = {}; degree {degree}",
                if report.passed() { "ok" } else { "FAIL" },
                report.derivative
            );
            rows.push(json!({
                "invariant": f.to_string(),
                "derivative": report.derivative.to_string(),
                "derivative_invariant": report.derivative_invariant,
                "homogeneous_degree": report.homogeneous_degree,
                "degree_map_holds": report.degree_map_holds,
            }));
        }
    }
    let _ = writeln!(text, "invariants={} all-passed={all_passed}", rows.len());
    Ok(Output {
        text,
        json: json!({ "group_order": g.order(), "invariants": rows, "all_passed": all_passed }),
        inconclusive: !all_passed,
    })
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(budget);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=budget).rev() {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(&mut Vec::new(), nvars, deg, &mut out);
    }
    out
}
