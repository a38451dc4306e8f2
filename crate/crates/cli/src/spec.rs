//! TOML spec files for derivations and matrix groups.
//!
//! Every coefficient is a string (`"3/2"`, `"-1"`), so no value ever passes
//! through a float.
//!
//! ```toml
//! vars = ["x", "y"]
//! mode = "general"
//! [images]
//! x = "x"
//! y = "1"
//! ```
//!
//! ```toml
//! vars = ["x", "y"]
//! mode = "diagonal"
//! weight_symbols = ["a", "b"]
//! [weights]
//! x = "a"
//! y = "2*b - 1/2"
//! ```

use std::collections::BTreeMap;
use std::fmt;

use algder::invariants::{enumerate_group, MatrixGroup};
use algder::rational::parse_rational;
use algder::{Derivation, Eigenvalue, Monomial, Poly, QMatrix, Rational, Ring};
use serde::Deserialize;

use crate::parse::{is_variable_name, parse_poly, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub vars: Vec<String>,
    pub mode: Mode,
    #[serde(default)]
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub weights: BTreeMap<String, String>,
    #[serde(default)]
    pub weight_symbols: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    Syntax(String),
    Invalid(String),
    Expression { field: String, error: ParseError },
    Core(algder::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Syntax(msg) | SpecError::Invalid(msg) => f.write_str(msg),
            SpecError::Expression { field, error } => write!(f, "{field}: {error}"),
            SpecError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<algder::Error> for SpecError {
    fn from(e: algder::Error) -> Self {
        SpecError::Core(e)
    }
}

fn one_line(e: &toml::de::Error) -> String {
    e.to_string().lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

fn check_names(kind: &str, names: &[String]) -> Result<(), SpecError> {
    for (i, name) in names.iter().enumerate() {
        if !is_variable_name(name) {
            return Err(SpecError::Invalid(format!("{kind} `{name}` is not a valid name")));
        }
        if names[..i].contains(name) {
            return Err(SpecError::Invalid(format!("{kind} `{name}` declared twice")));
        }
    }
    Ok(())
}

/// Reads `c + sum a_i s_i` over the weight symbols.
pub fn parse_weight(text: &str, symbols: &Ring) -> Result<Eigenvalue, ParseError> {
    parse_poly(text, symbols).and_then(|p| {
        affine_weight(&p).ok_or(ParseError {
            column: 1,
            kind: crate::parse::ParseErrorKind::UnexpectedToken {
                found: text.trim().to_string(),
                expected: "a rational linear combination of weight symbols",
            },
        })
    })
}

fn affine_weight(p: &Poly) -> Option<Eigenvalue> {
    if p.total_degree().unwrap_or(0) > 1 {
        return None;
    }
    let n = p.ring().len();
    let weights: Vec<Rational> = (0..n).map(|i| p.coeff(&Monomial::var(n, i))).collect();
    Some(Eigenvalue::new(p.coeff(&Monomial::one(n)), weights))
}

impl DerivationSpec {
    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| SpecError::Syntax(one_line(&e)))
    }

    pub fn ring(&self) -> Result<Ring, SpecError> {
        check_names("variable", &self.vars)?;
        Ok(Ring::new(&self.vars))
    }

    pub fn symbol_ring(&self) -> Result<Ring, SpecError> {
        check_names("weight symbol", &self.weight_symbols)?;
        Ok(Ring::new(&self.weight_symbols))
    }

    pub fn build(&self) -> Result<Derivation, SpecError> {
        let ring = self.ring()?;
        let (used, unused) = match self.mode {
            Mode::General => (&self.images, ("weights", &self.weights)),
            Mode::Diagonal => (&self.weights, ("images", &self.images)),
        };
        if !unused.1.is_empty() {
            return Err(SpecError::Invalid(format!("`{}` is not allowed in this mode", unused.0)));
        }
        if let Some(extra) = used.keys().find(|v| ring.index_of(v).is_none()) {
            return Err(algder::Error::UnknownVariable(extra.clone()).into());
        }
        let field = |kind: &str, v: &str| format!("{kind}.{v}");
        match self.mode {
            Mode::General => {
                if !self.weight_symbols.is_empty() {
                    return Err(SpecError::Invalid("`weight_symbols` is not allowed in this mode".into()));
                }
                let mut images = BTreeMap::new();
                for (v, text) in used {
                    let p = parse_poly(text, &ring)
                        .map_err(|error| SpecError::Expression { field: field("images", v), error })?;
                    images.insert(v.clone(), p);
                }
                Ok(Derivation::from_images(&ring, &images)?)
            }
            Mode::Diagonal => {
                let symbols = self.symbol_ring()?;
                let weights = ring
                    .vars()
                    .iter()
                    .map(|v| {
                        let text = used.get(v).ok_or_else(|| algder::Error::MissingImage(v.clone()))?;
                        parse_weight(text, &symbols)
                            .map_err(|error| SpecError::Expression { field: field("weights", v), error })
                    })
                    .collect::<Result<Vec<_>, SpecError>>()?;
                Ok(Derivation::diagonal(&ring, weights, self.weight_symbols.clone())?)
            }
        }
    }
}

pub fn load_derivation(text: &str) -> Result<Derivation, SpecError> {
    DerivationSpec::from_toml(text)?.build()
}

impl GroupSpec {
    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        toml::from_str(text).map_err(|e| SpecError::Syntax(one_line(&e)))
    }

    pub fn matrices(&self) -> Result<Vec<QMatrix>, SpecError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(g, rows)| {
                if rows.len() != self.dimension || rows.iter().any(|r| r.len() != self.dimension) {
                    return Err(SpecError::Invalid(format!("generator {g} is not {0}x{0}", self.dimension)));
                }
                let entries = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                parse_rational(s).ok_or_else(|| {
                                    SpecError::Invalid(format!("generator {g}: `{s}` is not an exact rational"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(QMatrix::from_rows(entries))
            })
            .collect()
    }

    pub fn enumerate(&self, cap: usize) -> Result<MatrixGroup, SpecError> {
        Ok(enumerate_group(self.dimension, &self.matrices()?, cap)?)
    }
}
