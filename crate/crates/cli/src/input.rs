//! Command-line operands: operator expressions, and matrices as
//! `{"size": n, "rows": [[...], ...]}` with operator strings as entries.

use ore_core::modules::{CyclicModule, NaturalModule};
use ore_core::parse::{parse_operator, parse_ratfunc};
use ore_core::{Error, Operator, OperatorMatrix, Rational, RationalFunction, Result};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    size: usize,
    rows: Vec<Vec<String>>,
}

/// Operands of one command, all of the same kind.
pub enum Operands {
    Scalar(Vec<Operator>),
    Matrix(Vec<OperatorMatrix>),
}

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

pub fn operator(text: &str) -> Result<Operator> {
    parse_operator(text)
}

pub fn ratfunc(text: &str) -> Result<RationalFunction> {
    parse_ratfunc(text)
}

/// A nonzero constant, such as `-1` or `3/2`.
pub fn constant(text: &str) -> Result<Rational> {
    let f = ratfunc(text)?;
    f.as_constant()
        .ok_or_else(|| parse_error(0, "expected a rational constant"))
}

pub fn matrix(text: &str) -> Result<OperatorMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| parse_error(e.column().saturating_sub(1), e.to_string()))?;
    if raw.size == 0 {
        return Err(parse_error(0, "matrix size must be positive"));
    }
    if raw.rows.len() != raw.size || raw.rows.iter().any(|r| r.len() != raw.size) {
        return Err(parse_error(0, format!("rows do not form a {0}x{0} grid", raw.size)));
    }
    let rows = raw
        .rows
        .iter()
        .map(|r| r.iter().map(|e| operator(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    OperatorMatrix::new(rows)
}

fn is_matrix(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn operands(texts: &[&str]) -> Result<Operands> {
    let mut scalars = Vec::new();
    let mut matrices = Vec::new();
    for t in texts {
        if is_matrix(t) {
            matrices.push(matrix(t)?);
        } else {
            scalars.push(operator(t)?);
        }
    }
    match (scalars.is_empty(), matrices.is_empty()) {
        (_, true) => Ok(Operands::Scalar(scalars)),
        (true, false) => Ok(Operands::Matrix(matrices)),
        (false, false) => Err(Error::KindMismatch("operators and matrices cannot be mixed".into())),
    }
}

/// The module a witness command works in.
pub enum Module {
    Natural(NaturalModule),
    Cyclic(CyclicModule<Rational>),
}

pub fn module(modulus: Option<&str>, dim: usize) -> Result<Module> {
    match modulus {
        None => Ok(Module::Natural(NaturalModule::new(dim)?)),
        Some(_) if dim != 1 => Err(Error::KindMismatch("cyclic modules take operators, not matrices".into())),
        Some(c) => Ok(Module::Cyclic(CyclicModule::new(operator(c)?)?)),
    }
}

/// An element of `K^dim`: a rational function when `dim = 1`, otherwise a
/// JSON array of them.
pub fn column(text: &str, dim: usize) -> Result<Vec<RationalFunction>> {
    if !text.trim_start().starts_with('[') {
        return if dim == 1 {
            Ok(vec![ratfunc(text)?])
        } else {
            Err(parse_error(0, format!("expected a JSON array of {dim} rational functions")))
        };
    }
    let raw: Vec<String> = serde_json::from_str(text).map_err(|e| parse_error(e.column().saturating_sub(1), e.to_string()))?;
    if raw.len() != dim {
        return Err(Error::SizeMismatch { left: raw.len(), right: dim });
    }
    raw.iter().map(|e| ratfunc(e)).collect()
}

/// A class in `R/Rc`, given by any representative.
pub fn residue(text: &str, module: &CyclicModule<Rational>) -> Result<Operator> {
    Ok(module.reduce(&operator(text)?))
}
