//! JSON wire format for step functions and truncation radii.
//!
//! A step function file is an object with `breakpoints` (array of rational
//! strings), `values` (array of length `breakpoints - 1`), and an optional
//! `tails` object `{left, right}` defaulting to zero. A piecewise-linear
//! radius file carries `breakpoints` and `values` of equal length; the
//! extension beyond the node range is implicitly constant. Rational strings
//! are `p/q`, integers, or finite decimals, all parsed exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::functions::{FunctionError, PiecewiseLinearFunction, StepFunction};
use crate::numerics::{rational_parse, NumericsError, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`[{index}]: {source}")]
    Field {
        field: &'static str,
        index: usize,
        source: NumericsError,
    },
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error("truncation radius must be nonnegative")]
    NegativeRadius,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawTails {
    #[serde(default = "zero_literal")]
    left: String,
    #[serde(default = "zero_literal")]
    right: String,
}

fn zero_literal() -> String {
    "0".to_string()
}

impl Default for RawTails {
    fn default() -> Self {
        RawTails {
            left: zero_literal(),
            right: zero_literal(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawStepFunction {
    breakpoints: Vec<String>,
    values: Vec<String>,
    #[serde(default)]
    tails: RawTails,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawPiecewiseLinear {
    breakpoints: Vec<String>,
    values: Vec<String>,
}

fn parse_list(
    field: &'static str,
    items: &[String],
) -> Result<Vec<Rational>, IoError> {
    items
        .iter()
        .enumerate()
        .map(|(index, s)| {
            rational_parse(s).map_err(|source| IoError::Field {
                field,
                index,
                source,
            })
        })
        .collect()
}

pub fn parse_step_function(text: &str) -> Result<StepFunction, IoError> {
    let raw: RawStepFunction = serde_json::from_str(text)?;
    let breakpoints = parse_list("breakpoints", &raw.breakpoints)?;
    let values = parse_list("values", &raw.values)?;
    let left = rational_parse(&raw.tails.left).map_err(|source| IoError::Field {
        field: "tails.left",
        index: 0,
        source,
    })?;
    let right = rational_parse(&raw.tails.right).map_err(|source| IoError::Field {
        field: "tails.right",
        index: 0,
        source,
    })?;
    Ok(StepFunction::new(breakpoints, values, left, right)?)
}

pub fn step_function_to_json(f: &StepFunction) -> String {
    let raw = RawStepFunction {
        breakpoints: f.breakpoints().iter().map(|b| b.to_string()).collect(),
        values: f.values().iter().map(|v| v.to_string()).collect(),
        tails: RawTails {
            left: f.left_tail().to_string(),
            right: f.right_tail().to_string(),
        },
    };
    serde_json::to_string_pretty(&raw).expect("struct serialization cannot fail")
}

pub fn parse_piecewise_linear(text: &str) -> Result<PiecewiseLinearFunction, IoError> {
    let raw: RawPiecewiseLinear = serde_json::from_str(text)?;
    let xs = parse_list("breakpoints", &raw.breakpoints)?;
    let ys = parse_list("values", &raw.values)?;
    Ok(PiecewiseLinearFunction::new(xs, ys)?)
}

/// Parses a piecewise-linear file destined to act as a truncation radius,
/// which must be nonnegative.
pub fn parse_radius(text: &str) -> Result<PiecewiseLinearFunction, IoError> {
    let n = parse_piecewise_linear(text)?;
    if !n.is_nonnegative() {
        return Err(IoError::NegativeRadius);
    }
    Ok(n)
}

pub fn piecewise_linear_to_json(n: &PiecewiseLinearFunction) -> String {
    let (xs, ys) = n.nodes();
    let raw = RawPiecewiseLinear {
        breakpoints: xs.iter().map(|b| b.to_string()).collect(),
        values: ys.iter().map(|v| v.to_string()).collect(),
    };
    serde_json::to_string_pretty(&raw).expect("struct serialization cannot fail")
}
