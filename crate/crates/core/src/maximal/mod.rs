//! Pointwise evaluation of every maximal-operator variant at a rational
//! point, as the exact maximum of the sliding-average objective over the
//! operator's admissible parameter region.
//!
//! Intervals are written `[a, b] = [y - t, y + t]` and the admissible set is
//! viewed in the `(a, b)` plane, where every constraint of every variant is
//! a straight line:
//!
//! - nontangential cone `|x - y| <= alpha t`:
//!   `(1+alpha) a + (1-alpha) b <= 2x <= (1-alpha) a + (1+alpha) b`
//! - constant/variable truncation `t <= R`: `b - a <= 2R`
//! - the diamond `|z - x| + |t - R| <= R` of the square identity:
//!   the plain square `x - 2R <= a <= x`, `x <= b <= x + 2R`
//! - one-sided families: `a = x` (or `b = x`) with `0 < b - a <= 2A`
//!
//! The average `(F(b) - F(a)) / (b - a)` is a ratio of affine functions on
//! each cell of the arrangement cut by the grid lines `a = x_i`, `b = x_j`
//! (the breakpoints of `f`), hence quasilinear, hence maximized at a cell
//! vertex. The exact supremum is therefore the maximum over
//!
//! 1. arrangement vertices (grid x grid, grid x region boundary, boundary
//!    corners), filtered to admissible points with `a < b`;
//! 2. the `t -> 0` normalization floor (the value the averages approach at
//!    the apex `(x, x)`);
//! 3. for the unbounded cone, the `t -> infinity` asymptotic value.
//!
//! This holds uniformly in `alpha >= 0`: for `alpha = 0` the region
//! degenerates to the line `a + b = 2x` and the same enumeration yields
//! exactly the 1-D candidates cut from it by the grid.

mod batch;
mod engine;
mod region;

pub use batch::{BatchEvaluator, BatchOp};
pub use engine::{asymptotic_sup, candidate_vertices, eval_max_average};
pub use region::{Region, RegionKind};

use thiserror::Error;

use crate::functions::{FunctionError, PiecewiseLinearFunction, StepFunction};
use crate::numerics::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("cone angle must be nonnegative")]
    NegativeAlpha,
    #[error("mixed-operator angle must lie in [0, 1]")]
    AlphaOutOfRange,
    #[error("truncation radius must be positive")]
    NonpositiveRadius,
    #[error("truncation radius must be nonnegative")]
    NegativeRadius,
    #[error("one-sided reach must be positive")]
    NonpositiveReach,
    #[error(transparent)]
    Function(#[from] FunctionError),
}

/// Which branch of the supremum won.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An admissible interval `[a, b]` whose average equals the value.
    Interval(Rational, Rational),
    /// The `t -> 0` normalization floor; the supremum need not be attained.
    NormalizationFloor,
    /// The `t -> infinity` asymptotic value of an unbounded region.
    AsymptoticTail,
}

/// Value of a maximal operator at a point together with the witnessing
/// branch. Interval witnesses always reproduce the value exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub value: Rational,
    pub witness: Witness,
}

/// Side selector for the one-sided operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Nontangential maximal function at `x`: averages of `|f|` over intervals
/// `[y - t, y + t]` with `|x - y| <= alpha t`. `alpha = 0` is the centered
/// operator, `alpha = 1` the uncentered one.
pub fn eval_nontangential(
    f: &StepFunction,
    alpha: &Rational,
    x: &Rational,
) -> Result<EvalResult, EvalError> {
    let ev = BatchEvaluator::new(f, BatchOp::Cone { alpha: alpha.clone() })?;
    ev.result(x)
}

/// Uncentered maximal function truncated at constant radius `R`.
pub fn eval_uncentered_truncated(
    f: &StepFunction,
    radius: &Rational,
    x: &Rational,
) -> Result<EvalResult, EvalError> {
    let ev = BatchEvaluator::new(
        f,
        BatchOp::TruncatedCone {
            alpha: Rational::one(),
            radius: radius.clone(),
        },
    )?;
    ev.result(x)
}

/// Supremum of averages over the diamond `|z - x| + |t - R| <= R`; equals the
/// constant-truncation operator by the square identity.
pub fn eval_diamond(
    f: &StepFunction,
    radius: &Rational,
    x: &Rational,
) -> Result<EvalResult, EvalError> {
    if !radius.is_positive() {
        return Err(EvalError::NonpositiveRadius);
    }
    Ok(engine::diamond_result(&f.absolute_value(), radius, x))
}

/// One-sided maximal functions: averages over `[x, x + t]` (right) or
/// `[x - t, x]` (left) for `0 < t <= 2A`.
pub fn eval_one_sided(
    f: &StepFunction,
    reach: &Rational,
    x: &Rational,
    side: Side,
) -> Result<EvalResult, EvalError> {
    if !reach.is_positive() {
        return Err(EvalError::NonpositiveReach);
    }
    Ok(engine::one_sided_result(&f.absolute_value(), reach, x, side))
}

/// Uncentered maximal function truncated by the pointwise radius `N(x)`
/// (frozen at the evaluation point). For `N(x) = 0` only the `t -> 0` floor
/// remains.
pub fn eval_lipschitz_truncated(
    f: &StepFunction,
    n: &PiecewiseLinearFunction,
    x: &Rational,
) -> Result<EvalResult, EvalError> {
    let ev = BatchEvaluator::new(
        f,
        BatchOp::LipschitzCone {
            alpha: Rational::one(),
            radius: n.clone(),
        },
    )?;
    ev.result(x)
}

/// Mixed nontangential operator with variable truncation: `|x - y| <= alpha t`
/// and `t <= N(x)`. Coincides with the Lipschitz-truncated operator at
/// `alpha = 1` and with centered truncation at `alpha = 0`.
pub fn eval_mixed(
    f: &StepFunction,
    alpha: &Rational,
    n: &PiecewiseLinearFunction,
    x: &Rational,
) -> Result<EvalResult, EvalError> {
    if alpha.is_negative() || *alpha > Rational::one() {
        return Err(EvalError::AlphaOutOfRange);
    }
    let ev = BatchEvaluator::new(
        f,
        BatchOp::LipschitzCone {
            alpha: alpha.clone(),
            radius: n.clone(),
        },
    )?;
    ev.result(x)
}
