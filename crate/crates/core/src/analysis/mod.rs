//! Analysis built on top of pointwise evaluation: detachment sets and their
//! shape classification, variation of maximal functions (structural and
//! partition lower bounds), counterexample constructions, weak-type ratios,
//! and seeded random corpora.
//!
//! Throughout this module the comparison function for detachment is `|f|`:
//! the operators average `|f|`, so `M f = M |f|`, and the structural theory
//! (open detachment set, monotone/V-shaped components, endpoint attachment)
//! is stated for nonnegative functions. A point is *detached* when the
//! maximal value strictly exceeds `limsup |f|`; under the adjusted
//! normalization (which declares the function value equal to the maximal
//! value wherever `limsup |f| >= M f >= N_alpha |f|`) this is exactly the
//! condition `M f > f`.

mod corpus;
mod counterexamples;
mod detachment;
mod variation;
mod weaktype;

pub use corpus::{random_lipschitz_n, random_step_function};
pub use counterexamples::{
    divergence_certificate, make_divergence_n, make_spike_pair, CertificateRow,
};
pub use detachment::{classify_shape, detachment_set, DetachmentComponent, Shape};
pub use variation::{
    balpha_ratio, maximal_variation, variation_lower_bound, VariationReport,
};
pub use weaktype::{maximal_superlevel_measure, verify_bpl, verify_square_lemma, weak_type_ratio};

#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::functions::{FunctionError, PiecewiseLinearFunction, StepFunction};
use crate::maximal::{asymptotic_sup, BatchEvaluator, BatchOp, EvalError, Side};
use crate::numerics::{NumericsError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("window is degenerate")]
    DegenerateWindow,
    #[error("window must pad the support by at least its diameter")]
    WindowTooSmall,
    #[error("tolerance must be positive")]
    NonpositiveTolerance,
    #[error("partition must be strictly increasing with at least two points")]
    BadPartition,
    #[error("spike construction needs n >= 2")]
    SpikeTooSmall,
    #[error("divergence construction needs slope > 1/2")]
    SlopeTooSmall,
    #[error("threshold must be positive")]
    NonpositiveLambda,
    #[error("function must have finite, positive L1 norm")]
    BadL1,
    #[error("function must be nonconstant")]
    ConstantFunction,
    #[error("projection point needs 0 < |x - y| <= t")]
    BadProjectionPoint,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Operator families the analysis layer can study.
#[derive(Debug, Clone)]
pub enum Operator {
    /// `M^alpha`, the nontangential family.
    Nontangential { alpha: Rational },
    /// Uncentered operator with constant truncation radius.
    UncenteredTruncated { radius: Rational },
    /// Uncentered operator truncated by the pointwise radius `N(x)`.
    LipschitzTruncated { radius: PiecewiseLinearFunction },
    /// Nontangential operator with pointwise truncation, `alpha` in `[0, 1]`.
    Mixed {
        alpha: Rational,
        radius: PiecewiseLinearFunction,
    },
}

impl Operator {
    pub fn evaluator(&self, f: &StepFunction) -> Result<BatchEvaluator, AnalysisError> {
        let op = match self {
            Operator::Nontangential { alpha } => BatchOp::Cone {
                alpha: alpha.clone(),
            },
            Operator::UncenteredTruncated { radius } => BatchOp::TruncatedCone {
                alpha: Rational::one(),
                radius: radius.clone(),
            },
            Operator::LipschitzTruncated { radius } => {
                if !radius.is_nonnegative() {
                    return Err(AnalysisError::Eval(EvalError::NegativeRadius));
                }
                BatchOp::LipschitzCone {
                    alpha: Rational::one(),
                    radius: radius.clone(),
                }
            }
            Operator::Mixed { alpha, radius } => {
                if alpha.is_negative() || *alpha > Rational::one() {
                    return Err(AnalysisError::Eval(EvalError::AlphaOutOfRange));
                }
                if !radius.is_nonnegative() {
                    return Err(AnalysisError::Eval(EvalError::NegativeRadius));
                }
                BatchOp::LipschitzCone {
                    alpha: alpha.clone(),
                    radius: radius.clone(),
                }
            }
        };
        Ok(BatchEvaluator::new(f, op)?)
    }

    /// Limit of the maximal function far out on one side: the larger of the
    /// tail value and (for the unbounded cone) the asymptotic average.
    pub(crate) fn far_value(&self, f_abs: &StepFunction, side: Side) -> Rational {
        let tail = match side {
            Side::Left => f_abs.left_tail().abs(),
            Side::Right => f_abs.right_tail().abs(),
        };
        match self {
            Operator::Nontangential { alpha } => asymptotic_sup(f_abs, alpha).max(tail),
            _ => tail,
        }
    }
}

/// Tunables for the detachment / variation machinery. Endpoint locations are
/// irrational in general, so components are bracketed to `tol`; probe count
/// controls shape classification resolution.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub tol: Rational,
    pub scan_density: usize,
    pub probes: usize,
    pub partition_cap: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tol: Rational::pow2(-40),
            scan_density: 8,
            probes: 257,
            partition_cap: 4096,
        }
    }
}

/// Default scan window: the support inflated by one diameter plus one. All
/// finite-radius optima for zero-tail inputs live within a diameter of the
/// support at the scales that matter; the far field is handled analytically.
pub fn default_window(f: &StepFunction) -> (Rational, Rational) {
    let d = f.diameter();
    (
        f.support_min() - &d - Rational::one(),
        f.support_max() + &d + Rational::one(),
    )
}

/// Boundary refinement between a point where `pred` holds and one where it
/// does not (in either spatial order). Snap points lying strictly between
/// are probed first, so boundaries that sit exactly on a breakpoint are
/// found exactly. Returns the final `(holds, fails)` bracket ends.
pub(crate) fn shrink_to_boundary<P>(
    pred: P,
    mut holds: Rational,
    mut fails: Rational,
    snaps: &[Rational],
    tol: &Rational,
) -> (Rational, Rational)
where
    P: Fn(&Rational) -> bool,
{
    let between = |p: &Rational, a: &Rational, b: &Rational| {
        (p > a && p < b) || (p > b && p < a)
    };
    for s in snaps {
        if between(s, &holds, &fails) {
            if pred(s) {
                holds = s.clone();
            } else {
                fails = s.clone();
            }
        }
    }
    let mut guard = 0;
    while (&holds - &fails).abs() > *tol && guard < 4096 {
        let mid = holds.midpoint(&fails);
        if pred(&mid) {
            holds = mid;
        } else {
            fails = mid;
        }
        guard += 1;
    }
    (holds, fails)
}
