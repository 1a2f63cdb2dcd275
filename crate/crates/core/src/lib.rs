//! Exact evaluation of Hardy-Littlewood-type maximal operators on
//! piecewise-constant functions of bounded variation.
//!
//! Everything is computed in arbitrary-precision rational arithmetic: a
//! maximal-function value at a rational point is the exact supremum of the
//! sliding-average objective over the operator's admissible region, obtained
//! by enumerating the vertices of the arrangement that the function's
//! breakpoint grid cuts out of that region, plus the zero-radius
//! normalization floor and the large-radius asymptotic value.
//!
//! Modules:
//! - [`numerics`]: rational scalars plus bounded-depth bisection / ternary search
//! - [`functions`]: step functions and piecewise-linear truncation radii
//! - [`maximal`]: the pointwise evaluators for every operator variant
//! - [`analysis`]: detachment sets, variation bounds, counterexample
//!   constructions, weak-type ratios, seeded corpora
//! - [`io`]: the JSON wire format for functions
//! - [`verify`]: the seeded verification suites used by the CLI and the
//!   acceptance tests

pub mod analysis;
pub mod functions;
pub mod io;
pub mod maximal;
pub mod numerics;
pub mod verify;

pub use analysis::{
    balpha_ratio, classify_shape, default_window, detachment_set, divergence_certificate,
    make_divergence_n, make_spike_pair, maximal_superlevel_measure, maximal_variation,
    random_lipschitz_n, random_step_function, variation_lower_bound, verify_bpl,
    verify_square_lemma, weak_type_ratio, AnalysisConfig, AnalysisError, CertificateRow,
    DetachmentComponent, Operator, Shape, VariationReport,
};
pub use functions::{FunctionError, Normalization, PiecewiseLinearFunction, StepFunction};
pub use maximal::{
    asymptotic_sup, candidate_vertices, eval_diamond, eval_lipschitz_truncated,
    eval_max_average, eval_mixed, eval_nontangential, eval_one_sided,
    eval_uncentered_truncated, BatchEvaluator, BatchOp, EvalError, EvalResult, Region,
    RegionKind, Side, Witness,
};
pub use numerics::{
    bisect_sign_change, minimize_unimodal, rational_parse, ExtendedRational, NumericsError,
    Rational,
};
