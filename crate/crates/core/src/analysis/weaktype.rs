//! Weak-type ratio measurements and the two exact structural identities
//! (boundary projection, square region) as checkable predicates.

use crate::functions::StepFunction;
use crate::maximal::{
    eval_diamond, eval_one_sided, eval_uncentered_truncated, Side,
};
use crate::numerics::{ExtendedRational, Rational};

use super::{shrink_to_boundary, AnalysisError, Operator};

/// Measure of `{x : M^alpha f(x) > lambda}` estimated by a sign scan over the
/// window followed by bisection of every boundary to width `tol`. A lower
/// bound up to the location tolerance. The default window reaches far enough
/// that the superlevel set cannot escape it.
pub fn maximal_superlevel_measure(
    f: &StepFunction,
    alpha: &Rational,
    lambda: &Rational,
    window: Option<(&Rational, &Rational)>,
    scan_points: usize,
    tol: &Rational,
) -> Result<Rational, AnalysisError> {
    if !lambda.is_positive() {
        return Err(AnalysisError::NonpositiveLambda);
    }
    let mass = match f.l1_norm() {
        ExtendedRational::Finite(m) => m,
        _ => return Err(AnalysisError::BadL1),
    };
    let op = Operator::Nontangential {
        alpha: alpha.clone(),
    };
    let ev = op.evaluator(f)?;
    let g = f.absolute_value();
    let (w_lo, w_hi) = match window {
        Some((lo, hi)) => {
            if lo >= hi {
                return Err(AnalysisError::DegenerateWindow);
            }
            (lo.clone(), hi.clone())
        }
        None => {
            // any admissible window with average > lambda both meets the
            // support and has length below mass/lambda, and its points sit
            // within (1+alpha)/2 window lengths of it
            let one = Rational::one();
            let reach = (&one + alpha) * &mass / lambda + &one;
            (g.support_min() - &reach, g.support_max() + &reach)
        }
    };
    let above = |x: &Rational| ev.value(x).expect("validated") > *lambda;

    let mut xs: Vec<Rational> = vec![w_lo.clone()];
    for bp in g.breakpoints() {
        if bp > &w_lo && bp < &w_hi {
            xs.push(bp.clone());
        }
    }
    let steps = scan_points.max(2);
    let step = (&w_hi - &w_lo) / Rational::from_int(steps as i64);
    for i in 1..steps {
        xs.push(&w_lo + &(&step * &Rational::from_int(i as i64)));
    }
    xs.push(w_hi.clone());
    xs.sort();
    xs.dedup();
    let status: Vec<bool> = xs.iter().map(|x| above(x)).collect();

    let mut measure = Rational::zero();
    let mut i = 0;
    while i < xs.len() {
        if !status[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < xs.len() && status[j + 1] {
            j += 1;
        }
        let lo = if i == 0 {
            xs[0].clone()
        } else {
            let (holds, fails) = shrink_to_boundary(
                &above,
                xs[i].clone(),
                xs[i - 1].clone(),
                g.breakpoints(),
                tol,
            );
            holds.midpoint(&fails)
        };
        let hi = if j == xs.len() - 1 {
            xs[j].clone()
        } else {
            let (holds, fails) = shrink_to_boundary(
                &above,
                xs[j].clone(),
                xs[j + 1].clone(),
                g.breakpoints(),
                tol,
            );
            holds.midpoint(&fails)
        };
        measure += &hi - &lo;
        i = j + 1;
    }
    Ok(measure)
}

/// `lambda * |{M^alpha f > lambda}| / ||f||_1`: a lower bound for the
/// weak-type constant of the operator, up to the location tolerance.
pub fn weak_type_ratio(
    f: &StepFunction,
    alpha: &Rational,
    lambda: &Rational,
    window: Option<(&Rational, &Rational)>,
    scan_points: usize,
    tol: &Rational,
) -> Result<Rational, AnalysisError> {
    let mass = match f.l1_norm() {
        ExtendedRational::Finite(m) if m.is_positive() => m,
        _ => return Err(AnalysisError::BadL1),
    };
    let measure = maximal_superlevel_measure(f, alpha, lambda, window, scan_points, tol)?;
    Ok(lambda * &measure / mass)
}

/// Exact check of the boundary projection inequality: the average over
/// `[y - t, y + t]` never exceeds the larger of the averages over the two
/// pieces cut at `x`, for `0 < |x - y| <= t`. On the boundary `|x - y| = t`
/// one projection degenerates to zero radius and carries zero weight.
pub fn verify_bpl(
    f: &StepFunction,
    x: &Rational,
    y: &Rational,
    t: &Rational,
) -> Result<bool, AnalysisError> {
    let gap = (x - y).abs();
    if !gap.is_positive() || gap > *t {
        return Err(AnalysisError::BadProjectionPoint);
    }
    let g = f.absolute_value();
    let u = g.average(&(y - t), &(y + t))?;
    let mut rhs: Option<Rational> = None;
    let two = Rational::from_int(2);
    for (center, radius) in [
        ((x + y - t) / &two, (x - y + t) / &two),
        ((x + y + t) / &two, (y - x + t) / &two),
    ] {
        if radius.is_positive() {
            let v = g.average(&(&center - &radius), &(&center + &radius))?;
            rhs = Some(match rhs {
                None => v,
                Some(w) => w.max(v),
            });
        }
    }
    Ok(u <= rhs.expect("at least one projection has positive radius"))
}

/// Exact check of the square identity: constant-truncation value, diamond
/// value, and the larger one-sided value (with matching reach) all agree.
pub fn verify_square_lemma(
    f: &StepFunction,
    radius: &Rational,
    x: &Rational,
) -> Result<bool, AnalysisError> {
    let trunc = eval_uncentered_truncated(f, radius, x)?.value;
    let diamond = eval_diamond(f, radius, x)?.value;
    let left = eval_one_sided(f, radius, x, Side::Left)?.value;
    let right = eval_one_sided(f, radius, x, Side::Right)?.value;
    Ok(trunc == diamond && trunc == left.max(right))
}
