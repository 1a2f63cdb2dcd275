//! Region-generic entry points: vertex enumeration, the large-radius
//! asymptotic value, and the evaluators for the bounded rectangular and
//! one-sided regions.

use crate::functions::{Normalization, StepFunction};
use crate::numerics::Rational;

use super::batch::{BatchEvaluator, BatchOp};
use super::region::{Region, RegionKind};
use super::{EvalResult, Side, Witness};

/// Supremum of the averages of `|f|` as `t -> infinity` inside the cone.
///
/// With `c- = |leftTail|` and `c+ = |rightTail|`, the limit values are
/// `lambda c- + (1 - lambda) c+` for `lambda` in
/// `[max(0, (1-alpha)/2), min(1, (1+alpha)/2)]`; the maximum sits at an
/// endpoint of that range.
pub fn asymptotic_sup(f: &StepFunction, alpha: &Rational) -> Rational {
    let c_minus = f.left_tail().abs();
    let c_plus = f.right_tail().abs();
    let one = Rational::one();
    let two = Rational::from_int(2);
    let lam_lo = ((&one - alpha) / &two).max(Rational::zero());
    let lam_hi = ((&one + alpha) / &two).min(one.clone());
    let at = |lam: &Rational| lam * &c_minus + (&one - lam) * &c_plus;
    at(&lam_lo).max(at(&lam_hi))
}

fn update_best(
    best: &mut Option<(Rational, Rational, Rational)>,
    v: Rational,
    a: Rational,
    b: Rational,
) {
    match best {
        None => *best = Some((v, a, b)),
        Some((bv, ba, bb)) => {
            if v > *bv || (v == *bv && (&a, &b) < (&*ba, &*bb)) {
                *bv = v;
                *ba = a;
                *bb = b;
            }
        }
    }
}

fn finish(
    best: Option<(Rational, Rational, Rational)>,
    floor: Rational,
) -> EvalResult {
    match best {
        Some((v, a, b)) if v >= floor => EvalResult {
            value: v,
            witness: Witness::Interval(a, b),
        },
        _ => EvalResult {
            value: floor,
            witness: Witness::NormalizationFloor,
        },
    }
}

/// Diamond region: the square `a in [x - 2R, x]`, `b in [x, x + 2R]` in
/// endpoint coordinates. All boundary lines are axis-parallel, so the
/// arrangement vertices are simply the cross product of the `a`-lines and
/// `b`-lines.
pub(super) fn diamond_result(f: &StepFunction, radius: &Rational, x: &Rational) -> EvalResult {
    let two_r = Rational::from_int(2) * radius;
    let a_lo = x - &two_r;
    let b_hi = x + &two_r;
    let mut a_lines = vec![a_lo.clone(), x.clone()];
    let mut b_lines = vec![x.clone(), b_hi.clone()];
    for bp in f.breakpoints() {
        if *bp >= a_lo && bp <= x {
            a_lines.push(bp.clone());
        }
        if bp >= x && *bp <= b_hi {
            b_lines.push(bp.clone());
        }
    }
    let mut best = None;
    for a in &a_lines {
        for b in &b_lines {
            if a < b {
                let v = f.average(a, b).expect("a < b");
                update_best(&mut best, v, a.clone(), b.clone());
            }
        }
    }
    let floor = f
        .normalized_value(x, &Normalization::One)
        .expect("mode needs no angle");
    finish(best, floor)
}

/// One-sided regions: 1-D maximization over `t in (0, 2A]` with candidates at
/// the grid crossings, the full reach, and the `t -> 0` one-sided limit.
pub(super) fn one_sided_result(
    f: &StepFunction,
    reach: &Rational,
    x: &Rational,
    side: Side,
) -> EvalResult {
    let two_a = Rational::from_int(2) * reach;
    let (left_limit, right_limit) = f.one_sided_limits(x);
    let mut best = None;
    match side {
        Side::Right => {
            let far = x + &two_a;
            let mut ends: Vec<Rational> = f
                .breakpoints()
                .iter()
                .filter(|bp| *bp > x && **bp <= far)
                .cloned()
                .collect();
            ends.push(far);
            for b in ends {
                let v = f.average(x, &b).expect("b > x");
                update_best(&mut best, v, x.clone(), b);
            }
            finish(best, right_limit)
        }
        Side::Left => {
            let far = x - &two_a;
            let mut starts: Vec<Rational> = f
                .breakpoints()
                .iter()
                .filter(|bp| *bp < x && **bp >= far)
                .cloned()
                .collect();
            starts.push(far);
            for a in starts {
                let v = f.average(&a, x).expect("a < x");
                update_best(&mut best, v, a, x.clone());
            }
            finish(best, left_limit)
        }
    }
}

/// All vertices of the arrangement of the breakpoint grid with the region
/// boundary, filtered to admissible points with `a < b`, sorted
/// lexicographically and deduplicated.
pub fn candidate_vertices(f: &StepFunction, region: &Region) -> Vec<(Rational, Rational)> {
    let g = f.absolute_value();
    let x = region.base();
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    match region.kind() {
        RegionKind::Cone { alpha } => {
            let ev = BatchEvaluator::new(&g, BatchOp::Cone { alpha: alpha.clone() })
                .expect("region was validated");
            ev.for_each_candidate(x, None, |a, b, _| out.push((a, b)));
        }
        RegionKind::TruncatedCone { alpha, radius } => {
            let ev = BatchEvaluator::new(
                &g,
                BatchOp::TruncatedCone {
                    alpha: alpha.clone(),
                    radius: radius.clone(),
                },
            )
            .expect("region was validated");
            ev.for_each_candidate(x, Some(radius), |a, b, _| out.push((a, b)));
        }
        RegionKind::Diamond { radius } => {
            let two_r = Rational::from_int(2) * radius;
            let a_lo = x - &two_r;
            let b_hi = x + &two_r;
            let mut a_lines = vec![a_lo.clone(), x.clone()];
            let mut b_lines = vec![x.clone(), b_hi.clone()];
            for bp in g.breakpoints() {
                if *bp >= a_lo && bp <= x {
                    a_lines.push(bp.clone());
                }
                if bp >= x && *bp <= b_hi {
                    b_lines.push(bp.clone());
                }
            }
            for a in &a_lines {
                for b in &b_lines {
                    if a < b {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        RegionKind::RightHalf { reach } => {
            let far = x + &(Rational::from_int(2) * reach);
            for bp in g.breakpoints() {
                if bp > x && *bp <= far {
                    out.push((x.clone(), bp.clone()));
                }
            }
            out.push((x.clone(), far));
        }
        RegionKind::LeftHalf { reach } => {
            let far = x - &(Rational::from_int(2) * reach);
            for bp in g.breakpoints() {
                if bp < x && *bp >= far {
                    out.push((bp.clone(), x.clone()));
                }
            }
            out.push((far, x.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Exact maximum of the average of `f` over the region: the best arrangement
/// vertex, the `t -> 0` normalization floor, and (for the unbounded cone)
/// the asymptotic value. The caller supplies `f` already nonnegative.
pub fn eval_max_average(f: &StepFunction, region: &Region) -> EvalResult {
    debug_assert!(
        f.values().iter().all(|v| !v.is_negative())
            && !f.left_tail().is_negative()
            && !f.right_tail().is_negative(),
        "eval_max_average expects |f|"
    );
    let x = region.base();
    match region.kind() {
        RegionKind::Cone { alpha } => {
            let ev = BatchEvaluator::new(f, BatchOp::Cone { alpha: alpha.clone() })
                .expect("region was validated");
            ev.result(x).expect("constant radius cannot fail")
        }
        RegionKind::TruncatedCone { alpha, radius } => {
            let ev = BatchEvaluator::new(
                f,
                BatchOp::TruncatedCone {
                    alpha: alpha.clone(),
                    radius: radius.clone(),
                },
            )
            .expect("region was validated");
            ev.result(x).expect("constant radius cannot fail")
        }
        RegionKind::Diamond { radius } => diamond_result(f, radius, x),
        RegionKind::RightHalf { reach } => one_sided_result(f, reach, x, Side::Right),
        RegionKind::LeftHalf { reach } => one_sided_result(f, reach, x, Side::Left),
    }
}
