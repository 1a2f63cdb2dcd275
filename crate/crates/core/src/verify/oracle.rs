//! Refined-grid oracle for the cone evaluators.
//!
//! For each radius `t` on a dyadic grid this maximizes the average exactly
//! over the admissible centers `y` (for fixed `t` the windowed integral is
//! piecewise linear in `y`, so the maximum over the segment
//! `|y - x| <= alpha t` sits at its ends or at a kink `y = bp -+ t`). Every
//! reported value is an admissible average, so the engine value must weakly
//! dominate it, and refining the grid must close the gap. The oracle never
//! looks at the vertex arrangement, the normalization floor, or the
//! asymptotic branch.

use crate::functions::StepFunction;
use crate::numerics::Rational;

/// Largest admissible average over the dyadic grid `t = i * 2^-step_exp`,
/// centers maximized exactly per `t`. The radius range covers the support
/// diameter plus the distance from `x` to the support, plus slack.
pub fn grid_supremum(
    f: &StepFunction,
    alpha: &Rational,
    x: &Rational,
    step_exp: u32,
) -> Rational {
    let g = f.absolute_value();
    let dist_left = (g.support_min() - x).max(Rational::zero());
    let dist_right = (x - g.support_max()).max(Rational::zero());
    let reach = g.diameter() + dist_left.max(dist_right) + Rational::from_int(2);
    let h = Rational::pow2(-(step_exp as i32));
    // number of grid radii: ceil(reach / h)
    let steps = {
        let ratio = &reach / &h;
        let n = ratio.numer().clone();
        let d = ratio.denom().clone();
        let q = (&n + &d - 1u8) / &d;
        let digits: u64 = q.to_string().parse().unwrap_or(u64::MAX);
        digits
    };
    let mut best = Rational::zero();
    let mut t = Rational::zero();
    for _ in 0..steps {
        t += &h;
        let y_lo = x - &(alpha * &t);
        let y_hi = x + &(alpha * &t);
        let mut consider = |y: &Rational| {
            let v = g.average(&(y - &t), &(y + &t)).expect("t > 0");
            if v > best {
                best = v;
            }
        };
        consider(&y_lo);
        if y_hi > y_lo {
            consider(&y_hi);
            for bp in g.breakpoints() {
                for y in [bp - &t, bp + &t] {
                    if y > y_lo && y < y_hi {
                        consider(&y);
                    }
                }
            }
        }
    }
    best
}
