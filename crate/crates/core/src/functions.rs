//! Piecewise-constant functions with constant tails, and piecewise-linear
//! truncation radii.
//!
//! A [`StepFunction`] is described by strictly increasing breakpoints, the
//! value on each open interval between consecutive breakpoints, and the two
//! tail values. The value *at* a breakpoint is never stored: it is always
//! derived on demand by a normalization mode (see
//! [`StepFunction::normalized_value`]), because the underlying object is an
//! almost-everywhere equivalence class and more than one pointwise
//! normalization is in play.

use thiserror::Error;

use crate::numerics::{ExtendedRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctionError {
    #[error("breakpoints must be strictly increasing")]
    UnsortedBreakpoints,
    #[error("at least one breakpoint is required")]
    EmptyBreakpoints,
    #[error("field `{field}` has length {got}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("interval is degenerate (left endpoint must be below right endpoint)")]
    DegenerateInterval,
    #[error("superlevel threshold must be positive")]
    NonpositiveLambda,
    #[error("normalization angle must lie in [0, 1]")]
    AlphaOutOfRange,
    #[error("dilation factor must be positive")]
    NonpositiveDilation,
}

/// Pointwise normalization mode for the (virtual) value of a step function at
/// a point. With `L`/`l` the larger/smaller one-sided limit:
/// `Alpha(a)` yields `((1+a)L + (1-a)l)/2`, while `One` and `RawMax` both
/// yield `L`. The returned value always lies in `[l, L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    Alpha(Rational),
    One,
    RawMax,
}

/// Compactly described piecewise-constant function with constant tails; the
/// universal input type of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
    left_tail: Rational,
    right_tail: Rational,
    /// prefix[i] = integral of f from breakpoints[0] to breakpoints[i]
    prefix: Vec<Rational>,
    /// integral of f from breakpoints[0] to 0, so that F(0) = 0
    raw_at_zero: Rational,
}

impl StepFunction {
    pub fn new(
        breakpoints: Vec<Rational>,
        values: Vec<Rational>,
        left_tail: Rational,
        right_tail: Rational,
    ) -> Result<Self, FunctionError> {
        if breakpoints.is_empty() {
            return Err(FunctionError::EmptyBreakpoints);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FunctionError::UnsortedBreakpoints);
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(FunctionError::LengthMismatch {
                field: "values",
                expected: breakpoints.len() - 1,
                got: values.len(),
            });
        }
        let mut prefix = Vec::with_capacity(breakpoints.len());
        prefix.push(Rational::zero());
        for i in 1..breakpoints.len() {
            let step = &values[i - 1] * &(&breakpoints[i] - &breakpoints[i - 1]);
            let prev = prefix[i - 1].clone();
            prefix.push(prev + step);
        }
        let mut f = StepFunction {
            breakpoints,
            values,
            left_tail,
            right_tail,
            prefix,
            raw_at_zero: Rational::zero(),
        };
        f.raw_at_zero = f.raw_antiderivative(&Rational::zero());
        Ok(f)
    }

    /// Indicator of the open interval `(a, b)`.
    pub fn indicator(a: Rational, b: Rational) -> Result<Self, FunctionError> {
        if a >= b {
            return Err(FunctionError::DegenerateInterval);
        }
        StepFunction::new(
            vec![a, b],
            vec![Rational::one()],
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// Constant function (single virtual breakpoint at 0, equal tails).
    pub fn constant(c: Rational) -> Self {
        StepFunction::new(vec![Rational::zero()], vec![], c.clone(), c).unwrap()
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn left_tail(&self) -> &Rational {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &Rational {
        &self.right_tail
    }

    pub fn support_min(&self) -> &Rational {
        &self.breakpoints[0]
    }

    pub fn support_max(&self) -> &Rational {
        self.breakpoints.last().unwrap()
    }

    /// Distance between the first and last breakpoints.
    pub fn diameter(&self) -> Rational {
        self.support_max() - self.support_min()
    }

    fn raw_antiderivative(&self, x: &Rational) -> Rational {
        let k = self.breakpoints.len();
        if *x <= self.breakpoints[0] {
            return &self.left_tail * &(x - &self.breakpoints[0]);
        }
        if *x >= self.breakpoints[k - 1] {
            return &self.prefix[k - 1] + &(&self.right_tail * &(x - &self.breakpoints[k - 1]));
        }
        // first index with breakpoint > x, so x lives in piece idx-1
        let idx = self.breakpoints.partition_point(|b| b <= x);
        &self.prefix[idx - 1] + &(&self.values[idx - 1] * &(x - &self.breakpoints[idx - 1]))
    }

    /// Exact value of the signed antiderivative `F(x) = \int_0^x f`, which is
    /// piecewise linear and continuous.
    pub fn antiderivative_at(&self, x: &Rational) -> Rational {
        self.raw_antiderivative(x) - &self.raw_at_zero
    }

    /// Exact average `(F(b) - F(a)) / (b - a)` over `(a, b)`.
    pub fn average(&self, a: &Rational, b: &Rational) -> Result<Rational, FunctionError> {
        if a >= b {
            return Err(FunctionError::DegenerateInterval);
        }
        Ok((self.raw_antiderivative(b) - self.raw_antiderivative(a)) / (b - a))
    }

    /// Pointwise absolute value.
    pub fn absolute_value(&self) -> StepFunction {
        StepFunction::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v.abs()).collect(),
            self.left_tail.abs(),
            self.right_tail.abs(),
        )
        .unwrap()
    }

    /// The full sequence of piece values from left tail to right tail.
    fn value_sequence(&self) -> Vec<&Rational> {
        let mut seq = Vec::with_capacity(self.values.len() + 2);
        seq.push(&self.left_tail);
        seq.extend(self.values.iter());
        seq.push(&self.right_tail);
        seq
    }

    /// Total variation: the exact sum of jump magnitudes across all
    /// breakpoints. This equals the partition-supremum definition because
    /// every supported normalization assigns breakpoint values between the
    /// one-sided limits.
    pub fn total_variation(&self) -> Rational {
        let seq = self.value_sequence();
        seq.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// `\int |f|`; infinite as soon as a tail is nonzero.
    pub fn l1_norm(&self) -> ExtendedRational {
        if !self.left_tail.is_zero() || !self.right_tail.is_zero() {
            return ExtendedRational::PosInfinity;
        }
        let total: Rational = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(v, w)| v.abs() * (&w[1] - &w[0]))
            .sum();
        ExtendedRational::Finite(total)
    }

    /// One-sided limits `(f(x-), f(x+))`; equal when `x` is interior to a
    /// piece or a tail.
    pub fn one_sided_limits(&self, x: &Rational) -> (Rational, Rational) {
        let k = self.breakpoints.len();
        let pos = self.breakpoints.partition_point(|b| b < x);
        if pos < k && &self.breakpoints[pos] == x {
            let left = if pos == 0 {
                self.left_tail.clone()
            } else {
                self.values[pos - 1].clone()
            };
            let right = if pos == k - 1 {
                self.right_tail.clone()
            } else {
                self.values[pos].clone()
            };
            (left, right)
        } else {
            let v = if pos == 0 {
                self.left_tail.clone()
            } else if pos == k {
                self.right_tail.clone()
            } else {
                self.values[pos - 1].clone()
            };
            (v.clone(), v)
        }
    }

    /// limsup of `f(y)` as `y -> x`: the larger one-sided limit.
    pub fn limsup_at(&self, x: &Rational) -> Rational {
        let (l, r) = self.one_sided_limits(x);
        l.max(r)
    }

    /// Canonical pointwise value at `x` under the requested normalization.
    pub fn normalized_value(
        &self,
        x: &Rational,
        mode: &Normalization,
    ) -> Result<Rational, FunctionError> {
        let (a, b) = self.one_sided_limits(x);
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        match mode {
            Normalization::Alpha(alpha) => {
                if alpha.is_negative() || *alpha > Rational::one() {
                    return Err(FunctionError::AlphaOutOfRange);
                }
                let one = Rational::one();
                let two = Rational::from_int(2);
                Ok(((&one + alpha) * large + (&one - alpha) * small) / two)
            }
            Normalization::One | Normalization::RawMax => Ok(large),
        }
    }

    /// Lebesgue measure of `{x : f(x) > lambda}` (breakpoint values are null
    /// sets and are ignored); infinite if a tail exceeds `lambda`.
    pub fn superlevel_measure(
        &self,
        lambda: &Rational,
    ) -> Result<ExtendedRational, FunctionError> {
        if !lambda.is_positive() {
            return Err(FunctionError::NonpositiveLambda);
        }
        if &self.left_tail > lambda || &self.right_tail > lambda {
            return Ok(ExtendedRational::PosInfinity);
        }
        let total: Rational = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .filter(|(v, _)| *v > lambda)
            .map(|(_, w)| &w[1] - &w[0])
            .sum();
        Ok(ExtendedRational::Finite(total))
    }

    /// Merges equal adjacent pieces. Idempotent; a function with no jumps at
    /// all collapses to a single virtual breakpoint.
    pub fn canonicalize(&self) -> StepFunction {
        let seq = self.value_sequence();
        let mut bps = Vec::new();
        let mut vals = Vec::new();
        for (i, bp) in self.breakpoints.iter().enumerate() {
            if seq[i] != seq[i + 1] {
                if !bps.is_empty() {
                    vals.push(self.piece_after(bps.len() - 1, &bps));
                }
                bps.push(bp.clone());
            }
        }
        if bps.is_empty() {
            return StepFunction::new(
                vec![self.breakpoints[0].clone()],
                vec![],
                self.left_tail.clone(),
                self.right_tail.clone(),
            )
            .unwrap();
        }
        StepFunction::new(bps, vals, self.left_tail.clone(), self.right_tail.clone()).unwrap()
    }

    // value of the original function just right of the kept breakpoint
    // bps[idx]; used while rebuilding in canonicalize
    fn piece_after(&self, _idx: usize, bps: &[Rational]) -> Rational {
        let x = bps.last().unwrap();
        let (_, right) = self.one_sided_limits(x);
        right
    }

    /// `c * f`.
    pub fn scaled(&self, c: &Rational) -> StepFunction {
        StepFunction::new(
            self.breakpoints.clone(),
            self.values.iter().map(|v| c * v).collect(),
            c * &self.left_tail,
            c * &self.right_tail,
        )
        .unwrap()
    }

    /// `x -> f(-x)`.
    pub fn reflected(&self) -> StepFunction {
        let bps = self.breakpoints.iter().rev().map(|b| -b).collect();
        let vals = self.values.iter().rev().cloned().collect();
        StepFunction::new(
            bps,
            vals,
            self.right_tail.clone(),
            self.left_tail.clone(),
        )
        .unwrap()
    }

    /// `x -> f(x / s)` for `s > 0`.
    pub fn dilated(&self, s: &Rational) -> Result<StepFunction, FunctionError> {
        if !s.is_positive() {
            return Err(FunctionError::NonpositiveDilation);
        }
        StepFunction::new(
            self.breakpoints.iter().map(|b| b * s).collect(),
            self.values.clone(),
            self.left_tail.clone(),
            self.right_tail.clone(),
        )
    }
}

/// Continuous piecewise-linear function with constant extension beyond its
/// node range; the truncation radius `N(x)` of the variable-truncation
/// operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearFunction {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl PiecewiseLinearFunction {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, FunctionError> {
        if xs.is_empty() {
            return Err(FunctionError::EmptyBreakpoints);
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FunctionError::UnsortedBreakpoints);
        }
        if ys.len() != xs.len() {
            return Err(FunctionError::LengthMismatch {
                field: "values",
                expected: xs.len(),
                got: ys.len(),
            });
        }
        Ok(PiecewiseLinearFunction { xs, ys })
    }

    pub fn constant(c: Rational) -> Self {
        PiecewiseLinearFunction::new(vec![Rational::zero()], vec![c]).unwrap()
    }

    pub fn nodes(&self) -> (&[Rational], &[Rational]) {
        (&self.xs, &self.ys)
    }

    /// Exact linear interpolation, constant beyond the first/last node.
    pub fn eval(&self, x: &Rational) -> Rational {
        let k = self.xs.len();
        if *x <= self.xs[0] {
            return self.ys[0].clone();
        }
        if *x >= self.xs[k - 1] {
            return self.ys[k - 1].clone();
        }
        let idx = self.xs.partition_point(|b| b <= x);
        let (x0, x1) = (&self.xs[idx - 1], &self.xs[idx]);
        let (y0, y1) = (&self.ys[idx - 1], &self.ys[idx]);
        y0 + &((y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// Largest segment slope magnitude (the extension slopes are 0).
    pub fn lipschitz_constant(&self) -> Rational {
        let mut best = Rational::zero();
        for i in 1..self.xs.len() {
            let slope =
                ((&self.ys[i] - &self.ys[i - 1]) / (&self.xs[i] - &self.xs[i - 1])).abs();
            if slope > best {
                best = slope;
            }
        }
        best
    }

    /// Whether the function is nonnegative everywhere (piecewise-linear, so
    /// checking the nodes suffices). Required of truncation radii.
    pub fn is_nonnegative(&self) -> bool {
        self.ys.iter().all(|y| !y.is_negative())
    }

    /// `x -> N(-x)`.
    pub fn reflected(&self) -> PiecewiseLinearFunction {
        PiecewiseLinearFunction::new(
            self.xs.iter().rev().map(|x| -x).collect(),
            self.ys.iter().rev().cloned().collect(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational_parse;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn chi() -> StepFunction {
        StepFunction::indicator(ri(-1), ri(0)).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(
            StepFunction::new(vec![ri(0), ri(0)], vec![ri(1)], ri(0), ri(0)).unwrap_err(),
            FunctionError::UnsortedBreakpoints
        );
        assert!(matches!(
            StepFunction::new(vec![ri(0), ri(1)], vec![], ri(0), ri(0)).unwrap_err(),
            FunctionError::LengthMismatch { field: "values", .. }
        ));
        assert_eq!(
            StepFunction::new(vec![], vec![], ri(0), ri(0)).unwrap_err(),
            FunctionError::EmptyBreakpoints
        );
    }

    #[test]
    fn antiderivative_examples() {
        let f = chi();
        assert_eq!(f.antiderivative_at(&ri(-1)), ri(-1));
        assert_eq!(f.antiderivative_at(&ri(5)), ri(0));
        let g = StepFunction::new(vec![ri(0), ri(3)], vec![ri(2)], ri(0), ri(0)).unwrap();
        assert_eq!(g.antiderivative_at(&ri(2)), ri(4));
    }

    #[test]
    fn average_examples() {
        let f = chi();
        assert_eq!(f.average(&ri(-1), &ri(0)).unwrap(), ri(1));
        assert_eq!(f.average(&ri(-1), &ri(1)).unwrap(), r(1, 2));
        assert_eq!(f.average(&ri(-3), &ri(1)).unwrap(), r(1, 4));
        assert_eq!(
            f.average(&ri(1), &ri(1)).unwrap_err(),
            FunctionError::DegenerateInterval
        );
    }

    #[test]
    fn absolute_value_examples() {
        let f = StepFunction::new(vec![ri(0), ri(1), ri(2)], vec![ri(-1), ri(2)], ri(-3), ri(-3))
            .unwrap();
        let g = f.absolute_value();
        assert_eq!(g.values(), &[ri(1), ri(2)]);
        assert_eq!(g.left_tail(), &ri(3));
        let h = chi();
        assert_eq!(h.absolute_value(), h);
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(chi().total_variation(), ri(2));
        assert_eq!(StepFunction::constant(ri(5)).total_variation(), ri(0));
        // four jumps of size 4
        let spike = StepFunction::new(
            vec![ri(0), r(1, 4), r(3, 4), ri(1)],
            vec![ri(4), ri(0), ri(4)],
            ri(0),
            ri(0),
        )
        .unwrap();
        assert_eq!(spike.total_variation(), ri(16));
    }

    #[test]
    fn l1_examples() {
        assert_eq!(chi().l1_norm(), ExtendedRational::Finite(ri(1)));
        let tailed = StepFunction::new(vec![ri(0)], vec![], ri(1), ri(0)).unwrap();
        assert_eq!(tailed.l1_norm(), ExtendedRational::PosInfinity);
        let g = StepFunction::new(vec![ri(0), ri(3)], vec![ri(2)], ri(0), ri(0)).unwrap();
        assert_eq!(g.l1_norm(), ExtendedRational::Finite(ri(6)));
    }

    #[test]
    fn one_sided_limit_examples() {
        let f = chi();
        assert_eq!(f.one_sided_limits(&ri(0)), (ri(1), ri(0)));
        assert_eq!(f.one_sided_limits(&r(-1, 2)), (ri(1), ri(1)));
        assert_eq!(f.one_sided_limits(&ri(7)), (ri(0), ri(0)));
        assert_eq!(f.one_sided_limits(&ri(-1)), (ri(0), ri(1)));
    }

    #[test]
    fn normalized_value_examples() {
        let f = chi();
        assert_eq!(
            f.normalized_value(&ri(0), &Normalization::Alpha(r(1, 2))).unwrap(),
            r(3, 4)
        );
        assert_eq!(f.normalized_value(&ri(0), &Normalization::One).unwrap(), ri(1));
        assert_eq!(
            f.normalized_value(&r(-1, 2), &Normalization::Alpha(r(1, 5))).unwrap(),
            ri(1)
        );
        assert_eq!(
            f.normalized_value(&ri(0), &Normalization::Alpha(ri(2))).unwrap_err(),
            FunctionError::AlphaOutOfRange
        );
    }

    #[test]
    fn superlevel_examples() {
        let f = chi();
        assert_eq!(
            f.superlevel_measure(&r(1, 2)).unwrap(),
            ExtendedRational::Finite(ri(1))
        );
        assert_eq!(
            f.superlevel_measure(&ri(2)).unwrap(),
            ExtendedRational::Finite(ri(0))
        );
        let tailed = StepFunction::new(vec![ri(0)], vec![], ri(1), ri(1)).unwrap();
        assert_eq!(
            tailed.superlevel_measure(&r(1, 2)).unwrap(),
            ExtendedRational::PosInfinity
        );
        assert_eq!(
            f.superlevel_measure(&ri(0)).unwrap_err(),
            FunctionError::NonpositiveLambda
        );
    }

    #[test]
    fn canonicalize_merges_and_is_idempotent() {
        let f = StepFunction::new(
            vec![ri(0), ri(1), ri(2), ri(3)],
            vec![ri(2), ri(2), ri(0)],
            ri(0),
            ri(0),
        )
        .unwrap();
        let c = f.canonicalize();
        assert_eq!(c.breakpoints(), &[ri(0), ri(2)]);
        assert_eq!(c.values(), &[ri(2)]);
        assert_eq!(c.total_variation(), f.total_variation());
        assert_eq!(c.canonicalize(), c);
        let flat = StepFunction::new(vec![ri(0), ri(1)], vec![ri(3)], ri(3), ri(3)).unwrap();
        let cf = flat.canonicalize();
        assert_eq!(cf.breakpoints().len(), 1);
        assert_eq!(cf.canonicalize(), cf);
    }

    #[test]
    fn plf_eval_examples() {
        let n = PiecewiseLinearFunction::new(vec![ri(0), r(4, 5)], vec![ri(1), r(2, 5)]).unwrap();
        assert_eq!(n.eval(&r(2, 5)), r(7, 10));
        assert_eq!(n.eval(&ri(-3)), ri(1));
        assert_eq!(n.eval(&r(4, 5)), r(2, 5));
    }

    #[test]
    fn lipschitz_constant_examples() {
        let n = PiecewiseLinearFunction::new(vec![ri(0), r(4, 5)], vec![ri(1), r(2, 5)]).unwrap();
        assert_eq!(n.lipschitz_constant(), r(3, 4));
        assert_eq!(
            PiecewiseLinearFunction::constant(ri(2)).lipschitz_constant(),
            ri(0)
        );
    }

    #[test]
    fn partition_sums_attain_total_variation() {
        let f = StepFunction::new(
            vec![ri(-2), ri(0), ri(1)],
            vec![ri(3), ri(-1)],
            ri(1),
            ri(0),
        )
        .unwrap();
        let tv = f.total_variation();
        for mode in [
            Normalization::Alpha(Rational::zero()),
            Normalization::Alpha(r(1, 2)),
            Normalization::One,
        ] {
            // partition containing all breakpoints and one interior point per
            // piece attains the variation
            let pts = vec![ri(-3), ri(-2), ri(-1), ri(0), r(1, 2), ri(1), ri(2)];
            let sum: Rational = pts
                .windows(2)
                .map(|w| {
                    let a = f.normalized_value(&w[0], &mode).unwrap();
                    let b = f.normalized_value(&w[1], &mode).unwrap();
                    (b - a).abs()
                })
                .sum();
            assert_eq!(sum, tv, "mode {mode:?}");
        }
    }

    #[test]
    fn decimal_parse_consistency() {
        assert_eq!(rational_parse("0.75").unwrap(), r(3, 4));
    }

    proptest! {
        // additivity of the integral: the algebraic heart of the
        // boundary-projection argument
        #[test]
        fn average_additivity(
            an in -8i64..8, bn in -8i64..8, cn in -8i64..8,
            v0 in -5i64..5, v1 in -5i64..5,
        ) {
            let mut pts = [an, bn, cn];
            pts.sort_unstable();
            prop_assume!(pts[0] < pts[1] && pts[1] < pts[2]);
            let (a, b, c) = (ri(pts[0]), ri(pts[1]), ri(pts[2]));
            let f = StepFunction::new(
                vec![ri(-1), ri(1)],
                vec![ri(v0)],
                ri(v1),
                ri(0),
            ).unwrap();
            let lhs = f.average(&a, &c).unwrap() * (&c - &a);
            let rhs = f.average(&a, &b).unwrap() * (&b - &a)
                + f.average(&b, &c).unwrap() * (&c - &b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn average_between_min_and_max(
            a in -6i64..6, len in 1i64..8,
            v0 in -5i64..5, v1 in -5i64..5, v2 in -5i64..5,
        ) {
            let f = StepFunction::new(
                vec![ri(-2), ri(0), ri(2)],
                vec![ri(v0), ri(v1)],
                ri(v2),
                ri(0),
            ).unwrap();
            let lo = ri(a);
            let hi = ri(a + len);
            let avg = f.average(&lo, &hi).unwrap();
            let bounds = [ri(v0), ri(v1), ri(v2), ri(0)];
            let min = bounds.iter().cloned().reduce(|x, y| x.min(y)).unwrap();
            let max = bounds.iter().cloned().reduce(|x, y| x.max(y)).unwrap();
            prop_assert!(min <= avg && avg <= max);
        }

        #[test]
        fn superlevel_monotone_in_lambda(
            v0 in -5i64..6, v1 in -5i64..6,
            l1n in 1i64..10, l2n in 1i64..10,
        ) {
            let f = StepFunction::new(
                vec![ri(0), ri(1), ri(3)],
                vec![ri(v0), ri(v1)],
                ri(0), ri(0),
            ).unwrap();
            let (lo, hi) = if l1n <= l2n { (r(l1n, 4), r(l2n, 4)) } else { (r(l2n, 4), r(l1n, 4)) };
            let m_lo = f.superlevel_measure(&lo).unwrap();
            let m_hi = f.superlevel_measure(&hi).unwrap();
            prop_assert!(m_hi <= m_lo);
        }

        #[test]
        fn plf_satisfies_its_lipschitz_bound(
            y0 in -6i64..6, y1 in -6i64..6, y2 in -6i64..6,
            pn in -20i64..20, qn in -20i64..20,
        ) {
            prop_assume!(pn != qn);
            let n = PiecewiseLinearFunction::new(
                vec![ri(0), ri(1), ri(3)],
                vec![ri(y0), ri(y1), ri(y2)],
            ).unwrap();
            let c = n.lipschitz_constant();
            let p = r(pn, 4);
            let q = r(qn, 4);
            let diff = (n.eval(&p) - n.eval(&q)).abs();
            prop_assert!(diff <= c * (&p - &q).abs());
        }

        #[test]
        fn partition_sums_never_exceed_total_variation(
            v0 in -5i64..5, v1 in -5i64..5, v2 in -5i64..5,
            p0 in -20i64..20, p1 in -20i64..20, p2 in -20i64..20, p3 in -20i64..20,
            alpha_num in 0i64..=4,
        ) {
            let f = StepFunction::new(
                vec![ri(-2), ri(0), ri(1), ri(3)],
                vec![ri(v0), ri(v1), ri(v2)],
                ri(0), ri(0),
            ).unwrap();
            let mut pts = vec![r(p0, 4), r(p1, 4), r(p2, 4), r(p3, 4)];
            pts.sort();
            pts.dedup();
            prop_assume!(pts.len() >= 2);
            let mode = Normalization::Alpha(r(alpha_num, 4));
            let sum: Rational = pts
                .windows(2)
                .map(|w| {
                    let a = f.normalized_value(&w[0], &mode).unwrap();
                    let b = f.normalized_value(&w[1], &mode).unwrap();
                    (b - a).abs()
                })
                .sum();
            prop_assert!(sum <= f.total_variation());
        }

        #[test]
        fn canonicalize_preserves_variation(
            v0 in -3i64..4, v1 in -3i64..4, v2 in -3i64..4, tail in -3i64..4,
        ) {
            let f = StepFunction::new(
                vec![ri(0), ri(1), ri(2)],
                vec![ri(v0), ri(v1)],
                ri(tail), ri(v2),
            ).unwrap();
            prop_assert_eq!(f.canonicalize().total_variation(), f.total_variation());
        }
    }
}
