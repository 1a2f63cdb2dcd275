//! Reusable evaluator for the cone-family operators (nontangential, constant
//! truncation, variable truncation).
//!
//! Construction absorbs everything that does not depend on the evaluation
//! point: `|f|`, the averages over all breakpoint pairs, and the per-pair
//! linear forms entering the cone constraints. Evaluating at `x` then only
//! filters cached pairs and solves the handful of boundary intersections, so
//! sweeps over many points (partition sums, detachment scans, shape probes)
//! stay cheap.

use crate::functions::{Normalization, PiecewiseLinearFunction, StepFunction};
use crate::numerics::Rational;

use super::engine::asymptotic_sup;
use super::{EvalError, EvalResult, Witness};

/// Cone-family operator selector for [`BatchEvaluator`].
#[derive(Debug, Clone)]
pub enum BatchOp {
    /// `M^alpha`: untruncated nontangential cone.
    Cone { alpha: Rational },
    /// Cone with constant truncation `t <= radius`.
    TruncatedCone { alpha: Rational, radius: Rational },
    /// Cone truncated by the pointwise radius `N(x)`, frozen at the base
    /// point of each evaluation.
    LipschitzCone {
        alpha: Rational,
        radius: PiecewiseLinearFunction,
    },
}

#[derive(Debug, Clone)]
enum RadiusSpec {
    None,
    Const(Rational),
    Varying(PiecewiseLinearFunction),
}

struct PairCand {
    a: Rational,
    b: Rational,
    avg: Rational,
    /// `(1+alpha) a + (1-alpha) b`, compared against `2x`
    s_plus: Rational,
    /// `(1-alpha) a + (1+alpha) b`, compared against `2x`
    s_minus: Rational,
    len: Rational,
}

pub struct BatchEvaluator {
    f: StepFunction,
    alpha: Rational,
    one_plus: Rational,
    one_minus: Rational,
    radius: RadiusSpec,
    pairs: Vec<PairCand>,
    floor_mode: Normalization,
    asym: Rational,
}

impl BatchEvaluator {
    pub fn new(f: &StepFunction, op: BatchOp) -> Result<Self, EvalError> {
        let (alpha, radius) = match op {
            BatchOp::Cone { alpha } => (alpha, RadiusSpec::None),
            BatchOp::TruncatedCone { alpha, radius } => {
                if !radius.is_positive() {
                    return Err(EvalError::NonpositiveRadius);
                }
                (alpha, RadiusSpec::Const(radius))
            }
            BatchOp::LipschitzCone { alpha, radius } => (alpha, RadiusSpec::Varying(radius)),
        };
        if alpha.is_negative() {
            return Err(EvalError::NegativeAlpha);
        }
        let f = f.absolute_value();
        let one = Rational::one();
        let one_plus = &one + &alpha;
        let one_minus = &one - &alpha;
        let bps = f.breakpoints();
        let mut pairs = Vec::with_capacity(bps.len() * (bps.len() - 1) / 2);
        for i in 0..bps.len() {
            for j in (i + 1)..bps.len() {
                let a = bps[i].clone();
                let b = bps[j].clone();
                let avg = f.average(&a, &b).expect("breakpoints are ordered");
                let s_plus = &one_plus * &a + &one_minus * &b;
                let s_minus = &one_minus * &a + &one_plus * &b;
                let len = &b - &a;
                pairs.push(PairCand {
                    a,
                    b,
                    avg,
                    s_plus,
                    s_minus,
                    len,
                });
            }
        }
        let floor_mode = Normalization::Alpha(alpha.clone().min(one));
        let asym = asymptotic_sup(&f, &alpha);
        Ok(BatchEvaluator {
            f,
            alpha,
            one_plus,
            one_minus,
            radius,
            pairs,
            floor_mode,
            asym,
        })
    }

    /// The nonnegative function actually averaged.
    pub fn function(&self) -> &StepFunction {
        &self.f
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    fn radius_at(&self, x: &Rational) -> Result<Option<Rational>, EvalError> {
        match &self.radius {
            RadiusSpec::None => Ok(None),
            RadiusSpec::Const(r) => Ok(Some(r.clone())),
            RadiusSpec::Varying(n) => {
                let r = n.eval(x);
                if r.is_negative() {
                    return Err(EvalError::NegativeRadius);
                }
                Ok(Some(r))
            }
        }
    }

    fn admissible(
        &self,
        two_x: &Rational,
        two_r: Option<&Rational>,
        a: &Rational,
        b: &Rational,
    ) -> bool {
        if a >= b {
            return false;
        }
        if let Some(two_r) = two_r {
            if &(b - a) > two_r {
                return false;
            }
        }
        &self.one_plus * a + &self.one_minus * b <= *two_x
            && &self.one_minus * a + &self.one_plus * b >= *two_x
    }

    /// Visits every arrangement vertex admissible at `x`. `visit` receives
    /// `(a, b, cached average if available)`.
    pub(super) fn for_each_candidate<F>(&self, x: &Rational, radius: Option<&Rational>, mut visit: F)
    where
        F: FnMut(Rational, Rational, Option<&Rational>),
    {
        let two_x = Rational::from_int(2) * x;
        let two_r = radius.map(|r| Rational::from_int(2) * r);
        for p in &self.pairs {
            if p.s_plus <= two_x && p.s_minus >= two_x {
                if let Some(two_r) = &two_r {
                    if &p.len > two_r {
                        continue;
                    }
                }
                visit(p.a.clone(), p.b.clone(), Some(&p.avg));
            }
        }
        let mut consider = |a: Rational, b: Rational| {
            if self.admissible(&two_x, two_r.as_ref(), &a, &b) {
                visit(a, b, None);
            }
        };
        // grid line meets a cone boundary line
        for bp in self.f.breakpoints() {
            // (1+alpha) a + (1-alpha) b = 2x with b pinned to the grid
            let a1 = (&two_x - &(&self.one_minus * bp)) / &self.one_plus;
            consider(a1, bp.clone());
            // (1-alpha) a + (1+alpha) b = 2x with a pinned to the grid
            let b1 = (&two_x - &(&self.one_minus * bp)) / &self.one_plus;
            consider(bp.clone(), b1);
            if !self.one_minus.is_zero() {
                let b2 = (&two_x - &(&self.one_plus * bp)) / &self.one_minus;
                consider(bp.clone(), b2);
                let a2 = (&two_x - &(&self.one_plus * bp)) / &self.one_minus;
                consider(a2, bp.clone());
            }
            if let Some(two_r) = &two_r {
                consider(bp.clone(), bp + two_r);
                consider(bp - two_r, bp.clone());
            }
        }
        // corners where the truncation line meets the cone boundary
        if let Some(r) = radius {
            consider(x - &(r * &self.one_minus), x + &(r * &self.one_plus));
            consider(x - &(r * &self.one_plus), x + &(r * &self.one_minus));
        }
    }

    /// Exact operator value at `x` with its witness. Vertex candidates win
    /// ties against the floor, which wins ties against the asymptotic value.
    pub fn result(&self, x: &Rational) -> Result<EvalResult, EvalError> {
        let radius = self.radius_at(x)?;
        let floor = self
            .f
            .normalized_value(x, &self.floor_mode)
            .expect("floor alpha is clamped to [0, 1]");
        if let Some(r) = &radius {
            if r.is_zero() {
                // only t -> 0 remains admissible
                return Ok(EvalResult {
                    value: floor,
                    witness: Witness::NormalizationFloor,
                });
            }
        }
        let mut best: Option<(Rational, Rational, Rational)> = None;
        self.for_each_candidate(x, radius.as_ref(), |a, b, cached| {
            let v = match cached {
                Some(v) => v.clone(),
                None => self.f.average(&a, &b).expect("candidates satisfy a < b"),
            };
            match &mut best {
                None => best = Some((v, a, b)),
                Some((bv, ba, bb)) => {
                    if v > *bv || (v == *bv && (&a, &b) < (&*ba, &*bb)) {
                        *bv = v;
                        *ba = a;
                        *bb = b;
                    }
                }
            }
        });
        let mut out = match best {
            Some((v, a, b)) if v >= floor => EvalResult {
                value: v,
                witness: Witness::Interval(a, b),
            },
            _ => EvalResult {
                value: floor,
                witness: Witness::NormalizationFloor,
            },
        };
        if matches!(self.radius, RadiusSpec::None) && self.asym > out.value {
            out = EvalResult {
                value: self.asym.clone(),
                witness: Witness::AsymptoticTail,
            };
        }
        Ok(out)
    }

    /// Exact operator value at `x`.
    pub fn value(&self, x: &Rational) -> Result<Rational, EvalError> {
        Ok(self.result(x)?.value)
    }
}
