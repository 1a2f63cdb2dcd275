//! The two counterexample constructions: the sharpening spike pair (small
//! cone openings admit interior local maxima) and the variable-truncation
//! radius whose slope exceeds 1/2 (divergent variation).

use crate::functions::{PiecewiseLinearFunction, StepFunction};
use crate::maximal::{BatchEvaluator, BatchOp};
use crate::numerics::Rational;

use super::AnalysisError;

/// `f_n = n (chi_[0, 1/n] + chi_[1 - 1/n, 1])`: two unit masses sharpening
/// toward the endpoints of `[0, 1]`.
pub fn make_spike_pair(n: i64) -> Result<StepFunction, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::SpikeTooSmall);
    }
    let one = Rational::one();
    let inv = Rational::new(1, n).expect("n >= 2");
    if n == 2 {
        // the two spikes meet; the construction degenerates to 2 on (0, 1)
        return Ok(StepFunction::new(
            vec![Rational::zero(), one],
            vec![Rational::from_int(2)],
            Rational::zero(),
            Rational::zero(),
        )?);
    }
    Ok(StepFunction::new(
        vec![Rational::zero(), inv.clone(), &one - &inv, one],
        vec![Rational::from_int(n), Rational::zero(), Rational::from_int(n)],
        Rational::zero(),
        Rational::zero(),
    )?)
}

/// Truncation radius with Lipschitz constant exactly `beta > 1/2` for which
/// the truncated maximal function of the unit indicator has divergent
/// variation: starting from `x_0 = 2/(2 beta + 1)` with `N(0) = 1` and
/// `N(x_0) = x_0 / 2`, each bump climbs to `N(x'_K) = (x'_K + 1)/2` at
/// `x'_K = x_{K-1} + 1/(beta - 1/2)` and dips back to `N(x_K) = x_K / 2` at
/// `x_K = x'_K + 1/(2 beta + 1)`.
pub fn make_divergence_n(
    beta: &Rational,
    bumps: usize,
) -> Result<PiecewiseLinearFunction, AnalysisError> {
    let half = Rational::new(1, 2).unwrap();
    if beta <= &half {
        return Err(AnalysisError::SlopeTooSmall);
    }
    let one = Rational::one();
    let two = Rational::from_int(2);
    let climb = &one / &(beta - &half);
    let dip = &one / &(&two * beta + &one);
    let x0 = &two / &(&two * beta + &one);
    let mut xs = vec![Rational::zero(), x0.clone()];
    let mut ys = vec![one.clone(), &x0 / &two];
    let mut x = x0;
    for _ in 0..bumps {
        let xp = &x + &climb;
        xs.push(xp.clone());
        ys.push((&xp + &one) / &two);
        x = &xp + &dip;
        xs.push(x.clone());
        ys.push(&x / &two);
    }
    Ok(PiecewiseLinearFunction::new(xs, ys)?)
}

/// One bump of the divergence certificate: the truncated maximal function of
/// the unit indicator evaluated at the peak `x'_K` and at the following zero
/// `x_K`, with the running sum of the certified increments.
#[derive(Debug, Clone)]
pub struct CertificateRow {
    pub index: usize,
    pub peak_x: Rational,
    pub peak_value: Rational,
    pub zero_x: Rational,
    pub zero_value: Rational,
    /// Partition-sum lower bound accumulated through this bump.
    pub partial_sum: Rational,
}

/// Evaluates the divergence construction bump by bump for
/// `f = chi_(-1, 0)`. The partial sums are exact rationals and certify the
/// lower bound for the variation over the scanned range.
pub fn divergence_certificate(
    beta: &Rational,
    bumps: usize,
) -> Result<Vec<CertificateRow>, AnalysisError> {
    let n = make_divergence_n(beta, bumps)?;
    let f = StepFunction::indicator(-Rational::one(), Rational::zero())?;
    let ev = BatchEvaluator::new(
        &f,
        BatchOp::LipschitzCone {
            alpha: Rational::one(),
            radius: n,
        },
    )?;
    let half = Rational::new(1, 2).unwrap();
    let one = Rational::one();
    let two = Rational::from_int(2);
    let climb = &one / &(beta - &half);
    let dip = &one / &(&two * beta + &one);
    let mut x = &two / &(&two * beta + &one);
    let mut sum = Rational::zero();
    let mut rows = Vec::with_capacity(bumps);
    for index in 1..=bumps {
        let peak_x = &x + &climb;
        x = &peak_x + &dip;
        let peak_value = ev.value(&peak_x)?;
        let zero_value = ev.value(&x)?;
        sum += (&peak_value - &zero_value).abs();
        rows.push(CertificateRow {
            index,
            peak_x,
            peak_value,
            zero_x: x.clone(),
            zero_value,
            partial_sum: sum.clone(),
        });
    }
    Ok(rows)
}
