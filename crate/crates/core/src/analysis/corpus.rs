//! Deterministic seeded corpora for the property and verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functions::{PiecewiseLinearFunction, StepFunction};
use crate::numerics::Rational;

const DENOMS: [i64; 8] = [1, 2, 3, 4, 8, 16, 32, 64];

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let den = *DENOMS.choose(rng).expect("nonempty");
    let num = rng.gen_range(-bound * den..=bound * den);
    Rational::new(num, den).expect("den > 0")
}

/// Deterministic nonconstant step function: at most `max_pieces` pieces,
/// breakpoints within `[-span_bound, span_bound]`, values within
/// `[-value_bound, value_bound]`, denominators at most 64, zero tails.
pub fn random_step_function(
    seed: u64,
    max_pieces: usize,
    value_bound: i64,
    span_bound: i64,
) -> StepFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pieces = rng.gen_range(1..=max_pieces.max(1));
        let mut bps: Vec<Rational> = (0..=pieces)
            .map(|_| random_rational(&mut rng, span_bound))
            .collect();
        bps.sort();
        bps.dedup();
        if bps.len() < 2 {
            continue;
        }
        let values: Vec<Rational> = (0..bps.len() - 1)
            .map(|_| random_rational(&mut rng, value_bound))
            .collect();
        let f = StepFunction::new(bps, values, Rational::zero(), Rational::zero())
            .expect("sorted, deduplicated breakpoints");
        if f.total_variation().is_zero() {
            continue;
        }
        return f;
    }
}

/// Deterministic nonnegative piecewise-linear truncation radius over
/// `window` with Lipschitz constant at most `lip_bound` (exactly attained on
/// one segment for every fourth seed, so critical slopes appear in every
/// corpus).
pub fn random_lipschitz_n(
    seed: u64,
    lip_bound: &Rational,
    window: (&Rational, &Rational),
) -> PiecewiseLinearFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w_lo, w_hi) = window;
    let nodes = rng.gen_range(4..=8usize);
    let span = w_hi - w_lo;
    let mut xs: Vec<Rational> = (0..nodes)
        .map(|_| {
            let num = rng.gen_range(0..=16 * nodes as i64);
            w_lo + &(&span * &Rational::new(num, 16 * nodes as i64).unwrap())
        })
        .collect();
    xs.sort();
    xs.dedup();
    if xs.len() < 2 {
        xs = vec![w_lo.clone(), w_hi.clone()];
    }
    let forced_segment = if seed % 4 == 0 && lip_bound.is_positive() {
        Some(rng.gen_range(0..xs.len() - 1))
    } else {
        None
    };
    let mut ys = vec![Rational::new(rng.gen_range(0..=32), 16).unwrap()];
    for i in 0..xs.len() - 1 {
        let dx = &xs[i + 1] - &xs[i];
        let y_next = if forced_segment == Some(i) {
            // exact slope +lip_bound; stays nonnegative
            ys[i].clone() + lip_bound * &dx
        } else {
            let q = Rational::new(rng.gen_range(-16..=16), 16).unwrap();
            let raw = ys[i].clone() + q * lip_bound * &dx;
            raw.max(Rational::zero())
        };
        ys.push(y_next);
    }
    PiecewiseLinearFunction::new(xs, ys).expect("sorted nodes")
}
