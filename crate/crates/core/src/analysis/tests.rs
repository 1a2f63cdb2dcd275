use super::*;
use crate::functions::Normalization;
use crate::maximal::eval_nontangential;
use crate::numerics::ExtendedRational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn ri(n: i64) -> Rational {
    Rational::from_int(n)
}

fn chi() -> StepFunction {
    StepFunction::indicator(ri(-1), ri(0)).unwrap()
}

fn cone(alpha: Rational) -> Operator {
    Operator::Nontangential { alpha }
}

// closed form for the uncentered maximal function of chi_(-1,0):
// 1 on [-1, 0], 1/(1+x) to the right, 1/(-x) to the left
fn uncentered_chi(x: &Rational) -> Rational {
    if *x > ri(0) {
        ri(1) / (ri(1) + x)
    } else if *x < ri(-1) {
        ri(1) / -x
    } else {
        ri(1)
    }
}

#[test]
fn variation_lower_bound_examples() {
    let f = chi();
    let sum = variation_lower_bound(
        |x| f.normalized_value(x, &Normalization::One).unwrap(),
        &[ri(-2), r(-1, 2), r(1, 2)],
    )
    .unwrap();
    assert_eq!(sum, ri(2));

    let constant = variation_lower_bound(|_| ri(7), &[ri(0), ri(1)]).unwrap();
    assert_eq!(constant, ri(0));

    // closed form cross-checked against the engine
    let sum_m = variation_lower_bound(&uncentered_chi, &[ri(-2), r(-1, 2), ri(2)]).unwrap();
    assert_eq!(sum_m, r(7, 6));
    for x in [ri(-2), r(-1, 2), ri(2)] {
        assert_eq!(
            eval_nontangential(&chi(), &ri(1), &x).unwrap().value,
            uncentered_chi(&x)
        );
    }

    assert_eq!(
        variation_lower_bound(|_| ri(0), &[ri(1), ri(0)]).unwrap_err(),
        AnalysisError::BadPartition
    );
}

#[test]
fn detachment_of_chi_under_the_uncentered_operator() {
    let f = chi();
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(
        &f,
        &cone(ri(1)),
        (&ri(-10), &ri(10)),
        &cfg.tol,
        cfg.scan_density,
    )
    .unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps[0].lo_clipped && !comps[0].hi_clipped);
    assert_eq!(comps[0].lo, ExtendedRational::Finite(ri(-10)));
    // breakpoint snapping makes the inner endpoints exact
    assert_eq!(comps[0].hi, ExtendedRational::Finite(ri(-1)));
    assert_eq!(comps[0].hi_value(), Some(&ri(1)));
    assert!(!comps[1].lo_clipped && comps[1].hi_clipped);
    assert_eq!(comps[1].lo, ExtendedRational::Finite(ri(0)));
    assert_eq!(comps[1].hi, ExtendedRational::Finite(ri(10)));
    assert_eq!(comps[1].lo_value(), Some(&ri(1)));
    assert_eq!(comps[1].hi_value(), Some(&r(1, 11)));
}

#[test]
fn detachment_of_a_constant_is_empty() {
    let f = StepFunction::constant(ri(3));
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(
        &f,
        &cone(r(1, 2)),
        (&ri(-5), &ri(5)),
        &cfg.tol,
        cfg.scan_density,
    )
    .unwrap();
    assert!(comps.is_empty());
}

#[test]
fn boundary_staircase_point_is_attached() {
    // f = chi_(0, 1/8] + (1/2) chi_(1/8, 1/4] + chi_(1/4, 1] at angle 1/2:
    // under the raw normalization the point 1/4 would look detached, but the
    // maximal value stays below the limsup, so the adjusted normalization
    // attaches it.
    let alpha = r(1, 2);
    let f = StepFunction::new(
        vec![ri(0), r(1, 8), r(1, 4), ri(1)],
        vec![ri(1), r(1, 2), ri(1)],
        ri(0),
        ri(0),
    )
    .unwrap();
    let x = r(1, 4);
    let m = eval_nontangential(&f, &alpha, &x).unwrap().value;
    let n_alpha = f
        .normalized_value(&x, &Normalization::Alpha(alpha.clone()))
        .unwrap();
    assert_eq!(n_alpha, r(7, 8));
    assert!(m > n_alpha, "raw normalization would detach the point");
    assert!(m <= ri(1), "limsup bounds the maximal value");
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(&f, &cone(alpha), (&ri(-3), &ri(4)), &cfg.tol, 16).unwrap();
    for c in &comps {
        assert!(!c.contains(&x), "1/4 must not lie inside a component");
    }
}

#[test]
fn classify_monotone_component() {
    let f = chi();
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(
        &f,
        &cone(ri(1)),
        (&ri(-10), &ri(10)),
        &cfg.tol,
        cfg.scan_density,
    )
    .unwrap();
    let right = classify_shape(&f, &cone(ri(1)), comps[1].clone(), 65).unwrap();
    assert_eq!(right.shape, Some(Shape::Monotone));
}

#[test]
fn classify_v_shape_between_two_bumps() {
    let f = StepFunction::new(
        vec![ri(-2), ri(-1), ri(1), ri(2)],
        vec![ri(1), ri(0), ri(1)],
        ri(0),
        ri(0),
    )
    .unwrap();
    let op = cone(ri(1));
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(&f, &op, (&ri(-9), &ri(9)), &cfg.tol, cfg.scan_density).unwrap();
    let middle = comps
        .iter()
        .find(|c| c.contains(&ri(0)))
        .expect("gap between the bumps is detached")
        .clone();
    assert_eq!(middle.lo, ExtendedRational::Finite(ri(-1)));
    assert_eq!(middle.hi, ExtendedRational::Finite(ri(1)));
    let classified = classify_shape(&f, &op, middle, 129).unwrap();
    assert_eq!(classified.shape, Some(Shape::VShaped));
    let vertex = classified.vertex_point.unwrap();
    assert!(vertex.abs() <= r(1, 1000), "symmetric valley dips at 0");
}

#[test]
fn classify_spike_pair_component_as_undetermined_below_the_critical_angle() {
    let f = make_spike_pair(1000).unwrap();
    let op = cone(r(1, 5));
    let cfg = AnalysisConfig::default();
    let comps = detachment_set(&f, &op, (&ri(-2), &ri(3)), &cfg.tol, cfg.scan_density).unwrap();
    let middle = comps
        .iter()
        .find(|c| c.contains(&r(1, 2)))
        .expect("middle gap is detached")
        .clone();
    let classified = classify_shape(&f, &op, middle, 257).unwrap();
    assert_eq!(classified.shape, Some(Shape::Undetermined));
}

#[test]
fn maximal_variation_of_chi_is_exactly_two() {
    let f = chi();
    let cfg = AnalysisConfig::default();
    for alpha in [r(1, 3), r(1, 2), ri(1), ri(2)] {
        let (w_lo, w_hi) = default_window(&f);
        let report =
            maximal_variation(&f, &cone(alpha.clone()), (&w_lo, &w_hi), &cfg).unwrap();
        assert_eq!(
            report.structural_value,
            Some(ri(2)),
            "angle {alpha}: endpoint snapping makes the structural value exact"
        );
        assert!(report.lower_bound <= ri(2));
        assert!(report.converged);
    }
}

#[test]
fn maximal_variation_of_a_constant_is_zero() {
    let f = StepFunction::constant(ri(4));
    let cfg = AnalysisConfig::default();
    let (w_lo, w_hi) = default_window(&f);
    let report = maximal_variation(&f, &cone(ri(1)), (&w_lo, &w_hi), &cfg).unwrap();
    assert_eq!(report.structural_value, Some(ri(0)));
    assert_eq!(report.lower_bound, ri(0));
}

#[test]
fn maximal_variation_rejects_narrow_windows() {
    let f = chi();
    let cfg = AnalysisConfig::default();
    let err = maximal_variation(&f, &cone(ri(1)), (&r(-3, 2), &ri(1)), &cfg).unwrap_err();
    assert_eq!(err, AnalysisError::WindowTooSmall);
}

#[test]
fn spike_pair_examples() {
    let f = make_spike_pair(4).unwrap();
    assert_eq!(f.breakpoints(), &[ri(0), r(1, 4), r(3, 4), ri(1)]);
    assert_eq!(f.values(), &[ri(4), ri(0), ri(4)]);
    assert_eq!(f.l1_norm(), ExtendedRational::Finite(ri(2)));
    assert_eq!(f.total_variation(), ri(16));
    for n in [2, 3, 10, 1000] {
        let g = make_spike_pair(n).unwrap();
        assert_eq!(g.l1_norm(), ExtendedRational::Finite(ri(2)), "n = {n}");
        if n >= 3 {
            assert_eq!(g.total_variation(), ri(4 * n), "n = {n}");
        }
    }
    assert_eq!(make_spike_pair(1).unwrap_err(), AnalysisError::SpikeTooSmall);
}

#[test]
fn divergence_radius_examples() {
    let n = make_divergence_n(&r(3, 4), 2).unwrap();
    let (xs, ys) = n.nodes();
    assert_eq!(&xs[..4], &[ri(0), r(4, 5), r(24, 5), r(26, 5)]);
    assert_eq!(&ys[..4], &[ri(1), r(2, 5), r(29, 10), r(13, 5)]);
    assert_eq!(n.lipschitz_constant(), r(3, 4));
    assert!(n.is_nonnegative());
    // the peaks form an arithmetic progression with gap 22/5
    assert_eq!(&xs[4] - &xs[2], r(22, 5));
    assert_eq!(
        make_divergence_n(&r(1, 2), 1).unwrap_err(),
        AnalysisError::SlopeTooSmall
    );
}

#[test]
fn divergence_certificate_first_bumps() {
    let rows = divergence_certificate(&r(3, 4), 3).unwrap();
    assert_eq!(rows[0].peak_x, r(24, 5));
    assert_eq!(rows[0].peak_value, r(5, 29));
    assert_eq!(rows[0].zero_x, r(26, 5));
    assert_eq!(rows[0].zero_value, ri(0));
    assert_eq!(rows[0].partial_sum, r(5, 29));
    // peaks satisfy value = 1/(peak_x + 1) exactly
    for row in &rows {
        assert_eq!(row.peak_value, ri(1) / (&row.peak_x + &ri(1)));
        assert_eq!(row.zero_value, ri(0));
    }
    assert_eq!(
        rows[2].partial_sum,
        r(5, 29) + r(5, 51) + r(5, 73)
    );
}

#[test]
fn weak_type_ratio_examples() {
    let f = chi();
    let tol = Rational::pow2(-40);
    // superlevel set at level 1/2 is (-2, 1), measure 3
    let ratio = weak_type_ratio(&f, &ri(1), &r(1, 2), None, 256, &tol).unwrap();
    assert!((ratio - r(3, 2)).abs() <= Rational::pow2(-30));
    // nothing above the supremum
    let empty = weak_type_ratio(&f, &ri(1), &ri(5), None, 256, &tol).unwrap();
    assert_eq!(empty, ri(0));
    // infinite mass is rejected
    let tailed = StepFunction::new(vec![ri(0)], vec![], ri(1), ri(0)).unwrap();
    assert_eq!(
        weak_type_ratio(&tailed, &ri(1), &ri(1), None, 64, &tol).unwrap_err(),
        AnalysisError::BadL1
    );
    assert_eq!(
        weak_type_ratio(&f, &ri(1), &ri(0), None, 64, &tol).unwrap_err(),
        AnalysisError::NonpositiveLambda
    );
}

#[test]
fn balpha_ratio_of_chi_is_one() {
    let f = chi();
    let cfg = AnalysisConfig::default();
    // the partition lower bound only sees the window, and the maximal
    // function decays like 1/x past the support, so a wide window is needed
    // to certify the ratio close to 1
    let w = Rational::pow2(20);
    for alpha in [r(1, 2), ri(2)] {
        let ratio = balpha_ratio(&f, &alpha, (&-&w, &w), &cfg).unwrap();
        assert!(ratio <= ri(1), "angle {alpha}");
        assert!(ratio >= ri(1) - Rational::pow2(-18), "angle {alpha}: got {ratio}");
    }
    let (w_lo, w_hi) = default_window(&f);
    assert_eq!(
        balpha_ratio(&StepFunction::constant(ri(1)), &ri(1), (&w_lo, &w_hi), &cfg).unwrap_err(),
        AnalysisError::ConstantFunction
    );
}

#[test]
fn bpl_examples() {
    let f = chi();
    assert!(verify_bpl(&f, &ri(0), &r(1, 2), &ri(1)).unwrap());
    // boundary case |x - y| = t: the surviving projection is the point itself
    assert!(verify_bpl(&f, &ri(0), &ri(1), &ri(1)).unwrap());
    assert_eq!(
        verify_bpl(&f, &ri(0), &ri(0), &ri(1)).unwrap_err(),
        AnalysisError::BadProjectionPoint
    );
}

#[test]
fn square_lemma_examples() {
    let f = chi();
    assert!(verify_square_lemma(&f, &r(1, 2), &ri(0)).unwrap());
    assert!(verify_square_lemma(&StepFunction::constant(ri(2)), &ri(1), &r(7, 5)).unwrap());
    assert!(verify_square_lemma(&f, &ri(2), &r(-5, 3)).unwrap());
}

#[test]
fn corpus_is_deterministic_and_mostly_nonmonotone() {
    let a = random_step_function(0, 12, 4, 8);
    let b = random_step_function(0, 12, 4, 8);
    assert_eq!(a, b);
    let mut nonmonotone = 0;
    for seed in 0..200 {
        let f = random_step_function(seed, 12, 4, 8);
        assert!(f.total_variation().is_positive());
        assert!(f.breakpoints().len() >= 2);
        let mut seq = vec![f.left_tail().clone()];
        seq.extend(f.values().iter().cloned());
        seq.push(f.right_tail().clone());
        let incr = seq.windows(2).all(|w| w[0] <= w[1]);
        let decr = seq.windows(2).all(|w| w[0] >= w[1]);
        if !incr && !decr {
            nonmonotone += 1;
        }
    }
    assert!(nonmonotone >= 150, "only {nonmonotone} nonmonotone members");
}

#[test]
fn lipschitz_corpus_respects_the_bound() {
    let half = r(1, 2);
    let window = (ri(-6), ri(6));
    let mut exact = 0;
    for seed in 0..40 {
        let n = random_lipschitz_n(seed, &half, (&window.0, &window.1));
        assert!(n.is_nonnegative(), "seed {seed}");
        let lip = n.lipschitz_constant();
        assert!(lip <= half, "seed {seed}");
        if lip == half {
            exact += 1;
        }
    }
    assert!(exact >= 8, "critical slope must appear: got {exact}");
    let a = random_lipschitz_n(3, &half, (&window.0, &window.1));
    let b = random_lipschitz_n(3, &half, (&window.0, &window.1));
    assert_eq!(a, b);
    let zero = random_lipschitz_n(5, &ri(0), (&window.0, &window.1));
    assert_eq!(zero.lipschitz_constant(), ri(0));
}

#[test]
fn single_peak_functions_attain_the_variation_bound() {
    // nonnegative single-peak step functions with equal tails are extremizers
    // for every angle above 1/3
    let cfg = AnalysisConfig::default();
    let peaks = [
        StepFunction::new(
            vec![ri(-1), ri(0), ri(1)],
            vec![ri(2), ri(3)],
            ri(0),
            ri(0),
        )
        .unwrap(),
        StepFunction::new(
            vec![ri(-2), ri(-1), ri(1), ri(3)],
            vec![ri(1), ri(4), ri(2)],
            r(1, 2),
            r(1, 2),
        )
        .unwrap(),
    ];
    for f in &peaks {
        let (w_lo, w_hi) = default_window(f);
        for alpha in [r(1, 2), ri(1)] {
            let report =
                maximal_variation(f, &cone(alpha.clone()), (&w_lo, &w_hi), &cfg).unwrap();
            let tv = f.total_variation();
            let diff = (report.structural_value.clone().unwrap() - &tv).abs();
            assert!(
                diff <= r(1, 1_000_000),
                "angle {alpha}: structural {:?} vs variation {tv}",
                report.structural_value
            );
        }
    }
}

#[test]
fn lower_bound_stays_below_structural_value() {
    // certified partition sums never exceed the structural value beyond the
    // tolerance; a false Monotone from undersampling would show up here
    let cfg = AnalysisConfig {
        partition_cap: 512,
        ..AnalysisConfig::default()
    };
    for seed in [1, 5, 14, 27, 40] {
        let f = random_step_function(seed, 8, 3, 5);
        let (w_lo, w_hi) = default_window(&f);
        for alpha in [r(1, 2), ri(1)] {
            let report =
                maximal_variation(&f, &cone(alpha.clone()), (&w_lo, &w_hi), &cfg).unwrap();
            let s = report.structural_value.unwrap();
            assert!(
                report.lower_bound <= &s + &cfg.tol,
                "seed {seed}, angle {alpha}: lower {} vs structural {}",
                report.lower_bound,
                s
            );
        }
    }
}

#[test]
fn component_endpoints_are_attached() {
    // at non-clipped endpoints the maximal value equals the adjusted
    // normalization exactly: the endpoint is the attached-side bracket end,
    // where the maximal value no longer exceeds the limsup
    let tol = Rational::pow2(-30);
    for seed in [2, 9, 21, 33] {
        let f = random_step_function(seed, 8, 3, 5);
        let g = f.absolute_value();
        let (w_lo, w_hi) = default_window(&f);
        for alpha in [r(1, 2), ri(1)] {
            let op = cone(alpha.clone());
            let ev = op.evaluator(&f).unwrap();
            let comps = detachment_set(&f, &op, (&w_lo, &w_hi), &tol, 6).unwrap();
            for c in comps {
                for (end, clipped) in [(&c.lo, c.lo_clipped), (&c.hi, c.hi_clipped)] {
                    if clipped {
                        continue;
                    }
                    let x = end.finite().unwrap();
                    let m = ev.value(x).unwrap();
                    assert!(
                        m <= g.limsup_at(x),
                        "seed {seed}, angle {alpha}: endpoint {x} detached"
                    );
                }
            }
        }
    }
}

#[test]
fn variation_of_maximal_function_decreases_in_the_angle() {
    let cfg = AnalysisConfig {
        partition_cap: 512,
        ..AnalysisConfig::default()
    };
    for seed in [3, 11, 19] {
        let f = random_step_function(seed, 6, 3, 4);
        let (w_lo, w_hi) = default_window(&f);
        let small = maximal_variation(&f, &cone(r(1, 3)), (&w_lo, &w_hi), &cfg)
            .unwrap()
            .structural_value
            .unwrap();
        let large = maximal_variation(&f, &cone(ri(1)), (&w_lo, &w_hi), &cfg)
            .unwrap()
            .structural_value
            .unwrap();
        let slack = &cfg.tol + &cfg.tol;
        assert!(large <= small + slack, "seed {seed}");
    }
}
