//! Variation of maximal functions: exact partition lower bounds and the
//! structural (component-wise) computation.

use crate::functions::StepFunction;
use crate::maximal::Side;
use crate::numerics::{ExtendedRational, Rational};

use super::detachment::{classify_with, detachment_set, DetachmentComponent, Shape};
use super::{AnalysisConfig, AnalysisError, Operator};

/// Result of a variation computation over a window.
#[derive(Debug, Clone)]
pub struct VariationReport {
    /// Exact partition sum: a certified lower bound for the true variation.
    pub lower_bound: Rational,
    /// Component-wise value using the monotone / V-shape structure plus the
    /// attachment-set walk and the analytic far-field terms.
    pub structural_value: Option<Rational>,
    pub tolerance: Rational,
    pub partition_size: usize,
    /// Whether the last dyadic refinement increased the sum by less than the
    /// tolerance (rather than stopping at the partition cap).
    pub converged: bool,
}

/// Exact partition sum of a pointwise evaluator: a certified lower bound for
/// the variation of that function.
pub fn variation_lower_bound<E>(
    evaluate: E,
    partition: &[Rational],
) -> Result<Rational, AnalysisError>
where
    E: Fn(&Rational) -> Rational,
{
    if partition.len() < 2 || partition.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalysisError::BadPartition);
    }
    let vals: Vec<Rational> = partition.iter().map(|x| evaluate(x)).collect();
    Ok(vals.windows(2).map(|w| (&w[1] - &w[0]).abs()).sum())
}

/// Structural and partition-sum variation of `M f` over `window`.
///
/// The window must pad the support of `f` by at least one diameter. The
/// structural value sums, per detachment component, the monotone or V-shaped
/// variation of `M f`, adds `|M(edge) - far limit|` for window-clipped
/// components, and walks the attachment set, where the adjusted-normalized
/// `|f|` agrees with `M f` (so a jump across a breakpoint there contributes
/// against the component-endpoint values, not double-counted).
pub fn maximal_variation(
    f: &StepFunction,
    op: &Operator,
    window: (&Rational, &Rational),
    cfg: &AnalysisConfig,
) -> Result<VariationReport, AnalysisError> {
    let (w_lo, w_hi) = window;
    let g = f.absolute_value();
    let d = g.diameter();
    if w_lo >= w_hi {
        return Err(AnalysisError::DegenerateWindow);
    }
    if *w_lo > g.support_min() - &d || *w_hi < g.support_max() + &d {
        return Err(AnalysisError::WindowTooSmall);
    }
    let ev = op.evaluator(f)?;
    let comps: Vec<DetachmentComponent> =
        detachment_set(f, op, window, &cfg.tol, cfg.scan_density)?
            .into_iter()
            .map(|c| classify_with(&ev, c, cfg.probes))
            .collect();

    // component-wise structure
    let mut structural = Rational::zero();
    for c in &comps {
        let vl = c.lo_value().expect("finite window").clone();
        let vr = c.hi_value().expect("finite window").clone();
        match c.shape.expect("classified above") {
            Shape::Monotone => structural += (&vr - &vl).abs(),
            Shape::VShaped => {
                let vertex = c.vertex_point.as_ref().expect("set for V shapes");
                let mv = ev.value(vertex).expect("validated");
                structural += (&vl - &mv).abs() + (&vr - &mv).abs();
            }
            Shape::Undetermined => {
                // no structure theorem applies; fall back to a dense
                // partition sum across the component
                let mut pts = vec![c.lo.finite().unwrap().clone()];
                let p = &c.probe_lo;
                let q = &c.probe_hi;
                if p < q {
                    let m = cfg.probes.max(3);
                    let step = (q - p) / Rational::from_int((m - 1) as i64);
                    for i in 0..m {
                        pts.push(p + &(&step * &Rational::from_int(i as i64)));
                    }
                }
                pts.push(c.hi.finite().unwrap().clone());
                pts.dedup();
                let sum = variation_lower_bound(|x| ev.value(x).expect("validated"), &pts)?;
                structural += sum;
            }
        }
        if c.lo_clipped {
            structural += (&vl - &op.far_value(&g, Side::Left)).abs();
        }
        if c.hi_clipped {
            structural += (&vr - &op.far_value(&g, Side::Right)).abs();
        }
    }

    // attachment-set walk between consecutive components (and the window
    // edges), where M f equals the adjusted-normalized |f|
    let mut cursor: Option<(Rational, Rational)> = if comps.first().map(|c| c.lo_clipped) == Some(true)
    {
        None
    } else {
        Some((w_lo.clone(), ev.value(w_lo).expect("validated")))
    };
    let mut segments: Vec<(Rational, Rational, Rational, Rational)> = Vec::new();
    for c in &comps {
        if let Some((p, mp)) = cursor.take() {
            let q = c.lo.finite().unwrap().clone();
            let mq = c.lo_value().unwrap().clone();
            segments.push((p, mp, q, mq));
        }
        if !c.hi_clipped {
            let q = c.hi.finite().unwrap().clone();
            let mq = c.hi_value().unwrap().clone();
            cursor = Some((q, mq));
        }
    }
    if let Some((p, mp)) = cursor {
        segments.push((p, mp, w_hi.clone(), ev.value(w_hi).expect("validated")));
    }
    // attached beyond the window on either side contributes the step down to
    // the tail value (zero unless the function is attached out to infinity)
    if comps.first().map(|c| c.lo_clipped) != Some(true) {
        structural += (ev.value(w_lo).expect("validated") - g.left_tail().abs()).abs();
    }
    if comps.last().map(|c| c.hi_clipped) != Some(true) {
        structural += (ev.value(w_hi).expect("validated") - g.right_tail().abs()).abs();
    }
    for (p, mp, q, mq) in segments {
        if p >= q {
            continue;
        }
        let right_of_p = g.one_sided_limits(&p).1;
        let left_of_q = g.one_sided_limits(&q).0;
        let mut walk = (mp - &right_of_p).abs();
        let mut prev = right_of_p;
        for bp in g.breakpoints() {
            if *bp > p && *bp < q {
                let (l, r) = g.one_sided_limits(bp);
                debug_assert_eq!(l, prev);
                walk += (&r - &l).abs();
                prev = r;
            }
        }
        walk += (&left_of_q - &prev).abs();
        walk += (mq - left_of_q).abs();
        structural += walk;
    }

    // partition lower bound with dyadic refinement
    let mut partition: Vec<Rational> = vec![w_lo.clone(), w_hi.clone()];
    for bp in g.breakpoints() {
        if bp > w_lo && bp < w_hi {
            partition.push(bp.clone());
        }
    }
    for c in &comps {
        for e in [&c.lo, &c.hi] {
            if let ExtendedRational::Finite(x) = e {
                if x > w_lo && x < w_hi {
                    partition.push(x.clone());
                }
            }
        }
        if let Some(v) = &c.vertex_point {
            if v > w_lo && v < w_hi {
                partition.push(v.clone());
            }
        }
    }
    partition.sort();
    partition.dedup();
    let eval_pt = |x: &Rational| ev.value(x).expect("validated");
    let mut sum = variation_lower_bound(&eval_pt, &partition)?;
    let mut converged = false;
    while partition.len() <= cfg.partition_cap {
        let mut refined = Vec::with_capacity(partition.len() * 2 - 1);
        for w in partition.windows(2) {
            refined.push(w[0].clone());
            refined.push(w[0].midpoint(&w[1]));
        }
        refined.push(partition.last().unwrap().clone());
        let next = variation_lower_bound(&eval_pt, &refined)?;
        let increment = &next - &sum;
        partition = refined;
        sum = next;
        if increment < cfg.tol {
            converged = true;
            break;
        }
    }

    Ok(VariationReport {
        lower_bound: sum,
        structural_value: Some(structural),
        tolerance: cfg.tol.clone(),
        partition_size: partition.len(),
        converged,
    })
}

/// Certified lower bound for the variation ratio
/// `V(M^alpha f) / V(f)` of the nontangential operator.
pub fn balpha_ratio(
    f: &StepFunction,
    alpha: &Rational,
    window: (&Rational, &Rational),
    cfg: &AnalysisConfig,
) -> Result<Rational, AnalysisError> {
    let tv = f.total_variation();
    if tv.is_zero() {
        return Err(AnalysisError::ConstantFunction);
    }
    let report = maximal_variation(
        f,
        &Operator::Nontangential {
            alpha: alpha.clone(),
        },
        window,
        cfg,
    )?;
    Ok(report.lower_bound / tv)
}
