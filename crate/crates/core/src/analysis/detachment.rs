//! Detachment sets `{x : M f(x) > |f|(x)}` and the monotone / V-shaped
//! classification of the maximal function on their components.

use crate::functions::StepFunction;
use crate::maximal::BatchEvaluator;
use crate::numerics::{minimize_unimodal, ExtendedRational, Rational};

use super::{shrink_to_boundary, AnalysisError, Operator};

/// Shape of the maximal function on one detachment component. `Undetermined`
/// is not an error: it records that the sampled restriction is neither
/// monotone nor V-shaped, which is exactly the small-angle phenomenon (an
/// interior local maximum without attachment).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Monotone,
    VShaped,
    Undetermined,
}

impl Shape {
    pub fn as_str(&self) -> &'static str {
        match self {
            Shape::Monotone => "monotone",
            Shape::VShaped => "v-shaped",
            Shape::Undetermined => "undetermined",
        }
    }
}

/// One maximal open interval of the detachment set, bracketed to the scan
/// tolerance. `lo`/`hi` are the attached-side bracket ends (exact when the
/// true endpoint is a breakpoint); `probe_lo`/`probe_hi` are certified
/// detached points used for interior sampling.
#[derive(Debug, Clone)]
pub struct DetachmentComponent {
    pub lo: ExtendedRational,
    pub hi: ExtendedRational,
    /// True when the scan window truncated the component on that side.
    pub lo_clipped: bool,
    pub hi_clipped: bool,
    pub shape: Option<Shape>,
    /// Location of the V-shape minimum, when classified as such.
    pub vertex_point: Option<Rational>,
    /// Maximal-function values at `lo` and `hi`.
    pub endpoint_values: (Option<Rational>, Option<Rational>),
    pub(crate) probe_lo: Rational,
    pub(crate) probe_hi: Rational,
}

impl DetachmentComponent {
    pub fn lo_value(&self) -> Option<&Rational> {
        self.endpoint_values.0.as_ref()
    }

    pub fn hi_value(&self) -> Option<&Rational> {
        self.endpoint_values.1.as_ref()
    }

    /// Whether `x` lies inside the certified bracket of the component.
    pub fn contains(&self, x: &Rational) -> bool {
        match (&self.lo, &self.hi) {
            (ExtendedRational::Finite(lo), ExtendedRational::Finite(hi)) => lo < x && x < hi,
            _ => false,
        }
    }
}

pub(crate) fn detached(ev: &BatchEvaluator, g: &StepFunction, x: &Rational) -> bool {
    ev.value(x).expect("radius validated before scanning") > g.limsup_at(x)
}

/// Components of `{M f > |f|}` inside `window`, endpoints located by
/// bisection to width `tol` from an initial sign scan at all breakpoints
/// plus `scan_density` equispaced points per gap.
pub fn detachment_set(
    f: &StepFunction,
    op: &Operator,
    window: (&Rational, &Rational),
    tol: &Rational,
    scan_density: usize,
) -> Result<Vec<DetachmentComponent>, AnalysisError> {
    let (w_lo, w_hi) = window;
    if w_lo >= w_hi {
        return Err(AnalysisError::DegenerateWindow);
    }
    if !tol.is_positive() {
        return Err(AnalysisError::NonpositiveTolerance);
    }
    let g = f.absolute_value();
    let ev = op.evaluator(f)?;

    // scan grid: window edges, breakpoints inside, equispaced fill-in
    let mut anchors: Vec<Rational> = vec![w_lo.clone()];
    for bp in g.breakpoints() {
        if bp > w_lo && bp < w_hi {
            anchors.push(bp.clone());
        }
    }
    anchors.push(w_hi.clone());
    let mut xs: Vec<Rational> = Vec::new();
    for pair in anchors.windows(2) {
        let (p, q) = (&pair[0], &pair[1]);
        xs.push(p.clone());
        let steps = scan_density + 1;
        let step = (q - p) / Rational::from_int(steps as i64);
        for i in 1..steps {
            xs.push(p + &(&step * &Rational::from_int(i as i64)));
        }
    }
    xs.push(w_hi.clone());

    let status: Vec<bool> = xs.iter().map(|x| detached(&ev, &g, x)).collect();
    let snaps = g.breakpoints();

    let mut out = Vec::new();
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
        // left boundary
        let (lo, lo_clipped, probe_lo) = if i == 0 {
            (xs[0].clone(), true, xs[0].clone())
        } else {
            let (holds, fails) = shrink_to_boundary(
                |x| detached(&ev, &g, x),
                xs[i].clone(),
                xs[i - 1].clone(),
                snaps,
                tol,
            );
            (fails, false, holds)
        };
        // right boundary
        let (hi, hi_clipped, probe_hi) = if j == xs.len() - 1 {
            (xs[j].clone(), true, xs[j].clone())
        } else {
            let (holds, fails) = shrink_to_boundary(
                |x| detached(&ev, &g, x),
                xs[j].clone(),
                xs[j + 1].clone(),
                snaps,
                tol,
            );
            (fails, false, holds)
        };
        let lo_value = ev.value(&lo).expect("validated");
        let hi_value = ev.value(&hi).expect("validated");
        out.push(DetachmentComponent {
            lo: ExtendedRational::Finite(lo),
            hi: ExtendedRational::Finite(hi),
            lo_clipped,
            hi_clipped,
            shape: None,
            vertex_point: None,
            endpoint_values: (Some(lo_value), Some(hi_value)),
            probe_lo,
            probe_hi,
        });
        i = j + 1;
    }
    Ok(out)
}

/// Classifies the maximal function on a component by exact comparison of
/// `probes` samples: monotone, V-shaped (with the vertex located by ternary
/// search), or undetermined when the samples rise and then fall somewhere
/// (an interior local maximum, impossible for cone openings >= 1/3).
pub fn classify_shape(
    f: &StepFunction,
    op: &Operator,
    component: DetachmentComponent,
    probes: usize,
) -> Result<DetachmentComponent, AnalysisError> {
    let ev = op.evaluator(f)?;
    Ok(classify_with(&ev, component, probes))
}

pub(crate) fn classify_with(
    ev: &BatchEvaluator,
    mut component: DetachmentComponent,
    probes: usize,
) -> DetachmentComponent {
    let p = component.probe_lo.clone();
    let q = component.probe_hi.clone();
    if p >= q {
        // no observable interior: a component narrower than the tolerance
        component.shape = Some(Shape::Monotone);
        return component;
    }
    let m = probes.max(3);
    let step = (&q - &p) / Rational::from_int((m - 1) as i64);
    // interior probes snap to the dyadic lattice so denominators stay small
    // on brackets refined to high tolerance
    let mut xs: Vec<Rational> = Vec::with_capacity(m);
    xs.push(p.clone());
    for i in 1..m - 1 {
        let raw = (&p + &(&step * &Rational::from_int(i as i64))).round_to_pow2(20);
        if raw > p && raw < q {
            xs.push(raw);
        }
    }
    xs.push(q.clone());
    xs.dedup();
    let m = xs.len();
    if m < 3 {
        component.shape = Some(Shape::Monotone);
        return component;
    }
    let vals: Vec<Rational> = xs
        .iter()
        .map(|x| ev.value(x).expect("validated"))
        .collect();
    let first_ascent = vals.windows(2).position(|w| w[0] < w[1]);
    let last_descent = vals
        .windows(2)
        .rposition(|w| w[0] > w[1]);
    match (first_ascent, last_descent) {
        (None, _) | (_, None) => {
            component.shape = Some(Shape::Monotone);
        }
        (Some(fa), Some(ld)) if ld < fa => {
            component.shape = Some(Shape::VShaped);
            let min_idx = (0..m)
                .min_by(|&a, &b| vals[a].cmp(&vals[b]))
                .expect("probes nonempty");
            let lo_b = if min_idx == 0 { &p } else { &xs[min_idx - 1] };
            let hi_b = if min_idx + 1 == m { &q } else { &xs[min_idx + 1] };
            let (vertex, _) = minimize_unimodal(
                |x| ev.value(x).expect("validated"),
                lo_b,
                hi_b,
                48,
            )
            .expect("bracket is nonempty");
            component.vertex_point = Some(vertex);
        }
        _ => {
            component.shape = Some(Shape::Undetermined);
        }
    }
    component
}
