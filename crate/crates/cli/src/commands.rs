//! Subcommand implementations.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _, Result};

use maxbv::analysis::{
    classify_shape, default_window, detachment_set, divergence_certificate, make_spike_pair,
    maximal_superlevel_measure, maximal_variation, weak_type_ratio, AnalysisConfig, Operator,
};
use maxbv::io::{parse_radius, parse_step_function};
use maxbv::maximal::{
    eval_diamond, eval_lipschitz_truncated, eval_mixed, eval_nontangential, eval_one_sided,
    eval_uncentered_truncated, EvalResult, Side, Witness,
};
use maxbv::numerics::{rational_parse, Rational};
use maxbv::verify::{run_all, run_suite, SuiteReport, SUITES};
use maxbv::{PiecewiseLinearFunction, StepFunction};

use crate::output::{dec, Format, Grid, Record};
use crate::{Command, CounterexampleCommand, OperatorArg, OperatorFlags, SideArg};

pub struct Context {
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub window: Option<String>,
    pub tol: Option<String>,
}

pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Context {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn window_override(&self) -> Result<Option<(Rational, Rational)>> {
        match &self.window {
            None => Ok(None),
            Some(spec) => {
                let (lo, hi) = spec
                    .split_once(':')
                    .ok_or_else(|| anyhow!("--window expects LO:HI"))?;
                let lo = rational_parse(lo).context("--window low endpoint")?;
                let hi = rational_parse(hi).context("--window high endpoint")?;
                if lo >= hi {
                    bail!("--window endpoints must be increasing");
                }
                Ok(Some((lo, hi)))
            }
        }
    }

    fn config(&self) -> Result<AnalysisConfig> {
        let mut cfg = AnalysisConfig::default();
        if let Some(t) = &self.tol {
            let tol = rational_parse(t).context("--tol")?;
            if !tol.is_positive() {
                bail!("--tol must be positive");
            }
            cfg.tol = tol;
        }
        Ok(cfg)
    }
}

fn load_step(path: &PathBuf) -> Result<StepFunction> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_step_function(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_radius(path: &PathBuf) -> Result<PiecewiseLinearFunction> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_radius(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_flag(name: &str, value: &Option<String>) -> Result<Rational> {
    let raw = value
        .as_ref()
        .ok_or_else(|| anyhow!("{name} is required for this operator"))?;
    rational_parse(raw).with_context(|| name.to_string())
}

impl OperatorFlags {
    /// Operator for the analysis commands (detachment / variation / sweep).
    fn analysis_operator(&self) -> Result<(Operator, Option<Rational>)> {
        match self.operator {
            OperatorArg::Cone => {
                let alpha = parse_flag("--alpha", &self.alpha)?;
                Ok((Operator::Nontangential { alpha }, None))
            }
            OperatorArg::Truncated => {
                let radius = parse_flag("--truncation", &self.truncation)?;
                Ok((Operator::UncenteredTruncated { radius }, None))
            }
            OperatorArg::Lipschitz => {
                let n = load_radius(self.lipschitz.as_ref().ok_or_else(|| {
                    anyhow!("--lipschitz FILE is required for this operator")
                })?)?;
                let lip = n.lipschitz_constant();
                Ok((Operator::LipschitzTruncated { radius: n }, Some(lip)))
            }
            OperatorArg::Mixed => {
                let alpha = parse_flag("--alpha", &self.alpha)?;
                let n = load_radius(self.lipschitz.as_ref().ok_or_else(|| {
                    anyhow!("--lipschitz FILE is required for this operator")
                })?)?;
                let lip = n.lipschitz_constant();
                Ok((Operator::Mixed { alpha, radius: n }, Some(lip)))
            }
            OperatorArg::Diamond | OperatorArg::OneSided => {
                bail!("this command supports the cone, truncated, lipschitz, and mixed operators")
            }
        }
    }

    fn describe(&self) -> &'static str {
        match self.operator {
            OperatorArg::Cone => "cone",
            OperatorArg::Truncated => "truncated",
            OperatorArg::Diamond => "diamond",
            OperatorArg::OneSided => "one-sided",
            OperatorArg::Lipschitz => "lipschitz",
            OperatorArg::Mixed => "mixed",
        }
    }
}

pub fn run(ctx: &Context, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Eval { operator, x, input } => eval_command(ctx, operator, x, input),
        Command::Variation { input } => variation_command(ctx, input),
        Command::MaximalVariation { operator, input } => {
            maximal_variation_command(ctx, operator, input)
        }
        Command::Detachment { operator, input } => detachment_command(ctx, operator, input),
        Command::Counterexample { which } => counterexample_command(ctx, which),
        Command::Sweep { input, alphas } => sweep_command(ctx, input, alphas),
        Command::Weaktype {
            input,
            alpha,
            lambda,
        } => weaktype_command(ctx, input, alpha, lambda),
        Command::Verify {
            suite,
            inject_failure,
        } => verify_command(ctx, suite, *inject_failure),
    }
}

fn witness_string(w: &Witness) -> String {
    match w {
        Witness::Interval(a, b) => format!("({a}, {b})"),
        Witness::NormalizationFloor => "normalization floor (t -> 0)".to_string(),
        Witness::AsymptoticTail => "asymptotic tail (t -> infinity)".to_string(),
    }
}

fn eval_command(
    ctx: &Context,
    flags: &OperatorFlags,
    x: &str,
    input: &PathBuf,
) -> Result<Outcome> {
    let f = load_step(input)?;
    let x = rational_parse(x).context("--x")?;
    let mut record = Record::new();
    record.push("operator", flags.describe());
    let mut radius_echo: Option<Rational> = None;
    let result: EvalResult = match flags.operator {
        OperatorArg::Cone => {
            let alpha = parse_flag("--alpha", &flags.alpha)?;
            record.push("alpha", alpha.to_string());
            eval_nontangential(&f, &alpha, &x)?
        }
        OperatorArg::Truncated => {
            let radius = parse_flag("--truncation", &flags.truncation)?;
            record.push("truncation", radius.to_string());
            eval_uncentered_truncated(&f, &radius, &x)?
        }
        OperatorArg::Diamond => {
            let radius = parse_flag("--truncation", &flags.truncation)?;
            record.push("truncation", radius.to_string());
            eval_diamond(&f, &radius, &x)?
        }
        OperatorArg::OneSided => {
            let reach = parse_flag("--truncation", &flags.truncation)?;
            let side = match flags
                .side
                .ok_or_else(|| anyhow!("--side is required for the one-sided operator"))?
            {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            record.push("truncation", reach.to_string());
            record.push("side", format!("{side:?}").to_lowercase());
            eval_one_sided(&f, &reach, &x, side)?
        }
        OperatorArg::Lipschitz => {
            let n = load_radius(flags.lipschitz.as_ref().ok_or_else(|| {
                anyhow!("--lipschitz FILE is required for this operator")
            })?)?;
            radius_echo = Some(n.lipschitz_constant());
            eval_lipschitz_truncated(&f, &n, &x)?
        }
        OperatorArg::Mixed => {
            let alpha = parse_flag("--alpha", &flags.alpha)?;
            let n = load_radius(flags.lipschitz.as_ref().ok_or_else(|| {
                anyhow!("--lipschitz FILE is required for this operator")
            })?)?;
            record.push("alpha", alpha.to_string());
            radius_echo = Some(n.lipschitz_constant());
            eval_mixed(&f, &alpha, &n, &x)?
        }
    };
    if let Some(lip) = radius_echo {
        record.push("radius_lipschitz_constant", lip.to_string());
    }
    record.push("x", x.to_string());
    record.push("value", result.value.to_string());
    record.push("value_decimal", dec(&result.value));
    record.push("witness", witness_string(&result.witness));
    ctx.emit(&record.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn variation_command(ctx: &Context, input: &PathBuf) -> Result<Outcome> {
    let f = load_step(input)?;
    let tv = f.total_variation();
    let mut record = Record::new();
    record.push("breakpoints", f.breakpoints().len().to_string());
    record.push("variation", tv.to_string());
    record.push("variation_decimal", dec(&tv));
    record.push("l1_norm", f.l1_norm().to_string());
    ctx.emit(&record.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn maximal_variation_command(
    ctx: &Context,
    flags: &OperatorFlags,
    input: &PathBuf,
) -> Result<Outcome> {
    let f = load_step(input)?;
    let (op, lip) = flags.analysis_operator()?;
    let cfg = ctx.config()?;
    let (w_lo, w_hi) = match ctx.window_override()? {
        Some(w) => w,
        None => default_window(&f),
    };
    let report = maximal_variation(&f, &op, (&w_lo, &w_hi), &cfg)?;
    let mut record = Record::new();
    record.push("operator", flags.describe());
    if let Some(lip) = lip {
        record.push("radius_lipschitz_constant", lip.to_string());
    }
    record.push("window", format!("{w_lo}:{w_hi}"));
    record.push("variation_f", f.total_variation().to_string());
    record.push("lower_bound", report.lower_bound.to_string());
    record.push("lower_bound_decimal", dec(&report.lower_bound));
    let s = report.structural_value.expect("always computed");
    record.push("structural", s.to_string());
    record.push("structural_decimal", dec(&s));
    record.push("tolerance", report.tolerance.to_string());
    record.push("partition_size", report.partition_size.to_string());
    record.push("converged", report.converged.to_string());
    ctx.emit(&record.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn opt_rat(r: Option<&Rational>) -> (String, String) {
    match r {
        Some(v) => (v.to_string(), dec(v)),
        None => (String::new(), String::new()),
    }
}

fn detachment_command(
    ctx: &Context,
    flags: &OperatorFlags,
    input: &PathBuf,
) -> Result<Outcome> {
    let f = load_step(input)?;
    let (op, _) = flags.analysis_operator()?;
    let cfg = ctx.config()?;
    let (w_lo, w_hi) = match ctx.window_override()? {
        Some(w) => w,
        None => default_window(&f),
    };
    let comps = detachment_set(&f, &op, (&w_lo, &w_hi), &cfg.tol, cfg.scan_density)?;
    let mut grid = Grid::new(&[
        "component",
        "lo",
        "lo_dec",
        "hi",
        "hi_dec",
        "lo_clipped",
        "hi_clipped",
        "shape",
        "vertex",
        "vertex_dec",
        "value_lo",
        "value_lo_dec",
        "value_hi",
        "value_hi_dec",
    ]);
    for (i, comp) in comps.into_iter().enumerate() {
        let comp = classify_shape(&f, &op, comp, cfg.probes)?;
        let (lo, lo_d) = opt_rat(comp.lo.finite());
        let (hi, hi_d) = opt_rat(comp.hi.finite());
        let (vx, vx_d) = opt_rat(comp.vertex_point.as_ref());
        let (vl, vl_d) = opt_rat(comp.lo_value());
        let (vh, vh_d) = opt_rat(comp.hi_value());
        grid.push(vec![
            i.to_string(),
            lo,
            lo_d,
            hi,
            hi_d,
            comp.lo_clipped.to_string(),
            comp.hi_clipped.to_string(),
            comp.shape.map(|s| s.as_str()).unwrap_or("").to_string(),
            vx,
            vx_d,
            vl,
            vl_d,
            vh,
            vh_d,
        ]);
    }
    ctx.emit(&grid.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn counterexample_command(ctx: &Context, which: &CounterexampleCommand) -> Result<Outcome> {
    match which {
        CounterexampleCommand::ConeSpike { alpha, n } => {
            let alpha = rational_parse(alpha).context("--alpha")?;
            let f = make_spike_pair(*n)?;
            let mut grid = Grid::new(&["point", "maximal", "maximal_dec", "function_value"]);
            for (num, den) in [(1i64, 3i64), (1, 2), (2, 3)] {
                let x = Rational::new(num, den).unwrap();
                let v = eval_nontangential(&f, &alpha, &x)?.value;
                grid.push(vec![x.to_string(), v.to_string(), dec(&v), "0".to_string()]);
            }
            ctx.emit(&grid.render(ctx.format))?;
        }
        CounterexampleCommand::Lipschitz { beta, bumps } => {
            let beta = rational_parse(beta).context("--beta")?;
            let rows = divergence_certificate(&beta, *bumps)?;
            let mut grid = Grid::new(&[
                "k",
                "peak_x",
                "peak_x_dec",
                "peak_value",
                "peak_value_dec",
                "zero_x",
                "zero_value",
                "partial_sum",
                "partial_sum_dec",
            ]);
            for row in rows {
                grid.push(vec![
                    row.index.to_string(),
                    row.peak_x.to_string(),
                    dec(&row.peak_x),
                    row.peak_value.to_string(),
                    dec(&row.peak_value),
                    row.zero_x.to_string(),
                    row.zero_value.to_string(),
                    row.partial_sum.to_string(),
                    dec(&row.partial_sum),
                ]);
            }
            ctx.emit(&grid.render(ctx.format))?;
        }
    }
    Ok(Outcome::Success)
}

fn sweep_command(ctx: &Context, input: &PathBuf, alphas: &[String]) -> Result<Outcome> {
    let f = load_step(input)?;
    let cfg = ctx.config()?;
    let (w_lo, w_hi) = match ctx.window_override()? {
        Some(w) => w,
        None => default_window(&f),
    };
    let tv = f.total_variation();
    if tv.is_zero() {
        bail!("sweep requires a nonconstant input function");
    }
    let mut grid = Grid::new(&[
        "alpha",
        "variation_f",
        "variation_Mf_lower",
        "variation_Mf_struct",
        "ratio",
    ]);
    for raw in alphas {
        let alpha = rational_parse(raw).context("--alphas")?;
        let op = Operator::Nontangential {
            alpha: alpha.clone(),
        };
        let report = maximal_variation(&f, &op, (&w_lo, &w_hi), &cfg)?;
        let ratio = &report.lower_bound / &tv;
        grid.push(vec![
            alpha.to_string(),
            tv.to_string(),
            report.lower_bound.to_string(),
            report.structural_value.expect("always computed").to_string(),
            ratio.to_string(),
        ]);
    }
    ctx.emit(&grid.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn weaktype_command(ctx: &Context, input: &PathBuf, alpha: &str, lambda: &str) -> Result<Outcome> {
    let f = load_step(input)?;
    let alpha = rational_parse(alpha).context("--alpha")?;
    let lambda = rational_parse(lambda).context("--lambda")?;
    let cfg = ctx.config()?;
    let window = ctx.window_override()?;
    let window_ref = window.as_ref().map(|(lo, hi)| (lo, hi));
    let measure = maximal_superlevel_measure(&f, &alpha, &lambda, window_ref, 512, &cfg.tol)?;
    let ratio = weak_type_ratio(&f, &alpha, &lambda, window_ref, 512, &cfg.tol)?;
    let mut grid = Grid::new(&[
        "alpha",
        "lambda",
        "measure",
        "measure_dec",
        "ratio",
        "ratio_dec",
    ]);
    grid.push(vec![
        alpha.to_string(),
        lambda.to_string(),
        measure.to_string(),
        dec(&measure),
        ratio.to_string(),
        dec(&ratio),
    ]);
    ctx.emit(&grid.render(ctx.format))?;
    Ok(Outcome::Success)
}

fn render_report(report: &SuiteReport, body: &mut String) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    body.push_str(&format!("[{status}] {} — {}\n", report.suite, report.title));
    for c in &report.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        body.push_str(&format!("    [{mark}] {}: {}\n", c.name, c.detail));
    }
}

fn verify_command(ctx: &Context, suite: &str, inject_failure: bool) -> Result<Outcome> {
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(ctx.seed)
    } else {
        vec![run_suite(suite, ctx.seed).ok_or_else(|| {
            anyhow!(
                "unknown suite `{suite}`; available: all, {}",
                SUITES.join(", ")
            )
        })?]
    };
    let mut body = String::new();
    let mut failed = inject_failure;
    for report in &reports {
        render_report(report, &mut body);
        eprintln!("suite {} finished in {} ms", report.suite, report.elapsed_ms);
        if !report.passed() {
            failed = true;
        }
    }
    if inject_failure {
        body.push_str("[FAIL] injected — forced failure for exit-code testing\n");
    }
    body.push_str(&format!(
        "{}: {} suite(s), seed {}\n",
        if failed { "FAIL" } else { "PASS" },
        reports.len(),
        ctx.seed
    ));
    ctx.emit(&body)?;
    Ok(if failed {
        Outcome::VerificationFailed
    } else {
        Outcome::Success
    })
}
