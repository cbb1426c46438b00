//! Subcommand drivers. Each prints a summary line to stdout and writes its
//! report to `--out` (or to stdout when `--out` is absent).

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use hausdorff::analysis::{
    boundary_compat_residual, commutation_residual, default_delta_grid, default_eps_grid, estimate_operator_norm,
    muckenhoupt_quotient, sharpness_gap, sign_lemma_constants, verify_sign_lemma, NormEstimate,
};
use hausdorff::kernels::{catalog, is_nonnegative, moment};
use hausdorff::spaces::{default_y_grid, half_plane_norm, norm_in, write_csv, CsvRow};
use hausdorff::{apply_complex, Error, HoloExpr, Kernel, QuadSpec, Space, SpaceParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error as ThisError;

use crate::args::{
    ApplyArgs, BoundaryArgs, CatalogArgs, Command, Common, CommuteArgs, MuckenhouptArgs, SharpnessArgs, SignLemmaArgs,
    SpaceArgs, SpaceSel,
};
use crate::real_fn::RealFn;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::Domain(_) | Error::InvalidParameter(_) | Error::Parse { .. } | Error::Descriptor(_)) => 2,
            _ => 1,
        }
    }
}

pub enum Verdict {
    Pass,
    Fail,
}

type CliResult = Result<Verdict, CliError>;

pub fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Catalog(a) => run_catalog(a),
        Command::Moment(a) => run_moment(a),
        Command::Norm(a) => run_norm(a),
        Command::Apply(a) => run_apply(a),
        Command::Sharpness(a) => run_sharpness(a),
        Command::Commute(a) => run_commute(a),
        Command::Boundary(a) => run_boundary(a),
        Command::Signlemma(a) => run_signlemma(a),
        Command::Muckenhoupt(a) => run_muckenhoupt(a),
    }
}

fn quad_spec(c: &Common) -> Result<QuadSpec, CliError> {
    let mut q = QuadSpec::default();
    if let Some(r) = c.rel_tol {
        q.rel_tol = r;
    }
    if let Some(a) = c.abs_tol {
        q.abs_tol = a;
    }
    if let Some(m) = c.max_subdiv {
        q.max_subdivisions = m;
    }
    q.validate()?;
    Ok(q)
}

fn space_params(s: &SpaceSel) -> Result<SpaceParams, CliError> {
    let space: Space = s.space.parse()?;
    Ok(SpaceParams::new(space, s.p, s.alpha)?)
}

fn kernel(json: &str) -> Result<Kernel, CliError> {
    Ok(Kernel::from_json(json)?)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

/// Twelve significant digits, printed in Rust's shortest round-trip form.
fn display(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v:?}");
    }
    let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{r:?}")
}

fn fail(reason: impl std::fmt::Display) -> CliResult {
    println!("FAIL: {reason}");
    Ok(Verdict::Fail)
}

fn verdict(pass: bool, summary: String) -> CliResult {
    if pass {
        println!("PASS: {summary}");
        Ok(Verdict::Pass)
    } else {
        fail(summary)
    }
}

/// Writes serializable records as CSV to `out` or, without one, to stdout.
fn emit<R: Serialize>(out: Option<&Path>, rows: &[R]) -> Result<(), CliError> {
    match out {
        Some(path) => write_records(File::create(path)?, rows),
        None => write_records(io::stdout().lock(), rows),
    }
}

fn write_records<W: Write, R: Serialize>(w: W, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(w);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn run_catalog(a: CatalogArgs) -> CliResult {
    let entries = catalog();
    let json = serde_json::to_string_pretty(&entries)?;
    match &a.common.out {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    for e in &entries {
        eprintln!("{:<20} {}", e.type_tag, e.parameters);
    }
    Ok(Verdict::Pass)
}

#[derive(Serialize)]
struct ScalarRow {
    space: String,
    p: f64,
    alpha: f64,
    value: f64,
    error_estimate: f64,
    diverged: bool,
}

fn scalar_row(sp: &SpaceParams, r: &hausdorff::IntegralResult<f64>) -> ScalarRow {
    ScalarRow {
        space: sp.space().to_string(),
        p: sp.p(),
        alpha: sp.alpha(),
        value: r.value,
        error_estimate: r.error_estimate,
        diverged: r.diverged,
    }
}

fn run_moment(a: SpaceArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let k = kernel(required(&a.kernel, "kernel")?)?;
    let sp = space_params(&a.space)?;
    let m = moment(&k, &sp, &q);
    if let Some(path) = &a.common.out {
        emit(Some(path), &[scalar_row(&sp, &m)])?;
    }
    if m.diverged {
        return fail(format!("moment diverges for {} (p={}, alpha={})", sp.space(), sp.p(), sp.alpha()));
    }
    println!("{}", display(m.value));
    Ok(Verdict::Pass)
}

fn run_norm(a: SpaceArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let f: HoloExpr = required(&a.function, "function")?.parse()?;
    let sp = space_params(&a.space)?;
    let r = match (&a.kernel, &a.y_grid) {
        (Some(json), grid) => {
            let k = kernel(json)?;
            if sp.space() == Space::Dirichlet {
                return Err(CliError::Usage("the norm of an image is not available in the Dirichlet space".into()));
            }
            let image = hausdorff::HausdorffImage::new(k, f, q);
            half_plane_norm(&image, &sp, grid.as_deref().unwrap_or(&default_y_grid()), &q)?
        }
        (None, Some(grid)) => half_plane_norm(&f, &sp, grid, &q)?,
        (None, None) => norm_in(&f, &sp, &q)?,
    };
    if let Some(path) = &a.common.out {
        emit(Some(path), &[scalar_row(&sp, &r)])?;
    }
    if r.diverged {
        return fail("norm diverges");
    }
    println!("{}", display(r.value));
    Ok(Verdict::Pass)
}

fn parse_point(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("point '{s}' is not of the form x:y"));
    let (x, y) = s.split_once(':').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(x, y))
}

fn run_apply(a: ApplyArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let k = kernel(&a.kernel)?;
    let f: HoloExpr = a.function.parse()?;
    let points: Vec<Complex64> = if a.points.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
        (0..a.samples)
            .map(|_| {
                let x = rng.random_range(-5.0..5.0);
                let y = 10f64.powf(rng.random_range(-2.0..1.0));
                Complex64::new(x, y)
            })
            .collect()
    } else {
        a.points.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut diverged = 0;
    for z in points {
        let r = apply_complex(&k, &f, z, &q)?;
        diverged += usize::from(r.diverged);
        rows.push(CsvRow {
            x: z.re,
            y: z.im,
            value_re: r.value.re,
            value_im: r.value.im,
            ratio: r.value.norm() / f.eval_closed(z).norm(),
        });
    }
    let n = rows.len();
    write_csv_to(a.common.out.as_deref(), &rows)?;
    if diverged > 0 {
        return fail(format!("{diverged} of {n} points diverged"));
    }
    if a.common.out.is_some() {
        println!("PASS: {n} points");
    }
    Ok(Verdict::Pass)
}

fn write_csv_to(out: Option<&Path>, rows: &[CsvRow]) -> Result<(), CliError> {
    match out {
        Some(path) => write_csv(File::create(path)?, rows)?,
        None => write_csv(io::stdout().lock(), rows)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct RayleighCsv {
    eps: f64,
    delta: Option<f64>,
    quotient: f64,
    tail: f64,
    lower: f64,
}

fn run_sharpness(a: SharpnessArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let k = kernel(&a.kernel)?;
    let sp = space_params(&a.space)?;
    let eps = a.eps_grid.unwrap_or_else(default_eps_grid);
    let delta = a.delta_grid.unwrap_or_else(default_delta_grid);
    let est = if is_nonnegative(&k) {
        sharpness_gap(&k, &sp, &eps, &delta, &q)?
    } else {
        estimate_operator_norm(&k, &sp, &eps, &delta, &q)?
    };
    match est {
        NormEstimate::Bounded(b) => {
            let rows: Vec<RayleighCsv> = b
                .rows
                .iter()
                .map(|r| RayleighCsv { eps: r.eps, delta: r.delta, quotient: r.quotient, tail: r.tail, lower: r.lower })
                .collect();
            if let Some(path) = &a.common.out {
                emit(Some(path), &rows)?;
            }
            let rel = b.relative_gap();
            let summary = format!(
                "lower={} upper={} signed={} gap/upper={:.3e} (tolerance {})",
                display(b.lower),
                display(b.upper),
                display(b.signed),
                rel,
                a.tolerance
            );
            verdict(rel <= a.tolerance, summary)
        }
        NormEstimate::Unbounded(u) => {
            #[derive(Serialize)]
            struct Row {
                eps: f64,
                quotient: f64,
            }
            let rows: Vec<Row> = u.eps.iter().zip(&u.quotients).map(|(&eps, &quotient)| Row { eps, quotient }).collect();
            if let Some(path) = &a.common.out {
                emit(Some(path), &rows)?;
            }
            let qs: Vec<String> = u.quotients.iter().map(|v| format!("{v:.3e}")).collect();
            fail(format!(
                "moment diverges; truncated quotients [{}] {}",
                qs.join(", "),
                if u.growing { "grow as eps decreases" } else { "do not grow monotonically" }
            ))
        }
    }
}

fn run_commute(a: CommuteArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let k = kernel(&a.kernel)?;
    let g = RealFn::parse(&a.function)?;
    let r = match commutation_residual(&k, |x| g.eval(x), a.p, a.alpha, &q) {
        Err(Error::Precondition(m)) => return fail(m),
        other => other?,
    };
    #[derive(Serialize)]
    struct Row {
        p: f64,
        alpha: f64,
        nodes: usize,
        g_norm: f64,
        difference_norm: f64,
        relative: f64,
    }
    let row = Row {
        p: a.p,
        alpha: a.alpha,
        nodes: r.nodes,
        g_norm: r.g_norm,
        difference_norm: r.difference_norm,
        relative: r.relative,
    };
    if let Some(path) = &a.common.out {
        emit(Some(path), &[row])?;
    }
    verdict(
        r.relative <= a.tolerance,
        format!("relative commutator residual {:.3e} (tolerance {})", r.relative, a.tolerance),
    )
}

fn run_boundary(a: BoundaryArgs) -> CliResult {
    let q = quad_spec(&a.common)?;
    let k = kernel(&a.kernel)?;
    let f: HoloExpr = a.function.parse()?;
    let r = match boundary_compat_residual(&k, &f, a.p, a.alpha, &a.y_grid, &q) {
        Err(Error::Precondition(m)) => return fail(m),
        other => other?,
    };
    #[derive(Serialize)]
    struct Row {
        y: f64,
        residual: f64,
        relative: f64,
    }
    let rows: Vec<Row> = r
        .residuals
        .iter()
        .map(|&(y, residual)| Row { y, residual, relative: residual / r.f_norm })
        .collect();
    if let Some(path) = &a.common.out {
        emit(Some(path), &rows)?;
    }
    let seq: Vec<String> = r.residuals.iter().map(|(_, v)| format!("{v:.2e}")).collect();
    let summary = format!(
        "residuals [{}], final/norm = {:.3e} (tolerance {}){}",
        seq.join(", "),
        r.final_relative,
        a.tolerance,
        if r.decreasing { "" } else { ", not decreasing" }
    );
    verdict(r.decreasing && r.final_relative <= a.tolerance, summary)
}

fn run_signlemma(a: SignLemmaArgs) -> CliResult {
    let c = sign_lemma_constants(a.p, a.alpha)?;
    let eps = a.eps_grid.unwrap_or_else(|| [0.5, 0.1, 0.01].iter().map(|f| f * c.eps_pa).collect());
    let r = verify_sign_lemma(a.p, a.alpha, &eps, a.samples)?;
    #[derive(Serialize)]
    struct Row {
        eps: f64,
        within_hypotheses: bool,
        samples: usize,
        min_ratio: f64,
        violations: usize,
    }
    let rows: Vec<Row> = r
        .checks
        .iter()
        .map(|ch| Row {
            eps: ch.eps,
            within_hypotheses: ch.within_hypotheses,
            samples: ch.samples,
            min_ratio: ch.min_ratio,
            violations: ch.violations.len(),
        })
        .collect();
    if let Some(path) = &a.common.out {
        emit(Some(path), &rows)?;
    }
    let n = r.violation_count();
    verdict(
        n == 0,
        format!(
            "q{}{} part={:?} sign={:?} eps0={} C={} violations={n}",
            if c.case.to_string().starts_with('=') { " " } else { " in " },
            c.case,
            c.part,
            c.sign,
            display(c.eps_pa),
            display(c.c_pa)
        ),
    )
}

fn run_muckenhoupt(a: MuckenhouptArgs) -> CliResult {
    let intervals: Vec<(f64, f64)> = match &a.interval {
        Some(v) if v.len() == 2 => vec![(v[0], v[1])],
        Some(_) => return Err(CliError::Usage("--interval takes two values a,b".into())),
        None => {
            // Power weights can only fail on intervals around the origin.
            let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
            std::iter::once((-1.0, 1.0))
                .chain((1..a.samples.max(1)).map(|_| {
                    let lo = rng.random_range(-10.0..10.0);
                    (lo, lo + 10f64.powf(rng.random_range(-3.0..1.0)))
                }))
                .collect()
        }
    };
    #[derive(Serialize)]
    struct Row {
        a: f64,
        b: f64,
        quotient: f64,
        diverged: bool,
    }
    let mut rows = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        let w = muckenhoupt_quotient(a.alpha, a.q, lo, hi)?;
        rows.push(Row { a: lo, b: hi, quotient: w.value, diverged: w.diverged });
    }
    if let Some(path) = &a.common.out {
        emit(Some(path), &rows)?;
    }
    let diverged = rows.iter().filter(|r| r.diverged).count();
    let max = rows.iter().filter(|r| !r.diverged).map(|r| r.quotient).fold(f64::NAN, f64::max);
    verdict(
        diverged == 0,
        format!("{} intervals, {diverged} diverged, max finite quotient {}", rows.len(), display(max)),
    )
}
