//! Dispatch of a validated [`RunConfig`] to the registries.

use std::ops::RangeInclusive;

use qhyper::identities::{self, point_rng, RhsKind, VerifyOptions, MAX_REJECTIONS};
use qhyper::integrals::{self, IntegralOptions, IntegralRepId};
use qhyper::products::{self, ProductId, ProductOptions};
use qhyper::report::{ParamMap, Summary, VerificationReport};
use qhyper::{Error, ExactScalar, Mode};

use crate::config::{Command, Format, RunConfig};
use crate::report_file::ReportFile;
use crate::targets::Target;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Orders swept when no `--n-range` is given.
pub const DEFAULT_N_RANGE: (usize, usize) = (0, 8);
/// Coefficient order of exact product checks when no `--n` is given.
pub const DEFAULT_PRODUCT_ORDER: usize = 9;
/// Series radius of product value checks.
pub const PRODUCT_RADIUS: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub enum RunError {
    Config(String),
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_nonconvergence() {
            RunError::Numerical(e.to_string())
        } else {
            RunError::Config(e.to_string())
        }
    }
}

fn config_err<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Config(msg.into()))
}

/// Rendered output of a run. `report` is absent for `list`.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub text: String,
    pub report: Option<ReportFile>,
}

impl Outcome {
    fn from_report(report: ReportFile, format: Format) -> Self {
        let text = match format {
            Format::Json => report.to_json(),
            Format::Csv => report.to_csv(),
        };
        let exit_code = if report.summary.failed == 0 { EXIT_OK } else { EXIT_FAILED };
        Outcome { exit_code, text, report: Some(report) }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, RunError> {
    match config.command {
        Command::List => Ok(Outcome { exit_code: EXIT_OK, text: render_list(config.format), report: None }),
        Command::Report => {
            let path = config.input_path.as_ref().ok_or_else(|| RunError::Config("report needs an input file".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
            let mut file = ReportFile::from_json(&text).map_err(RunError::Config)?;
            file.summary = Summary::of(&file.entries);
            Ok(Outcome::from_report(file, Format::Csv))
        }
        Command::Verify | Command::Sweep => {
            let id = config.identity_id.as_deref().unwrap_or_default();
            let target = Target::resolve(id).ok_or_else(|| RunError::Config(format!("unknown identity {id:?}; see `qhyper list`")))?;
            let mut resolved = config.clone();
            let mode = *resolved.mode.get_or_insert(target.default_mode());
            if mode == Mode::Exact && !target.supports_exact() {
                return config_err(format!("{id} has no exact check; use --mode approx"));
            }
            if mode == Mode::Exact && config.eps.is_some() {
                return config_err("--eps applies to approx mode only");
            }
            let eps = *resolved.eps.get_or_insert(target.default_eps(mode));
            let entries = if config.command == Command::Verify {
                verify(target, &mut resolved, mode, eps)?
            } else {
                sweep(target, &resolved, mode, eps)?
            };
            let format = config.format.unwrap_or(Format::Json);
            Ok(Outcome::from_report(ReportFile::new(resolved, entries), format))
        }
    }
}

fn render_list(format: Option<Format>) -> String {
    let entries: Vec<_> = Target::all().iter().map(Target::list_entry).collect();
    match format {
        Some(Format::Json) => {
            let mut s = serde_json::to_string_pretty(&entries).expect("list serializes");
            s.push('\n');
            s
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "namespace", "params", "modes", "description"]).expect("in-memory write");
            for e in &entries {
                let modes: Vec<&str> = e.modes.iter().map(|m| if *m == Mode::Exact { "exact" } else { "approx" }).collect();
                w.write_record([e.id.as_str(), e.namespace, &e.params.join(";"), &modes.join(";"), e.description])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
        }
        None => {
            let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
            let mut out = String::new();
            for e in &entries {
                out.push_str(&format!("{:<width$}  {:<11}  {}\n", e.id, e.namespace, e.description));
            }
            out
        }
    }
}

fn check_param_names(target: Target, params: &ParamMap) -> Result<(), RunError> {
    let known = target.params();
    match params.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => config_err(format!("{} takes parameters {}; got {k}", target.id(), known.join(", "))),
        None => Ok(()),
    }
}

/// Re-expresses an exact report at `prec` bits with tolerance `eps`.
fn exact_as_approx(r: VerificationReport, prec: u32, eps: f64) -> Result<VerificationReport, RunError> {
    let parse = |s: &str| s.parse::<ExactScalar>().map_err(RunError::from);
    let params: ParamMap = r.params.iter().map(|(k, v)| Ok((k.clone(), parse(v)?))).collect::<Result<_, RunError>>()?;
    let (l, rh) = (parse(&r.lhs)?.to_approx(prec), parse(&r.rhs)?.to_approx(prec));
    let mut out = VerificationReport::approx(&r.identity_id, r.n, &params, &l, &rh, eps);
    out.note = r.note;
    out.truncation_terms = r.truncation_terms;
    Ok(out)
}

/// The classical checks run at a fixed tolerance; a user `eps` re-judges
/// the recorded error.
fn with_eps(mut r: VerificationReport, eps: f64) -> VerificationReport {
    r.eps = eps;
    r.pass = r.degenerate || r.rel_err <= eps;
    r
}

fn verify_options(cfg: &RunConfig, eps: f64) -> VerifyOptions {
    VerifyOptions { prec: cfg.precision_bits, eps: if eps > 0.0 { eps } else { VerifyOptions::default().eps } }
}

fn product_options(cfg: &RunConfig, eps: f64) -> ProductOptions {
    ProductOptions { prec: cfg.precision_bits, eps, radius: PRODUCT_RADIUS }
}

fn integral_options(cfg: &RunConfig, eps: f64) -> IntegralOptions {
    IntegralOptions { prec: cfg.precision_bits, eps, ..IntegralOptions::default() }
}

fn reject_n(target: Target, cfg: &RunConfig) -> Result<(), RunError> {
    if cfg.n.is_some() || cfg.n_range.is_some() {
        return config_err(format!("{} in this mode takes no order; drop --n/--n-range", target.id()));
    }
    Ok(())
}

fn verify(target: Target, cfg: &mut RunConfig, mode: Mode, eps: f64) -> Result<Vec<VerificationReport>, RunError> {
    check_param_names(target, &cfg.params)?;
    match target {
        Target::Terminating(rec) => {
            let n = cfg.n.ok_or_else(|| RunError::Config(format!("{} needs --n", rec.id)))?;
            let r = identities::verify_with(rec.id, &cfg.params, n, &verify_options(cfg, eps))?;
            if mode == Mode::Approx && rec.kind == RhsKind::Exact {
                Ok(vec![exact_as_approx(r, cfg.precision_bits, eps)?])
            } else {
                Ok(vec![r])
            }
        }
        Target::Product(id) if mode == Mode::Exact => {
            let order = cfg.n.unwrap_or(DEFAULT_PRODUCT_ORDER);
            Ok(products::product_coefficient_check(id, &cfg.params, order)?)
        }
        Target::Product(id) => {
            reject_n(target, cfg)?;
            Ok(vec![products::verify_product(id, &cfg.params, &product_options(cfg, eps))?])
        }
        Target::Integral(id) => {
            reject_n(target, cfg)?;
            fill_integral_defaults(id, &mut cfg.params)?;
            Ok(vec![integrals::verify_integral_rep(id, &cfg.params, &integral_options(cfg, eps))?])
        }
        Target::Classical(which) => {
            reject_n(target, cfg)?;
            let get = |k: &str| cfg.params.get(k).ok_or_else(|| RunError::from(Error::MissingParameter(k.into())));
            let r = products::classical_limit_check(which, get("a")?, get("b")?, get("z")?)?;
            Ok(vec![with_eps(r, eps)])
        }
    }
}

/// `f = 3/2` and `σ` at the middle of its admissible window unless given.
fn fill_integral_defaults(id: IntegralRepId, params: &mut ParamMap) -> Result<(), RunError> {
    params.entry("f".into()).or_insert_with(|| ExactScalar::ratio(3, 2));
    if !params.contains_key("sigma") {
        for k in ["q", "a", "b", "z"] {
            if !params.contains_key(k) {
                return Err(Error::MissingParameter(k.into()).into());
            }
        }
        let s = integrals::suggest_sigma(id, params)?;
        params.insert("sigma".into(), s);
    }
    Ok(())
}

fn sweep(target: Target, cfg: &RunConfig, mode: Mode, eps: f64) -> Result<Vec<VerificationReport>, RunError> {
    let (lo, hi) = match (cfg.n_range, cfg.n) {
        (Some(r), _) => r,
        (None, Some(n)) => (n, n),
        (None, None) => DEFAULT_N_RANGE,
    };
    match target {
        Target::Terminating(rec) => {
            let rs = identities::sweep_with(rec.id, cfg.trials, cfg.seed, lo..=hi, &verify_options(cfg, eps))?;
            if mode == Mode::Approx && rec.kind == RhsKind::Exact {
                rs.into_iter().map(|r| exact_as_approx(r, cfg.precision_bits, eps)).collect()
            } else {
                Ok(rs)
            }
        }
        Target::Product(id) if mode == Mode::Exact => {
            let order = match (cfg.n_range, cfg.n) {
                (None, None) => DEFAULT_PRODUCT_ORDER,
                _ => hi,
            };
            let lo = if cfg.n_range.is_some() { lo } else { 0 };
            coefficient_sweep(id, cfg.trials, cfg.seed, order, lo..=order)
        }
        Target::Product(id) => {
            reject_n(target, cfg)?;
            Ok(products::sweep_product(id, cfg.trials, cfg.seed, &product_options(cfg, eps))?)
        }
        Target::Integral(id) => {
            reject_n(target, cfg)?;
            Ok(integrals::sweep_integral(id, cfg.trials, cfg.seed, &integral_options(cfg, eps))?)
        }
        Target::Classical(which) => {
            reject_n(target, cfg)?;
            let rs = products::sweep_classical(which, cfg.trials, cfg.seed)?;
            Ok(rs.into_iter().map(|r| with_eps(r, eps)).collect())
        }
    }
}

/// Exact coefficient checks at seeded points, keeping coefficients whose
/// index lies in `keep`. Points where the check hits a pole are redrawn.
fn coefficient_sweep(
    id: ProductId,
    trials: usize,
    seed: u64,
    order: usize,
    keep: RangeInclusive<usize>,
) -> Result<Vec<VerificationReport>, RunError> {
    let mut out = Vec::new();
    for t in 0..trials {
        let mut rng = point_rng(seed, t as u64);
        let mut accepted = None;
        for _ in 0..MAX_REJECTIONS {
            let p = products::sample_product_point(id, &mut rng);
            match products::product_coefficient_check(id, &p, order) {
                Err(Error::ConstraintViolation(_)) | Err(Error::PoleError { .. }) => continue,
                other => {
                    accepted = Some(other?);
                    break;
                }
            }
        }
        let rs = accepted.ok_or_else(|| RunError::from(Error::SamplerExhausted { id: id.name().into(), attempts: MAX_REJECTIONS }))?;
        out.extend(rs.into_iter().filter(|r| r.n.is_some_and(|k| k >= 0 && keep.contains(&(k as usize)))));
    }
    Ok(out)
}
