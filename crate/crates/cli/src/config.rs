//! Command-line arguments and the validated run configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhyper::{ExactScalar, Mode};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "qhyper", version, about = "Verify basic hypergeometric identities, products and integral representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Print every identity id with its parameters and description.
    List {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check one identity at one parameter point.
    Verify {
        identity_id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check one identity at seeded random points.
    Sweep {
        identity_id: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-render a stored JSON report as CSV.
    Report {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Comma-separated `key=value` pairs; values are rationals `p/q` or
    /// Gaussian rationals `p/q+r/s*i`.
    #[arg(long, default_value = "")]
    pub params: String,
    /// Order of a terminating identity, or the coefficient order of an
    /// exact product check.
    #[arg(long)]
    pub n: Option<usize>,
    /// Inclusive range `a..b` of orders for sweeps.
    #[arg(long)]
    pub n_range: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, default_value_t = 256)]
    pub precision_bits: u32,
    /// Relative tolerance of approximate checks.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    /// Contour radius of an integral representation.
    #[arg(long)]
    pub sigma: Option<String>,
    /// Auxiliary theta parameter of an integral representation.
    #[arg(long = "f")]
    pub f: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Approx,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Approx => Mode::Approx,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    List,
    Verify,
    Sweep,
    Report,
}

/// A validated run. The output and input paths are not part of the echo
/// written into report files, so reruns to different paths stay identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub identity_id: Option<String>,
    pub params: BTreeMap<String, ExactScalar>,
    pub n: Option<usize>,
    /// Inclusive bounds.
    pub n_range: Option<(usize, usize)>,
    /// `None` until resolved against the identity's default.
    pub mode: Option<Mode>,
    pub precision_bits: u32,
    pub eps: Option<f64>,
    pub seed: u64,
    pub trials: usize,
    pub format: Option<Format>,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    #[serde(skip)]
    pub input_path: Option<PathBuf>,
}

pub const MIN_PRECISION_BITS: u32 = 64;

pub fn parse_literal(s: &str) -> Result<ExactScalar, String> {
    s.parse::<ExactScalar>().map_err(|e| e.to_string())
}

/// `key=value,key=value`; empty input gives an empty map.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, ExactScalar>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("parameter {item:?} is not of the form key=value"))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(format!("parameter {item:?} has an empty name"));
        }
        if out.insert(k.to_string(), parse_literal(v)?).is_some() {
            return Err(format!("parameter {k} given twice"));
        }
    }
    Ok(out)
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_n_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("n-range {s:?} is not of the form a..b"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: usize = a.trim().parse().map_err(|_| format!("bad lower bound in n-range {s:?}"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad upper bound in n-range {s:?}"))?;
    if lo > hi {
        return Err(format!("empty n-range {s:?}"));
    }
    Ok((lo, hi))
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, String> {
        let bare = |command, format, output_path, input_path| RunConfig {
            command,
            identity_id: None,
            params: BTreeMap::new(),
            n: None,
            n_range: None,
            mode: None,
            precision_bits: 256,
            eps: None,
            seed: 0,
            trials: 0,
            format,
            output_path,
            input_path,
        };
        match cli.command {
            CliCommand::List { format, output } => Ok(bare(Command::List, format, output, None)),
            CliCommand::Report { input, output } => Ok(bare(Command::Report, Some(Format::Csv), output, Some(input))),
            CliCommand::Verify { identity_id, run } => Self::from_run(Command::Verify, identity_id, run),
            CliCommand::Sweep { identity_id, run } => Self::from_run(Command::Sweep, identity_id, run),
        }
    }

    fn from_run(command: Command, identity_id: String, run: RunArgs) -> Result<RunConfig, String> {
        let mut params = parse_params(&run.params)?;
        for (key, value) in [("sigma", &run.sigma), ("f", &run.f)] {
            if let Some(v) = value {
                if params.insert(key.to_string(), parse_literal(v)?).is_some() {
                    return Err(format!("{key} given both as --{key} and in --params"));
                }
            }
        }
        if run.precision_bits < MIN_PRECISION_BITS {
            return Err(format!("precision-bits must be at least {MIN_PRECISION_BITS}"));
        }
        if let Some(e) = run.eps {
            if !(e > 0.0 && e.is_finite()) {
                return Err("eps must be a positive finite number".into());
            }
        }
        if command == Command::Sweep && run.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if command == Command::Verify && run.n_range.is_some() {
            return Err("verify takes --n, not --n-range".into());
        }
        if command == Command::Sweep && !params.is_empty() {
            return Err("sweep draws its own points; --params, --sigma and --f apply to verify".into());
        }
        let n_range = run.n_range.as_deref().map(parse_n_range).transpose()?;
        if n_range.is_some() && run.n.is_some() {
            return Err("give --n or --n-range, not both".into());
        }
        Ok(RunConfig {
            command,
            identity_id: Some(identity_id),
            params,
            n: run.n,
            n_range,
            mode: run.mode.map(Mode::from),
            precision_bits: run.precision_bits,
            eps: run.eps,
            seed: run.seed,
            trials: run.trials,
            format: Some(run.format),
            output_path: run.output,
            input_path: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhyper::scalar::rat;

    #[test]
    fn params_and_ranges() {
        let p = parse_params("q=1/2, a=1/3+1/4*i,b=-2").unwrap();
        assert_eq!(p["q"], rat(1, 2));
        assert_eq!(p["a"], ExactScalar::gauss(1, 3, 1, 4));
        assert_eq!(p["b"], rat(-2, 1));
        assert!(parse_params("").unwrap().is_empty());
        assert!(parse_params("q").is_err());
        assert!(parse_params("q=1/2,q=1/3").is_err());
        assert!(parse_params("q=x").is_err());
        assert_eq!(parse_n_range("0..8"), Ok((0, 8)));
        assert_eq!(parse_n_range("2..=5"), Ok((2, 5)));
        assert!(parse_n_range("5..2").is_err());
        assert!(parse_n_range("5").is_err());
    }

    #[test]
    fn validation() {
        let parse = |args: &[&str]| RunConfig::from_cli(Cli::try_parse_from(args).unwrap());
        assert!(parse(&["qhyper", "verify", "X", "--precision-bits", "32"]).is_err());
        assert!(parse(&["qhyper", "verify", "X", "--eps", "0"]).is_err());
        assert!(parse(&["qhyper", "verify", "X", "--n-range", "0..3"]).is_err());
        assert!(parse(&["qhyper", "sweep", "X", "--trials", "0"]).is_err());
        assert!(parse(&["qhyper", "verify", "X", "--params", "sigma=1/2", "--sigma", "1/3"]).is_err());
        let c = parse(&["qhyper", "verify", "X", "--params", "q=1/2", "--sigma", "3/5", "--f", "3/2"]).unwrap();
        assert_eq!(c.params["sigma"], rat(3, 5));
        assert_eq!(c.params["f"], rat(3, 2));
    }
}
