use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankone::{FactorKind, PointsetMode, Regime};

#[derive(Debug, Parser)]
#[command(
    name = "rankone",
    version,
    about = "Rank-one tensor recovery experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build detector point sets and summarise their parameters.
    #[command(args_override_self = true)]
    Detect {
        #[command(flatten)]
        exp: Experiment,
        /// Drop repeated points from the moderate construction.
        #[arg(long)]
        dedup: bool,
    },
    /// Run the recovery algorithm on test functions and tabulate cost and error.
    #[command(args_override_self = true)]
    Approximate {
        #[command(flatten)]
        exp: Experiment,
        /// Test functions fed to the algorithm.
        #[arg(long, value_enum, default_value_t = Functions::Mixed)]
        functions: Functions,
        /// Replay a point-set file as the detector instead of building one.
        #[arg(long)]
        detector_file: Option<PathBuf>,
        /// Grid budget of the error estimate.
        #[arg(long, default_value_t = rankone::recover::ESTIMATE_BUDGET)]
        estimate_budget: u64,
    },
    /// Tabulate cost bounds, actual worst-case costs and tractability over a grid.
    #[command(args_override_self = true)]
    Regimes {
        #[command(flatten)]
        exp: Experiment,
    },
    /// Run fooling constructions against truncated detectors.
    #[command(args_override_self = true)]
    Lowerbound {
        #[command(flatten)]
        exp: Experiment,
        /// Number of oracle calls granted to the algorithm (default: one
        /// fewer than the family size).
        #[arg(long)]
        budget: Option<u64>,
        /// Use the family's canonical hitting set as the point set.
        #[arg(long)]
        hitting_set: bool,
        /// Grid budget of the error estimate.
        #[arg(long, default_value_t = rankone::recover::ESTIMATE_BUDGET)]
        estimate_budget: u64,
    },
    /// Print the exact dispersion of a point-set file.
    Dispersion { file: PathBuf },
}

#[derive(Clone, Debug, Args)]
pub struct Experiment {
    /// Smoothness order.
    #[arg(long)]
    pub r: u32,
    /// Bound on the r-th derivative.
    #[arg(long = "M")]
    pub m: f64,
    /// Dimensions: `3`, `1..4` (inclusive) or `1,2,5`.
    #[arg(long, value_parser = parse_dims)]
    pub d: Dims,
    /// Accuracies, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_mode, default_value = "verified")]
    pub mode: PointsetMode,
    /// Constant in the reconstruction budget.
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    /// Use this regime's construction regardless of M.
    #[arg(long, value_parser = parse_regime)]
    pub regime_override: Option<Regime>,
    /// Output directory; tables go to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// File of `key=value` lines with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dims(pub Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functions {
    Mixed,
    Spline,
    TruncatedPower,
    Rooted,
    Forced,
    Zero,
}

impl Functions {
    pub fn source(self) -> rankone::recover::TestFunctions {
        use rankone::recover::TestFunctions::{Random, Zero};
        match self {
            Functions::Mixed => Random(FactorKind::Mixed),
            Functions::Spline => Random(FactorKind::Spline),
            Functions::TruncatedPower => Random(FactorKind::TruncatedPower),
            Functions::Rooted => Random(FactorKind::Rooted),
            Functions::Forced => Random(FactorKind::Forced),
            Functions::Zero => Zero,
        }
    }
}

fn parse_mode(s: &str) -> Result<PointsetMode, String> {
    s.parse().map_err(|e: rankone::Error| e.to_string())
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e: rankone::Error| e.to_string())
}

pub fn parse_dims(s: &str) -> Result<Dims, String> {
    let one = |t: &str| -> Result<usize, String> {
        let d: usize = t
            .trim()
            .parse()
            .map_err(|_| format!("bad dimension `{t}`"))?;
        if d == 0 {
            return Err("dimensions start at 1".into());
        }
        Ok(d)
    };
    let dims = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (one(a)?, one(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(one).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Dims(dims))
}

/// Splices `key=value` lines from the `--config` file into the argument
/// list right after the subcommand, so that later command-line flags
/// override them.
pub fn with_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let injected = config_flags(Path::new(&path))?;
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map_or(rest.len(), |i| i + 2);
    rest.splice(at..at, injected);
    Ok(rest)
}

fn config_flags(path: &Path) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut flags = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), n + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => flags.push(format!("--{key}={value}")),
        }
    }
    Ok(flags)
}
