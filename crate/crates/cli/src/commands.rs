use std::fmt;
use std::path::Path;

use rand::RngExt;
use rankone::adversary::{
    fooling_function_small, small_fooling_capacity, witness, witness_function, FoolingFamily,
};
use rankone::detectors::{formula_detector_size, Detector, DetectorOptions};
use rankone::model::stream_rng;
use rankone::pointsets::{dispersion_exact, halton_baseline_size, VERIFY_MAX_DIM};
use rankone::recover::{cost_actual_vs_bound, cost_bound_for};
use rankone::{
    adversary::classify_tractability, choose_m, Error, PointSet, PointsetMode, Recovery,
    RecoveryConfig, Regime, SmoothnessClass,
};

use crate::args::{Command, Experiment, Format, Functions};
use crate::table::{Cell, Table};

/// Largest random point set the lower-bound demo draws.
const MAX_DEMO_POINTS: u64 = 1 << 20;
const MAX_LARGE_DEMO_DIM: usize = 12;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// A row violated its error or cost guarantee.
    Assertion(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Usage(_) | Error::Parse(_) | Error::Domain(_)) => 2,
            Failure::Core(Error::Resource(_)) => 4,
            Failure::Core(_) => 1,
            Failure::Assertion(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Assertion(msg) => write!(f, "assertion failed: {msg}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Detect { exp, dedup } => detect(&exp, dedup),
        Command::Approximate {
            exp,
            functions,
            detector_file,
            estimate_budget,
        } => approximate(&exp, functions, detector_file.as_deref(), estimate_budget),
        Command::Regimes { exp } => regimes(&exp),
        Command::Lowerbound {
            exp,
            budget,
            hitting_set,
            estimate_budget,
        } => lowerbound(&exp, budget, hitting_set, estimate_budget),
        Command::Dispersion { file } => dispersion(&file),
    }
}

impl Experiment {
    fn classes(&self) -> impl Iterator<Item = Result<(SmoothnessClass, f64), Error>> + '_ {
        self.d.0.iter().flat_map(move |&d| {
            self.eps
                .iter()
                .map(move |&eps| SmoothnessClass::new(self.r, self.m, d).map(|c| (c, eps)))
        })
    }

    fn recovery_config(&self) -> RecoveryConfig {
        RecoveryConfig {
            c1: self.c1,
            regime: self.regime_override,
            ..RecoveryConfig::with_mode(self.mode)
        }
    }

    fn extension(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn emit(&self, name: &str, table: &Table) -> Outcome {
        let text = table.render(self.format);
        match &self.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}.{}", self.extension())), text)?;
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn detect(exp: &Experiment, dedup: bool) -> Outcome {
    let mut table = Table::new(&[
        "regime", "r", "M", "d", "eps", "size", "mode", "rho", "target", "delta", "c_delta", "d0",
        "gamma", "file",
    ]);
    let opts = DetectorOptions {
        dedup,
        ..DetectorOptions::with_mode(exp.mode)
    };
    for item in exp.classes() {
        let (class, eps) = item?;
        let det = Detector::build(&class, eps, exp.regime_override, &opts)?;
        let file = match &exp.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let name = format!("detector_d{}_eps{eps}.txt", class.d());
                det.points.write_to(&dir.join(&name), &[det.header()])?;
                Some(name)
            }
            None => None,
        };
        let p = &det.params;
        table.push(vec![
            p.regime.as_str().into(),
            class.r().into(),
            class.m().into(),
            class.d().into(),
            eps.into(),
            det.points.len().into(),
            det.mode.as_str().into(),
            p.rho.into(),
            p.target_dispersion.into(),
            p.delta.into(),
            p.c_delta.into(),
            p.d0.into(),
            p.gamma.into(),
            file.into(),
        ]);
    }
    exp.emit("detect", &table)
}

fn approximate(
    exp: &Experiment,
    functions: Functions,
    detector_file: Option<&Path>,
    estimate_budget: u64,
) -> Outcome {
    let mut table = Table::new(&[
        "seed",
        "regime",
        "d",
        "eps",
        "detector_size",
        "m",
        "detector_evals",
        "interp_evals",
        "total",
        "bound",
        "measured_error",
        "pass",
    ]);
    let replay = detector_file.map(PointSet::read_from).transpose()?;
    let config = exp.recovery_config();
    let mut failed = 0usize;
    for item in exp.classes() {
        let (class, eps) = item?;
        let recovery = match &replay {
            Some((points, _)) => {
                let regime = exp.regime_override.unwrap_or(class.regime());
                Recovery::with_points(&class, eps, &config, regime, points.clone())?
            }
            None => Recovery::new(&class, eps, &config)?,
        };
        let rows = cost_actual_vs_bound(
            &recovery,
            exp.trials,
            exp.seed,
            functions.source(),
            estimate_budget,
        )?;
        for row in rows {
            failed += usize::from(!row.pass);
            let c = row.cost;
            table.push(vec![
                exp.seed.into(),
                row.regime.as_str().into(),
                row.d.into(),
                row.eps.into(),
                c.detector_size.into(),
                c.m.into(),
                c.detector_evals.into(),
                c.interpolation_evals.into(),
                c.total.into(),
                c.predicted_bound.into(),
                row.measured_error.into(),
                row.pass.into(),
            ]);
        }
    }
    exp.emit("approximate", &table)?;
    if failed > 0 {
        return Err(Failure::Assertion(format!(
            "{failed} trial(s) broke the error or cost guarantee"
        )));
    }
    Ok(())
}

fn detector_size(class: &SmoothnessClass, eps: f64, regime: Regime, exp: &Experiment) -> f64 {
    let size = match exp.mode {
        PointsetMode::Formula => formula_detector_size(class, eps, regime, None),
        PointsetMode::Verified => Detector::build(
            class,
            eps,
            Some(regime),
            &DetectorOptions::with_mode(exp.mode),
        )
        .map(|det| det.points.len() as f64),
    };
    size.unwrap_or(f64::NAN)
}

fn regimes(exp: &Experiment) -> Outcome {
    let mut table = Table::new(&[
        "r",
        "M",
        "d",
        "eps",
        "regime",
        "tractability",
        "bound",
        "detector_size",
        "m",
        "actual",
        "halton_baseline",
    ]);
    for item in exp.classes() {
        let (class, eps) = item?;
        let regime = exp.regime_override.unwrap_or(class.regime());
        let bound = cost_bound_for(&class, eps, exp.c1, regime, None).unwrap_or(f64::NAN);
        let size = detector_size(&class, eps, regime, exp);
        let m = choose_m(&class, eps, exp.c1);
        let halton = halton_baseline_size(&class, eps);
        let baseline = if halton.saturated {
            10f64.powf(halton.log10)
        } else {
            halton.value as f64
        };
        table.push(vec![
            class.r().into(),
            class.m().into(),
            class.d().into(),
            eps.into(),
            regime.as_str().into(),
            classify_tractability(class.r(), class.m()).as_str().into(),
            bound.into(),
            size.into(),
            m.into(),
            (size + m as f64).into(),
            baseline.into(),
        ]);
    }
    exp.emit("regimes", &table)
}

fn random_points(d: usize, n: u64, seed: u64, trial: u64) -> Result<PointSet, Failure> {
    if n > MAX_DEMO_POINTS {
        return Err(Error::Resource(format!(
            "{n} random points requested; the cap is {MAX_DEMO_POINTS}"
        ))
        .into());
    }
    let mut rng = stream_rng(seed, &[d as u64, trial]);
    let coords = (0..n as usize * d)
        .map(|_| rng.random_range(0.0..1.0))
        .collect();
    Ok(PointSet::new(d, coords)?)
}

fn lowerbound(
    exp: &Experiment,
    budget: Option<u64>,
    hitting_set: bool,
    estimate_budget: u64,
) -> Outcome {
    let mut table = Table::new(&[
        "regime",
        "d",
        "budget",
        "family_size",
        "evaded_member",
        "witnessed_error",
    ]);
    let config = exp.recovery_config();
    for item in exp.classes() {
        let (class, eps) = item?;
        let d = class.d();
        let regime = exp.regime_override.unwrap_or(class.regime());
        if regime == Regime::Small {
            if hitting_set {
                return Err(Error::Usage(
                    "the small-regime construction has no hitting set".into(),
                )
                .into());
            }
            let n = budget.unwrap_or(small_fooling_capacity(class.r(), d) as u64);
            for trial in 0..exp.trials {
                let points = random_points(d, n, exp.seed, trial)?;
                let fool = fooling_function_small(&class, &points)?;
                let recovery = Recovery::with_points(&class, eps, &config, regime, points)?;
                let w = witness_function(&recovery, &fool.function, estimate_budget)?;
                table.push(vec![
                    regime.as_str().into(),
                    d.into(),
                    n.into(),
                    Cell::Empty,
                    Some(w.member).filter(|_| w.outputs_agree).into(),
                    w.error.into(),
                ]);
            }
            continue;
        }
        if regime == Regime::Large && d > MAX_LARGE_DEMO_DIM {
            return Err(Error::Usage(format!(
                "the large-regime demo needs d <= {MAX_LARGE_DEMO_DIM}, got {d}"
            ))
            .into());
        }
        let family = match regime {
            Regime::Large => FoolingFamily::large(&class)?,
            _ => FoolingFamily::moderate(&class, eps)?,
        };
        let n = budget.unwrap_or(family.size() - 1);
        for trial in 0..exp.trials {
            let points = if hitting_set {
                family.hitting_set()?
            } else {
                random_points(d, n, exp.seed, trial)?
            };
            let size = points.len();
            let recovery = Recovery::with_points(&class, eps, &config, regime, points)?;
            let w = witness(&recovery, &family, estimate_budget)?;
            table.push(vec![
                regime.as_str().into(),
                d.into(),
                size.into(),
                family.size().into(),
                w.as_ref().map(|w| w.member).into(),
                w.as_ref().map(|w| w.error).into(),
            ]);
        }
    }
    exp.emit("lowerbound", &table)
}

fn dispersion(file: &Path) -> Outcome {
    let (points, _) = PointSet::read_from(file)?;
    if points.d() > VERIFY_MAX_DIM {
        return Err(Error::Resource(format!(
            "exact dispersion is limited to d <= {VERIFY_MAX_DIM}, the file has d = {}",
            points.d()
        ))
        .into());
    }
    println!("{:.12}", dispersion_exact(&points)?);
    Ok(())
}
