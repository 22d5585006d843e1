//! Randomized verification suites and their JSON report.
//!
//! Every check is a plain function of an RNG and a [`Ctx`], so suites can be
//! run whole or check by check. Each check draws from its own stream, derived
//! from the seed and the qualified check name.

pub mod cotype;
pub mod group;
pub mod momentum;
pub mod quantization;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::json::Mode;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_N: usize = 2;
pub const DEFAULT_EXACT_TRIALS: usize = 1000;
pub const DEFAULT_QUANT_TRIALS: usize = 20;
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Group,
    Momentum,
    Cotype,
    Quantization,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Group => "group",
            Suite::Momentum => "momentum",
            Suite::Cotype => "cotype",
            Suite::Quantization => "quantization",
            Suite::All => "all",
        }
    }

    pub fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Group,
                Suite::Momentum,
                Suite::Cotype,
                Suite::Quantization,
            ],
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub samples: usize,
    pub half_width: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            samples: 2048,
            half_width: 8.0,
        }
    }
}

impl std::str::FromStr for GridConfig {
    type Err = String;

    /// `"N,L"`, e.g. `"2048,8"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, l) = s
            .split_once(',')
            .ok_or_else(|| format!("expected N,L but got {s:?}"))?;
        let samples = n
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("bad N: {e}"))?;
        let half_width = l.trim().parse::<f64>().map_err(|e| format!("bad L: {e}"))?;
        if samples < 2 || !samples.is_power_of_two() {
            return Err(format!("N must be a power of two, got {samples}"));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(format!("L must be positive, got {half_width}"));
        }
        Ok(Self {
            samples,
            half_width,
        })
    }
}

/// Settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub grid: GridConfig,
    pub mode: Mode,
}

impl Config {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            n: DEFAULT_N,
            seed: DEFAULT_SEED,
            trials: None,
            tol: None,
            grid: GridConfig::default(),
            mode: Mode::Exact,
        }
    }

    fn ctx(&self, suite: Suite) -> Ctx {
        let trials = self.trials.unwrap_or(match suite {
            Suite::Quantization => DEFAULT_QUANT_TRIALS,
            _ => DEFAULT_EXACT_TRIALS,
        });
        let mode = match suite {
            Suite::Quantization => Mode::Float,
            _ => self.mode,
        };
        Ctx {
            n: self.n,
            trials,
            tol: self.tol,
            grid: self.grid,
            mode,
        }
    }
}

/// What a single check needs to know.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ctx {
    pub n: usize,
    pub trials: usize,
    /// Overrides the default tolerance of every defect check.
    pub tol: Option<f64>,
    pub grid: GridConfig,
    pub mode: Mode,
}

impl Ctx {
    pub fn new(n: usize, trials: usize, mode: Mode) -> Self {
        Self {
            n,
            trials,
            tol: None,
            grid: GridConfig::default(),
            mode,
        }
    }

    /// Tolerance for the algebraic suites: zero when exact.
    pub fn algebra_tol(&self) -> f64 {
        match self.mode {
            Mode::Exact => self.tol.unwrap_or(0.0),
            Mode::Float => self.tol.unwrap_or(DEFAULT_FLOAT_TOL),
        }
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub instances: usize,
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

/// Accumulates instances of one check.
pub struct Tally {
    name: String,
    tolerance: f64,
    mode: Mode,
    instances: usize,
    max_defect: f64,
    all_hold: bool,
    counterexample: Option<Value>,
}

impl Tally {
    pub fn new(name: &str, tolerance: f64, mode: Mode) -> Self {
        Self {
            name: name.to_string(),
            tolerance,
            mode,
            instances: 0,
            max_defect: 0.0,
            all_hold: true,
            counterexample: None,
        }
    }

    /// Records one instance. `holds` is the verdict (exact equality in exact
    /// mode); `witness` is only built for the first failure.
    pub fn record(&mut self, holds: bool, defect: f64, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        let holds = holds && defect.is_finite();
        if defect.is_nan() || defect > self.max_defect {
            self.max_defect = if defect.is_nan() {
                f64::INFINITY
            } else {
                defect
            };
        }
        if !holds {
            self.all_hold = false;
            if self.counterexample.is_none() {
                let mut w = witness();
                if let Value::Object(map) = &mut w {
                    map.insert("defect".into(), crate::json::JsonScalar::to_json(&defect));
                }
                self.counterexample = Some(w);
            }
        }
    }

    /// Records a float defect against the tolerance.
    pub fn record_defect(&mut self, defect: f64, witness: impl FnOnce() -> Value) {
        let holds = defect <= self.tolerance;
        self.record(holds, defect, witness);
    }

    pub fn finish(self) -> CheckRecord {
        CheckRecord {
            check: self.name,
            instances: self.instances,
            max_defect: self.max_defect,
            tolerance: self.tolerance,
            pass: self.all_hold,
            mode: self.mode,
            counterexample: self.counterexample,
        }
    }
}

pub type CheckFn = fn(&mut ChaCha8Rng, &Ctx) -> CheckRecord;

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// RNG stream for `suite/check` under `seed`.
pub fn stream(seed: u64, suite: &str, check: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&format!("{suite}/{check}")))
}

/// Checks of a single suite, in report order.
pub fn checks(suite: Suite, mode: Mode) -> Vec<(&'static str, CheckFn)> {
    match (suite, mode) {
        (Suite::Group, Mode::Exact) => group::checks::<heis_core::Rational>(),
        (Suite::Group, Mode::Float) => group::checks::<f64>(),
        (Suite::Momentum, Mode::Exact) => momentum::checks::<heis_core::Rational>(),
        (Suite::Momentum, Mode::Float) => momentum::checks::<f64>(),
        (Suite::Cotype, Mode::Exact) => cotype::checks::<heis_core::Rational>(),
        (Suite::Cotype, Mode::Float) => cotype::checks::<f64>(),
        (Suite::Quantization, _) => quantization::checks(),
        (Suite::All, _) => Vec::new(),
    }
}

/// Runs one named check of a suite.
pub fn run_check(suite: Suite, name: &str, seed: u64, ctx: &Ctx) -> Option<CheckRecord> {
    checks(suite, ctx.mode)
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(n, f)| f(&mut stream(seed, suite.as_str(), n), ctx))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub trials: Option<usize>,
    pub mode: Mode,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub wall_time_ms: u64,
}

pub fn run(config: &Config) -> VerifyReport {
    let start = Instant::now();
    let prefix = config.suite == Suite::All;
    let mut records = Vec::new();
    for part in config.suite.parts() {
        let ctx = config.ctx(part);
        for (name, f) in checks(part, ctx.mode) {
            let mut record = f(&mut stream(config.seed, part.as_str(), name), &ctx);
            if prefix {
                record.check = format!("{}/{}", part.as_str(), record.check);
            }
            records.push(record);
        }
    }
    VerifyReport {
        suite: config.suite.as_str().to_string(),
        seed: config.seed,
        n: config.n,
        trials: config.trials,
        mode: config.mode,
        pass: records.iter().all(|r| r.pass),
        checks: records,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_flag_parsing() {
        let g: GridConfig = "2048,8".parse().unwrap();
        assert_eq!(g, GridConfig::default());
        assert!("2000,8".parse::<GridConfig>().is_err());
        assert!("2048".parse::<GridConfig>().is_err());
        assert!("2048,-1".parse::<GridConfig>().is_err());
    }

    #[test]
    fn tally_keeps_first_counterexample() {
        let mut t = Tally::new("demo", 1e-3, Mode::Float);
        t.record_defect(1e-4, || Value::Null);
        t.record_defect(0.5, || serde_json::json!({"k": 1}));
        t.record_defect(0.7, || serde_json::json!({"k": 2}));
        let r = t.finish();
        assert!(!r.pass);
        assert_eq!(r.instances, 3);
        assert_eq!(r.max_defect, 0.7);
        assert_eq!(r.counterexample.unwrap()["k"], 1);
    }

    #[test]
    fn nan_defects_fail() {
        let mut t = Tally::new("demo", 1.0, Mode::Float);
        t.record_defect(f64::NAN, || serde_json::json!({}));
        let r = t.finish();
        assert!(!r.pass);
        assert!(r.max_defect.is_infinite());
    }

    #[test]
    fn streams_differ_by_name_and_seed() {
        use rand::Rng;
        let a: u64 = stream(42, "group", "x").gen();
        let b: u64 = stream(42, "group", "y").gen();
        let c: u64 = stream(43, "group", "x").gen();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, stream(42, "group", "x").gen::<u64>());
    }
}
