//! Benchmark harness: runs algorithms over seeded instance series and
//! aggregates approximation ratios (or mean costs) with normal-approximation
//! confidence intervals.
//!
//! Instance `i` of a series is generated from stream `i` of the master seed,
//! so results do not depend on how instances are scheduled over threads.

mod chart;
mod report;

pub use chart::{emit_chart, to_svg};
pub use report::{emit_csv, parse_csv, to_csv};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::instgen::{generate, GenConfig, GenMode};
use crate::solvers::Algorithm;
use crate::verify::{verify_packing, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedMode {
    /// Instance `i` uses stream `i`.
    Derived,
    /// Every instance uses stream 0.
    Identical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    /// Number of bin classes.
    M,
    /// Cut limit.
    D,
}

impl Axis {
    fn label(self, value: u64) -> String {
        match self {
            Axis::M => format!("m={value}"),
            Axis::D => format!("D={value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub axis: Axis,
    pub values: Vec<u64>,
}

fn default_alpha() -> f64 {
    0.05
}

fn default_seed_mode() -> SeedMode {
    SeedMode::Derived
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub gen: GenConfig,
    pub algorithms: Vec<Algorithm>,
    pub repetitions: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_seed_mode")]
    pub seed_mode: SeedMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

impl SeriesSpec {
    pub fn new(gen: GenConfig, algorithms: Vec<Algorithm>, repetitions: usize) -> Self {
        SeriesSpec {
            gen,
            algorithms,
            repetitions,
            alpha: default_alpha(),
            seed_mode: SeedMode::Derived,
            sweep: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions < 2 {
            return Err(Error::Config("repetitions must be at least 2".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha {} must lie in (0, 1)", self.alpha)));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms given".into()));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(Error::Config("sweep has no values".into()));
            }
            for &v in &sweep.values {
                self.at(sweep.axis, v)?.gen.validate()?;
            }
        }
        self.gen.validate()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SeriesSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    fn at(&self, axis: Axis, value: u64) -> Result<SeriesSpec> {
        let mut spec = self.clone();
        spec.sweep = None;
        match axis {
            Axis::M => {
                spec.gen.m = usize::try_from(value).map_err(|_| Error::Config(format!("m = {value}")))?
            }
            Axis::D => {
                spec.gen.cut_limit = u32::try_from(value).map_err(|_| Error::Config(format!("D = {value}")))?
            }
        }
        Ok(spec)
    }

    fn metric(&self) -> Metric {
        match self.gen.mode {
            GenMode::KnownOptimum => Metric::Ratio,
            GenMode::Free => Metric::MeanCost,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Cost divided by the known optimum.
    Ratio,
    /// Raw cost.
    MeanCost,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Ratio => "ratio",
            Metric::MeanCost => "mean-cost",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(Metric::Ratio),
            "mean-cost" => Ok(Metric::MeanCost),
            other => Err(Error::Config(format!("unknown metric `{other}`"))),
        }
    }
}

/// One (axis point, algorithm) aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub axis: String,
    pub algorithm: String,
    pub metric: Metric,
    pub mean: f64,
    pub ci_half_width: f64,
    pub repetitions: usize,
    pub seed: u64,
    /// Per-instance values in instance order; empty for rows read from CSV.
    pub samples: Vec<f64>,
}

impl BenchRow {
    pub fn ci_low(&self) -> f64 {
        self.mean - self.ci_half_width
    }

    pub fn ci_high(&self) -> f64 {
        self.mean + self.ci_half_width
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, axis: &str, algorithm: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.axis == axis && r.algorithm == algorithm)
    }
}

/// `z_{1-alpha/2}` of the standard normal distribution.
pub fn z_value(alpha: f64) -> f64 {
    Normal::standard().inverse_cdf(1.0 - alpha / 2.0)
}

/// Mean and half-width `z · s / sqrt(n)` with the sample standard deviation.
pub fn mean_ci(samples: &[f64], alpha: f64) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, z_value(alpha) * var.sqrt() / n.sqrt())
}

fn run_instance(spec: &SeriesSpec, index: usize) -> Result<Vec<f64>> {
    let stream = match spec.seed_mode {
        SeedMode::Derived => index as u64,
        SeedMode::Identical => 0,
    };
    let wrap = |source: Error| Error::Series {
        index,
        seed: spec.gen.seed,
        stream,
        source: Box::new(source),
    };
    let instance = generate(&spec.gen, stream).map_err(wrap)?;
    spec.algorithms
        .iter()
        .map(|algo| {
            let res = algo.solve(&instance).map_err(wrap)?;
            let cost = match verify_packing(&res.packing, &instance) {
                Verdict::Valid { cost } => cost,
                Verdict::Invalid(v) => {
                    return Err(wrap(Error::Structural(format!("{algo} produced an invalid packing: {v}"))))
                }
            };
            match spec.metric() {
                Metric::MeanCost => Ok(cost as f64),
                Metric::Ratio => {
                    let opt = instance.known_optimum().ok_or_else(|| {
                        wrap(Error::Config("ratio metric needs instances with a known optimum".into()))
                    })?;
                    if cost < opt {
                        return Err(wrap(Error::Structural(format!(
                            "{algo} cost {cost} is below the known optimum {opt}"
                        ))));
                    }
                    Ok(cost as f64 / opt as f64)
                }
            }
        })
        .collect()
}

fn run_point(spec: &SeriesSpec, axis: &str) -> Result<Vec<BenchRow>> {
    let per_instance: Vec<Result<Vec<f64>>> = (0..spec.repetitions)
        .into_par_iter()
        .map(|i| run_instance(spec, i))
        .collect();
    let mut table = Vec::with_capacity(per_instance.len());
    for r in per_instance {
        table.push(r?);
    }
    Ok(spec
        .algorithms
        .iter()
        .enumerate()
        .map(|(a, algo)| {
            let samples: Vec<f64> = table.iter().map(|row| row[a]).collect();
            let (mean, ci_half_width) = mean_ci(&samples, spec.alpha);
            BenchRow {
                axis: axis.to_string(),
                algorithm: algo.to_string(),
                metric: spec.metric(),
                mean,
                ci_half_width,
                repetitions: spec.repetitions,
                seed: spec.gen.seed,
                samples,
            }
        })
        .collect())
}

/// Runs one series at the base configuration; the axis column reads `-`.
pub fn run_series(spec: &SeriesSpec) -> Result<BenchReport> {
    spec.validate()?;
    let mut base = spec.clone();
    base.sweep = None;
    Ok(BenchReport { rows: run_point(&base, "-")? })
}

/// One series per axis value, concatenated in the order given.
pub fn sweep(axis: Axis, values: &[u64], base: &SeriesSpec) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for &v in values {
        let spec = base.at(axis, v)?;
        spec.validate()?;
        rows.extend(run_point(&spec, &axis.label(v))?);
    }
    Ok(BenchReport { rows })
}

/// Runs the sweep if the spec has one, otherwise a single series.
pub fn run(spec: &SeriesSpec) -> Result<BenchReport> {
    spec.validate()?;
    match &spec.sweep {
        Some(s) => sweep(s.axis, &s.values, spec),
        None => run_series(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostModel;
    use crate::solvers::FillFactor;

    fn spec(mode: GenMode, algorithms: Vec<Algorithm>, reps: usize) -> SeriesSpec {
        let gen = GenConfig { seed: 11, m: 3, n_initial: 60, mode, ..GenConfig::default() };
        SeriesSpec::new(gen, algorithms, reps)
    }

    #[test]
    fn z_at_five_percent() {
        assert!((z_value(0.05) - 1.959964).abs() < 1e-6);
    }

    #[test]
    fn mean_ci_by_hand() {
        let (m, h) = mean_ci(&[1.0, 2.0, 3.0, 4.0], 0.05);
        assert_eq!(m, 2.5);
        let s = (5.0f64 / 3.0).sqrt();
        assert!((h - z_value(0.05) * s / 2.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut s = spec(GenMode::KnownOptimum, vec![Algorithm::Cnfl], 1);
        assert!(s.validate().is_err());
        s.repetitions = 2;
        s.alpha = 1.0;
        assert!(s.validate().is_err());
        s.alpha = 0.05;
        s.algorithms.clear();
        assert!(s.validate().is_err());
        s.algorithms.push(Algorithm::Cnfl);
        assert!(s.validate().is_ok());
        s.sweep = Some(Sweep { axis: Axis::M, values: vec![200] });
        assert!(s.validate().is_err());
    }

    #[test]
    fn cnfl_ratios_at_least_one() {
        let report = run_series(&spec(GenMode::KnownOptimum, vec![Algorithm::Cnfl], 30)).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.metric, Metric::Ratio);
        assert_eq!(row.samples.len(), 30);
        assert!(row.samples.iter().all(|&r| r >= 1.0));
        assert!(row.mean >= 1.0);
    }

    #[test]
    fn identical_seeds_give_zero_width() {
        let mut s = spec(GenMode::KnownOptimum, vec![Algorithm::Ciffd], 2);
        s.seed_mode = SeedMode::Identical;
        let report = run_series(&s).unwrap();
        assert_eq!(report.rows[0].ci_half_width, 0.0);
    }

    #[test]
    fn free_series_reports_mean_cost() {
        let mut s = spec(GenMode::Free, vec![Algorithm::Cfff(FillFactor::HALF), Algorithm::Cdnfl], 10);
        s.gen.cost_model = CostModel::Monotone;
        let report = run_series(&s).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows.iter().all(|r| r.metric == Metric::MeanCost && r.mean > 100.0));
    }

    #[test]
    fn sweep_labels_rows() {
        let s = spec(GenMode::KnownOptimum, vec![Algorithm::Ciffd, Algorithm::Cnfl], 4);
        let report = sweep(Axis::D, &[0, 2], &s).unwrap();
        let labels: Vec<_> = report.rows.iter().map(|r| (r.axis.as_str(), r.algorithm.as_str())).collect();
        assert_eq!(labels, vec![("D=0", "ciffd"), ("D=0", "cnfl"), ("D=2", "ciffd"), ("D=2", "cnfl")]);
    }

    #[test]
    fn failing_instance_reports_seed() {
        let mut bad = spec(GenMode::KnownOptimum, vec![Algorithm::Cnfl], 3);
        bad.gen.seed = 99;
        bad.gen.m = 0;
        match run_instance(&bad, 2) {
            Err(Error::Series { index: 2, seed: 99, stream: 2, source }) => {
                assert!(matches!(*source, Error::Config(_)))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spec_json_defaults() {
        let text = r#"{"gen":{"seed":3,"m":10},"algorithms":["ciffd","cfff:3/4"],"repetitions":5}"#;
        let s = SeriesSpec::from_json(text).unwrap();
        assert_eq!(s.alpha, 0.05);
        assert_eq!(s.seed_mode, SeedMode::Derived);
        assert_eq!(s.gen.m, 10);
        assert_eq!(s.gen.b_max, 100);
        assert_eq!(s.algorithms[1], Algorithm::Cfff(FillFactor::new(3, 4).unwrap()));
        assert!(SeriesSpec::from_json(r#"{"gen":{},"algorithms":["ciffd"],"repetitions":5,"x":1}"#).is_err());
    }
}
