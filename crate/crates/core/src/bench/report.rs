//! CSV rendering of bench reports. Floating values use exactly six fractional
//! digits so the output is byte-stable.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BenchReport, BenchRow};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    axis: String,
    algorithm: String,
    metric: String,
    mean: String,
    ci_half_width: String,
    repetitions: usize,
    seed: u64,
}

pub fn to_csv(report: &BenchReport) -> Result<String> {
    if report.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.rows {
        w.serialize(CsvRow {
            axis: r.axis.clone(),
            algorithm: r.algorithm.clone(),
            metric: r.metric.as_str().to_string(),
            mean: format!("{:.6}", r.mean),
            ci_half_width: format!("{:.6}", r.ci_half_width),
            repetitions: r.repetitions,
            seed: r.seed,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit_csv(report: &BenchReport, path: &Path) -> Result<()> {
    let text = to_csv(report)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// Reads rows written by [`to_csv`]; samples are not stored and come back
/// empty.
pub fn parse_csv(text: &str) -> Result<BenchReport> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in r.deserialize::<CsvRow>() {
        let rec = rec?;
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{s}` in report")))
        };
        rows.push(BenchRow {
            axis: rec.axis,
            algorithm: rec.algorithm,
            metric: rec.metric.parse()?,
            mean: num(&rec.mean)?,
            ci_half_width: num(&rec.ci_half_width)?,
            repetitions: rec.repetitions,
            seed: rec.seed,
            samples: Vec::new(),
        });
    }
    Ok(BenchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Metric;

    fn row(axis: &str, mean: f64, ci: f64) -> BenchRow {
        BenchRow {
            axis: axis.into(),
            algorithm: "cfff:1/2".into(),
            metric: Metric::Ratio,
            mean,
            ci_half_width: ci,
            repetitions: 100,
            seed: 7,
            samples: vec![mean],
        }
    }

    #[test]
    fn empty_report_refused() {
        assert!(matches!(to_csv(&BenchReport::default()), Err(Error::EmptyReport)));
    }

    #[test]
    fn two_points_two_rows() {
        let report = BenchReport { rows: vec![row("D=0", 1.25, 0.01), row("D=1", 1.0712345678, 0.0049999)] };
        let text = to_csv(&report).unwrap();
        assert_eq!(
            text,
            "axis,algorithm,metric,mean,ci_half_width,repetitions,seed\n\
             D=0,cfff:1/2,ratio,1.250000,0.010000,100,7\n\
             D=1,cfff:1/2,ratio,1.071235,0.005000,100,7\n"
        );
    }

    #[test]
    fn round_trip_at_six_digits() {
        let report = BenchReport { rows: vec![row("m=3", 1.123456789, 0.000123456), row("m=10", 2.0, 0.0)] };
        let text = to_csv(&report).unwrap();
        let back = parse_csv(&text).unwrap();
        assert_eq!(back.rows.len(), 2);
        for (a, b) in report.rows.iter().zip(&back.rows) {
            assert_eq!((&a.axis, &a.algorithm, a.metric, a.repetitions, a.seed), (&b.axis, &b.algorithm, b.metric, b.repetitions, b.seed));
            assert!((a.mean - b.mean).abs() <= 5e-7);
            assert!((a.ci_half_width - b.ci_half_width).abs() <= 5e-7);
        }
        assert_eq!(to_csv(&back).unwrap(), text);
    }
}
