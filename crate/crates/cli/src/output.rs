//! CSV emission. Every file starts with '#'-prefixed echo lines that make
//! it self-describing, followed by a fixed header row. Floats are written
//! with 17 significant digits so parsing them back is lossless.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use prefloop_core::engine::{SimulationConfig, TrajectoryLog};
use prefloop_core::metrics::{MetricSummary, DEFAULT_SERIES_WINDOW};
use prefloop_core::model::norm;

/// 17 significant digits, enough for an exact f64 round trip.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

/// Single-line JSON echo of a run config.
pub fn config_echo(config: &SimulationConfig) -> String {
    serde_json::to_string(config).expect("config serializes")
}

fn comment_block(out: &mut impl Write, lines: &str) -> std::io::Result<()> {
    for line in lines.lines() {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

/// Write one run's full trajectory.
///
/// Columns: `t,item_index,rating,noiseless_rating,pi_0..pi_{d-1},u_0..u_{d-1},pi_norm`.
/// The t = 0 row is the initial snapshot and has empty interaction fields.
pub fn write_trajectory(path: &Path, log: &TrajectoryLog) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# config: {}", config_echo(&log.config))?;
    let d = log.dim();
    let mut header = String::from("t,item_index,rating,noiseless_rating");
    for i in 0..d {
        header.push_str(&format!(",pi_{i}"));
    }
    for i in 0..d {
        header.push_str(&format!(",u_{i}"));
    }
    header.push_str(",pi_norm");
    writeln!(out, "{header}")?;

    for t in 0..=log.steps() {
        let mut row = String::new();
        if t == 0 {
            row.push_str("0,,,");
        } else {
            row.push_str(&format!(
                "{t},{},{},{}",
                log.selections[t - 1],
                fmt_f64(log.ratings[t - 1]),
                fmt_f64(log.noiseless_ratings[t - 1])
            ));
        }
        for v in &log.preferences[t] {
            row.push(',');
            row.push_str(&fmt_f64(*v));
        }
        for v in &log.estimates[t] {
            row.push(',');
            row.push_str(&fmt_f64(*v));
        }
        row.push(',');
        row.push_str(&fmt_f64(norm(&log.preferences[t])));
        writeln!(out, "{row}")?;
    }
    out.flush()
}

/// One summary row per (config, seed).
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub config_id: String,
    pub seed: u64,
    pub outcome: Result<MetricSummary, String>,
}

pub const SUMMARY_HEADER: &str = "config_id,seed,status,mean_engagement,mean_noiseless_engagement,consumption_entropy,mean_magnitude,peak_count,median_period,amplitude,error";

/// Write the per-run summary table. `echo` is the manifest text embedded as
/// comment lines.
pub fn write_summary(path: &Path, echo: &str, rows: &[SummaryRow]) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    comment_block(&mut out, echo)?;
    writeln!(out, "{SUMMARY_HEADER}")?;
    for row in rows {
        match &row.outcome {
            Ok(summary) => {
                let period = summary
                    .oscillation
                    .median_period
                    .map(fmt_f64)
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},ok,{},{},{},{},{},{},{},",
                    row.config_id,
                    row.seed,
                    fmt_f64(summary.mean_engagement),
                    fmt_f64(summary.mean_noiseless_engagement),
                    fmt_f64(summary.consumption_entropy),
                    fmt_f64(summary.mean_magnitude),
                    summary.oscillation.peak_count(),
                    period,
                    fmt_f64(summary.oscillation.amplitude),
                )?;
            }
            Err(message) => {
                writeln!(
                    out,
                    "{},{},failed,,,,,,,,{}",
                    row.config_id,
                    row.seed,
                    message.replace(',', ";").replace('\n', " ")
                )?;
            }
        }
    }
    out.flush()
}

pub const PLOT_DATA_HEADER: &str = "panel,config_id,seed,x,y";

/// Long-format plot table: per-window series plus one engagement-vs-entropy
/// point per run.
pub fn write_plot_data(path: &Path, echo: &str, rows: &[SummaryRow]) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    comment_block(&mut out, echo)?;
    writeln!(out, "{PLOT_DATA_HEADER}")?;
    for row in rows {
        let Ok(summary) = &row.outcome else { continue };
        let series = [
            ("engagement_series", &summary.engagement_series),
            ("entropy_series", &summary.entropy_series),
            ("magnitude_series", &summary.magnitude_series),
        ];
        for (panel, values) in series {
            for (i, &y) in values.iter().enumerate() {
                let x = ((i + 1) * DEFAULT_SERIES_WINDOW) as f64;
                writeln!(
                    out,
                    "{panel},{},{},{},{}",
                    row.config_id,
                    row.seed,
                    fmt_f64(x),
                    fmt_f64(y)
                )?;
            }
        }
        writeln!(
            out,
            "engagement_vs_entropy,{},{},{},{}",
            row.config_id,
            row.seed,
            fmt_f64(summary.consumption_entropy),
            fmt_f64(summary.mean_engagement)
        )?;
    }
    out.flush()
}
