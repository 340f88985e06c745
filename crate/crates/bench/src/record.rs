use std::io::Write;

use oscm_gaps::{count_crossings, count_gaps, BipartiteInstance};
use serde::{Deserialize, Serialize};

use crate::algo::{AlgoSpec, Outcome};
use crate::error::CliError;

/// One CSV row: a single algorithm run on a single instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub f_dm: Option<f64>,
    pub deg_avg: Option<f64>,
    pub algo: String,
    pub k: Option<usize>,
    pub crossings: Option<u64>,
    pub gaps: Option<usize>,
    pub wall_time_ms: Option<f64>,
    pub status: String,
    pub optimal_crossings: Option<u64>,
    pub ratio_crossings: Option<f64>,
    pub ratio_time: Option<f64>,
}

/// Instance metadata copied into every record.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceMeta {
    pub instance_id: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub f_dm: Option<f64>,
    pub deg_avg: Option<f64>,
}

impl InstanceMeta {
    fn record(&self, spec: &AlgoSpec, status: String) -> RunRecord {
        RunRecord {
            instance_id: self.instance_id.clone(),
            seed: self.seed,
            n: self.n,
            f_dm: self.f_dm,
            deg_avg: self.deg_avg,
            algo: spec.name(),
            k: spec.k(),
            crossings: None,
            gaps: None,
            wall_time_ms: None,
            status,
            optimal_crossings: None,
            ratio_crossings: None,
            ratio_time: None,
        }
    }
}

/// Milliseconds rounded to microseconds.
fn millis(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// Builds a record from a finished run. Crossings and gaps are recounted from the permutation.
pub fn record_run(
    inst: &BipartiteInstance,
    meta: &InstanceMeta,
    spec: &AlgoSpec,
    outcome: &Outcome,
) -> Result<RunRecord, CliError> {
    let crossings = count_crossings(inst, &outcome.permutation)?;
    let gaps = count_gaps(inst, &outcome.permutation);
    if !spec.admits(&gaps) {
        return Err(CliError::Internal(format!("{spec} produced {} disallowed gaps", gaps.count)));
    }
    let mut r = meta.record(spec, outcome.status.as_str().to_string());
    r.crossings = Some(crossings);
    r.gaps = Some(gaps.count);
    r.wall_time_ms = Some(millis(outcome.wall_time));
    Ok(r)
}

/// Row for a run that failed; the harness keeps going.
pub fn record_failure(meta: &InstanceMeta, spec: &AlgoSpec, err: &CliError) -> RunRecord {
    meta.record(spec, format!("error: {err}"))
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(CliError::from)
}

pub fn read_csv(text: &str) -> Result<Vec<RunRecord>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|row| row.map_err(|e| CliError::Input(e.to_string()))).collect()
}

pub const HEADER: [&str; 14] = [
    "instance_id",
    "seed",
    "n",
    "f_dm",
    "deg_avg",
    "algo",
    "k",
    "crossings",
    "gaps",
    "wall_time_ms",
    "status",
    "optimal_crossings",
    "ratio_crossings",
    "ratio_time",
];
