use std::fmt;
use std::time::Duration;

use oscm_gaps::{generate, BipartiteInstance, GenParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algo::{run_algo, AlgoSpec};
use crate::error::CliError;
use crate::record::{record_failure, record_run, InstanceMeta, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    N,
    FDm,
    DegAvg,
    K,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::N => "n",
            SweepParam::FDm => "f_dm",
            SweepParam::DegAvg => "deg_avg",
            SweepParam::K => "k",
        })
    }
}

fn default_k() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseParams {
    pub n: usize,
    pub f_dm: f64,
    pub deg_avg: f64,
    /// Instance `i` uses seed `seed + i`.
    pub seed: u64,
    /// Gap budget for the kgaps variants when k is not swept.
    #[serde(default = "default_k")]
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub sweep_param: SweepParam,
    pub values: Vec<f64>,
    pub instances: usize,
    pub base_params: BaseParams,
    pub algos: Vec<String>,
}

impl BenchConfig {
    /// Side gaps against two gaps at desk scale: 20 instances, f_dm 0.2, deg_avg 3, swept over n.
    pub fn default_config(full_scale: bool) -> Self {
        let n = if full_scale { 40 } else { 20 };
        BenchConfig {
            sweep_param: SweepParam::N,
            values: vec![n as f64],
            instances: 20,
            base_params: BaseParams { n, f_dm: 0.2, deg_avg: 3.0, seed: 1, k: 2 },
            algos: [
                "median_sidegaps",
                "barycenter_sidegaps",
                "exact_sidegaps",
                "median_kgaps",
                "barycenter_kgaps",
                "exact_kgaps",
            ]
            .map(String::from)
            .to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: BenchConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    fn integral(&self, v: f64) -> Result<usize, CliError> {
        if v >= 0.0 && v.fract() == 0.0 {
            Ok(v as usize)
        } else {
            Err(CliError::Input(format!("{} values must be whole numbers, got {v}", self.sweep_param)))
        }
    }

    /// Generator parameters and gap budget for one sweep value.
    pub fn point(&self, value: f64) -> Result<(GenParams, usize), CliError> {
        let b = &self.base_params;
        let mut params = GenParams { n: b.n, f_dm: b.f_dm, deg_avg: b.deg_avg, seed: b.seed };
        let mut k = b.k;
        match self.sweep_param {
            SweepParam::N => params.n = self.integral(value)?,
            SweepParam::FDm => params.f_dm = value,
            SweepParam::DegAvg => params.deg_avg = value,
            SweepParam::K => k = self.integral(value)?,
        }
        params.validate()?;
        Ok((params, k))
    }

    pub fn specs(&self, k: usize) -> Result<Vec<AlgoSpec>, CliError> {
        self.algos
            .iter()
            .map(|name| {
                let takes_k = name.ends_with("_kgaps");
                AlgoSpec::parse(name, takes_k.then_some(k))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.values.is_empty() || self.algos.is_empty() || self.instances == 0 {
            return Err(CliError::Input("config needs values, algos and at least one instance".into()));
        }
        for &v in &self.values {
            let (_, k) = self.point(v)?;
            self.specs(k)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchOptions {
    pub time_budget: Duration,
    pub jobs: usize,
    /// Leave the timing columns empty so that output is reproducible byte for byte.
    pub omit_timing: bool,
}

/// A record together with the sweep value it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub x: f64,
    pub record: RunRecord,
}

struct Cell {
    x: f64,
    instance: usize,
    spec: AlgoSpec,
}

fn instance_id(param: SweepParam, x: f64, i: usize) -> String {
    format!("{param}={x}#{i}")
}

/// Runs every (sweep value, instance, algorithm) cell and fills in the ratio columns.
pub fn run_bench(config: &BenchConfig, opts: &BenchOptions) -> Result<Vec<BenchRow>, CliError> {
    config.validate()?;
    let mut instances: Vec<(InstanceMeta, BipartiteInstance)> = Vec::new();
    let mut cells = Vec::new();
    for &x in &config.values {
        let (params, k) = config.point(x)?;
        let specs = config.specs(k)?;
        for i in 0..config.instances {
            let params = GenParams { seed: params.seed + i as u64, ..params };
            let meta = InstanceMeta {
                instance_id: instance_id(config.sweep_param, x, i),
                seed: Some(params.seed),
                n: params.n,
                f_dm: Some(params.f_dm),
                deg_avg: Some(params.deg_avg),
            };
            instances.push((meta, generate(&params)?));
            cells.extend(specs.iter().map(|&spec| Cell { x, instance: instances.len() - 1, spec }));
        }
    }

    let run_cell = |cell: &Cell| {
        let (meta, inst) = &instances[cell.instance];
        let record = run_algo(inst, cell.spec, opts.time_budget)
            .and_then(|outcome| record_run(inst, meta, &cell.spec, &outcome))
            .unwrap_or_else(|e| record_failure(meta, &cell.spec, &e));
        BenchRow { x: cell.x, record }
    };
    let mut rows: Vec<BenchRow> = if opts.jobs <= 1 {
        cells.iter().map(run_cell).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        pool.install(|| cells.par_iter().map(run_cell).collect())
    };

    fill_ratios(&mut rows, &cells);
    if opts.omit_timing {
        for row in &mut rows {
            row.record.wall_time_ms = None;
            row.record.ratio_time = None;
        }
    }
    Ok(rows)
}

/// Compares each run with the matching exact run on the same instance, when that reached optimality.
fn fill_ratios(rows: &mut [BenchRow], cells: &[Cell]) {
    for idx in 0..rows.len() {
        let Some(reference) = cells[idx].spec.reference() else {
            continue;
        };
        let found = (0..rows.len()).find(|&j| cells[j].instance == cells[idx].instance && cells[j].spec == reference);
        let Some(j) = found else {
            continue;
        };
        let opt = &rows[j].record;
        if opt.status != "optimal" {
            continue;
        }
        let (opt_cr, opt_ms) = (opt.crossings, opt.wall_time_ms);
        let r = &mut rows[idx].record;
        r.optimal_crossings = opt_cr;
        if let (Some(c), Some(o)) = (r.crossings, opt_cr) {
            r.ratio_crossings = Some(if o == 0 { if c == 0 { 1.0 } else { f64::INFINITY } } else { c as f64 / o as f64 });
        }
        if let (Some(t), Some(o)) = (r.wall_time_ms, opt_ms) {
            if o > 0.0 {
                r.ratio_time = Some(t / o);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(json: &str) -> Result<BenchConfig, CliError> {
        BenchConfig::from_json(json)
    }

    #[test]
    fn parses_sweep_config() {
        let c = config(
            r#"{"sweep_param":"k","values":[1,2],"instances":3,
                "base_params":{"n":10,"f_dm":0.2,"deg_avg":3,"seed":5},
                "algos":["median_kgaps","median_sidegaps"]}"#,
        )
        .unwrap();
        assert_eq!(c.base_params.k, 2);
        let (p, k) = c.point(1.0).unwrap();
        assert_eq!((p.n, k), (10, 1));
        assert_eq!(c.specs(k).unwrap()[0].k(), Some(1));
    }

    #[test]
    fn rejects_bad_configs() {
        let base = r#""base_params":{"n":10,"f_dm":0.2,"deg_avg":3,"seed":5}"#;
        assert!(config(&format!(r#"{{"sweep_param":"n","values":[2.5],"instances":1,{base},"algos":["median_sidegaps"]}}"#)).is_err());
        assert!(config(&format!(r#"{{"sweep_param":"f_dm","values":[1.5],"instances":1,{base},"algos":["median_sidegaps"]}}"#)).is_err());
        assert!(config(&format!(r#"{{"sweep_param":"n","values":[4],"instances":1,{base},"algos":["sifting"]}}"#)).is_err());
        assert!(config(&format!(r#"{{"sweep_param":"n","values":[],"instances":1,{base},"algos":["oracle"]}}"#)).is_err());
        assert!(config(&format!(r#"{{"sweep_param":"m","values":[4],"instances":1,{base},"algos":["oracle"]}}"#)).is_err());
    }

    #[test]
    fn default_config_is_valid() {
        BenchConfig::default_config(false).validate().unwrap();
        assert_eq!(BenchConfig::default_config(true).base_params.n, 40);
    }
}
