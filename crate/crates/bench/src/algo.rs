use std::fmt;
use std::time::{Duration, Instant};

use oscm_gaps::exact::{brute_force_oracle, solve_exact_kgaps, solve_exact_sidegaps, OracleMode, SolveStatus};
use oscm_gaps::{solve_kgaps, solve_sidegaps, BaseAlgorithm, BipartiteInstance, GapReport, HeuristicKind, Permutation};

use crate::error::CliError;

/// How the real top nodes are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Median,
    Barycenter,
    Exact,
}

impl Base {
    fn prefix(self) -> &'static str {
        match self {
            Base::Median => "median",
            Base::Barycenter => "barycenter",
            Base::Exact => "exact",
        }
    }

    fn heuristic(self) -> Option<HeuristicKind> {
        match self {
            Base::Median => Some(HeuristicKind::Median),
            Base::Barycenter => Some(HeuristicKind::Barycenter),
            Base::Exact => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoSpec {
    Sidegaps(Base),
    Kgaps(Base, usize),
    Oracle(OracleMode),
}

impl AlgoSpec {
    /// Parses an algorithm name. `k` is required by the kgaps variants and selects the k-gap
    /// mode for `oracle`; it is rejected everywhere else.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self, CliError> {
        let base = |prefix: &str| match prefix {
            "median" => Some(Base::Median),
            "barycenter" => Some(Base::Barycenter),
            "exact" => Some(Base::Exact),
            _ => None,
        };
        let spec = if let Some(b) = name.strip_suffix("_sidegaps").and_then(base) {
            if k.is_some() {
                return Err(CliError::Input(format!("{name} takes no k")));
            }
            AlgoSpec::Sidegaps(b)
        } else if let Some(b) = name.strip_suffix("_kgaps").and_then(base) {
            let k = k.ok_or_else(|| CliError::Input(format!("{name} needs k")))?;
            if k == 0 {
                return Err(CliError::Input("k must be at least 1".into()));
            }
            AlgoSpec::Kgaps(b, k)
        } else {
            match (name, k) {
                ("oracle", None) => AlgoSpec::Oracle(OracleMode::Unrestricted),
                ("oracle", Some(0)) => return Err(CliError::Input("k must be at least 1".into())),
                ("oracle", Some(k)) => AlgoSpec::Oracle(OracleMode::KGap(k)),
                ("oracle_sidegaps", None) => AlgoSpec::Oracle(OracleMode::SideGap),
                _ => return Err(CliError::Input(format!("unknown algorithm '{name}'"))),
            }
        };
        Ok(spec)
    }

    pub fn name(&self) -> String {
        match self {
            AlgoSpec::Sidegaps(b) => format!("{}_sidegaps", b.prefix()),
            AlgoSpec::Kgaps(b, _) => format!("{}_kgaps", b.prefix()),
            AlgoSpec::Oracle(OracleMode::SideGap) => "oracle_sidegaps".into(),
            AlgoSpec::Oracle(_) => "oracle".into(),
        }
    }

    pub fn k(&self) -> Option<usize> {
        match *self {
            AlgoSpec::Kgaps(_, k) | AlgoSpec::Oracle(OracleMode::KGap(k)) => Some(k),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AlgoSpec::Sidegaps(Base::Exact) | AlgoSpec::Kgaps(Base::Exact, _) | AlgoSpec::Oracle(_))
    }

    /// The exact variant this one is measured against.
    pub fn reference(&self) -> Option<AlgoSpec> {
        match *self {
            AlgoSpec::Sidegaps(_) => Some(AlgoSpec::Sidegaps(Base::Exact)),
            AlgoSpec::Kgaps(_, k) => Some(AlgoSpec::Kgaps(Base::Exact, k)),
            AlgoSpec::Oracle(_) => None,
        }
    }

    /// Whether a permutation with this gap structure is allowed for the variant.
    pub fn admits(&self, gaps: &GapReport) -> bool {
        match *self {
            AlgoSpec::Sidegaps(_) | AlgoSpec::Oracle(OracleMode::SideGap) => gaps.is_side_gap_permutation(),
            AlgoSpec::Kgaps(_, k) | AlgoSpec::Oracle(OracleMode::KGap(k)) => gaps.count <= k,
            AlgoSpec::Oracle(OracleMode::Unrestricted) => true,
        }
    }
}

impl fmt::Display for AlgoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k() {
            Some(k) => write!(f, "{}(k={k})", self.name()),
            None => f.write_str(&self.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Heuristic finished.
    Ok,
    Optimal,
    TimeoutIncumbent,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Optimal => "optimal",
            RunStatus::TimeoutIncumbent => "timeout_incumbent",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub permutation: Permutation,
    pub status: RunStatus,
    pub wall_time: Duration,
}

fn exact_status(status: SolveStatus) -> Result<RunStatus, CliError> {
    match status {
        SolveStatus::Optimal => Ok(RunStatus::Optimal),
        SolveStatus::TimeoutIncumbent => Ok(RunStatus::TimeoutIncumbent),
        SolveStatus::Infeasible => Err(CliError::Internal("solver reported infeasible".into())),
    }
}

/// Runs one algorithm on one instance. Exact variants stop after `budget`.
pub fn run_algo(inst: &BipartiteInstance, spec: AlgoSpec, budget: Duration) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (permutation, status) = match spec {
        AlgoSpec::Sidegaps(Base::Exact) => {
            let r = solve_exact_sidegaps(inst, budget)?;
            (r.permutation, exact_status(r.status)?)
        }
        AlgoSpec::Kgaps(Base::Exact, k) => {
            let r = solve_exact_kgaps(inst, k, budget)?;
            (r.permutation, exact_status(r.status)?)
        }
        AlgoSpec::Sidegaps(b) => {
            let kind = b.heuristic().expect("heuristic base");
            (Some(solve_sidegaps(inst, BaseAlgorithm::Heuristic(kind))?), RunStatus::Ok)
        }
        AlgoSpec::Kgaps(b, k) => {
            let kind = b.heuristic().expect("heuristic base");
            (Some(solve_kgaps(inst, kind, k)?), RunStatus::Ok)
        }
        AlgoSpec::Oracle(mode) => (Some(brute_force_oracle(inst, mode)?.0), RunStatus::Optimal),
    };
    let wall_time = start.elapsed();
    let permutation = permutation.ok_or_else(|| CliError::Internal(format!("{spec} returned no permutation")))?;
    Ok(Outcome { permutation, status, wall_time })
}
