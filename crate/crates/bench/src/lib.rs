//! Experiment harness and command-line front end for one-sided crossing minimization with
//! gap constraints.

pub mod algo;
pub mod bench;
pub mod cli;
pub mod draw;
pub mod error;
pub mod plot;
pub mod record;

pub use algo::{run_algo, AlgoSpec, Base, Outcome, RunStatus};
pub use bench::{run_bench, BaseParams, BenchConfig, BenchOptions, BenchRow, SweepParam};
pub use draw::draw;
pub use error::CliError;
pub use record::{read_csv, record_run, write_csv, InstanceMeta, RunRecord};
