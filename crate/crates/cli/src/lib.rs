//! Command-line harness for the quantum Otto engine: configuration parsing,
//! single runs, parameter sweeps and figure-data emission.

pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod scenario;
pub mod sweep;

pub use config::{parse_config, ScenarioConfig};
pub use error::HarnessError;
pub use figures::emit_figures;
pub use scenario::{run_scenario, CycleReport};
pub use sweep::{run_sweep, SweepTable};
