//! Experiment harness for the networked dictator game simulator:
//! seeded ensembles, parameter sweeps, latter-half aggregation, file
//! exports and the command-line interface.

pub mod cli;
pub mod error;
pub mod export;
pub mod plan;
pub mod runner;

pub use error::HarnessError;
pub use export::{
    export_aggregates, export_clustering_scatter, export_snapshot, export_timeseries,
    parse_aggregates, parse_snapshot, parse_timeseries, snapshot_doc, EdgeRecord, NodeRecord,
    SnapshotDoc, TIMESERIES_HEADER,
};
pub use plan::{derive_seed, preset, sweep_presets, ExperimentPlan, GridPoint};
pub use runner::{
    run_ensemble, run_single, time_average, AggregateRecord, AggregateStat, MetricColumn,
    RunOutput, WorldSnapshot, METRIC_COLUMNS,
};
