//! Single runs, latter-half time averages and ensemble aggregation.

use net_metrics::{collect, MetricsRecord};
use rayon::prelude::*;
use sim_core::{SimParams, Simulation, World};

use crate::error::HarnessError;
use crate::export::{export_snapshot, export_timeseries};
use crate::plan::{ExperimentPlan, GridPoint};

/// A world frozen after a given number of completed cycles.
#[derive(Clone, Debug)]
pub struct WorldSnapshot {
    pub cycle: usize,
    pub world: World,
}

/// Everything one seeded run produces.
#[derive(Clone, Debug)]
pub struct RunOutput {
    /// One record per cycle, labeled 1..=cycles.
    pub series: Vec<MetricsRecord>,
    /// Snapshots at the requested completed-cycle counts (0 = initial).
    pub snapshots: Vec<WorldSnapshot>,
    /// State at the end of the run.
    pub final_state: WorldSnapshot,
}

/// Runs one simulation for `params.cycles` cycles under the given seed,
/// collecting the full metrics record every cycle. Deterministic in
/// `(params, seed)`.
pub fn run_single(
    params: &SimParams,
    seed: u64,
    snapshot_cycles: &[usize],
) -> Result<RunOutput, HarnessError> {
    let params = SimParams {
        seed,
        ..params.clone()
    };
    let cycles = params.cycles;
    let mut sim = Simulation::new(params)?;

    let mut wanted: Vec<usize> = snapshot_cycles.to_vec();
    wanted.sort_unstable();
    wanted.dedup();

    let mut snapshots = Vec::with_capacity(wanted.len());
    if wanted.binary_search(&0).is_ok() {
        snapshots.push(WorldSnapshot {
            cycle: 0,
            world: sim.world().clone(),
        });
    }
    let mut series = Vec::with_capacity(cycles);
    for completed in 1..=cycles {
        sim.step();
        series.push(collect(sim.world(), completed));
        if wanted.binary_search(&completed).is_ok() {
            snapshots.push(WorldSnapshot {
                cycle: completed,
                world: sim.world().clone(),
            });
        }
    }

    Ok(RunOutput {
        series,
        snapshots,
        final_state: WorldSnapshot {
            cycle: cycles,
            world: sim.world().clone(),
        },
    })
}

/// Mean of a metric over the latter half of the series (indices
/// `ceil(len/2)..`), skipping undefined entries; `None` when no entry
/// in the window is defined. An empty series is a contract error.
pub fn time_average(
    series: &[MetricsRecord],
    get: impl Fn(&MetricsRecord) -> Option<f64>,
) -> Result<Option<f64>, HarnessError> {
    if series.is_empty() {
        return Err(HarnessError::EmptySeries);
    }
    let start = series.len().div_ceil(2);
    let mut total = 0.0;
    let mut count = 0usize;
    for record in &series[start..] {
        if let Some(value) = get(record) {
            total += value;
            count += 1;
        }
    }
    Ok((count > 0).then(|| total / count as f64))
}

/// One aggregated metric column.
pub struct MetricColumn {
    pub name: &'static str,
    pub get: fn(&MetricsRecord) -> Option<f64>,
}

/// Every aggregated metric, in output column order.
pub const METRIC_COLUMNS: &[MetricColumn] = &[
    MetricColumn { name: "avg_degree", get: |r| Some(r.avg_degree) },
    MetricColumn { name: "n_clusters", get: |r| Some(r.n_clusters as f64) },
    MetricColumn { name: "max_cluster", get: |r| Some(r.max_cluster as f64) },
    MetricColumn { name: "avg_cluster", get: |r| Some(r.avg_cluster) },
    MetricColumn { name: "susceptibility", get: |r| Some(r.susceptibility) },
    MetricColumn { name: "avg_path_len", get: |r| Some(r.avg_path_len) },
    MetricColumn { name: "avg_clustering", get: |r| Some(r.avg_clustering) },
    MetricColumn { name: "n2", get: |r| Some(r.mean_second_neighbours) },
    MetricColumn { name: "assortativity", get: |r| r.assortativity },
    MetricColumn { name: "homophily", get: |r| r.homophily },
    MetricColumn { name: "gini", get: |r| Some(r.gini) },
    MetricColumn { name: "min_wealth", get: |r| Some(r.min_wealth) },
    MetricColumn { name: "avg_wealth", get: |r| Some(r.avg_wealth) },
    MetricColumn { name: "max_wealth", get: |r| Some(r.max_wealth) },
    MetricColumn { name: "avg_strategy", get: |r| Some(r.avg_strategy) },
    MetricColumn { name: "hypergenerosity", get: |r| Some(r.hypergenerosity) },
];

/// Ensemble statistics of one metric at one grid point, computed over
/// the realizations whose latter-half average is defined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregateStat {
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
    pub defined: usize,
}

/// Aggregate of all metrics at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRecord {
    pub grid_index: usize,
    pub point: GridPoint,
    pub realizations: usize,
    /// One entry per [`METRIC_COLUMNS`] column.
    pub stats: Vec<AggregateStat>,
}

/// Runs the whole plan: `realizations` independent seeded runs per grid
/// point, reduced to latter-half time averages and then to ensemble
/// mean / sample standard deviation / defined-sample count.
///
/// Realizations run in parallel but results are assembled in
/// `(grid_index, realization)` order, so output never depends on
/// scheduling. When the plan names an output directory, every raw
/// per-cycle series (and any requested snapshots) is persisted there.
pub fn run_ensemble(plan: &ExperimentPlan) -> Result<Vec<AggregateRecord>, HarnessError> {
    plan.validate()?;
    if let Some(dir) = &plan.output_dir {
        let runs = dir.join("runs");
        std::fs::create_dir_all(&runs).map_err(|e| HarnessError::io(runs, e))?;
    }

    let jobs: Vec<(usize, usize)> = (0..plan.grid.len())
        .flat_map(|g| (0..plan.realizations).map(move |r| (g, r)))
        .collect();
    let per_run: Vec<Result<Vec<Option<f64>>, HarnessError>> = jobs
        .par_iter()
        .map(|&(grid_index, realization)| {
            run_realization(plan, grid_index, realization).map_err(|e| {
                HarnessError::GridPoint {
                    index: grid_index,
                    source: Box::new(e),
                }
            })
        })
        .collect();

    let mut averages = Vec::with_capacity(per_run.len());
    for result in per_run {
        averages.push(result?);
    }

    let mut records = Vec::with_capacity(plan.grid.len());
    for (grid_index, &point) in plan.grid.iter().enumerate() {
        let rows = &averages[grid_index * plan.realizations..(grid_index + 1) * plan.realizations];
        let stats = (0..METRIC_COLUMNS.len())
            .map(|m| aggregate(rows.iter().map(|row| row[m])))
            .collect();
        records.push(AggregateRecord {
            grid_index,
            point,
            realizations: plan.realizations,
            stats,
        });
    }
    Ok(records)
}

fn run_realization(
    plan: &ExperimentPlan,
    grid_index: usize,
    realization: usize,
) -> Result<Vec<Option<f64>>, HarnessError> {
    let params = plan.params_at(grid_index, realization);
    let snapshot_cycles = plan.snapshot_cycles.as_deref().unwrap_or(&[]);
    let output = run_single(&params, params.seed, snapshot_cycles)?;

    if let Some(dir) = &plan.output_dir {
        let stem = format!("g{grid_index:03}_r{realization:03}");
        export_timeseries(&output.series, dir.join(format!("runs/{stem}.csv")))?;
        for snapshot in &output.snapshots {
            let path = dir.join(format!("runs/{stem}_snap{:06}.json", snapshot.cycle));
            export_snapshot(snapshot, path)?;
        }
    }

    METRIC_COLUMNS
        .iter()
        .map(|column| time_average(&output.series, column.get))
        .collect()
}

fn aggregate(samples: impl Iterator<Item = Option<f64>>) -> AggregateStat {
    let values: Vec<f64> = samples.flatten().collect();
    let defined = values.len();
    if defined == 0 {
        return AggregateStat {
            mean: None,
            std_dev: None,
            defined,
        };
    }
    let mean = values.iter().sum::<f64>() / defined as f64;
    let std_dev = (defined >= 2).then(|| {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (defined - 1) as f64).sqrt()
    });
    AggregateStat {
        mean: Some(mean),
        std_dev,
        defined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(cycle: usize, gini: f64, assortativity: Option<f64>) -> MetricsRecord {
        MetricsRecord {
            cycle,
            avg_degree: 0.0,
            n_clusters: 1,
            max_cluster: 1,
            avg_cluster: 1.0,
            susceptibility: 0.0,
            avg_path_len: 0.0,
            avg_clustering: 0.0,
            mean_second_neighbours: 0.0,
            assortativity,
            homophily: None,
            gini,
            min_wealth: 0.0,
            avg_wealth: 0.0,
            max_wealth: 0.0,
            avg_strategy: 0.0,
            hypergenerosity: 0.0,
        }
    }

    #[test]
    fn constant_series_averages_to_itself() {
        let series: Vec<MetricsRecord> = (1..=10).map(|c| record(c, 3.0, None)).collect();
        let avg = time_average(&series, |r| Some(r.gini)).unwrap();
        assert_eq!(avg, Some(3.0));
    }

    #[test]
    fn latter_half_means_the_second_half() {
        let values = [0.0, 0.0, 4.0, 8.0];
        let series: Vec<MetricsRecord> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| record(i + 1, v, None))
            .collect();
        let avg = time_average(&series, |r| Some(r.gini)).unwrap();
        assert_eq!(avg, Some(6.0));
    }

    #[test]
    fn undefined_everywhere_is_none() {
        let series: Vec<MetricsRecord> = (1..=8).map(|c| record(c, 0.0, None)).collect();
        let avg = time_average(&series, |r| r.assortativity).unwrap();
        assert_eq!(avg, None);
    }

    #[test]
    fn defined_entries_only_are_averaged() {
        let series: Vec<MetricsRecord> = (1..=8)
            .map(|c| record(c, 0.0, (c % 2 == 0).then_some(c as f64)))
            .collect();
        // Window is cycles 5..=8; defined at 6 and 8.
        let avg = time_average(&series, |r| r.assortativity).unwrap();
        assert_eq!(avg, Some(7.0));
    }

    #[test]
    fn empty_series_is_a_contract_error() {
        assert!(matches!(
            time_average(&[], |r| Some(r.gini)),
            Err(HarnessError::EmptySeries)
        ));
    }

    #[test]
    fn aggregate_statistics() {
        let stat = aggregate([Some(1.0), Some(3.0), None].into_iter());
        assert_eq!(stat.defined, 2);
        assert_eq!(stat.mean, Some(2.0));
        assert!((stat.std_dev.unwrap() - 2.0f64.sqrt()).abs() < 1e-12);

        let none = aggregate([None, None].into_iter());
        assert_eq!(none.defined, 0);
        assert_eq!(none.mean, None);
        assert_eq!(none.std_dev, None);

        let single = aggregate([Some(5.0)].into_iter());
        assert_eq!(single.mean, Some(5.0));
        assert_eq!(single.std_dev, None);
    }
}
