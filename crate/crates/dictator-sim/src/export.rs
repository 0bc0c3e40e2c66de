//! File formats: delimited time-series and aggregate tables, node-link
//! snapshot documents, and their parsers.
//!
//! Floats are written in shortest round-trip notation, so re-parsing
//! any output file recovers the exact values that produced it;
//! undefined values are empty cells.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use net_metrics::{local_clustering, MetricsRecord};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::plan::GridPoint;
use crate::runner::{AggregateRecord, AggregateStat, WorldSnapshot, METRIC_COLUMNS};

/// Column order of the per-run time-series table.
pub const TIMESERIES_HEADER: [&str; 17] = [
    "cycle",
    "avg_degree",
    "n_clusters",
    "max_cluster",
    "avg_cluster",
    "susceptibility",
    "avg_path_len",
    "avg_clustering",
    "n2",
    "assortativity",
    "homophily",
    "gini",
    "min_wealth",
    "avg_wealth",
    "max_wealth",
    "avg_strategy",
    "hypergenerosity",
];

fn fmt_f64(value: f64) -> String {
    format!("{value}")
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map(fmt_f64).unwrap_or_default()
}

fn create(path: &Path) -> Result<File, HarnessError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
        }
    }
    File::create(path).map_err(|e| HarnessError::io(path, e))
}

/// Writes one row per cycle; an empty series produces a header-only file.
pub fn export_timeseries(
    series: &[MetricsRecord],
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_writer(BufWriter::new(create(path)?));
    let io_err = |e: csv::Error| HarnessError::io(path, std::io::Error::other(e));
    writer.write_record(TIMESERIES_HEADER).map_err(io_err)?;
    for r in series {
        writer
            .write_record([
                r.cycle.to_string(),
                fmt_f64(r.avg_degree),
                r.n_clusters.to_string(),
                r.max_cluster.to_string(),
                fmt_f64(r.avg_cluster),
                fmt_f64(r.susceptibility),
                fmt_f64(r.avg_path_len),
                fmt_f64(r.avg_clustering),
                fmt_f64(r.mean_second_neighbours),
                fmt_opt(r.assortativity),
                fmt_opt(r.homophily),
                fmt_f64(r.gini),
                fmt_f64(r.min_wealth),
                fmt_f64(r.avg_wealth),
                fmt_f64(r.max_wealth),
                fmt_f64(r.avg_strategy),
                fmt_f64(r.hypergenerosity),
            ])
            .map_err(io_err)?;
    }
    writer.flush().map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

/// Reads a time-series table back into records.
pub fn parse_timeseries(path: impl AsRef<Path>) -> Result<Vec<MetricsRecord>, HarnessError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(BufReader::new(file));
    let mut rows = reader.records();

    let header = rows
        .next()
        .ok_or_else(|| HarnessError::parse(path, "missing header"))?
        .map_err(|e| HarnessError::parse(path, e.to_string()))?;
    if !header.iter().eq(TIMESERIES_HEADER) {
        return Err(HarnessError::parse(path, "unexpected header"));
    }

    let mut series = Vec::new();
    for (line, row) in rows.enumerate() {
        let row = row.map_err(|e| HarnessError::parse(path, e.to_string()))?;
        let field = |i: usize| -> Result<&str, HarnessError> {
            row.get(i)
                .ok_or_else(|| HarnessError::parse(path, format!("row {line}: missing column {i}")))
        };
        let int = |i: usize| -> Result<usize, HarnessError> {
            field(i)?
                .parse()
                .map_err(|e| HarnessError::parse(path, format!("row {line}: {e}")))
        };
        let float = |i: usize| -> Result<f64, HarnessError> {
            field(i)?
                .parse()
                .map_err(|e| HarnessError::parse(path, format!("row {line}: {e}")))
        };
        let opt = |i: usize| -> Result<Option<f64>, HarnessError> {
            let text = field(i)?;
            if text.is_empty() {
                Ok(None)
            } else {
                text.parse()
                    .map(Some)
                    .map_err(|e| HarnessError::parse(path, format!("row {line}: {e}")))
            }
        };
        series.push(MetricsRecord {
            cycle: int(0)?,
            avg_degree: float(1)?,
            n_clusters: int(2)?,
            max_cluster: int(3)?,
            avg_cluster: float(4)?,
            susceptibility: float(5)?,
            avg_path_len: float(6)?,
            avg_clustering: float(7)?,
            mean_second_neighbours: float(8)?,
            assortativity: opt(9)?,
            homophily: opt(10)?,
            gini: float(11)?,
            min_wealth: float(12)?,
            avg_wealth: float(13)?,
            max_wealth: float(14)?,
            avg_strategy: float(15)?,
            hypergenerosity: float(16)?,
        });
    }
    Ok(series)
}

fn aggregates_header() -> Vec<String> {
    let mut header = vec![
        "grid_index".to_string(),
        "cost".to_string(),
        "memory".to_string(),
        "n_agents".to_string(),
        "realizations".to_string(),
    ];
    for column in METRIC_COLUMNS {
        header.push(format!("{}_mean", column.name));
        header.push(format!("{}_std", column.name));
        header.push(format!("{}_n", column.name));
    }
    header
}

/// Writes one row per grid point: the point itself, then mean / sample
/// standard deviation / defined-sample count for every metric.
pub fn export_aggregates(
    records: &[AggregateRecord],
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_writer(BufWriter::new(create(path)?));
    let io_err = |e: csv::Error| HarnessError::io(path, std::io::Error::other(e));
    writer.write_record(aggregates_header()).map_err(io_err)?;
    for record in records {
        let mut row = vec![
            record.grid_index.to_string(),
            fmt_f64(record.point.cost),
            fmt_f64(record.point.memory),
            record.point.n_agents.to_string(),
            record.realizations.to_string(),
        ];
        for stat in &record.stats {
            row.push(fmt_opt(stat.mean));
            row.push(fmt_opt(stat.std_dev));
            row.push(stat.defined.to_string());
        }
        writer.write_record(row).map_err(io_err)?;
    }
    writer.flush().map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

/// Reads an aggregate table back into records.
pub fn parse_aggregates(path: impl AsRef<Path>) -> Result<Vec<AggregateRecord>, HarnessError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(BufReader::new(file));
    let mut rows = reader.records();

    let header = rows
        .next()
        .ok_or_else(|| HarnessError::parse(path, "missing header"))?
        .map_err(|e| HarnessError::parse(path, e.to_string()))?;
    if !header.iter().eq(aggregates_header().iter().map(String::as_str)) {
        return Err(HarnessError::parse(path, "unexpected header"));
    }

    let mut records = Vec::new();
    for (line, row) in rows.enumerate() {
        let row = row.map_err(|e| HarnessError::parse(path, e.to_string()))?;
        let bad = |msg: String| HarnessError::parse(path, format!("row {line}: {msg}"));
        let field = |i: usize| -> Result<&str, HarnessError> {
            row.get(i).ok_or_else(|| {
                HarnessError::parse(path, format!("row {line}: missing column {i}"))
            })
        };
        let mut stats = Vec::with_capacity(METRIC_COLUMNS.len());
        for m in 0..METRIC_COLUMNS.len() {
            let base = 5 + 3 * m;
            let parse_opt = |i: usize| -> Result<Option<f64>, HarnessError> {
                let text = field(i)?;
                if text.is_empty() {
                    Ok(None)
                } else {
                    text.parse::<f64>()
                        .map(Some)
                        .map_err(|e| bad(e.to_string()))
                }
            };
            stats.push(AggregateStat {
                mean: parse_opt(base)?,
                std_dev: parse_opt(base + 1)?,
                defined: field(base + 2)?.parse().map_err(|e| bad(format!("{e}")))?,
            });
        }
        records.push(AggregateRecord {
            grid_index: field(0)?.parse().map_err(|e| bad(format!("{e}")))?,
            point: GridPoint {
                cost: field(1)?.parse().map_err(|e| bad(format!("{e}")))?,
                memory: field(2)?.parse().map_err(|e| bad(format!("{e}")))?,
                n_agents: field(3)?.parse().map_err(|e| bad(format!("{e}")))?,
            },
            realizations: field(4)?.parse().map_err(|e| bad(format!("{e}")))?,
            stats,
        });
    }
    Ok(records)
}

/// Node-link snapshot document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotDoc {
    pub cycle: usize,
    pub n_agents: usize,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub wealth: f64,
    pub strategy: f64,
    pub clustering: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    /// Strength of the link: the weaker of the two directed ledger
    /// entries, `min(U_ij, U_ji)`.
    pub strength: f64,
}

/// Builds the node-link document for a snapshot.
pub fn snapshot_doc(snapshot: &WorldSnapshot) -> SnapshotDoc {
    let world = &snapshot.world;
    let nodes = world
        .agents
        .iter()
        .enumerate()
        .map(|(id, agent)| NodeRecord {
            id,
            wealth: agent.wealth,
            strategy: agent.strategy,
            clustering: local_clustering(&world.graph, id),
        })
        .collect();
    let edges = world
        .graph
        .edges()
        .map(|(source, target)| EdgeRecord {
            source,
            target,
            strength: world
                .ledger
                .get(source, target)
                .min(world.ledger.get(target, source)),
        })
        .collect();
    SnapshotDoc {
        cycle: snapshot.cycle,
        n_agents: world.n_agents(),
        nodes,
        edges,
    }
}

/// Writes the node-link snapshot document as JSON.
pub fn export_snapshot(
    snapshot: &WorldSnapshot,
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let mut file = BufWriter::new(create(path)?);
    serde_json::to_writer_pretty(&mut file, &snapshot_doc(snapshot))
        .map_err(|e| HarnessError::io(path, std::io::Error::other(e)))?;
    writeln!(file).map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

/// Reads a snapshot document back.
pub fn parse_snapshot(path: impl AsRef<Path>) -> Result<SnapshotDoc, HarnessError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| HarnessError::parse(path, e.to_string()))
}

/// Writes the local-clustering scatter of linked pairs: one row per
/// edge with the clustering coefficients of both endpoints.
pub fn export_clustering_scatter(
    snapshot: &WorldSnapshot,
    path: impl AsRef<Path>,
) -> Result<(), HarnessError> {
    let path = path.as_ref();
    let graph = &snapshot.world.graph;
    let mut writer = csv::Writer::from_writer(BufWriter::new(create(path)?));
    let io_err = |e: csv::Error| HarnessError::io(path, std::io::Error::other(e));
    writer
        .write_record(["source", "target", "c_source", "c_target"])
        .map_err(io_err)?;
    for (source, target) in graph.edges() {
        writer
            .write_record([
                source.to_string(),
                target.to_string(),
                fmt_f64(local_clustering(graph, source)),
                fmt_f64(local_clustering(graph, target)),
            ])
            .map_err(io_err)?;
    }
    writer.flush().map_err(|e| HarnessError::io(path, e))?;
    Ok(())
}

