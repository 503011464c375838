//! The Hendrickson scan: isomorph-free candidates on `n = d + k` vertices,
//! filtered by connectivity, rigidity, global rigidity and redundancy, with
//! per-cell count tables.
//!
//! Work is split at a fixed depth of the generation tree into independent
//! subtrees, which are the units of the results log; inside a subtree the
//! children of every node are visited in parallel. Counts are plain sums and the H-graph lists are merged and
//! sorted, so reports do not depend on the worker count. Completed subtrees
//! can be appended to a newline-delimited JSON log and skipped on resume.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_labeling;
use crate::enumerate::{self, Node, SparseBounds};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::rigidity::{
    graph_seed, hendrickson_verdict, target_rank, RigidityError, Stage, DEFAULT_ORDER, DEFAULT_TRIALS,
};

/// Largest vertex count the generator accepts.
pub const MAX_SCAN_VERTICES: usize = 14;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid scan parameters: {0}")]
    InvalidSpec(String),
    #[error("candidate budget exhausted after {count} candidates")]
    ResourceBound { count: u64, partial: Box<ScanReport> },
    #[error("candidate budget exhausted after {count} candidates")]
    GenerationBound { count: u64, partial: Vec<Graph> },
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error("results log: {0}")]
    Io(#[from] std::io::Error),
    #[error("results log line {line}: {source}")]
    Log { line: usize, source: serde_json::Error },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub d: usize,
    pub n: usize,
    /// Defaults to `target_rank(n, d) + 1`.
    pub min_edges: Option<usize>,
    /// Defaults to `d + 1`; also used as the minimum degree.
    pub require_connectivity: Option<usize>,
    pub trials: u32,
    pub seed: u64,
    /// `0` uses the global rayon pool.
    pub workers: usize,
    /// Generation-tree depth (complement edges) at which work is split.
    pub split_depth: usize,
    pub max_candidates: Option<u64>,
    pub order: Vec<Stage>,
    #[serde(skip)]
    pub results_log: Option<PathBuf>,
}

impl ScanSpec {
    pub fn new(d: usize, n: usize) -> ScanSpec {
        ScanSpec {
            d,
            n,
            min_edges: None,
            require_connectivity: None,
            trials: DEFAULT_TRIALS,
            seed: 0,
            workers: 0,
            split_depth: 2,
            max_candidates: None,
            order: DEFAULT_ORDER.to_vec(),
            results_log: None,
        }
    }

    pub fn min_edges(&self) -> usize {
        self.min_edges.unwrap_or_else(|| target_rank(self.n, self.d) + 1)
    }

    pub fn connectivity(&self) -> usize {
        self.require_connectivity.unwrap_or(self.d + 1)
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |m: String| Err(ScanError::InvalidSpec(m));
        if self.d == 0 {
            return bad("dimension must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n < self.d + 2 {
            return bad(format!("need n >= d + 2, got n={} d={}", self.n, self.d));
        }
        if self.n > MAX_SCAN_VERTICES {
            return bad(format!("n={} exceeds the generator bound {MAX_SCAN_VERTICES}", self.n));
        }
        if self.min_edges() > self.n * (self.n - 1) / 2 {
            return bad(format!("min_edges {} exceeds C(n,2)", self.min_edges()));
        }
        Ok(())
    }

    /// Bounds on the complement graphs that the generator enumerates.
    pub fn complement_bounds(&self) -> SparseBounds {
        let n = self.n;
        SparseBounds {
            n,
            max_edges: n * (n - 1) / 2 - self.min_edges(),
            max_degree: (n - 1).saturating_sub(self.connectivity()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub candidates: u64,
    pub connectivity_rejected: u64,
    pub redundant_connected: u64,
    pub globally_rigid: u64,
    /// Globally rigid graphs found to fail connectivity or redundancy.
    pub hendrickson_violations: u64,
}

impl Counts {
    fn merge(&mut self, o: &Counts) {
        self.candidates += o.candidates;
        self.connectivity_rejected += o.connectivity_rejected;
        self.redundant_connected += o.redundant_connected;
        self.globally_rigid += o.globally_rigid;
        self.hendrickson_violations += o.hendrickson_violations;
    }
}

/// One record of the results log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeRecord {
    pub subtree: usize,
    pub counts: Counts,
    pub h_graphs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: ScanSpec,
    pub candidates_generated: u64,
    pub redundant_and_connected_count: u64,
    pub globally_rigid_count: u64,
    /// graph6 of every H-graph found, canonically relabeled, sorted by canonical form.
    pub h_graphs: Vec<String>,
    pub connectivity_rejected: u64,
    pub hendrickson_violations: u64,
    pub subtrees: usize,
    pub complete: bool,
    pub wall_time: f64,
}

/// Every candidate (the dense graphs), one per isomorphism class.
pub fn generate_candidates(spec: &ScanSpec) -> Result<Vec<Graph>, ScanError> {
    spec.validate()?;
    let bounds = spec.complement_bounds();
    let mut out = Vec::new();
    let limit = spec.max_candidates.unwrap_or(u64::MAX);
    let finished = enumerate::walk(&Node::root(spec.n), &bounds, &mut |node| {
        if out.len() as u64 >= limit {
            return false;
        }
        out.push(node.graph.complement());
        true
    });
    if !finished {
        return Err(ScanError::GenerationBound {
            count: out.len() as u64,
            partial: out,
        });
    }
    Ok(out)
}

struct Shared<'a> {
    spec: &'a ScanSpec,
    processed: AtomicU64,
    abort: AtomicBool,
}

impl Shared<'_> {
    fn admit(&self) -> bool {
        if self.abort.load(Ordering::Relaxed) {
            return false;
        }
        let seen = self.processed.fetch_add(1, Ordering::Relaxed);
        if let Some(limit) = self.spec.max_candidates {
            if seen >= limit {
                self.abort.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    fn evaluate(&self, node: &Node, rec: &mut SubtreeRecord) -> Result<(), RigidityError> {
        let spec = self.spec;
        let g = node.graph.complement();
        let seed = graph_seed(spec.seed, node.form());
        let v = hendrickson_verdict(&g, spec.d, spec.connectivity(), spec.trials, seed, &spec.order)?;
        let c = &mut rec.counts;
        c.candidates += 1;
        c.connectivity_rejected += v.rejected_by_connectivity as u64;
        c.hendrickson_violations += v.hendrickson_violation as u64;
        if v.redundant_connected {
            c.redundant_connected += 1;
            if v.globally_rigid {
                c.globally_rigid += 1;
            } else {
                rec.h_graphs.push(to_graph6(&canonical_labeling(&g).graph));
            }
        }
        Ok(())
    }
}

fn process_subtree(
    shared: &Shared,
    id: usize,
    roots: &[Node],
    recurse: bool,
) -> Result<Option<SubtreeRecord>, RigidityError> {
    let bounds = shared.spec.complement_bounds();
    let mut rec = SubtreeRecord {
        subtree: id,
        counts: Counts::default(),
        h_graphs: Vec::new(),
    };
    for root in roots {
        let part = if recurse {
            walk_parallel(shared, root, &bounds)?
        } else {
            visit_one(shared, root)?
        };
        match part {
            Some(p) => merge_record(&mut rec, p),
            None => return Ok(None),
        }
    }
    rec.h_graphs.sort();
    Ok(Some(rec))
}

fn merge_record(into: &mut SubtreeRecord, from: SubtreeRecord) {
    into.counts.merge(&from.counts);
    into.h_graphs.extend(from.h_graphs);
}

fn visit_one(shared: &Shared, node: &Node) -> Result<Option<SubtreeRecord>, RigidityError> {
    if !shared.admit() {
        return Ok(None);
    }
    let mut rec = SubtreeRecord {
        subtree: 0,
        counts: Counts::default(),
        h_graphs: Vec::new(),
    };
    if let Err(e) = shared.evaluate(node, &mut rec) {
        shared.abort.store(true, Ordering::Relaxed);
        return Err(e);
    }
    Ok(Some(rec))
}

/// Evaluates the subtree at `node`, fanning out over children so that idle
/// workers can steal from an unbalanced subtree. `None` means the candidate
/// budget ran out.
fn walk_parallel(shared: &Shared, node: &Node, bounds: &SparseBounds) -> Result<Option<SubtreeRecord>, RigidityError> {
    let Some(mut rec) = visit_one(shared, node)? else {
        return Ok(None);
    };
    let parts: Vec<Result<Option<SubtreeRecord>, RigidityError>> = enumerate::children(node, bounds)
        .par_iter()
        .map(|child| walk_parallel(shared, child, bounds))
        .collect();
    for part in parts {
        match part? {
            Some(p) => merge_record(&mut rec, p),
            None => return Ok(None),
        }
    }
    Ok(Some(rec))
}

/// Reads completed subtree records from a results log.
pub fn read_results_log(path: &Path) -> Result<Vec<SubtreeRecord>, ScanError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|source| ScanError::Log { line: i + 1, source })?;
        out.push(rec);
    }
    Ok(out)
}

/// Classifies every candidate and aggregates the counts.
pub fn hendrickson_scan(spec: &ScanSpec) -> Result<ScanReport, ScanError> {
    spec.validate()?;
    if spec.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| ScanError::InvalidSpec(e.to_string()))?;
        return pool.install(|| scan_inner(spec));
    }
    scan_inner(spec)
}

fn scan_inner(spec: &ScanSpec) -> Result<ScanReport, ScanError> {
    let start = Instant::now();
    let bounds = spec.complement_bounds();
    let (shallow, frontier) = enumerate::split(&bounds, spec.split_depth);

    let done: Vec<SubtreeRecord> = match &spec.results_log {
        Some(p) => read_results_log(p)?,
        None => Vec::new(),
    };
    let done_ids: BTreeSet<usize> = done.iter().map(|r| r.subtree).collect();
    let log = match &spec.results_log {
        Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let shared = Shared {
        spec,
        processed: AtomicU64::new(0),
        abort: AtomicBool::new(false),
    };

    // Subtree 0 holds the nodes above the split depth; subtree i >= 1 is frontier node i - 1.
    let jobs: Vec<usize> = (0..=frontier.len()).filter(|id| !done_ids.contains(id)).collect();
    let results: Vec<Result<Option<SubtreeRecord>, ScanError>> = jobs
        .par_iter()
        .map(|&id| {
            let rec = if id == 0 {
                process_subtree(&shared, 0, &shallow, false)?
            } else {
                process_subtree(&shared, id, std::slice::from_ref(&frontier[id - 1]), true)?
            };
            if let (Some(rec), Some(log)) = (&rec, &log) {
                let line = serde_json::to_string(rec).expect("record serializes");
                let mut f = log.lock().expect("log lock");
                writeln!(f, "{line}")?;
                f.flush()?;
            }
            Ok(rec)
        })
        .collect();

    let mut totals = Counts::default();
    let mut h_graphs = Vec::new();
    let mut complete = true;
    for rec in &done {
        totals.merge(&rec.counts);
        h_graphs.extend(rec.h_graphs.iter().cloned());
    }
    for r in results {
        match r? {
            Some(rec) => {
                totals.merge(&rec.counts);
                h_graphs.extend(rec.h_graphs);
            }
            None => complete = false,
        }
    }
    h_graphs.sort();
    h_graphs.dedup();
    let report = ScanReport {
        spec: spec.clone(),
        candidates_generated: totals.candidates,
        redundant_and_connected_count: totals.redundant_connected,
        globally_rigid_count: totals.globally_rigid,
        h_graphs,
        connectivity_rejected: totals.connectivity_rejected,
        hendrickson_violations: totals.hendrickson_violations,
        subtrees: frontier.len() + 1,
        complete,
        wall_time: start.elapsed().as_secs_f64(),
    };
    if !complete {
        return Err(ScanError::ResourceBound {
            count: report.candidates_generated,
            partial: Box::new(report),
        });
    }
    Ok(report)
}

/// One `(d, n)` cell of the count tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub candidates: u64,
    /// Redundantly rigid and `(d+1)`-connected (first table).
    pub redundant_connected: u64,
    /// Globally rigid (second table).
    pub globally_rigid: u64,
    pub h_count: u64,
    pub seconds: f64,
    /// Every cell is decided by randomized rank tests with one-sided error.
    pub method: String,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub cells: Vec<TableCell>,
}

pub const CSV_HEADER: &str = "d,n,k,candidates,redundant_connected,globally_rigid,h_count,seconds";

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for c in &self.cells {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{:.3}\n",
                c.d, c.n, c.k, c.candidates, c.redundant_connected, c.globally_rigid, c.h_count, c.seconds
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn cell(&self, d: usize, k: usize) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.d == d && c.k == k)
    }
}

/// Runs every cell `(d, d + k)` for `d` in `dims` and `k` in `2..=k_max`,
/// copying trials, seed and workers from `defaults`. A failing cell records
/// its error and the remaining cells still run.
pub fn table_report(dims: &[usize], k_max: usize, defaults: &ScanSpec) -> Table {
    let mut cells = Vec::new();
    for &d in dims {
        for k in 2..=k_max {
            let mut spec = ScanSpec::new(d, d + k);
            spec.trials = defaults.trials;
            spec.seed = defaults.seed;
            spec.workers = defaults.workers;
            spec.max_candidates = defaults.max_candidates;
            spec.order = defaults.order.clone();
            let start = Instant::now();
            let mut cell = TableCell {
                d,
                n: d + k,
                k,
                candidates: 0,
                redundant_connected: 0,
                globally_rigid: 0,
                h_count: 0,
                seconds: 0.0,
                method: "probabilistic".to_string(),
                error: None,
            };
            let fill = |cell: &mut TableCell, r: &ScanReport| {
                cell.candidates = r.candidates_generated;
                cell.redundant_connected = r.redundant_and_connected_count;
                cell.globally_rigid = r.globally_rigid_count;
                cell.h_count = r.h_graphs.len() as u64;
            };
            match hendrickson_scan(&spec) {
                Ok(r) => fill(&mut cell, &r),
                Err(ScanError::ResourceBound { partial, .. }) => {
                    fill(&mut cell, &partial);
                    cell.error = Some("incomplete: candidate budget exhausted".to_string());
                }
                Err(e) => cell.error = Some(e.to_string()),
            }
            cell.seconds = start.elapsed().as_secs_f64();
            cells.push(cell);
        }
    }
    Table { cells }
}
