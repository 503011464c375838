//! Command-line front end: `check`, `scan`, `table`, `construct` and `cone`.
//!
//! Exit codes: 0 on success, 1 when any input line or scan cell failed, 2 on
//! configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_form;
use crate::constructions::Construction;
use crate::graph6::{from_graph6, to_graph6};
use crate::rigidity::{classify, graph_seed, RigidityProfile};
use crate::scan::{hendrickson_scan, table_report, ScanError, ScanReport, ScanSpec, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Lines classified per parallel batch in `check`.
const CHECK_BATCH: usize = 256;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Graph6,
}

#[derive(Parser, Debug)]
#[command(
    name = "hendrickson",
    version,
    about = "Rigidity classification and Hendrickson-counterexample search"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Dimension d.
    #[arg(long = "dim", short = 'd', global = true, default_value_t = 3)]
    pub dim: usize,
    /// Random placements tried before a negative answer.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long, global = true, env = "HENDRICKSON_WORKERS")]
    pub workers: Option<usize>,
    /// Minimum edge count for scans (default dn - C(d+1,2) + 1).
    #[arg(long, global = true)]
    pub min_edges: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify graph6 lines, one record per input line.
    Check {
        /// Input file, or "-" for standard input.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Scan all candidates on n vertices.
    Scan {
        #[arg(long)]
        n: usize,
        /// Stop after this many candidates and report partial counts.
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(long, default_value_t = 2)]
        split_depth: usize,
        /// Append completed subtrees here and skip those already present.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Write the H-graphs found as graph6 lines to this file.
        #[arg(long)]
        h_graphs: Option<PathBuf>,
    },
    /// Count tables for several dimensions and k = 2..=k_max.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long)]
        max_candidates: Option<u64>,
    },
    /// Emit a named graph: complete N, complete_bipartite M N, glued_k5_cycle, glued_k55_cycle.
    Construct {
        name: String,
        params: Vec<usize>,
        #[arg(long)]
        remove_red_edges: bool,
    },
    /// Cone every input graph (optionally several times).
    Cone {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
}

/// One `check` output record.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub line: usize,
    pub graph6: String,
    #[serde(flatten)]
    pub profile: Option<RigidityProfile>,
    pub error: Option<String>,
}

impl CheckRecord {
    fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match (format, &self.profile) {
            (Format::Json, _) => writeln!(out, "{}", serde_json::to_string(self).expect("record serializes")),
            (Format::Csv, Some(p)) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},",
                self.graph6, p.n, p.edge_count, p.connectivity_ok, p.rigid, p.redundantly_rigid, p.globally_rigid, p.is_h
            ),
            (Format::Csv, None) => writeln!(
                out,
                "{},,,,,,,,\"line {}: {}\"",
                csv_field(&self.graph6),
                self.line,
                self.error.as_deref().unwrap_or("").replace('"', "'")
            ),
            (Format::Text, Some(p)) => writeln!(
                out,
                "{:<16} n={:<3} edges={:<4} connectivity_ok={:<5} rigid={:<5} redundant={:<5} globally_rigid={:<5} is_H={}",
                self.graph6, p.n, p.edge_count, p.connectivity_ok, p.rigid, p.redundantly_rigid, p.globally_rigid, p.is_h
            ),
            (Format::Text, None) => writeln!(
                out,
                "line {}: error: {}",
                self.line,
                self.error.as_deref().unwrap_or("")
            ),
            (Format::Graph6, Some(p)) if p.is_h => writeln!(out, "{}", self.graph6),
            (Format::Graph6, _) => Ok(()),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CHECK_CSV_HEADER: &str = "graph6,n,edges,connectivity_ok,rigid,redundant,globally_rigid,is_h,error";

fn check_line(line_no: usize, text: &str, d: usize, trials: u32, seed: u64) -> CheckRecord {
    let graph6 = text.trim().to_string();
    let result = from_graph6(text).map_err(|e| e.to_string()).and_then(|g| {
        let s = graph_seed(seed, &canonical_form(&g));
        classify(&g, d, trials, s).map_err(|e| e.to_string())
    });
    match result {
        Ok(p) => CheckRecord {
            line: line_no,
            graph6,
            profile: Some(p),
            error: None,
        },
        Err(e) => CheckRecord {
            line: line_no,
            graph6,
            profile: None,
            error: Some(e),
        },
    }
}

/// Classifies graph6 lines in parallel batches and writes records in input
/// order. `workers == 0` means one thread per core. Returns the number of
/// failed lines.
pub fn cmd_check(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    d: usize,
    trials: u32,
    seed: u64,
    format: Format,
    workers: usize,
) -> io::Result<usize> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(io::Error::other)?;
    if format == Format::Csv {
        writeln!(out, "{CHECK_CSV_HEADER}")?;
    }
    let mut failures = 0;
    let mut line_no = 0;
    let mut lines = input.lines();
    loop {
        let mut batch = Vec::with_capacity(CHECK_BATCH);
        for line in lines.by_ref().take(CHECK_BATCH) {
            line_no += 1;
            batch.push((line_no, line?));
        }
        if batch.is_empty() {
            break;
        }
        let records: Vec<CheckRecord> = pool.install(|| {
            batch
                .par_iter()
                .map(|(no, text)| check_line(*no, text, d, trials, seed))
                .collect()
        });
        for r in &records {
            failures += r.error.is_some() as usize;
            r.write(out, format)?;
        }
    }
    Ok(failures)
}

pub fn write_scan_report(report: &ScanReport, out: &mut dyn Write, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        Format::Graph6 => report.h_graphs.iter().try_for_each(|g| writeln!(out, "{g}")),
        Format::Csv => {
            writeln!(out, "{}", crate::scan::CSV_HEADER)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{:.3}",
                report.spec.d,
                report.spec.n,
                report.spec.n - report.spec.d,
                report.candidates_generated,
                report.redundant_and_connected_count,
                report.globally_rigid_count,
                report.h_graphs.len(),
                report.wall_time
            )
        }
        Format::Text => {
            writeln!(
                out,
                "d={} n={}{}",
                report.spec.d,
                report.spec.n,
                if report.complete { "" } else { " (incomplete)" }
            )?;
            writeln!(out, "candidates            {}", report.candidates_generated)?;
            writeln!(out, "redundant+connected   {}", report.redundant_and_connected_count)?;
            writeln!(out, "globally rigid        {}", report.globally_rigid_count)?;
            writeln!(out, "H-graphs              {}", report.h_graphs.len())?;
            for g in &report.h_graphs {
                writeln!(out, "  {g}")?;
            }
            writeln!(out, "seconds               {:.3}", report.wall_time)
        }
    }
}

fn write_table(table: &Table, out: &mut dyn Write, format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", table.to_json()),
        Format::Csv | Format::Graph6 => write!(out, "{}", table.to_csv()),
        Format::Text => {
            writeln!(
                out,
                "{:>3} {:>3} {:>3} {:>12} {:>12} {:>12} {:>4} {:>10}",
                "d", "n", "k", "candidates", "red+conn", "glob.rigid", "H", "seconds"
            )?;
            for c in &table.cells {
                write!(
                    out,
                    "{:>3} {:>3} {:>3} {:>12} {:>12} {:>12} {:>4} {:>10.3}",
                    c.d, c.n, c.k, c.candidates, c.redundant_connected, c.globally_rigid, c.h_count, c.seconds
                )?;
                match &c.error {
                    Some(e) => writeln!(out, "  {e}")?,
                    None => writeln!(out)?,
                }
            }
            Ok(())
        }
    }
}

fn open_input<'a>(path: &str, stdin: &'a mut dyn BufRead) -> io::Result<Box<dyn BufRead + 'a>> {
    if path == "-" {
        Ok(Box::new(stdin))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

/// Parses `args` and runs the command against the given streams.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    let g = &cli.global;
    if g.dim == 0 || g.trials == 0 {
        let _ = writeln!(stderr, "error: --dim and --trials must be at least 1");
        return EXIT_CONFIG;
    }
    if g.workers == Some(0) {
        let _ = writeln!(stderr, "error: --workers must be at least 1");
        return EXIT_CONFIG;
    }
    let mut file_out;
    let out: &mut dyn Write = match &g.output {
        Some(p) => match File::create(p) {
            Ok(f) => {
                file_out = BufWriter::new(f);
                &mut file_out
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", p.display());
                return EXIT_CONFIG;
            }
        },
        None => stdout,
    };
    let result = dispatch(&cli, stdin, out, stderr);
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CONFIG
        }
    };
    if out.flush().is_err() {
        return EXIT_FAILURES.max(code);
    }
    code
}

fn dispatch(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { input } => {
            let format = g.format.unwrap_or(Format::Text);
            let mut reader = open_input(input, stdin)?;
            let failures = cmd_check(
                &mut reader,
                out,
                g.dim,
                g.trials,
                g.seed,
                format,
                g.workers.unwrap_or(0),
            )?;
            if failures > 0 {
                writeln!(stderr, "{failures} line(s) failed")?;
                return Ok(EXIT_FAILURES);
            }
            Ok(EXIT_OK)
        }
        Command::Scan {
            n,
            max_candidates,
            split_depth,
            log,
            h_graphs,
        } => {
            let mut spec = ScanSpec::new(g.dim, *n);
            spec.min_edges = g.min_edges;
            spec.trials = g.trials;
            spec.seed = g.seed;
            spec.workers = g.workers.unwrap_or(0);
            spec.max_candidates = *max_candidates;
            spec.split_depth = *split_depth;
            spec.results_log = log.clone();
            let (report, code) = match hendrickson_scan(&spec) {
                Ok(r) => (r, EXIT_OK),
                Err(ScanError::ResourceBound { partial, .. }) => {
                    writeln!(stderr, "warning: candidate budget exhausted; report is incomplete")?;
                    (*partial, EXIT_FAILURES)
                }
                Err(ScanError::InvalidSpec(m)) => {
                    writeln!(stderr, "error: {m}")?;
                    return Ok(EXIT_CONFIG);
                }
                Err(e) => {
                    writeln!(stderr, "error: {e}")?;
                    return Ok(EXIT_FAILURES);
                }
            };
            write_scan_report(&report, out, g.format.unwrap_or(Format::Text))?;
            if let Some(path) = h_graphs {
                let mut f = BufWriter::new(File::create(path)?);
                write_scan_report(&report, &mut f, Format::Graph6)?;
                f.flush()?;
            }
            Ok(code)
        }
        Command::Table {
            dims,
            k_max,
            max_candidates,
        } => {
            if dims.contains(&0) || *k_max < 2 {
                writeln!(stderr, "error: dimensions must be positive and --k-max at least 2")?;
                return Ok(EXIT_CONFIG);
            }
            let mut defaults = ScanSpec::new(g.dim, g.dim + 2);
            defaults.trials = g.trials;
            defaults.seed = g.seed;
            defaults.workers = g.workers.unwrap_or(0);
            defaults.max_candidates = *max_candidates;
            let table = table_report(dims, *k_max, &defaults);
            write_table(&table, out, g.format.unwrap_or(Format::Csv))?;
            Ok(if table.cells.iter().any(|c| c.error.is_some()) {
                EXIT_FAILURES
            } else {
                EXIT_OK
            })
        }
        Command::Construct {
            name,
            params,
            remove_red_edges,
        } => {
            let graph = match Construction::parse(name, params).and_then(|c| c.build(*remove_red_edges)) {
                Ok(x) => x,
                Err(e) => {
                    writeln!(stderr, "error: {e}")?;
                    return Ok(EXIT_CONFIG);
                }
            };
            let code = to_graph6(&graph);
            match g.format.unwrap_or(Format::Graph6) {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({"name": name, "params": params, "n": graph.n(), "edges": graph.edge_count(), "graph6": code})
                )?,
                _ => writeln!(out, "{code}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Cone { input, times } => {
            let reader = open_input(input, stdin)?;
            let mut failures = 0;
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                let coned = from_graph6(&line).and_then(|mut graph| {
                    for _ in 0..*times {
                        graph = graph.cone()?;
                    }
                    Ok(graph)
                });
                match coned {
                    Ok(c) => writeln!(out, "{}", to_graph6(&c))?,
                    Err(e) => {
                        failures += 1;
                        writeln!(stderr, "line {}: error: {e}", i + 1)?;
                    }
                }
            }
            Ok(if failures > 0 { EXIT_FAILURES } else { EXIT_OK })
        }
    }
}
