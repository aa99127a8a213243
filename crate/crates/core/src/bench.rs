//! Benchmark rows and table output.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pipeline::{solve_exact, SolveOptions, Status, Strategy};

/// One (graph, strategy) run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub strategy: Strategy,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub components: usize,
    pub k_max: usize,
    pub offset: usize,
    /// `None` unless the run finished.
    pub alpha: Option<usize>,
    pub time_kernelize_s: f64,
    pub time_solve_s: Option<f64>,
    pub status: Status,
}

pub const HEADER: [&str; 13] = [
    "name",
    "n",
    "m",
    "strategy",
    "kernel_n",
    "kernel_m",
    "components",
    "k_max",
    "offset",
    "alpha",
    "time_kernelize_s",
    "time_solve_s",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Tsv,
    Pretty,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "tsv" => Ok(TableFormat::Tsv),
            "pretty" => Ok(TableFormat::Pretty),
            _ => Err(Error::InvalidParams(format!("unknown table format '{s}'"))),
        }
    }
}

/// Seconds rounded to the two decimals the tables print.
pub fn seconds(d: Duration) -> f64 {
    (d.as_secs_f64() * 100.0).round() / 100.0
}

impl BenchRow {
    fn cells(&self) -> Vec<String> {
        let dash = || "-".to_string();
        vec![
            self.name.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.strategy.to_string(),
            self.kernel_n.to_string(),
            self.kernel_m.to_string(),
            self.components.to_string(),
            self.k_max.to_string(),
            self.offset.to_string(),
            self.alpha.map_or_else(dash, |a| a.to_string()),
            format!("{:.2}", self.time_kernelize_s),
            self.time_solve_s.map_or_else(dash, |t| format!("{t:.2}")),
            self.status.to_string(),
        ]
    }

    fn from_cells(cells: &[&str], line: usize) -> Result<BenchRow> {
        if cells.len() != HEADER.len() {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", HEADER.len(), cells.len()),
            });
        }
        let bad = |field: &str, value: &str| Error::Parse {
            line,
            msg: format!("bad {field} '{value}'"),
        };
        let count = |i: usize| {
            cells[i]
                .parse::<usize>()
                .map_err(|_| bad(HEADER[i], cells[i]))
        };
        let secs = |i: usize| {
            cells[i]
                .parse::<f64>()
                .map_err(|_| bad(HEADER[i], cells[i]))
        };
        let optional = |i: usize| (cells[i] != "-").then_some(i);
        Ok(BenchRow {
            name: cells[0].to_string(),
            n: count(1)?,
            m: count(2)?,
            strategy: cells[3].parse().map_err(|_| bad("strategy", cells[3]))?,
            kernel_n: count(4)?,
            kernel_m: count(5)?,
            components: count(6)?,
            k_max: count(7)?,
            offset: count(8)?,
            alpha: optional(9).map(count).transpose()?,
            time_kernelize_s: secs(10)?,
            time_solve_s: optional(11).map(secs).transpose()?,
            status: cells[12].parse().map_err(|_| bad("status", cells[12]))?,
        })
    }
}

/// Header plus one line per row, in input order.
pub fn emit_table(rows: &[BenchRow], format: TableFormat) -> Vec<u8> {
    match format {
        TableFormat::Csv => emit_delimited(rows, b','),
        TableFormat::Tsv => emit_delimited(rows, b'\t'),
        TableFormat::Pretty => emit_pretty(rows).into_bytes(),
    }
}

fn emit_delimited(rows: &[BenchRow], delimiter: u8) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.cells()).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn emit_pretty(rows: &[BenchRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(BenchRow::cells).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| {
            body.iter()
                .map(|r| r[i].len())
                .chain([HEADER[i].len()])
                .max()
                .unwrap()
        })
        .collect();
    let mut out = String::new();
    let header: Vec<String> = HEADER.iter().map(|h| h.to_string()).collect();
    for cells in std::iter::once(&header).chain(&body) {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| {
                if i == 0 || i == 3 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

/// Parses CSV produced by [`emit_table`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    if header.iter().ne(HEADER) {
        return Err(Error::Parse {
            line: 1,
            msg: "unexpected header".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: i + 2,
            msg: e.to_string(),
        })?;
        let cells: Vec<&str> = record.iter().collect();
        rows.push(BenchRow::from_cells(&cells, i + 2)?);
    }
    Ok(rows)
}

/// Runs every strategy on `g` and returns one row each.
pub fn bench_graph(
    name: &str,
    g: &Graph,
    strategies: &[Strategy],
    opts: &SolveOptions,
) -> Result<Vec<BenchRow>> {
    strategies
        .iter()
        .map(|&strategy| {
            let r = solve_exact(g, strategy, opts)?;
            let finished = r.status == Status::Exact;
            Ok(BenchRow {
                name: name.to_string(),
                n: g.num_vertices(),
                m: g.num_edges(),
                strategy,
                kernel_n: r.kernel.n,
                kernel_m: r.kernel.m,
                components: r.kernel.components,
                k_max: r.kernel.k_max,
                offset: r.kernel.offset,
                alpha: finished.then_some(r.alpha),
                time_kernelize_s: seconds(r.timings.kernelize),
                time_solve_s: finished.then(|| seconds(r.timings.solve + r.timings.reconstruct)),
                status: r.status,
            })
        })
        .collect()
}
