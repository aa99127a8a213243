use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use miskern::bench::{bench_graph, emit_table, TableFormat};
use miskern::io::{parse_solution, read_graph, write_solution, ParseOptions};
use miskern::pipeline::{Status, Verdict};
use miskern::{generate, kernelize, solve_exact, verify_solution, write_edge_list};
use miskern::{Error, Format, Graph, GraphKind, SolveOptions, Strategy};

#[derive(Parser)]
#[command(
    name = "miskern",
    version,
    about = "Exact maximum independent sets via kernelization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// edge-list, metis or dimacs; guessed from the extension by default.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Drop self-loops instead of rejecting the file.
    #[arg(long)]
    lenient: bool,
}

impl Input {
    fn read(&self, path: &Path) -> miskern::Result<Graph> {
        read_graph(
            path,
            self.format,
            ParseOptions {
                drop_self_loops: self.lenient,
            },
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a graph and report the kernel.
    Kernelize {
        file: PathBuf,
        #[arg(long, value_parser = parse_strategy)]
        strategy: Strategy,
        #[command(flatten)]
        input: Input,
        /// Write the kernel as an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a maximum independent set.
    Solve {
        file: PathBuf,
        #[arg(long, value_parser = parse_strategy, default_value = "advanced")]
        strategy: Strategy,
        #[command(flatten)]
        input: Input,
        /// Budget for the solving phase, in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Write the solution, one vertex per line.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run strategies over graph files and tabulate the results.
    Bench {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Comma-separated strategies, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_strategies)]
        strategies: StrategyList,
        #[command(flatten)]
        input: Input,
        /// Per-run budget for the solving phase, in seconds.
        #[arg(long, default_value_t = 3600.0)]
        timeout: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Table printed on stdout: csv, tsv or pretty.
        #[arg(long, default_value = "pretty", value_parser = parse_table)]
        table: TableFormat,
        /// Kernelize only.
        #[arg(long)]
        kernel_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that a solution file is an independent set of a graph.
    Verify {
        graph: PathBuf,
        solution: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Generate a graph and print it as an edge list.
    Gen {
        /// gnp, cycle, path, star, chordal or tree.
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone)]
struct StrategyList(Vec<Strategy>);

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategies(s: &str) -> Result<StrategyList, String> {
    Strategy::parse_list(s)
        .map(StrategyList)
        .map_err(|e| e.to_string())
}

fn parse_table(s: &str) -> Result<TableFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn budget(secs: f64) -> miskern::Result<Duration> {
    Duration::try_from_secs_f64(secs)
        .map_err(|_| Error::InvalidParams(format!("invalid timeout {secs}")))
}

fn write_file(path: &Path, text: &[u8]) -> miskern::Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> miskern::Result<ExitCode> {
    match cli.command {
        Command::Kernelize {
            file,
            strategy,
            input,
            out,
        } => {
            let g = input.read(&file)?;
            let kr = kernelize(&g, strategy);
            println!(
                "kernel_n={} kernel_m={} offset={} components={} k_max={} time_s={:.2}",
                kr.kernel.num_vertices(),
                kr.kernel.num_edges(),
                kr.offset,
                kr.components,
                kr.k_max,
                kr.time.as_secs_f64()
            );
            if let Some(out) = out {
                write_file(&out, write_edge_list(&kr.kernel).as_bytes())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            file,
            strategy,
            input,
            timeout,
            solution,
            jobs,
        } => {
            let g = input.read(&file)?;
            let opts = SolveOptions {
                timeout: timeout.map(budget).transpose()?,
                jobs,
                ..Default::default()
            };
            let r = solve_exact(&g, strategy, &opts)?;
            if let Some(path) = solution {
                write_file(&path, write_solution(&r.mis).as_bytes())?;
            }
            println!("alpha={}", r.alpha);
            println!("status={}", r.status);
            eprintln!(
                "kernel_n={} offset={} k_max={} kernelize_s={:.2} solve_s={:.2}",
                r.kernel.n,
                r.kernel.offset,
                r.kernel.k_max,
                r.timings.kernelize.as_secs_f64(),
                r.timings.solve.as_secs_f64()
            );
            Ok(if r.status == Status::Timeout {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Bench {
            files,
            strategies,
            input,
            timeout,
            csv,
            table,
            kernel_only,
            jobs,
        } => {
            let opts = SolveOptions {
                timeout: Some(budget(timeout)?),
                jobs,
                kernel_only,
                ..Default::default()
            };
            let mut rows = Vec::new();
            for file in &files {
                let name = file.file_stem().map_or_else(
                    || file.display().to_string(),
                    |s| s.to_string_lossy().into_owned(),
                );
                eprintln!("bench {name}");
                let g = input.read(file)?;
                rows.extend(bench_graph(&name, &g, &strategies.0, &opts)?);
            }
            if let Some(path) = csv {
                write_file(&path, &emit_table(&rows, TableFormat::Csv))?;
            }
            std::io::stdout().write_all(&emit_table(&rows, table))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            graph,
            solution,
            input,
        } => {
            let g = input.read(&graph)?;
            let set = parse_solution(&fs::read_to_string(&solution)?)?;
            match verify_solution(&g, &set) {
                Verdict::Valid => {
                    println!("valid size={}", set.len());
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Violation(u, v) => {
                    println!("violation edge {u} {v}");
                    Ok(ExitCode::from(2))
                }
                Verdict::UnknownVertex(v) => {
                    println!("unknown vertex {v}");
                    Ok(ExitCode::from(2))
                }
                Verdict::ClaimsMismatch { claimed, actual } => {
                    println!("size mismatch: claimed {claimed}, found {actual}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Gen {
            kind,
            params,
            seed,
            out,
        } => {
            let g = generate(GraphKind::parse(&kind, &params, seed)?)?;
            let text = write_edge_list(&g);
            match out {
                Some(path) => write_file(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
