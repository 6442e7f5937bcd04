//! `edgemd` command-line front end.
//!
//! Generic `--edge U,V` on edge-list input takes 0-based vertex ids. The 2D
//! grid commands take `--edge xE,yE,xF,yF` in 1-based grid coordinates.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgemd::distribution::{md_distribution, DistributionOptions, Mode};
use edgemd::graph::{apsp, grid, gstar, read_edge_list, ring, write_edge_list, Graph};
use edgemd::grid2d::{
    conjecture_predict, conjecture_verify, region_map_ascii, region_map_json, GridEdgeConfig,
    Point, VerifyOptions,
};
use edgemd::perturb::{
    composition_upper_bound, decrease_bound_check, gain_profile, region_report, special_region,
    ExtraEdge,
};
use edgemd::solver::{metric_dimension_with, SolverOptions};
use edgemd::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "edgemd",
    version,
    about = "Metric dimension of graphs with one extra edge"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value_t = GenFormat::Edgelist, global = true)]
        format: GenFormat,
    },
    /// Exact metric dimension of an edge-list graph.
    Md {
        /// Edge-list file, or '-' for standard input.
        path: Option<String>,
        #[arg(long, conflicts_with = "path")]
        input: Option<String>,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Split the search across threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Region, gain and bound reports for one extra edge `U,V` (0-based ids).
    Perturb {
        #[arg(long)]
        input: String,
        #[arg(long, value_parser = parse_pair)]
        edge: (usize, usize),
        #[arg(long, value_enum, default_value_t = Report::Regions)]
        report: Report,
    },
    /// 2D grids with one extra edge; `--edge xE,yE,xF,yF` is 1-based.
    Grid2d {
        #[command(subcommand)]
        action: Grid2dAction,
    },
    /// Distribution of the metric dimension under a random extra edge.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DistMode::Conjecture)]
        mode: DistMode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    Grid {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    Ring {
        #[arg(long)]
        n: usize,
    },
    Gstar {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Grid2dAction {
    Predict {
        #[command(flatten)]
        grid: GridArgs,
    },
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        /// Wall-clock budget in seconds; unfinished runs are flagged incomplete.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    Regions {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = MapFormat::Json)]
        format: MapFormat,
    },
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_parser = parse_grid_edge)]
    edge: (Point, Point),
}

impl GridArgs {
    fn config(&self) -> edgemd::Result<GridEdgeConfig> {
        GridEdgeConfig::new(self.n, self.m.unwrap_or(self.n), self.edge.0, self.edge.1)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenFormat {
    Edgelist,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Report {
    Regions,
    Gains,
    Bounds,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapFormat {
    Ascii,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DistMode {
    Exact,
    Conjecture,
    Sample,
}

impl From<DistMode> for Mode {
    fn from(m: DistMode) -> Mode {
        match m {
            DistMode::Exact => Mode::Exact,
            DistMode::Conjecture => Mode::Conjecture,
            DistMode::Sample => Mode::Sample,
        }
    }
}

fn parse_numbers(s: &str, count: usize) -> Result<Vec<usize>, String> {
    let nums = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() != count {
        return Err(format!("expected {count} comma-separated integers"));
    }
    Ok(nums)
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let v = parse_numbers(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_grid_edge(s: &str) -> Result<(Point, Point), String> {
    let v = parse_numbers(s, 4)?;
    Ok((Point::new(v[0], v[1]), Point::new(v[2], v[3])))
}

/// Error with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    /// Computation finished but reported a mismatch or violated bound; the
    /// payload has already been printed.
    Check(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Check(_) | Failure::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Check(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. } | Error::Disconnected(..) => Failure::Input(msg),
            Error::InvalidArgument(_)
            | Error::Precondition(_)
            | Error::CannotCanonicalize(_)
            | Error::Degenerate(_)
            | Error::UndefinedFraction(_)
            | Error::InapplicableBound(_) => Failure::Usage(msg),
            Error::ExceedsKmax { .. } | Error::Fault(_) => Failure::Other(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(Failure::Usage(clap_message(&e))),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}

fn clap_message(e: &clap::Error) -> String {
    let text = e.to_string();
    text.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("{}", json!({ "error": f.message() }));
    ExitCode::from(f.code())
}

fn emit(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}").map_err(|e| Failure::Other(e.to_string()))
}

fn to_value(v: impl serde::Serialize) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Other(e.to_string()))
}

fn read_graph(path: &str) -> Result<Graph, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
    };
    Ok(read_edge_list(&text)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, format } => {
            let g = match family {
                Family::Grid { dims } => grid(&dims)?,
                Family::Ring { n } => ring(n)?,
                Family::Gstar { n } => gstar(n)?.graph,
            };
            match format {
                GenFormat::Edgelist => print!("{}", write_edge_list(&g)),
                GenFormat::Json => emit(&json!({
                    "n": g.vertex_count(),
                    "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                    "labels": g.labels(),
                }))?,
            }
            Ok(())
        }
        Command::Md {
            path,
            input,
            kmax,
            parallel,
        } => {
            let path = path
                .or(input)
                .ok_or_else(|| Failure::Usage("md needs an input path or '-'".into()))?;
            let d = apsp(&read_graph(&path)?)?;
            let opts = SolverOptions {
                k_max: kmax,
                parallel,
                ..Default::default()
            };
            emit(&to_value(metric_dimension_with(&d, &opts)?)?)
        }
        Command::Perturb {
            input,
            edge,
            report,
        } => {
            let g = read_graph(&input)?;
            let d = apsp(&g)?;
            let e = ExtraEdge::new(&d, edge.0, edge.1)?;
            match report {
                Report::Regions => emit(&region_report(&d, e)?),
                Report::Gains => {
                    let profile = gain_profile(&d, e)?;
                    let regions: Vec<Vec<usize>> =
                        (0..d.n()).map(|a| special_region(&d, e, a)).collect();
                    emit(&json!({
                        "gain_max": profile.gain_max,
                        "special_regions": regions,
                    }))
                }
                Report::Bounds => bounds(&g, e),
            }
        }
        Command::Grid2d { action } => grid2d(action),
        Command::Dist {
            n,
            mode,
            samples,
            seed,
            workers,
        } => {
            let opts = DistributionOptions {
                mode: mode.into(),
                samples,
                seed,
                workers,
                ..Default::default()
            };
            emit(&to_value(md_distribution(n, &opts)?)?)
        }
    }
}

fn bounds(g: &Graph, e: ExtraEdge) -> Result<(), Failure> {
    let (composition, comp_ok) = match composition_upper_bound(g, e) {
        Ok(r) => {
            let ok = r.holds != Some(false);
            (to_value(&r)?, ok)
        }
        Err(err @ Error::InapplicableBound(_)) => {
            (json!({ "inapplicable": err.to_string() }), true)
        }
        Err(err) => return Err(err.into()),
    };
    let decrease = decrease_bound_check(g, e)?;
    let ok = comp_ok && decrease.holds;
    emit(&json!({
        "composition": composition,
        "decrease": to_value(&decrease)?,
    }))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("bound violated".into()))
    }
}

fn grid2d(action: Grid2dAction) -> Result<(), Failure> {
    match action {
        Grid2dAction::Predict { grid } => emit(&to_value(conjecture_predict(&grid.config()?))?),
        Grid2dAction::Regions { grid, format } => {
            let c = grid.config()?;
            match format {
                MapFormat::Ascii => {
                    print!("{}", region_map_ascii(&c));
                    Ok(())
                }
                MapFormat::Json => emit(&region_map_json(&c)?),
            }
        }
        Grid2dAction::Verify {
            n,
            m,
            workers,
            budget_secs,
        } => {
            let opts = VerifyOptions {
                budget: budget_secs.map(Duration::from_secs),
                workers,
                filter: None,
            };
            let report = conjecture_verify(n, m.unwrap_or(n), &opts)?;
            emit(&to_value(&report)?)?;
            if report.mismatches.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{} mismatches",
                    report.mismatches.len()
                )))
            }
        }
    }
}
