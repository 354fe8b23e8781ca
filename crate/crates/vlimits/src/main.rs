use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vlimits::cli::{self, CliError, LimitsConfig};
use vlimits::verify::SuiteId;

/// Exact computation of stable-limit loci for nodal curves from their dual
/// graphs: chip-firing, slope cochains, Voronoi tilings, and toric cell
/// censuses. All machine-readable output is exact (no floats).
#[derive(Parser)]
#[command(name = "vlimits", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph invariants: genus, tree count, lattice indices, Jacobian.
    Graph {
        #[command(subcommand)]
        sub: GraphCommand,
    },
    /// Census of stable-limit cells with degrees, gluing data and the
    /// degeneration poset.
    Limits(LimitsArgs),
    /// Tiling figures for graphs of ambient dimension at most 2.
    Tiling {
        #[command(subcommand)]
        sub: TilingCommand,
    },
    /// Apply chip-firing moves to a divisor file.
    Chipfire(ChipfireArgs),
    /// Run the per-module invariant suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Print the invariant report as JSON.
    Info { file: PathBuf },
}

#[derive(Args)]
struct LimitsArgs {
    file: PathBuf,
    /// Largest base-change exponent to enumerate.
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    /// Radius of the function box (first vertex pinned to zero).
    #[arg(long, default_value_t = 6)]
    fbox: i64,
    /// Cell-coordinate radius of the retained window.
    #[arg(long, default_value_t = 2)]
    window: i64,
    /// Edge character values, one rational per edge (default all 1).
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<String>>,
    /// Cycle character values, one rational per basis cycle (default all 1).
    #[arg(long, value_delimiter = ',')]
    b: Option<Vec<String>>,
    /// Reference multidegree, one integer per vertex (default all 0).
    #[arg(long, value_delimiter = ',')]
    bdeg: Option<Vec<i64>>,
    /// Echoed into the output header; enumeration itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the census JSON here instead of stdout.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
    /// Write the degeneration poset in DOT form here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Render sampled membership shading with exact centers in a sidecar.
    Svg(TilingSvgArgs),
}

#[derive(Args)]
struct TilingSvgArgs {
    file: PathBuf,
    #[arg(long, short = 'o')]
    out: PathBuf,
    /// Exact tile list written next to the figure (default: out + ".json").
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Samples per axis for the membership shading.
    #[arg(long, default_value_t = 33)]
    samples: u32,
    /// View radius in the drawing coordinates.
    #[arg(long, default_value_t = 3)]
    radius: i64,
}

#[derive(Args)]
struct ChipfireArgs {
    file: PathBuf,
    /// Divisor JSON file.
    #[arg(long)]
    divisor: PathBuf,
    /// Vertices to fire, in order.
    #[arg(long, value_delimiter = ',')]
    fire: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Run one suite (graph, chipfire, slopes, tilings, toric, regen).
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Graph {
            sub: GraphCommand::Info { file },
        } => {
            let data = cli::load_graph(&read_file(&file)?)?;
            print!("{}", cli::cmd_graph_info(&data));
            Ok(())
        }
        Command::Limits(args) => {
            let data = cli::load_graph(&read_file(&args.file)?)?;
            let cfg = LimitsConfig {
                n_max: args.nmax,
                f_radius: args.fbox,
                cell_radius: args.window,
                a: args.a,
                b: args.b,
                bdeg: args.bdeg,
                seed: args.seed,
            };
            let (json, dot) = cli::cmd_limits(&data, &cfg)?;
            match &args.out {
                Some(path) => write_file(path, &json)?,
                None => print!("{json}"),
            }
            if let Some(path) = &args.dot {
                write_file(path, &dot)?;
            }
            Ok(())
        }
        Command::Tiling {
            sub: TilingCommand::Svg(args),
        } => {
            let data = cli::load_graph(&read_file(&args.file)?)?;
            let (svg, sidecar) = cli::cmd_tiling_svg(&data, args.samples, args.radius)?;
            write_file(&args.out, &svg)?;
            let sidecar_path = args
                .sidecar
                .unwrap_or_else(|| args.out.with_extension("svg.json"));
            write_file(&sidecar_path, &sidecar)?;
            Ok(())
        }
        Command::Chipfire(args) => {
            let data = cli::load_graph(&read_file(&args.file)?)?;
            let divisor = read_file(&args.divisor)?;
            print!("{}", cli::cmd_chipfire(&data, &divisor, &args.fire)?);
            Ok(())
        }
        Command::Verify(args) => {
            let data = cli::load_graph(&read_file(&args.file)?)?;
            let suites: Vec<SuiteId> = match &args.suite {
                None => SuiteId::all().to_vec(),
                Some(name) => vec![SuiteId::from_name(name).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown suite `{name}` (expected one of graph, chipfire, slopes, \
                         tilings, toric, regen)"
                    ))
                })?],
            };
            let report = cli::cmd_verify(&data, &suites, args.seed)?;
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                // A failed verification still prints its full report.
                CliError::VerifyFailed(report) => print!("{report}"),
                other => eprintln!("error: {}", other.message()),
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
