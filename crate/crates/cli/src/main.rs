use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use specrewriter_cli::commands::{self, EdgeListArgs, GridArgs, RewriteArgs, SolveArgs, VerifyArgs};
use specrewriter_cli::{CmdResult, EXIT_OK, EXIT_PARSE};
use specrewriter_core::eval::DEFAULT_MAX_GROUND;

#[derive(Parser)]
#[command(name = "specrewriter", version, about = "Graph-rewriting reformulation of constraint specifications")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GridFlags {
    /// TOML grid configuration (default: the desk grid).
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Keep edges as sampled/listed instead of storing both orientations.
    #[arg(long)]
    directed: bool,
}

impl GridFlags {
    fn into_args(self) -> GridArgs {
        GridArgs { grid: self.grid, seed: self.seed, directed: self.directed }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Reformulate a specification with the rule library.
    Rewrite {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Extra rule files merged over the library (later files win).
        #[arg(long, num_args = 1..)]
        rules: Vec<PathBuf>,
        /// Also write the host graphs before and after rewriting.
        #[arg(long)]
        emit_host: bool,
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Enumerate solutions of a specification for one instance.
    Solve {
        spec: PathBuf,
        param: PathBuf,
        /// Directory for `.solution` files (default: current directory).
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_GROUND)]
        max_ground: u128,
    },
    /// Emit the solution-converter specification for a pair.
    GenConverter {
        original: PathBuf,
        rewritten: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Convert a rewritten solution back to the original find's type.
    Convert {
        original: PathBuf,
        param: PathBuf,
        solution: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against the original specification.
    Validate { original: PathBuf, param: PathBuf, solution: PathBuf },
    /// Generate grid instances, or one instance from an edge list.
    GenInstances {
        #[command(flatten)]
        grid: GridFlags,
        #[arg(long, requires_all = ["number_colours", "colours_per_node"])]
        edge_list: Option<PathBuf>,
        #[arg(long)]
        number_colours: Option<i64>,
        #[arg(long)]
        colours_per_node: Option<i64>,
        /// Output directory (grid) or file (edge list).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check solution-set equivalence of a specification and its rewrite.
    Verify {
        original: PathBuf,
        param: Option<PathBuf>,
        #[command(flatten)]
        grid: GridFlags,
        #[arg(long, num_args = 1..)]
        rules: Vec<PathBuf>,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_GROUND)]
        max_ground: u128,
        /// Also write the report here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Rewrite { input, out, rules, emit_host, fuel } => {
            commands::rewrite(&RewriteArgs { input, out, rules, emit_host, fuel })
        }
        Cmd::Solve { spec, param, out, limit, max_ground } => {
            commands::solve(&SolveArgs { spec, param, out, limit, max_ground })
        }
        Cmd::GenConverter { original, rewritten, out } => commands::gen_converter(&original, &rewritten, out.as_deref()),
        Cmd::Convert { original, param, solution, out } => {
            commands::convert(&original, &param, &solution, out.as_deref())
        }
        Cmd::Validate { original, param, solution } => commands::validate_cmd(&original, &param, &solution),
        Cmd::GenInstances { grid, edge_list, number_colours, colours_per_node, out } => {
            let edges = edge_list.map(|path| EdgeListArgs {
                path,
                number_colours: number_colours.unwrap(),
                colours_per_node: colours_per_node.unwrap(),
            });
            commands::gen_instances(&grid.into_args(), edges.as_ref(), out.as_deref())
        }
        Cmd::Verify { original, param, grid, rules, fuel, max_ground, out } => commands::verify(&VerifyArgs {
            original,
            param,
            grid: grid.into_args(),
            rules,
            fuel,
            max_ground,
            out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors share the parse-error code; help and version are not errors.
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { EXIT_OK as u8 });
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
