mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "symquandle",
    version,
    about = "Symmetric quandles, their homology and knot colorings"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Largest group or quandle that may be built.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_elements: usize,

    /// Largest dense integer matrix (rows × columns) a computation may use.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_matrix_cells: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The signed permutation group G_{2n+1}.
    Group(GroupArgs),
    /// Build and inspect a quandle.
    Quandle(QuandleArgs),
    /// Integral homology of a symmetric quandle complex.
    Homology(HomologyArgs),
    /// Named 3-cocycles of R̃_3.
    Cocycle(CocycleArgs),
    /// Search for non-trivial cycles with small support.
    Scan(ScanArgs),
    /// Count quandle colorings of a Gauss code.
    Color(ColorArgs),
    /// Triple point lower bound from signed colored triple points.
    Bound(BoundArgs),
    /// Print a named chain of R̃_3 as JSON.
    Chain(ChainArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    order: bool,
    #[arg(long)]
    centralizer: bool,
    #[arg(long)]
    cosets: bool,
    /// An element in signed notation, e.g. "(3,1,-2)".
    #[arg(long, value_name = "ELT", allow_hyphen_values = true)]
    normal_form: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Dihedral,
    Tilde,
    Trivial,
}

#[derive(Args, Debug)]
struct QuandleArgs {
    #[arg(long, value_enum, conflicts_with = "file")]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    n: Option<usize>,
    /// Quandle JSON file with labels, table and optional rho.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    table: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    involutory: bool,
    #[arg(long)]
    good_involutions: bool,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    /// tilde:N, dihedral:M, trivial:K or file:PATH.
    #[arg(long, default_value = "tilde:1")]
    quandle: String,
    #[arg(long, default_value = "Qrho")]
    flavor: String,
    #[arg(long)]
    degree: usize,
    /// Use the two-element checkerboard region colors.
    #[arg(long)]
    checkerboard: bool,
    /// Pair generators only in slots 1..n-1.
    #[arg(long)]
    restricted_rho: bool,
    /// Also report the class of the cycle in this chain file.
    #[arg(long, value_name = "CHAIN.json")]
    class: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CocycleName {
    Phi,
    #[value(alias = "phi_prime")]
    PhiPrime,
    #[value(alias = "phi_pp", alias = "phi-double-prime")]
    PhiPp,
}

#[derive(Args, Debug)]
struct CocycleArgs {
    #[arg(long, value_enum)]
    name: CocycleName,
    /// Evaluate on the chain in this file (region colors are forgotten).
    #[arg(long, value_name = "CHAIN.json")]
    eval: Option<PathBuf>,
    /// Check the Qρ cocycle condition.
    #[arg(long)]
    check: bool,
    /// Check the ±monic and {0,±1} conditions.
    #[arg(long)]
    monic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value = "tilde:1")]
    quandle: String,
    #[arg(long)]
    checkerboard: bool,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = ScanModeArg::Exhaustive)]
    mode: ScanModeArg,
    /// Largest support; the random mode draws sizes from --min-support to this.
    #[arg(long, default_value_t = 3)]
    max_support: usize,
    #[arg(long, default_value_t = 1)]
    min_support: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct ColorArgs {
    #[arg(long, default_value = "dihedral:3")]
    quandle: String,
    /// Gauss code such as "O1+U2+O3+U1+O2+U3+"; may be given several times.
    #[arg(long, required = true, allow_hyphen_values = true)]
    gauss: Vec<String>,
    /// Report only the non-constant colorings in the summary.
    #[arg(long)]
    nontrivial: bool,
    /// List every coloring.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// JSON list of {"sign": ±1, "y": optional, "x": [x1, x2, x3]}.
    #[arg(long, value_name = "RECORDS.json")]
    records: PathBuf,
    #[arg(long, value_enum, default_value_t = CocycleName::PhiPrime)]
    cocycle: CocycleName,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ChainName {
    C,
    Gamma,
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long, value_enum)]
    name: ChainName,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    times: i64,
    /// Delete the region color.
    #[arg(long)]
    forget_y: bool,
    /// Print triple point records instead of a chain.
    #[arg(long)]
    records: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match commands::run(&cli) {
        Ok(result) => {
            print!("{}", result.render(format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            if format == Format::Json {
                println!("{}", err.to_json());
            }
            ExitCode::from(err.exit_code())
        }
    }
}
