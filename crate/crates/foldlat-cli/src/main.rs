//! `foldlat`: folding, DDCs, burst codes, pseudo-random arrays and bounds
//! from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails, and 2 on a
//! usage or input error.

mod commands;
mod input;
mod repro;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foldlat::burstcode::BurstCode;
use foldlat::ddc::{Family, FamilyRequest, DEFAULT_BUDGET};
use foldlat::fields_seq::msequence;
use foldlat::{BoundProblem, Tiling};

use commands::Output;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(foldlat::Error),
}

impl From<foldlat::Error> for CliError {
    fn from(e: foldlat::Error) -> CliError {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "foldlat", version, about = "Lattice foldings and their applications")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Folded-row order of (lattice, shape, direction) and the folding certificate.
    Fold {
        #[command(flatten)]
        fold: FoldArgs,
    },
    /// A B2 set: Bose's construction for a prime power q, or a search in Z_n.
    B2 {
        #[arg(long, conflicts_with_all = ["n", "m"])]
        q: Option<u64>,
        #[arg(long, requires = "m")]
        n: Option<u64>,
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// M-sequence of order n, from the canonical or a given primitive polynomial.
    Mseq {
        #[arg(long)]
        n: u32,
        /// Coefficients high degree first, e.g. 100101.
        #[arg(long)]
        poly: Option<String>,
    },
    #[command(subcommand)]
    Ddc(DdcCommand),
    #[command(subcommand)]
    Burst(BurstCommand),
    #[command(subcommand)]
    Pra(PraCommand),
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Regenerate the worked examples and compare them with the golden files.
    Repro {
        /// `all`, `list`, or one example name.
        target: String,
        #[arg(long, default_value = "repro-out")]
        out: PathBuf,
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Overwrite the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}

#[derive(Args)]
struct FoldArgs {
    /// Generator matrix as JSON rows, a lattice file, or a path to either.
    #[arg(long)]
    lattice: String,
    /// Shape spec (rect:1,11, corner:5,7,1,4, ...), point list, or shape file.
    #[arg(long)]
    shape: String,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
}

#[derive(Subcommand)]
enum DdcCommand {
    /// Fold Bose's B2 set into a family member.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n1: Option<i64>,
        #[arg(long)]
        w1: Option<i64>,
        #[arg(long)]
        w2: Option<i64>,
        /// Write the periodic pattern as JSON.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        shape_out: Option<String>,
        #[arg(long)]
        pbm: Option<String>,
    },
    /// Check that every translate of a shape is a DDC in a periodic pattern.
    Verify {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Placement of a query shape holding the most dots.
    Place {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        query: String,
        /// Also try the eight grid symmetries.
        #[arg(long)]
        symmetries: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum BurstCommand {
    /// Build a 2-burst-correcting code on a box or a folded shape.
    Build {
        #[arg(long, conflicts_with_all = ["lattice", "shape", "delta"])]
        dims: Option<String>,
        #[arg(long, requires_all = ["shape", "delta"])]
        lattice: Option<String>,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        /// Enclosing (lattice, shape) with 2^m − 1 cells; searched for when absent.
        #[arg(long, requires = "padded_shape")]
        padded_lattice: Option<String>,
        #[arg(long, requires = "padded_lattice")]
        padded_shape: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Correct a received word.
    Decode {
        #[arg(long)]
        code: String,
        /// A file of 0/1 characters, or the bits inline.
        #[arg(long)]
        word: String,
    },
}

#[derive(Args)]
struct ArrayArgs {
    #[command(flatten)]
    fold: FoldArgs,
    /// Fold the M-sequence of this order.
    #[arg(long, conflicts_with = "bits")]
    mseq_n: Option<u32>,
    #[arg(long, requires = "mseq_n")]
    poly: Option<String>,
    /// Fold these bits instead.
    #[arg(long)]
    bits: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
}

#[derive(Subcommand)]
enum PraCommand {
    /// Fold a sequence into a shape and report its properties.
    Fold {
        #[command(flatten)]
        array: ArrayArgs,
    },
    /// Window property of a folded array.
    Windows {
        #[command(flatten)]
        array: ArrayArgs,
        /// rect:rows,cols or shape:FILE; repeatable.
        #[arg(long)]
        window: Vec<String>,
        /// Also check the plus-shaped pentomino.
        #[arg(long)]
        star: bool,
        /// Sweep every two-row polyomino with this many cells.
        #[arg(long)]
        two_row: Option<usize>,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Every row of the bound table.
    Table {
        #[arg(long)]
        csv: bool,
    },
    /// Maximize the lower bound for one family.
    Solve {
        #[arg(long)]
        family: BoundProblem,
        #[arg(long)]
        csv: bool,
    },
    /// Evaluate the lower bound at given parameters.
    Eval {
        #[arg(long)]
        family: BoundProblem,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
}

fn tiling(f: &FoldArgs) -> Result<(Tiling, foldlat::Direction), CliError> {
    let t = Tiling::new(input::lattice(&f.lattice)?, input::shape(&f.shape)?)?;
    Ok((t, input::direction(&f.delta)?))
}

fn folded_array(a: &ArrayArgs) -> Result<foldlat::FoldedArray, CliError> {
    let (t, d) = tiling(&a.fold)?;
    let bits = match (&a.mseq_n, &a.bits) {
        (Some(n), None) => msequence(*n, a.poly.as_deref())?.bits,
        (None, Some(b)) => input::bits(b)?,
        _ => return Err(CliError::Usage("give --mseq-n or --bits".into())),
    };
    commands::pra_array(&t, &d, &bits, a.shift)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Fold { fold } => {
            commands::fold(input::lattice(&fold.lattice)?, input::shape(&fold.shape)?, &input::direction(&fold.delta)?)
        }
        Command::B2 { q, n, m, budget } => commands::b2(q, n.zip(m), budget),
        Command::Mseq { n, poly } => commands::mseq(n, poly.as_deref()),
        Command::Ddc(DdcCommand::Gen { family, p, n1, w1, w2, out, shape_out, pbm }) => {
            commands::ddc_gen(&commands::DdcGen {
                family,
                req: FamilyRequest { p, n1, w1, w2 },
                out: out.as_deref(),
                shape_out: shape_out.as_deref(),
                pbm: pbm.as_deref(),
            })
        }
        Command::Ddc(DdcCommand::Verify { pattern, shape, budget }) => {
            commands::ddc_verify(&pattern, &input::shape(&shape)?, budget)
        }
        Command::Ddc(DdcCommand::Place { pattern, query, symmetries, budget }) => {
            commands::ddc_place(&pattern, &input::shape(&query)?, symmetries, budget)
        }
        Command::Burst(BurstCommand::Build { dims, lattice, shape, delta, padded_lattice, padded_shape, out }) => {
            let code = match (dims, lattice, shape, delta) {
                (Some(d), None, None, None) => BurstCode::for_box(&input::ints(&d)?)?,
                (None, Some(l), Some(s), Some(d)) => {
                    let t = Tiling::new(input::lattice(&l)?, input::shape(&s)?)?;
                    let padded = match (padded_lattice, padded_shape) {
                        (Some(pl), Some(ps)) => Some(Tiling::new(input::lattice(&pl)?, input::shape(&ps)?)?),
                        _ => None,
                    };
                    BurstCode::for_shape(&t, &input::direction(&d)?, padded)?
                }
                _ => return Err(CliError::Usage("give --dims, or --lattice with --shape and --delta".into())),
            };
            commands::burst_build(&code, out.as_deref())
        }
        Command::Burst(BurstCommand::Decode { code, word }) => commands::burst_decode(&code, &input::bits(&word)?),
        Command::Pra(PraCommand::Fold { array }) => Ok(commands::pra_fold(&folded_array(&array)?)),
        Command::Pra(PraCommand::Windows { array, window, star, two_row }) => {
            let fa = folded_array(&array)?;
            let windows = window.iter().map(|w| commands::window_shape(w)).collect::<Result<_, _>>()?;
            commands::pra_windows(&fa, &commands::WindowRequest { windows, star, two_row })
        }
        Command::Bounds(BoundsCommand::Table { csv }) => Ok(commands::bounds_table(csv)),
        Command::Bounds(BoundsCommand::Solve { family, csv }) => Ok(commands::bounds_solve(family, csv)),
        Command::Bounds(BoundsCommand::Eval { family, params }) => {
            let v: Vec<f64> = params
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad parameter list {params:?}"))))
                .collect::<Result<_, _>>()?;
            commands::bounds_eval(family, &v)
        }
        Command::Repro { target, out, golden, update } => {
            let golden = golden.unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden"));
            repro::run(&target, &out, &golden, update)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json output"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
