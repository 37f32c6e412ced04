//! `rado`: partition regularity toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rado_core::Error;

#[derive(Debug, Parser)]
#[command(name = "rado", version, about = "Partition regularity of linear equations")]
struct Cli {
    /// Print a JSON result object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Include wall-clock timings (JSON output is then no longer byte-stable).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equations: regularity, canonical form, solutions, builtin families
    #[command(subcommand)]
    Eq(EqCommand),
    /// Search over colorings of [1, N]
    #[command(subcommand)]
    Search(SearchCommand),
    /// Explicit monochromatic solutions
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Inspect and check colorings
    #[command(subcommand)]
    Coloring(ColoringCommand),
    /// Monochromatic structures in a coloring
    #[command(subcommand)]
    Find(FindCommand),
}

/// Coefficients `1,2,-4` (rationals `1/2` allowed) or `x + 2y = 4z`.
#[derive(Debug, Args)]
struct EquationArg {
    #[arg(value_name = "EQUATION", allow_hyphen_values = true)]
    equation: String,
}

#[derive(Debug, Args)]
struct ColoringArgs {
    /// const | mod:m | nu2:m | file:path
    #[arg(long, short = 'c')]
    coloring: String,
    /// Domain bound; families default to 65536, files to their own length.
    #[arg(short = 'N', long = "domain")]
    domain: Option<u64>,
    /// Palette size for family colorings (defaults to the family's minimum).
    #[arg(long)]
    colors: Option<u32>,
}

/// Same as [`ColoringArgs`] with the coloring itself optional.
#[derive(Debug, Args)]
struct OptColoringArgs {
    /// const | mod:m | nu2:m | file:path
    #[arg(long, short = 'c')]
    coloring: Option<String>,
    #[arg(short = 'N', long = "domain", requires = "coloring")]
    domain: Option<u64>,
    #[arg(long, requires = "coloring")]
    colors: Option<u32>,
}

impl OptColoringArgs {
    fn get(&self) -> Option<ColoringArgs> {
        self.coloring.as_ref().map(|c| ColoringArgs {
            coloring: c.clone(),
            domain: self.domain,
            colors: self.colors,
        })
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Node budget (color attempts) for the whole command.
    #[arg(long, default_value_t = rado_core::search::DEFAULT_MAX_NODES)]
    budget: u64,
    /// Worker threads; 1 is the deterministic sequential search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Only count solutions with pairwise distinct values.
    #[arg(long)]
    distinct: bool,
}

#[derive(Debug, Args)]
struct FanArgs {
    /// Largest step d tried.
    #[arg(long, default_value_t = 256)]
    max_step: u64,
    /// Largest scale (b or k) tried.
    #[arg(long)]
    max_scale: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum EqCommand {
    /// Decide regularity by the subset-sum criterion
    Check(EquationArg),
    /// Canonical integer form
    Canon(EquationArg),
    /// Solutions in [1, N]^n in lexicographic order
    Solve {
        #[command(flatten)]
        eq: EquationArg,
        #[arg(short = 'N', long = "max-value")]
        max_value: u64,
        /// Only solutions whose largest coordinate is this value.
        #[arg(long)]
        max_element: Option<u64>,
        /// Stop after this many solutions.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// x1 + 2 x2 + ... + 2^(n-2) x_{n-1} - 2^(n-1) x_n = 0
    Family {
        #[arg(short = 'n')]
        n: u32,
    },
    /// The rational-coefficient family with x_{i+1} = x, others 2^i x
    At {
        #[arg(short = 'n')]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
enum SearchCommand {
    /// Find an r-coloring of [1, N] with no monochromatic solution, or prove none exists
    Avoid {
        #[command(flatten)]
        eq: EquationArg,
        #[arg(short = 'r')]
        r: u32,
        #[arg(short = 'N')]
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
        /// Resume from an avoiding coloring in the coloring file format.
        #[arg(long)]
        seed_witness: Option<PathBuf>,
        /// Write a witness coloring to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest N where every r-coloring of [1, N] has a monochromatic solution
    Rado {
        #[command(flatten)]
        eq: EquationArg,
        #[arg(short = 'r')]
        r: u32,
        #[arg(long, default_value_t = 200)]
        max_n: u64,
        #[command(flatten)]
        search: SearchArgs,
        /// Start from an avoiding coloring in the coloring file format.
        #[arg(long)]
        seed_witness: Option<PathBuf>,
        /// Write the last witness coloring to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rado numbers for r = 1..r-max and the resulting degree-of-regularity bounds
    Dor {
        #[command(flatten)]
        eq: EquationArg,
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        /// Rows whose avoiding coloring survives to this N count as evidence.
        #[arg(long, default_value_t = 60)]
        evidence_bound: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Debug, Subcommand)]
enum ConstructCommand {
    /// Power-of-two family: from a coloring, or directly from (j, b, d)
    Theorem1 {
        #[arg(short = 'n')]
        n: u32,
        #[command(flatten)]
        coloring: OptColoringArgs,
        #[arg(long, requires_all = ["b", "d"], conflicts_with = "coloring")]
        j: Option<u32>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[command(flatten)]
        fan: FanArgs,
    },
    /// Rational family: from a coloring, or directly from (i, x)
    At {
        #[arg(short = 'n')]
        n: u32,
        #[command(flatten)]
        coloring: OptColoringArgs,
        #[arg(long, requires = "x", conflicts_with = "coloring")]
        i: Option<u32>,
        #[arg(long)]
        x: Option<u64>,
    },
    /// Append terms with rational coefficients to a solved equation
    Extend {
        #[command(flatten)]
        eq: EquationArg,
        /// Solution of the original equation, comma-separated.
        #[arg(long)]
        base: String,
        /// Appended coefficients, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        extra: String,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Solution with at most one coefficient sign flipped
    Hyperplane {
        #[command(flatten)]
        eq: EquationArg,
        /// Pipeline mode: find the parameters in this coloring.
        #[command(flatten)]
        coloring: OptColoringArgs,
        /// First index of the pair (1-based).
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Second index of the pair (1-based).
        #[arg(long, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[command(flatten)]
        fan: FanArgs,
    },
}

#[derive(Debug, Subcommand)]
enum ColoringCommand {
    /// Look for a monochromatic solution with every value <= N
    Verify {
        #[command(flatten)]
        eq: EquationArg,
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write the coloring in the file format
    Expand {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Palette, domain and color class sizes
    Info {
        #[command(flatten)]
        coloring: ColoringArgs,
    },
}

#[derive(Debug, Subcommand)]
enum FindCommand {
    /// Two powers of two of one color among 1, 2, ..., 2^(n-1)
    Pigeonhole {
        #[arg(short = 'n')]
        n: u32,
        #[command(flatten)]
        coloring: ColoringArgs,
    },
    /// Monochromatic arithmetic progression, smallest by (step, center)
    Ap {
        #[command(flatten)]
        coloring: ColoringArgs,
        /// Number of terms (odd).
        #[arg(long)]
        length: u64,
        /// Search inside [1, bound]; defaults to the domain.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Monochromatic fan {b + l*d : b in B, |l| <= M} + {q*d}
    Fan {
        #[command(flatten)]
        coloring: ColoringArgs,
        /// pairs:n for (2^j b, b), or coeffs:EQUATION for (|a_i| k, |a_j| k)
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long, short = 'M')]
        radius: u64,
        #[arg(long, short = 'q')]
        multiplier: u64,
        #[command(flatten)]
        fan: FanArgs,
    },
    /// Fan by way of a progression in the product coloring
    Lemma {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long, allow_hyphen_values = true)]
        family: String,
        #[arg(long, short = 'M')]
        radius: u64,
        /// Multiplier bound R.
        #[arg(long = "multipliers", short = 'R')]
        multipliers: u64,
        /// Upper end of the progression search.
        #[arg(long)]
        ap_bound: Option<u64>,
    },
    /// Coloring by signatures (c(a), c(2a), ..., c(Ra))
    Product {
        #[command(flatten)]
        coloring: ColoringArgs,
        #[arg(long = "multipliers", short = 'R')]
        multipliers: u64,
        /// Write the product coloring to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What every command returns: a JSON payload and a text rendering.
pub struct Output {
    pub payload: serde_json::Value,
    pub text: String,
}

impl Output {
    pub fn new(payload: impl Serialize, text: impl Into<String>) -> anyhow::Result<Self> {
        Ok(Self {
            payload: serde_json::to_value(payload)?,
            text: text.into(),
        })
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    Error,
    BudgetExhausted,
}

#[derive(Serialize)]
struct Timing {
    wall_ms: f64,
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

fn dispatch(cli: &Cli) -> anyhow::Result<Output> {
    let timing = cli.timing;
    match &cli.command {
        Command::Eq(c) => commands::eq(c),
        Command::Search(c) => commands::search(c, timing),
        Command::Construct(c) => commands::construct(c),
        Command::Coloring(c) => commands::coloring(c),
        Command::Find(c) => commands::find(c),
    }
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for budget exhaustion, so usage errors exit 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let started = Instant::now();
    let result = dispatch(&cli);
    let timing = cli.timing.then(|| Timing {
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    });

    let (status, code, payload, text) = match result {
        Ok(out) => (Status::Ok, 0, out.payload, Some(out.text)),
        Err(err) => {
            let budget = match err.downcast_ref::<Error>() {
                Some(Error::BudgetExhausted(ex)) => Some(ex.clone()),
                _ => None,
            };
            let message = format!("{err:#}");
            match budget {
                Some(ex) => (
                    Status::BudgetExhausted,
                    2,
                    serde_json::json!({ "stage": ex.stage, "searched": ex.searched, "message": message }),
                    None,
                ),
                None => (Status::Error, 1, serde_json::json!({ "message": message }), None),
            }
        }
    };

    if cli.json {
        let result = CommandResult { status, payload, timing };
        match serde_json::to_string_pretty(&result) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    } else {
        match text {
            Some(text) => {
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
            }
            None => {
                let msg = payload["message"].as_str().unwrap_or_default();
                match status {
                    Status::BudgetExhausted => eprintln!("budget exhausted: {msg}"),
                    _ => eprintln!("error: {msg}"),
                }
            }
        }
        if let Some(t) = timing {
            eprintln!("wall time: {:.1} ms", t.wall_ms);
        }
    }
    ExitCode::from(code)
}
