mod commands;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use affine_cocenter::strata::TreeStrategy;
use affine_cocenter::{Budget, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{chartable, int_list, Rendered, Session};

#[derive(Parser)]
#[command(name = "cocenter", version, about = "Affine Weyl groups, cocenters and strata dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    out: OutputArgs,

    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Print JSON instead of the text summary
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT graph to FILE
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Write a CSV table to FILE
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, global = true, default_value_t = 14)]
    length_bound: u32,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    memo_entries: usize,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    frontier: usize,
}

#[derive(Args)]
struct GroupArgs {
    /// Preset name (GL3, SL4, PGL3, Sp4, ...) or a TOML spec file
    #[arg(long)]
    group: String,
    /// Twist: `id`, or a comma-separated list of `flip` and `tau[^k]`
    #[arg(long)]
    twist: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Compact,
    First,
}

#[derive(Subcommand)]
enum Command {
    /// Root datum, generators, Omega and twist
    Describe {
        #[command(flatten)]
        g: GroupArgs,
    },
    /// Length, reduced word and Newton/Kottwitz invariants
    Length {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        w: String,
    },
    /// Reduction tree for I w I meeting [b], or the path to a minimal element
    Reduce {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "identity")]
        b: String,
        #[arg(long, value_enum, default_value = "compact")]
        strategy: Strategy,
        /// Print the conjugation path to a minimal-length element instead
        #[arg(long)]
        trace: bool,
    },
    /// Class polynomials of T_w in the cocenter
    Classpoly {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        w: String,
    },
    /// Dimension of I w I (or K w K) meeting [b]
    Dim {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        w: String,
        /// `identity` or an element whose class is used
        #[arg(long)]
        b: String,
        /// Generator indices of a parahoric K, e.g. `1,2`
        #[arg(long, default_value = "")]
        k: String,
    },
    /// Admissible set Adm(mu) and its parahoric versions
    Adm {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "")]
        k: String,
    },
    /// The set B(G, mu)
    Bgmu {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Character table of a finite Hecke algebra (A2 or C2)
    Chartable {
        #[arg(long)]
        group: String,
        /// Parameter names for C2, e.g. `q0,q1`
        #[arg(long)]
        params: Option<String>,
        /// Trace kernel at q = -1 (`-1`) or at a primitive cube root of unity (`phi3`)
        #[arg(long, allow_hyphen_values = true)]
        kernel: Option<String>,
    },
    /// Closure posets: bruhat, ksigma, straight or newton
    Poset {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long, default_value = "ksigma")]
        kind: String,
        #[arg(long, default_value = "")]
        k: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Standard quadruple of the class of w
    Quadruple {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        w: String,
        /// Compare with the class of this element
        #[arg(long)]
        with: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Rendered, Error> {
    let budget = Budget {
        length_bound: cli.budget.length_bound,
        memo_entries: cli.budget.memo_entries,
        frontier: cli.budget.frontier,
    };
    let open = |g: &GroupArgs| Session::open(&g.group, g.twist.as_deref(), budget);
    match &cli.command {
        Command::Describe { g } => open(g)?.describe(),
        Command::Length { g, w } => open(g)?.length(w),
        Command::Reduce { g, w, b, strategy, trace } => {
            let s = match strategy {
                Strategy::Compact => TreeStrategy::Compact,
                Strategy::First => TreeStrategy::FirstDescent,
            };
            open(g)?.reduce(w, b, s, *trace)
        }
        Command::Classpoly { g, w } => open(g)?.classpoly(w),
        Command::Dim { g, w, b, k } => open(g)?.dim(w, b, &int_list(k, "K")?),
        Command::Adm { g, mu, k } => open(g)?.adm(&int_list(mu, "mu")?, &int_list(k, "K")?),
        Command::Bgmu { g, mu } => open(g)?.bgmu(&int_list(mu, "mu")?),
        Command::Chartable { group, params, kernel } => {
            let p: Option<Vec<String>> = params.as_ref().map(|p| p.split(',').map(|s| s.trim().to_string()).collect());
            chartable(group, p.as_deref(), kernel.as_deref())
        }
        Command::Poset { g, kind, k, max_len, mu } => {
            let mu = mu.as_deref().map(|m| int_list::<i64>(m, "mu")).transpose()?;
            open(g)?.poset(kind, &int_list(k, "K")?, *max_len, mu.as_deref())
        }
        Command::Quadruple { g, w, with } => open(g)?.quadruple(w, with.as_deref()),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Domain(_) => 3,
        Error::Resource(_) => 4,
        Error::Internal(_) => 1,
    }
}

fn write_file(path: &PathBuf, body: Option<&String>, what: &str) -> Result<(), String> {
    let body = body.ok_or_else(|| format!("this command has no {what} output"))?;
    std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Some(p) = &cli.out.dot {
        if let Err(m) = write_file(p, out.dot.as_ref(), "DOT") {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    }
    if let Some(p) = &cli.out.csv {
        if let Err(m) = write_file(p, out.csv.as_ref(), "CSV") {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    }
    let body = if cli.out.json {
        serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n"
    } else {
        out.text
    };
    let _ = std::io::stdout().write_all(body.as_bytes());
    ExitCode::SUCCESS
}
