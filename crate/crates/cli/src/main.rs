//! `hjekr`: chain rings, Hjelmslev geometries and intersecting families
//! from the command line.
//!
//! Exit codes: 0 when every check passes, 2 when a computed value
//! disagrees with a formula or a family fails validation, 3 when a search
//! ran out of budget, 1 on invalid input. Set `HJEKR_THREADS` to bound the
//! worker threads.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use hjekr::registry::Params;
use hjekr::search::Budget;
use hjekr::RingSpec;

use report::Format;

#[derive(Parser)]
#[command(name = "hjekr", version, about = "Chain rings, projective Hjelmslev geometries and EKR-type families")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "tsv")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic data of a chain ring.
    Ring {
        #[arg(long)]
        ring: RingSpec,
    },
    /// Number of submodules of shape mu in a module of shape lambda.
    Count {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also enumerate and compare.
        #[arg(long)]
        verify: bool,
    },
    /// List submodules of shape mu.
    Enumerate {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Print at most this many submodules.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Point and subspace counts of PHG(n-1, R).
    Geometry {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        n: usize,
    },
    /// Check the embedding of the factor structure on [span(e_1..e_s)].
    FactorCheck {
        #[arg(long)]
        ring: RingSpec,
        #[arg(long)]
        n: usize,
        /// Rank of the base subspace; repeatable, all ranks by default.
        #[arg(long = "dim")]
        dims: Vec<usize>,
    },
    /// Build or validate families.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Evaluate a catalog bound, e.g. `bound hjelmslev-ekr q=2,m=2,n=4,k=2,t=1`.
    Bound {
        /// Bound id; lists the catalog when omitted.
        id: Option<String>,
        /// Parameters as `key=value` pairs separated by `,`.
        #[arg(default_value = "")]
        params: String,
    },
    /// Exact maximum family search.
    Search {
        /// Instance: pg-lines, phg-lines, phg-avoid, set-ekr, stripes,
        /// stripes-split or a registry id; `list` shows the registry.
        instance: String,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Forbid a common t-set (set-ekr).
        #[arg(long)]
        non_star: bool,
        /// Search node budget.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Append the result to this JSON-lines log.
        #[arg(long)]
        log: Option<PathBuf>,
        /// List the members of the best family found.
        #[arg(long)]
        witness: bool,
    },
    /// Reproduce the reference values at the smallest parameters.
    Report {
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Build a registered construction, validate it and compare its size.
    Build {
        /// Construction id; `list` shows the registry.
        construction: String,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Write the family file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a family file.
    Validate { file: PathBuf },
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long, default_value = "gr:p=2,r=1")]
    ring: RingSpec,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Ambient shape, `m^n` by default.
    #[arg(long)]
    lambda: Option<String>,
    /// Submodule shape, e.g. `2^2.1^1`; empty for the zero module.
    #[arg(long)]
    mu: String,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    ring: Option<RingSpec>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
}

impl ProblemArgs {
    fn params(&self) -> Params {
        let mut p = Params::new();
        if let Some(r) = &self.ring {
            p.set_ring(r.clone());
        }
        for (key, v) in [("q", self.q), ("n", self.n), ("k", self.k), ("t", self.t)] {
            if let Some(v) = v {
                p.set(key, v);
            }
        }
        p
    }
}

fn run(cli: Cli) -> Result<report::Report> {
    match cli.command {
        Command::Ring { ring } => commands::ring(&ring),
        Command::Count { shape, verify } => {
            commands::count(&shape.ring, shape.n, shape.lambda.as_deref(), &shape.mu, verify)
        }
        Command::Enumerate { shape, limit } => {
            commands::enumerate(&shape.ring, shape.n, shape.lambda.as_deref(), &shape.mu, limit)
        }
        Command::Geometry { ring, n } => commands::geometry(&ring, n),
        Command::FactorCheck { ring, n, dims } => commands::factor_check(&ring, n, &dims),
        Command::Family(FamilyCommand::Build { construction, .. }) if construction == "list" => {
            Ok(commands::constructions())
        }
        Command::Family(FamilyCommand::Build { construction, problem, out }) => {
            commands::family_build(&construction, &problem.params(), out.as_deref())
        }
        Command::Family(FamilyCommand::Validate { file }) => commands::family_validate(&file),
        Command::Bound { id, params } => commands::bound(id.as_deref(), &params.parse()?),
        Command::Search { instance, .. } if instance == "list" => Ok(commands::instances()),
        Command::Search { instance, problem, non_star, budget, log, witness } => {
            let mut params = problem.params();
            if non_star {
                params.set_flag("non-star");
            }
            commands::search(&instance, params, Budget::nodes(budget), log.as_deref(), witness)
        }
        Command::Report { budget } => commands::report(Budget::nodes(budget)),
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("HJEKR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
