use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reedylab_core::certificate::render_markdown;
use reedylab_core::cube::{cube_hom_count, cube_hom_count_by_enumeration, triangulate};
use reedylab_core::dot::{category_dot, crown_dot, semilattice_dot};
use reedylab_core::obstruction::{
    certify_no_reedy_factorization_of_u, certify_sieve_chain_nonstabilization, crown, enumerate_crown_maps,
};
use reedylab_core::reedy::{truncated_semilattice_category, CategoryJson};
use reedylab_core::semilattice::{cube, FiniteSemilattice, SemilatticeJson};
use reedylab_core::suites::{run_suite, SuiteConfig, SUITES};
use reedylab_core::{Budget, Certificate, Error};

#[derive(Parser)]
#[command(name = "reedylab", version, about = "Exhaustive certificates for finite semilattice Reedy machinery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered suites.
    List,
    /// Run every suite in order.
    All(SuiteArgs),
    /// Write a Hasse diagram in DOT format.
    ExportDot(DotArgs),
    #[command(subcommand)]
    Cube(CubeCommand),
    #[command(subcommand)]
    Obstruct(ObstructCommand),
    /// Run one suite by name, e.g. `reedylab obstruction-u`.
    #[command(external_subcommand)]
    Suite(Vec<String>),
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[arg(long)]
    max_size: Option<usize>,
    /// Cap on materialized free algebras and products.
    #[arg(long)]
    max_free_size: Option<usize>,
    #[arg(long, default_value_t = 3)]
    cube_dim: usize,
    /// Candidate budget for brute-force searches.
    #[arg(long, env = "REEDYLAB_BUDGET")]
    budget: Option<u128>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    corpus: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Parser)]
#[command(name = "reedylab")]
struct SuiteCli {
    suite: String,
    #[command(flatten)]
    args: SuiteArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct DotArgs {
    /// A semilattice or category in JSON form.
    #[arg(long, conflicts_with_all = ["crown", "cube", "truncation"])]
    input: Option<PathBuf>,
    #[arg(long)]
    crown: Option<usize>,
    #[arg(long)]
    cube: Option<usize>,
    /// The truncated category on semilattices of at most this size.
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CubeCommand {
    /// Count `Hom([1]^m, [1]^n)` by formula and by enumeration.
    Homcount { m: usize, n: usize },
    /// Truncated triangulation of `[1]^dim` as JSON.
    Triangulate {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
}

#[derive(Subcommand)]
enum ObstructCommand {
    U,
    Crown {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    SieveChain {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn budget_from(args: &SuiteArgs) -> Budget {
    let mut b = Budget::default();
    if let Some(c) = args.budget {
        b.max_candidates = c;
    }
    if let Some(s) = args.max_free_size {
        b.max_size = s;
    }
    b
}

fn config_for(suite: &str, args: &SuiteArgs) -> SuiteConfig {
    let mut c = SuiteConfig::new(suite);
    c.max_size = args.max_size;
    c.cube_dim = args.cube_dim;
    c.budget = budget_from(args);
    c.seed = args.seed;
    c.corpus = args.corpus;
    c.jobs = args.jobs;
    c
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn report(certs: &[Certificate], args: &SuiteArgs) -> Result<(), Failure> {
    let text = match args.format {
        Format::Markdown => render_markdown(certs),
        Format::Json if certs.len() == 1 => serde_json::to_string_pretty(&certs[0]).expect("certificates serialize"),
        Format::Json => serde_json::to_string_pretty(certs).expect("certificates serialize"),
    };
    emit(&text, args.out.as_ref())?;
    if certs.iter().any(|c| c.any_failed()) {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn certificate(cert: Certificate) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(&cert).expect("certificates serialize"));
    if cert.any_failed() {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn export_dot(args: &DotArgs) -> Result<(), Failure> {
    let budget = Budget::default();
    let text = if let Some(path) = &args.input {
        let raw = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if let Ok(s) = serde_json::from_str::<SemilatticeJson>(&raw) {
            let s = FiniteSemilattice::try_from(s)?;
            semilattice_dot(&s, "semilattice")
        } else if let Ok(c) = serde_json::from_str::<CategoryJson>(&raw) {
            category_dot(&c.rebuild(&budget)?, "category")
        } else {
            return Err(Failure::Usage("input is neither a semilattice nor a category".into()));
        }
    } else if let Some(n) = args.crown {
        crown_dot(&crown(n)?)
    } else if let Some(n) = args.cube {
        semilattice_dot(&cube(n), &format!("[1]^{n}"))
    } else if let Some(n) = args.truncation {
        let t = truncated_semilattice_category(n, &budget)?;
        category_dot(&t.cat, &format!("truncation {n}"))
    } else {
        return Err(Failure::Usage("one of --input, --crown, --cube, --truncation is required".into()));
    };
    emit(text.trim_end(), args.out.as_ref())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::List => {
            SUITES.iter().for_each(|s| println!("{s}"));
            Ok(())
        }
        Command::All(args) => {
            let certs = SUITES
                .iter()
                .map(|s| run_suite(&config_for(s, &args)))
                .collect::<Result<Vec<_>, _>>()?;
            report(&certs, &args)
        }
        Command::Suite(raw) => {
            let parsed = SuiteCli::try_parse_from(std::iter::once("reedylab".to_string()).chain(raw))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let cert = run_suite(&config_for(&parsed.suite, &parsed.args))?;
            report(&[cert], &parsed.args)
        }
        Command::ExportDot(args) => export_dot(&args),
        Command::Cube(CubeCommand::Homcount { m, n }) => {
            let enumerated = cube_hom_count_by_enumeration(m, n, &Budget::default())?;
            let value = serde_json::json!({
                "m": m,
                "n": n,
                "formula": cube_hom_count(m, n).to_string(),
                "enumeration": enumerated.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            Ok(())
        }
        Command::Cube(CubeCommand::Triangulate { dim, levels }) => {
            let t = triangulate(&cube(dim), levels, &Budget::default())?;
            println!("{}", serde_json::to_string_pretty(&t).expect("json"));
            Ok(())
        }
        Command::Obstruct(ObstructCommand::U) => certificate(certify_no_reedy_factorization_of_u()),
        Command::Obstruct(ObstructCommand::SieveChain { n }) => {
            certificate(certify_sieve_chain_nonstabilization(n, &Budget::default())?)
        }
        Command::Obstruct(ObstructCommand::Crown { m, n }) => {
            let maps = enumerate_crown_maps(m, n)?;
            let mut windings: BTreeMap<i64, usize> = BTreeMap::new();
            for f in &maps {
                *windings.entry(f.winding()).or_default() += 1;
            }
            let value = serde_json::json!({ "m": m, "n": n, "maps": maps.len(), "windings": windings });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
