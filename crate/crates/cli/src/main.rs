use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cms_cli::commands::{self, ConstructArgs, ConstructMethod, Family, Outcome, Suite, DEFAULT_BUDGET};
use cms_cli::format::{parse_edge_list, write_edge_list, write_ordering};
use cms_cli::{read_file, write_file, CliError};
use cms_core::Graph;
use num_rational::Ratio;

/// Cyclic matching sequenceability: build, search and check edge orderings.
#[derive(Parser)]
#[command(name = "cms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an edge list for a graph family.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(short, long, global = true)]
        out: Option<String>,
    },
    /// Exact cms by search.
    Exact {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build an ordering with a lower-bound certificate.
    Construct {
        graph: String,
        #[arg(long, value_enum)]
        method: ConstructMethod,
        /// Sampling probability as a fraction, e.g. 1/7.
        #[arg(long)]
        alpha: Option<Ratio<u64>>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        retries: Option<usize>,
        /// Also write the ordering file here.
        #[arg(long)]
        ordering_out: Option<String>,
    },
    /// Measure an ordering and check it against a claim.
    Verify {
        graph: String,
        ordering: String,
        #[arg(long)]
        claim: Option<usize>,
        /// A `construct` report whose claim should hold.
        #[arg(long)]
        report: Option<String>,
    },
    /// Upper and lower bounds that are cheap to compute.
    Bounds { graph: String },
    /// Print a benchmark table.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    Cycle { n: usize },
    Complete { n: usize },
    /// Disjoint union of cycles with the given lengths.
    TwoRegular {
        #[arg(required = true)]
        lengths: Vec<usize>,
    },
    Bk { k: usize },
    BkPrime { k: usize },
    Petersen,
    Prism { n: usize },
    RandomRegular {
        n: usize,
        k: usize,
        #[arg(long)]
        seed: u64,
    },
    /// k-regular graph containing B_k; a circulant filler without --seed.
    BkRegular {
        n: usize,
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl GenFamily {
    fn family(self) -> Family {
        match self {
            GenFamily::Cycle { n } => Family::Cycle(n),
            GenFamily::Complete { n } => Family::Complete(n),
            GenFamily::TwoRegular { lengths } => Family::TwoRegular(lengths),
            GenFamily::Bk { k } => Family::Bk(k),
            GenFamily::BkPrime { k } => Family::BkPrime(k),
            GenFamily::Petersen => Family::Petersen,
            GenFamily::Prism { n } => Family::Prism(n),
            GenFamily::RandomRegular { n, k, seed } => Family::RandomRegular { n, k, seed },
            GenFamily::BkRegular { n, k, seed } => Family::BkRegular { n, k, seed },
        }
    }
}

fn load(path: &str) -> Result<Graph, CliError> {
    parse_edge_list(&read_file(path)?)
}

fn emit(out: Outcome) -> i32 {
    print!("{}", out.report.to_json());
    out.code
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Gen { family, out } => {
            let text = write_edge_list(&commands::generate(&family.family())?);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Exact { graph, budget } => Ok(emit(commands::exact(&load(&graph)?, budget)?)),
        Command::Construct {
            graph,
            method,
            alpha,
            seed,
            x,
            retries,
            ordering_out,
        } => {
            let g = load(&graph)?;
            let args = ConstructArgs {
                method,
                alpha,
                seed,
                x,
                retries,
            };
            let (out, cert) = commands::construct(&g, &args)?;
            if let Some(path) = ordering_out {
                write_file(&path, &write_ordering(&g, &cert.ordering))?;
            }
            Ok(emit(out))
        }
        Command::Verify {
            graph,
            ordering,
            claim,
            report,
        } => {
            let g = load(&graph)?;
            let from_report = report
                .map(|path| read_file(&path).and_then(|t| commands::claim_from_report(&t)))
                .transpose()?;
            Ok(emit(commands::verify(&g, &read_file(&ordering)?, claim, from_report.as_ref())?))
        }
        Command::Bounds { graph } => Ok(emit(commands::bounds(&load(&graph)?)?)),
        Command::Bench { suite } => {
            print!("{}", commands::bench(suite)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("cms: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
