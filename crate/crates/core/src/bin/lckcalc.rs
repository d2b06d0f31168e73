use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lck_core::jet::DEFAULT_SEED;
use lck_core::report::{catalog_listing, run, Format, ModelSource, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "lckcalc", version, about = "Exact Hermitian, LCK and Vaisman operator calculus")]
struct Cli {
    /// Print the statement and every compared quantity for each theorem
    #[arg(long, global = true)]
    explain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in models
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Betti, Hodge, box-harmonic and transversal dimensions
    Table {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// The twenty commutator identities, as matrices and optionally on a jet chart
    Identities {
        #[arg(long)]
        model: String,
        /// Built-in chart name (flat, conformally-flat, hopf) or chart file
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Theorem verdicts
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run a whole suite
    Check {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Tables,
    Theorems,
    All,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
        }
    }
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::All => Suite::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            print!("{}", catalog_listing());
            return ExitCode::SUCCESS;
        }
        Command::Table { model, format } => {
            let mut c = RunConfig::new(ModelSource::parse(&model), Suite::Tables);
            c.format = format.into();
            c
        }
        Command::Identities { model, chart, seed } => {
            let mut c = RunConfig::new(ModelSource::parse(&model), Suite::Identities);
            c.chart = chart;
            c.seed = seed;
            c
        }
        Command::Verify { model, theorems, format } => {
            let mut c = RunConfig::new(ModelSource::parse(&model), Suite::Theorems);
            c.theorems = theorems;
            c.format = format.into();
            c
        }
        Command::Check { model, suite, chart, seed, format } => {
            let mut c = RunConfig::new(ModelSource::parse(&model), suite.into());
            c.chart = chart;
            c.seed = seed;
            c.format = format.into();
            c
        }
    };
    let config = RunConfig { explain: cli.explain, ..config };
    let outcome = run(&config);
    if outcome.status == lck_core::report::EXIT_INPUT {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.status as u8)
}
