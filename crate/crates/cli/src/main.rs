mod commands;
mod outcome;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use outcome::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "liexp",
    version,
    about = "Exact Lie algebra expansions, contractions and identities"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized sampling; always printed.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Accept definition files whose brackets violate Jacobi.
    #[arg(long, global = true)]
    pub allow_non_lie: bool,
    /// Directory to also write the report into.
    #[arg(long, env = "LIEXP_OUT_DIR", global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print progress to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity on every basis triple.
    CheckJacobi { algebra: String },
    /// Lie bracket of two generators, or commutator of two expressions.
    Bracket {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// PBW normal form of an expression in the enveloping algebra.
    NormalForm {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Centrality of the named Casimirs, or of the given expressions.
    CasimirCheck {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Checks `lhs = rhs` after normal ordering.
    Identity {
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Runs an expansion driver: poincare, euclid4, newton_hooke or negative-nh.
    Expand {
        target: String,
        /// Newton–Hooke with kappa = +1 and a formal a1.
        #[arg(long)]
        kappa_positive: bool,
        /// Witness override `name=value` with an exact rational value.
        #[arg(long = "witness", value_parser = commands::parse_witness)]
        witness: Vec<(String, liexp::coeffring::Rational)>,
    },
    /// Curvature and Inönü–Wigner contractions compared against a catalog algebra.
    Contract {
        algebra: String,
        /// Contract by sending this parameter to zero.
        #[arg(long)]
        param: Option<String>,
        /// Inönü–Wigner contraction along `worldline` or `spacetime`.
        #[arg(long)]
        split: Option<String>,
        /// Catalog algebra to compare with.
        #[arg(long, default_value = "galilei")]
        against: String,
        /// Parameter values applied before an Inönü–Wigner contraction.
        #[arg(long = "witness", value_parser = commands::parse_witness)]
        witness: Vec<(String, liexp::coeffring::Rational)>,
    },
    /// Galilei identity corpus, Casimir centrality and randomized enveloping-algebra checks.
    Corpus {
        /// Random samples per algebra for associativity and Jacobi.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Everything: structure, corpus, all drivers and contractions.
    Report {
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Definition file text of an algebra.
    Emit { algebra: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => finish(&cli, outcome),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn finish(cli: &Cli, outcome: Outcome) -> ExitCode {
    let rendered = match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json value") + "\n",
    };
    print!("{rendered}");
    if let Some(dir) = &cli.out {
        let ext = match cli.format {
            Format::Text => "txt",
            Format::Json => "json",
        };
        let file = if outcome.name.contains('.') {
            outcome.name.clone()
        } else {
            format!("{}.{ext}", outcome.name)
        };
        let path = dir.join(file);
        if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &rendered)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
        if cli.verbose > 0 {
            eprintln!("wrote {}", path.display());
        }
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("failed: {f}");
            ExitCode::FAILURE
        }
    }
}
