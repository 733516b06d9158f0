//! Command line front end for the workbench.
//!
//! Every verb prints a single JSON envelope on stdout (or a readable text
//! rendering with `--pretty`) and exits 0 when the requested check is
//! verified, 1 when it is refuted, 2 when it is unknown within the given
//! bounds, and 3 on malformed input.

mod emit;
mod run;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact checks for finitely presented monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Bounds and output options shared by every verb.
#[derive(Clone, Args)]
pub struct Opts {
    /// Enumeration and coverage length for words of the presentation
    #[arg(long = "check-len", default_value_t = 6)]
    pub check_len: usize,
    /// Search radius of the absorption sweep
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    /// Half-width of the coordinate box the sweep draws witnesses from
    #[arg(long = "box", default_value_t = 2)]
    pub box_bound: i64,
    /// Completion stops after this many rewrite rules
    #[arg(long = "max-rules", default_value_t = 2000)]
    pub max_rules: usize,
    /// Completion drops rules longer than this
    #[arg(long = "max-rule-len", default_value_t = 12)]
    pub max_rule_len: usize,
    /// Render a text report instead of the JSON envelope
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Rewrite a word of a bundled presentation to its normal form
    Normalize {
        input: String,
        /// The word, as space-separated generator names (`1` for the empty word)
        word: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Complete a bundled presentation into a confluent rewriting system
    Complete {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Count normal forms of each length up to the check length
    Enumerate {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Queries against an affine monoid (a bundle's base or an affine file)
    Affine {
        #[command(subcommand)]
        cmd: AffineCmd,
    },
    /// Decision procedures on the group extension of a bundle
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Extraction and prime structure of the crossed decomposition
    Crossed {
        #[command(subcommand)]
        cmd: CrossedCmd,
    },
    /// Combined reports
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
    /// Re-run a bundle's pipeline and compare against its recorded facts
    Replay {
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
pub enum AffineCmd {
    /// Decide membership of a lattice vector, with certificate
    Member {
        input: String,
        /// Comma- or space-separated integer coordinates
        vector: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// List the minimal primes above the augmentation-free part
    MinimalPrimes {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Test whether the monoid equals its normalization
    CheckNormal {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the face poset of primes with heights
    Spectrum {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Is every periodic element with finitely many conjugates trivial?
    DeltaPlus {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Does the group avoid the obstructing dihedral subgroups?
    DihedralFree {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check the extension data for internal consistency
    Validate {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
pub enum CrossedCmd {
    /// Extract the crossed decomposition and run its consistency checks
    Validate {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Orbits of the quotient action on the base's minimal primes
    Orbits {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Minimal primes of the whole monoid with trace generators
    MinimalPrimes {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Bounded absorption sweep for maximality
    Maximality {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Verify a bundled monomial matrix representation
    RepVerify {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Subcommand)]
pub enum ReportCmd {
    /// Run every criterion and combine the verdicts
    #[command(name = "theorem33")]
    Theorem33 {
        input: String,
        #[command(flatten)]
        opts: Opts,
    },
}

fn main() {
    if let Ok(threads) = std::env::var("WORKBENCH_THREADS") {
        if let Ok(n) = threads.trim().parse::<usize>() {
            workbench_core::par::limit_threads(n);
        }
    }

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let started = std::time::Instant::now();
    match run::dispatch(cli) {
        Ok(outcome) => {
            let code = outcome.status.exit_code();
            emit::print(outcome, started.elapsed());
            std::process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(3);
        }
    }
}
