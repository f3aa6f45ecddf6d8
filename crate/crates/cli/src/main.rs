//! `swhw`: command line access to the square-class, quadratic-form, profile and
//! symmetric-complex machinery.
//!
//! Exit status is 0 when every requested check holds, 1 when an identity fails, and 2 on
//! malformed input.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "swhw", version, about = "Stiefel-Whitney and Hasse-Witt workbench")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The symbol {a, b}.
    #[command(allow_negative_numbers = true)]
    Symbol {
        a: String,
        b: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Invariants of a quadratic space given by a Gram matrix.
    Hw {
        /// JSON array of rows; `-` reads standard input.
        #[arg(long)]
        gram: String,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Pivot strategy: first, last or smallest.
        #[arg(long, default_value = "smallest")]
        strategy: String,
    },
    /// sw1 and sw2 of a sum of characters and hyperbolic summands.
    #[command(allow_negative_numbers = true)]
    Sw {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chars: Vec<String>,
        /// Hyperbolic summand `det:k[:rank]`: determinant `det * chi_ell^k`.
        #[arg(long)]
        hyp: Vec<String>,
        #[arg(long, default_value_t = 2)]
        ell: u64,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Also twist by this quadratic character and compare with the closed formula.
        #[arg(long)]
        twist: Option<String>,
    },
    /// Serre's comparison of the trace form with the permutation representation.
    Serre {
        #[arg(long)]
        poly: String,
        /// Field factors such as `q2,q3,o3`.
        #[arg(long)]
        split: Option<String>,
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
    },
    /// Cohomological profiles.
    Profile {
        #[command(subcommand)]
        command: ProfileCommand,
    },
    /// Symmetric complexes.
    Symcx {
        #[command(subcommand)]
        command: SymcxCommand,
    },
    /// The residue of {a, b} over Q_p in H^1(F_p, Z/2).
    #[command(allow_negative_numbers = true)]
    Boundary {
        a: String,
        b: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ProfileCommand {
    /// Evaluate the conjecture on a JSON profile.
    Eval {
        #[arg(long)]
        file: String,
        /// plain, primed, graded or all.
        #[arg(long, default_value = "all")]
        form: String,
    },
    /// The profile of a smooth hypersurface of degree d in P^{n+1}.
    Hypersurface(HypersurfaceArgs),
    /// Congruence lemmas on a profile file, or on the built-in hypersurface sweep.
    Congruences {
        #[arg(long)]
        file: Option<String>,
    },
    /// The real-place identity on synthesized polarized real Hodge structures.
    RealSelftest {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct HypersurfaceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    ell: u64,
    #[arg(long, default_value = "Q")]
    field: String,
    /// congruences or crystalline; repeatable.
    #[arg(long)]
    check: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum SymcxCommand {
    /// Run the law suite over a range of seeds.
    Selftest {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// The total class w of a symmetric complex given as JSON.
    W {
        #[arg(long)]
        file: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Symbol { a, b, field } => commands::symbol(&a, &b, &field),
        Command::Hw { gram, field, strategy } => commands::hw(&gram, &field, &strategy),
        Command::Sw { chars, hyp, ell, field, twist } => commands::sw(&chars, &hyp, ell, &field, twist.as_deref()),
        Command::Serre { poly, split, max_degree } => commands::serre(&poly, split.as_deref(), max_degree),
        Command::Profile { command } => match command {
            ProfileCommand::Eval { file, form } => commands::profile_eval(&file, &form),
            ProfileCommand::Hypersurface(h) => commands::profile_hypersurface(h.n, h.d, h.ell, &h.field, &h.check),
            ProfileCommand::Congruences { file } => commands::profile_congruences(file.as_deref()),
            ProfileCommand::RealSelftest { count, seed } => commands::real_selftest(count, seed),
        },
        Command::Symcx { command } => match command {
            SymcxCommand::Selftest { seeds, max_dim, start } => commands::symcx_selftest(start, seeds, max_dim),
            SymcxCommand::W { file } => commands::symcx_w(&file),
        },
        Command::Boundary { a, b, p } => commands::boundary(&a, &b, p),
    };
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
