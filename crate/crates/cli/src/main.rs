use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num_complex::Complex64;

use twovalued::classify::{self, witness_isomorphism};
use twovalued::constructions::{principal, product_with_boolean, special_series, unipotent};
use twovalued::formal::{associativity_sweep, AdditionLaw, LawParams};
use twovalued::group::verify_axioms;
use twovalued::{Error, TwoValuedGroup};
use twovalued_cli::enumerate::{self, enumerate_all, Scope};
use twovalued_cli::io::{read_group, render_group, write_group};

const BUDGET_VAR: &str = "TWOVALUED_SEARCH_BUDGET";

#[derive(Parser)]
#[command(
    name = "twovalued",
    version,
    about = "Finite involutive commutative two-valued groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from one of the three series and write it as JSON.
    #[command(group(ArgGroup::new("series").required(true).args(["principal", "unipotent", "special"])))]
    Construct {
        /// Divisor chain d1,d2,... of the abelian group.
        #[arg(long, value_delimiter = ',')]
        principal: Option<Vec<u64>>,
        #[arg(long)]
        unipotent: Option<usize>,
        #[arg(long)]
        special: Option<usize>,
        /// Multiply by the Boolean group of this rank.
        #[arg(long, default_value_t = 0)]
        times_c2: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the axioms; exits 1 and lists violations if any fail.
    Verify { file: PathBuf },
    /// Print the canonical label.
    Classify { file: PathBuf },
    /// Decide isomorphism; exits 1 when the groups are not isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Also search for an explicit isomorphism.
        #[arg(long)]
        witness: bool,
    },
    /// List all groups of order k up to isomorphism.
    Enumerate {
        k: usize,
        /// All commutative groups, involutive or not.
        #[arg(long, conflicts_with = "involutive_commutative")]
        all: bool,
        /// Involutive commutative groups only (the default).
        #[arg(long)]
        involutive_commutative: bool,
    },
    /// Sample associativity of the algebraic addition law.
    Elliptic {
        /// a1,a2,a3 as complex numbers, e.g. 0.5,1-2i,0.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        params: Vec<Complex64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn budget(default: u64) -> Result<u64, Error> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse {
            context: BUDGET_VAR.into(),
            message: format!("{v:?} is not a node count"),
        }),
        Err(_) => Ok(default),
    }
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Construct {
            principal: p,
            unipotent: u,
            special: s,
            times_c2,
            output,
        } => {
            let base = match (p, u, s) {
                (Some(chain), _, _) => principal(&chain)?,
                (_, Some(n), _) => unipotent(n)?,
                (_, _, Some(n)) => special_series(n)?,
                _ => unreachable!("clap enforces one series"),
            };
            let g = product_with_boolean(&base, times_c2);
            match output {
                Some(path) => write_group(path, &g)?,
                None => print!("{}", render_group(&g)),
            }
            Ok(true)
        }
        Command::Verify { file } => {
            let g = read_group(file)?;
            let report = verify_axioms(&g);
            println!("elements: {}", g.size());
            println!("two-valued group: {}", report.is_two_valued_group);
            println!("commutative: {}", report.is_commutative);
            println!("involutive: {}", report.is_involutive);
            for v in &report.violations {
                println!("violation: {}", v.display_with(&g));
            }
            Ok(report.is_two_valued_group)
        }
        Command::Classify { file } => {
            let g = read_group(file)?;
            println!("{}", classify::classify(&g)?);
            Ok(true)
        }
        Command::Iso { a, b, witness } => {
            let (x, z) = (read_group(a)?, read_group(b)?);
            if witness {
                let found = witness_isomorphism(&x, &z, budget(classify::DEFAULT_BUDGET)?)?;
                match found {
                    Some(f) => {
                        println!("isomorphic: true");
                        for (i, fi) in f.iter().enumerate() {
                            println!("{} -> {}", x.names()[i], z.name(*fi));
                        }
                        Ok(true)
                    }
                    None => {
                        println!("isomorphic: false");
                        Ok(false)
                    }
                }
            } else {
                let same = classify::are_isomorphic(&x, &z)?;
                println!("isomorphic: {same}");
                Ok(same)
            }
        }
        Command::Enumerate { k, all, .. } => {
            let scope = if all {
                Scope::Commutative
            } else {
                Scope::InvolutiveCommutative
            };
            let result = enumerate_all(k, scope, budget(enumerate::DEFAULT_BUDGET)?)?;
            println!("groups: {}", result.groups.len());
            for (i, g) in result.groups.iter().enumerate() {
                println!("{}: {}  {}", i + 1, label_of(g), enumerate::describe(g));
            }
            Ok(true)
        }
        Command::Elliptic {
            params,
            samples,
            tol,
            seed,
        } => {
            let [a1, a2, a3] = params[..] else {
                return Err(Error::Parse {
                    context: "--params".into(),
                    message: format!("expected 3 values, got {}", params.len()),
                });
            };
            let p = LawParams::new(a1, a2, a3);
            let (phi1, phi2) = AdditionLaw::new(p).canonical_operator_polys()?;
            println!("phi1(x) = {phi1}");
            println!("phi2(x) = {phi2}");
            let report = associativity_sweep(Some(p), samples, tol, seed);
            println!("passed: {}", report.passed);
            println!("failed: {}", report.failed);
            println!("degenerate: {}", report.degenerate);
            Ok(report.all_passed() && report.passed == samples)
        }
    }
}

fn label_of(g: &TwoValuedGroup) -> String {
    match classify::classify(g) {
        Ok(label) => label.to_string(),
        Err(Error::NotInvolutive) => "not involutive".into(),
        Err(e) => format!("unclassified ({e})"),
    }
}
