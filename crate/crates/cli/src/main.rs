//! `arroids`: command-line access to arroids, their fans and tropical
//! homology, and plane curve arrangements.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use arroids::tropohom::Coefficients;
use arroids::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::Outcome;

#[derive(Parser)]
#[command(name = "arroids", version, about = "Arroids, tropical fans and plane curve arrangements")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, short, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coeffs {
    Rational,
    Integer,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the Bézout property (arroids, arrangements) or balancing (fans).
    Validate { input: PathBuf },
    /// Print the arroid fan.
    Fan { input: PathBuf },
    /// Borel–Moore homology, Poincaré duality and the manifold test.
    Homology {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Coeffs::Rational)]
        coefficients: Coeffs,
    },
    /// Tropical homology manifold test with per-ray balancing dimensions.
    Thm { input: PathBuf },
    /// Reduced star at a ray (a ray label or an element id).
    Star {
        input: PathBuf,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// Contraction at an element.
    Contract {
        input: PathBuf,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// Deletion of an element.
    Delete {
        input: PathBuf,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// Check the modification structure and dimension sequences at an element.
    ModifyCheck {
        input: PathBuf,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// Rays of the tropicalization of an arrangement.
    Tropicalize { input: PathBuf },
    /// Cluster analysis along one curve, or along every curve.
    Clusters {
        input: PathBuf,
        #[arg(long, short)]
        element: Option<String>,
    },
    /// Sufficient test for maximality of the complement.
    Maximality { input: PathBuf },
    /// Six lines through four points and `k` conics through the same points.
    GenInfFamily {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        /// Emit equations instead of incidence data.
        #[arg(long)]
        explicit: bool,
    },
}

/// Malformed input exits with 2; anything else the library rejects is a
/// failed check and exits with 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Json(_)
        | Error::InvalidInput(_)
        | Error::UnknownElement(_)
        | Error::UnknownCurve(_)
        | Error::UnknownRay(_)
        | Error::UnknownCone(_)
        | Error::DegeneratePoint(_)
        | Error::RankMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::SingularConic(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    use commands as c;
    let load = |p: &PathBuf| input::load(p);
    match &cli.verb {
        Verb::Validate { input } => c::validate(&load(input)?),
        Verb::Fan { input } => c::fan(&load(input)?),
        Verb::Homology { input, coefficients } => {
            let co = match coefficients {
                Coeffs::Rational => Coefficients::Rational,
                Coeffs::Integer => Coefficients::Integer,
            };
            c::homology(&load(input)?, co)
        }
        Verb::Thm { input } => c::thm(&load(input)?),
        Verb::Star { input, element } => c::star(&load(input)?, element.as_deref()),
        Verb::Contract { input, element } => c::contract(&load(input)?, element.as_deref(), false),
        Verb::Delete { input, element } => c::contract(&load(input)?, element.as_deref(), true),
        Verb::ModifyCheck { input, element } => c::modify_check(&load(input)?, element.as_deref()),
        Verb::Tropicalize { input } => c::tropicalize(&load(input)?),
        Verb::Clusters { input, element } => c::clusters(&load(input)?, element.as_deref()),
        Verb::Maximality { input } => c::maximality(&load(input)?),
        Verb::GenInfFamily { k, explicit } => c::gen_inf_family(*k, *explicit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.output {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.report).expect("reports serialize")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == 1 {
                let mut report = json!({"error": e.to_string()});
                if let Error::ValidationFailed(r) = &e {
                    report["validation"] = json!(r);
                }
                match cli.output {
                    Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                    Format::Text => println!("error: {e}"),
                }
            }
            eprintln!("arroids: {e}");
            ExitCode::from(code)
        }
    }
}
