//! `kellerlab`: JSON reports for polynomial map computations.
//!
//! Exit codes: 0 success, 1 usage or input errors, 2 failed preconditions
//! and other library errors, 3 theorem violations.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kellerlab::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kellerlab", version, about = "Exact computations with polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobian matrix and its determinant.
    Jacobian { map: PathBuf },
    /// Whether det jac F is a nonzero constant.
    Keller { map: PathBuf },
    /// Polynomial inverse within a degree bound.
    Invert {
        map: PathBuf,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Degree of the polynomial inverse.
    InverseDegree { map: PathBuf },
    /// Map file for x + (Ax)^{*d}.
    Druzkowski {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        deg: u32,
        /// `Q` or a prime `p`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Constant-kernel reduction and the d^r inverse degree bound.
    Reduce { map: PathBuf },
    /// Injectivity of F on the line through the origin and a point.
    LineCheck {
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Parameter on a line where jac F kills the direction.
    RankDrop {
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Defaults to 0,1,...,r.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Exhaustive search for collinear points with a common image.
    Collide {
        map: PathBuf,
        /// Number of collinear points sharing one image.
        #[arg(short = 'r')]
        r: usize,
        /// Overrides KELLERLAB_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generalized Vandermonde matrix (points[j]^degrees[i]) and its rank.
    Vandermonde {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        degrees: String,
        /// `Q` or a prime `p`.
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(e) => lib_exit_code(e),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Lib(e) => error_kind(e),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn lib_exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::BadVariable { .. } | Error::DivisorNotUnit(_) | Error::NotPrime(_) => 1,
        Error::TheoremViolation(_) => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "NotPrime",
        Error::FieldMismatch { .. } => "FieldMismatch",
        Error::ArityMismatch { .. } => "ArityMismatch",
        Error::BadIndex { .. } => "BadIndex",
        Error::NonSquare { .. } => "NonSquare",
        Error::DependentInput => "DependentInput",
        Error::Syntax { .. } => "Syntax",
        Error::BadVariable { .. } => "BadVariable",
        Error::DivisorNotUnit(_) => "DivisorNotUnit",
        Error::NotHomogeneous(_) => "NotHomogeneous",
        Error::SingularLinearPart => "SingularLinearPart",
        Error::NotNormalized => "NotNormalized",
        Error::NotInvertibleUpToBound { .. } => "NotInvertibleUpToBound",
        Error::NotStrictlyLowerTriangular => "NotStrictlyLowerTriangular",
        Error::DependenceViolation { .. } => "DependenceViolation",
        Error::BadSubInverse(_) => "BadSubInverse",
        Error::InconsistentReduction => "InconsistentReduction",
        Error::ZeroDirection => "ZeroDirection",
        Error::PreconditionFailed(_) => "PreconditionFailed",
        Error::TheoremViolation(_) => "TheoremViolation",
        Error::BudgetExceeded { .. } => "BudgetExceeded",
    }
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Jacobian { map } => commands::on_map("jacobian", &map, &[], commands::jacobian),
        Command::Keller { map } => commands::on_map("keller", &map, &[], commands::keller),
        Command::Invert { map, max_deg } => {
            let flag = max_deg.map(|d| format!("--max-deg={d}"));
            commands::on_map("invert", &map, flag.as_slice(), |m| commands::invert(m, max_deg))
        }
        Command::InverseDegree { map } => commands::on_map("inverse-degree", &map, &[], commands::inverse_degree),
        Command::Druzkowski { matrix, deg, field } => commands::druzkowski(&matrix, deg, &field),
        Command::Reduce { map } => commands::on_map("reduce", &map, &[], commands::reduce),
        Command::LineCheck { map, point } => {
            let flags = [format!("--point={point}")];
            commands::on_map("line-check", &map, &flags, |m| commands::line_check(m, &point))
        }
        Command::RankDrop {
            map,
            dir,
            params,
            degrees,
        } => {
            let mut flags = vec![format!("--dir={dir}"), format!("--params={params}")];
            flags.extend(degrees.as_ref().map(|d| format!("--degrees={d}")));
            commands::on_map("rank-drop", &map, &flags, |m| {
                commands::rank_drop(m, &dir, &params, degrees.as_deref())
            })
        }
        Command::Collide { map, r, budget } => {
            let budget = commands::resolve_budget(budget)?;
            let flags = [format!("-r={r}"), format!("--budget={budget}")];
            commands::on_map("collide", &map, &flags, |m| commands::collide(m, r, budget))
        }
        Command::Vandermonde { points, degrees, field } => commands::vandermonde(&points, &degrees, &field),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    match run(cli) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable report")
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    let payload = json!({
        "error": {
            "code": e.exit_code(),
            "kind": e.kind(),
            "message": e.message(),
        }
    });
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&payload).expect("serializable error")
    );
    ExitCode::from(e.exit_code())
}
