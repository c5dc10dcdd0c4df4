use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use contact_curvature::commands::{self, exit_code, Format, Outcome, TensorKind, EXIT_USAGE};
use contact_curvature::verify::Suite;

#[derive(Parser)]
#[command(version, about = "Curvature checks for metric contact pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog manifolds.
    List {
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run the definition checks and curvature identities.
    Check {
        manifold: String,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Print a curvature tensor at a point.
    Tensor {
        manifold: String,
        #[arg(long, default_value = "riemann")]
        what: TensorKind,
        /// `default` or comma-separated coordinates.
        #[arg(long, default_value = "default")]
        at: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        manifold: String,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Write a catalog manifold as a definition file.
    Export { manifold: String, path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::List { format, filter } => Ok(commands::list(format, filter.as_deref())),
        Cmd::Check {
            manifold,
            tolerance,
            points,
            format,
        } => commands::check(&manifold, tolerance, points, format),
        Cmd::Tensor {
            manifold,
            what,
            at,
            format,
        } => commands::tensor(&manifold, what, &at, format),
        Cmd::Verify {
            manifold,
            suite,
            tolerance,
            points,
            format,
        } => commands::verify(&manifold, suite, tolerance, points, format),
        Cmd::Export { manifold, path } => commands::export(&manifold, &path),
    };
    match result {
        Ok(Outcome { output, code }) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(output.as_bytes());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e).clamp(0, EXIT_USAGE) as u8)
        }
    }
}
