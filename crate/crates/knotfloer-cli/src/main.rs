use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use knotfloer::fixtures::Store;
use knotfloer::report::{self, KnotSpec, Report, ReportError};

#[derive(Parser)]
#[command(name = "knotfloer", about = "Legendrian invariants from surgery presentations and Heegaard diagrams")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classical invariants of a contact surgery presentation.
    Surgery { file: PathBuf },
    #[command(subcommand)]
    Hfk(Hfk),
    #[command(subcommand)]
    Diagram(Diagram),
    /// Compare two connected sums by classical and refined invariants.
    Distinguish {
        a: PathBuf,
        b: PathBuf,
        /// Fixture directory for presentations referenced by name.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    #[command(subcommand)]
    Fixtures(Fixtures),
}

#[derive(Subcommand)]
enum Hfk {
    /// Knot Floer homology of T2,m or of a complex file.
    Table {
        #[arg(long)]
        knot: String,
        /// Use the minus flavor.
        #[arg(long)]
        minus: bool,
    },
    /// Hat homology of a connected sum of torus knots.
    Sum {
        #[arg(long, num_args = 2.., required = true)]
        knots: Vec<String>,
        /// Restrict to one total Alexander grading.
        #[arg(long, allow_hyphen_values = true)]
        total: Option<i64>,
    },
}

#[derive(Subcommand)]
enum Diagram {
    /// Generators, gradings and intersection matrix.
    Analyze { file: PathBuf },
    /// Grading and nonvanishing of the marked generator.
    Invariant { file: PathBuf },
}

#[derive(Subcommand)]
enum Fixtures {
    /// Recompute every manifest expectation.
    Check {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, ReportError> {
    std::fs::read_to_string(path)
        .map_err(|e| ReportError::BadInput(format!("{}: {e}", path.display())))
}

/// Prefix parse errors with the file they came from.
fn located<T>(path: &Path, r: Result<T, ReportError>) -> Result<T, ReportError> {
    r.map_err(|e| match e {
        ReportError::BadInput(m) => ReportError::BadInput(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn store(dir: Option<PathBuf>) -> Store {
    dir.map_or(Store::Embedded, Store::Dir)
}

fn run(cmd: Cmd) -> Result<Report, ReportError> {
    match cmd {
        Cmd::Surgery { file } => located(&file, report::surgery(&read(&file)?)),
        Cmd::Hfk(Hfk::Table { knot, minus }) => match report::parse_knot(&knot)? {
            KnotSpec::Torus(m) => report::hfk_table(m, minus),
            KnotSpec::Path(p) => {
                let p = PathBuf::from(p);
                located(&p, report::hfk_complex(&read(&p)?))
            }
        },
        Cmd::Hfk(Hfk::Sum { knots, total }) => report::hfk_sum(&knots, total),
        Cmd::Diagram(Diagram::Analyze { file }) => {
            located(&file, report::diagram_analyze(&read(&file)?))
        }
        Cmd::Diagram(Diagram::Invariant { file }) => {
            located(&file, report::diagram_invariant(&read(&file)?))
        }
        Cmd::Distinguish { a, b, dir } => {
            let (ta, tb) = (read(&a)?, read(&b)?);
            report::distinguish(&ta, &tb, &store(dir))
        }
        Cmd::Fixtures(Fixtures::Check { dir }) => report::fixtures_check(&store(dir)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(r) => {
            let _ = writeln!(std::io::stdout(), "{}", r.render(cli.json).trim_end());
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(std::io::stdout(), "{}", serde_json::json!({"error": e.to_string(), "exit": e.exit_code()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
