use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistoid::registry::{preset_spec, PRESET_NAMES};
use twistoid_cli::commands::{self, Ctx, InputError, Side};
use twistoid_cli::{exit_code, resolve_problem, Report};

#[derive(Parser)]
#[command(name = "twistoid", version, about = "Order-by-order verification of twisted smash products and bialgebroids")]
struct Cli {
    /// Truncation order N (defaults to the problem's recommended order).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Sample degree d (defaults to the problem's recommended degree).
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Built-in problem to load.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// JSON problem file (see docs/config.schema.json).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write the JSON report to this path (`-` for stdout instead of the table).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Stop after the first failing section.
    #[arg(long, global = true)]
    fail_fast: bool,
    /// Record wall times in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cocycle, normalization, R-matrix and classical r-matrix checks.
    CheckTwist,
    /// Star-commutator table of the coordinates and braided commutativity.
    StarTable,
    /// Associativity of both smash products and the isomorphism φ.
    SmashVerify {
        /// Replace φ by a deliberately wrong map (negative control).
        #[arg(long)]
        corrupt_phi: bool,
    },
    /// Bialgebroid axioms and shifted R-matrix report for one construction.
    AlgebroidVerify {
        /// undeformed, bm-twisted or xu-twisted.
        #[arg(long, default_value = "bm-twisted")]
        side: String,
    },
    /// End-to-end comparison of the two twisted bialgebroids.
    Theorem,
    /// Commutator of two expressions in the smash product.
    Commutator {
        lhs: String,
        rhs: String,
        /// Use the undeformed product A⋊H.
        #[arg(long)]
        undeformed: bool,
    },
    /// Runs the suites listed under `checks` in the problem file.
    Run,
    /// Built-in presets.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// Names, recommended N and d, and descriptions.
    List,
    /// Prints a preset in the config file format.
    Export { name: String },
    /// Jacobi, representation and cocycle checks (all presets if none named).
    Validate { names: Vec<String> },
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    let ctx = || -> Result<Ctx, InputError> {
        let spec = resolve_problem(cli.preset.as_deref(), cli.config.as_deref())?;
        let mut ctx = Ctx::new(&spec, cli.order, cli.degree)?;
        ctx.fail_fast = cli.fail_fast;
        ctx.timings = cli.timings;
        Ok(ctx)
    };
    Ok(match &cli.command {
        Command::CheckTwist => commands::check_twist(&ctx()?),
        Command::StarTable => commands::star_table(&ctx()?),
        Command::SmashVerify { corrupt_phi } => commands::smash_verify(&ctx()?, *corrupt_phi),
        Command::AlgebroidVerify { side } => {
            let side = Side::parse(side)
                .ok_or_else(|| InputError(format!("unknown side `{side}`; expected undeformed, bm-twisted or xu-twisted")))?;
            commands::algebroid_verify(&ctx()?, side)
        }
        Command::Theorem => commands::theorem(&ctx()?),
        Command::Commutator { lhs, rhs, undeformed } => commands::commutator(&ctx()?, lhs, rhs, *undeformed)?,
        Command::Run => commands::run_listed(&ctx()?)?,
        Command::Presets { action } => match action {
            PresetAction::List => commands::presets_list(),
            PresetAction::Export { name } => {
                let spec = preset_spec(name)?;
                let text = serde_json::to_string_pretty(&spec).expect("preset serializes");
                emit(&format!("{text}\n"));
                std::process::exit(0);
            }
            PresetAction::Validate { names } => {
                let names: Vec<String> =
                    if names.is_empty() { PRESET_NAMES.iter().map(|s| s.to_string()).collect() } else { names.clone() };
                commands::presets_validate(&names, cli.order)?
            }
        },
    })
}

// a closed pipe (`twistoid ... | head`) is not an error worth a panic
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.json.as_deref() {
                Some(p) if p.as_os_str() == "-" => emit(&report.to_json()),
                Some(p) => {
                    emit(&report.to_table());
                    if let Err(e) = std::fs::write(p, report.to_json()) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => emit(&report.to_table()),
            }
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
