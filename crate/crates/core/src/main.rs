use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use maxitive::cli::commands::{parse_subset_arg, DEFAULT_MAX_N};
use maxitive::cli::{parse_spec, run, run_gallery, CliError, Command, Options, Report, SpecDoc};

/// Maxitive measures, idempotent integrals and Radon-Nikodym densities on
/// finite spaces.
#[derive(Parser, Debug)]
#[command(name = "maxitive", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Input document (JSON).
    #[arg(long = "space-file", visible_alias = "space", global = true, value_name = "FILE")]
    space_file: Option<PathBuf>,

    /// Pseudo-multiplication: times, min, chain, or an inline JSON chain.
    #[arg(long, global = true)]
    op: Option<String>,

    /// Also write the report as JSON.
    #[arg(long = "json-out", global = true, value_name = "FILE")]
    json_out: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,

    /// Largest space accepted.
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    /// Exit with status 4 when the answer is negative.
    #[arg(long = "fail-on-negative", global = true)]
    fail_on_negative: bool,
}

#[derive(Args, Debug)]
struct TauArg {
    /// Dominating measure.
    #[arg(long)]
    tau: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the pseudo-multiplication axioms and classify its finite elements.
    ValidateOp,
    /// Evaluate the integral of a function against a measure.
    Integrate {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        function: String,
        /// Comma-separated atoms; the whole space when omitted.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Solve for a density of nu with respect to tau.
    Density {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        tau: String,
        /// Also report the finite-valued density.
        #[arg(long)]
        finitize: bool,
    },
    /// Diagnose the Radon-Nikodym property of tau.
    Diagnose(TauArg),
    /// Summarize the quotient lattice of tau.
    Quotient(TauArg),
    /// Localization and Nguyen measures of an ideal.
    IdealMeasures {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        ideal: String,
    },
    /// Disjoint variation of tau.
    Variation(TauArg),
    /// Run a self-checking scenario, or `all`.
    Gallery { name: String },
}

fn load(path: &PathBuf) -> Result<SpecDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text).map_err(|errs| {
        CliError::Invalid(errs.iter().map(|e| format!("\n  {e}")).collect::<String>())
    })
}

fn emit(reports: &[Report], json_out: Option<&PathBuf>) -> Result<(), CliError> {
    for r in reports {
        print!("{}", r.to_text());
    }
    if let Some(path) = json_out {
        let text = match reports {
            [one] => one.to_json(),
            many => serde_json::to_string_pretty(many).expect("reports serialize"),
        };
        std::fs::write(path, text).map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main_inner(cli: Cli) -> Result<u8, CliError> {
    if let Cmd::Gallery { name } = &cli.command {
        let reports = run_gallery(name, cli.seed)?;
        emit(&reports, cli.json_out.as_ref())?;
        let passed = reports.iter().all(Report::passed);
        for r in &reports {
            let scenario = r.args.get("scenario").map(String::as_str).unwrap_or("?");
            println!("{} {scenario}", if r.passed() { "PASS" } else { "FAIL" });
        }
        return Ok(if passed { 0 } else { 1 });
    }
    let doc = cli.space_file.as_ref().map(load).transpose()?;
    let command = match cli.command {
        Cmd::ValidateOp => Command::ValidateOp,
        Cmd::Integrate { measure, function, subset } => {
            Command::Integrate { measure, function, subset: subset.as_deref().map(parse_subset_arg) }
        }
        Cmd::Density { nu, tau, finitize } => Command::Density { nu, tau, finitize },
        Cmd::Diagnose(t) => Command::Diagnose { tau: t.tau },
        Cmd::Quotient(t) => Command::Quotient { tau: t.tau },
        Cmd::IdealMeasures { tau, ideal } => Command::IdealMeasures { tau, ideal },
        Cmd::Variation(t) => Command::Variation { tau: t.tau },
        Cmd::Gallery { .. } => unreachable!(),
    };
    let opts = Options { op: cli.op, max_n: cli.max_n, seed: cli.seed };
    let report = run(&command, doc.as_ref(), &opts)?;
    emit(std::slice::from_ref(&report), cli.json_out.as_ref())?;
    Ok(if report.negative && cli.fail_on_negative { 4 } else { 0 })
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
