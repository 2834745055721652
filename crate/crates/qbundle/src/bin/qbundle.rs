use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qbundle::cli::commands::{self, Output};
use qbundle::instances;
use qbundle::{Error, Result};

/// Exact verification of quantum principal bundles.
#[derive(Parser)]
#[command(name = "qbundle", version)]
struct Cli {
    /// Built-in instance name or instance file (`all` for every built-in, with `check`).
    #[arg(long, global = true)]
    instance: Option<String>,
    /// Monomial window bound (exponent bound for `check`, largest |k| for `curvature`).
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Suite name or `all`.
    #[arg(long, global = true)]
    suite: Option<String>,
    /// Also write the check report (JSON lines) to this file.
    #[arg(long, global = true)]
    report: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to normal form: `eval [INSTANCE] EXPR`.
    Eval { args: Vec<String> },
    /// Normal form with term count, degrees and weights as JSON: `normal-form [INSTANCE] EXPR`.
    NormalForm { args: Vec<String> },
    /// Run verification suites: `check [INSTANCE] [SUITE]`.
    Check { args: Vec<String> },
    /// Act on a connection by a gauge transformation: `gauge-act [INSTANCE] GAUGE`.
    GaugeAct {
        args: Vec<String>,
        /// Connection id such as `s(0,0)`; defaults to the first registered one.
        #[arg(long)]
        connection: Option<String>,
        /// Use the graded extension of the gauge instead of `F(a0)dF(a1)`.
        #[arg(long)]
        graded: bool,
    },
    /// Curvature of a connection on `t^k`: `curvature [INSTANCE] [CONNECTION]`.
    Curvature { args: Vec<String> },
    /// List the built-in instances.
    ListInstances,
}

/// The instance is `--instance` if given, else the first of more than `need` positionals.
fn split<'a>(flag: &'a Option<String>, args: &'a [String], need: usize) -> Result<(&'a str, &'a [String])> {
    match flag {
        Some(i) => Ok((i, args)),
        None if args.len() > need => Ok((&args[0], &args[1..])),
        None => Err(Error::Other("no instance given (use --instance or a leading argument)".into())),
    }
}

fn one_instance(source: &str) -> Result<instances::InstanceBundle> {
    instances::load(source)
}

fn expression(cli: &Cli, args: &[String]) -> Result<(instances::InstanceBundle, String)> {
    let (inst, rest) = split(&cli.instance, args, 1)?;
    let expr = rest.join(" ");
    if expr.trim().is_empty() {
        return Err(Error::Other("no expression given".into()));
    }
    Ok((one_instance(inst)?, expr))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eval { args } => {
            let (b, e) = expression(cli, args)?;
            commands::eval(&b, &e)
        }
        Command::NormalForm { args } => {
            let (b, e) = expression(cli, args)?;
            commands::normal_form(&b, &e)
        }
        Command::Check { args } => {
            let (inst, rest) = split(&cli.instance, args, 0)?;
            let suite = cli.suite.as_deref().or(rest.first().map(String::as_str)).unwrap_or("all");
            let bundles = commands::load_instances(inst)?;
            let records = commands::check(&bundles, suite, cli.window)?;
            let text = commands::report(&records);
            if let Some(path) = &cli.report {
                std::fs::write(path, &text).map_err(|e| Error::Other(format!("cannot write {}: {e}", path.display())))?;
            }
            let failed = records.iter().filter(|r| !r.ok()).count();
            eprintln!("{} checks, {} failed", records.len(), failed);
            Ok(Output { text, ok: failed == 0 })
        }
        Command::GaugeAct { args, connection, graded } => {
            let (inst, rest) = split(&cli.instance, args, 1)?;
            let gauge = rest.first().ok_or_else(|| Error::Other("no gauge given".into()))?;
            commands::gauge_act(&one_instance(inst)?, gauge, connection.as_deref(), *graded)
        }
        Command::Curvature { args } => {
            let (inst, rest) = split(&cli.instance, args, 0)?;
            commands::curvature(&one_instance(inst)?, rest.first().map(String::as_str), cli.window)
        }
        Command::ListInstances => Ok(commands::list_instances()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.is_empty() && !out.text.ends_with('\n') {
                println!();
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
