use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use uzsl2_core::exec::Execution;
use uzsl2_core::sweep::{run, Format, SweepConfig, Task};
use uzsl2_core::Error;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Generator matrices, verification suites and spectrum sweeps for the
/// PT-symmetric representations of U_z(sl(2,R)).
#[derive(Parser, Debug)]
#[command(name = "uzsl2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit J0, J+ and J- for the configured representation.
    Repgen(Common),
    /// Run the commutation, Casimir, Hopf, conjugation and PT checks.
    Verify(Common),
    /// Spectra of the three-coupling family over a parameter grid.
    FamilySweep(Common),
    /// Phase map with exceptional points located and tested for coalescence.
    EpScan(Common),
    /// Spectra of the polynomial family (sin, cos or explicit coefficients).
    PolySweep(Common),
    /// Exact versus approximate quantum-dot levels over a detuning grid.
    QdotSweep(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// JSON configuration document.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a configuration leaf by dotted path, e.g. `grid.0.count=11`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output file (written atomically); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Worker threads for grid evaluation.
    #[arg(long)]
    workers: Option<usize>,
    /// Evaluate grid points on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl Command {
    fn split(&self) -> (Task, &Common) {
        match self {
            Command::Repgen(c) => (Task::Repgen, c),
            Command::Verify(c) => (Task::Verify, c),
            Command::FamilySweep(c) => (Task::FamilySweep, c),
            Command::EpScan(c) => (Task::EpScan, c),
            Command::PolySweep(c) => (Task::PolySweep, c),
            Command::QdotSweep(c) => (Task::QdotSweep, c),
        }
    }
}

fn load_config(task: Task, args: &Common) -> Result<SweepConfig, Error> {
    let mut value = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{} is not valid JSON: {e}", path.display())))?
        }
        None => Value::Object(Default::default()),
    };
    let map = value
        .as_object_mut()
        .ok_or_else(|| Error::Config("the configuration must be a JSON object".into()))?;
    match map.get("task").and_then(Value::as_str) {
        Some(name) if name != task.name() => {
            return Err(Error::Config(format!(
                "task: the config names `{name}` but the subcommand is `{}`",
                task.name()
            )))
        }
        _ => {
            map.insert("task".into(), Value::String(task.name().into()));
        }
    }
    let mut config = SweepConfig::from_value(value, &args.set)?;
    if let Some(out) = &args.out {
        config.output.path = Some(out.clone());
    }
    if let Some(f) = &args.format {
        config.output.format = Format::from_name(f).expect("validated by clap");
    }
    if args.workers.is_some() {
        config.workers = args.workers;
    }
    if args.sequential {
        config.execution = Execution::Sequential;
    }
    config.validate()?;
    Ok(config)
}

fn exit_code(error: &Error) -> u8 {
    if error.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, args) = cli.command.split();
    let config = match load_config(task, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match &outcome.rendered {
        Some(bytes) => {
            let r = out.write_all(bytes).and_then(|_| out.flush());
            for line in &outcome.report {
                eprintln!("{line}");
            }
            eprintln!("{}", outcome.summary());
            r
        }
        None => outcome
            .report
            .iter()
            .try_for_each(|line| writeln!(out, "{line}"))
            .and_then(|_| writeln!(out, "{}", outcome.summary())),
    };
    if let Err(e) = written {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}
