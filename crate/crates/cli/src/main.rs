use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use casimir_cli::args::Cli;
use casimir_cli::{run_check, run_eval, run_fig1, run_sweep, CliError, Command, RunSpec};
use clap::Parser;

fn run(cli: &Cli) -> Result<(), CliError> {
    let spec: RunSpec = cli.to_spec()?;
    if let Some(n) = cli.threads()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
    }
    let mut out: Box<dyn Write> = match &spec.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = match spec.command {
        Command::Eval => run_eval(&spec, &mut out),
        Command::Sweep => run_sweep(&spec, &mut out),
        Command::Fig1 => run_fig1(&spec, &mut out),
        Command::Check => run_check(&spec.quad, &mut out, &mut io::stderr()).map(|_| ()),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
