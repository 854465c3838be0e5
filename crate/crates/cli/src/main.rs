use std::process::ExitCode;

use clap::Parser;

use repfn::{exit, run, CliError, RunConfig};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::PASS });
        }
    };
    if let Some(threads) = cfg.threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(CliError::from);
        if let Err(e) = pool {
            eprintln!("repfn: {e}");
            return ExitCode::from(e.exit_code());
        }
    }
    match run(&cfg) {
        Ok(true) => ExitCode::from(exit::PASS),
        Ok(false) => {
            eprintln!("repfn: assertion failed");
            ExitCode::from(exit::ASSERTION)
        }
        Err(e) => {
            eprintln!("repfn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
