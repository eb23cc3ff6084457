use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kummer_lab::app::run;
use kummer_lab::command::CommandSpec;

fn main() -> ExitCode {
    let spec = CommandSpec::parse();
    match run(&spec) {
        Ok(rendered) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            for name in &rendered.failures {
                eprintln!("FAIL {name}");
            }
            ExitCode::from(rendered.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
