mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;
use hcobord_core::Error;

use commands::Cli;

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    let one_line = message.split_whitespace().collect::<Vec<_>>().join(" ");
    let escaped = one_line.replace('\\', "\\\\").replace('"', "\\\"");
    eprintln!("error kind={kind} message=\"{escaped}\"");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("input", e.to_string().trim_start_matches("error: "), 1),
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let json = cli.global.json;
    match commands::run(cli, echo) {
        Ok(report) => {
            print!(
                "{}",
                if json {
                    report.render_json()
                } else {
                    report.render_text()
                }
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (Error::Input(m) | Error::ModelInvalid(m) | Error::Internal(m)) = &e;
            let code = match e {
                Error::Input(_) => 1,
                Error::ModelInvalid(_) => 2,
                Error::Internal(_) => 3,
            };
            fail(e.kind(), m, code)
        }
    }
}
