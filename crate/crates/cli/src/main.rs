use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use holomon_cli::app::{self, deliver, RunConfig};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => app::EXIT_OK,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => app::EXIT_UNKNOWN_COMMAND,
                _ => app::EXIT_PARSE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = app::run(&cfg).and_then(|o| deliver(&cfg, &o.text).map(|t| (t, o.code)));
    match out {
        Ok((text, code)) => {
            if let Some(t) = text {
                let _ = std::io::stdout().write_all(t.as_bytes());
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("holomon: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
