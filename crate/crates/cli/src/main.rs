use std::process::ExitCode;

use clap::Parser;

mod app;
mod text;

fn main() -> ExitCode {
    let cli = match app::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { app::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match app::run(&cli) {
        Ok(report) => {
            print!("{}", report.body);
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit)
        }
    }
}
