use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use tagix::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let res = execute(cli.command, &mut out, &mut err);
    let res = res.and_then(|()| Ok(out.flush()?));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tagix: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
