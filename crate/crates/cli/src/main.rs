use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match ctc::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ctc::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let code = ctc::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
