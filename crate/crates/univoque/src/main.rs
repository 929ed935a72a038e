use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(univoque::cli::run(std::env::args()) as u8)
}
