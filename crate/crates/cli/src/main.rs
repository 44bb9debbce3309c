use std::process::ExitCode;

fn main() -> ExitCode {
    trapezoid_cli::run(std::env::args_os())
}
