use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gfe1313::cli::run(std::env::args_os()))
}
