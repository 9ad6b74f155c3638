use std::process::ExitCode;

fn main() -> ExitCode {
    rootcount::cli::run()
}
