use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gaussdisk_cli::run(std::env::args_os()))
}
