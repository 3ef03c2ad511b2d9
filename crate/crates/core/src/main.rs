use std::process::ExitCode;

fn main() -> ExitCode {
    gkrevival::cli::main_with_args(std::env::args_os())
}
