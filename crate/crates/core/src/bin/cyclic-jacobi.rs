use std::process::ExitCode;

fn main() -> ExitCode {
    cyclic_jacobi::cli::run(std::env::args_os())
}
