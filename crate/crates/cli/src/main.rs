use std::process::ExitCode;

fn main() -> ExitCode {
    let code = chordkit_cli::main_with_args(std::env::args_os());
    ExitCode::from(code)
}
