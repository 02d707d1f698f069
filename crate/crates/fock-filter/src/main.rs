use std::process::ExitCode;

fn main() -> ExitCode {
    fock_filter::cli::main_entry()
}
