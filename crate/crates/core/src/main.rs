use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(subgroup_sums::cli::run(std::env::args()) as u8)
}
