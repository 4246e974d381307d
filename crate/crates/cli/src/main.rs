use std::process::ExitCode;

use subseq_cli::{run, Status};

fn main() -> ExitCode {
    let result = run(std::env::args_os());
    if result.status == Status::Ok {
        println!("{}", result.payload);
    } else {
        eprintln!("{}", result.payload);
    }
    ExitCode::from(result.status.exit_code() as u8)
}
