use std::process::ExitCode;

use autalg::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    println!("{}", serde_json::to_string_pretty(&result.to_json()).expect("json values print"));
    if let Some(e) = &result.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(result.exit_code() as u8)
}
