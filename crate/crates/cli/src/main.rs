use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use iwdefect::{execute, render_human, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = execute(&cli);
    let text = if cli.json {
        serde_json::to_string_pretty(&env).expect("envelope serializes") + "\n"
    } else {
        render_human(&env)
    };
    if env.status == 0 || cli.json {
        let _ = std::io::stdout().write_all(text.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(text.as_bytes());
    }
    ExitCode::from(env.status as u8)
}
