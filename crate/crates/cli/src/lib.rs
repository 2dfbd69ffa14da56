//! The `iwdefect` command surface. Each subcommand produces one
//! [`ReportEnvelope`]; `--json` prints it as is and the default output renders
//! it as text.

mod args;
mod commands;
mod envelope;
mod render;

pub use args::{Cli, Command, CurveArgs, CurveCommand, FamilyArgs, FamilyCommand, FetchArgs, LambdaArgs, LayerArg, SplitArgs, TorsionArgs};
pub use commands::execute;
pub use envelope::{ErrorInfo, ErrorKind, ReportEnvelope, Warning, WarningKind, SCHEMA_VERSION};
pub use render::render_human;

/// JSON Schema for [`ReportEnvelope`].
pub const ENVELOPE_SCHEMA: &str = include_str!("../../../schema/report-envelope.schema.json");

/// Parses `args` (including the program name) and runs the command.
/// Usage errors from the parser come back as `Err` with clap's message.
pub fn run_args<I, T>(args: I) -> Result<ReportEnvelope, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    Cli::try_parse_from(args).map(|cli| execute(&cli))
}
