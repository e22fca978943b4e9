use std::io;
use std::process::ExitCode;

use catoid_kleene::pathtool::{cmd_check, cmd_star, CheckArgs, StarArgs};
use clap::{Parser, Subcommand};

/// Weighted path problems over convolution Kleene algebras.
#[derive(Parser)]
#[command(name = "pathtool", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Star of a weight function, one `element<TAB>weight` row per element.
    Star(StarArgs),
    /// Run a verification campaign and print its report.
    Check(CheckArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match &cli.cmd {
        Cmd::Star(a) => cmd_star(a, &mut out, &mut err),
        Cmd::Check(a) => cmd_check(a, &mut out, &mut err),
    };
    ExitCode::from(code as u8)
}
