//! `conewh <command> --in <spec> --out <dir> [--seed K] [--tol key=val]`

mod commands;
mod presets;
mod spec;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use commands::{Command, Output, Run};

#[derive(Parser, Debug)]
#[command(name = "conewh", version, about = "Cone geometry and Wiener-Hopf experiments in batch")]
struct Cli {
    command: Command,
    /// Spec file, or the name of a shipped preset.
    #[arg(long = "in", value_name = "SPEC")]
    input: String,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", value_name = "KEY=VAL", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=val, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("not a number: {v:?}"))?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Usage(String),
    Io(String),
    Domain(conewh::Error),
}

fn preset_text(command: Command, name: &str) -> Option<&'static str> {
    let name = name.strip_prefix("preset:").unwrap_or(name);
    match command {
        Command::Lattice | Command::Strata | Command::Spectrum => presets::lookup(presets::CONES, name),
        _ => presets::lookup(presets::EXPERIMENTS, name),
    }
}

fn read_input(command: Command, input: &str) -> Result<String, Failure> {
    let path = Path::new(input);
    if path.is_file() || input.starts_with('/') || input.starts_with('.') {
        return fs::read_to_string(path).map_err(|e| Failure::Io(format!("{input}: {e}")));
    }
    match preset_text(command, input) {
        Some(text) => Ok(text.to_string()),
        None => Err(Failure::Io(format!("{input}: no such file or preset"))),
    }
}

/// Writes through a temporary file in the same directory and renames it into place.
fn write_atomic(dir: &Path, out: &Output) -> std::io::Result<()> {
    let tmp = dir.join(format!(".{}.tmp", out.name));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(out.contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, dir.join(out.name))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let allowed = cli.command.tolerances();
    let mut tol = BTreeMap::new();
    for (k, v) in cli.tol {
        if !allowed.contains(&k.as_str()) {
            return Err(Failure::Usage(format!("unknown tolerance {k:?} for {}; accepted: {allowed:?}", cli.command.name())));
        }
        tol.insert(k, v);
    }
    if cli.command.needs_seed() && cli.seed.is_none() {
        return Err(Failure::Usage(format!("{} samples randomly and needs --seed", cli.command.name())));
    }
    let text = read_input(cli.command, &cli.input)?;
    let run = Run { command: cli.command, input: cli.input, text, seed: cli.seed, tol };
    let outputs = commands::run(&run).map_err(Failure::Domain)?;
    fs::create_dir_all(&cli.out).map_err(|e| Failure::Io(format!("{}: {e}", cli.out.display())))?;
    for o in &outputs {
        write_atomic(&cli.out, o).map_err(|e| Failure::Io(format!("{}: {e}", cli.out.join(o.name).display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", Cli::command().render_usage());
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error[io]: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[usage]: {msg}");
            eprintln!("usage: conewh <command> --in <spec> --out <dir> [--seed K] [--tol key=val]");
            ExitCode::from(2)
        }
    }
}
