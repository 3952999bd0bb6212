//! `cliffold` command-line front end.

mod args;
mod commands;
mod manifest;

use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use manifest::{load_manifest, result_digest, RunManifest, TOOL};

const EXIT_FAILURE: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_CAP: i32 = 4;

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CLIFFOLD_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("CLIFFOLD_THREADS='{v}' is not a count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<cliffold::Error>() {
            return match e {
                cliffold::Error::Parse { .. } | cliffold::Error::Json(_) => EXIT_PARSE,
                cliffold::Error::FeasibilityCap { .. } => EXIT_CAP,
                _ => EXIT_FAILURE,
            };
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return EXIT_PARSE;
        }
    }
    EXIT_FAILURE
}

fn write_outputs(dir: &Path, manifest: &RunManifest, result: &serde_json::Value, files: &[(String, String)]) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |name: &str, contents: &str| {
        std::fs::write(dir.join(name), contents).with_context(|| format!("writing {}", dir.join(name).display()))
    };
    write("manifest.json", &(serde_json::to_string_pretty(manifest)? + "\n"))?;
    write("result.json", &(serde_json::to_string_pretty(result)? + "\n"))?;
    for (name, contents) in files {
        write(name, contents)?;
    }
    Ok(())
}

/// Run one subcommand, print the `{manifest, result}` envelope and write files.
fn execute(cmd: Command) -> Result<(RunManifest, i32)> {
    let inputs = commands::input_digests(&cmd)?;
    let outcome = cmd.run()?;
    let manifest = RunManifest {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: cmd.seed(),
        inputs,
        config: outcome.config,
        result_digest: result_digest(&outcome.result, &outcome.files),
        command: cmd,
    };
    if let Some(dir) = manifest.command.out_dir() {
        write_outputs(dir, &manifest, &outcome.result, &outcome.files)?;
    }
    let envelope = json!({ "manifest": &manifest, "result": &outcome.result });
    // a closed pipe on stdout is not a failure of the run itself
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&envelope)?);
    Ok((manifest, outcome.exit))
}

fn replay(args: &args::ReplayArgs) -> Result<i32> {
    let recorded = load_manifest(&args.manifest)?;
    if recorded.tool != TOOL {
        bail!("manifest was written by '{}', not {TOOL}", recorded.tool);
    }
    for (path, digest) in &recorded.inputs {
        let now = manifest::file_digest(Path::new(path))?;
        if &now != digest {
            bail!("input {path} changed since the manifest was written (sha256 {now}, recorded {digest})");
        }
    }
    let mut cmd = recorded.command.clone();
    if let Some(dir) = &args.out {
        cmd.set_out_dir(dir.clone());
    }
    let (fresh, exit) = execute(cmd)?;
    if fresh.result_digest != recorded.result_digest {
        eprintln!(
            "replay mismatch: result digest {} differs from recorded {}",
            fresh.result_digest, recorded.result_digest
        );
        return Ok(EXIT_FAILURE);
    }
    eprintln!("replay ok: {}", fresh.result_digest);
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| match cli.command {
        Command::Replay(ref a) => replay(a),
        cmd => execute(cmd).map(|(_, exit)| exit),
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
