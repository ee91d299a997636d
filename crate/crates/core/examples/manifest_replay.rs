// Run a command through the CLI layer, then replay its manifest and check
// that the model files come out byte-identical.

use clap::Parser;
use subvec::cli::{execute, Cli, MANIFEST_FILE};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let root = std::env::temp_dir().join(format!("subvec-replay-example-{}", std::process::id()));
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let first = root.join("first");
    let again = root.join("again");

    let cli = Cli::try_parse_from([
        "subvec",
        "embed",
        "--graph",
        &format!("{data}/toy.edges"),
        "--subgraphs",
        &format!("{data}/toy.subgraphs"),
        "--walk-length",
        "200",
        "--dim",
        "16",
        "--seed",
        "11",
        "--out",
        first.to_str().expect("utf-8 temp path"),
    ])?;
    let run = execute(&cli.command)?;
    println!("{}: {:?}", run.manifest.command, run.summary);

    let replay = Cli::try_parse_from([
        "subvec",
        "replay",
        "--manifest",
        first.join(MANIFEST_FILE).to_str().expect("utf-8 temp path"),
        "--out",
        again.to_str().expect("utf-8 temp path"),
        "--check",
    ])?;
    let rerun = execute(&replay.command)?;
    println!("{}", rerun.summary.last().expect("check line"));
    std::fs::remove_dir_all(&root)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("manifest replay");
}
