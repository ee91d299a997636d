//! Command implementations behind the `subvec` binary.
//!
//! Every command writes its outputs and a `manifest.json` into `--out`. The
//! manifest holds the fully resolved arguments and input digests, so
//! `subvec replay` reruns the command and, in single-threaded mode,
//! reproduces every deterministic output byte for byte.

mod commands;
mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::embed::{Combiner, Mode, TrainConfig, WindowShape};
use crate::error::{Error, Result};
use crate::graph::Hops;
use crate::tasks::EgoEmbedding;
use crate::walk::WalkConfig;

pub use commands::{execute, linear_fit, replay, LinearFit, Run};
pub use manifest::{FileDigest, OutputFile, RunManifest, MANIFEST_FILE};

#[derive(Debug, Parser)]
#[command(
    name = "subvec",
    version,
    about = "Subgraph embeddings from truncated random walks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Train subgraph vectors for a subgraph-set file or for every ego-net.
    Embed(EmbedArgs),
    /// Cluster ego-net vectors into communities, optionally scoring them.
    Communities(CommunityArgs),
    /// Hide edges, rank candidate links by ego-net similarity, report MAP.
    Linkpred(LinkPredArgs),
    /// Community F-1 over a grid of walk lengths or dimensions.
    Sweep(SweepArgs),
    /// Embedding wall-clock time over a grid of ego-net counts or hop sizes.
    Scalability(ScalabilityArgs),
    /// Exhaustive overlap-bound check on small subgraph sets.
    Verify(VerifyArgs),
    /// Rerun a recorded command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Dbon,
    Dm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombinerArg {
    Avg,
    Concat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowShapeArg {
    Symmetric,
    Preceding,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct WalkArgs {
    #[arg(long, default_value_t = 1000)]
    pub walk_length: usize,
    #[arg(long, default_value_t = 1)]
    pub walks_per_subgraph: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TrainArgs {
    #[arg(long, default_value_t = 128)]
    pub dim: usize,
    #[arg(long, default_value_t = 5)]
    pub window: usize,
    #[arg(long, default_value_t = 5)]
    pub negatives: usize,
    #[arg(long, default_value_t = 10)]
    pub epochs: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Dbon)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = CombinerArg::Avg)]
    pub combiner: CombinerArg,
    #[arg(long, value_enum, default_value_t = WindowShapeArg::Symmetric)]
    pub window_shape: WindowShapeArg,
    #[arg(long, default_value_t = 0.025)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub min_learning_rate: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct RunArgs {
    /// Master seed for walks, initialization, sampling and splits.
    #[arg(long, env = "SUBVEC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; without it every stage runs single-threaded and
    /// bit-reproducibly.
    #[arg(long, value_name = "N")]
    pub parallel: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

impl RunArgs {
    pub fn threads(&self) -> usize {
        self.parallel.unwrap_or(1)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HopsArg {
    /// Ego-net radius; defaults to 1 when the average degree is at least 10
    /// and 2 otherwise.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub hops: Option<u8>,
}

impl HopsArg {
    pub fn resolve(&self) -> Option<Hops> {
        self.hops.and_then(Hops::from_count)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EmbedArgs {
    /// Edge list of the host graph.
    #[arg(long)]
    pub graph: PathBuf,
    /// Subgraph-set file: `name node node ...` per line.
    #[arg(long, conflicts_with = "ego", required_unless_present = "ego")]
    pub subgraphs: Option<PathBuf>,
    /// Embed the ego-net of every node instead of a subgraph-set file.
    #[arg(long)]
    pub ego: bool,
    #[command(flatten)]
    pub hops: HopsArg,
    /// Also write the walk corpus to `walks.txt`.
    #[arg(long)]
    pub dump_walks: bool,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CommunityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Ground truth, `node community` per line; adds a P/R/F-1 footer.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Number of communities.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub hops: HopsArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LinkPredArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Percentage of edges to hide.
    #[arg(long, default_value_t = 10.0)]
    pub hide_percent: f64,
    #[command(flatten)]
    pub hops: HopsArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParam {
    WalkLength,
    Dim,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Parameter to vary; the other settings come from the usual flags.
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Comma-separated grid values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<usize>,
    #[command(flatten)]
    pub hops: HopsArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalabilityGrid {
    /// Ego-nets of the first `n` nodes, for each `n` in `--counts`.
    Counts,
    /// Ego-nets of all nodes at 1 and 2 hops.
    Hops,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ScalabilityArgs {
    /// Host graph; a random graph with average degree 8 is generated when
    /// absent.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ScalabilityGrid::Counts)]
    pub grid: ScalabilityGrid,
    #[arg(long, value_delimiter = ',', default_value = "100,200,400,800")]
    pub counts: Vec<usize>,
    /// Timed runs per grid point; the table reports min, median and max.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[command(flatten)]
    pub hops: HopsArg,
    #[command(flatten)]
    pub walk: WalkArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub subgraphs: PathBuf,
    /// Context width `w`.
    #[arg(long, default_value_t = 2)]
    pub window: usize,
    /// Negative-sample count `k` in the matrix shift.
    #[arg(long, default_value_t = 1)]
    pub negatives: usize,
    /// Walk length `l` in the matrix shift; defaults to `w`, the length of
    /// the walks in the exhaustive corpus.
    #[arg(long)]
    pub walk_length: Option<usize>,
    /// Ceiling on enumerated contexts per subgraph.
    #[arg(long, default_value_t = crate::oracle::DEFAULT_CONTEXT_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory for the rerun.
    #[arg(long)]
    pub out: PathBuf,
    /// Fail unless every deterministic output matches the recorded digest.
    #[arg(long)]
    pub check: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

impl WalkArgs {
    pub fn config(&self, run: &RunArgs) -> Result<WalkConfig> {
        if self.walk_length == 0 {
            return Err(usage("--walk-length must be at least 1"));
        }
        if self.walks_per_subgraph == 0 {
            return Err(usage("--walks-per-subgraph must be at least 1"));
        }
        Ok(WalkConfig {
            length: self.walk_length,
            walks_per_subgraph: self.walks_per_subgraph,
            seed: run.seed,
            threads: run.threads(),
        })
    }
}

impl TrainArgs {
    pub fn config(&self, run: &RunArgs) -> Result<TrainConfig> {
        if self.combiner == CombinerArg::Concat && self.mode != ModeArg::Dm {
            return Err(usage("--combiner concat requires --mode dm"));
        }
        let cfg = TrainConfig {
            dim: self.dim,
            window: self.window,
            negatives: self.negatives,
            epochs: self.epochs,
            lr0: self.learning_rate,
            lr_min: self.min_learning_rate,
            mode: match self.mode {
                ModeArg::Dbon => Mode::Dbon,
                ModeArg::Dm => Mode::Dm,
            },
            combiner: match self.combiner {
                CombinerArg::Avg => Combiner::Average,
                CombinerArg::Concat => Combiner::Concat,
            },
            window_shape: match self.window_shape {
                WindowShapeArg::Symmetric => WindowShape::Symmetric,
                WindowShapeArg::Preceding => WindowShape::Preceding,
            },
            seed: run.seed,
            threads: run.threads(),
        };
        cfg.validate().map_err(|e| usage(e.to_string()))?;
        Ok(cfg)
    }
}

impl RunArgs {
    fn validate(&self) -> Result<()> {
        if self.parallel == Some(0) {
            return Err(usage("--parallel needs at least 1 thread"));
        }
        Ok(())
    }
}

fn ego_embedding(walk: &WalkArgs, train: &TrainArgs, run: &RunArgs) -> Result<EgoEmbedding> {
    run.validate()?;
    Ok(EgoEmbedding {
        walk: walk.config(run)?,
        train: train.config(run)?,
    })
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Embed(_) => "embed",
            Command::Communities(_) => "communities",
            Command::Linkpred(_) => "linkpred",
            Command::Sweep(_) => "sweep",
            Command::Scalability(_) => "scalability",
            Command::Verify(_) => "verify",
            Command::Replay(_) => "replay",
        }
    }

    /// Run settings shared by every command except `replay`.
    pub fn run_args(&self) -> Option<&RunArgs> {
        match self {
            Command::Embed(a) => Some(&a.run),
            Command::Communities(a) => Some(&a.run),
            Command::Linkpred(a) => Some(&a.run),
            Command::Sweep(a) => Some(&a.run),
            Command::Scalability(a) => Some(&a.run),
            Command::Verify(a) => Some(&a.run),
            Command::Replay(_) => None,
        }
    }

    fn run_args_mut(&mut self) -> Option<&mut RunArgs> {
        match self {
            Command::Embed(a) => Some(&mut a.run),
            Command::Communities(a) => Some(&mut a.run),
            Command::Linkpred(a) => Some(&mut a.run),
            Command::Sweep(a) => Some(&mut a.run),
            Command::Scalability(a) => Some(&mut a.run),
            Command::Verify(a) => Some(&mut a.run),
            Command::Replay(_) => None,
        }
    }

    /// Input files read by the command.
    pub fn inputs(&self) -> Vec<PathBuf> {
        let mut v = Vec::new();
        match self {
            Command::Embed(a) => {
                v.push(a.graph.clone());
                v.extend(a.subgraphs.clone());
            }
            Command::Communities(a) => {
                v.push(a.graph.clone());
                v.extend(a.truth.clone());
            }
            Command::Linkpred(a) => v.push(a.graph.clone()),
            Command::Sweep(a) => {
                v.push(a.graph.clone());
                v.push(a.truth.clone());
            }
            Command::Scalability(a) => v.extend(a.graph.clone()),
            Command::Verify(a) => {
                v.push(a.graph.clone());
                v.push(a.subgraphs.clone());
            }
            Command::Replay(a) => v.push(a.manifest.clone()),
        }
        v
    }

    /// Checks every option before any file is read or any work starts.
    pub fn validate(&self) -> Result<()> {
        match self {
            Command::Embed(a) => {
                ego_embedding(&a.walk, &a.train, &a.run)?;
                if a.hops.hops.is_some() && !a.ego {
                    return Err(usage("--hops only applies with --ego"));
                }
            }
            Command::Communities(a) => {
                ego_embedding(&a.walk, &a.train, &a.run)?;
                if a.k < 2 {
                    return Err(usage("--k must be at least 2"));
                }
            }
            Command::Linkpred(a) => {
                ego_embedding(&a.walk, &a.train, &a.run)?;
                if !(a.hide_percent > 0.0 && a.hide_percent < 100.0) {
                    return Err(usage("--hide-percent must lie strictly between 0 and 100"));
                }
            }
            Command::Sweep(a) => {
                ego_embedding(&a.walk, &a.train, &a.run)?;
                if a.k < 2 {
                    return Err(usage("--k must be at least 2"));
                }
                if a.values.is_empty() || a.values.contains(&0) {
                    return Err(usage("--values needs positive grid values"));
                }
            }
            Command::Scalability(a) => {
                ego_embedding(&a.walk, &a.train, &a.run)?;
                if a.repeats == 0 {
                    return Err(usage("--repeats must be at least 1"));
                }
                if a.grid == ScalabilityGrid::Counts
                    && (a.counts.is_empty() || a.counts.contains(&0))
                {
                    return Err(usage("--counts needs positive grid values"));
                }
                if a.grid == ScalabilityGrid::Hops && a.hops.hops.is_some() {
                    return Err(usage("--hops conflicts with --grid hops"));
                }
            }
            Command::Verify(a) => {
                a.run.validate()?;
                if a.window == 0 {
                    return Err(usage("--window must be at least 1"));
                }
                if a.negatives == 0 {
                    return Err(usage("--negatives must be at least 1"));
                }
                if a.walk_length == Some(0) {
                    return Err(usage("--walk-length must be at least 1"));
                }
                if a.run.parallel.is_some() {
                    return Err(usage("verify is single-threaded; drop --parallel"));
                }
            }
            Command::Replay(_) => {}
        }
        Ok(())
    }
}
