use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng as _;

use super::objective::{Kernel, ParamsMut, TrainingPair};
use super::{Combiner, EmbeddingModel, Matrix, Mode, NoiseTable, TrainConfig, WindowShape};
use crate::error::{Error, Result};
use crate::rng::{self, Rng};
use crate::walk::WalkCorpus;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainStats {
    /// Mean loss per positive example, one entry per epoch.
    pub epoch_loss: Vec<f64>,
    /// Total SGD steps taken.
    pub steps: usize,
}

/// Walks rewritten as vocabulary rows, plus the per-row token counts.
struct Encoded {
    walks: Vec<(usize, Vec<usize>)>,
    counts: Vec<u64>,
}

fn encode(corpus: &WalkCorpus) -> Result<Encoded> {
    let vocab = corpus.vocab();
    let mut counts = vec![0u64; vocab.len()];
    let mut walks = Vec::with_capacity(corpus.len());
    for w in corpus.walks() {
        let rows = w
            .seq
            .iter()
            .map(|v| {
                vocab.binary_search(v).map_err(|_| {
                    Error::Invariant(format!("node {v} of subgraph {} not in vocabulary", w.sid))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        for &r in &rows {
            counts[r] += 1;
        }
        walks.push((w.sid, rows));
    }
    Ok(Encoded { walks, counts })
}

/// Context rows for position `t`, or `None` if the position yields no
/// training example.
fn context_at(cfg: &TrainConfig, walk: &[usize], t: usize, out: &mut Vec<usize>) -> bool {
    out.clear();
    let w = cfg.window;
    match (cfg.combiner, cfg.window_shape) {
        (Combiner::Concat, _) => {
            if t < w {
                return false;
            }
            out.extend_from_slice(&walk[t - w..t]);
        }
        (Combiner::Average, WindowShape::Preceding) => {
            out.extend_from_slice(&walk[t.saturating_sub(w)..t]);
        }
        (Combiner::Average, WindowShape::Symmetric) => {
            out.extend_from_slice(&walk[t.saturating_sub(w)..t]);
            out.extend_from_slice(&walk[t + 1..(t + 1 + w).min(walk.len())]);
        }
    }
    !out.is_empty()
}

fn examples_per_epoch(cfg: &TrainConfig, enc: &Encoded) -> usize {
    let mut scratch = Vec::new();
    enc.walks
        .iter()
        .map(|(_, walk)| match cfg.mode {
            Mode::Dbon => walk.len(),
            Mode::Dm => (0..walk.len())
                .filter(|&t| context_at(cfg, walk, t, &mut scratch))
                .count(),
        })
        .sum()
}

/// Model with `S`, `M` uniform in `[-0.5/d, 0.5/d]` and `U = 0`.
pub fn initial_model(corpus: &WalkCorpus, cfg: &TrainConfig) -> Result<EmbeddingModel> {
    cfg.validate()?;
    let d = cfg.dim;
    let bound = 0.5 / d as f64;
    let mut rng = rng::stream(cfg.seed, rng::INIT, 0);
    let mut uniform =
        |n: usize| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-bound..bound)).collect() };
    let n_sub = corpus.subgraph_count();
    let n_vocab = corpus.vocab().len();
    let subgraphs = Matrix::from_vec(n_sub, d, uniform(n_sub * d));
    let nodes = Matrix::from_vec(n_vocab, d, uniform(n_vocab * d));
    let output = Matrix::zeros(n_vocab, cfg.output_width());
    EmbeddingModel::new(subgraphs, nodes, output, corpus.vocab().to_vec(), *cfg)
}

/// Per-thread SGD driver over a slice of walks.
struct Worker<'c> {
    cfg: &'c TrainConfig,
    noise: &'c NoiseTable,
    kernel: Kernel,
    context: Vec<usize>,
    negatives: Vec<usize>,
    rng: Rng,
}

impl<'c> Worker<'c> {
    fn new(cfg: &'c TrainConfig, noise: &'c NoiseTable, rng: Rng) -> Self {
        Worker {
            cfg,
            noise,
            kernel: Kernel::new(),
            context: Vec::new(),
            negatives: Vec::with_capacity(cfg.negatives),
            rng,
        }
    }

    /// Runs over `walks` once; returns (summed loss, examples).
    fn pass(
        &mut self,
        params: &mut ParamsMut<'_>,
        walks: &[(usize, Vec<usize>)],
        progress: &AtomicUsize,
        total: usize,
    ) -> (f64, usize) {
        let cfg = self.cfg;
        let mut loss = 0.0;
        let mut n = 0;
        for (sid, walk) in walks {
            for t in 0..walk.len() {
                if cfg.mode == Mode::Dm && !context_at(cfg, walk, t, &mut self.context) {
                    continue;
                }
                let target = walk[t];
                self.negatives.clear();
                for _ in 0..cfg.negatives {
                    let neg = self.noise.sample(&mut self.rng);
                    if neg != target {
                        self.negatives.push(neg);
                    }
                }
                let done = progress.fetch_add(1, Ordering::Relaxed);
                let frac = done as f64 / total.max(1) as f64;
                let lr = (cfg.lr0 - (cfg.lr0 - cfg.lr_min) * frac).max(cfg.lr_min);
                loss += match cfg.mode {
                    Mode::Dbon => self.kernel.dbon(params, *sid, target, &self.negatives, lr),
                    Mode::Dm => {
                        let pair = TrainingPair {
                            sid: *sid,
                            context: &self.context,
                            target,
                            mode: Mode::Dm,
                        };
                        self.kernel
                            .dm(params, &pair, &self.negatives, cfg.combiner, lr)
                    }
                };
                n += 1;
            }
        }
        (loss, n)
    }
}

/// Raw views of the model matrices shared by lock-free workers.
struct SharedParams {
    dim: usize,
    out_width: usize,
    subgraphs: (*mut f64, usize),
    nodes: (*mut f64, usize),
    output: (*mut f64, usize),
}

// Workers write overlapping rows without synchronization; lost or torn
// updates are accepted in parallel mode.
unsafe impl Send for SharedParams {}
unsafe impl Sync for SharedParams {}

impl SharedParams {
    fn new(model: &mut EmbeddingModel) -> SharedParams {
        let p = model.params_mut();
        SharedParams {
            dim: p.dim,
            out_width: p.out_width,
            subgraphs: (p.subgraphs.as_mut_ptr(), p.subgraphs.len()),
            nodes: (p.nodes.as_mut_ptr(), p.nodes.len()),
            output: (p.output.as_mut_ptr(), p.output.len()),
        }
    }

    /// # Safety
    /// The model the pointers came from must outlive the returned view and
    /// must not be accessed through any other path meanwhile.
    unsafe fn view(&self) -> ParamsMut<'_> {
        ParamsMut {
            dim: self.dim,
            out_width: self.out_width,
            subgraphs: std::slice::from_raw_parts_mut(self.subgraphs.0, self.subgraphs.1),
            nodes: std::slice::from_raw_parts_mut(self.nodes.0, self.nodes.1),
            output: std::slice::from_raw_parts_mut(self.output.0, self.output.1),
        }
    }
}

/// Trains subgraph vectors on `corpus`.
///
/// With `cfg.threads == 1` the result is a pure function of the corpus and
/// config. The learning rate decays linearly from `lr0` to `lr_min` over
/// all scheduled steps.
pub fn train(corpus: &WalkCorpus, cfg: &TrainConfig) -> Result<(EmbeddingModel, TrainStats)> {
    cfg.validate()?;
    if corpus.is_empty() || corpus.token_count() == 0 {
        return Err(Error::domain("cannot train on an empty corpus"));
    }
    let enc = encode(corpus)?;
    let noise = NoiseTable::from_counts(&enc.counts)?;
    let mut model = initial_model(corpus, cfg)?;
    let per_epoch = examples_per_epoch(cfg, &enc);
    let total = per_epoch * cfg.epochs;
    let progress = AtomicUsize::new(0);
    let mut stats = TrainStats::default();

    if cfg.threads == 1 {
        let mut worker = Worker::new(cfg, &noise, rng::stream(cfg.seed, rng::NEGATIVES, 0));
        for _ in 0..cfg.epochs {
            let (loss, n) = worker.pass(&mut model.params_mut(), &enc.walks, &progress, total);
            stats.epoch_loss.push(loss / n.max(1) as f64);
            stats.steps += n;
        }
    } else {
        let shared = SharedParams::new(&mut model);
        let chunk = enc.walks.len().div_ceil(cfg.threads).max(1);
        for epoch in 0..cfg.epochs {
            let results: Vec<(f64, usize)> = std::thread::scope(|scope| {
                let handles: Vec<_> = enc
                    .walks
                    .chunks(chunk)
                    .enumerate()
                    .map(|(i, walks)| {
                        let shared = &shared;
                        let noise = &noise;
                        let progress = &progress;
                        scope.spawn(move || {
                            let stream = (epoch * cfg.threads + i) as u64 + 1;
                            let mut worker = Worker::new(
                                cfg,
                                noise,
                                rng::stream(cfg.seed, rng::NEGATIVES, stream),
                            );
                            // SAFETY: `model` is only reached through `shared`
                            // until the scope ends.
                            let mut params = unsafe { shared.view() };
                            worker.pass(&mut params, walks, progress, total)
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("training worker panicked"))
                    .collect()
            });
            let (loss, n) = results
                .iter()
                .fold((0.0, 0), |(l, c), &(dl, dc)| (l + dl, c + dc));
            stats.epoch_loss.push(loss / n.max(1) as f64);
            stats.steps += n;
        }
    }

    if !model.is_finite() {
        return Err(Error::Invariant(
            "training produced non-finite parameters".into(),
        ));
    }
    Ok((model, stats))
}
