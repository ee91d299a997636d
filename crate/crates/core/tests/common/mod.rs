//! Helpers shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subvec::embed::{
    dbon_step, dm_step, Combiner, EmbeddingModel, Matrix, Mode, TrainConfig, TrainingPair,
};

/// Clamp applied to scores before the logistic, restated for the oracle.
const CLAMP: f64 = 6.0;

fn log_sigmoid(x: f64) -> f64 {
    let x = x.clamp(-CLAMP, CLAMP);
    -(1.0 + (-x).exp()).ln()
}

/// One sampled step: model, positive example and noise rows.
pub struct GradCase {
    pub model: EmbeddingModel,
    pub sid: usize,
    pub context: Vec<usize>,
    pub target: usize,
    pub negatives: Vec<usize>,
}

impl GradCase {
    pub fn random(rng: &mut ChaCha8Rng, mode: Mode, combiner: Combiner) -> GradCase {
        let dim = rng.gen_range(1..=8);
        let window = rng.gen_range(1..=3);
        let vocab = rng.gen_range(2..=6);
        let subgraphs = rng.gen_range(1..=3);
        let cfg = TrainConfig {
            dim,
            window,
            mode,
            combiner,
            ..TrainConfig::default()
        };
        let mut fill = |rows: usize, cols: usize| {
            Matrix::from_vec(
                rows,
                cols,
                (0..rows * cols).map(|_| rng.gen_range(-0.5..0.5)).collect(),
            )
        };
        let s = fill(subgraphs, dim);
        let m = fill(vocab, dim);
        let u = fill(vocab, cfg.output_width());
        let model = EmbeddingModel::new(s, m, u, (0..vocab as u32).collect(), cfg).unwrap();
        let context_len = match (mode, combiner) {
            (Mode::Dbon, _) => 0,
            (Mode::Dm, Combiner::Concat) => window,
            (Mode::Dm, Combiner::Average) => rng.gen_range(1..=2 * window),
        };
        GradCase {
            model,
            sid: rng.gen_range(0..subgraphs),
            context: (0..context_len).map(|_| rng.gen_range(0..vocab)).collect(),
            target: rng.gen_range(0..vocab),
            negatives: (0..rng.gen_range(0..=5))
                .map(|_| rng.gen_range(0..vocab))
                .collect(),
        }
    }

    fn flat(model: &EmbeddingModel) -> Vec<f64> {
        [
            model.subgraphs.as_slice(),
            model.nodes.as_slice(),
            model.output.as_slice(),
        ]
        .concat()
    }

    fn unflat(&self, theta: &[f64]) -> EmbeddingModel {
        let mut m = self.model.clone();
        let (a, rest) = theta.split_at(m.subgraphs.as_slice().len());
        let (b, c) = rest.split_at(m.nodes.as_slice().len());
        m.subgraphs.as_mut_slice().copy_from_slice(a);
        m.nodes.as_mut_slice().copy_from_slice(b);
        m.output.as_mut_slice().copy_from_slice(c);
        m
    }

    /// Negative log-likelihood of the example, computed from scratch.
    pub fn loss(&self, theta: &[f64]) -> f64 {
        let m = self.unflat(theta);
        let d = m.config.dim;
        let s = m.subgraphs.row(self.sid);
        let h: Vec<f64> = match (m.config.mode, m.config.combiner) {
            (Mode::Dbon, _) => s.to_vec(),
            (Mode::Dm, Combiner::Average) => (0..d)
                .map(|i| {
                    let mean = self.context.iter().map(|&c| m.nodes.row(c)[i]).sum::<f64>()
                        / self.context.len() as f64;
                    (s[i] + mean) / 2.0
                })
                .collect(),
            (Mode::Dm, Combiner::Concat) => {
                let mut h = s.to_vec();
                for &c in &self.context {
                    h.extend_from_slice(m.nodes.row(c));
                }
                h
            }
        };
        let score = |row: usize| {
            m.output
                .row(row)
                .iter()
                .zip(&h)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        };
        -log_sigmoid(score(self.target))
            - self
                .negatives
                .iter()
                .map(|&n| log_sigmoid(-score(n)))
                .sum::<f64>()
    }

    /// Gradient of the loss as applied by the library: the parameter change
    /// of a unit-rate step, negated.
    pub fn analytic_gradient(&self) -> Vec<f64> {
        let mut m = self.model.clone();
        let pair = TrainingPair {
            sid: self.sid,
            context: &self.context,
            target: self.target,
            mode: m.config.mode,
        };
        match m.config.mode {
            Mode::Dbon => dbon_step(&mut m, &pair, &self.negatives, 1.0),
            Mode::Dm => dm_step(&mut m, &pair, &self.negatives, 1.0),
        };
        let before = Self::flat(&self.model);
        Self::flat(&m)
            .iter()
            .zip(&before)
            .map(|(a, b)| b - a)
            .collect()
    }

    /// Central finite differences of [`GradCase::loss`].
    pub fn numeric_gradient(&self, eps: f64) -> Vec<f64> {
        let theta = Self::flat(&self.model);
        (0..theta.len())
            .map(|i| {
                let mut plus = theta.clone();
                let mut minus = theta.clone();
                plus[i] += eps;
                minus[i] -= eps;
                (self.loss(&plus) - self.loss(&minus)) / (2.0 * eps)
            })
            .collect()
    }

    /// `|a - f| / max(|a|, |f|)` in the Euclidean norm.
    pub fn relative_error(&self, eps: f64) -> f64 {
        let a = self.analytic_gradient();
        let f = self.numeric_gradient(eps);
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let diff: Vec<f64> = a.iter().zip(&f).map(|(x, y)| x - y).collect();
        let scale = norm(&a).max(norm(&f));
        if scale == 0.0 {
            0.0
        } else {
            norm(&diff) / scale
        }
    }
}

/// Worst relative error over `cases` random configurations of each
/// objective variant.
pub fn worst_gradient_error(cases: usize, seed: u64, eps: f64) -> Vec<(&'static str, f64)> {
    let variants = [
        ("dbon", Mode::Dbon, Combiner::Average),
        ("dm-average", Mode::Dm, Combiner::Average),
        ("dm-concat", Mode::Dm, Combiner::Concat),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    variants
        .iter()
        .map(|&(name, mode, combiner)| {
            let worst = (0..cases)
                .map(|_| GradCase::random(&mut rng, mode, combiner).relative_error(eps))
                .fold(0.0, f64::max);
            (name, worst)
        })
        .collect()
}
