//! Negative-sampling SGD kernels for the DBON and DM objectives.
//!
//! Each step maximizes
//! `log σ(u_t·h) + Σ_j log σ(−u_{n_j}·h)` for the target row `t` and noise
//! rows `n_j`, where `h` is the subgraph vector (DBON) or its combination
//! with the context node vectors (DM). All partial derivatives are evaluated
//! at the pre-step parameters and then applied together, so a step is an
//! exact gradient step even when rows repeat.

use super::{Combiner, EmbeddingModel, Mode};

/// Scores are clamped to `[-MAX_SCORE, MAX_SCORE]` before the logistic.
pub const MAX_SCORE: f64 = 6.0;

/// Logistic function on the clamped score.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    let x = x.clamp(-MAX_SCORE, MAX_SCORE);
    1.0 / (1.0 + (-x).exp())
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// One positive example: predict `target` from subgraph `sid` (and, for DM,
/// the `context` rows). Node fields are vocabulary rows of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainingPair<'a> {
    pub sid: usize,
    pub context: &'a [usize],
    pub target: usize,
    pub mode: Mode,
}

/// Mutable views of the three parameter matrices.
pub struct ParamsMut<'a> {
    pub dim: usize,
    pub out_width: usize,
    pub subgraphs: &'a mut [f64],
    pub nodes: &'a mut [f64],
    pub output: &'a mut [f64],
}

impl EmbeddingModel {
    pub fn params_mut(&mut self) -> ParamsMut<'_> {
        ParamsMut {
            dim: self.subgraphs.cols(),
            out_width: self.output.cols(),
            subgraphs: self.subgraphs.as_mut_slice(),
            nodes: self.nodes.as_mut_slice(),
            output: self.output.as_mut_slice(),
        }
    }
}

/// Reusable scratch space for the kernels.
#[derive(Debug, Default)]
pub struct Kernel {
    h: Vec<f64>,
    grad: Vec<f64>,
    coef: Vec<f64>,
}

impl Kernel {
    pub fn new() -> Kernel {
        Kernel::default()
    }

    /// Scores the target and noise rows against `self.h`, fills `self.grad`
    /// with ∂ℓ/∂h, applies the output-row updates and returns −ℓ.
    fn output_step(
        &mut self,
        output: &mut [f64],
        width: usize,
        target: usize,
        negatives: &[usize],
        lr: f64,
    ) -> f64 {
        let rows = std::iter::once((target, 1.0)).chain(negatives.iter().map(|&n| (n, 0.0)));
        self.coef.clear();
        self.grad.clear();
        self.grad.resize(width, 0.0);
        let mut loss = 0.0;
        for (row, label) in rows.clone() {
            let u = &output[row * width..(row + 1) * width];
            let x = dot(u, &self.h);
            let p = sigmoid(x);
            loss -= if label > 0.0 { p.ln() } else { (1.0 - p).ln() };
            // derivative of the clamped objective; flat outside the clamp
            let c = if x.abs() < MAX_SCORE { label - p } else { 0.0 };
            self.coef.push(c);
            axpy(c, u, &mut self.grad);
        }
        for ((row, _), &c) in rows.zip(&self.coef) {
            if c != 0.0 {
                axpy(lr * c, &self.h, &mut output[row * width..(row + 1) * width]);
            }
        }
        loss
    }

    /// DBON step: `h` is the subgraph vector.
    pub fn dbon(
        &mut self,
        p: &mut ParamsMut<'_>,
        sid: usize,
        target: usize,
        negatives: &[usize],
        lr: f64,
    ) -> f64 {
        let d = p.dim;
        self.h.clear();
        self.h
            .extend_from_slice(&p.subgraphs[sid * d..(sid + 1) * d]);
        let loss = self.output_step(p.output, d, target, negatives, lr);
        axpy(lr, &self.grad, &mut p.subgraphs[sid * d..(sid + 1) * d]);
        loss
    }

    /// DM step. With averaging, `h = (mean of context rows of M + s) / 2`;
    /// with concatenation, `h = [s, M[c_1], .., M[c_w]]`.
    pub fn dm(
        &mut self,
        p: &mut ParamsMut<'_>,
        pair: &TrainingPair<'_>,
        negatives: &[usize],
        combiner: Combiner,
        lr: f64,
    ) -> f64 {
        let d = p.dim;
        let sid = pair.sid;
        let ctx = pair.context;
        assert!(!ctx.is_empty(), "DM needs a non-empty context");
        self.h.clear();
        match combiner {
            Combiner::Average => {
                let w = 0.5 / ctx.len() as f64;
                self.h.resize(d, 0.0);
                axpy(0.5, &p.subgraphs[sid * d..(sid + 1) * d], &mut self.h);
                for &c in ctx {
                    axpy(w, &p.nodes[c * d..(c + 1) * d], &mut self.h);
                }
                let loss = self.output_step(p.output, d, pair.target, negatives, lr);
                axpy(
                    0.5 * lr,
                    &self.grad,
                    &mut p.subgraphs[sid * d..(sid + 1) * d],
                );
                for &c in ctx {
                    axpy(w * lr, &self.grad, &mut p.nodes[c * d..(c + 1) * d]);
                }
                loss
            }
            Combiner::Concat => {
                assert_eq!(
                    (ctx.len() + 1) * d,
                    p.out_width,
                    "concatenated context must fill the output width"
                );
                self.h
                    .extend_from_slice(&p.subgraphs[sid * d..(sid + 1) * d]);
                for &c in ctx {
                    self.h.extend_from_slice(&p.nodes[c * d..(c + 1) * d]);
                }
                let loss = self.output_step(p.output, p.out_width, pair.target, negatives, lr);
                axpy(
                    lr,
                    &self.grad[..d],
                    &mut p.subgraphs[sid * d..(sid + 1) * d],
                );
                for (k, &c) in ctx.iter().enumerate() {
                    let block = &self.grad[(k + 1) * d..(k + 2) * d];
                    axpy(lr, block, &mut p.nodes[c * d..(c + 1) * d]);
                }
                loss
            }
        }
    }
}

/// Applies one DBON update to `model` and returns the pair's loss −ℓ.
pub fn dbon_step(
    model: &mut EmbeddingModel,
    pair: &TrainingPair<'_>,
    negatives: &[usize],
    lr: f64,
) -> f64 {
    debug_assert_eq!(pair.mode, Mode::Dbon);
    Kernel::new().dbon(
        &mut model.params_mut(),
        pair.sid,
        pair.target,
        negatives,
        lr,
    )
}

/// Applies one DM update to `model` and returns the pair's loss −ℓ.
pub fn dm_step(
    model: &mut EmbeddingModel,
    pair: &TrainingPair<'_>,
    negatives: &[usize],
    lr: f64,
) -> f64 {
    debug_assert_eq!(pair.mode, Mode::Dm);
    let combiner = model.config.combiner;
    Kernel::new().dm(&mut model.params_mut(), pair, negatives, combiner, lr)
}
