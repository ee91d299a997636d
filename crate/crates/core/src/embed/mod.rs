//! Subgraph embedding training: the DBON and DM objectives optimized by SGD
//! with negative sampling over a walk corpus.

mod config;
mod model;
mod noise;
pub mod objective;
mod trainer;

pub use config::{Combiner, Mode, TrainConfig, WindowShape};
pub use model::{EmbeddingModel, Matrix};
pub use noise::{NoiseTable, NOISE_POWER};
pub use objective::{dbon_step, dm_step, sigmoid, TrainingPair};
pub use trainer::{initial_model, train, TrainStats};

/// Cosine similarity; 0 when either vector is all zeros.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "cosine of vectors with different lengths");
    let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    if aa == 0.0 || bb == 0.0 {
        return 0.0;
    }
    (ab / (aa.sqrt() * bb.sqrt())).clamp(-1.0, 1.0)
}
