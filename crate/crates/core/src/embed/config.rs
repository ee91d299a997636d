use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Training objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Distributed bag of nodes: predict each walk node from the subgraph
    /// vector alone.
    Dbon,
    /// Distributed memory: predict a walk node from its window context
    /// combined with the subgraph vector.
    Dm,
}

/// How DM combines the context vectors with the subgraph vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    Average,
    Concat,
}

/// Which walk positions around the target form the DM context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowShape {
    /// Up to `window` nodes on each side.
    Symmetric,
    /// The `window` nodes before the target.
    Preceding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub dim: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub lr0: f64,
    pub lr_min: f64,
    pub mode: Mode,
    pub combiner: Combiner,
    pub window_shape: WindowShape,
    pub seed: u64,
    /// 1 trains deterministically; more threads run lock-free updates whose
    /// result depends on scheduling.
    pub threads: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 128,
            window: 5,
            negatives: 5,
            epochs: 10,
            lr0: 0.025,
            lr_min: 1e-4,
            mode: Mode::Dbon,
            combiner: Combiner::Average,
            window_shape: WindowShape::Symmetric,
            seed: 0,
            threads: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::domain(format!("invalid training config: {m}")));
        if self.dim == 0 {
            return fail("dim must be at least 1");
        }
        if self.window == 0 {
            return fail("window must be at least 1");
        }
        if self.negatives == 0 {
            return fail("negatives must be at least 1");
        }
        if !(self.lr_min > 0.0 && self.lr0 > self.lr_min && self.lr0.is_finite()) {
            return fail("need lr0 > lr_min > 0");
        }
        if self.threads == 0 {
            return fail("threads must be at least 1");
        }
        if self.combiner == Combiner::Concat && self.mode != Mode::Dm {
            return fail("the concat combiner only applies to DM");
        }
        Ok(())
    }

    /// Width of the output matrix rows: `dim`, or `dim * (window + 1)` for
    /// concatenating DM.
    pub fn output_width(&self) -> usize {
        match (self.mode, self.combiner) {
            (Mode::Dm, Combiner::Concat) => self.dim * (self.window + 1),
            _ => self.dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = TrainConfig::default();
        c.validate().unwrap();
        assert_eq!((c.dim, c.window, c.negatives, c.epochs), (128, 5, 5, 10));
        assert_eq!(c.output_width(), 128);
    }

    #[test]
    fn concat_width() {
        let c = TrainConfig {
            mode: Mode::Dm,
            combiner: Combiner::Concat,
            dim: 16,
            window: 3,
            ..TrainConfig::default()
        };
        c.validate().unwrap();
        assert_eq!(c.output_width(), 64);
    }

    #[test]
    fn rejects_invalid() {
        let base = TrainConfig::default();
        for bad in [
            TrainConfig { dim: 0, ..base },
            TrainConfig { window: 0, ..base },
            TrainConfig {
                negatives: 0,
                ..base
            },
            TrainConfig { lr0: 1e-5, ..base },
            TrainConfig {
                lr_min: 0.0,
                ..base
            },
            TrainConfig {
                combiner: Combiner::Concat,
                ..base
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }
}
