// The two objectives and both DM combiners, plus a save/load round trip.

use subvec::embed::{train, Combiner, EmbeddingModel, Mode, TrainConfig};
use subvec::graph::{toy_network, toy_subgraphs};
use subvec::walk::{build_corpus, WalkConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_network();
    let set = toy_subgraphs(&g);
    let corpus = build_corpus(
        &set,
        &WalkConfig {
            length: 300,
            ..WalkConfig::default()
        },
    )?;
    for (mode, combiner) in [
        (Mode::Dbon, Combiner::Average),
        (Mode::Dm, Combiner::Average),
        (Mode::Dm, Combiner::Concat),
    ] {
        let cfg = TrainConfig {
            dim: 16,
            window: 3,
            mode,
            combiner,
            ..TrainConfig::default()
        };
        let (model, stats) = train(&corpus, &cfg)?;
        println!(
            "{mode:?}/{combiner:?}: output width {}, loss {:.3} -> {:.3}",
            model.output.cols(),
            stats.epoch_loss[0],
            stats.epoch_loss[stats.epoch_loss.len() - 1]
        );

        let dir = std::env::temp_dir().join(format!(
            "subvec-train-modes-{}-{mode:?}-{combiner:?}",
            std::process::id()
        ));
        model.save(&dir)?;
        let loaded = EmbeddingModel::load(&dir)?;
        assert_eq!(loaded, model);
        std::fs::remove_dir_all(&dir)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("train modes");
}
