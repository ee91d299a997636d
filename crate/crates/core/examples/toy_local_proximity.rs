// Subgraphs that share more structure get closer vectors: on the toy
// network g1 and g2 overlap in three nodes, g1 and g3 only in `e`.

use subvec::embed::{cosine, train, TrainConfig};
use subvec::graph::{toy_network, toy_subgraphs};
use subvec::walk::{build_corpus, WalkConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_network();
    let set = toy_subgraphs(&g);
    let mut wins = 0;
    let seeds = 10;
    for seed in 0..seeds {
        let corpus = build_corpus(
            &set,
            &WalkConfig {
                seed,
                ..WalkConfig::default()
            },
        )?;
        let (model, _) = train(
            &corpus,
            &TrainConfig {
                seed,
                ..TrainConfig::default()
            },
        )?;
        let near = cosine(model.subgraph_vector(0), model.subgraph_vector(1));
        let far = cosine(model.subgraph_vector(0), model.subgraph_vector(2));
        println!("seed {seed}: cos(g1,g2) = {near:.3}, cos(g1,g3) = {far:.3}");
        if near > far {
            wins += 1;
        }
    }
    println!("g1 closer to g2 than to g3 in {wins}/{seeds} seeds");
    assert!(wins >= 9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("toy proximity");
}
