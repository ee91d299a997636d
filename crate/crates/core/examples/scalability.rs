// Embedding time grows linearly with the number of subgraphs.

use std::time::Instant;

use subvec::cli::linear_fit;
use subvec::embed::{train, TrainConfig};
use subvec::graph::{generate, Hops, NodeIdx, SubgraphSet};
use subvec::walk::{build_corpus, WalkConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate::connected_gnp(400, 8.0 / 399.0, 1);
    let walk = WalkConfig {
        length: 200,
        ..WalkConfig::default()
    };
    let cfg = TrainConfig {
        dim: 32,
        epochs: 2,
        ..TrainConfig::default()
    };
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for n in [50, 100, 200, 400] {
        let centers: Vec<NodeIdx> = (0..n as NodeIdx).collect();
        let set = SubgraphSet::ego_nets_of(&g, &centers, Hops::Two)?;
        let clock = Instant::now();
        let corpus = build_corpus(&set, &walk)?;
        train(&corpus, &cfg)?;
        let secs = clock.elapsed().as_secs_f64();
        println!("{n} ego-nets: {secs:.3}s");
        xs.push(n as f64);
        ys.push(secs);
    }
    if let Some(fit) = linear_fit(&xs, &ys) {
        println!(
            "seconds per ego-net {:.5}, R^2 {:.3}",
            fit.slope, fit.r_squared
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scalability");
}
