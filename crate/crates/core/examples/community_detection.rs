// Communities from clustered ego-net vectors, scored against the planted
// partition.

use subvec::graph::{generate, Hops};
use subvec::tasks::{community_prf, detect_communities, CommunityConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (g, truth) = generate::planted_partition(3, 20, 0.4, 0.02, 5);
    let mut cfg = CommunityConfig::new(3);
    cfg.hops = Some(Hops::Two);
    cfg.embedding.walk.length = 500;
    cfg.embedding.train.dim = 32;
    let found = detect_communities(&g, &cfg)?;
    let prf = community_prf(&found.labels, &truth)?;
    println!(
        "{} nodes: precision {:.3}, recall {:.3}, F-1 {:.3}",
        g.node_count(),
        prf.precision,
        prf.recall,
        prf.f1
    );
    assert!(prf.f1 > 0.8);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("community detection");
}
