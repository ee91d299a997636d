// Community F-1 as the embedding dimension and walk length vary.

use subvec::graph::{generate, Hops};
use subvec::tasks::{community_prf, detect_communities, CommunityConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (g, truth) = generate::planted_partition(3, 15, 0.4, 0.03, 9);
    let base = {
        let mut cfg = CommunityConfig::new(3);
        cfg.hops = Some(Hops::Two);
        cfg.embedding.walk.length = 300;
        cfg.embedding.train.dim = 16;
        cfg
    };
    println!("param\tvalue\tf1");
    for dim in [4, 16, 64] {
        let mut cfg = base.clone();
        cfg.embedding.train.dim = dim;
        let f1 = community_prf(&detect_communities(&g, &cfg)?.labels, &truth)?.f1;
        println!("dim\t{dim}\t{f1:.3}");
    }
    for length in [50, 200, 800] {
        let mut cfg = base.clone();
        cfg.embedding.walk.length = length;
        let f1 = community_prf(&detect_communities(&g, &cfg)?.labels, &truth)?.f1;
        println!("walk-length\t{length}\t{f1:.3}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sensitivity sweep");
}
