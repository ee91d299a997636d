// Random walks that never leave their subgraph.

use subvec::graph::{toy_network, toy_subgraphs};
use subvec::walk::{build_corpus, WalkConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_network();
    let set = toy_subgraphs(&g);
    let cfg = WalkConfig {
        length: 12,
        walks_per_subgraph: 2,
        seed: 3,
        threads: 1,
    };
    let corpus = build_corpus(&set, &cfg)?;
    let mut dump = Vec::new();
    corpus.write_dump(&mut dump, Some(&g))?;
    print!("{}", String::from_utf8(dump)?);

    for walk in corpus.walks() {
        let sg = set.get(walk.sid).expect("walk of a known subgraph");
        assert!(walk.seq.iter().all(|&v| sg.contains(v)));
    }
    let parallel = build_corpus(&set, &WalkConfig { threads: 4, ..cfg })?;
    assert_eq!(parallel, corpus);
    println!(
        "{} walks, {} tokens; parallel generation gives the same corpus",
        corpus.len(),
        corpus.token_count()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("walk corpus");
}
