// Hide edges, rank non-neighbors by ego-net similarity and compare MAP with
// two baselines.

use subvec::graph::{generate, make_link_split};
use subvec::tasks::{
    degree_product_ranking, map_score, precision_at_k, predict_links, random_ranking,
    LinkPredConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (g, _) = generate::planted_partition(3, 30, 0.25, 0.01, 2);
    let split = make_link_split(&g, 10.0, 2)?;
    let mut cfg = LinkPredConfig::default();
    cfg.embedding.walk.length = 500;
    cfg.embedding.train.dim = 32;
    let ranking = predict_links(&split, &cfg)?;
    let p5: f64 = ranking
        .queries
        .iter()
        .map(|q| precision_at_k(&q.hits(), 5))
        .sum::<f64>()
        / ranking.queries.len() as f64;
    println!(
        "{} hidden edges, {} queries",
        split.hidden_edges.len(),
        ranking.queries.len()
    );
    println!(
        "ego-net cosine   MAP {:.3}  P@5 {p5:.3}",
        map_score(&ranking)
    );
    println!(
        "degree product   MAP {:.3}",
        map_score(&degree_product_ranking(&split))
    );
    println!(
        "random scores    MAP {:.3}",
        map_score(&random_ranking(&split, 2))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("link prediction");
}
