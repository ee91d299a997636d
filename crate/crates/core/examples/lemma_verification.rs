// Exhaustive check of the overlap lower bound on the shifted log
// co-occurrence matrix, on the toy subgraphs.

use subvec::graph::{toy_network, toy_subgraphs};
use subvec::oracle::{
    exhaustive_corpus, verify_all, write_report, ShiftParams, DEFAULT_CONTEXT_CAP,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = toy_network();
    let set = toy_subgraphs(&g);
    let w = 2;
    let corpus = exhaustive_corpus(&set, w, DEFAULT_CONTEXT_CAP)?;
    let params = ShiftParams {
        negatives: 1.0,
        walk_length: w as f64,
    };
    let reports = verify_all(&set, &corpus, w, params, DEFAULT_CONTEXT_CAP)?;
    let mut table = Vec::new();
    write_report(&mut table, &reports)?;
    print!("{}", String::from_utf8(table)?);
    assert!(reports.iter().all(|r| r.conclusive && r.holds_proof));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lemma verification");
}
