mod graph_basics {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/graph_basics.rs"
    ));
}

#[test]
fn graph_basics_runs() {
    graph_basics::run_example().expect("graph basics example should run");
}

mod walk_corpus {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/walk_corpus.rs"
    ));
}

#[test]
fn walk_corpus_runs() {
    walk_corpus::run_example().expect("walk corpus example should run");
}

mod toy_local_proximity {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/toy_local_proximity.rs"
    ));
}

#[test]
fn toy_local_proximity_runs() {
    toy_local_proximity::run_example().expect("toy local proximity example should run");
}

mod train_modes {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/train_modes.rs"
    ));
}

#[test]
fn train_modes_runs() {
    train_modes::run_example().expect("train modes example should run");
}

mod community_detection {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/community_detection.rs"
    ));
}

#[test]
fn community_detection_runs() {
    community_detection::run_example().expect("community detection example should run");
}

mod link_prediction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/link_prediction.rs"
    ));
}

#[test]
fn link_prediction_runs() {
    link_prediction::run_example().expect("link prediction example should run");
}

mod lemma_verification {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/lemma_verification.rs"
    ));
}

#[test]
fn lemma_verification_runs() {
    lemma_verification::run_example().expect("lemma verification example should run");
}

mod sensitivity_sweep {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sensitivity_sweep.rs"
    ));
}

#[test]
fn sensitivity_sweep_runs() {
    sensitivity_sweep::run_example().expect("sensitivity sweep example should run");
}

mod scalability {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/scalability.rs"
    ));
}

#[test]
fn scalability_runs() {
    scalability::run_example().expect("scalability example should run");
}

mod manifest_replay {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/manifest_replay.rs"
    ));
}

#[test]
fn manifest_replay_runs() {
    manifest_replay::run_example().expect("manifest replay example should run");
}
