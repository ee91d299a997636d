//! Acceptance criteria. Each test prints one PASS/FAIL line to the real
//! stdout (not the captured test output) and then asserts.

mod common;

use std::io::Write;
use std::path::Path;
use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use clap::Parser;
use subvec::cli::{execute, Cli, MANIFEST_FILE};
use subvec::embed::{cosine, train, TrainConfig};
use subvec::graph::{generate, make_link_split, toy_network, toy_subgraphs, Hops, SubgraphSet};
use subvec::oracle::{exhaustive_corpus, verify_all, ShiftParams, DEFAULT_CONTEXT_CAP};
use subvec::tasks::{
    average_precision, community_prf, degree_product_ranking, detect_communities, map_score,
    mean_average_precision, precision_at_k, predict_links, random_ranking, CommunityConfig,
    LinkPredConfig,
};
use subvec::walk::{build_corpus, WalkConfig};

// One criterion at a time, so wall-clock budgets are not shared.
static GATE: Mutex<()> = Mutex::new(());

fn gate() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(name: &str, pass: bool, detail: &str, elapsed: Duration) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{verdict} [{name}] {detail} ({:.1}s)",
        elapsed.as_secs_f64()
    )
    .ok();
    out.flush().ok();
}

#[test]
fn local_proximity_ordering() {
    let _g = gate();
    let clock = Instant::now();
    let g = toy_network();
    let set = toy_subgraphs(&g);
    let mut wins = 0;
    for seed in 0..100 {
        let corpus = build_corpus(
            &set,
            &WalkConfig {
                seed,
                ..WalkConfig::default()
            },
        )
        .unwrap();
        let (m, _) = train(
            &corpus,
            &TrainConfig {
                seed,
                ..TrainConfig::default()
            },
        )
        .unwrap();
        if cosine(m.subgraph_vector(0), m.subgraph_vector(1))
            > cosine(m.subgraph_vector(0), m.subgraph_vector(2))
        {
            wins += 1;
        }
    }
    let elapsed = clock.elapsed();
    let pass = wins >= 95 && elapsed < Duration::from_secs(120);
    report(
        "local proximity",
        pass,
        &format!("cos(g1,g2) > cos(g1,g3) in {wins}/100 seeds, need >= 95 within 120s"),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn overlap_bound_on_exhaustive_corpora() {
    let _g = gate();
    let clock = Instant::now();
    let w = 2;
    let params = ShiftParams {
        negatives: 1.0,
        walk_length: w as f64,
    };
    let toy = toy_network();
    let mut cases = vec![("toy".to_string(), toy_subgraphs(&toy))];
    for seed in 0..20u64 {
        let n = 4 + (seed % 5) as usize;
        let g = generate::connected_gnp(n, 0.4, seed);
        cases.push((
            format!("random {seed} (n={n})"),
            SubgraphSet::ego_nets(&g, Hops::One),
        ));
    }
    let (mut pairs, mut conclusive, mut held, mut statement_held) = (0, 0, 0, 0);
    let mut failures = Vec::new();
    for (name, set) in &cases {
        let corpus = exhaustive_corpus(set, w, DEFAULT_CONTEXT_CAP).unwrap();
        for r in verify_all(set, &corpus, w, params, DEFAULT_CONTEXT_CAP).unwrap() {
            pairs += 1;
            if !r.conclusive {
                continue;
            }
            conclusive += 1;
            if r.holds_proof {
                held += 1;
            } else {
                failures.push(format!(
                    "{name} pair {}-{}: lhs {} < rhs {}",
                    r.a, r.b, r.lhs, r.rhs_proof
                ));
            }
            if r.holds_statement {
                statement_held += 1;
            }
        }
    }
    let elapsed = clock.elapsed();
    let pass = failures.is_empty() && conclusive > 0 && elapsed < Duration::from_secs(60);
    report(
        "overlap bound",
        pass,
        &format!(
            "{} sets, {pairs} pairs, {conclusive} conclusive, proof bound held {held}/{conclusive} \
             (statement bound {statement_held}/{conclusive}, informational)",
            cases.len()
        ),
        elapsed,
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn gradients_match_finite_differences() {
    let _g = gate();
    let clock = Instant::now();
    let results = common::worst_gradient_error(120, 2024, 1e-5);
    let elapsed = clock.elapsed();
    let pass = results.iter().all(|&(_, e)| e < 1e-4) && elapsed < Duration::from_secs(60);
    let detail: Vec<String> = results
        .iter()
        .map(|(n, e)| format!("{n} {e:.2e}"))
        .collect();
    report(
        "gradient oracle",
        pass,
        &format!(
            "120 configs per objective, worst relative error: {}",
            detail.join(", ")
        ),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn planted_partition_communities() {
    let _g = gate();
    let clock = Instant::now();
    let mut scores = Vec::new();
    for seed in 0..5 {
        let (g, truth) = generate::planted_partition(4, 30, 0.3, 0.02, seed);
        let mut cfg = CommunityConfig::new(4);
        cfg.hops = Some(Hops::Two);
        cfg.embedding.walk.seed = seed;
        cfg.embedding.train.seed = seed;
        let found = detect_communities(&g, &cfg).unwrap();
        scores.push(community_prf(&found.labels, &truth).unwrap().f1);
    }
    let elapsed = clock.elapsed();
    let pass = scores.iter().all(|&f| f >= 0.8) && elapsed < Duration::from_secs(120);
    let shown: Vec<String> = scores.iter().map(|f| format!("{f:.3}")).collect();
    report(
        "community detection",
        pass,
        &format!(
            "F-1 per seed [{}], need each >= 0.8 within 120s",
            shown.join(", ")
        ),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn link_prediction_beats_baselines() {
    let _g = gate();
    let clock = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for seed in 0..3 {
        let (g, _) = generate::planted_partition(4, 50, 0.15, 0.01, seed);
        let split = make_link_split(&g, 10.0, seed).unwrap();
        let mut cfg = LinkPredConfig::default();
        cfg.embedding.walk.seed = seed;
        cfg.embedding.train.seed = seed;
        let ours = map_score(&predict_links(&split, &cfg).unwrap());
        let degree = map_score(&degree_product_ranking(&split));
        let random = map_score(&random_ranking(&split, seed));
        ok &= ours > degree && random < 0.15 && ours >= 2.0 * random;
        lines.push(format!(
            "seed {seed}: {ours:.3} vs degree {degree:.3}, random {random:.3}"
        ));
    }
    let elapsed = clock.elapsed();
    let pass = ok && elapsed < Duration::from_secs(300);
    report(
        "link prediction",
        pass,
        &format!(
            "MAP {}; need > degree, >= 2x random, random < 0.15",
            lines.join("; ")
        ),
        elapsed,
    );
    assert!(pass);
}

#[test]
fn ranking_metric_examples() {
    let _g = gate();
    let clock = Instant::now();
    let checks = [
        precision_at_k(&[true, true, true], 3) == 1.0,
        precision_at_k(&[false, false, false, true], 3) == 0.0,
        precision_at_k(&[true, false, true], 3) == 2.0 / 3.0,
        average_precision(&[true, false, false]) == Some(1.0),
        average_precision(&[false, false, true]) == Some(1.0 / 3.0),
        (average_precision(&[true, false, true]).unwrap() - 5.0 / 6.0).abs() < 1e-15,
        average_precision(&[false, false]).is_none(),
        mean_average_precision(&[1.0, 1.0, 1.0]) == 1.0,
        mean_average_precision(&[1.0, 0.5]) == 0.75,
    ];
    let passed = checks.iter().filter(|&&c| c).count();
    let pass = passed == checks.len();
    report(
        "ranking metrics",
        pass,
        &format!("{passed}/{} hand-computed examples", checks.len()),
        clock.elapsed(),
    );
    assert!(pass);
}

fn read_fit(dir: &Path) -> f64 {
    let text = std::fs::read_to_string(dir.join("fit.txt")).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix("r_squared "))
        .and_then(|v| v.parse().ok())
        .expect("fit.txt has r_squared")
}

#[test]
fn runtime_linear_in_subgraph_count() {
    let _g = gate();
    let clock = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scal");
    let cli = Cli::try_parse_from([
        "subvec",
        "scalability",
        "--counts",
        "100,200,400,800",
        "--repeats",
        "3",
        "--dim",
        "64",
        "--epochs",
        "2",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let run = execute(&cli.command).unwrap();
    let table = std::fs::read_to_string(out.join("scalability.tsv")).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    let spreads: Vec<String> = rows
        .iter()
        .map(|r| r.rsplit('\t').next().unwrap().parse::<f64>().unwrap())
        .map(|s| format!("{s:.2}"))
        .collect();
    let r2 = read_fit(&out);
    let elapsed = clock.elapsed();
    let pass = rows.len() == 4 && r2 >= 0.95 && elapsed < Duration::from_secs(600);
    report(
        "scalability",
        pass,
        &format!(
            "{} grid rows, R^2 {r2:.4} (need >= 0.95); repeat spread per point [{}]",
            rows.len(),
            spreads.join(", ")
        ),
        elapsed,
    );
    assert!(pass, "{:?}", run.summary);
}

fn same_bytes(a: &Path, b: &Path, names: &[&str]) -> Vec<String> {
    names
        .iter()
        .filter(|n| std::fs::read(a.join(n)).unwrap() != std::fs::read(b.join(n)).unwrap())
        .map(|n| n.to_string())
        .collect()
}

#[test]
fn manifest_replay_is_byte_identical() {
    let _g = gate();
    let clock = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let graph = format!("{data}/toy.edges");
    let subgraphs = format!("{data}/toy.subgraphs");
    let mut differing = Vec::new();
    let variants: [&[&str]; 3] = [
        &["--subgraphs", &subgraphs],
        &["--subgraphs", &subgraphs, "--mode", "dm"],
        &[
            "--ego",
            "--mode",
            "dm",
            "--combiner",
            "concat",
            "--dim",
            "32",
        ],
    ];
    let files = ["subgraphs.txt", "nodes.txt", "output.txt", "model.json"];
    for (i, extra) in variants.iter().enumerate() {
        let first = dir.path().join(format!("run{i}"));
        let again = dir.path().join(format!("replay{i}"));
        let mut args = vec!["subvec", "embed", "--graph", &graph, "--seed", "5"];
        args.extend_from_slice(extra);
        let first_s = first.to_str().unwrap().to_owned();
        args.extend_from_slice(&["--out", &first_s]);
        execute(&Cli::try_parse_from(args).unwrap().command).unwrap();
        let manifest = first.join(MANIFEST_FILE);
        let replay = Cli::try_parse_from([
            "subvec",
            "replay",
            "--manifest",
            manifest.to_str().unwrap(),
            "--out",
            again.to_str().unwrap(),
            "--check",
        ])
        .unwrap();
        match execute(&replay.command) {
            Ok(_) => differing.extend(same_bytes(&first, &again, &files)),
            Err(e) => differing.push(format!("variant {i}: {e}")),
        }
    }
    let elapsed = clock.elapsed();
    let pass = differing.is_empty() && elapsed < Duration::from_secs(120);
    report(
        "replay determinism",
        pass,
        &format!("3 embed variants replayed, differing files: {differing:?}"),
        elapsed,
    );
    assert!(pass);
}
