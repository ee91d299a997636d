use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use subvec::cli::RunManifest;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subvec"));
    c.env_remove("SUBVEC_SEED");
    c
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn manifest(dir: &Path) -> RunManifest {
    RunManifest::read(&dir.join("manifest.json")).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn embed_defaults_are_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("m");
    let o = run(bin()
        .args([
            "embed",
            "--graph",
            &data("toy.edges"),
            "--subgraphs",
            &data("toy.subgraphs"),
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(&out);
    assert_eq!(m.command, "embed");
    assert_eq!(m.execution, "single-threaded");
    assert_eq!(m.inputs.len(), 2);
    let args = serde_json::to_value(&m.args).unwrap();
    assert_eq!(args["embed"]["train"]["dim"], 128);
    assert_eq!(args["embed"]["walk"]["walk_length"], 1000);
    let header = std::fs::read_to_string(out.join("subgraphs.txt")).unwrap();
    assert_eq!(header.lines().next(), Some("3 128"));
}

#[test]
fn concat_widens_output_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("m");
    let o = run(bin()
        .args([
            "embed",
            "--graph",
            &data("toy.edges"),
            "--ego",
            "--mode",
            "dm",
            "--combiner",
            "concat",
        ])
        .args([
            "--dim",
            "8",
            "--window",
            "3",
            "--walk-length",
            "50",
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0);
    let table = std::fs::read_to_string(out.join("output.txt")).unwrap();
    assert_eq!(table.lines().next(), Some("11 32"));
}

#[test]
fn seed_falls_back_to_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("m");
    let o = run(bin()
        .env("SUBVEC_SEED", "42")
        .args([
            "embed",
            "--graph",
            &data("toy.edges"),
            "--ego",
            "--walk-length",
            "20",
            "--dim",
            "4",
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0);
    assert_eq!(manifest(&out).seed, 42);
}

#[test]
fn usage_errors_exit_2_before_writing() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("never");
    let cases: [&[&str]; 5] = [
        &["embed", "--graph", "x", "--ego", "--combiner", "concat"],
        &["embed", "--graph", "x", "--ego", "--hops", "3"],
        &["embed", "--graph", "x"],
        &["linkpred", "--graph", "x", "--hide-percent", "100"],
        &["communities", "--graph", "x", "--k", "1"],
    ];
    for args in cases {
        let o = run(bin().args(args).arg("--out").arg(&out));
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!out.exists(), "{args:?} wrote output");
    }
}

#[test]
fn data_errors_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(tmp.path(), "bad.edges", "a b\nb c d\n");
    let o = run(bin()
        .args(["embed", "--ego", "--graph"])
        .arg(&bad)
        .arg("--out")
        .arg(tmp.path().join("o")));
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = run(bin()
        .args(["embed", "--ego", "--graph", "/no/such/file", "--out"])
        .arg(tmp.path().join("p")));
    assert_eq!(code(&o), 3);

    let unknown = write(tmp.path(), "s.txt", "g1 a zz\n");
    let o = run(bin()
        .args(["embed", "--graph", &data("toy.edges"), "--subgraphs"])
        .arg(&unknown)
        .arg("--out")
        .arg(tmp.path().join("q")));
    assert_eq!(code(&o), 3);
}

fn two_cliques(dir: &Path) -> (PathBuf, PathBuf) {
    let mut edges = String::new();
    let mut truth = String::new();
    for block in 0..2 {
        for u in 0..6 {
            truth.push_str(&format!("n{block}_{u} c{block}\n"));
            for v in u + 1..6 {
                edges.push_str(&format!("n{block}_{u} n{block}_{v}\n"));
            }
        }
    }
    edges.push_str("n0_0 n1_0\n");
    (
        write(dir, "g.edges", &edges),
        write(dir, "truth.txt", &truth),
    )
}

#[test]
fn communities_output_has_assignment_and_footer() {
    let tmp = tempfile::tempdir().unwrap();
    let (g, truth) = two_cliques(tmp.path());
    let out = tmp.path().join("c");
    let o = run(bin()
        .args([
            "communities",
            "--k",
            "2",
            "--hops",
            "1",
            "--walk-length",
            "200",
            "--dim",
            "16",
            "--graph",
        ])
        .arg(&g)
        .arg("--truth")
        .arg(&truth)
        .arg("--out")
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("communities.txt")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12 + 3);
    for l in &lines[..12] {
        let toks: Vec<&str> = l.split(' ').collect();
        assert_eq!(toks.len(), 2);
        assert!(toks[1].parse::<usize>().unwrap() < 2);
    }
    for (l, key) in lines[12..].iter().zip(["precision", "recall", "f1"]) {
        let (k, v) = l.split_once(": ").unwrap();
        assert_eq!(k, key);
        assert!((0.0..=1.0).contains(&v.parse::<f64>().unwrap()));
    }
}

#[test]
fn linkpred_writes_rankings_and_map_line() {
    let tmp = tempfile::tempdir().unwrap();
    let (g, _) = two_cliques(tmp.path());
    let out = tmp.path().join("l");
    let o = run(bin()
        .args([
            "linkpred",
            "--hide-percent",
            "20",
            "--walk-length",
            "100",
            "--dim",
            "8",
            "--graph",
        ])
        .arg(&g)
        .arg("--out")
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let map = std::fs::read_to_string(out.join("map.txt")).unwrap();
    let first = map.lines().next().unwrap();
    let value: f64 = first.strip_prefix("MAP ").unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&value));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("MAP "));
    let hidden = std::fs::read_to_string(out.join("hidden.edges"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(hidden, 6);
    let rankings = std::fs::read_to_string(out.join("rankings.txt")).unwrap();
    assert!(rankings.lines().count() >= 2);
}

#[test]
fn sweep_table_has_one_row_per_value() {
    let tmp = tempfile::tempdir().unwrap();
    let (g, truth) = two_cliques(tmp.path());
    let out = tmp.path().join("s");
    let o = run(bin()
        .args([
            "sweep",
            "--k",
            "2",
            "--param",
            "dim",
            "--values",
            "4,8,16",
            "--walk-length",
            "100",
            "--graph",
        ])
        .arg(&g)
        .arg("--truth")
        .arg(&truth)
        .arg("--out")
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(out.join("sweep.tsv")).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows[0], "param\tvalue\tprecision\trecall\tf1");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("dim\t4\t"));
}

#[test]
fn scalability_single_point_and_hops_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("one");
    let o = run(bin()
        .args([
            "scalability",
            "--counts",
            "20",
            "--repeats",
            "1",
            "--walk-length",
            "50",
            "--dim",
            "8",
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(out.join("scalability.tsv")).unwrap();
    assert_eq!(table.lines().count(), 2);
    assert!(!out.join("fit.txt").exists());
    assert!(manifest(&out).outputs.iter().all(|f| !f.deterministic));

    let out = tmp.path().join("hops");
    let o = run(bin()
        .args([
            "scalability",
            "--grid",
            "hops",
            "--counts",
            "30",
            "--repeats",
            "1",
            "--walk-length",
            "50",
            "--dim",
            "8",
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(out.join("scalability.tsv")).unwrap();
    assert_eq!(table.lines().count(), 3);
}

#[test]
fn verify_writes_bound_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("v");
    let o = run(bin()
        .args([
            "verify",
            "--graph",
            &data("toy.edges"),
            "--subgraphs",
            &data("toy.subgraphs"),
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0);
    let table = std::fs::read_to_string(out.join("lemma.tsv")).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(
        rows[0],
        "pair\tx\tlhs\trhs_statement\trhs_proof\tholds_statement\tholds_proof\tconclusive"
    );
    assert_eq!(rows.len(), 4);
}

#[test]
fn replay_rejects_changed_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let g = write(tmp.path(), "g.edges", "a b\nb c\nc a\n");
    let out = tmp.path().join("m");
    let o = run(bin()
        .args([
            "embed",
            "--ego",
            "--walk-length",
            "20",
            "--dim",
            "4",
            "--graph",
        ])
        .arg(&g)
        .arg("--out")
        .arg(&out));
    assert_eq!(code(&o), 0);
    std::fs::write(&g, "a b\nb c\n").unwrap();
    let o = run(bin()
        .args(["replay", "--manifest"])
        .arg(out.join("manifest.json"))
        .arg("--out")
        .arg(tmp.path().join("r")));
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("changed"));
}

#[test]
fn parallel_run_is_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("p");
    let o = run(bin()
        .args([
            "embed",
            "--graph",
            &data("toy.edges"),
            "--ego",
            "--parallel",
            "3",
            "--walk-length",
            "100",
            "--dim",
            "8",
            "--out",
        ])
        .arg(&out));
    assert_eq!(code(&o), 0);
    let m = manifest(&out);
    assert_eq!((m.threads, m.execution.as_str()), (3, "parallel"));
    let o = run(bin()
        .args(["replay", "--check", "--manifest"])
        .arg(out.join("manifest.json"))
        .arg("--out")
        .arg(tmp.path().join("r")));
    assert_eq!(code(&o), 2);
}
