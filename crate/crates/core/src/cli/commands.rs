use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use super::manifest::{sha256_file, FileDigest, OutputFile, RunManifest};
use super::{
    ego_embedding, usage, Command, CommunityArgs, EmbedArgs, LinkPredArgs, ReplayArgs, RunArgs,
    ScalabilityArgs, ScalabilityGrid, SweepArgs, SweepParam, VerifyArgs,
};
use crate::embed::train;
use crate::error::{Error, Result};
use crate::graph::{
    generate, make_link_split, parse_communities, parse_edge_list, parse_subgraph_set, Graph, Hops,
    NodeIdx, SubgraphSet,
};
use crate::oracle::{exhaustive_corpus, verify_all, write_report, ShiftParams};
use crate::tasks::{
    community_prf, degree_product_ranking, detect_communities, map_score, predict_links,
    random_ranking, CommunityConfig, LinkPredConfig,
};
use crate::walk::build_corpus;

/// A finished command: its manifest and the lines to show the user.
#[derive(Debug, Clone)]
pub struct Run {
    pub manifest: RunManifest,
    pub summary: Vec<String>,
}

/// Files a command produced, relative to its output directory.
#[derive(Default)]
struct Outcome {
    outputs: Vec<(String, bool)>,
    summary: Vec<String>,
}

impl Outcome {
    fn file(&mut self, name: &str) {
        self.outputs.push((name.to_owned(), true));
    }

    fn timing_file(&mut self, name: &str) {
        self.outputs.push((name.to_owned(), false));
    }

    fn say(&mut self, line: impl Into<String>) {
        let line = line.into();
        log::info!("{line}");
        self.summary.push(line);
    }
}

/// Validates, runs and records `cmd`.
pub fn execute(cmd: &Command) -> Result<Run> {
    match cmd {
        Command::Replay(args) => replay(args),
        _ => execute_recorded(cmd, None),
    }
}

fn execute_recorded(cmd: &Command, replay_of: Option<PathBuf>) -> Result<Run> {
    cmd.validate()?;
    let mut cmd = cmd.clone();
    absolutize_inputs(&mut cmd)?;
    let run = cmd
        .run_args()
        .expect("recorded commands carry run args")
        .clone();
    let inputs = cmd
        .inputs()
        .into_iter()
        .map(|path| {
            let sha256 = sha256_file(&path)?;
            Ok(FileDigest { path, sha256 })
        })
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(&run.out)?;

    let started_unix_secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let clock = Instant::now();
    let outcome = match &cmd {
        Command::Embed(a) => run_embed(a)?,
        Command::Communities(a) => run_communities(a)?,
        Command::Linkpred(a) => run_linkpred(a)?,
        Command::Sweep(a) => run_sweep(a)?,
        Command::Scalability(a) => run_scalability(a)?,
        Command::Verify(a) => run_verify(a)?,
        Command::Replay(_) => unreachable!("replay is dispatched separately"),
    };
    let wall_seconds = clock.elapsed().as_secs_f64();

    let outputs = outcome
        .outputs
        .iter()
        .map(|(name, deterministic)| {
            Ok(OutputFile {
                path: PathBuf::from(name),
                sha256: sha256_file(&run.out.join(name))?,
                deterministic: *deterministic,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_owned(),
        command: cmd.name().to_owned(),
        seed: run.seed,
        threads: run.threads(),
        execution: if run.threads() == 1 {
            "single-threaded".into()
        } else {
            "parallel".into()
        },
        args: cmd,
        inputs,
        outputs,
        started_unix_secs,
        wall_seconds,
        replay_of,
    };
    manifest.write(&run.out)?;
    Ok(Run {
        manifest,
        summary: outcome.summary,
    })
}

fn absolutize_inputs(cmd: &mut Command) -> Result<()> {
    fn abs(p: &mut PathBuf) -> Result<()> {
        *p = fs::canonicalize(&*p).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", p.display()),
            ))
        })?;
        Ok(())
    }
    match cmd {
        Command::Embed(a) => {
            abs(&mut a.graph)?;
            if let Some(s) = a.subgraphs.as_mut() {
                abs(s)?;
            }
        }
        Command::Communities(a) => {
            abs(&mut a.graph)?;
            if let Some(t) = a.truth.as_mut() {
                abs(t)?;
            }
        }
        Command::Linkpred(a) => abs(&mut a.graph)?,
        Command::Sweep(a) => {
            abs(&mut a.graph)?;
            abs(&mut a.truth)?;
        }
        Command::Scalability(a) => {
            if let Some(g) = a.graph.as_mut() {
                abs(g)?;
            }
        }
        Command::Verify(a) => {
            abs(&mut a.graph)?;
            abs(&mut a.subgraphs)?;
        }
        Command::Replay(a) => abs(&mut a.manifest)?,
    }
    Ok(())
}

/// Reruns the command recorded in `args.manifest` single-threaded into
/// `args.out`.
pub fn replay(args: &ReplayArgs) -> Result<Run> {
    let recorded = RunManifest::read(&args.manifest)?;
    if matches!(recorded.args, Command::Replay(_)) {
        return Err(Error::domain("manifest records a replay, not a command"));
    }
    if args.check && !recorded.is_single_threaded() {
        return Err(usage(
            "the recorded run was parallel, so its outputs cannot be checked",
        ));
    }
    for input in &recorded.inputs {
        let now = sha256_file(&input.path)?;
        if now != input.sha256 {
            return Err(Error::domain(format!(
                "input {} changed since the recorded run",
                input.path.display()
            )));
        }
    }
    let mut cmd = recorded.args.clone();
    let run = cmd
        .run_args_mut()
        .expect("recorded commands carry run args");
    run.out = args.out.clone();
    run.parallel = None;
    let mut result = execute_recorded(&cmd, Some(args.manifest.clone()))?;
    if args.check {
        let mut checked = 0;
        for old in recorded.outputs.iter().filter(|o| o.deterministic) {
            let new = result
                .manifest
                .outputs
                .iter()
                .find(|o| o.path == old.path)
                .ok_or_else(|| {
                    Error::Invariant(format!("replay did not write {}", old.path.display()))
                })?;
            if new.sha256 != old.sha256 {
                return Err(Error::Invariant(format!(
                    "replayed {} differs from the recorded output",
                    old.path.display()
                )));
            }
            checked += 1;
        }
        result.summary.push(format!(
            "replay check: {checked} deterministic outputs identical"
        ));
    }
    Ok(result)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let parsed = parse_edge_list(BufReader::new(File::open(path)?))?;
    if parsed.duplicate_edges > 0 {
        log::warn!(
            "{}: merged {} duplicate edges",
            path.display(),
            parsed.duplicate_edges
        );
    }
    Ok(parsed.graph)
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn run_embed(a: &EmbedArgs) -> Result<Outcome> {
    let out_dir = &a.run.out;
    let graph = load_graph(&a.graph)?;
    let set = match &a.subgraphs {
        Some(path) => parse_subgraph_set(BufReader::new(File::open(path)?), &graph)?,
        None => {
            let hops = a
                .hops
                .resolve()
                .unwrap_or_else(|| Hops::default_for(&graph));
            SubgraphSet::ego_nets(&graph, hops)
        }
    };
    let emb = ego_embedding(&a.walk, &a.train, &a.run)?;
    let corpus = build_corpus(&set, &emb.walk)?;
    let (mut model, stats) = train(&corpus, &emb.train)?;
    model.corpus_seed = Some(emb.walk.seed);
    model.save(out_dir)?;

    let mut o = Outcome::default();
    for f in ["subgraphs.txt", "nodes.txt", "output.txt", "model.json"] {
        o.file(f);
    }
    let mut w = create(out_dir, "names.txt")?;
    for sid in 0..set.len() {
        writeln!(w, "{sid}\t{}", set.name(sid))?;
    }
    w.flush()?;
    o.file("names.txt");
    let mut w = create(out_dir, "labels.txt")?;
    for &v in model.vocab() {
        writeln!(w, "{v}\t{}", graph.label(v))?;
    }
    w.flush()?;
    o.file("labels.txt");
    let mut w = create(out_dir, "loss.tsv")?;
    writeln!(w, "epoch\tloss")?;
    for (e, l) in stats.epoch_loss.iter().enumerate() {
        writeln!(w, "{}\t{l}", e + 1)?;
    }
    w.flush()?;
    o.file("loss.tsv");
    if a.dump_walks {
        let mut w = create(out_dir, "walks.txt")?;
        corpus.write_dump(&mut w, Some(&graph))?;
        w.flush()?;
        o.file("walks.txt");
    }
    o.say(format!(
        "embedded {} subgraphs over {} nodes: dim {}, output width {}, {} tokens",
        set.len(),
        model.vocab().len(),
        model.dim(),
        model.output.cols(),
        corpus.token_count()
    ));
    if let Some(l) = stats.epoch_loss.last() {
        o.say(format!("final epoch loss {l:.6}"));
    }
    Ok(o)
}

fn community_config(
    k: usize,
    hops: Option<Hops>,
    walk: &super::WalkArgs,
    train: &super::TrainArgs,
    run: &RunArgs,
) -> Result<CommunityConfig> {
    let mut cfg = CommunityConfig::new(k);
    cfg.hops = hops;
    cfg.embedding = ego_embedding(walk, train, run)?;
    Ok(cfg)
}

fn run_communities(a: &CommunityArgs) -> Result<Outcome> {
    let graph = load_graph(&a.graph)?;
    let truth = match &a.truth {
        Some(p) => Some(parse_communities(BufReader::new(File::open(p)?), &graph)?),
        None => None,
    };
    let cfg = community_config(a.k, a.hops.resolve(), &a.walk, &a.train, &a.run)?;
    let assignment = detect_communities(&graph, &cfg)?;

    let mut o = Outcome::default();
    let mut w = create(&a.run.out, "communities.txt")?;
    for (v, c) in assignment.labels.iter().enumerate() {
        writeln!(w, "{} {c}", graph.label(v as NodeIdx))?;
    }
    if let Some(truth) = truth {
        let prf = community_prf(&assignment.labels, &truth)?;
        for (key, value) in [
            ("precision", prf.precision),
            ("recall", prf.recall),
            ("f1", prf.f1),
        ] {
            writeln!(w, "{key}: {value}")?;
            o.say(format!("{key}: {value:.4}"));
        }
    }
    w.flush()?;
    o.file("communities.txt");
    o.say(format!(
        "{} nodes in {} clusters",
        graph.node_count(),
        assignment.k
    ));
    Ok(o)
}

fn run_linkpred(a: &LinkPredArgs) -> Result<Outcome> {
    let graph = load_graph(&a.graph)?;
    let split = make_link_split(&graph, a.hide_percent, a.run.seed)?;
    if split.shortfall {
        log::warn!(
            "hid {} of {} requested edges without disconnecting the graph",
            split.hidden_edges.len(),
            split.target
        );
    }
    let cfg = LinkPredConfig {
        hops: a.hops.resolve(),
        embedding: ego_embedding(&a.walk, &a.train, &a.run)?,
    };
    let ranking = predict_links(&split, &cfg)?;
    let ours = map_score(&ranking);
    let degree = map_score(&degree_product_ranking(&split));
    let random = map_score(&random_ranking(&split, a.run.seed));

    let mut o = Outcome::default();
    let out = &a.run.out;
    let mut w = create(out, "rankings.txt")?;
    ranking.write(&mut w, &graph)?;
    w.flush()?;
    o.file("rankings.txt");
    let mut w = create(out, "hidden.edges")?;
    for &(u, v) in &split.hidden_edges {
        writeln!(w, "{} {}", graph.label(u), graph.label(v))?;
    }
    w.flush()?;
    o.file("hidden.edges");
    let mut w = create(out, "map.txt")?;
    writeln!(w, "MAP {ours}")?;
    writeln!(w, "MAP_degree_product {degree}")?;
    writeln!(w, "MAP_random {random}")?;
    writeln!(w, "queries {}", ranking.queries.len())?;
    writeln!(w, "hidden_edges {}", split.hidden_edges.len())?;
    writeln!(w, "shortfall {}", split.shortfall)?;
    w.flush()?;
    o.file("map.txt");
    o.say(format!("MAP {ours:.4}"));
    o.say(format!("MAP_degree_product {degree:.4}"));
    o.say(format!("MAP_random {random:.4}"));
    Ok(o)
}

fn run_sweep(a: &SweepArgs) -> Result<Outcome> {
    let graph = load_graph(&a.graph)?;
    let truth = parse_communities(BufReader::new(File::open(&a.truth)?), &graph)?;
    let name = match a.param {
        SweepParam::WalkLength => "walk-length",
        SweepParam::Dim => "dim",
    };
    let mut o = Outcome::default();
    let mut w = create(&a.run.out, "sweep.tsv")?;
    writeln!(w, "param\tvalue\tprecision\trecall\tf1")?;
    for &value in &a.values {
        let mut walk = a.walk.clone();
        let mut train = a.train.clone();
        match a.param {
            SweepParam::WalkLength => walk.walk_length = value,
            SweepParam::Dim => train.dim = value,
        }
        let cfg = community_config(a.k, a.hops.resolve(), &walk, &train, &a.run)?;
        let assignment = detect_communities(&graph, &cfg)?;
        let prf = community_prf(&assignment.labels, &truth)?;
        writeln!(
            w,
            "{name}\t{value}\t{}\t{}\t{}",
            prf.precision, prf.recall, prf.f1
        )?;
        o.say(format!("{name} {value}: f1 {:.4}", prf.f1));
    }
    w.flush()?;
    o.file("sweep.tsv");
    Ok(o)
}

/// Least-squares line through `(x, y)` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// 1 when the points are exactly collinear.
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

fn run_scalability(a: &ScalabilityArgs) -> Result<Outcome> {
    let largest = a.counts.iter().copied().max().unwrap_or(1);
    let graph = match &a.graph {
        Some(p) => load_graph(p)?,
        None => {
            let n = largest.max(2);
            generate::connected_gnp(n, (8.0 / (n - 1) as f64).min(1.0), a.run.seed)
        }
    };
    let emb = ego_embedding(&a.walk, &a.train, &a.run)?;
    let grid: Vec<(String, SubgraphSet)> = match a.grid {
        ScalabilityGrid::Counts => {
            let hops = a
                .hops
                .resolve()
                .unwrap_or_else(|| Hops::default_for(&graph));
            a.counts
                .iter()
                .map(|&n| {
                    if n > graph.node_count() {
                        return Err(Error::domain(format!(
                            "{n} ego-nets requested from a graph with {} nodes",
                            graph.node_count()
                        )));
                    }
                    let centers: Vec<NodeIdx> = (0..n as NodeIdx).collect();
                    Ok((
                        n.to_string(),
                        SubgraphSet::ego_nets_of(&graph, &centers, hops)?,
                    ))
                })
                .collect::<Result<_>>()?
        }
        ScalabilityGrid::Hops => [Hops::One, Hops::Two]
            .into_iter()
            .map(|h| (h.count().to_string(), SubgraphSet::ego_nets(&graph, h)))
            .collect(),
    };

    let mut o = Outcome::default();
    let mut w = create(&a.run.out, "scalability.tsv")?;
    writeln!(
        w,
        "grid\tvalue\tsubgraphs\ttokens\tmin_seconds\tmedian_seconds\tmax_seconds\tspread"
    )?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (value, set) in &grid {
        let mut times = Vec::with_capacity(a.repeats);
        let mut tokens = 0;
        for _ in 0..a.repeats {
            let clock = Instant::now();
            let corpus = build_corpus(set, &emb.walk)?;
            train(&corpus, &emb.train)?;
            times.push(clock.elapsed().as_secs_f64());
            tokens = corpus.token_count();
        }
        times.sort_by(f64::total_cmp);
        let (min, med, max) = (times[0], times[times.len() / 2], times[times.len() - 1]);
        let spread = if med > 0.0 { (max - min) / med } else { 0.0 };
        let grid_name = match a.grid {
            ScalabilityGrid::Counts => "counts",
            ScalabilityGrid::Hops => "hops",
        };
        writeln!(
            w,
            "{grid_name}\t{value}\t{}\t{tokens}\t{min}\t{med}\t{max}\t{spread}",
            set.len()
        )?;
        o.say(format!(
            "{grid_name} {value}: {min:.3}s (spread {spread:.2})"
        ));
        xs.push(set.len() as f64);
        ys.push(min);
    }
    w.flush()?;
    o.timing_file("scalability.tsv");
    if a.grid == ScalabilityGrid::Counts {
        if let Some(fit) = linear_fit(&xs, &ys) {
            let mut w = create(&a.run.out, "fit.txt")?;
            writeln!(w, "slope {}", fit.slope)?;
            writeln!(w, "intercept {}", fit.intercept)?;
            writeln!(w, "r_squared {}", fit.r_squared)?;
            w.flush()?;
            o.timing_file("fit.txt");
            o.say(format!("linear fit r_squared {:.4}", fit.r_squared));
        }
    }
    Ok(o)
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome> {
    let graph = load_graph(&a.graph)?;
    let set = parse_subgraph_set(BufReader::new(File::open(&a.subgraphs)?), &graph)?;
    let params = ShiftParams {
        negatives: a.negatives as f64,
        walk_length: a.walk_length.unwrap_or(a.window) as f64,
    };
    let corpus = exhaustive_corpus(&set, a.window, a.cap)?;
    let reports = verify_all(&set, &corpus, a.window, params, a.cap)?;
    let mut o = Outcome::default();
    let mut w = create(&a.run.out, "lemma.tsv")?;
    write_report(&mut w, &reports)?;
    w.flush()?;
    o.file("lemma.tsv");
    let conclusive: Vec<_> = reports.iter().filter(|r| r.conclusive).collect();
    o.say(format!(
        "{} pairs, {} conclusive; proof bound holds for {}, statement bound for {}",
        reports.len(),
        conclusive.len(),
        conclusive.iter().filter(|r| r.holds_proof).count(),
        conclusive.iter().filter(|r| r.holds_statement).count()
    ));
    Ok(o)
}
