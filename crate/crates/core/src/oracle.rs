//! Brute-force check of the overlap lower bound on the shifted log
//! co-occurrence matrix.
//!
//! For a corpus `D` of subgraph walks and contexts of `w` consecutive nodes,
//! the DBON objective with `k` negatives implicitly factorizes
//!
//! ```text
//! M[i][j] = ln(#(j in subgraph i) / #(j in D)) + ln(|D| w / (k l))
//! ```
//!
//! with `M⁰` setting never-observed entries to zero. When every length-`w`
//! walk of subgraphs `a` and `b` occurs in the corpus, `M⁰_a · M⁰_b` is
//! bounded below by `x ln²(·)` where `x` counts the walks the two subgraphs
//! share. Two versions of the log argument are in circulation,
//! `|D| w / (N k l)` and `|D| w / (N k l²)`; both are evaluated here.
//!
//! Everything in this module is exhaustive and meant for graphs with a
//! handful of nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeIdx, Subgraph, SubgraphSet};
use crate::walk::{Walk, WalkCorpus};

/// Default ceiling on the number of contexts enumerated per subgraph.
pub const DEFAULT_CONTEXT_CAP: usize = 1_000_000;

/// A length-`w` node sequence whose consecutive entries are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextId(pub Vec<NodeIdx>);

/// Every length-`w` walk (node repetition allowed) inside `sg`, by
/// depth-first expansion from each node.
pub fn enumerate_contexts(sg: &Subgraph, w: usize, cap: usize) -> Result<BTreeSet<ContextId>> {
    if w == 0 {
        return Err(Error::domain("context width must be at least 1"));
    }
    let mut out = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::with_capacity(w);
    for start in 0..sg.node_count() {
        stack.push(start);
        expand(sg, w, cap, &mut stack, &mut out)?;
        stack.pop();
    }
    Ok(out)
}

fn expand(
    sg: &Subgraph,
    w: usize,
    cap: usize,
    stack: &mut Vec<usize>,
    out: &mut BTreeSet<ContextId>,
) -> Result<()> {
    if stack.len() == w {
        out.insert(ContextId(stack.iter().map(|&i| sg.host(i)).collect()));
        if out.len() > cap {
            return Err(Error::domain(format!(
                "subgraph {} has more than {cap} contexts of width {w}",
                sg.sid()
            )));
        }
        return Ok(());
    }
    let last = *stack.last().expect("stack seeded with a start node");
    for &next in sg.local_neighbors(last) {
        stack.push(next as usize);
        expand(sg, w, cap, stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// A corpus holding each context of each subgraph exactly once, as its own
/// walk of length `w`. It satisfies the visiting assumption by construction.
pub fn exhaustive_corpus(set: &SubgraphSet, w: usize, cap: usize) -> Result<WalkCorpus> {
    let mut walks = Vec::new();
    for sg in set {
        for ctx in enumerate_contexts(sg, w, cap)? {
            walks.push(Walk {
                sid: sg.sid(),
                seq: ctx.0,
            });
        }
    }
    WalkCorpus::from_walks(set.len(), walks)
}

/// Sliding-window context counts per subgraph.
#[derive(Debug, Clone, PartialEq)]
pub struct CoocMatrix {
    /// Column labels, sorted.
    pub contexts: Vec<ContextId>,
    /// Sparse rows: column index → count, one map per subgraph.
    pub counts: Vec<BTreeMap<usize, u64>>,
    /// `#(context j in D)`.
    pub column_totals: Vec<u64>,
    /// `|D|`: total number of windows.
    pub total: u64,
    pub width: usize,
}

impl CoocMatrix {
    pub fn subgraph_count(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, sid: usize, ctx: &ContextId) -> u64 {
        self.contexts
            .binary_search(ctx)
            .ok()
            .and_then(|j| self.counts[sid].get(&j).copied())
            .unwrap_or(0)
    }

    /// Contexts observed at least once in subgraph `sid`.
    pub fn support(&self, sid: usize) -> BTreeSet<ContextId> {
        self.counts[sid]
            .keys()
            .map(|&j| self.contexts[j].clone())
            .collect()
    }
}

/// Counts every width-`w` window of every walk. Walks shorter than `w`
/// contribute nothing.
pub fn count_context_corpus(corpus: &WalkCorpus, w: usize) -> Result<CoocMatrix> {
    if w == 0 {
        return Err(Error::domain("context width must be at least 1"));
    }
    let mut by_context: BTreeMap<ContextId, BTreeMap<usize, u64>> = BTreeMap::new();
    let mut total = 0u64;
    for walk in corpus.walks() {
        for window in walk.seq.windows(w) {
            *by_context
                .entry(ContextId(window.to_vec()))
                .or_default()
                .entry(walk.sid)
                .or_default() += 1;
            total += 1;
        }
    }
    let mut counts = vec![BTreeMap::new(); corpus.subgraph_count()];
    let mut contexts = Vec::with_capacity(by_context.len());
    let mut column_totals = Vec::with_capacity(by_context.len());
    for (j, (ctx, per_sid)) in by_context.into_iter().enumerate() {
        column_totals.push(per_sid.values().sum());
        for (sid, c) in per_sid {
            counts[sid].insert(j, c);
        }
        contexts.push(ctx);
    }
    Ok(CoocMatrix {
        contexts,
        counts,
        column_totals,
        total,
        width: w,
    })
}

/// Negative-sample count `k` and walk length `l` in the matrix shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftParams {
    pub negatives: f64,
    pub walk_length: f64,
}

/// `M⁰`, stored sparsely: absent entries are exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MZero {
    pub rows: Vec<BTreeMap<usize, f64>>,
    pub columns: usize,
    pub params: ShiftParams,
    pub total: u64,
    pub width: usize,
}

impl MZero {
    pub fn entry(&self, sid: usize, col: usize) -> f64 {
        self.rows[sid].get(&col).copied().unwrap_or(0.0)
    }

    pub fn row_dot(&self, a: usize, b: usize) -> f64 {
        let (small, large) = if self.rows[a].len() <= self.rows[b].len() {
            (&self.rows[a], &self.rows[b])
        } else {
            (&self.rows[b], &self.rows[a])
        };
        small
            .iter()
            .filter_map(|(j, x)| large.get(j).map(|y| x * y))
            .sum()
    }
}

/// Applies the shifted log ratio to every observed count.
pub fn build_m_zero(cm: &CoocMatrix, params: ShiftParams) -> MZero {
    let shift = (cm.total as f64 * cm.width as f64 / (params.negatives * params.walk_length)).ln();
    let rows = cm
        .counts
        .iter()
        .map(|row| {
            row.iter()
                .map(|(&j, &c)| {
                    let ratio = c as f64 / cm.column_totals[j] as f64;
                    (j, ratio.ln() + shift)
                })
                .collect()
        })
        .collect();
    MZero {
        rows,
        columns: cm.contexts.len(),
        params,
        total: cm.total,
        width: cm.width,
    }
}

/// Number of length-`w` walks realizable in both subgraphs.
pub fn overlap_paths(ga: &Subgraph, gb: &Subgraph, w: usize, cap: usize) -> Result<usize> {
    let a = enumerate_contexts(ga, w, cap)?;
    let b = enumerate_contexts(gb, w, cap)?;
    Ok(a.intersection(&b).count())
}

/// Outcome of the bound check for one subgraph pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub lhs: f64,
    /// `x ln²(|D| w / (N k l))`.
    pub rhs_statement: f64,
    /// `x ln²(|D| w / (N k l²))`.
    pub rhs_proof: f64,
    pub holds_statement: bool,
    pub holds_proof: bool,
    /// False when the corpus missed a context of either subgraph; the bound
    /// then says nothing and the `holds` flags are informational.
    pub conclusive: bool,
}

/// Slack allowed when comparing the two sides.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Evaluates both bounds for rows `a` and `b` of `mz`, given the overlap
/// count `x` and whether the visiting assumption holds.
pub fn lemma1_check(
    mz: &MZero,
    a: usize,
    b: usize,
    x: usize,
    subgraph_count: usize,
    assumption_holds: bool,
) -> LemmaReport {
    let lhs = mz.row_dot(a, b);
    let d = mz.total as f64;
    let w = mz.width as f64;
    let n = subgraph_count as f64;
    let k = mz.params.negatives;
    let l = mz.params.walk_length;
    let bound = |arg: f64| {
        if x == 0 {
            0.0
        } else {
            x as f64 * arg.ln().powi(2)
        }
    };
    let rhs_statement = bound(d * w / (n * k * l));
    let rhs_proof = bound(d * w / (n * k * l * l));
    LemmaReport {
        a,
        b,
        x,
        lhs,
        rhs_statement,
        rhs_proof,
        holds_statement: lhs >= rhs_statement - BOUND_TOLERANCE,
        holds_proof: lhs >= rhs_proof - BOUND_TOLERANCE,
        conclusive: assumption_holds,
    }
}

/// Runs [`lemma1_check`] on every pair `a < b` of `set`, with counts taken
/// from `corpus`.
pub fn verify_all(
    set: &SubgraphSet,
    corpus: &WalkCorpus,
    w: usize,
    params: ShiftParams,
    cap: usize,
) -> Result<Vec<LemmaReport>> {
    let cm = count_context_corpus(corpus, w)?;
    let mz = build_m_zero(&cm, params);
    let contexts = set
        .iter()
        .map(|sg| enumerate_contexts(sg, w, cap))
        .collect::<Result<Vec<_>>>()?;
    let covered: Vec<bool> = contexts
        .iter()
        .enumerate()
        .map(|(sid, ctx)| ctx.is_subset(&cm.support(sid)))
        .collect();
    let mut reports = Vec::new();
    for a in 0..set.len() {
        for b in a + 1..set.len() {
            let x = contexts[a].intersection(&contexts[b]).count();
            reports.push(lemma1_check(
                &mz,
                a,
                b,
                x,
                set.len(),
                covered[a] && covered[b],
            ));
        }
    }
    Ok(reports)
}

/// Tab-separated report with a header row.
pub fn write_report<W: Write>(mut out: W, reports: &[LemmaReport]) -> Result<()> {
    writeln!(
        out,
        "pair\tx\tlhs\trhs_statement\trhs_proof\tholds_statement\tholds_proof\tconclusive"
    )?;
    for r in reports {
        writeln!(
            out,
            "{}-{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.a,
            r.b,
            r.x,
            r.lhs,
            r.rhs_statement,
            r.rhs_proof,
            r.holds_statement,
            r.holds_proof,
            r.conclusive
        )?;
    }
    Ok(())
}
