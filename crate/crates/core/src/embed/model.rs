use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::TrainConfig;
use crate::error::{Error, Result};
use crate::graph::NodeIdx;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Writes `count dim` followed by one `id v1 .. vd` line per row.
    /// Values use the shortest representation that parses back exactly.
    pub fn write_text<W, I, D>(&self, mut out: W, ids: I) -> Result<()>
    where
        W: Write,
        I: IntoIterator<Item = D>,
        D: std::fmt::Display,
    {
        writeln!(out, "{} {}", self.rows, self.cols)?;
        let mut ids = ids.into_iter();
        for i in 0..self.rows {
            let id = ids
                .next()
                .ok_or_else(|| Error::Invariant("fewer row ids than rows".into()))?;
            write!(out, "{id}")?;
            for x in self.row(i) {
                write!(out, " {x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Inverse of [`Matrix::write_text`]; returns the row ids and the matrix.
    pub fn read_text<R: BufRead>(reader: R) -> Result<(Vec<String>, Matrix)> {
        let mut lines = reader.lines().enumerate();
        let header = match lines.next() {
            Some((_, l)) => l?,
            None => return Err(Error::parse(1, "missing `count dim` header")),
        };
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(1, format!("bad header: {e}")))?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(1, "header must be `count dim`"));
        };
        let mut ids = Vec::with_capacity(rows);
        let mut data = Vec::with_capacity(rows * cols);
        for (lineno, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let id = toks.next().expect("non-empty line");
            let before = data.len();
            for t in toks {
                let x: f64 = t
                    .parse()
                    .map_err(|e| Error::parse(lineno + 1, format!("bad value {t:?}: {e}")))?;
                data.push(x);
            }
            if data.len() - before != cols {
                return Err(Error::parse(
                    lineno + 1,
                    format!("expected {cols} values, found {}", data.len() - before),
                ));
            }
            ids.push(id.to_owned());
        }
        if ids.len() != rows {
            return Err(Error::parse(
                1,
                format!("header declares {rows} rows, found {}", ids.len()),
            ));
        }
        Ok((ids, Matrix { rows, cols, data }))
    }
}

/// Learned parameters: subgraph vectors `S`, node input vectors `M` and
/// output vectors `U`.
///
/// Rows of `M` and `U` are indexed by position in [`EmbeddingModel::vocab`],
/// not by host node id.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    pub subgraphs: Matrix,
    pub nodes: Matrix,
    pub output: Matrix,
    vocab: Vec<NodeIdx>,
    pub config: TrainConfig,
    /// Seed of the walk corpus the model was trained on, if known.
    pub corpus_seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct ModelMeta {
    config: TrainConfig,
    corpus_seed: Option<u64>,
    subgraphs: usize,
    vocab_size: usize,
}

pub const SUBGRAPH_FILE: &str = "subgraphs.txt";
pub const NODE_FILE: &str = "nodes.txt";
pub const OUTPUT_FILE: &str = "output.txt";
pub const META_FILE: &str = "model.json";

impl EmbeddingModel {
    pub fn new(
        subgraphs: Matrix,
        nodes: Matrix,
        output: Matrix,
        vocab: Vec<NodeIdx>,
        config: TrainConfig,
    ) -> Result<EmbeddingModel> {
        if nodes.rows() != vocab.len() || output.rows() != vocab.len() {
            return Err(Error::Invariant(format!(
                "node/output rows ({}, {}) do not match vocabulary size {}",
                nodes.rows(),
                output.rows(),
                vocab.len()
            )));
        }
        if subgraphs.cols() != config.dim
            || nodes.cols() != config.dim
            || output.cols() != config.output_width()
        {
            return Err(Error::Invariant(
                "matrix widths disagree with config".into(),
            ));
        }
        if vocab.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant(
                "vocabulary must be strictly sorted".into(),
            ));
        }
        Ok(EmbeddingModel {
            subgraphs,
            nodes,
            output,
            vocab,
            config,
            corpus_seed: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    pub fn subgraph_count(&self) -> usize {
        self.subgraphs.rows()
    }

    /// Host node ids of the `M`/`U` rows, sorted.
    pub fn vocab(&self) -> &[NodeIdx] {
        &self.vocab
    }

    pub fn node_row(&self, v: NodeIdx) -> Option<usize> {
        self.vocab.binary_search(&v).ok()
    }

    pub fn subgraph_vector(&self, sid: usize) -> &[f64] {
        self.subgraphs.row(sid)
    }

    pub fn node_vector(&self, v: NodeIdx) -> Option<&[f64]> {
        self.node_row(v).map(|r| self.nodes.row(r))
    }

    pub fn is_finite(&self) -> bool {
        self.subgraphs.is_finite() && self.nodes.is_finite() && self.output.is_finite()
    }

    /// Subgraph vectors scaled to unit length (zero rows stay zero).
    pub fn normalized_subgraph_vectors(&self) -> Vec<Vec<f64>> {
        (0..self.subgraph_count())
            .map(|i| {
                let row = self.subgraph_vector(i);
                let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 0.0 {
                    row.iter().map(|x| x / norm).collect()
                } else {
                    row.to_vec()
                }
            })
            .collect()
    }

    /// Writes the model into `dir`: the three matrices as text tables plus a
    /// JSON metadata file.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut w = BufWriter::new(File::create(dir.join(SUBGRAPH_FILE))?);
        self.subgraphs
            .write_text(&mut w, 0..self.subgraph_count())?;
        w.flush()?;
        let mut w = BufWriter::new(File::create(dir.join(NODE_FILE))?);
        self.nodes.write_text(&mut w, self.vocab.iter())?;
        w.flush()?;
        let mut w = BufWriter::new(File::create(dir.join(OUTPUT_FILE))?);
        self.output.write_text(&mut w, self.vocab.iter())?;
        w.flush()?;
        let meta = ModelMeta {
            config: self.config,
            corpus_seed: self.corpus_seed,
            subgraphs: self.subgraph_count(),
            vocab_size: self.vocab.len(),
        };
        let mut w = BufWriter::new(File::create(dir.join(META_FILE))?);
        serde_json::to_writer_pretty(&mut w, &meta)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<EmbeddingModel> {
        let meta: ModelMeta =
            serde_json::from_reader(BufReader::new(File::open(dir.join(META_FILE))?))?;
        let open = |name: &str| -> Result<(Vec<String>, Matrix)> {
            Matrix::read_text(BufReader::new(File::open(dir.join(name))?))
        };
        let (sids, subgraphs) = open(SUBGRAPH_FILE)?;
        let (node_ids, nodes) = open(NODE_FILE)?;
        let (out_ids, output) = open(OUTPUT_FILE)?;
        for (i, sid) in sids.iter().enumerate() {
            if sid.parse::<usize>().ok() != Some(i) {
                return Err(Error::parse(
                    i + 2,
                    format!("expected subgraph id {i}, found {sid:?}"),
                ));
            }
        }
        if node_ids != out_ids {
            return Err(Error::domain("node and output tables list different ids"));
        }
        let vocab = node_ids
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.parse::<NodeIdx>()
                    .map_err(|e| Error::parse(i + 2, format!("bad node id {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if meta.subgraphs != subgraphs.rows() || meta.vocab_size != vocab.len() {
            return Err(Error::domain("model metadata disagrees with tables"));
        }
        let mut model = EmbeddingModel::new(subgraphs, nodes, output, vocab, meta.config)?;
        model.corpus_seed = meta.corpus_seed;
        Ok(model)
    }
}
