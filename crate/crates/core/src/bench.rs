//! Desk-scale distribution-learning benchmark: corpus loading, a seeded
//! token-level n-gram generator, and Valid/Unique/Novelty/KLD metrics.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codecs::decode;
use crate::molgraph::{canonical_smiles, descriptors, tokenize, Descriptors, Dialect};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("corpus contains no usable lines")]
    EmptyCorpus,
    #[error("no generated strings to evaluate")]
    EmptyGeneration,
    #[error("histograms have different bin counts")]
    BinningMismatch,
}

/// A line corpus plus everything derived from its decodable lines.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub lines: Vec<String>,
    pub dialect: Dialect,
    /// Canonical forms of the decodable lines (duplicates collapse here).
    pub canonical_set: std::collections::BTreeSet<String>,
    /// Lines the dialect decoder rejected.
    pub skipped: usize,
    /// One entry per decodable line, duplicates included.
    pub descriptors: Vec<Descriptors>,
}

impl Corpus {
    pub fn from_lines(lines: Vec<String>, dialect: Dialect) -> Result<Corpus, BenchError> {
        if lines.is_empty() {
            return Err(BenchError::EmptyCorpus);
        }
        let mut canonical_set = std::collections::BTreeSet::new();
        let mut descs = Vec::new();
        let mut skipped = 0;
        for line in &lines {
            match decode(line, dialect) {
                Ok(g) => {
                    canonical_set.insert(canonical_smiles(&g));
                    descs.push(descriptors(&g));
                }
                Err(_) => skipped += 1,
            }
        }
        Ok(Corpus { lines, dialect, canonical_set, skipped, descriptors: descs })
    }
}

/// One record per line; an optional tab-separated trailing ID is dropped.
/// Blank lines are ignored entirely (they are not counted as skipped).
pub fn load_corpus(path: impl AsRef<Path>, dialect: Dialect) -> Result<Corpus, BenchError> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<String> = text
        .lines()
        .map(|l| l.split('\t').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect();
    Corpus::from_lines(lines, dialect)
}

const END: usize = 0;
const BEGIN: usize = 1;

#[derive(Debug, Clone, Default)]
struct Row {
    counts: BTreeMap<usize, u64>,
    total: u64,
}

/// Token-level n-gram model. Context length is `order − 1`; id 0 is the
/// end-of-string sentinel, id 1 the begin sentinel (never emitted).
#[derive(Debug, Clone)]
pub struct NGramModel {
    pub order: usize,
    pub alpha: f64,
    vocab: Vec<String>,
    ids: BTreeMap<String, usize>,
    rows: BTreeMap<Vec<usize>, Row>,
}

pub fn train_ngram(c: &Corpus, order: usize, alpha: f64) -> Result<NGramModel, BenchError> {
    assert!(order >= 1, "order must be at least 1");
    let mut texts = std::collections::BTreeSet::new();
    let mut token_lines = Vec::new();
    for line in &c.lines {
        if let Ok(tokens) = tokenize(line, c.dialect) {
            let toks: Vec<String> = tokens.into_iter().map(|t| t.text).collect();
            texts.extend(toks.iter().cloned());
            token_lines.push(toks);
        }
    }
    if token_lines.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }
    let mut vocab = vec!["<end>".to_string(), "<begin>".to_string()];
    vocab.extend(texts);
    let ids: BTreeMap<String, usize> =
        vocab.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();

    let mut model = NGramModel { order, alpha, vocab, ids, rows: BTreeMap::new() };
    for toks in &token_lines {
        let mut ctx = vec![BEGIN; order - 1];
        let ids: Vec<usize> = toks.iter().map(|t| model.ids[t]).collect();
        for tok in ids.into_iter().chain([END]) {
            let row = model.rows.entry(ctx.clone()).or_default();
            *row.counts.entry(tok).or_insert(0) += 1;
            row.total += 1;
            if order > 1 {
                ctx.remove(0);
                ctx.push(if tok == END { BEGIN } else { tok });
            }
        }
    }
    Ok(model)
}

impl NGramModel {
    /// Number of ids a row can emit: every token plus END, minus BEGIN.
    fn emittable(&self) -> usize {
        self.vocab.len() - 1
    }

    /// Normalized next-id distribution for a context, ids ascending.
    /// Empty when the context is unreachable under zero smoothing.
    fn distribution(&self, ctx: &[usize]) -> Vec<(usize, f64)> {
        let row = self.rows.get(ctx);
        let m = self.emittable() as f64;
        let (counts, total) = match row {
            Some(r) => (Some(&r.counts), r.total as f64),
            None => (None, 0.0),
        };
        if self.alpha == 0.0 {
            let Some(counts) = counts else { return Vec::new() };
            return counts.iter().map(|(&id, &n)| (id, n as f64 / total)).collect();
        }
        let denom = total + self.alpha * m;
        (0..self.vocab.len())
            .filter(|&id| id != BEGIN)
            .map(|id| {
                let n = counts.and_then(|c| c.get(&id)).copied().unwrap_or(0) as f64;
                (id, (n + self.alpha) / denom)
            })
            .collect()
    }

    fn prob(&self, ctx: &[usize], next: usize) -> f64 {
        self.distribution(ctx)
            .iter()
            .find(|&&(id, _)| id == next)
            .map(|&(_, p)| p)
            .unwrap_or(0.0)
    }
}

/// Draw `n` strings; identical arguments reproduce identical output.
/// Strings are truncated after `max_len` tokens.
pub fn sample(m: &NGramModel, n: usize, max_len: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut ctx = vec![BEGIN; m.order - 1];
        let mut text = String::new();
        let mut emitted = 0;
        loop {
            let dist = m.distribution(&ctx);
            let Some(&(last_id, _)) = dist.last() else { break };
            let x: f64 = rng.gen();
            let mut acc = 0.0;
            let mut chosen = last_id;
            for &(id, p) in &dist {
                if x < acc + p {
                    chosen = id;
                    break;
                }
                acc += p;
            }
            if chosen == END {
                break;
            }
            text.push_str(&m.vocab[chosen]);
            emitted += 1;
            if emitted == max_len {
                break;
            }
            if m.order > 1 {
                ctx.remove(0);
                ctx.push(chosen);
            }
        }
        out.push(text);
    }
    out
}

/// Mean per-token negative log-likelihood (END transitions included).
/// Lines that fail to tokenize are skipped; unreachable transitions under
/// zero smoothing contribute infinity.
pub fn nll(m: &NGramModel, lines: &[String], dialect: Dialect) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for line in lines {
        let Ok(tokens) = tokenize(line, dialect) else { continue };
        let mut ctx = vec![BEGIN; m.order - 1];
        let ids = tokens
            .iter()
            .map(|t| m.ids.get(&t.text).copied())
            .chain([Some(END)]);
        for id in ids {
            let p = id.map(|id| m.prob(&ctx, id)).unwrap_or(0.0);
            sum += if p > 0.0 { -p.ln() } else { f64::INFINITY };
            count += 1;
            if m.order > 1 {
                ctx.remove(0);
                let id = id.unwrap_or(END);
                ctx.push(if id == END { BEGIN } else { id });
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

/// KL divergence Σ p·ln(p/q) with per-bin smoothing ε = 1e-9.
pub fn kld(p: &Histogram, q: &Histogram) -> Result<f64, BenchError> {
    if p.counts.len() != q.counts.len() {
        return Err(BenchError::BinningMismatch);
    }
    const EPS: f64 = 1e-9;
    let n = p.counts.len() as f64;
    let pt = p.counts.iter().sum::<u64>() as f64;
    let qt = q.counts.iter().sum::<u64>() as f64;
    let mut acc = 0.0;
    for (&pc, &qc) in p.counts.iter().zip(&q.counts) {
        let pi = (pc as f64 + EPS) / (pt + EPS * n);
        let qi = (qc as f64 + EPS) / (qt + EPS * n);
        acc += pi * (pi / qi).ln();
    }
    Ok(acc)
}

/// Fixed binning per descriptor: unit bins for the integer-valued ones,
/// 0.1-wide bins for aromatic fraction, 10-unit bins for weight.
fn descriptor_histograms(descs: &[Descriptors]) -> BTreeMap<String, Histogram> {
    let mut heavy = vec![0u64; 256];
    let mut rings = vec![0u64; 64];
    let mut arom = vec![0u64; 10];
    let mut weight = vec![0u64; 100];
    for d in descs {
        heavy[d.heavy_atoms.min(255)] += 1;
        rings[d.ring_count.min(63)] += 1;
        arom[((d.aromatic_fraction * 10.0) as usize).min(9)] += 1;
        weight[((d.mol_weight / 10.0) as usize).min(99)] += 1;
    }
    [
        ("heavy_atoms", heavy),
        ("ring_count", rings),
        ("aromatic_fraction", arom),
        ("mol_weight", weight),
    ]
    .into_iter()
    .map(|(k, counts)| (k.to_string(), Histogram { counts }))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub valid: f64,
    pub unique: f64,
    pub novelty: f64,
    pub nov_over_uni: f64,
    pub kld: BTreeMap<String, f64>,
    pub aggregate_score: f64,
    pub sample_count: usize,
    pub seed: Option<u64>,
}

pub fn evaluate(
    gen: &[String],
    train: &Corpus,
    dialect: Dialect,
) -> Result<BenchmarkReport, BenchError> {
    if gen.is_empty() {
        return Err(BenchError::EmptyGeneration);
    }
    let n = gen.len() as f64;
    let mut gen_descs = Vec::new();
    let mut canon_valid = Vec::new();
    for s in gen {
        if let Ok(g) = decode(s, dialect) {
            canon_valid.push(canonical_smiles(&g));
            gen_descs.push(descriptors(&g));
        }
    }
    let valid = canon_valid.len() as f64 / n;
    let distinct: std::collections::BTreeSet<&String> = canon_valid.iter().collect();
    let unique = distinct.len() as f64 / n;
    let novel = distinct
        .iter()
        .filter(|c| !train.canonical_set.contains(c.as_str()))
        .count();
    let novelty = novel as f64 / n;
    let nov_over_uni = if distinct.is_empty() { 0.0 } else { novel as f64 / distinct.len() as f64 };

    let gen_hists = descriptor_histograms(&gen_descs);
    let train_hists = descriptor_histograms(&train.descriptors);
    let mut kld_map = BTreeMap::new();
    for (name, g_hist) in &gen_hists {
        kld_map.insert(name.clone(), kld(g_hist, &train_hists[name])?);
    }
    let mean_kld = kld_map.values().sum::<f64>() / kld_map.len() as f64;
    Ok(BenchmarkReport {
        valid,
        unique,
        novelty,
        nov_over_uni,
        kld: kld_map,
        aggregate_score: (-mean_kld).exp(),
        sample_count: gen.len(),
        seed: None,
    })
}
