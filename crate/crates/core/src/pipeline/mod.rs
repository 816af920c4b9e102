//! Feature matrices for graph classification and the clustering that
//! consumes them.
//!
//! Bar-count features: every graph (or every time bin of a spike train)
//! contributes its `W_Dr` barcode on the flag tournaplex; each distinct
//! `(dim, birth, death)` triple over the whole batch is a candidate column
//! holding its multiplicity. Betti features use the Betti numbers of the
//! directed flag complex instead. In both cases the columns with the largest
//! population standard deviation are kept.

mod experiment;
mod kmeans;

pub use experiment::{
    random_labels, synthetic_spike_train, ErExperiment, ErReport, SpikeExperiment, SpikeReport,
};
pub use kmeans::{adjusted_rand_index, kmeans, standardize, KMeansResult};

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{directed_flag_complex, flag_tournaplex};
use crate::digraph::{transmission_response, Digraph, SpikeTrain};
use crate::directionality::WeightFunction;
use crate::error::{Error, Result};
use crate::persistence::{barcode, betti_numbers, Barcode, Death};

/// Death value standing in for an infinite bar inside a [`Triple`].
pub const INFINITE_DEATH: u64 = u64::MAX;

/// A bar as `(dimension, birth, death)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub dim: usize,
    pub birth: u64,
    pub death: u64,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.death == INFINITE_DEATH {
            write!(f, "{}:{}:inf", self.dim, self.birth)
        } else {
            write!(f, "{}:{}:{}", self.dim, self.birth, self.death)
        }
    }
}

fn triples(b: &Barcode) -> Vec<Triple> {
    b.pairs
        .iter()
        .map(|p| Triple {
            dim: p.dim,
            birth: p.birth,
            death: match p.death {
                Death::At(d) => d,
                Death::Never => INFINITE_DEATH,
            },
        })
        .collect()
}

/// Identity of a feature column. Ordering is the tie-break order for column
/// selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnLabel {
    /// Multiplicity of a bar in one time bin.
    Bar { triple: Triple, bin: usize },
    /// One Betti number in one time bin.
    Betti { dim: usize, bin: usize },
}

impl fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnLabel::Bar { triple, bin } => write!(f, "bar[{triple}]@{bin}"),
            ColumnLabel::Betti { dim, bin } => write!(f, "betti{dim}@{bin}"),
        }
    }
}

/// Row-per-sample integer matrix with labelled columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureMatrix {
    pub rows: Vec<Vec<u64>>,
    pub labels: Vec<ColumnLabel>,
}

impl FeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.labels.len()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect()
    }

    /// CSV with one header line of column labels.
    pub fn to_csv(&self) -> String {
        let mut s = self
            .labels
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    /// `n · Σx² − (Σx)²` of column `j`, i.e. `n²` times its population
    /// variance, computed exactly.
    fn scaled_variance(&self, j: usize) -> u128 {
        let n = self.rows.len() as u128;
        let (s, sq) = self.rows.iter().fold((0u128, 0u128), |(s, sq), r| {
            let x = r[j] as u128;
            (s + x, sq + x * x)
        });
        n * sq - s * s
    }

    /// Population standard deviation of every column.
    pub fn column_std(&self) -> Vec<f64> {
        let n = self.rows.len() as f64;
        (0..self.n_cols())
            .map(|j| (self.scaled_variance(j) as f64).sqrt() / n)
            .collect()
    }

    /// Keeps the `d` columns of largest standard deviation, ordered by
    /// decreasing deviation with ties broken by label order.
    pub fn select_top_std(&self, d: usize) -> Result<FeatureMatrix> {
        if d == 0 {
            return Err(Error::Parameter("number of selected columns must be >= 1".into()));
        }
        if d > self.n_cols() {
            return Err(Error::Parameter(format!(
                "requested {d} columns but only {} candidates exist",
                self.n_cols()
            )));
        }
        let var: Vec<u128> = (0..self.n_cols()).map(|j| self.scaled_variance(j)).collect();
        let mut idx: Vec<usize> = (0..self.n_cols()).collect();
        idx.sort_by(|&a, &b| var[b].cmp(&var[a]).then(self.labels[a].cmp(&self.labels[b])));
        idx.truncate(d);
        Ok(FeatureMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| idx.iter().map(|&j| r[j]).collect())
                .collect(),
            labels: idx.iter().map(|&j| self.labels[j]).collect(),
        })
    }

    fn has_variation(&self) -> bool {
        (0..self.n_cols()).any(|j| self.scaled_variance(j) > 0)
    }
}

/// Candidate matrix of bar multiplicities. `barcodes[i][b]` is the barcode of
/// bin `b` of sample `i`; every sample must have the same number of bins.
/// Columns are grouped by bin, and within a bin follow triple order over the
/// union of all triples in the batch.
pub fn bar_count_candidates(barcodes: &[Vec<Barcode>]) -> Result<FeatureMatrix> {
    let bins = barcodes.first().map_or(0, Vec::len);
    if barcodes.iter().any(|b| b.len() != bins) {
        return Err(Error::Parameter("samples have different numbers of time bins".into()));
    }
    let per_sample: Vec<Vec<Vec<Triple>>> = barcodes
        .iter()
        .map(|row| row.iter().map(triples).collect())
        .collect();
    let universe: Vec<Triple> = per_sample
        .iter()
        .flatten()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let labels: Vec<ColumnLabel> = (0..bins)
        .flat_map(|bin| universe.iter().map(move |&triple| ColumnLabel::Bar { triple, bin }))
        .collect();
    let rows = per_sample
        .iter()
        .map(|row| {
            let mut out = vec![0u64; labels.len()];
            for (bin, ts) in row.iter().enumerate() {
                for t in ts {
                    let c = universe.binary_search(t).expect("triple in universe");
                    out[bin * universe.len() + c] += 1;
                }
            }
            out
        })
        .collect();
    Ok(FeatureMatrix { rows, labels })
}

/// `W_Dr` barcode of the flag tournaplex of `g`.
pub fn dr_barcode(g: &Digraph, max_order: usize) -> Barcode {
    barcode(&flag_tournaplex(g, max_order), &WeightFunction::LocalDirectionality)
        .expect("local directionality is a valid filtration")
}

/// First `d` Betti numbers of the directed flag complex of `g`, zero-padded.
pub fn directed_betti_vector(g: &Digraph, d: usize, max_order: usize) -> Vec<u64> {
    let mut b: Vec<u64> = betti_numbers(&directed_flag_complex(g, max_order))
        .into_iter()
        .map(|x| x as u64)
        .collect();
    b.resize(d, 0);
    b
}

/// Rows of directed-flag Betti numbers `β_0 .. β_{d-1}`, no selection.
pub fn betti_matrix(graphs: &[Digraph], d: usize, max_order: usize) -> FeatureMatrix {
    FeatureMatrix {
        rows: graphs
            .par_iter()
            .map(|g| directed_betti_vector(g, d, max_order))
            .collect(),
        labels: (0..d).map(|dim| ColumnLabel::Betti { dim, bin: 0 }).collect(),
    }
}

/// Bar-count feature matrix of a batch of digraphs: the `d` most variable
/// bar multiplicities of the `W_Dr` barcodes of their flag tournaplexes.
pub fn algorithm1(graphs: &[Digraph], d: usize, max_order: usize) -> Result<FeatureMatrix> {
    if graphs.is_empty() {
        return Err(Error::Parameter("no graphs given".into()));
    }
    let barcodes: Vec<Vec<Barcode>> = graphs
        .par_iter()
        .map(|g| vec![dr_barcode(g, max_order)])
        .collect();
    bar_count_candidates(&barcodes)?.select_top_std(d)
}

fn tr_graphs(
    spike_sets: &[SpikeTrain],
    g: &Digraph,
    t1: f64,
    t2: f64,
) -> Result<Vec<Vec<Digraph>>> {
    if spike_sets.is_empty() {
        return Err(Error::DegenerateFeatures("no spike trains given".into()));
    }
    spike_sets
        .par_iter()
        .map(|s| transmission_response(g, s, t1, t2))
        .collect()
}

fn checked(candidates: FeatureMatrix, m: usize) -> Result<FeatureMatrix> {
    if !candidates.has_variation() {
        return Err(Error::DegenerateFeatures(
            "no candidate column varies across the spike trains".into(),
        ));
    }
    candidates.select_top_std(m)
}

/// Bar-count candidate matrix for spike trains, one block of columns per
/// time bin.
pub fn spike_bar_candidates(
    spike_sets: &[SpikeTrain],
    g: &Digraph,
    t1: f64,
    t2: f64,
    max_order: usize,
) -> Result<FeatureMatrix> {
    let graphs = tr_graphs(spike_sets, g, t1, t2)?;
    let barcodes: Vec<Vec<Barcode>> = graphs
        .par_iter()
        .map(|bins| bins.par_iter().map(|h| dr_barcode(h, max_order)).collect())
        .collect();
    bar_count_candidates(&barcodes)
}

/// Bar-count features of spike trains via transmission-response graphs.
pub fn algorithm2(
    spike_sets: &[SpikeTrain],
    g: &Digraph,
    m: usize,
    t1: f64,
    t2: f64,
    max_order: usize,
) -> Result<FeatureMatrix> {
    checked(spike_bar_candidates(spike_sets, g, t1, t2, max_order)?, m)
}

/// Betti-number candidate matrix for spike trains: `β_0 .. β_{d-1}` of the
/// directed flag complex of every transmission-response graph.
pub fn spike_betti_candidates(
    spike_sets: &[SpikeTrain],
    g: &Digraph,
    d: usize,
    t1: f64,
    t2: f64,
    max_order: usize,
) -> Result<FeatureMatrix> {
    if d == 0 {
        return Err(Error::Parameter("number of Betti numbers must be >= 1".into()));
    }
    let graphs = tr_graphs(spike_sets, g, t1, t2)?;
    let bins = graphs[0].len();
    if graphs.iter().any(|b| b.len() != bins) {
        return Err(Error::Parameter("samples have different numbers of time bins".into()));
    }
    let rows = graphs
        .par_iter()
        .map(|bins| {
            bins.iter()
                .flat_map(|h| directed_betti_vector(h, d, max_order))
                .collect()
        })
        .collect();
    let labels = (0..bins)
        .flat_map(|bin| (0..d).map(move |dim| ColumnLabel::Betti { dim, bin }))
        .collect();
    Ok(FeatureMatrix { rows, labels })
}

/// Betti-number features of spike trains via transmission-response graphs.
pub fn algorithm3(
    spike_sets: &[SpikeTrain],
    g: &Digraph,
    d: usize,
    m: usize,
    t1: f64,
    t2: f64,
    max_order: usize,
) -> Result<FeatureMatrix> {
    checked(spike_betti_candidates(spike_sets, g, d, t1, t2, max_order)?, m)
}
