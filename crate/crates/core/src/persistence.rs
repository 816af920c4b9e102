//! Sublevel-set filtrations of tournaplexes and their persistent homology
//! over Z/2.
//!
//! Columns of the boundary matrix are ordered by (weight, dimension, vertex
//! tuple, orientation) and reduced dimension by dimension from the top with
//! the clearing optimisation.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

pub use crate::directionality::combined_filtration_value;
use crate::directionality::{w_c3, w_dr, WeightFunction};
use crate::error::{Error, Result};
use crate::complex::{Tournament, Tournaplex};

/// A simplex with its filtration weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredSimplex {
    pub tournament: Tournament,
    pub weight: u64,
}

impl FilteredSimplex {
    pub fn dim(&self) -> usize {
        self.tournament.dim()
    }
}

/// Simplices in filtration order with boundary pointers.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    simplices: Vec<FilteredSimplex>,
    faces: Vec<Vec<usize>>,
}

impl FilteredComplex {
    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    /// Indices of the codimension-one faces of simplex `i`, ascending.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(FilteredSimplex::dim).max()
    }

    /// Number of simplices of each dimension with weight `<= t`.
    pub fn counts_at(&self, t: u64) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for s in self.simplices.iter().take_while(|s| s.weight <= t) {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Distinct weights in increasing order.
    pub fn weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self.simplices.iter().map(|s| s.weight).collect();
        w.dedup();
        w
    }
}

/// Filtration of `k` by a weight function.
pub fn build_filtration(k: &Tournaplex, w: &WeightFunction) -> Result<FilteredComplex> {
    let eval = w.evaluator()?;
    build_filtration_with(k, eval)
}

/// Filtration of `k` by an arbitrary weight, which must not decrease from a
/// face to its coface.
pub fn build_filtration_with<F>(k: &Tournaplex, weight: F) -> Result<FilteredComplex>
where
    F: Fn(&Tournament) -> Result<u64> + Sync,
{
    let counts = k.counts();
    let offsets: Vec<usize> = counts
        .iter()
        .scan(0, |acc, &c| {
            let o = *acc;
            *acc += c;
            Some(o)
        })
        .collect();
    let all: Vec<&Tournament> = k.iter().collect();
    let weights: Vec<u64> = all.par_iter().map(|t| weight(t)).collect::<Result<_>>()?;

    // graded index -> positions of faces in graded index
    let graded_faces: Vec<Vec<usize>> = all
        .par_iter()
        .map(|t| {
            t.faces()
                .map(|f| {
                    let pos = k.position(&f).ok_or_else(|| {
                        Error::Invariant(format!("face {f} of {t} missing from the tournaplex"))
                    })?;
                    Ok(offsets[f.dim()] + pos)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    for (i, fs) in graded_faces.iter().enumerate() {
        if let Some(&f) = fs.iter().find(|&&f| weights[f] > weights[i]) {
            return Err(Error::Invariant(format!(
                "weight is not monotone: face {} has weight {} > {} of {}",
                all[f], weights[f], weights[i], all[i]
            )));
        }
    }

    // graded order is already (dim, vertices, orientation)
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| (weights[i], all[i].dim(), i));
    let mut rank = vec![0usize; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let simplices = order
        .iter()
        .map(|&i| FilteredSimplex {
            tournament: all[i].clone(),
            weight: weights[i],
        })
        .collect();
    let faces = order
        .iter()
        .map(|&i| {
            let mut f: Vec<usize> = graded_faces[i].iter().map(|&g| rank[g]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    Ok(FilteredComplex { simplices, faces })
}

/// Death weight of a bar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Death {
    At(u64),
    Never,
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::At(w) => write!(f, "{w}"),
            Death::Never => f.write_str("inf"),
        }
    }
}

/// One bar `[birth, death)` in homological dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: u64,
    pub death: Death,
}

impl PersistencePair {
    /// Alive at threshold `t`, i.e. `birth <= t < death`.
    pub fn alive_at(&self, t: u64) -> bool {
        self.birth <= t
            && match self.death {
                Death::At(d) => t < d,
                Death::Never => true,
            }
    }
}

/// Bars sorted by (dim, birth, death). Zero-length pairs are not listed but
/// their number per dimension is kept.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Barcode {
    pub pairs: Vec<PersistencePair>,
    pub zero_length: Vec<usize>,
}

impl Barcode {
    /// Betti numbers at threshold `t`, trailing zeros removed.
    pub fn betti_at(&self, t: u64) -> Vec<usize> {
        let mut b: Vec<usize> = Vec::new();
        for p in self.pairs.iter().filter(|p| p.alive_at(t)) {
            if b.len() <= p.dim {
                b.resize(p.dim + 1, 0);
            }
            b[p.dim] += 1;
        }
        b
    }

    /// Multiplicity of every distinct bar.
    pub fn multiplicities(&self) -> Vec<(PersistencePair, usize)> {
        let mut out: Vec<(PersistencePair, usize)> = Vec::new();
        for p in &self.pairs {
            match out.last_mut() {
                Some((q, c)) if q == p => *c += 1,
                _ => out.push((*p, 1)),
            }
        }
        out
    }

    pub fn in_dim(&self, d: usize) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(move |p| p.dim == d)
    }

    /// `dim birth death` per line, `inf` for bars that never die.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.pairs {
            let _ = writeln!(s, "{} {} {}", p.dim, p.birth, p.death);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("dim,birth,death\n");
        for p in &self.pairs {
            let _ = writeln!(s, "{},{},{}", p.dim, p.birth, p.death);
        }
        s
    }
}

/// Symmetric difference of two ascending index lists.
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Z/2 persistence barcode of the sublevel filtration.
pub fn compute_persistence(f: &FilteredComplex) -> Barcode {
    let n = f.len();
    let Some(top) = f.max_dim() else {
        return Barcode::default();
    };
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (i, s) in f.simplices.iter().enumerate() {
        by_dim[s.dim()].push(i);
    }

    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); n];
    // row index -> column that has it as pivot
    let mut pivot_col: HashMap<usize, usize> = HashMap::new();
    let mut paired = vec![false; n];

    for d in (1..=top).rev() {
        for &j in &by_dim[d] {
            if paired[j] {
                // cleared: j is a pivot row of a (d+1)-column, so it reduces to zero
                continue;
            }
            let mut col = f.faces[j].clone();
            while let Some(&low) = col.last() {
                match pivot_col.get(&low) {
                    Some(&k) => col = add_columns(&col, &reduced[k]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_col.insert(low, j);
                paired[low] = true;
                paired[j] = true;
                reduced[j] = col;
            }
        }
    }

    let mut pairs = Vec::new();
    let mut zero_length = vec![0usize; top + 1];
    for (&low, &j) in &pivot_col {
        let (b, d) = (f.simplices[low].weight, f.simplices[j].weight);
        let dim = f.simplices[low].dim();
        if b == d {
            zero_length[dim] += 1;
        } else {
            pairs.push(PersistencePair {
                dim,
                birth: b,
                death: Death::At(d),
            });
        }
    }
    for (i, s) in f.simplices.iter().enumerate() {
        if !paired[i] {
            pairs.push(PersistencePair {
                dim: s.dim(),
                birth: s.weight,
                death: Death::Never,
            });
        }
    }
    pairs.sort_unstable();
    Barcode { pairs, zero_length }
}

/// Barcode of `k` filtered by `w`.
pub fn barcode(k: &Tournaplex, w: &WeightFunction) -> Result<Barcode> {
    Ok(compute_persistence(&build_filtration(k, w)?))
}

/// Z/2 Betti numbers of `k`, trailing zeros removed.
pub fn betti_numbers(k: &Tournaplex) -> Vec<usize> {
    let f = build_filtration_with(k, |_| Ok(0)).expect("constant weight is monotone");
    compute_persistence(&f).betti_at(0)
}

/// Betti numbers at one bifiltration point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiGridCell {
    pub dr_threshold: u64,
    pub c3_threshold: u64,
    pub betti: Vec<usize>,
}

/// Betti numbers of `{σ : W_Dr(σ) <= r and W_c3(σ) <= c}` for every `r` in
/// `dr_levels` and `c` in `c3_levels`, row-major in `dr_levels`.
pub fn bifiltration_betti(
    k: &Tournaplex,
    dr_levels: &[u64],
    c3_levels: &[u64],
) -> Result<Vec<BettiGridCell>> {
    for (name, l) in [("dr", dr_levels), ("c3", c3_levels)] {
        if l.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parameter(format!("{name} levels must be sorted ascending")));
        }
    }
    let cells: Vec<(u64, u64)> = dr_levels
        .iter()
        .flat_map(|&r| c3_levels.iter().map(move |&c| (r, c)))
        .collect();
    Ok(cells
        .into_par_iter()
        .map(|(r, c)| BettiGridCell {
            dr_threshold: r,
            c3_threshold: c,
            betti: betti_numbers(&k.sub_tournaplex(|t| w_dr(t) <= r && w_c3(t) <= c)),
        })
        .collect())
}

/// `dr_level,c3_level,b0,b1,...`, padded to a common width.
pub fn betti_grid_csv(cells: &[BettiGridCell]) -> String {
    let width = cells.iter().map(|c| c.betti.len()).max().unwrap_or(0).max(1);
    let mut s = String::from("dr_level,c3_level");
    for d in 0..width {
        let _ = write!(s, ",b{d}");
    }
    s.push('\n');
    for c in cells {
        let _ = write!(s, "{},{}", c.dr_threshold, c.c3_threshold);
        for d in 0..width {
            let _ = write!(s, ",{}", c.betti.get(d).copied().unwrap_or(0));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::complex::{directed_flag_complex, flag_tournaplex};

    fn cyclic() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn bars(b: &Barcode) -> Vec<(usize, u64, Option<u64>)> {
        b.pairs
            .iter()
            .map(|p| {
                let d = match p.death {
                    Death::At(x) => Some(x),
                    Death::Never => None,
                };
                (p.dim, p.birth, d)
            })
            .collect()
    }

    #[test]
    fn filtration_weights() {
        let f = build_filtration(&flag_tournaplex(&transitive(), 8), &WeightFunction::LocalDirectionality)
            .unwrap();
        let w: Vec<u64> = f.simplices().iter().map(|s| s.weight).collect();
        assert_eq!(w, vec![0, 0, 0, 2, 2, 2, 10]);
        let f = build_filtration(&flag_tournaplex(&transitive(), 8), &WeightFunction::ThreeCycle).unwrap();
        assert!(f.simplices().iter().all(|s| s.weight == 0));
        let f = build_filtration(&flag_tournaplex(&cyclic(), 8), &WeightFunction::LocalDirectionality).unwrap();
        let w: Vec<u64> = f.simplices().iter().map(|s| s.weight).collect();
        assert_eq!(w, vec![0, 0, 0, 2, 2, 2, 2]);
        assert_eq!(f.faces_of(6), &[3, 4, 5]);
    }

    #[test]
    fn rejects_non_monotone_weight() {
        let k = flag_tournaplex(&cyclic(), 8);
        let err = build_filtration_with(&k, |t| Ok(crate::directionality::local_directionality(t)))
            .unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
    }

    #[test]
    fn cyclic_triangle_barcode() {
        let b = barcode(&flag_tournaplex(&cyclic(), 8), &WeightFunction::LocalDirectionality).unwrap();
        assert_eq!(bars(&b), vec![(0, 0, Some(2)), (0, 0, Some(2)), (0, 0, None)]);
        // the edge closing the loop dies with the triangle at the same weight
        assert_eq!(b.zero_length, vec![0, 1, 0]);
    }

    #[test]
    fn transitive_triangle_barcode() {
        let b = barcode(&flag_tournaplex(&transitive(), 8), &WeightFunction::LocalDirectionality).unwrap();
        assert_eq!(
            bars(&b),
            vec![(0, 0, Some(2)), (0, 0, Some(2)), (0, 0, None), (1, 2, Some(10))]
        );
        assert_eq!(b.to_text(), "0 0 2\n0 0 2\n0 0 inf\n1 2 10\n");
    }

    #[test]
    fn betti_examples() {
        let cone = Digraph::new(3, [(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap();
        assert_eq!(betti_numbers(&flag_tournaplex(&cone, 8)), vec![1]);
        assert_eq!(betti_numbers(&directed_flag_complex(&cone, 8)), vec![1, 1]);
        assert_eq!(betti_numbers(&directed_flag_complex(&cyclic(), 8)), vec![1, 1]);
        assert_eq!(betti_numbers(&flag_tournaplex(&transitive(), 8)), vec![1]);
        assert_eq!(betti_numbers(&Tournaplex::default()), Vec::<usize>::new());
    }

    #[test]
    fn grid_csv_and_ordering() {
        let k = flag_tournaplex(&transitive(), 8);
        let cells = bifiltration_betti(&k, &[0, 2, 10], &[0]).unwrap();
        let betti: Vec<Vec<usize>> = cells.iter().map(|c| c.betti.clone()).collect();
        assert_eq!(betti, vec![vec![3], vec![1, 1], vec![1]]);
        assert_eq!(
            betti_grid_csv(&cells),
            "dr_level,c3_level,b0,b1\n0,0,3,0\n2,0,1,1\n10,0,1,0\n"
        );
        assert!(bifiltration_betti(&k, &[2, 0], &[0]).is_err());
    }
}
