//! Directionality invariants of tournaments and the filtering weights built
//! from them.
//!
//! For an `n`-tournament the local directionality `Dr` and the directed
//! 3-cycle count `c3` satisfy `Dr = 2·C(n+1, 3) − 8·c3`; [`identity_check`]
//! evaluates both sides independently.

use std::collections::BTreeMap;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::complex::{pair_count, Tournament, Tournaplex};

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_v (indeg_σ(v) − outdeg_σ(v))²`.
pub fn local_directionality(t: &Tournament) -> u64 {
    t.signed_degrees().iter().map(|&s| (s * s) as u64).sum()
}

/// Number of directed 3-cycles, by scanning every vertex triple.
pub fn c3(t: &Tournament) -> u64 {
    let n = t.order();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let ab = t.beats(a, b);
                if ab == t.beats(b, c) && ab == t.beats(c, a) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Whether `Dr(σ) = 2·C(n+1, 3) − 8·c3(σ)`. Always true; kept as a
/// cross-check between [`local_directionality`] and [`c3`].
pub fn identity_check(t: &Tournament) -> bool {
    let n = t.order() as u64;
    local_directionality(t) as i64 == 2 * binomial(n + 1, 3) as i64 - 8 * c3(t) as i64
}

/// Local directionality weight, `Dr(σ) + 2·C(n, 3)`.
pub fn w_dr(t: &Tournament) -> u64 {
    local_directionality(t) + 2 * binomial(t.order() as u64, 3)
}

/// 3-cycle weight, `c3(σ)`.
pub fn w_c3(t: &Tournament) -> u64 {
    c3(t)
}

/// Global directionality weight: the sum over the vertices of `σ` of the
/// squared signed degree in `skeleton`.
pub fn w_global(skeleton: &Digraph, t: &Tournament) -> Result<u64> {
    t.vertices().iter().try_fold(0u64, |acc, &v| {
        let s = skeleton.signed_degree(v)?;
        Ok(acc + (s * s) as u64)
    })
}

/// Largest pattern order accepted by [`motif_count_weight`].
pub const MAX_MOTIF_ORDER: usize = 5;

/// Number of faces of `t` isomorphic to `pattern`.
pub fn motif_count_weight(t: &Tournament, pattern: &Tournament) -> Result<u64> {
    Ok(Motif::new(pattern)?.count(t))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Motif {
    order: usize,
    canonical: u128,
    scores: Vec<usize>,
}

impl Motif {
    fn new(pattern: &Tournament) -> Result<Self> {
        if pattern.order() > MAX_MOTIF_ORDER {
            return Err(Error::Parameter(format!(
                "motif pattern of order {} exceeds {MAX_MOTIF_ORDER}",
                pattern.order()
            )));
        }
        let mut scores = pattern.out_degrees();
        scores.sort_unstable();
        Ok(Motif {
            order: pattern.order(),
            canonical: pattern.canonical_mask()?,
            scores,
        })
    }

    fn count(&self, t: &Tournament) -> u64 {
        let n = t.order();
        if self.order > n {
            return 0;
        }
        let mut count = 0;
        let mut subset: Vec<usize> = (0..self.order).collect();
        loop {
            let sub = t.restrict(&subset);
            let mut scores = sub.out_degrees();
            scores.sort_unstable();
            // score sequences are invariant, so they prefilter the permutation search
            if scores == self.scores && sub.canonical_mask().ok() == Some(self.canonical) {
                count += 1;
            }
            if !next_subset(&mut subset, n) {
                return count;
            }
        }
    }
}

/// Advances `s` to the next increasing `k`-subset of `0..n` in lex order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A monotone filtering weight on tournaments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightFunction {
    /// `W_Dr`, see [`w_dr`].
    LocalDirectionality,
    /// `W_c3`, see [`w_c3`].
    ThreeCycle,
    /// Squared signed degrees in an ambient skeleton; holds the signed degree
    /// of every skeleton vertex.
    Global(Vec<i64>),
    /// Count of faces isomorphic to a fixed small pattern.
    MotifCount(Tournament),
    /// `max(a·W_Dr, b·W_c3)`.
    Combined { a: u64, b: u64 },
}

impl WeightFunction {
    /// Global weight relative to `skeleton`.
    pub fn global(skeleton: &Digraph) -> Self {
        WeightFunction::Global(skeleton.signed_degrees())
    }

    /// Global weight relative to the 1-skeleton of `k`.
    pub fn global_for(k: &Tournaplex) -> Self {
        WeightFunction::global(&k.one_skeleton())
    }

    pub fn motif(pattern: Tournament) -> Result<Self> {
        Motif::new(&pattern)?;
        Ok(WeightFunction::MotifCount(pattern))
    }

    pub fn combined(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Parameter("combined weight needs positive a and b".into()));
        }
        Ok(WeightFunction::Combined { a, b })
    }

    pub fn weight(&self, t: &Tournament) -> Result<u64> {
        match self {
            WeightFunction::LocalDirectionality => Ok(w_dr(t)),
            WeightFunction::ThreeCycle => Ok(w_c3(t)),
            WeightFunction::Global(sd) => t.vertices().iter().try_fold(0u64, |acc, &v| {
                let s = *sd.get(v).ok_or(Error::Range {
                    index: v,
                    bound: sd.len(),
                })?;
                Ok(acc + (s * s) as u64)
            }),
            WeightFunction::MotifCount(p) => motif_count_weight(t, p),
            WeightFunction::Combined { a, b } => Ok(combined_filtration_value(t, *a, *b)),
        }
    }

    /// Returns a weight closure over `self`, compiling the motif pattern once.
    pub fn evaluator(&self) -> Result<impl Fn(&Tournament) -> Result<u64> + Sync + '_> {
        let motif = match self {
            WeightFunction::MotifCount(p) => Some(Motif::new(p)?),
            _ => None,
        };
        Ok(move |t: &Tournament| match &motif {
            Some(m) => Ok(m.count(t)),
            None => self.weight(t),
        })
    }
}

/// `max(a·W_Dr(σ), b·W_c3(σ))`, monotone as a maximum of monotone weights.
pub fn combined_filtration_value(t: &Tournament, a: u64, b: u64) -> u64 {
    (a * w_dr(t)).max(b * w_c3(t))
}

/// Number of labelled `n`-tournaments with exactly `j` directed 3-cycles,
/// for `n <= 5`.
pub fn t_table(n: usize) -> Result<BTreeMap<u64, u64>> {
    let row: &[u64] = match n {
        1 => &[1],
        2 => &[2],
        3 => &[6, 2],
        4 => &[24, 16, 24],
        5 => &[120, 120, 240, 240, 280, 24],
        _ => return Err(Error::Parameter(format!("t_table covers 1 <= n <= 5, got {n}"))),
    };
    Ok(row.iter().enumerate().map(|(j, &c)| (j as u64, c)).collect())
}

/// Brute-force count over all `2^C(n,2)` orientations, for `1 <= n <= 6`.
pub fn enumerate_t_table(n: usize) -> Result<BTreeMap<u64, u64>> {
    if !(1..=6).contains(&n) {
        return Err(Error::Parameter(format!(
            "enumerate_t_table covers 1 <= n <= 6, got {n}"
        )));
    }
    let mut table = BTreeMap::new();
    for mask in 0..1u128 << pair_count(n) {
        let t = Tournament::from_mask(n, mask)?;
        *table.entry(c3(&t)).or_insert(0) += 1;
    }
    Ok(table)
}

/// Maximum number of 3-cycles in an `n`-tournament.
pub fn kbs_max_c3(n: u64) -> u64 {
    if n % 2 == 1 {
        (n * n * n - n) / 24
    } else {
        (n * n * n - 4 * n) / 24
    }
}

/// Expected count of `k`-tournaments, and of `k`-tournaments with `j`
/// 3-cycles, in an Erdős–Rényi digraph on `n` vertices where every ordered
/// pair is an edge with probability `p`.
pub fn expected_counts(n: u64, k: usize, p: f64) -> Result<(f64, BTreeMap<u64, f64>)> {
    if k > 5 {
        return Err(Error::Parameter(format!("expected_counts needs k <= 5, got {k}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("p = {p} is not a probability")));
    }
    let table = t_table(k)?;
    let edges = pair_count(k) as i32;
    let choose = binomial(n, k as u64) as f64;
    let pk = p.powi(edges);
    let total = choose * 2f64.powi(edges) * pk;
    let by_j = table.into_iter().map(|(j, t)| (j, choose * t as f64 * pk)).collect();
    Ok((total, by_j))
}

/// Histogram of the tournaments of `k` by (order, c3).
pub fn c3_histogram(k: &Tournaplex) -> BTreeMap<(usize, u64), u64> {
    let mut h = BTreeMap::new();
    for t in k.iter() {
        *h.entry((t.order(), c3(t))).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic3() -> Tournament {
        Tournament::from_edges(&[0, 1, 2], &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Circulant regular 5-tournament: `i -> i+1, i+2 (mod 5)`.
    fn regular5() -> Tournament {
        Tournament::from_fn((0..5).collect(), |x, y| (y - x) % 5 <= 2).unwrap()
    }

    /// Brute-force 3-cycle count through the digraph edge list.
    fn c3_by_edges(t: &Tournament) -> u64 {
        let e = t.edges();
        let has = |u, v| e.contains(&(u, v));
        let vs = t.vertices();
        let mut n = 0;
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                for c in b + 1..vs.len() {
                    let (x, y, z) = (vs[a], vs[b], vs[c]);
                    if (has(x, y) && has(y, z) && has(z, x)) || (has(y, x) && has(z, y) && has(x, z)) {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn local_directionality_examples() {
        assert_eq!(local_directionality(&Tournament::transitive(3)), 8);
        assert_eq!(local_directionality(&cyclic3()), 0);
        let semi4 = Tournament::from_fn((0..4).collect(), |x, y| (y - x) % 4 == 1 || (x, y) == (0, 2))
            .unwrap();
        assert!(semi4.is_semiregular());
        assert_eq!(local_directionality(&semi4), 4);
    }

    #[test]
    fn c3_examples() {
        assert_eq!(c3(&Tournament::transitive(7)), 0);
        assert_eq!(c3(&cyclic3()), 1);
        let r5 = regular5();
        assert!(r5.is_regular());
        assert_eq!(c3_by_edges(&r5), 5);
        assert_eq!(c3(&r5), 5);
    }

    #[test]
    fn weights() {
        assert_eq!(w_dr(&Tournament::from_mask(1, 0).unwrap()), 0);
        assert_eq!(w_dr(&Tournament::from_mask(2, 0).unwrap()), 2);
        assert_eq!(w_dr(&cyclic3()), 2);
        assert_eq!(w_dr(&Tournament::transitive(3)), 10);
        assert_eq!(w_dr(&regular5()), 20);
        assert_eq!(w_c3(&Tournament::transitive(6)), 0);
        assert_eq!(w_c3(&cyclic3()), 1);
    }

    #[test]
    fn global_weight() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        let e = Tournament::from_edges(&[0, 1], &[(0, 1)]).unwrap();
        assert_eq!(w_global(&g, &e).unwrap(), 2);
        let cyc = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(w_global(&cyc, &cyclic3()).unwrap(), 0);
        let far = Tournament::new(vec![0, 5], 1).unwrap();
        assert!(matches!(w_global(&g, &far), Err(Error::Range { .. })));
        assert!(WeightFunction::global(&g).weight(&far).is_err());
    }

    #[test]
    fn motif_counts() {
        let t3 = Tournament::transitive(3);
        let t6 = Tournament::transitive(6);
        assert_eq!(motif_count_weight(&t6, &t3).unwrap(), 20);
        let r5 = regular5();
        assert_eq!(motif_count_weight(&r5, &cyclic3()).unwrap(), c3(&r5));
        assert_eq!(motif_count_weight(&r5, &r5).unwrap(), 1);
        assert!(matches!(
            motif_count_weight(&t6, &t6),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn tables() {
        assert_eq!(t_table(3).unwrap(), BTreeMap::from([(0, 6), (1, 2)]));
        assert_eq!(enumerate_t_table(2).unwrap(), BTreeMap::from([(0, 2)]));
        assert_eq!(enumerate_t_table(5).unwrap().values().sum::<u64>(), 1024);
        let t6 = enumerate_t_table(6).unwrap();
        assert_eq!(t6.values().sum::<u64>(), 1 << 15);
        assert_eq!(*t6.keys().max().unwrap(), kbs_max_c3(6));
        assert!(t_table(6).is_err() && enumerate_t_table(7).is_err() && enumerate_t_table(0).is_err());
    }

    #[test]
    fn kbs_bounds() {
        assert_eq!(kbs_max_c3(3), 1);
        assert_eq!(kbs_max_c3(4), 2);
        assert_eq!(kbs_max_c3(5), 5);
        assert_eq!(kbs_max_c3(6), 8);
    }

    #[test]
    fn expectations() {
        let (e3, _) = expected_counts(5, 3, 1.0).unwrap();
        assert_eq!(e3, 80.0);
        let (e3, by_j) = expected_counts(5, 3, 0.5).unwrap();
        assert!((e3 - 10.0).abs() < 1e-12);
        assert!((by_j.values().sum::<f64>() - e3).abs() < 1e-12);
        assert!(expected_counts(5, 6, 0.5).is_err());
    }

    #[test]
    fn combined_value() {
        assert_eq!(combined_filtration_value(&Tournament::transitive(3), 3, 44), 30);
        assert!(WeightFunction::combined(0, 1).is_err());
    }
}
