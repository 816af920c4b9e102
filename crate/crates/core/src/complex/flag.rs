use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{pair_bit, Tournament, Tournaplex, MAX_ORDER};
use crate::digraph::Digraph;

/// Options for flag enumeration.
#[derive(Debug, Clone)]
pub struct FlagOptions {
    /// Largest tournament order produced (dimension `max_order - 1`).
    pub max_order: usize,
    /// A warning is logged when one vertex set expands into more than this
    /// many orientations because of reciprocal pairs.
    pub blowup_warning: usize,
    /// Keep only transitive tournaments (the directed flag complex).
    pub transitive_only: bool,
}

impl Default for FlagOptions {
    fn default() -> Self {
        FlagOptions {
            max_order: 8,
            blowup_warning: 1 << 12,
            transitive_only: false,
        }
    }
}

/// Every tournament subgraph of `g` with at most `max_order` vertices.
///
/// A clique of the underlying graph with `r` reciprocal pairs contributes
/// `2^r` tournaments.
pub fn flag_tournaplex(g: &Digraph, max_order: usize) -> Tournaplex {
    flag_tournaplex_with(
        g,
        &FlagOptions {
            max_order,
            ..FlagOptions::default()
        },
    )
}

/// The transitive tournament subgraphs of `g` with at most `max_order`
/// vertices.
pub fn directed_flag_complex(g: &Digraph, max_order: usize) -> Tournaplex {
    flag_tournaplex_with(
        g,
        &FlagOptions {
            max_order,
            transitive_only: true,
            ..FlagOptions::default()
        },
    )
}

struct Walk<'a> {
    g: &'a Digraph,
    und: &'a [Vec<usize>],
    opts: &'a FlagOptions,
    max_order: usize,
    worst: &'a AtomicUsize,
}

pub fn flag_tournaplex_with(g: &Digraph, opts: &FlagOptions) -> Tournaplex {
    let max_order = if opts.max_order > MAX_ORDER {
        log::warn!("max_order {} capped at {MAX_ORDER}", opts.max_order);
        MAX_ORDER
    } else {
        opts.max_order
    };
    if max_order == 0 {
        return Tournaplex::default();
    }
    let n = g.vertex_count();
    let und: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut l: Vec<usize> = g
                .out_neighbors(v)
                .iter()
                .chain(g.in_neighbors(v))
                .copied()
                .filter(|&w| w > v)
                .collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let worst = AtomicUsize::new(0);
    let walk = Walk {
        g,
        und: &und,
        opts,
        max_order,
        worst: &worst,
    };

    let mut grades = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut out: Vec<Vec<Tournament>> = vec![Vec::new(); max_order];
            let mut clique = vec![v];
            walk.extend(&mut clique, vec![0], &und[v], &mut out);
            out
        })
        .reduce(
            || vec![Vec::new(); max_order],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.extend(y);
                }
                a
            },
        );
    grades.par_iter_mut().for_each(|g| g.sort_unstable());

    let worst = worst.into_inner();
    if worst > opts.blowup_warning {
        log::warn!(
            "a single vertex set expanded into {worst} tournaments (warning threshold {})",
            opts.blowup_warning
        );
    }
    Tournaplex::from_sorted_grades(grades)
}

impl Walk<'_> {
    /// Records the tournaments on `clique` and extends by candidates, all of
    /// which are larger than every clique member and adjacent to all of them.
    fn extend(
        &self,
        clique: &mut Vec<usize>,
        orients: Vec<u128>,
        candidates: &[usize],
        out: &mut [Vec<Tournament>],
    ) {
        let k = clique.len();
        self.worst.fetch_max(orients.len(), Ordering::Relaxed);
        out[k - 1].extend(
            orients
                .iter()
                .map(|&o| Tournament::from_parts(clique.clone(), o)),
        );
        if k == self.max_order {
            return;
        }
        for (idx, &w) in candidates.iter().enumerate() {
            let mut next = Vec::with_capacity(orients.len());
            for &o in &orients {
                self.orient_new_vertex(clique, w, o, &mut next);
            }
            if self.opts.transitive_only {
                next.retain(|&o| is_transitive_mask(k + 1, o));
            }
            if next.is_empty() {
                continue;
            }
            let rest = intersect(&candidates[idx + 1..], &self.und[w]);
            clique.push(w);
            self.extend(clique, next, &rest, out);
            clique.pop();
        }
    }

    /// Appends to `next` every orientation of `clique + [w]` extending `o`.
    fn orient_new_vertex(&self, clique: &[usize], w: usize, o: u128, next: &mut Vec<u128>) {
        let k = clique.len();
        let start = next.len();
        next.push(o);
        for (a, &u) in clique.iter().enumerate() {
            let bit = 1u128 << pair_bit(a, k);
            let fwd = self.g.has_edge(u, w);
            let back = self.g.has_edge(w, u);
            let end = next.len();
            for i in start..end {
                match (fwd, back) {
                    (true, false) => next[i] |= bit,
                    (false, true) => {}
                    (true, true) => {
                        let m = next[i];
                        next.push(m | bit);
                    }
                    (false, false) => unreachable!("candidates are adjacent to the clique"),
                }
            }
        }
    }
}

fn is_transitive_mask(n: usize, mask: u128) -> bool {
    Tournament::from_parts((0..n).collect(), mask).is_transitive()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
