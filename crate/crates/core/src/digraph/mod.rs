//! Simple digraphs: construction, the flagser-style text format, signed
//! degrees and the biased Erdős–Rényi generator.
//!
//! A [`Digraph`] is loop-free and has at most one edge per ordered pair, but
//! reciprocal pairs `u -> v`, `v -> u` are allowed. Reciprocal pairs are what
//! make a flag tournaplex larger than the ordinary flag complex.

mod spikes;

pub use spikes::{transmission_response, SpikeTrain};

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A finite simple digraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Digraph {
    /// The digraph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a digraph, rejecting self-loops, duplicate edges and endpoints
    /// outside `0..n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.finish();
        for (u, list) in g.out.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::Range { index: u, bound: n });
        }
        if v >= n {
            return Err(Error::Range { index: v, bound: n });
        }
        if u == v {
            return Err(Error::Validation(format!("self-loop at vertex {u}")));
        }
        self.out[u].push(v);
        self.inc[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    fn finish(&mut self) {
        self.out.iter_mut().for_each(|l| l.sort_unstable());
        self.inc.iter_mut().for_each(|l| l.sort_unstable());
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.out.len() && self.out[u].binary_search(&v).is_ok()
    }

    /// True when at least one of `u -> v`, `v -> u` is present.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// Sorted out-neighbours of `v`.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Sorted in-neighbours of `v`.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// Number of unordered pairs `{u, v}` with both orientations present.
    pub fn reciprocal_pair_count(&self) -> usize {
        self.edges().filter(|&(u, v)| u < v && self.has_edge(v, u)).count()
    }

    /// `indeg(v) - outdeg(v)`.
    pub fn signed_degree(&self, v: usize) -> Result<i64> {
        if v >= self.vertex_count() {
            return Err(Error::Range {
                index: v,
                bound: self.vertex_count(),
            });
        }
        Ok(self.inc[v].len() as i64 - self.out[v].len() as i64)
    }

    /// Signed degree of every vertex, indexed by vertex.
    pub fn signed_degrees(&self) -> Vec<i64> {
        (0..self.vertex_count())
            .map(|v| self.inc[v].len() as i64 - self.out[v].len() as i64)
            .collect()
    }

    /// True when every edge of `self` is an edge of `other` and both share
    /// the same vertex set.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.vertex_count() == other.vertex_count() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Serializes to the flagser-style format read by [`Digraph::from_str`].
    /// Vertex weights are written as zeros.
    pub fn to_flagser(&self) -> String {
        let mut s = String::from("dim 0\n");
        let weights: Vec<&str> = vec!["0"; self.vertex_count()];
        s.push_str(&weights.join(" "));
        s.push_str("\ndim 1\n");
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the flagser-style digraph format.
///
/// ```text
/// # comment
/// dim 0
/// 0 0 0
/// dim 1
/// 0 1
/// 1 2
/// ```
///
/// The tokens after `dim 0` are per-vertex weights; they must be numeric but
/// are otherwise ignored, and their count fixes the vertex count.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    enum Section {
        Start,
        Vertices,
        Edges,
    }
    let mut section = Section::Start;
    let mut n = 0usize;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            section = match rest.trim() {
                "0" => Section::Vertices,
                "1" => Section::Edges,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unsupported section `dim {other}`"),
                    })
                }
            };
            continue;
        }
        match section {
            Section::Start => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "data before `dim 0` header".into(),
                })
            }
            Section::Vertices => {
                for tok in line.split_whitespace() {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad vertex weight `{tok}`"),
                    })?;
                    n += 1;
                }
            }
            Section::Edges => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected `u v`, got `{line}`"),
                    });
                }
                let parse = |t: &str| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad vertex index `{t}`"),
                    })
                };
                edges.push((parse(toks[0])?, parse(toks[1])?, line_no));
            }
        }
    }
    let mut g = Digraph::empty(n);
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for (u, v, line_no) in edges {
        if !seen.insert((u, v)) {
            return Err(Error::Validation(format!(
                "duplicate edge ({u}, {v}) on line {line_no}"
            )));
        }
        g.insert_edge(u, v)?;
    }
    g.finish();
    Ok(g)
}

impl FromStr for Digraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_digraph(s)
    }
}

/// Biased Erdős–Rényi digraph: the edge `(i, j)` is present with probability
/// `p` when `i > j` and `q` when `i < j`, all draws independent.
///
/// The stream is fixed: a `ChaCha8Rng` seeded with `seed_from_u64(seed)`,
/// ordered pairs visited row-major (`i` outer, `j` inner, `i == j` skipped)
/// with one `gen::<f64>()` draw per pair, and the edge kept iff the draw is
/// below its probability.
pub fn er_biased(n: usize, p: f64, q: f64, seed: u64) -> Result<Digraph> {
    for (name, x) in [("p", p), ("q", q)] {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Parameter(format!("{name} = {x} is not a probability")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::empty(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let prob = if i > j { p } else { q };
            if rng.gen::<f64>() < prob {
                g.out[i].push(j);
                g.inc[j].push(i);
                g.edge_count += 1;
            }
        }
    }
    g.finish();
    Ok(g)
}

/// Ordinary Erdős–Rényi digraph: every ordered pair independently with
/// probability `p`. Same stream layout as [`er_biased`].
pub fn er_uniform(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    er_biased(n, p, p, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cycle() {
        let g = parse_digraph("dim 0\n0 0 0\ndim 1\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn parses_reciprocal_pair() {
        let g: Digraph = "dim 0\n0 0\ndim 1\n0 1\n1 0".parse().unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.reciprocal_pair_count(), 1);
        assert_eq!(g.signed_degree(0).unwrap(), 0);
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(
            parse_digraph("dim 0\n0\ndim 1\n0 0"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(matches!(
            parse_digraph("dim 0\n0 0\ndim 1\n0 2"),
            Err(Error::Range { index: 2, bound: 2 })
        ));
        assert!(matches!(
            parse_digraph("dim 0\n0 0\ndim 1\n0 1\n0 1"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Digraph::new(2, [(0, 1), (0, 1)]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_digraph("# header\ndim 0\n0 0\ndim 1\n0 1 2").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 5,
                msg: "expected `u v`, got `0 1 2`".into()
            }
        );
        assert!(matches!(
            parse_digraph("0 1\ndim 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("dim 0\nx y"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn signed_degrees() {
        let cyc = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(cyc.signed_degree(0).unwrap(), 0);
        let tr = Digraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(tr.signed_degree(2).unwrap(), 2);
        assert_eq!(tr.signed_degree(0).unwrap(), -2);
        assert!(matches!(tr.signed_degree(3), Err(Error::Range { .. })));
    }

    #[test]
    fn flagser_round_trip() {
        let g = er_biased(30, 0.3, 0.1, 9).unwrap();
        let back = parse_digraph(&g.to_flagser()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn er_zero_probability_is_edgeless() {
        let g = er_biased(40, 0.0, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 40);
    }

    #[test]
    fn er_q_zero_points_down() {
        let g = er_biased(250, 0.25, 0.0, 3).unwrap();
        assert!(g.edge_count() > 0);
        assert!(g.edges().all(|(i, j)| i > j));
    }

    #[test]
    fn er_rejects_bad_probability() {
        assert!(matches!(er_biased(3, 1.5, 0.0, 0), Err(Error::Parameter(_))));
        assert!(matches!(er_biased(3, 0.5, -0.1, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn er_edge_count_within_four_sigma() {
        // Sum of two binomials: C(100,2) draws at p and C(100,2) at q.
        let pairs: f64 = 4950.0;
        let (p, q) = (0.25, 0.05);
        let mean = pairs * (p + q);
        let sd = (pairs * p * (1.0 - p) + pairs * q * (1.0 - q)).sqrt();
        assert!((mean - 1485.0_f64).abs() < 1e-9);
        for seed in 0..20 {
            let g = er_biased(100, p, q, seed).unwrap();
            assert!((g.edge_count() as f64 - mean).abs() <= 4.0 * sd, "seed {seed}");
        }
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(er_biased(50, 0.3, 0.2, 77).unwrap(), er_biased(50, 0.3, 0.2, 77).unwrap());
        assert_ne!(er_biased(50, 0.3, 0.2, 77).unwrap(), er_biased(50, 0.3, 0.2, 78).unwrap());
    }
}
