use std::fmt;

use crate::error::{Error, Result};

/// Largest supported tournament order; `C(16, 2) = 120` orientation bits fit
/// in a `u128`.
pub const MAX_ORDER: usize = 16;

/// Bit position of the vertex pair at positions `a < b` (colex order, so the
/// pairs of the first `k` vertices occupy the low `C(k, 2)` bits).
#[inline]
pub(crate) fn pair_bit(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    b * (b - 1) / 2 + a
}

#[inline]
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An oriented clique on a strictly increasing tuple of vertices.
///
/// For positions `a < b` the orientation bit of the pair is set when the edge
/// runs `vertices[a] -> vertices[b]` and clear when it runs the other way.
/// Identity is the pair (vertex tuple, orientation), so two tournaments on the
/// same vertices with different orientations are different simplices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tournament {
    vertices: Vec<usize>,
    orientation: u128,
}

impl Tournament {
    pub fn new(vertices: Vec<usize>, orientation: u128) -> Result<Self> {
        let n = vertices.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Parameter(format!(
                "tournament order {n} outside 1..={MAX_ORDER}"
            )));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(format!(
                "tournament vertices {vertices:?} are not strictly increasing"
            )));
        }
        if orientation >> pair_count(n) != 0 && pair_count(n) < 128 {
            return Err(Error::Validation(format!(
                "orientation {orientation:#x} has bits beyond the {} pairs of an order-{n} tournament",
                pair_count(n)
            )));
        }
        Ok(Tournament { vertices, orientation })
    }

    pub(crate) fn from_parts(vertices: Vec<usize>, orientation: u128) -> Self {
        Tournament { vertices, orientation }
    }

    /// Tournament on vertices `0..n` with the given orientation mask.
    pub fn from_mask(n: usize, mask: u128) -> Result<Self> {
        Tournament::new((0..n).collect(), mask)
    }

    /// Tournament on `vertices` where `beats(x, y)` decides whether the edge
    /// between vertex labels `x < y` runs `x -> y`.
    pub fn from_fn<F>(vertices: Vec<usize>, beats: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let mut mask = 0u128;
        for b in 1..vertices.len() {
            for a in 0..b {
                if beats(vertices[a], vertices[b]) {
                    mask |= 1 << pair_bit(a, b);
                }
            }
        }
        Tournament::new(vertices, mask)
    }

    /// The transitive tournament on `0..n` oriented along the vertex order.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_mask(n, full_mask(n)).expect("order within bounds")
    }

    /// Builds a tournament from an explicit edge list over `vertices`.
    /// Every pair must be covered exactly once.
    pub fn from_edges(vertices: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let pos = |v: usize| {
            sorted
                .binary_search(&v)
                .map_err(|_| Error::Validation(format!("edge endpoint {v} not in vertex set")))
        };
        let n = sorted.len();
        let mut seen = 0u128;
        let mut mask = 0u128;
        for &(u, v) in edges {
            let (a, b) = (pos(u)?, pos(v)?);
            if a == b {
                return Err(Error::Validation(format!("self-loop at {u}")));
            }
            let bit = 1u128 << pair_bit(a.min(b), a.max(b));
            if seen & bit != 0 {
                return Err(Error::Validation(format!("pair {{{u}, {v}}} oriented twice")));
            }
            seen |= bit;
            if a < b {
                mask |= bit;
            }
        }
        if seen != full_mask(n) {
            return Err(Error::Validation("edge list does not cover every pair".into()));
        }
        Tournament::new(sorted, mask)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Simplex dimension, `order - 1`.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn orientation(&self) -> u128 {
        self.orientation
    }

    /// Whether the vertex at position `a` beats (points to) the vertex at
    /// position `b`.
    #[inline]
    pub fn beats(&self, a: usize, b: usize) -> bool {
        if a < b {
            self.orientation >> pair_bit(a, b) & 1 == 1
        } else {
            self.orientation >> pair_bit(b, a) & 1 == 0
        }
    }

    /// Whether the edge `u -> v` (vertex labels) belongs to this tournament.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.vertices.binary_search(&u), self.vertices.binary_search(&v)) {
            (Ok(a), Ok(b)) if a != b => self.beats(a, b),
            _ => false,
        }
    }

    /// Directed edges by vertex label.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::with_capacity(pair_count(n));
        for b in 1..n {
            for a in 0..b {
                let (x, y) = (self.vertices[a], self.vertices[b]);
                out.push(if self.beats(a, b) { (x, y) } else { (y, x) });
            }
        }
        out
    }

    /// Out-degree of every position inside the tournament.
    pub fn out_degrees(&self) -> Vec<usize> {
        let n = self.order();
        let mut out = vec![0usize; n];
        for b in 1..n {
            for a in 0..b {
                if self.beats(a, b) {
                    out[a] += 1;
                } else {
                    out[b] += 1;
                }
            }
        }
        out
    }

    /// `indeg - outdeg` of every position inside the tournament.
    pub fn signed_degrees(&self) -> Vec<i64> {
        let n = self.order() as i64;
        self.out_degrees()
            .into_iter()
            .map(|o| (n - 1 - o as i64) - o as i64)
            .collect()
    }

    /// The `i`-th face operator: drop the vertex at position `i`.
    pub fn face(&self, i: usize) -> Result<Tournament> {
        let n = self.order();
        if n < 2 || i >= n {
            return Err(Error::Range { index: i, bound: if n < 2 { 0 } else { n } });
        }
        let keep: Vec<usize> = (0..n).filter(|&p| p != i).collect();
        Ok(self.restrict(&keep))
    }

    /// All codimension-one faces in face-operator order.
    pub fn faces(&self) -> impl Iterator<Item = Tournament> + '_ {
        let n = if self.order() < 2 { 0 } else { self.order() };
        (0..n).map(move |i| self.face(i).expect("index in range"))
    }

    /// Induced sub-tournament on the given increasing positions.
    pub fn restrict(&self, positions: &[usize]) -> Tournament {
        let mut mask = 0u128;
        for b in 1..positions.len() {
            for a in 0..b {
                if self.beats(positions[a], positions[b]) {
                    mask |= 1 << pair_bit(a, b);
                }
            }
        }
        Tournament {
            vertices: positions.iter().map(|&p| self.vertices[p]).collect(),
            orientation: mask,
        }
    }

    /// The orientation induces a linear order, i.e. out-degrees are all distinct.
    pub fn is_transitive(&self) -> bool {
        let mut seen = 0u32;
        for o in self.out_degrees() {
            if seen >> o & 1 == 1 {
                return false;
            }
            seen |= 1 << o;
        }
        true
    }

    /// Every vertex has equal in- and out-degree.
    pub fn is_regular(&self) -> bool {
        self.signed_degrees().iter().all(|&s| s == 0)
    }

    /// In- and out-degree differ by at most one at every vertex.
    pub fn is_semiregular(&self) -> bool {
        self.signed_degrees().iter().all(|&s| s.abs() <= 1)
    }

    /// Isomorphism-invariant code: the smallest orientation mask over all
    /// relabelings of the positions. Cost is `order!`, so the order is capped.
    pub fn canonical_mask(&self) -> Result<u128> {
        const CAP: usize = 8;
        let n = self.order();
        if n > CAP {
            return Err(Error::Parameter(format!(
                "canonical form limited to order {CAP}, got {n}"
            )));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u128::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut mask = 0u128;
            for b in 1..n {
                for a in 0..b {
                    if self.beats(p[a], p[b]) {
                        mask |= 1 << pair_bit(a, b);
                    }
                }
            }
            best = best.min(mask);
        });
        Ok(best)
    }
}

pub(crate) fn full_mask(n: usize) -> u128 {
    let k = pair_count(n);
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

fn permute<F: FnMut(&[usize])>(p: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} :", self.dim())?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        write!(f, " : {:x}", self.orientation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic3() -> Tournament {
        Tournament::from_edges(&[0, 1, 2], &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive3() -> Tournament {
        Tournament::from_edges(&[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn faces_of_cyclic_triangle() {
        let f = cyclic3().face(1).unwrap();
        assert_eq!(f.vertices(), &[0, 2]);
        assert_eq!(f.edges(), vec![(2, 0)]);
    }

    #[test]
    fn faces_of_transitive_triangle() {
        let f = transitive3().face(0).unwrap();
        assert_eq!(f.edges(), vec![(1, 2)]);
    }

    #[test]
    fn face_index_out_of_range() {
        assert!(matches!(cyclic3().face(3), Err(Error::Range { .. })));
        let v = Tournament::from_mask(1, 0).unwrap();
        assert!(matches!(v.face(0), Err(Error::Range { .. })));
    }

    #[test]
    fn classification() {
        let c = cyclic3();
        assert!(!c.is_transitive() && c.is_regular() && c.is_semiregular());
        let t = Tournament::transitive(4);
        assert!(t.is_transitive() && !t.is_regular() && !t.is_semiregular());
    }

    #[test]
    fn validation() {
        assert!(Tournament::new(vec![1, 0], 0).is_err());
        assert!(Tournament::new(vec![0, 1], 0b10).is_err());
        assert!(Tournament::new(vec![], 0).is_err());
        assert!(Tournament::from_edges(&[0, 1, 2], &[(0, 1), (1, 2)]).is_err());
        assert!(Tournament::from_edges(&[0, 1], &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn canonical_form_separates_the_two_triangles() {
        assert_ne!(cyclic3().canonical_mask(), transitive3().canonical_mask());
        let relabeled = Tournament::from_edges(&[3, 5, 9], &[(5, 3), (9, 5), (9, 3)]).unwrap();
        assert_eq!(relabeled.canonical_mask(), transitive3().canonical_mask());
    }

    #[test]
    fn display() {
        assert_eq!(cyclic3().to_string(), "dim 2 : 0 1 2 : 5");
    }
}
