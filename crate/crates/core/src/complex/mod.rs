//! Tournaments, tournaplexes and the flag constructions on a digraph.

mod flag;
mod tournament;

pub use flag::{directed_flag_complex, flag_tournaplex, flag_tournaplex_with, FlagOptions};
pub use tournament::{Tournament, MAX_ORDER};
pub(crate) use tournament::{pair_bit, pair_count};

use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A face-closed collection of tournaments, graded by dimension.
///
/// `grade(d)` holds the `d`-simplices, i.e. the `(d + 1)`-tournaments, sorted
/// by (vertex tuple, orientation).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tournaplex {
    grades: Vec<Vec<Tournament>>,
}

impl Tournaplex {
    /// Builds a tournaplex from arbitrary tournaments, rejecting duplicates
    /// and collections that are not closed under faces.
    pub fn from_tournaments<I>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = Tournament>,
    {
        let mut grades: Vec<Vec<Tournament>> = Vec::new();
        for t in items {
            let d = t.dim();
            if grades.len() <= d {
                grades.resize_with(d + 1, Vec::new);
            }
            grades[d].push(t);
        }
        for g in &mut grades {
            g.sort_unstable();
            if let Some(w) = g.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("duplicate tournament {}", w[0])));
            }
        }
        let k = Tournaplex { grades };
        if let Some((s, f)) = k.missing_face() {
            return Err(Error::Validation(format!("face {f} of {s} is missing")));
        }
        Ok(k)
    }

    /// Grades must already be sorted, deduplicated and face-closed.
    pub(crate) fn from_sorted_grades(mut grades: Vec<Vec<Tournament>>) -> Self {
        while grades.last().is_some_and(|g| g.is_empty()) {
            grades.pop();
        }
        Tournaplex { grades }
    }

    /// Top dimension, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.grades.len().checked_sub(1)
    }

    pub fn grade(&self, d: usize) -> &[Tournament] {
        self.grades.get(d).map_or(&[], |g| g.as_slice())
    }

    /// Simplex count per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.grades.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.grades.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    /// All simplices, by dimension then (vertices, orientation).
    pub fn iter(&self) -> impl Iterator<Item = &Tournament> {
        self.grades.iter().flatten()
    }

    pub fn contains(&self, t: &Tournament) -> bool {
        self.grades
            .get(t.dim())
            .is_some_and(|g| g.binary_search(t).is_ok())
    }

    /// Index of `t` inside `grade(t.dim())`.
    pub fn position(&self, t: &Tournament) -> Option<usize> {
        self.grades.get(t.dim())?.binary_search(t).ok()
    }

    fn missing_face(&self) -> Option<(Tournament, Tournament)> {
        self.iter()
            .flat_map(|s| s.faces().map(move |f| (s, f)))
            .find(|(_, f)| !self.contains(f))
            .map(|(s, f)| (s.clone(), f))
    }

    pub fn is_face_closed(&self) -> bool {
        self.missing_face().is_none()
    }

    /// The simplices satisfying `keep`. The predicate must be closed under
    /// taking faces (sublevel sets of monotone weights are).
    pub fn sub_tournaplex<F>(&self, keep: F) -> Tournaplex
    where
        F: Fn(&Tournament) -> bool,
    {
        Tournaplex::from_sorted_grades(
            self.grades
                .iter()
                .map(|g| g.iter().filter(|t| keep(t)).cloned().collect())
                .collect(),
        )
    }

    /// The transitive tournaments; for a flag tournaplex this is the directed
    /// flag complex.
    pub fn transitive_part(&self) -> Tournaplex {
        self.sub_tournaplex(Tournament::is_transitive)
    }

    /// The 1-skeleton read as a digraph on `0..=max vertex`. Two 1-simplices
    /// on the same pair give a reciprocal pair.
    pub fn one_skeleton(&self) -> Digraph {
        let n = self.grade(0).iter().map(|v| v.vertices()[0] + 1).max().unwrap_or(0);
        let edges = self.grade(1).iter().map(|e| e.edges()[0]);
        Digraph::new(n, edges).expect("edges of a tournaplex form a simple digraph")
    }

    /// One line per tournament: `dim d : v0 .. vn : mask-hex : weight`.
    pub fn dump<F>(&self, weight: F) -> String
    where
        F: Fn(&Tournament) -> u64,
    {
        let mut s = String::new();
        for t in self.iter() {
            let _ = writeln!(s, "{t} : {}", weight(t));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_open_collections() {
        let tri = Tournament::transitive(3);
        let err = Tournaplex::from_tournaments([tri.clone()]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let mut all: Vec<Tournament> = (0..3).map(|v| Tournament::new(vec![v], 0).unwrap()).collect();
        all.extend(tri.faces());
        let boundary = Tournaplex::from_tournaments(all.clone()).unwrap();
        assert_eq!(boundary.counts(), vec![3, 3]);
        all.push(tri.clone());
        assert_eq!(Tournaplex::from_tournaments(all.clone()).unwrap().counts(), vec![3, 3, 1]);
        all.push(tri);
        assert!(Tournaplex::from_tournaments(all).is_err());
    }

    #[test]
    fn dump_format() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        let k = flag_tournaplex(&g, 8);
        assert_eq!(k.dump(|t| t.dim() as u64 * 2), "dim 0 : 0 : 0 : 0\ndim 0 : 1 : 0 : 0\ndim 1 : 0 1 : 1 : 2\n");
    }

    #[test]
    fn one_skeleton_keeps_reciprocal_pairs() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(flag_tournaplex(&g, 3).one_skeleton(), g);
    }
}
