//! Bundled example digraphs.
//!
//! `G1` and `G2` are two non-isomorphic 8-tournaments sharing 22 edges and
//! differing in the orientation of the remaining 6. Their flag tournaplexes
//! have identical barcodes under the local directionality and 3-cycle
//! filtrations but differ in the joint (W_Dr, W_c3) bifiltration.

use crate::digraph::{parse_digraph, Digraph};

pub const G1_FLAG: &str = include_str!("../fixtures/g1.flag");
pub const G2_FLAG: &str = include_str!("../fixtures/g2.flag");

pub fn g1() -> Digraph {
    parse_digraph(G1_FLAG).expect("bundled fixture parses")
}

pub fn g2() -> Digraph {
    parse_digraph(G2_FLAG).expect("bundled fixture parses")
}

/// Local directionality levels at which the bifiltration of `G1`/`G2`
/// changes.
pub const DR_LEVELS: [u64; 21] = [
    0, 2, 10, 12, 20, 28, 36, 44, 52, 60, 62, 70, 78, 86, 94, 102, 110, 134, 142, 150, 208,
];

/// 3-cycle levels at which the bifiltration of `G1`/`G2` changes.
pub const C3_LEVELS: [u64; 8] = [0, 1, 2, 3, 4, 5, 6, 9];
