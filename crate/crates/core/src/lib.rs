//! Flag tournaplexes of directed graphs, directionality filtrations and
//! their persistent homology over Z/2, with feature extraction for graph
//! classification.
//!
//! The flag tournaplex of a digraph has one simplex per tournament subgraph
//! (oriented clique); reciprocal edges produce several tournaments on the same
//! vertex set. Its transitive part is the directed flag complex.
//!
//! ```
//! use tournaplex::{complex, digraph::Digraph, directionality::WeightFunction, persistence};
//!
//! let g = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
//! let k = complex::flag_tournaplex(&g, 8);
//! let bars = persistence::barcode(&k, &WeightFunction::LocalDirectionality).unwrap();
//! assert_eq!(bars.to_text(), "0 0 2\n0 0 2\n0 0 inf\n1 2 10\n");
//! ```

pub mod cli;
pub mod digraph;
pub mod directionality;
pub mod error;
pub mod fixtures;
pub mod persistence;
pub mod pipeline;
pub mod complex;

pub use error::{Error, Result};
