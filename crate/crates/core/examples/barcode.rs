//! Local-directionality barcode of a digraph's flag tournaplex.
//!
//! Usage: `cargo run --example barcode -- [graph.flag] [weight]`
//! Without arguments the bundled 8-vertex fixture is used.

use tournaplex::cli::parse_weight;
use tournaplex::complex::flag_tournaplex;
use tournaplex::digraph::parse_digraph;
use tournaplex::fixtures;
use tournaplex::persistence::barcode;

fn main() -> tournaplex::Result<()> {
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(path) => parse_digraph(&std::fs::read_to_string(path)?)?,
        None => fixtures::g1(),
    };
    let w = parse_weight(&args.next().unwrap_or_else(|| "dr".into()), Some(&g))?;
    let k = flag_tournaplex(&g, 8);
    println!("tournaments per dimension: {:?}", k.counts());
    for (bar, mult) in barcode(&k, &w)?.multiplicities() {
        println!("H{} [{}, {})^{mult}", bar.dim, bar.birth, bar.death);
    }
    Ok(())
}
