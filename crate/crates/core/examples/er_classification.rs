//! Classify biased Erdős–Rényi digraphs by their local-directionality
//! barcodes and compare against directed-flag Betti numbers.
//!
//! Usage: `cargo run --release --example er_classification -- [seed] [n_vertices]`

use tournaplex::pipeline::ErExperiment;

fn main() -> tournaplex::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let n_vertices = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let report = ErExperiment { seed, n_vertices, ..ErExperiment::default() }.run()?;
    print!("{}", report.to_text());
    Ok(())
}
