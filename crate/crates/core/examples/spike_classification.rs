//! Two classes of synthetic spike trains on one structural digraph,
//! clustered from transmission-response barcodes.
//!
//! Usage: `cargo run --release --example spike_classification -- [seed]`

use tournaplex::pipeline::SpikeExperiment;

fn main() -> tournaplex::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let report = SpikeExperiment::with_seed(seed).run()?;
    print!("{}", report.to_text());
    Ok(())
}
