//! Transmission-response graphs of a synthetic spike train and the feature
//! matrices built from them.

use tournaplex::digraph::{er_uniform, transmission_response};
use tournaplex::pipeline::{algorithm2, algorithm3, synthetic_spike_train};

fn main() -> tournaplex::Result<()> {
    let g = er_uniform(60, 0.1, 3)?;
    let trains: Vec<_> = (0..4)
        .map(|i| synthetic_spike_train(&vec![10.0 + 10.0 * (i % 2) as f64; 60], 250.0, i))
        .collect();
    for (t, tr) in transmission_response(&g, &trains[0], 50.0, 5.0)?.iter().enumerate() {
        println!("bin {t}: {} edges", tr.edge_count());
    }
    let bars = algorithm2(&trains, &g, 4, 50.0, 5.0, 8)?;
    print!("bar-count features\n{}", bars.to_csv());
    let betti = algorithm3(&trains, &g, 2, 4, 50.0, 5.0, 8)?;
    print!("betti features\n{}", betti.to_csv());
    Ok(())
}
