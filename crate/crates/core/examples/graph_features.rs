//! Feature selection on a batch of biased random digraphs followed by
//! k-means, without the full experiment harness.

use tournaplex::digraph::er_biased;
use tournaplex::pipeline::{adjusted_rand_index, algorithm1, kmeans};

fn main() -> tournaplex::Result<()> {
    let mut graphs = Vec::new();
    let mut truth = Vec::new();
    for (group, q) in [0.0, 0.1].into_iter().enumerate() {
        for i in 0..6 {
            graphs.push(er_biased(40, 0.3, q, 1_000 * group as u64 + i)?);
            truth.push(group);
        }
    }
    let features = algorithm1(&graphs, 4, 5)?;
    print!("{}", features.to_csv());
    let clusters = kmeans(&features.to_f64(), 2, 0, 10)?;
    println!("clusters {:?}", clusters.labels);
    println!("ari {:?}", adjusted_rand_index(&truth, &clusters.labels)?);
    Ok(())
}
