//! Directionality invariants of tournaments: counts by 3-cycles, the maximum
//! 3-cycle count and expected tournament counts in random digraphs.

use tournaplex::complex::Tournament;
use tournaplex::directionality::{
    c3, enumerate_t_table, expected_counts, kbs_max_c3, local_directionality, motif_count_weight,
};

fn main() -> tournaplex::Result<()> {
    for n in 1..=6 {
        println!("n={n}: tournaments by 3-cycles {:?}, max {}", enumerate_t_table(n)?, kbs_max_c3(n as u64));
    }
    let regular = Tournament::from_fn((0..5).collect(), |x, y| (y + 5 - x) % 5 <= 2)?;
    println!(
        "regular 5-tournament: Dr {}, c3 {}, transitive triples {}",
        local_directionality(&regular),
        c3(&regular),
        motif_count_weight(&regular, &Tournament::transitive(3))?
    );
    for k in [3, 4, 5] {
        let (total, by_j) = expected_counts(20, k, 0.3)?;
        println!("E[X_{k}] in ER(20, 0.3) = {total:.3}, split by 3-cycles {by_j:.3?}");
    }
    Ok(())
}
