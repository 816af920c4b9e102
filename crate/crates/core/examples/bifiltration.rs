//! Betti numbers over the two-parameter (W_Dr, W_c3) grid for both fixtures,
//! printing the cells where they differ.

use tournaplex::complex::flag_tournaplex;
use tournaplex::fixtures::{self, C3_LEVELS, DR_LEVELS};
use tournaplex::persistence::bifiltration_betti;

fn main() -> tournaplex::Result<()> {
    let grid = |g| bifiltration_betti(&flag_tournaplex(&g, 8), &DR_LEVELS, &C3_LEVELS);
    let (a, b) = (grid(fixtures::g1())?, grid(fixtures::g2())?);
    for (x, y) in a.iter().zip(&b) {
        let mark = if x.betti != y.betti { "  <- differs" } else { "" };
        println!("dr<={:>3} c3<={}  G1 {:?}  G2 {:?}{mark}", x.dr_threshold, x.c3_threshold, x.betti, y.betti);
    }
    Ok(())
}
