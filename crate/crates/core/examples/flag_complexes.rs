//! Flag tournaplex versus directed flag complex of a small digraph with
//! reciprocal edges.

use tournaplex::complex::{directed_flag_complex, flag_tournaplex};
use tournaplex::digraph::Digraph;
use tournaplex::directionality::w_dr;
use tournaplex::persistence::betti_numbers;

fn main() -> tournaplex::Result<()> {
    let g = Digraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 0), (0, 3), (3, 1), (2, 3), (3, 2)])?;
    let tfl = flag_tournaplex(&g, 8);
    let dfl = directed_flag_complex(&g, 8);
    println!("flag tournaplex:       counts {:?}, betti {:?}", tfl.counts(), betti_numbers(&tfl));
    println!("directed flag complex: counts {:?}, betti {:?}", dfl.counts(), betti_numbers(&dfl));
    print!("{}", tfl.dump(w_dr));
    Ok(())
}
