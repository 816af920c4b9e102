//! Two digraphs with equal single-parameter barcodes that a combined
//! filtration tells apart.

use tournaplex::complex::flag_tournaplex;
use tournaplex::directionality::WeightFunction;
use tournaplex::fixtures;
use tournaplex::persistence::barcode;

fn main() -> tournaplex::Result<()> {
    let k1 = flag_tournaplex(&fixtures::g1(), 8);
    let k2 = flag_tournaplex(&fixtures::g2(), 8);
    for w in [
        WeightFunction::LocalDirectionality,
        WeightFunction::ThreeCycle,
        WeightFunction::combined(3, 44)?,
    ] {
        let same = barcode(&k1, &w)? == barcode(&k2, &w)?;
        println!("{w:?}: barcodes {}", if same { "equal" } else { "differ" });
    }
    let w = WeightFunction::combined(3, 44)?;
    for (name, k) in [("G1", &k1), ("G2", &k2)] {
        let bars: Vec<String> = barcode(k, &w)?
            .multiplicities()
            .into_iter()
            .filter(|(p, _)| p.dim >= 3)
            .map(|(p, m)| format!("H{}[{},{})^{m}", p.dim, p.birth, p.death))
            .collect();
        println!("{name}: {}", bars.join(" "));
    }
    Ok(())
}
