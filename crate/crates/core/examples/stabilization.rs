//! Koszul complexes, Koszul stabilizations and the fold identities.
//!
//!     cargo run --example stabilization

use mfkit::fold::{koszul_complex, koszul_folding, koszul_homotopy, split_w, stabilize};
use mfkit::homalg::{hom_dim, is_contractible, HomotopyVerdict, SliceMode};
use mfkit::ring::{parse_poly, GradedRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = GradedRing::rational(["x", "y", "z"]);
    let k = koszul_complex(&r, &["x", "y", "z"])?;
    for i in k.lo()..=k.hi() {
        println!("K_{i}: rank {} twists {:?}", k.rank(i), k.module(i).twists());
    }
    println!();

    for w in ["x*y", "x^2 + y^2 + z^2", "x*y*z"] {
        let w = parse_poly(&r, w)?;
        let seq: Vec<&str> = ["x", "y", "z"].into_iter().filter(|v| w.to_string().contains(v)).collect();
        let splitting = split_w(&w, &seq)?;
        let data = koszul_homotopy(&w, &seq, &splitting)?;
        data.verify()?;
        let folding = koszul_folding(&data);
        let e = folding.fold()?;
        let layout = folding.layout();
        let broken = folding.identity_violations(&e, &layout)?;
        println!("stab({}; {w}): rank {} + {}, fold identities broken at {broken:?}", seq.join(","), e.e0().rank(), e.e1().rank());
        let end = hom_dim(&e, &e, 0, SliceMode::Graded { t: 0 })?;
        let contractible = matches!(is_contractible(&e)?, HomotopyVerdict::Witness(_));
        println!("  dim End^0_0 = {end}, contractible: {contractible}");
    }
    println!();

    // A unit in the splitting makes the stabilization contractible.
    let line = GradedRing::rational(["x"]);
    let w = parse_poly(&line, "x")?;
    let e = stabilize(&line, &["x"], &w, &[parse_poly(&line, "1")?])?;
    println!("stab(x; x):\n{e}");
    println!("contractible: {}", matches!(is_contractible(&e)?, HomotopyVerdict::Witness(_)));
    Ok(())
}
