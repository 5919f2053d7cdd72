//! Cones, the standard triangle, contractible envelopes and totalization.
//!
//!     cargo run --example cones

use mfkit::corpus::{build, split_sequence};
use mfkit::fact::{
    cone, cone_composite_homotopy, cone_inclusion, cone_projection, contractible_envelope, envelope_contraction,
    FactMorphism,
};
use mfkit::fold::{totalize, FactChain};
use mfkit::homalg::{is_contractible, HomotopyVerdict};

fn verdict(v: &HomotopyVerdict) -> &'static str {
    match v {
        HomotopyVerdict::Witness(_) => "contractible",
        HomotopyVerdict::Absent => "not contractible",
        HomotopyVerdict::UnknownAboveCap(_) => "no contraction below the cap",
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = build("stab_koszul", &["2".into(), "x*y".into()])?;
    println!("E = stab(x,y; xy):\n{e}");

    let id = FactMorphism::identity(&e);
    let c = cone(&id)?;
    println!("Cone(id) has rank {} + {}: {}", c.e0().rank(), c.e1().rank(), verdict(&is_contractible(&c)?));

    // E -> E -> Cone(id) -> E[1]
    let i = cone_inclusion(&id)?;
    let pi = cone_projection(&id)?;
    println!("i valid: {}, pi valid: {}", i.is_valid(), pi.is_valid());
    let composite = i.compose(&id)?;
    let zero = FactMorphism::zero(&e, &c, 0)?;
    println!("i∘id null-homotopic: {}", cone_composite_homotopy(&id).witnesses(&composite, &zero));
    println!("pi∘i = 0: {}\n", pi.compose(&i)?.is_zero());

    let (g, m) = contractible_envelope(&e)?;
    let h = envelope_contraction(&g, e.e0().rank(), e.e1().rank());
    let idg = FactMorphism::identity(&g);
    println!("G(E) rank {} + {}; E -> G(E) valid: {}", g.e0().rank(), g.e1().rank(), m.is_valid());
    println!("explicit contraction works: {}", h.witnesses(&idg, &FactMorphism::zero(&g, &g, 0)?));
    println!("search agrees: {}\n", verdict(&is_contractible(&g)?));

    let single = totalize(&FactChain::single(e.clone()))?;
    println!("Tot of E in degree 0 is E: {}", single == e);
    let ses = totalize(&split_sequence(&e)?)?;
    println!("Tot(E -> E⊕E -> E) rank {} + {}: {}", ses.e0().rank(), ses.e1().rank(), verdict(&is_contractible(&ses)?));
    Ok(())
}
