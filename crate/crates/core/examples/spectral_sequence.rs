//! E₁ page of the spectral sequence for Hom(E, F) built from resolutions of
//! the components of E, compared with Hom computed directly.
//!
//!     cargo run --example spectral_sequence

use mfkit::corpus::build;
use mfkit::fold::{koszul_complex, FreeComplex};
use mfkit::homalg::{direct_hom_dims, e1_page, ss_degeneration_check, ComponentResolutions, E1Variant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // E is the stabilization of R/(x) for w = x^3; its E⁰ component is
    // resolved by the Koszul complex on x.
    let e = build("stab_koszul", &["1".into(), "x^3".into()])?;
    let f = build("mf_pair", &["1".into(), "3".into()])?;
    let res = ComponentResolutions { m1: FreeComplex::zero(e.ring()), zero: koszul_complex(e.ring(), &["x"])? };
    let window = (-2, 2);

    for t in -1..=1 {
        let direct = direct_hom_dims(&e, &f, t, window)?;
        for variant in [E1Variant::Corrected, E1Variant::Printed] {
            let table = e1_page(&res, &f, t, window, variant)?;
            let report = ss_degeneration_check(&table, &direct)?;
            println!("{table}");
            println!("{report}");
        }
    }
    Ok(())
}
