//! Writes a few documents, reads them back, and checks that the canonical
//! form is stable.
//!
//!     cargo run --example documents [OUT_DIR]

use std::path::PathBuf;

use mfkit::fact::{FactMorphism, Factorization};
use mfkit::fold::{koszul_complex, FreeComplex};
use mfkit::homalg::ComponentResolutions;
use mfkit::io::{canonicalize, parse_document, write_document, Document, Payload};
use mfkit::ring::{parse_poly, GradedRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from);

    let r = GradedRing::rational(["x", "y"]);
    let p = |s: &str| parse_poly(&r, s);
    let e = Factorization::rank_one(p("x*y")?, p("x")?, p("y")?)?;

    let identity = Document::new(e.w().clone(), Payload::Morphism(FactMorphism::identity(&e)));

    let line = GradedRing::rational(["x"]);
    let point = ComponentResolutions { m1: FreeComplex::zero(&line), zero: koszul_complex(&line, &["x"])? };
    let resolution = Document::new(parse_poly(&line, "x^2")?, Payload::Resolutions(point));

    for (name, doc) in [("identity_xy.json", identity), ("resolution_point.json", resolution)] {
        let text = write_document(&doc);
        let back = parse_document(&text)?;
        assert_eq!(back, doc);
        assert_eq!(canonicalize(&text)?, text);
        match &out {
            Some(dir) => {
                std::fs::write(dir.join(name), &text)?;
                println!("wrote {}", dir.join(name).display());
            }
            None => println!("--- {name}\n{text}"),
        }
    }

    // Coefficients are stored reduced and terms sorted, so hand-written
    // input comes back normalized.
    let messy = r#"{"schema_version": "mfkit/1",
        "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Q"}},
        "w": [{"coeff": "2/4", "exps": [2]}, {"coeff": "1/2", "exps": [2]}],
        "payload": {"factorization": {"e0_twists": [0], "e1_twists": [-1],
          "phi0": [[[{"coeff": "6/6", "exps": [1]}]]],
          "phim1": [[[{"coeff": "1", "exps": [1]}]]]}}}"#;
    println!("--- normalized\n{}", canonicalize(messy)?);
    Ok(())
}
