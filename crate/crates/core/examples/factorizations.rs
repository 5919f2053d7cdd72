//! Rank-one factorizations of x^3: validation, shift, twist, sums and base
//! change.
//!
//!     cargo run --example factorizations

use mfkit::fact::{base_change, BaseChange, Factorization};
use mfkit::ring::{parse_poly, FieldSpec, GradedRing, PolyMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = GradedRing::new(["x", "y"], vec![1, 1], FieldSpec::Rationals)?;
    let p = |s: &str| parse_poly(&r, s);

    let e = Factorization::rank_one(p("x^3")?, p("x")?, p("x^2")?)?;
    println!("E = (x, x^2):\n{e}");
    println!("valid: {}  grading: {:?}\n", e.is_valid(), e.grading());

    // Construction only checks shapes; validate() names each broken identity.
    let bad = Factorization::new(
        p("x^3")?,
        e.e0().clone(),
        e.e1().clone(),
        PolyMatrix::single(p("x")?),
        PolyMatrix::single(p("x")?),
    )?;
    println!("(x, x) as a factorization of x^3:\n{}\n", bad.validate());

    // Two shifts agree with one twist by deg w.
    let twice = e.shift(2);
    println!("E[2] twists: {:?} {:?}", twice.e0().twists(), twice.e1().twists());
    println!("E(3) twists: {:?} {:?}", e.twist(1)?.e0().twists(), e.twist(1)?.e1().twists());
    println!("E[2] == E(1): {}\n", twice == e.twist(1)?);

    let f = Factorization::rank_one(p("x^3")?, p("x^2")?, p("x")?)?;
    let sum = e.direct_sum(&f)?;
    println!("E ⊕ F:\n{sum}");

    // Collapse both variables to t, then reduce mod 5.
    let line = GradedRing::new(["t"], vec![1], FieldSpec::Rationals)?;
    let tv = parse_poly(&line, "t")?;
    let collapse = BaseChange::new(&r, &line, vec![tv.clone(), tv])?;
    let e2 = Factorization::rank_one(p("x*y")?, p("x")?, p("y")?)?;
    let target_w = collapse.poly(e2.w())?;
    let on_line = base_change(&e2, &collapse, &target_w)?;
    println!("(x, y) under x, y -> t:\n{on_line}");

    let reduce = BaseChange::reduce_mod(&r, 5)?;
    let h = Factorization::rank_one(p("x^2 - y^2")?, p("x + y")?, p("x - y")?)?;
    let h5 = base_change(&h, &reduce, &reduce.poly(h.w())?)?;
    println!("(x+y, x-y) over F5:\n{h5}");
    Ok(())
}
