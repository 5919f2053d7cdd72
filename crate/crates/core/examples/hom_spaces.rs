//! Hom tables between rank-one factorizations of x^d, orthogonality to
//! contractibles and the 2-periodicity of Hom.
//!
//!     cargo run --example hom_spaces [d]

use mfkit::corpus::build;
use mfkit::fact::{cone, contractible_envelope, FactMorphism};
use mfkit::homalg::{hom_classes, hom_dim, orthogonality_check, periodicity_holds, SliceMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: u32 = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    let pair = |a: u32| build("mf_pair", &[a.to_string(), d.to_string()]);

    println!("dim Hom^0_t(E_a, E_b) for w = x^{d}, summed over t");
    print!("{:>6}", "a\\b");
    for b in 1..d {
        print!("{b:>4}");
    }
    println!();
    for a in 1..d {
        print!("{a:>6}");
        let ea = pair(a)?;
        for b in 1..d {
            let eb = pair(b)?;
            let total: usize = (-(d as i64)..=d as i64)
                .map(|t| hom_dim(&ea, &eb, 0, SliceMode::Graded { t }))
                .sum::<Result<_, _>>()?;
            print!("{total:>4}");
        }
        println!();
    }

    let e = pair(1)?;
    let classes = hom_classes(&e, &e, 0, SliceMode::Graded { t: 0 })?;
    println!("\nEnd^0_0(E_1): dim {} ({})", classes.dim, classes.certificate);
    for g in classes.morphisms(&e, &e)? {
        println!("{g}");
    }

    let periodic = (-2..=2).all(|n| (-3..=3).all(|t| periodicity_holds(&e, &pair(d - 1).unwrap(), n, t).unwrap()));
    println!("Hom^(n+2)_t = Hom^n_(t+{d}) on the window: {periodic}");

    let (g, _) = contractible_envelope(&e)?;
    let c = cone(&FactMorphism::identity(&e))?;
    for (name, target) in [("G(E)", g), ("Cone(id)", c)] {
        let report = orthogonality_check(&pair(d / 2)?, &target, &[-1, 0, 1], &[-2, -1, 0, 1, 2])?;
        println!("Hom(E, {name}[n]) all zero: {} (exact: {})", report.all_zero(), report.is_exact());
    }
    Ok(())
}
