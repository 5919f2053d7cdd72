//! Named example constructors, each with a manifest of properties its
//! output must satisfy.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fact::{
    cone, contractible_envelope, envelope_contraction, FactMorphism, Factorization, FreeModule,
};
use crate::fold::{koszul_folding, koszul_homotopy, split_w, totalize, FactChain};
use crate::homalg::{hom_dim, is_contractible, SliceMode};
use crate::ring::{parse_poly, GradedRing, Poly, PolyMatrix};

type Builder = fn(&[String]) -> Result<Factorization>;
type Manifest = fn(&Factorization, &[String]) -> Result<Vec<Check>>;

/// One registry entry.
pub struct ExampleEntry {
    pub name: &'static str,
    pub usage: &'static str,
    pub summary: &'static str,
    build: Builder,
    manifest: Manifest,
}

/// Outcome of one manifest property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub property: String,
    pub passed: bool,
}

impl Check {
    fn new(property: impl Into<String>, passed: bool) -> Self {
        Check { property: property.into(), passed }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed { "ok" } else { "FAIL" }, self.property)
    }
}

impl ExampleEntry {
    pub fn build(&self, params: &[String]) -> Result<Factorization> {
        (self.build)(params)
    }

    /// Runs the manifest against an already built example.
    pub fn check(&self, e: &Factorization, params: &[String]) -> Result<Vec<Check>> {
        (self.manifest)(e, params)
    }
}

impl fmt::Debug for ExampleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExampleEntry").field("name", &self.name).finish()
    }
}

pub static REGISTRY: &[ExampleEntry] = &[
    ExampleEntry {
        name: "mf_pair",
        usage: "mf_pair A D",
        summary: "rank one factorization (x^A, x^(D-A)) of x^D",
        build: build_mf_pair,
        manifest: manifest_mf_pair,
    },
    ExampleEntry {
        name: "stab_koszul",
        usage: "stab_koszul N W [SPLIT...]",
        summary: "stabilization of the Koszul complex on the first N variables for potential W",
        build: build_stab_koszul,
        manifest: manifest_stab_koszul,
    },
    ExampleEntry {
        name: "envelope",
        usage: "envelope [EXAMPLE PARAMS...]",
        summary: "contractible envelope of another example (default: stab_koszul 2 x*y)",
        build: build_envelope,
        manifest: manifest_envelope,
    },
    ExampleEntry {
        name: "cone_id",
        usage: "cone_id [EXAMPLE PARAMS...]",
        summary: "cone of the identity of another example",
        build: build_cone_id,
        manifest: manifest_contractible,
    },
    ExampleEntry {
        name: "split_ses_tot",
        usage: "split_ses_tot [EXAMPLE PARAMS...]",
        summary: "totalization of the split sequence E -> E+E -> E",
        build: build_split_ses_tot,
        manifest: manifest_contractible,
    },
];

pub fn lookup(name: &str) -> Result<&'static ExampleEntry> {
    REGISTRY.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownExample(name.to_string()))
}

/// Builds `name` with `params`.
pub fn build(name: &str, params: &[String]) -> Result<Factorization> {
    lookup(name)?.build(params)
}

/// Fixed parameter sets used by batch checks.
pub fn standard_instances() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for d in 2..=5 {
        for a in 1..d {
            out.push(("mf_pair", s(&[&a.to_string(), &d.to_string()])));
        }
    }
    out.push(("stab_koszul", s(&["1", "x^2"])));
    out.push(("stab_koszul", s(&["2", "x*y"])));
    out.push(("stab_koszul", s(&["2", "x*y", "y", "0"])));
    out.push(("stab_koszul", s(&["2", "x^3 + y^3"])));
    out.push(("stab_koszul", s(&["3", "x*y*z"])));
    out.push(("stab_koszul", s(&["3", "x^2 + y^2 + z^2"])));
    for inner in [s(&[]), s(&["mf_pair", "1", "3"]), s(&["stab_koszul", "3", "x*y*z"])] {
        for name in ["envelope", "cone_id", "split_ses_tot"] {
            out.push((name, inner.clone()));
        }
    }
    out
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    let raw = params.get(i).ok_or_else(|| Error::Parse(format!("missing parameter {what}")))?;
    raw.parse().map_err(|_| Error::Parse(format!("invalid {what} `{raw}`")))
}

/// Variables used by `stab_koszul N`: x, y, z for N ≤ 3, else x1..xN.
pub fn koszul_variables(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn build_mf_pair(params: &[String]) -> Result<Factorization> {
    let a: u32 = param(params, 0, "A")?;
    let d: u32 = param(params, 1, "D")?;
    if a > d || d == 0 {
        return Err(Error::Parse(format!("mf_pair needs 0 ≤ A ≤ D and D ≥ 1, got A = {a}, D = {d}")));
    }
    let ring = GradedRing::rational(["x"]);
    let x = Poly::var(&ring, 0);
    Factorization::new(
        x.pow(d),
        FreeModule::new(vec![0]),
        FreeModule::new(vec![-(a as i64)]),
        PolyMatrix::single(x.pow(a)),
        PolyMatrix::single(x.pow(d - a)),
    )
}

fn manifest_mf_pair(e: &Factorization, params: &[String]) -> Result<Vec<Check>> {
    let a: u32 = param(params, 0, "A")?;
    let d: u32 = param(params, 1, "D")?;
    let proper = 0 < a && a < d;
    let self_hom = hom_dim(e, e, 0, SliceMode::Graded { t: 0 })?;
    Ok(vec![
        Check::new("factorization identities", e.is_valid()),
        Check::new(format!("homogeneous of degree {d}"), e.grading().phi_shift() == d as i64),
        Check::new(
            format!("self-Hom at (0,0) has dimension {}", usize::from(proper)),
            self_hom == usize::from(proper),
        ),
        Check::new(
            if proper { "not contractible" } else { "contractible" },
            is_contractible(e)?.witness().is_some() != proper,
        ),
    ])
}

fn build_stab_koszul(params: &[String]) -> Result<Factorization> {
    let n: usize = param(params, 0, "N")?;
    if n == 0 {
        return Err(Error::InvalidSequence("N must be at least 1".into()));
    }
    let vars = koszul_variables(n);
    let ring = GradedRing::rational(vars.clone());
    let w = parse_poly(&ring, params.get(1).ok_or_else(|| Error::Parse("missing parameter W".into()))?)?;
    let seq: Vec<&str> = vars.iter().map(String::as_str).collect();
    let splitting = splitting_from(&ring, &w, &seq, params.get(2..).unwrap_or(&[]))?;
    crate::fold::stabilize(&ring, &seq, &w, &splitting)
}

fn splitting_from(ring: &Arc<GradedRing>, w: &Poly, seq: &[&str], given: &[String]) -> Result<Vec<Poly>> {
    if given.is_empty() {
        return split_w(w, seq);
    }
    given.iter().map(|s| parse_poly(ring, s)).collect()
}

fn manifest_stab_koszul(e: &Factorization, params: &[String]) -> Result<Vec<Check>> {
    let n: usize = param(params, 0, "N")?;
    let vars = koszul_variables(n);
    let seq: Vec<&str> = vars.iter().map(String::as_str).collect();
    let splitting = splitting_from(e.ring(), e.w(), &seq, params.get(2..).unwrap_or(&[]))?;
    let data = koszul_homotopy(e.w(), &seq, &splitting)?;
    let folding = koszul_folding(&data);
    let half = 1usize << (n - 1);
    Ok(vec![
        Check::new("factorization identities", e.is_valid()),
        Check::new("Koszul identities", data.verify().is_ok()),
        Check::new("fold block identities", folding.identity_violations(e, &folding.layout())?.is_empty()),
        Check::new(format!("components of rank {half}"), e.e0().rank() == half && e.e1().rank() == half),
    ])
}

fn inner(params: &[String]) -> Result<Factorization> {
    match params.split_first() {
        None => build("stab_koszul", &["2".to_string(), "x*y".to_string()]),
        Some((name, rest)) => build(name, rest),
    }
}

fn build_envelope(params: &[String]) -> Result<Factorization> {
    Ok(contractible_envelope(&inner(params)?)?.0)
}

fn build_cone_id(params: &[String]) -> Result<Factorization> {
    cone(&FactMorphism::identity(&inner(params)?))
}

fn build_split_ses_tot(params: &[String]) -> Result<Factorization> {
    totalize(&split_sequence(&inner(params)?)?)
}

/// E → E ⊕ E → E, the inclusion of and projection onto the first summand.
pub fn split_sequence(e: &Factorization) -> Result<FactChain> {
    let ring = e.ring();
    let s = e.direct_sum(e)?;
    let (n0, n1) = (e.e0().rank(), e.e1().rank());
    let id = |n| PolyMatrix::identity(ring, n);
    let z = |r, c| PolyMatrix::zero(ring, r, c);
    let inc = FactMorphism::new(
        e.clone(),
        s.clone(),
        0,
        PolyMatrix::block(ring, &[vec![id(n1)], vec![z(n1, n1)]])?,
        PolyMatrix::block(ring, &[vec![id(n0)], vec![z(n0, n0)]])?,
    )?;
    let proj = FactMorphism::new(
        s.clone(),
        e.clone(),
        0,
        PolyMatrix::block(ring, &[vec![z(n1, n1), id(n1)]])?,
        PolyMatrix::block(ring, &[vec![z(n0, n0), id(n0)]])?,
    )?;
    FactChain::new(-1, vec![e.clone(), s, e.clone()], vec![inc, proj])
}

fn manifest_contractible(e: &Factorization, _params: &[String]) -> Result<Vec<Check>> {
    Ok(vec![
        Check::new("factorization identities", e.is_valid()),
        Check::new("contractible (homotopy found)", is_contractible(e)?.witness().is_some()),
    ])
}

fn manifest_envelope(e: &Factorization, params: &[String]) -> Result<Vec<Check>> {
    let source = inner(params)?;
    let (g, m) = contractible_envelope(&source)?;
    let h = envelope_contraction(e, source.e0().rank(), source.e1().rank());
    let id = FactMorphism::identity(e);
    let mut checks = manifest_contractible(e, params)?;
    checks.push(Check::new("explicit contraction", h.witnesses(&id, &FactMorphism::zero(e, e, 0)?)));
    checks.push(Check::new("monomorphism is a morphism", &g == e && m.is_valid()));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn mf_pair_one_three() {
        let p = strings(&["1", "3"]);
        let e = build("mf_pair", &p).unwrap();
        assert!(e.is_valid());
        assert_eq!(hom_dim(&e, &e, 0, SliceMode::Graded { t: 0 }).unwrap(), 1);
        assert!(lookup("mf_pair").unwrap().check(&e, &p).unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn stab_koszul_two_variables() {
        let e = build("stab_koszul", &strings(&["2", "x*y"])).unwrap();
        let r = e.ring().clone();
        let q = |s: &str| parse_poly(&r, s).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![q("x"), q("y")], vec![q("0"), q("y")]]).unwrap();
        assert_eq!(e.phi0(), &m);
        let m = PolyMatrix::from_rows(&r, vec![vec![q("y"), q("-y")], vec![q("0"), q("x")]]).unwrap();
        assert_eq!(e.phim1(), &m);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(build("nope", &[]).unwrap_err(), Error::UnknownExample("nope".into()));
    }

    #[test]
    fn every_standard_instance_passes_its_manifest() {
        for (name, params) in standard_instances() {
            let entry = lookup(name).unwrap();
            let e = entry.build(&params).unwrap();
            for c in entry.check(&e, &params).unwrap() {
                assert!(c.passed, "{name} {params:?}: {c}");
            }
        }
    }
}
