//! Batch verification suites behind `mfkit selftest` and the acceptance
//! tests. Each suite returns a report instead of panicking.

pub mod oracle;
mod population;

use std::fmt;
use std::time::{Duration, Instant};

use crate::corpus::{self, split_sequence, standard_instances};
use crate::error::Result;
use crate::fact::{
    base_change, cone, cone_composite_homotopy, cone_inclusion, cone_projection, contractible_envelope,
    envelope_contraction, BaseChange, FactMorphism, Factorization,
};
use crate::fold::{
    fold, koszul_complex, koszul_folding, stabilize, stabilize_sequence, totalize, FactChain, FoldBlocks, FreeComplex,
};
use crate::homalg::{
    direct_hom_dims, e1_page, hom_classes, hom_dim, is_contractible, orthogonality_check, ss_degeneration_check,
    ComponentResolutions, E1Variant, SliceMode,
};
use crate::io::{canonicalize, parse_document, write_document, Document};
use crate::ring::{parse_poly, GradedRing, Poly};

pub use population::{random_population, Sample, DEFAULT_SEED};

/// Example documents shipped with the crate.
pub static DATA_FILES: &[(&str, &str)] = &[
    ("mf_pair_1_3.json", include_str!("../../data/mf_pair_1_3.json")),
    ("stab_xy.json", include_str!("../../data/stab_xy.json")),
    ("envelope_xy.json", include_str!("../../data/envelope_xy.json")),
    ("cone_id_xy.json", include_str!("../../data/cone_id_xy.json")),
    ("split_ses_xy.json", include_str!("../../data/split_ses_xy.json")),
    ("identity_xy.json", include_str!("../../data/identity_xy.json")),
    ("resolution_point.json", include_str!("../../data/resolution_point.json")),
];

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub number: u8,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl SuiteReport {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_budget()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "suite {} {status}: {} ({} checks, {:.2}s",
            self.number,
            self.title,
            self.checks,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(b) = self.budget {
            write!(f, ", budget {}s", b.as_secs())?;
        }
        write!(f, ")")?;
        for msg in self.failures.iter().take(10) {
            write!(f, "\n    {msg}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n    ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

/// Accumulates checks for one suite.
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records an error from a computation that was expected to succeed.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

fn run(number: u8, title: &'static str, budget: Option<u64>, body: impl FnOnce(&mut Tally)) -> SuiteReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    body(&mut tally);
    SuiteReport {
        number,
        title,
        checks: tally.checks,
        failures: tally.failures,
        elapsed: start.elapsed(),
        budget: budget.map(Duration::from_secs),
    }
}

const POPULATION: usize = 200;

fn corpus_objects(t: &mut Tally) -> Vec<(String, Factorization)> {
    let mut out = Vec::new();
    for (name, params) in standard_instances() {
        let label = format!("{name} {}", params.join(" "));
        if let Some(e) = t.ok(corpus::build(name, &params), || label.clone()) {
            out.push((label, e));
        }
    }
    out
}

/// Factorization identities on the corpus and a random population.
pub fn suite_validation() -> SuiteReport {
    run(1, "factorization axioms", Some(10), |t| {
        for (name, params) in standard_instances() {
            let entry = corpus::lookup(name).expect("registered");
            let label = format!("{name} {}", params.join(" "));
            let Some(e) = t.ok(entry.build(&params), || label.clone()) else { continue };
            t.check(e.is_valid(), || format!("{label}: {}", e.validate()));
            if let Some(checks) = t.ok(entry.check(&e, &params), || label.clone()) {
                for c in checks {
                    t.check(c.passed, || format!("{label}: {}", c.property));
                }
            }
        }
        for (i, s) in random_population(DEFAULT_SEED, POPULATION).iter().enumerate() {
            if let Some(e) = t.ok(s.stabilization(), || format!("sample {i} (w = {})", s.w)) {
                t.check(e.is_valid(), || format!("sample {i} (w = {}): {}", s.w, e.validate()));
            }
        }
    })
}

/// d² = 0, ∂h + h∂ = w and h² = 0 on the random population.
pub fn suite_koszul() -> SuiteReport {
    run(2, "Koszul identities", None, |t| {
        for (i, s) in random_population(DEFAULT_SEED, POPULATION).iter().enumerate() {
            if let Some(data) = t.ok(s.koszul(), || format!("sample {i}")) {
                let r = data.verify();
                t.check(r.is_ok(), || format!("sample {i} (w = {}): {:?}", s.w, r));
            }
        }
    })
}

/// Fold block identities for every stabilization, and folding of data
/// concentrated in degree 0.
pub fn suite_fold() -> SuiteReport {
    run(3, "fold identities", None, |t| {
        for (i, s) in random_population(DEFAULT_SEED, POPULATION).iter().enumerate() {
            let Some(data) = t.ok(s.koszul(), || format!("sample {i}")) else { continue };
            let folding = koszul_folding(&data);
            let layout = folding.layout();
            let Some(e) = t.ok(folding.fold_with_layout(&layout), || format!("sample {i}")) else { continue };
            if let Some(bad) = t.ok(folding.identity_violations(&e, &layout), || format!("sample {i}")) {
                t.check(bad.is_empty(), || format!("sample {i}: blocks {bad:?}"));
            }
        }
        for (label, e) in corpus_objects(t) {
            let ring = e.ring();
            let c_m1 = FreeComplex::concentrated(ring, 0, e.e1().clone());
            let c_0 = FreeComplex::concentrated(ring, 0, e.e0().clone());
            let mut blocks = FoldBlocks::new();
            blocks.blocks_m1.insert((0, 0), e.phim1().clone());
            blocks.blocks_0.insert((0, 0), e.phi0().clone());
            if let Some(f) = t.ok(fold(&c_m1, &c_0, &blocks, e.w()), || label.clone()) {
                t.check(f == e, || format!("{label}: degree-0 fold differs"));
            }
        }
    })
}

/// Shift/twist, contractibility of cones and envelopes, triangle maps and
/// cones of zero maps, over the corpus.
pub fn suite_triangulated() -> SuiteReport {
    run(4, "triangulated structure", None, |t| {
        for (label, e) in corpus_objects(t) {
            if e.grading().is_graded() {
                if let Some(tw) = t.ok(e.twist(1), || label.clone()) {
                    t.check(e.shift(2) == tw, || format!("{label}: shift 2 differs from twist 1"));
                }
            }
            let id = FactMorphism::identity(&e);
            if let Some(c) = t.ok(cone(&id), || label.clone()) {
                if let Some(v) = t.ok(is_contractible(&c), || label.clone()) {
                    t.check(v.witness().is_some(), || format!("{label}: cone(id) not contractible ({v:?})"));
                }
            }
            if let Some((g, m)) = t.ok(contractible_envelope(&e), || label.clone()) {
                t.check(m.is_valid(), || format!("{label}: envelope monomorphism"));
                let h = envelope_contraction(&g, e.e0().rank(), e.e1().rank());
                let idg = FactMorphism::identity(&g);
                let zero = FactMorphism::zero(&g, &g, 0).expect("same potential");
                t.check(h.witnesses(&idg, &zero), || format!("{label}: explicit envelope contraction"));
                if let Some(v) = t.ok(is_contractible(&g), || label.clone()) {
                    t.check(v.witness().is_some(), || format!("{label}: envelope not contractible ({v:?})"));
                }
            }
            let zero = FactMorphism::zero(&e, &e, 0).expect("same potential");
            for (kind, g) in [("id", &id), ("0", &zero)] {
                let (Some(i), Some(p)) =
                    (t.ok(cone_inclusion(g), || label.clone()), t.ok(cone_projection(g), || label.clone()))
                else {
                    continue;
                };
                t.check(i.is_valid() && p.is_valid(), || format!("{label}: triangle maps for {kind}"));
                if let Some(pi) = t.ok(p.compose(&i), || label.clone()) {
                    t.check(pi.is_zero(), || format!("{label}: F -> C({kind}) -> E[1] is not zero"));
                }
                if let Some(ig) = t.ok(i.compose(g), || label.clone()) {
                    let z = FactMorphism::zero(ig.source(), ig.target(), 0).expect("same potential");
                    t.check(cone_composite_homotopy(g).witnesses(&ig, &z), || {
                        format!("{label}: E -> F -> C({kind}) not null-homotopic")
                    });
                }
            }
            if let (Some(c), Some(sum)) = (t.ok(cone(&zero), || label.clone()), t.ok(e.shift(1).direct_sum(&e), || label.clone())) {
                t.check(c == sum, || format!("{label}: cone(0) differs from E[1] + F"));
            }
        }
    })
}

/// The two test objects and the two acyclic targets of the orthogonality
/// check.
pub fn orthogonality_cases() -> Result<Vec<(String, Factorization, String, Factorization)>> {
    let mut out = Vec::new();
    let ps = [
        ("stab(x; x^2)", corpus::build("stab_koszul", &["1".into(), "x^2".into()])?),
        ("stab(x,y; xy)", corpus::build("stab_koszul", &["2".into(), "x*y".into()])?),
    ];
    for (pname, p) in ps {
        let id = FactMorphism::identity(&p);
        let id_chain = FactChain::new(-1, vec![p.clone(), p.clone()], vec![id])?;
        let ses = split_sequence(&p)?;
        out.push((pname.to_string(), p.clone(), "tot(id)".to_string(), totalize(&id_chain)?));
        out.push((pname.to_string(), p.clone(), "tot(split SES)".to_string(), totalize(&ses)?));
    }
    Ok(out)
}

/// Hom(P, C[n])_t = 0 for stabilizations P against totalizations of
/// exact chains.
pub fn suite_orthogonality() -> SuiteReport {
    run(5, "orthogonality", Some(30), |t| {
        let Some(cases) = t.ok(orthogonality_cases(), || "building cases".into()) else { return };
        for (pname, p, cname, c) in cases {
            let ts: Vec<i64> = (-3..=3).collect();
            if let Some(report) = t.ok(orthogonality_check(&p, &c, &[0, 1], &ts), || format!("{pname} vs {cname}")) {
                t.check(report.is_exact(), || format!("{pname} vs {cname}: not certified"));
                for (n, mode, dim) in &report.cells {
                    t.check(*dim == 0, || format!("{pname} vs {cname}: dim Hom^{n} at {mode} is {dim}"));
                }
            }
        }
    })
}

/// Hom dimensions for x^d against the brute-force oracle.
pub fn suite_oracle() -> SuiteReport {
    run(6, "graded Hom oracle for x^d", None, |t| {
        for d in 2..=5u32 {
            for a in 1..d {
                for b in 1..d {
                    let e = corpus::build("mf_pair", &[a.to_string(), d.to_string()]).expect("valid");
                    let f = corpus::build("mf_pair", &[b.to_string(), d.to_string()]).expect("valid");
                    for n in 0..=1 {
                        for s in -(d as i64)..=d as i64 {
                            let expected = oracle::hom_dim(a, b, d, n, s);
                            if let Some(got) = t.ok(hom_dim(&e, &f, n, SliceMode::Graded { t: s }), || format!("d={d}")) {
                                t.check(got == expected, || {
                                    format!("x^{d}: Hom^{n}(({a}), ({b}))_{s} = {got}, oracle {expected}")
                                });
                            }
                        }
                    }
                }
            }
        }
    })
}

/// E₁ totals bound direct Hom dimensions; equality for one variable.
pub fn suite_spectral() -> SuiteReport {
    run(7, "spectral sequence bound", None, |t| {
        let window = (-3, 3);
        // E = (0, R/(x)) for w = x^d, resolved by the Koszul complex.
        for d in 2..=4u32 {
            let p = corpus::build("stab_koszul", &["1".into(), format!("x^{d}")]).expect("valid");
            let res = ComponentResolutions {
                m1: FreeComplex::zero(p.ring()),
                zero: koszul_complex(p.ring(), &["x"]).expect("valid"),
            };
            for a in 1..d {
                let f = corpus::build("mf_pair", &[a.to_string(), d.to_string()]).expect("valid");
                spectral_case(t, &format!("R/(x), x^{d}, F = mf_pair({a},{d})"), &res, &p, &f, window, d as i64, true);
            }
        }
        // E = (0, R/(x,y)) for w = xy.
        let p = corpus::build("stab_koszul", &["2".into(), "x*y".into()]).expect("valid");
        let ring = p.ring().clone();
        let q = |s: &str| parse_poly(&ring, s).expect("valid");
        let res = ComponentResolutions {
            m1: FreeComplex::zero(&ring),
            zero: koszul_complex(&ring, &["x", "y"]).expect("valid"),
        };
        let targets = [
            ("(x, y)", Factorization::rank_one(q("x*y"), q("x"), q("y")).expect("valid")),
            ("(y, x)", Factorization::rank_one(q("x*y"), q("y"), q("x")).expect("valid")),
            ("stab(x,y; xy)", p.clone()),
        ];
        for (name, f) in targets {
            spectral_case(t, &format!("R/(x,y), F = {name}"), &res, &p, &f, window, 2, false);
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn spectral_case(
    t: &mut Tally,
    label: &str,
    res: &ComponentResolutions,
    p: &Factorization,
    f: &Factorization,
    window: (i64, i64),
    d: i64,
    expect_equality: bool,
) {
    for s in -d..=d {
        let Some(table) = t.ok(e1_page(res, f, s, window, E1Variant::Corrected), || label.to_string()) else { continue };
        let Some(direct) = t.ok(direct_hom_dims(p, f, s, window), || label.to_string()) else { continue };
        let Some(report) = t.ok(ss_degeneration_check(&table, &direct), || label.to_string()) else { continue };
        for row in &report.rows {
            t.check(row.bound_holds(), || {
                format!("{label}, t={s}, r={}: E1 total {} < direct {}", row.r, row.e1_total, row.direct)
            });
            if expect_equality {
                t.check(row.degenerate(), || {
                    format!("{label}, t={s}, r={}: E1 total {} != direct {}", row.r, row.e1_total, row.direct)
                });
            }
        }
    }
}

fn canonical(e: &Factorization) -> String {
    write_document(&Document::factorization(e))
}

/// base_change against cone, shift, direct sum and stabilization.
pub fn suite_base_change() -> SuiteReport {
    run(8, "base change functoriality", None, |t| {
        let src = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&src, s).expect("valid");
        let line = GradedRing::rational(["t"]);
        let tv = Poly::var(&line, 0);
        let collapse = BaseChange::new(&src, &line, vec![tv.clone(), tv.clone()]).expect("valid map");
        let reduce = BaseChange::reduce_mod(&src, 5).expect("valid map");
        for (w_text, split) in [("x*y", ["y", "0"]), ("x^2 + 3/2*y^2", ["x", "3/2*y"])] {
            let w = p(w_text);
            let split = [p(split[0]), p(split[1])];
            let stab = stabilize(&src, &["x", "y"], &w, &split).expect("valid");
            let rank_one = if w_text == "x*y" {
                Factorization::rank_one(w.clone(), p("x"), p("y")).expect("valid")
            } else {
                contractible_envelope(&stab).expect("valid").0
            };
            let mut maps = vec![FactMorphism::identity(&stab), FactMorphism::zero(&rank_one, &stab, 0).expect("valid")];
            if let Ok(classes) = hom_classes(&rank_one, &stab, 0, SliceMode::Graded { t: 0 }) {
                maps.extend(classes.morphisms(&rank_one, &stab).unwrap_or_default());
            }
            for (mname, theta) in [("x,y -> t", &collapse), ("Q -> F5", &reduce)] {
                let label = format!("{mname}, w = {w_text}");
                let Some(tw) = t.ok(theta.poly(&w), || label.clone()) else { continue };
                let bc = |e: &Factorization| base_change(e, theta, &tw);
                for g in &maps {
                    let lhs = cone(g).and_then(|c| bc(&c));
                    let rhs = theta.morphism(g, &tw).and_then(|h| cone(&h));
                    if let (Some(l), Some(r)) = (t.ok(lhs, || label.clone()), t.ok(rhs, || label.clone())) {
                        t.check(canonical(&l) == canonical(&r), || format!("{label}: cone"));
                    }
                }
                for e in [&stab, &rank_one] {
                    for n in [-1, 1, 2, 3] {
                        if let (Some(l), Some(r)) =
                            (t.ok(bc(&e.shift(n)), || label.clone()), t.ok(bc(e), || label.clone()))
                        {
                            t.check(canonical(&l) == canonical(&r.shift(n)), || format!("{label}: shift {n}"));
                        }
                    }
                }
                let lhs = stab.direct_sum(&rank_one).and_then(|s| bc(&s));
                let rhs = bc(&stab).and_then(|a| a.direct_sum(&bc(&rank_one)?));
                if let (Some(l), Some(r)) = (t.ok(lhs, || label.clone()), t.ok(rhs, || label.clone())) {
                    t.check(canonical(&l) == canonical(&r), || format!("{label}: direct sum"));
                }
                let seq: Option<Vec<Poly>> = t.ok([p("x"), p("y")].iter().map(|x| theta.poly(x)).collect(), || label.clone());
                let sp: Option<Vec<Poly>> = t.ok(split.iter().map(|x| theta.poly(x)).collect(), || label.clone());
                if let (Some(seq), Some(sp)) = (seq, sp) {
                    let lhs = bc(&stab);
                    let rhs = stabilize_sequence(&tw, &seq, &sp);
                    if let (Some(l), Some(r)) = (t.ok(lhs, || label.clone()), t.ok(rhs, || label.clone())) {
                        t.check(canonical(&l) == canonical(&r), || format!("{label}: stabilize"));
                    }
                }
            }
        }
    })
}

/// Every shipped document parses, checks, and is already canonical.
pub fn suite_documents() -> SuiteReport {
    run(9, "document round trip", None, |t| {
        for (name, text) in DATA_FILES {
            if t.ok(parse_document(text), || name.to_string()).is_none() {
                continue;
            }
            if let Some(once) = t.ok(canonicalize(text), || name.to_string()) {
                t.check(&once == text, || format!("{name}: not in canonical form"));
                let twice = canonicalize(&once);
                t.check(twice.as_ref() == Ok(&once), || format!("{name}: canonicalization not idempotent"));
            }
        }
    })
}

pub fn run_suite(number: u8) -> Option<SuiteReport> {
    Some(match number {
        1 => suite_validation(),
        2 => suite_koszul(),
        3 => suite_fold(),
        4 => suite_triangulated(),
        5 => suite_orthogonality(),
        6 => suite_oracle(),
        7 => suite_spectral(),
        8 => suite_base_change(),
        9 => suite_documents(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<SuiteReport> {
    (1..=9).filter_map(run_suite).collect()
}
