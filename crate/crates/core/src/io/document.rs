use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::fact::{FactMorphism, Factorization, FreeModule, Grading};
use crate::fold::{FactChain, FreeComplex};
use crate::homalg::ComponentResolutions;
use crate::io::raw::*;
use crate::ring::{FieldSpec, GradedRing, Monomial, Poly, PolyMatrix};

pub const SCHEMA_VERSION: &str = "mfkit/1";

/// What a document carries besides its ring and potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Factorization(Factorization),
    Morphism(FactMorphism),
    Complex(FreeComplex),
    Chain(FactChain),
    Resolutions(ComponentResolutions),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Factorization(_) => "factorization",
            Payload::Morphism(_) => "morphism",
            Payload::Complex(_) => "complex",
            Payload::Chain(_) => "chain",
            Payload::Resolutions(_) => "resolutions",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub ring: Arc<GradedRing>,
    pub w: Poly,
    pub payload: Payload,
}

fn doc_err(field: &str, message: impl Into<String>) -> Error {
    Error::Document { field: field.to_string(), message: message.into() }
}

/// Attaches a field path to errors from the algebraic constructors.
fn at<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Document { .. } => e,
        other => doc_err(field, other.to_string()),
    })
}

impl Document {
    pub fn new(w: Poly, payload: Payload) -> Self {
        Document { ring: w.ring().clone(), w, payload }
    }

    pub fn factorization(e: &Factorization) -> Self {
        Self::new(e.w().clone(), Payload::Factorization(e.clone()))
    }

    pub fn as_factorization(&self) -> Result<&Factorization> {
        match &self.payload {
            Payload::Factorization(e) => Ok(e),
            other => Err(doc_err("payload", format!("expected a factorization, found a {}", other.kind()))),
        }
    }

    /// Runs the payload's own checker: the factorization identities, the
    /// morphism squares, d² = 0, or the chain conditions.
    pub fn check(&self) -> Result<()> {
        let graded = Grading::of(&self.w).is_graded();
        let fact = |field: &str, e: &Factorization| -> Result<()> {
            let report = e.validate();
            if report.is_valid() {
                Ok(())
            } else {
                Err(doc_err(field, report.to_string().trim().to_string()))
            }
        };
        match &self.payload {
            Payload::Factorization(e) => fact("payload.factorization", e),
            Payload::Morphism(g) => {
                fact("payload.morphism.source", g.source())?;
                fact("payload.morphism.target", g.target())?;
                let report = g.validate();
                if report.is_valid() {
                    Ok(())
                } else {
                    Err(doc_err("payload.morphism", report.to_string().trim().to_string()))
                }
            }
            Payload::Complex(c) => at("payload.complex", c.validate(graded)),
            Payload::Chain(ch) => {
                for (i, e) in ch.objects.iter().enumerate() {
                    fact(&format!("payload.chain.objects[{i}]"), e)?;
                }
                at("payload.chain", ch.check())
            }
            Payload::Resolutions(r) => {
                at("payload.resolutions.m1", r.m1.validate(graded))?;
                at("payload.resolutions.zero", r.zero.validate(graded))
            }
        }
    }
}

/// Parses and checks a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let doc = parse_document_unchecked(text)?;
    doc.check()?;
    Ok(doc)
}

/// Parses a document without running the payload checker, so that
/// invalid data can still be reported on.
pub fn parse_document_unchecked(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(doc_err("schema_version", format!("expected `{SCHEMA_VERSION}`, found `{}`", raw.schema_version)));
    }
    let field = match raw.ring.field {
        RawField::Q => FieldSpec::Rationals,
        RawField::Fp { p } => at("ring.field.p", FieldSpec::prime(p))?,
    };
    let ring = at("ring", GradedRing::new(raw.ring.vars, raw.ring.weights, field))?;
    let w = poly_from(&ring, &raw.w, "w")?;
    let cx = Ctx { ring: &ring, w: &w };
    let payload = match &raw.payload {
        RawPayload::Factorization(f) => Payload::Factorization(cx.fact(f, "payload.factorization")?),
        RawPayload::Morphism(m) => {
            let p = "payload.morphism";
            let source = cx.fact(&m.source, &format!("{p}.source"))?;
            let target = cx.fact(&m.target, &format!("{p}.target"))?;
            let gm1 = cx.matrix(&m.gm1, (target.e1().rank(), source.e1().rank()), &format!("{p}.gm1"))?;
            let g0 = cx.matrix(&m.g0, (target.e0().rank(), source.e0().rank()), &format!("{p}.g0"))?;
            Payload::Morphism(at(p, FactMorphism::new(source, target, m.degree, gm1, g0))?)
        }
        RawPayload::Complex(c) => Payload::Complex(cx.complex(c, "payload.complex")?),
        RawPayload::Chain(c) => {
            let p = "payload.chain";
            let objects = c
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| cx.fact(o, &format!("{p}.objects[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            if c.maps.len() + 1 != objects.len().max(1) {
                return Err(doc_err(&format!("{p}.maps"), format!("{} objects need {} maps", objects.len(), objects.len().saturating_sub(1))));
            }
            let mut maps = Vec::new();
            for (i, m) in c.maps.iter().enumerate() {
                let (s, t) = (&objects[i], &objects[i + 1]);
                let f = format!("{p}.maps[{i}]");
                let gm1 = cx.matrix(&m.gm1, (t.e1().rank(), s.e1().rank()), &format!("{f}.gm1"))?;
                let g0 = cx.matrix(&m.g0, (t.e0().rank(), s.e0().rank()), &format!("{f}.g0"))?;
                maps.push(at(&f, FactMorphism::new(s.clone(), t.clone(), 0, gm1, g0))?);
            }
            Payload::Chain(at(p, FactChain::new(c.lo, objects, maps))?)
        }
        RawPayload::Resolutions(r) => Payload::Resolutions(ComponentResolutions {
            m1: cx.complex(&r.m1, "payload.resolutions.m1")?,
            zero: cx.complex(&r.zero, "payload.resolutions.zero")?,
        }),
    };
    Ok(Document { ring, w, payload })
}

struct Ctx<'a> {
    ring: &'a Arc<GradedRing>,
    w: &'a Poly,
}

impl Ctx<'_> {
    fn matrix(&self, raw: &RawMatrix, shape: (usize, usize), field: &str) -> Result<PolyMatrix> {
        if raw.len() != shape.0 {
            return Err(doc_err(field, format!("expected {} rows, found {}", shape.0, raw.len())));
        }
        let mut entries = Vec::with_capacity(shape.0 * shape.1);
        for (i, row) in raw.iter().enumerate() {
            if row.len() != shape.1 {
                return Err(doc_err(&format!("{field}[{i}]"), format!("expected {} columns, found {}", shape.1, row.len())));
            }
            for (j, p) in row.iter().enumerate() {
                entries.push(poly_from(self.ring, p, &format!("{field}[{i}][{j}]"))?);
            }
        }
        at(field, PolyMatrix::from_entries(self.ring, shape.0, shape.1, entries))
    }

    fn fact(&self, raw: &RawFactorization, field: &str) -> Result<Factorization> {
        let e0 = FreeModule::new(raw.e0_twists.clone());
        let e1 = FreeModule::new(raw.e1_twists.clone());
        let phi0 = self.matrix(&raw.phi0, (e0.rank(), e1.rank()), &format!("{field}.phi0"))?;
        let phim1 = self.matrix(&raw.phim1, (e1.rank(), e0.rank()), &format!("{field}.phim1"))?;
        at(field, Factorization::new(self.w.clone(), e0, e1, phi0, phim1))
    }

    fn complex(&self, raw: &RawComplex, field: &str) -> Result<FreeComplex> {
        let modules: Vec<FreeModule> = raw.modules.iter().cloned().map(FreeModule::new).collect();
        if raw.diffs.len() + 1 != modules.len().max(1) {
            return Err(doc_err(
                &format!("{field}.diffs"),
                format!("{} modules need {} differentials, found {}", modules.len(), modules.len().saturating_sub(1), raw.diffs.len()),
            ));
        }
        let diffs = raw
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| self.matrix(d, (modules[k + 1].rank(), modules[k].rank()), &format!("{field}.diffs[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        at(field, FreeComplex::new(self.ring, raw.lo, modules, diffs))
    }
}

fn poly_from(ring: &Arc<GradedRing>, raw: &RawPoly, field: &str) -> Result<Poly> {
    let mut terms = Vec::with_capacity(raw.len());
    for (k, t) in raw.iter().enumerate() {
        let f = format!("{field}[{k}]");
        if t.exps.len() != ring.arity() {
            return Err(doc_err(&format!("{f}.exps"), format!("expected {} exponents, found {}", ring.arity(), t.exps.len())));
        }
        let c = at(&format!("{f}.coeff"), ring.field().parse(&t.coeff))?;
        terms.push((c, Monomial(t.exps.clone())));
    }
    at(field, Poly::from_terms(ring, terms))
}

fn raw_poly(p: &Poly) -> RawPoly {
    let field = p.field();
    p.terms().rev().map(|(m, c)| RawTerm { coeff: field.format(c), exps: m.0.clone() }).collect()
}

fn raw_matrix(m: &PolyMatrix) -> RawMatrix {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| raw_poly(m.get(i, j))).collect()).collect()
}

fn raw_fact(e: &Factorization) -> RawFactorization {
    RawFactorization {
        e0_twists: e.e0().twists().to_vec(),
        e1_twists: e.e1().twists().to_vec(),
        phi0: raw_matrix(e.phi0()),
        phim1: raw_matrix(e.phim1()),
    }
}

fn raw_complex(c: &FreeComplex) -> RawComplex {
    RawComplex {
        lo: c.lo(),
        modules: (c.lo()..=c.hi()).map(|i| c.module(i).twists().to_vec()).collect(),
        diffs: (c.lo() + 1..=c.hi()).map(|i| raw_matrix(&c.diff(i))).collect(),
    }
}

fn to_raw(doc: &Document) -> RawDocument {
    let field = match doc.ring.field() {
        FieldSpec::Rationals => RawField::Q,
        FieldSpec::PrimeField(p) => RawField::Fp { p: *p },
    };
    let payload = match &doc.payload {
        Payload::Factorization(e) => RawPayload::Factorization(raw_fact(e)),
        Payload::Morphism(g) => RawPayload::Morphism(RawMorphism {
            source: raw_fact(g.source()),
            target: raw_fact(g.target()),
            degree: g.degree(),
            gm1: raw_matrix(g.gm1()),
            g0: raw_matrix(g.g0()),
        }),
        Payload::Complex(c) => RawPayload::Complex(raw_complex(c)),
        Payload::Chain(c) => RawPayload::Chain(RawChain {
            lo: c.lo,
            objects: c.objects.iter().map(raw_fact).collect(),
            maps: c.maps.iter().map(|g| RawChainMap { gm1: raw_matrix(g.gm1()), g0: raw_matrix(g.g0()) }).collect(),
        }),
        Payload::Resolutions(r) => {
            RawPayload::Resolutions(RawResolutions { m1: raw_complex(&r.m1), zero: raw_complex(&r.zero) })
        }
    };
    RawDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        ring: RawRing { vars: doc.ring.vars().to_vec(), weights: doc.ring.weights().to_vec(), field },
        w: raw_poly(&doc.w),
        payload,
    }
}

/// Canonical text: fields in schema order, terms in descending monomial order,
/// reduced coefficients, short arrays and objects kept on one line.
pub fn write_document(doc: &Document) -> String {
    let value = serde_json::to_value(to_raw(doc)).expect("documents serialize");
    let mut out = String::new();
    pretty(&value, 0, &mut out);
    out.push('\n');
    out
}

/// Re-emits a document in canonical form without running the checker.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(write_document(&parse_document_unchecked(text)?))
}

const WIDTH: usize = 100;

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => {
            let fields: Vec<String> = map.iter().map(|(k, x)| format!("{}: {}", Value::String(k.clone()), compact(x))).collect();
            format!("{{{}}}", fields.join(", "))
        }
        other => other.to_string(),
    }
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let compact = compact(v);
    if indent + compact.len() <= WIDTH || !matches!(v, Value::Array(_) | Value::Object(_)) {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent / 2 + 1);
    let close = "  ".repeat(indent / 2);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad);
                pretty(item, indent + 2, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}]");
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(key.clone()));
                pretty(item, indent + 2, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{close}}}");
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fact::cone;
    use crate::fold::stabilize;
    use crate::ring::parse_poly;

    fn xy() -> Factorization {
        let r = GradedRing::rational(["x", "y"]);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        Factorization::rank_one(p("x*y"), p("x"), p("y")).unwrap()
    }

    #[test]
    fn factorization_round_trip() {
        let e = xy();
        let text = write_document(&Document::factorization(&e));
        let back = parse_document(&text).unwrap();
        assert_eq!(back.as_factorization().unwrap(), &e);
        assert_eq!(write_document(&back), text);
    }

    #[test]
    fn every_payload_round_trips() {
        let e = xy();
        let r = e.ring().clone();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let id = FactMorphism::identity(&e);
        let stab = stabilize(&r, &["x", "y"], e.w(), &[p("y"), p("0")]).unwrap();
        let chain = FactChain::new(-1, vec![e.clone(), e.clone()], vec![id.clone()]).unwrap();
        let res = ComponentResolutions {
            m1: FreeComplex::zero(&r),
            zero: crate::fold::koszul_complex(&r, &["x", "y"]).unwrap(),
        };
        for payload in [
            Payload::Factorization(cone(&id).unwrap()),
            Payload::Factorization(stab),
            Payload::Morphism(id),
            Payload::Complex(res.zero.clone()),
            Payload::Chain(chain),
            Payload::Resolutions(res),
        ] {
            let doc = Document::new(e.w().clone(), payload);
            let text = write_document(&doc);
            let back = parse_document(&text).unwrap_or_else(|err| panic!("{err}\n{text}"));
            assert_eq!(back, doc);
            assert_eq!(canonicalize(&text).unwrap(), text);
        }
    }

    const HAND_WRITTEN: &str = r#"{"schema_version": "mfkit/1",
      "ring": {"vars": ["x"], "weights": [1], "field": {"kind": "Q"}},
      "w": [{"coeff": "2/4", "exps": [2]}, {"coeff": "1/2", "exps": [2]}],
      "payload": {"factorization": {"e0_twists": [0], "e1_twists": [-1],
        "phi0": [[[{"coeff": "3/3", "exps": [1]}]]], "phim1": [[[{"coeff": "1", "exps": [1]}]]]}}}"#;

    #[test]
    fn coefficients_are_normalized() {
        let text = canonicalize(HAND_WRITTEN).unwrap();
        assert!(text.contains(r#""w": [{"coeff": "1", "exps": [2]}]"#), "{text}");
        let half = HAND_WRITTEN.replace(r#"{"coeff": "1/2", "exps": [2]}"#, r#"{"coeff": "0", "exps": [0]}"#);
        assert!(canonicalize(&half).unwrap().contains(r#""coeff": "1/2""#));
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn wrong_row_count_names_the_field() {
        let bad = HAND_WRITTEN.replace(
            r#""phi0": [[[{"coeff": "3/3", "exps": [1]}]]]"#,
            r#""phi0": [[[{"coeff": "3/3", "exps": [1]}]], [[]]]"#,
        );
        match parse_document(&bad) {
            Err(Error::Document { field, message }) => {
                assert_eq!(field, "payload.factorization.phi0");
                assert!(message.contains("rows"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        let syntax = parse_document("{\n  \"schema_version\": \"mfkit/1\",\n  oops\n}");
        assert!(matches!(syntax, Err(Error::Parse(m)) if m.contains("line 3")));
        let exps = HAND_WRITTEN.replace(r#""exps": [2]}, {"#, r#""exps": [2, 1]}, {"#);
        assert!(matches!(parse_document(&exps), Err(Error::Document { field, .. }) if field == "w[0].exps"));
        let version = HAND_WRITTEN.replace("mfkit/1", "mfkit/0");
        assert!(matches!(parse_document(&version), Err(Error::Document { field, .. }) if field == "schema_version"));
        let product = HAND_WRITTEN.replace(r#""phim1": [[[{"coeff": "1", "exps": [1]}]]]"#, r#""phim1": [[[{"coeff": "2", "exps": [1]}]]]"#);
        assert!(parse_document_unchecked(&product).is_ok());
        assert!(matches!(parse_document(&product), Err(Error::Document { field, .. }) if field == "payload.factorization"));
    }

    #[test]
    fn prime_field_documents() {
        let r = GradedRing::new(["x"], [1], FieldSpec::PrimeField(5)).unwrap();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let e = Factorization::rank_one(p("x^2"), p("-2*x"), p("2*x")).unwrap();
        let text = write_document(&Document::factorization(&e));
        assert!(text.contains(r#""kind": "Fp", "p": 5"#) || text.contains(r#""p": 5"#), "{text}");
        assert_eq!(parse_document(&text).unwrap().as_factorization().unwrap(), &e);
    }
}
