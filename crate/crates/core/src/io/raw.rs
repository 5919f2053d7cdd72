//! Serde mirror of the on-disk format. Conversion to and from the algebraic
//! types happens in `document.rs`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawDocument {
    pub schema_version: String,
    pub ring: RawRing,
    pub w: RawPoly,
    pub payload: RawPayload,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawRing {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub field: RawField,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub(crate) enum RawField {
    Q,
    Fp { p: u32 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawTerm {
    pub coeff: String,
    pub exps: Vec<u32>,
}

pub(crate) type RawPoly = Vec<RawTerm>;

/// Row-major: a list of rows, each a list of polynomials.
pub(crate) type RawMatrix = Vec<Vec<RawPoly>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawFactorization {
    pub e0_twists: Vec<i64>,
    pub e1_twists: Vec<i64>,
    pub phi0: RawMatrix,
    pub phim1: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawMorphism {
    pub source: RawFactorization,
    pub target: RawFactorization,
    pub degree: i64,
    pub gm1: RawMatrix,
    pub g0: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawComplex {
    pub lo: i64,
    pub modules: Vec<Vec<i64>>,
    /// diffs[k] maps modules[k] to modules[k+1].
    pub diffs: Vec<RawMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawChainMap {
    pub gm1: RawMatrix,
    pub g0: RawMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawChain {
    pub lo: i64,
    pub objects: Vec<RawFactorization>,
    pub maps: Vec<RawChainMap>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawResolutions {
    pub m1: RawComplex,
    pub zero: RawComplex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub(crate) enum RawPayload {
    Factorization(RawFactorization),
    Morphism(RawMorphism),
    Complex(RawComplex),
    Chain(RawChain),
    Resolutions(RawResolutions),
}
