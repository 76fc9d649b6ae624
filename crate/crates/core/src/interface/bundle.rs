//! JSON result bundles. Every polynomial is stored as canonical text
//! together with the variable names it is written in, so a bundle can be
//! checked without recomputation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use urr_poly::{check_certificate, parse_poly, rat, Cert, Matrix, Point, Poly, RingCtx, Witness};

use crate::error::{Error, Result};
use crate::pipeline::LabeledWitness;

pub const BUNDLE_VERSION: &str = "urr-bundle/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Polys { ring: Vec<String>, items: Vec<String> },
    Fractions { ring: Vec<String>, items: Vec<Fraction> },
    Matrix { rows: Vec<Vec<String>> },
    Rationals { items: Vec<String> },
    Integer { value: u64 },
    Flag { value: bool },
    Text { value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub name: String,
    #[serde(flatten)]
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cofactor {
    pub index: usize,
    pub poly: String,
}

/// `unit · target = Σ cofactor · generators[index]`, with `unit(point) ≠ 0`
/// when a point is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCert {
    pub label: String,
    pub ring: Vec<String>,
    pub generators: Vec<String>,
    pub target: String,
    pub unit: String,
    pub cofactors: Vec<Cofactor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleLimits {
    pub max_tries: usize,
    pub max_lift_degree: u32,
    pub max_jet_order: u32,
    pub jet_slack: u32,
    pub degree_cap: u32,
    pub max_pairs: usize,
    pub max_basis_size: usize,
    pub max_reduction_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub limits: BundleLimits,
    /// Wall-clock microseconds per stage; only present on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub version: String,
    pub task: String,
    pub outputs: Vec<Output>,
    pub certificates: Vec<BundleCert>,
    pub metadata: Metadata,
}

impl ResultBundle {
    pub fn output(&self, name: &str) -> Option<&Value> {
        self.outputs.iter().find(|o| o.name == name).map(|o| &o.value)
    }
}

pub fn serialize_bundle(b: &ResultBundle) -> String {
    let mut s = serde_json::to_string_pretty(b).expect("bundle serializes");
    s.push('\n');
    s
}

pub fn parse_bundle(text: &str) -> Result<ResultBundle> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Bundle(e.to_string()))?;
    match v.get("version").and_then(|x| x.as_str()) {
        Some(BUNDLE_VERSION) => {}
        Some(other) => return Err(Error::VersionMismatch(other.to_string())),
        None => return Err(Error::Bundle("missing version tag".into())),
    }
    serde_json::from_value(v).map_err(|e| Error::Bundle(e.to_string()))
}

pub fn names(ring: &RingCtx) -> Vec<String> {
    ring.names().to_vec()
}

pub fn polys_value(ring: &RingCtx, polys: &[Poly]) -> Value {
    Value::Polys { ring: names(ring), items: polys.iter().map(|p| p.to_text(ring)).collect() }
}

pub fn fractions_value(ring: &RingCtx, fracs: &[(Poly, Poly)]) -> Value {
    Value::Fractions {
        ring: names(ring),
        items: fracs.iter().map(|(n, d)| Fraction { num: n.to_text(ring), den: d.to_text(ring) }).collect(),
    }
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Matrix { rows: m.to_rows().iter().map(|r| r.iter().map(rat::to_text).collect()).collect() }
}

pub fn rationals_value(xs: &[urr_poly::Rat]) -> Value {
    Value::Rationals { items: xs.iter().map(rat::to_text).collect() }
}

pub fn encode_cert(label: &str, ring: &RingCtx, w: &Witness) -> BundleCert {
    let c = &w.cert;
    BundleCert {
        label: label.to_string(),
        ring: names(ring),
        generators: w.generators.iter().map(|g| g.to_text(ring)).collect(),
        target: c.target.to_text(ring),
        unit: c.unit.to_text(ring),
        cofactors: c.cofactors.iter().map(|(p, i)| Cofactor { index: *i, poly: p.to_text(ring) }).collect(),
        point: c.point.as_ref().map(|p| p.coords().iter().map(rat::to_text).collect()),
    }
}

pub fn encode_labeled(lw: &LabeledWitness) -> BundleCert {
    encode_cert(&lw.label, &lw.ring, &lw.witness)
}

/// Rebuilds the witness from text. Uses only the polynomial parser.
pub fn decode_cert(c: &BundleCert) -> Result<(RingCtx, Witness)> {
    let ring = RingCtx::with_reserved(&c.ring)?;
    let p = |s: &str| parse_poly(s, &ring).map_err(|e| Error::Bundle(format!("{}: {e}", c.label)));
    let generators = c.generators.iter().map(|g| p(g)).collect::<Result<Vec<_>>>()?;
    let cofactors = c.cofactors.iter().map(|cf| Ok((p(&cf.poly)?, cf.index))).collect::<Result<Vec<_>>>()?;
    let point = match &c.point {
        None => None,
        Some(xs) => Some(Point::new(
            xs.iter()
                .map(|x| rat::parse_rat(x).ok_or_else(|| Error::Bundle(format!("{}: bad rational `{x}`", c.label))))
                .collect::<Result<Vec<_>>>()?,
        )),
    };
    let cert = Cert { target: p(&c.target)?, unit: p(&c.unit)?, cofactors, point };
    Ok((ring, Witness { generators, cert }))
}

/// Replays one certificate by multiplication, addition and evaluation.
pub fn check_bundle_cert(c: &BundleCert) -> bool {
    match decode_cert(c) {
        Ok((_, w)) => check_certificate(&w.cert, &w.generators),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub results: Vec<(String, bool)>,
}

impl CheckReport {
    pub fn all_valid(&self) -> bool {
        self.results.iter().all(|r| r.1)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results.iter().filter(|r| !r.1).map(|r| r.0.as_str()).collect()
    }
}

pub fn check_bundle(b: &ResultBundle) -> CheckReport {
    CheckReport { results: b.certificates.iter().map(|c| (c.label.clone(), check_bundle_cert(c))).collect() }
}
