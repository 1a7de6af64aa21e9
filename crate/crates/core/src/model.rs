//! Model files: a TOML document describing one monoidal complex, optional
//! pairs and run options.
//!
//! ```toml
//! schema = "torf-model/1"
//! ambient_rank = 2
//!
//! [cones]
//! quadrant = [["1", "0"], ["0", "1"]]
//! x-ray = [["1", "0"]]
//!
//! [fan]
//! face_closure_of = ["quadrant"]
//!
//! [monoids]
//! quadrant = { generators = [["2", "0"], ["0", "1"], ["1", "1"]] }
//!
//! [pairs]
//! boundary = ["x-ray"]
//!
//! [options]
//! box = 8
//! ```
//!
//! Integers may be written as decimal strings (no size limit) or as TOML
//! integers. Cones of the fan without an explicit monoid inherit the
//! restriction of the first explicitly given monoid whose cone contains them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::MonoidalComplex;
use crate::cones::{Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{Int, Sublattice, Vector};
use crate::monoid::{
    hilbert_basis, AffineMonoid, Characteristic, StratifiedMonoid, DEFAULT_BOX_RADIUS,
};

pub const SCHEMA: &str = "torf-model/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawInt {
    Int(i64),
    Str(String),
}

impl RawInt {
    fn to_int(&self) -> Result<Int> {
        match self {
            RawInt::Int(k) => Ok(Int::from(*k)),
            RawInt::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&Int> for RawInt {
    fn from(k: &Int) -> Self {
        RawInt::Str(k.to_string())
    }
}

pub type RawVectors = Vec<Vec<RawInt>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub schema: String,
    pub ambient_rank: usize,
    pub cones: BTreeMap<String, RawVectors>,
    pub fan: RawFan,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monoids: BTreeMap<String, RawMonoid>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pairs: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative: Option<RawRelative>,
    #[serde(default, skip_serializing_if = "RawOptions::is_empty")]
    pub options: RawOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFan {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_closure_of: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum RawMonoid {
    /// Only `"saturated"` is accepted.
    Keyword(String),
    Generators {
        generators: RawVectors,
    },
    Strata {
        strata: Vec<RawStratum>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStratum {
    pub face: RawConeRef,
    pub lattice: RawVectors,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawConeRef {
    Name(String),
    Generators(RawVectors),
}

/// Extension data for the relative normalizations: the monoid of `cone` is
/// the base, `over` generates the extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRelative {
    pub cone: String,
    pub over: RawVectors,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOptions {
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub box_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
    #[serde(rename = "char", default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
}

impl RawOptions {
    fn is_empty(&self) -> bool {
        *self == RawOptions::default()
    }
}

impl RawModel {
    pub fn from_toml(text: &str) -> Result<RawModel> {
        let raw: RawModel = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;
        if raw.schema != SCHEMA {
            return Err(Error::Parse(format!(
                "unknown schema {:?} (expected {SCHEMA:?})",
                raw.schema
            )));
        }
        Ok(raw)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub box_bound: u64,
    pub degree_bound: Option<u64>,
    pub characteristic: Option<Characteristic>,
}

#[derive(Clone, Debug)]
pub struct Relative {
    pub cone: Cone,
    pub base: AffineMonoid,
    pub over: AffineMonoid,
}

/// A parsed and validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub names: BTreeMap<String, Cone>,
    pub complex: MonoidalComplex,
    pub pairs: BTreeMap<String, Fan>,
    pub relative: Option<Relative>,
    pub options: Options,
}

/// Hex SHA-256 of the input bytes.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn vectors(n: usize, raw: &RawVectors) -> Result<Vec<Vector>> {
    raw.iter()
        .map(|v| {
            if v.len() != n {
                return Err(Error::Parse(format!(
                    "vector of length {} in a model of ambient rank {n}",
                    v.len()
                )));
            }
            v.iter().map(RawInt::to_int).collect()
        })
        .collect()
}

impl Model {
    pub fn parse(text: &str) -> Result<Model> {
        Model::from_raw(&RawModel::from_toml(text)?)
    }

    pub fn from_raw(raw: &RawModel) -> Result<Model> {
        let n = raw.ambient_rank;
        let options = Options {
            box_bound: raw.options.box_bound.unwrap_or(DEFAULT_BOX_RADIUS),
            degree_bound: raw.options.degree_bound,
            characteristic: raw.options.characteristic.map(Characteristic::new).transpose()?,
        };
        let mut names = BTreeMap::new();
        for (name, gens) in &raw.cones {
            names.insert(name.clone(), Cone::from_generators(n, &vectors(n, gens)?)?);
        }
        let lookup = |name: &str| -> Result<Cone> {
            names
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("unknown cone name {name:?}")))
        };
        let fan = match (&raw.fan.cones, &raw.fan.face_closure_of) {
            (Some(list), None) => {
                Fan::validate(n, &list.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>()?)?
            }
            (None, Some(list)) => {
                Fan::face_closure(n, &list.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>()?)?
            }
            _ => {
                return Err(Error::Parse(
                    "[fan] needs exactly one of `cones` or `face_closure_of`".into(),
                ))
            }
        };

        let mut explicit: Vec<Option<AffineMonoid>> = vec![None; fan.len()];
        for (name, spec) in &raw.monoids {
            let cone = lookup(name)?;
            let i = fan.require(&cone)?;
            explicit[i] = Some(monoid_from_spec(n, &cone, spec, &lookup, &options)?);
        }
        let mut family = Vec::with_capacity(fan.len());
        for (i, c) in fan.cones().iter().enumerate() {
            let s = match &explicit[i] {
                Some(s) => s.clone(),
                None => {
                    let source = fan
                        .star_of(i)
                        .into_iter()
                        .find_map(|j| explicit[j].as_ref())
                        .ok_or_else(|| Error::Parse(format!("no monoid given for {c} or any cone containing it")))?;
                    source.face_restriction(c)?
                }
            };
            family.push((c.clone(), s));
        }
        let complex = MonoidalComplex::validate(fan, &family)?;

        let mut pairs = BTreeMap::new();
        for (name, list) in &raw.pairs {
            if list.is_empty() {
                return Err(Error::Parse(format!("pair {name:?} lists no cones")));
            }
            let idx = list
                .iter()
                .map(|s| complex.fan().require(&lookup(s)?))
                .collect::<Result<Vec<_>>>()?;
            pairs.insert(name.clone(), complex.fan().subfan_closure(&idx));
        }

        let relative = match &raw.relative {
            None => None,
            Some(r) => {
                let cone = lookup(&r.cone)?;
                let base = complex.monoid(&cone)?.clone();
                let over = AffineMonoid::new(n, &vectors(n, &r.over)?)?;
                Some(Relative { cone, base, over })
            }
        };

        Ok(Model {
            names,
            complex,
            pairs,
            relative,
            options,
        })
    }

    /// The model name of a cone, or its generators if it is unnamed.
    pub fn label(&self, c: &Cone) -> String {
        self.names
            .iter()
            .find(|(_, k)| *k == c)
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| c.to_string())
    }

    pub fn cone_named(&self, name: &str) -> Result<Cone> {
        self.names
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("unknown cone name {name:?}")))
    }

    pub fn pair_named(&self, name: &str) -> Result<&Fan> {
        self.pairs
            .get(name)
            .ok_or_else(|| Error::Parse(format!("unknown pair name {name:?}")))
    }
}

fn monoid_from_spec(
    n: usize,
    cone: &Cone,
    spec: &RawMonoid,
    lookup: &dyn Fn(&str) -> Result<Cone>,
    options: &Options,
) -> Result<AffineMonoid> {
    match spec {
        RawMonoid::Keyword(k) if k == "saturated" => {
            AffineMonoid::new(n, &hilbert_basis(cone, cone.span_lattice())?)
        }
        RawMonoid::Keyword(k) => Err(Error::Parse(format!(
            "unknown monoid keyword {k:?} (expected \"saturated\")"
        ))),
        RawMonoid::Generators { generators } => {
            let s = AffineMonoid::new(n, &vectors(n, generators)?)?;
            Ok(s)
        }
        RawMonoid::Strata { strata } => {
            let mut family = Vec::with_capacity(strata.len());
            for st in strata {
                let face = match &st.face {
                    RawConeRef::Name(name) => lookup(name)?,
                    RawConeRef::Generators(g) => Cone::from_generators(n, &vectors(n, g)?)?,
                };
                family.push((face, Sublattice::span(n, &vectors(n, &st.lattice)?)));
            }
            let s = StratifiedMonoid::new(cone.clone(), &family)?;
            Ok(s.generators(options.degree_bound, options.box_bound)?.minimize())
        }
    }
}
