//! Built-in example models, emitted as model files.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{RawFan, RawInt, RawModel, RawMonoid, RawOptions, RawRelative, RawVectors, SCHEMA};

/// Valid built-ins, in listing order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    out.extend((1..=3).map(|n| format!("torus-{n}")));
    out.extend((1..=3).map(|n| format!("affine-{n}")));
    out.push("pinch".into());
    out.push("pinch-pair".into());
    out.push("power-6-extension".into());
    out.push("numeric-semigroup-2-3".into());
    for d in 1..=3 {
        for q in 1..=3.min(d + 1) {
            out.push(format!("normal-crossings-{q}-{d}"));
        }
    }
    out.push("axes-cross".into());
    out
}

/// Built-ins that must be rejected by validation.
pub fn broken_names() -> Vec<String> {
    ["broken-missing-face", "broken-overlap", "broken-incompatible"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// The model file for a built-in. Parametrized families accept other
/// parameters than the listed ones: `torus-n` and `affine-n` for
/// `1 ≤ n ≤ 6`, `power-d-extension` for `d ≥ 1`, and
/// `normal-crossings-q-d` for `1 ≤ q ≤ d + 1 ≤ 7`.
pub fn fixture(name: &str) -> Result<String> {
    Ok(raw_fixture(name)?.to_toml())
}

pub fn raw_fixture(name: &str) -> Result<RawModel> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let param = |prefix: &str, suffix: &str| -> Option<u64> {
        name.strip_prefix(prefix)?.strip_suffix(suffix)?.parse().ok()
    };
    if let Some(n) = param("torus-", "") {
        return (1..=6).contains(&n).then(|| torus(n as usize)).ok_or_else(unknown);
    }
    if let Some(n) = param("affine-", "") {
        return (1..=6).contains(&n).then(|| affine(n as usize)).ok_or_else(unknown);
    }
    if let Some(d) = param("power-", "-extension") {
        return (d >= 1).then(|| power_extension(d)).ok_or_else(unknown);
    }
    if let Some(rest) = name.strip_prefix("normal-crossings-") {
        let (q, d) = rest.split_once('-').ok_or_else(unknown)?;
        let (q, d): (usize, usize) = (q.parse().map_err(|_| unknown())?, d.parse().map_err(|_| unknown())?);
        return (q >= 1 && q <= d + 1 && d < 7)
            .then(|| normal_crossings(q, d))
            .ok_or_else(unknown);
    }
    match name {
        "pinch" => Ok(pinch(false)),
        "pinch-pair" => Ok(pinch(true)),
        "numeric-semigroup-2-3" => Ok(numeric_semigroup()),
        "axes-cross" => Ok(axes_cross()),
        "broken-missing-face" => Ok(missing_face()),
        "broken-overlap" => Ok(overlap()),
        "broken-incompatible" => Ok(incompatible()),
        _ => Err(unknown()),
    }
}

fn v(x: &[i64]) -> Vec<RawInt> {
    x.iter().map(|k| RawInt::Str(k.to_string())).collect()
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<RawInt> {
    let mut e = vec![0; n];
    e[i] = sign;
    v(&e)
}

fn vs(list: &[&[i64]]) -> RawVectors {
    list.iter().map(|x| v(x)).collect()
}

fn names_of(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn gens(list: &[&[i64]]) -> RawMonoid {
    RawMonoid::Generators { generators: vs(list) }
}

fn saturated() -> RawMonoid {
    RawMonoid::Keyword("saturated".into())
}

fn model(n: usize, cones: BTreeMap<String, RawVectors>, fan: RawFan, monoids: BTreeMap<String, RawMonoid>) -> RawModel {
    RawModel {
        schema: SCHEMA.into(),
        ambient_rank: n,
        cones,
        fan,
        monoids,
        pairs: BTreeMap::new(),
        relative: None,
        options: RawOptions::default(),
    }
}

fn closure_of(list: &[&str]) -> RawFan {
    RawFan {
        cones: None,
        face_closure_of: Some(names_of(list)),
    }
}

fn torus(n: usize) -> RawModel {
    let gens: RawVectors = (0..n).flat_map(|i| [unit(n, i, 1), unit(n, i, -1)]).collect();
    model(
        n,
        BTreeMap::from([("torus".into(), gens)]),
        closure_of(&["torus"]),
        BTreeMap::from([("torus".into(), saturated())]),
    )
}

/// `N^n` with its coordinate facets named `facet-i` (the facet `s_i = 0`)
/// and the boundary pair.
fn affine(n: usize) -> RawModel {
    let mut cones = BTreeMap::from([("orthant".to_string(), (0..n).map(|i| unit(n, i, 1)).collect())]);
    let mut facets = Vec::new();
    for i in 1..=n {
        let name = format!("facet-{i}");
        cones.insert(name.clone(), (0..n).filter(|&j| j != i - 1).map(|j| unit(n, j, 1)).collect());
        facets.push(name);
    }
    let mut m = model(
        n,
        cones,
        closure_of(&["orthant"]),
        BTreeMap::from([("orthant".into(), saturated())]),
    );
    m.pairs.insert("boundary".into(), facets);
    m
}

/// `k[X, Y, Z]/(ZX² − Y²)`: the monoid `<(2,0), (0,1), (1,1)>` over the
/// quadrant.
fn pinch(with_pairs: bool) -> RawModel {
    let cones = BTreeMap::from([
        ("quadrant".to_string(), vs(&[&[1, 0], &[0, 1]])),
        ("x-ray".to_string(), vs(&[&[1, 0]])),
        ("y-ray".to_string(), vs(&[&[0, 1]])),
        ("origin".to_string(), vec![]),
    ]);
    let mut m = model(
        2,
        cones,
        closure_of(&["quadrant"]),
        BTreeMap::from([("quadrant".into(), gens(&[&[2, 0], &[0, 1], &[1, 1]]))]),
    );
    if with_pairs {
        m.pairs.insert("boundary".into(), names_of(&["x-ray", "y-ray"]));
        m.pairs.insert("origin".into(), names_of(&["origin"]));
        m.pairs.insert("x-axis".into(), names_of(&["x-ray"]));
    }
    m
}

/// `<d> ⊂ N` with the extension `N`, characteristic 2.
fn power_extension(d: u64) -> RawModel {
    let cones = BTreeMap::from([("ray".to_string(), vs(&[&[1]])), ("origin".to_string(), vec![])]);
    let mut m = model(
        1,
        cones,
        closure_of(&["ray"]),
        BTreeMap::from([("ray".into(), gens(&[&[d as i64]]))]),
    );
    m.relative = Some(RawRelative {
        cone: "ray".into(),
        over: vs(&[&[1]]),
    });
    m.options.characteristic = Some(2);
    m
}

fn numeric_semigroup() -> RawModel {
    let cones = BTreeMap::from([("ray".to_string(), vs(&[&[1]])), ("origin".to_string(), vec![])]);
    model(
        1,
        cones,
        closure_of(&["ray"]),
        BTreeMap::from([("ray".into(), gens(&[&[2], &[3]]))]),
    )
}

/// `z_1 ⋯ z_q = 0` in `A^{d+1}`: the coordinate hyperplanes `s_i = 0` of
/// `N^{d+1}` for `i ≤ q`, named `plane-i`. The pair `first` is the first
/// hyperplane.
fn normal_crossings(q: usize, d: usize) -> RawModel {
    let n = d + 1;
    let mut cones = BTreeMap::new();
    let mut monoids = BTreeMap::new();
    let mut planes = Vec::new();
    for i in 1..=q {
        let name = format!("plane-{i}");
        cones.insert(name.clone(), (0..n).filter(|&j| j != i - 1).map(|j| unit(n, j, 1)).collect());
        monoids.insert(name.clone(), saturated());
        planes.push(name);
    }
    let fan = RawFan {
        cones: None,
        face_closure_of: Some(planes.clone()),
    };
    let mut m = model(n, cones, fan, monoids);
    m.pairs.insert("first".into(), vec![planes[0].clone()]);
    m
}

/// `k[x, y]/(xy)` as the two rays of `Z`.
fn axes_cross() -> RawModel {
    let cones = BTreeMap::from([
        ("positive".to_string(), vs(&[&[1]])),
        ("negative".to_string(), vs(&[&[-1]])),
        ("origin".to_string(), vec![]),
    ]);
    let mut m = model(
        1,
        cones,
        closure_of(&["positive", "negative"]),
        BTreeMap::from([("positive".into(), saturated()), ("negative".into(), saturated())]),
    );
    m.pairs.insert("positive".into(), names_of(&["positive"]));
    m.pairs.insert("origin".into(), names_of(&["origin"]));
    m
}

fn missing_face() -> RawModel {
    model(
        2,
        BTreeMap::from([("quadrant".to_string(), vs(&[&[1, 0], &[0, 1]]))]),
        RawFan {
            cones: Some(names_of(&["quadrant"])),
            face_closure_of: None,
        },
        BTreeMap::from([("quadrant".into(), saturated())]),
    )
}

fn overlap() -> RawModel {
    let cones = BTreeMap::from([
        ("lower".to_string(), vs(&[&[1, 0], &[1, 2]])),
        ("upper".to_string(), vs(&[&[1, 1], &[0, 1]])),
    ]);
    model(
        2,
        cones,
        closure_of(&["lower", "upper"]),
        BTreeMap::from([("lower".into(), saturated()), ("upper".into(), saturated())]),
    )
}

/// The pinch monoid with `<(4,0)>` declared over the x-ray.
fn incompatible() -> RawModel {
    let mut m = pinch(false);
    m.monoids.insert("x-ray".into(), gens(&[&[4, 0]]));
    m
}
