#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use torf::complex::MonoidalComplex;
use torf::derham::wedge::binomial;
use torf::derham::{DeRham, GradedForm};
use torf::fixtures;
use torf::linalg::{box_points, from_small, Rat, Vector};
use torf::model::Model;
use torf::monoid::Characteristic;
use torf::Error;

pub const VERIFY: u64 = 8;

pub fn model(name: &str) -> Model {
    Model::parse(&fixtures::fixture(name).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_models() -> Vec<(String, Model)> {
    fixtures::names().into_iter().map(|n| (n.clone(), model(&n))).collect()
}

/// The de Rham data of a complex, passing to the weak normalization in
/// characteristic 0 when the complex itself is not weakly normal.
pub fn de_rham(x: &MonoidalComplex) -> DeRham {
    match DeRham::new(x.clone(), VERIFY) {
        Ok(d) => d,
        Err(Error::NotWeaklyNormal) => {
            let wn = x.wn_complex(Characteristic::zero(), None, VERIFY).unwrap();
            DeRham::new(wn, VERIFY).unwrap()
        }
        Err(e) => panic!("{e}"),
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn support_degrees(x: &MonoidalComplex, radius: u64) -> Vec<Vector> {
    box_points(x.ambient_rank(), radius)
        .filter(|p| x.locate_small(p).is_some())
        .map(|p| from_small(&p))
        .collect()
}

pub fn random_rat(rng: &mut StdRng) -> Rat {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A random form of degree `p` with up to `terms` homogeneous pieces, at
/// support degrees inside the box.
pub fn random_form(d: &DeRham, p: usize, rng: &mut StdRng, support: &[Vector], terms: usize) -> GradedForm {
    let mut pieces = Vec::new();
    for _ in 0..terms {
        let m = support.choose(rng).expect("nonempty support").clone();
        let dim = d.fiber_space(&m).unwrap().dim();
        let coords: Vec<Rat> = (0..binomial(dim, p)).map(|_| random_rat(rng)).collect();
        pieces.push((m, coords));
    }
    d.form(p, &pieces).unwrap()
}
