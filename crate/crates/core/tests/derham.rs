//! Properties of the graded forms and their fiberwise cohomology.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

use common::{all_models, de_rham, model, random_form, rng, support_degrees, VERIFY};
use torf::complex::MonoidalComplex;
use torf::cones::{Cone, Fan};
use torf::derham::{hdiff_general, BettiMode, DeRham};
use torf::linalg::{small_vector, IntMatrix, Vector};
use torf::monoid::AffineMonoid;

#[test]
fn differential_squares_to_zero_and_keeps_degrees() {
    for (i, (name, m)) in all_models().into_iter().enumerate() {
        let d = de_rham(&m.complex);
        let support = support_degrees(d.complex(), 3);
        let mut r = rng(300 + i as u64);
        for _ in 0..40 {
            let p = r.gen_range(0..=d.complex().ambient_rank());
            let w = random_form(&d, p, &mut r, &support, 4);
            let dw = d.differential(&w).unwrap();
            assert_eq!(dw.degree(), p + 1);
            assert!(d.differential(&dw).unwrap().is_zero(), "{name}");
            assert!(dw.terms().keys().all(|k| w.terms().contains_key(k)), "{name}: degree moved");
        }
    }
}

#[test]
fn restriction_commutes_with_the_differential() {
    for (i, (name, m)) in all_models().into_iter().enumerate() {
        let d = de_rham(&m.complex);
        let support = support_degrees(d.complex(), 3);
        let mut r = rng(400 + i as u64);
        for t in d.complex().cones() {
            for _ in 0..5 {
                let p = r.gen_range(0..=d.complex().ambient_rank());
                let w = random_form(&d, p, &mut r, &support, 4);
                let lhs = d.restrict(&d.differential(&w).unwrap(), t).unwrap();
                let rhs = d.differential(&d.restrict(&w, t).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{name} on {t}");
            }
        }
    }
}

#[test]
fn functions_are_one_dimensional_exactly_on_the_support() {
    for (name, m) in all_models() {
        let x = &m.complex;
        let dims = hdiff_general(x, 0, 3, None, VERIFY).unwrap();
        let d = de_rham(x);
        let support: BTreeSet<Vec<i64>> =
            support_degrees(d.complex(), 3).iter().map(|v| small_vector(v).unwrap()).collect();
        assert_eq!(dims.keys().cloned().collect::<BTreeSet<_>>(), support, "{name}");
        assert!(dims.values().all(|&k| k == 1), "{name}");
    }
}

#[test]
fn theoretical_and_box_betti_numbers_agree() {
    for (name, m) in all_models() {
        let d = de_rham(&m.complex);
        let mut pairs: Vec<Option<&Fan>> = vec![None];
        pairs.extend(m.pairs.values().map(Some));
        for sub in pairs {
            let th = d.betti(sub, BettiMode::Theoretical).unwrap();
            assert_eq!(th.dims.len(), d.complex().ambient_rank() + 1);
            for radius in 1..=3 {
                let bx = d.betti(sub, BettiMode::Box(radius)).unwrap();
                assert_eq!(bx.dims, th.dims, "{name} at radius {radius}");
            }
        }
    }
}

fn random_unimodular(n: usize, r: &mut StdRng) -> IntMatrix {
    let mut g = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j || n == 1 {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, r.gen_range(-2i64..=2).into());
        g = e.mul(&g);
    }
    if n > 0 && r.gen_bool(0.5) {
        let mut s = IntMatrix::identity(n);
        s.set(0, 0, (-1).into());
        g = s.mul(&g);
    }
    g
}

fn transform_cone(g: &IntMatrix, c: &Cone) -> Cone {
    let gens: Vec<Vector> = c.generators().iter().map(|v| g.mul_vec(v)).collect();
    Cone::from_generators(g.rows(), &gens).unwrap()
}

fn transform_fan(g: &IntMatrix, f: &Fan) -> Fan {
    let cones: Vec<Cone> = f.cones().iter().map(|c| transform_cone(g, c)).collect();
    Fan::validate(g.rows(), &cones).unwrap()
}

fn transform(g: &IntMatrix, x: &MonoidalComplex) -> MonoidalComplex {
    let family: Vec<(Cone, AffineMonoid)> = x
        .family()
        .iter()
        .map(|(c, s)| {
            let gens: Vec<Vector> = s.generators().iter().map(|v| g.mul_vec(v)).collect();
            (transform_cone(g, c), AffineMonoid::new(g.rows(), &gens).unwrap())
        })
        .collect();
    MonoidalComplex::validate(transform_fan(g, x.fan()), &family).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimensions_are_invariant_under_unimodular_coordinate_changes(name in prop::sample::select(torf::fixtures::names()), seed in any::<u64>()) {
        let m = model(&name);
        let d = de_rham(&m.complex);
        let n = d.complex().ambient_rank();
        let g = random_unimodular(n, &mut rng(seed));
        let moved = DeRham::new(transform(&g, d.complex()), VERIFY).unwrap();
        prop_assert_eq!(
            moved.betti(None, BettiMode::Theoretical).unwrap().dims,
            d.betti(None, BettiMode::Theoretical).unwrap().dims
        );
        for (_, sub) in &m.pairs {
            let a = d.betti(Some(sub), BettiMode::Box(2)).unwrap();
            let b = moved.betti(Some(&transform_fan(&g, sub)), BettiMode::Box(2));
            // the box is not preserved by g, but the sums are concentrated in degree 0
            prop_assert_eq!(b.unwrap().dims, a.dims);
        }
        for v in support_degrees(d.complex(), 2) {
            let here = d.fiber_complex(&v).unwrap();
            let there = moved.fiber_complex(&g.mul_vec(&v)).unwrap();
            prop_assert_eq!(here.dim, there.dim);
            prop_assert_eq!(here.cohomology(), there.cohomology());
        }
    }
}
