use num_traits::{One, Zero};

use super::*;
use crate::complex::MonoidalComplex;
use crate::cones::{Cone, Fan};
use crate::error::Error;
use crate::linalg::{vector, Rat, Vector};
use crate::monoid::AffineMonoid;

fn cone(n: usize, gens: &[&[i64]]) -> Cone {
    let g: Vec<Vector> = gens.iter().map(|v| vector(v)).collect();
    Cone::from_generators(n, &g).unwrap()
}

fn r(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

fn plane() -> DeRham {
    let fan = Fan::face_closure(2, &[cone(2, &[&[1, 0], &[0, 1]])]).unwrap();
    DeRham::new(MonoidalComplex::full(&fan), 8).unwrap()
}

fn axes() -> DeRham {
    let fan = Fan::face_closure(2, &[cone(2, &[&[1, 0]]), cone(2, &[&[0, 1]])]).unwrap();
    DeRham::new(MonoidalComplex::full(&fan), 8).unwrap()
}

fn torus() -> DeRham {
    let fan = Fan::validate(2, &[Cone::whole_space(2)]).unwrap();
    DeRham::new(MonoidalComplex::full(&fan), 8).unwrap()
}

#[test]
fn form_space_dimensions() {
    assert_eq!(torus().fiber_space(&vector(&[3, -1])).unwrap().dim(), 2);
    let p = plane();
    assert_eq!(p.fiber_space(&vector(&[1, 0])).unwrap().dim(), 1);
    assert_eq!(p.fiber_space(&vector(&[0, 0])).unwrap().dim(), 0);
    assert!(matches!(
        p.fiber_space(&vector(&[-1, 0])),
        Err(Error::DegreeNotInSupport(_))
    ));
}

#[test]
fn pinch_is_not_weakly_normal() {
    let fan = Fan::face_closure(2, &[cone(2, &[&[1, 0], &[0, 1]])]).unwrap();
    let s = AffineMonoid::new(2, &[vector(&[2, 0]), vector(&[0, 1]), vector(&[1, 1])]).unwrap();
    let x = MonoidalComplex::from_monoid_subfan(&s, &fan).unwrap();
    // seminormal, hence weakly normal in characteristic 0
    assert!(DeRham::new(x, 8).is_ok());
    let ray = Fan::face_closure(1, &[cone(1, &[&[1]])]).unwrap();
    let num = AffineMonoid::new(1, &[vector(&[2]), vector(&[3])]).unwrap();
    let x = MonoidalComplex::from_monoid_subfan(&num, &ray).unwrap();
    assert!(matches!(DeRham::new(x, 8), Err(Error::NotWeaklyNormal)));
}

#[test]
fn differential_examples() {
    let p = plane();
    let unit = p.form(0, &[(vector(&[0, 0]), vec![r(1)])]).unwrap();
    assert!(p.differential(&unit).unwrap().is_zero());
    let w = p.form(0, &[(vector(&[1, 1]), vec![r(1)])]).unwrap();
    let dw = p.differential(&w).unwrap();
    assert_eq!(dw.terms()[&vector(&[1, 1])], vec![r(1), r(1)]);
    assert!(p.differential(&dw).unwrap().is_zero());
}

#[test]
fn module_action_examples() {
    let p = plane();
    let w = p.form(1, &[(vector(&[1, 0]), vec![r(3)])]).unwrap();
    assert_eq!(p.module_action(&vector(&[0, 0]), &w).unwrap(), w);
    let moved = p.module_action(&vector(&[0, 1]), &w).unwrap();
    assert_eq!(moved.terms()[&vector(&[1, 1])], vec![r(3), r(0)]);
    let a = axes();
    let w = a.form(1, &[(vector(&[1, 0]), vec![r(1)])]).unwrap();
    assert!(a.module_action(&vector(&[0, 1]), &w).unwrap().is_zero());
}

#[test]
fn leibniz_rule_on_a_sample() {
    let p = plane();
    let w = p
        .form(0, &[(vector(&[1, 0]), vec![r(2)]), (vector(&[0, 0]), vec![r(-1)]), (vector(&[1, 2]), vec![r(5)])])
        .unwrap();
    let mp = vector(&[0, 1]);
    let lhs = p.differential(&p.module_action(&mp, &w).unwrap()).unwrap();
    let rhs = p
        .leibniz_correction(&mp, &w)
        .unwrap()
        .add(&p.module_action(&mp, &p.differential(&w).unwrap()).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn restriction_rule() {
    let p = plane();
    let w = p.form(0, &[(vector(&[1, 0]), vec![r(1)]), (vector(&[2, 0]), vec![r(1)])]).unwrap();
    let only_y = p.form(0, &[(vector(&[1, 0]), vec![r(1)])]).unwrap();
    assert!(p.restrict(&only_y, &cone(2, &[&[0, 1]])).unwrap().is_zero());
    assert_eq!(p.restrict(&w, &cone(2, &[&[1, 0]])).unwrap(), w);
    assert!(matches!(
        p.restrict(&w, &cone(2, &[&[1, 1]])),
        Err(Error::ConeNotInFan(_))
    ));
}

#[test]
fn pair_filters() {
    let p = plane();
    let ax = Fan::face_closure(2, &[cone(2, &[&[1, 0]]), cone(2, &[&[0, 1]])]).unwrap();
    let f = p.pair_filter(&ax).unwrap();
    assert!(f.accepts(&vector(&[1, 1])).unwrap());
    assert!(!f.accepts(&vector(&[1, 0])).unwrap());
    let origin = Fan::validate(2, &[Cone::zero(2)]).unwrap();
    let f = p.pair_filter(&origin).unwrap();
    assert!(!f.accepts(&vector(&[0, 0])).unwrap());
    assert!(f.accepts(&vector(&[0, 3])).unwrap());
    let all = p.complex().fan().clone();
    assert!(!p.pair_filter(&all).unwrap().accepts(&vector(&[2, 2])).unwrap());
}

#[test]
fn fiber_cohomology_examples() {
    let p = plane();
    assert_eq!(p.fiber_complex(&vector(&[1, 1])).unwrap().cohomology(), vec![0, 0, 0]);
    assert_eq!(p.fiber_complex(&vector(&[0, 0])).unwrap().cohomology(), vec![1]);
    let t = torus();
    assert_eq!(t.fiber_complex(&vector(&[2, -1])).unwrap().cohomology(), vec![0, 0, 0]);
    assert_eq!(t.fiber_complex(&vector(&[0, 0])).unwrap().cohomology(), vec![1, 2, 1]);
}

#[test]
fn betti_numbers() {
    for mode in [BettiMode::Theoretical, BettiMode::Box(3)] {
        assert_eq!(torus().betti(None, mode).unwrap().dims, vec![1, 2, 1]);
        assert_eq!(axes().betti(None, mode).unwrap().dims, vec![1, 0, 0]);
        let ax = axes().complex().fan().clone();
        assert_eq!(plane().betti(Some(&ax), mode).unwrap().dims, vec![0, 0, 0]);
    }
}

#[test]
fn pair_dimension_tables() {
    let p = plane();
    let origin = Fan::validate(2, &[Cone::zero(2)]).unwrap();
    let rows = p.pair_dims(&origin, 1, 2).unwrap();
    let at = |d: &[i64]| rows.iter().find(|r| r.degree == d).unwrap().clone();
    assert_eq!(at(&[1, 0]).pair, 1);
    assert_eq!(at(&[0, 0]).pair, 0);
    for row in &rows {
        assert_eq!(row.whole, row.sub + row.pair);
    }
    let all = p.complex().fan().clone();
    assert!(p.pair_dims(&all, 1, 2).unwrap().iter().all(|r| r.pair == 0));
}

#[test]
fn general_complexes_go_through_weak_normalization() {
    let ray = Fan::face_closure(1, &[cone(1, &[&[1]])]).unwrap();
    let num = AffineMonoid::new(1, &[vector(&[2]), vector(&[3])]).unwrap();
    let x = MonoidalComplex::from_monoid_subfan(&num, &ray).unwrap();
    let t = hdiff_general(&x, 0, 4, None, 8).unwrap();
    assert_eq!(t.get(&vec![1]), Some(&1));
    let fan = Fan::face_closure(2, &[cone(2, &[&[1, 0], &[0, 1]])]).unwrap();
    let s = AffineMonoid::new(2, &[vector(&[2, 0]), vector(&[0, 1]), vector(&[1, 1])]).unwrap();
    let pinch = MonoidalComplex::from_monoid_subfan(&s, &fan).unwrap();
    let t = hdiff_general(&pinch, 1, 3, None, 8).unwrap();
    assert_eq!(t.get(&vec![1, 0]).copied().unwrap_or(0), 0);
    assert_eq!(t.get(&vec![2, 0]), Some(&1));
}

#[test]
fn zero_coefficients_are_dropped() {
    let p = plane();
    let w = p.form(0, &[(vector(&[1, 0]), vec![Rat::zero()])]).unwrap();
    assert!(w.is_zero());
    let u = p.form(0, &[(vector(&[1, 0]), vec![Rat::one()])]).unwrap();
    let neg = p.form(0, &[(vector(&[1, 0]), vec![-Rat::one()])]).unwrap();
    assert!(u.add(&neg).is_zero());
}
