//! Properties of the exact normal forms and lattice operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use torf::linalg::{
    content, from_small, hnf, kernel_basis, lattice_index, lattice_index_snf, snf, IntMatrix, LatticeIndex, Sublattice,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, n), 0..=4)
}

fn lattice(n: usize) -> impl Strategy<Value = Sublattice> {
    vectors(n).prop_map(move |vs| Sublattice::span(n, &vs.iter().map(|v| from_small(v)).collect::<Vec<_>>()))
}

fn unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermite_form_is_reached_by_a_unimodular_transform(a in matrix()) {
        let f = hnf(&a);
        prop_assert_eq!(a.mul(&f.u), f.h.clone());
        prop_assert!(unimodular(&f.u));
        prop_assert_eq!(f.rank(), a.rank());
        for (k, &row) in f.pivot_rows.iter().enumerate() {
            let pivot = f.h.get(row, k);
            prop_assert!(pivot.is_positive());
            for j in 0..k {
                let e = f.h.get(row, j);
                prop_assert!(!e.is_negative() && e < pivot);
            }
            for i in 0..row {
                prop_assert!(f.h.get(i, k).is_zero());
            }
        }
        for w in f.pivot_rows.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for j in f.rank()..a.cols() {
            prop_assert!(f.h.col(j).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn smith_form_is_diagonal_with_a_divisibility_chain(a in matrix()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(unimodular(&s.u) && unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d.get(i, j).is_zero());
            }
        }
        let k = s.d.rows().min(s.d.cols());
        let diag: Vec<BigInt> = (0..k).map(|i| s.d.get(i, i).clone()).collect();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(s.invariant_factors().len(), a.rank());
    }

    #[test]
    fn index_agrees_between_determinant_and_invariant_factors(sup in lattice(3), coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..=4)) {
        let basis = sup.basis_vectors();
        let gens: Vec<_> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![BigInt::zero(); 3];
                for (k, b) in c.iter().zip(&basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += BigInt::from(*k) * y;
                    }
                }
                v
            })
            .collect();
        let sub = Sublattice::span(3, &gens);
        let a = lattice_index(&sub, &sup).unwrap();
        prop_assert_eq!(&a, &lattice_index_snf(&sub, &sup).unwrap());
        prop_assert_eq!(a == LatticeIndex::Infinite, sub.rank() < sup.rank());
        prop_assert!(sub.is_subset_of(&sup));
    }

    #[test]
    fn saturation_is_idempotent_and_contains_the_lattice(l in lattice(3)) {
        let s = l.saturate();
        prop_assert_eq!(s.saturate(), s.clone());
        prop_assert!(s.is_saturated());
        prop_assert_eq!(s.rank(), l.rank());
        for b in l.basis_vectors() {
            prop_assert!(s.contains(&b).unwrap());
        }
    }

    #[test]
    fn kernel_vectors_are_primitive_solutions(a in matrix()) {
        let k = kernel_basis(&a);
        prop_assert_eq!(k.rank() + a.rank(), a.cols());
        prop_assert!(k.is_saturated());
        for v in k.basis_vectors() {
            prop_assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
            prop_assert!(content(&v).is_one());
        }
    }
}
