use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, Int, Sublattice};

/// Column Hermite normal form `a · u = h`.
///
/// `h` has its nonzero columns first; column `k` has a positive pivot in row
/// `pivot_rows[k]`, zeros above it, and the pivot rows increase strictly.
/// In each pivot row the entries of the earlier columns lie in
/// `[0, pivot)`; the entries of later columns are zero.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub fn hnf(a: &IntMatrix) -> Hnf {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut pc = 0;
    for row in 0..m {
        if pc == n {
            break;
        }
        loop {
            // smallest nonzero entry among the active columns
            let best = (pc..n)
                .filter(|&j| !h.get(row, j).is_zero())
                .min_by(|&x, &y| h.get(row, x).abs().cmp(&h.get(row, y).abs()));
            let Some(best) = best else { break };
            h.swap_cols(pc, best);
            u.swap_cols(pc, best);
            let mut done = true;
            for j in pc + 1..n {
                if h.get(row, j).is_zero() {
                    continue;
                }
                let q = h.get(row, j).div_floor(h.get(row, pc));
                let k = -q;
                h.add_col_multiple(j, pc, &k);
                u.add_col_multiple(j, pc, &k);
                if !h.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, pc).is_zero() {
            continue;
        }
        if h.get(row, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let piv = h.get(row, pc).clone();
        for j in 0..pc {
            let q = h.get(row, j).div_floor(&piv);
            let k = -q;
            h.add_col_multiple(j, pc, &k);
            u.add_col_multiple(j, pc, &k);
        }
        pivot_rows.push(row);
        pc += 1;
    }
    Hnf { h, u, pivot_rows }
}

/// Smith normal form `u · a · v = d` with `d_1 | d_2 | ...` nonnegative.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn invariant_factors(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn snf(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let k = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let k = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let piv = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = Int::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(d, u, v)
}

fn finish(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Snf {
    for t in 0..d.rows().min(d.cols()) {
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { d, u, v }
}

/// Integer kernel `{x : a·x = 0}` as a (saturated) sublattice of `Z^cols`.
pub fn kernel_basis(a: &IntMatrix) -> Sublattice {
    let n = a.cols();
    let f = hnf(a);
    let cols: Vec<_> = (f.rank()..n).map(|j| f.u.col(j)).collect();
    Sublattice::span(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, vector};

    fn is_unimodular(u: &IntMatrix) -> bool {
        u.determinant().abs() == Int::from(1)
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(2);
        let f = hnf(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);
        let z = IntMatrix::zeros(2, 2);
        let f = hnf(&z);
        assert_eq!(f.h, z);
        assert_eq!(f.u, id);
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn hnf_upper_triangular_example() {
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 0, 3]);
        let f = hnf(&a);
        assert_eq!(a.mul(&f.u), f.h);
        assert!(is_unimodular(&f.u));
        assert_eq!(f.h.get(0, 0), &Int::from(2));
        assert_eq!(f.h.get(1, 1), &Int::from(3));
        assert_eq!(f.h, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
    }

    #[test]
    fn snf_examples() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = snf(&a);
        assert_eq!(s.d, IntMatrix::from_i64(2, 2, &[1, 0, 0, 6]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        let id = IntMatrix::identity(3);
        assert_eq!(snf(&id).d, id);
        let z = IntMatrix::zeros(1, 2);
        assert_eq!(snf(&z).d, z);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64(1, 2, &[1, 1]));
        assert_eq!(k.rank(), 1);
        let v = &k.basis_vectors()[0];
        assert!(*v == vector(&[1, -1]) || *v == vector(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).rank(), 0);
        let k = kernel_basis(&IntMatrix::from_i64(1, 2, &[2, 4]));
        let v = &k.basis_vectors()[0];
        assert!(*v == vector(&[2, -1]) || *v == vector(&[-2, 1]));
    }

    #[test]
    fn kernel_matches_small_enumeration() {
        // oracle: every small integer solution of [[1,2,3]] x = 0 lies in the lattice
        let a = IntMatrix::from_i64(1, 3, &[1, 2, 3]);
        let k = kernel_basis(&a);
        assert_eq!(k.rank(), 2);
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                for z in -3i64..=3 {
                    let v = vector(&[x, y, z]);
                    let in_kernel = dot(&v, &a.row(0)).is_zero();
                    assert_eq!(k.contains(&v).unwrap(), in_kernel);
                }
            }
        }
    }
}
