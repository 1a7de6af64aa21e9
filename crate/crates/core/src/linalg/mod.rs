//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers; rationals only
//! appear when solving for coordinates in a rational span.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{lattice_index, lattice_index_snf, LatticeIndex, Sublattice};
pub(crate) use lattice::unimodular_inverse;
pub use matrix::IntMatrix;
pub use normal_form::{hnf, kernel_basis, snf, Hnf, Snf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
/// A lattice point (or covector) written in standard coordinates.
pub type Vector = Vec<Int>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn vector(v: &[i64]) -> Vector {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Int::zero(); n]
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Int], b: &[Int]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Int]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(k: &Int, a: &[Int]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

pub fn is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Gcd of all entries (0 for the zero vector).
pub fn content(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(a: &[Int]) -> Vector {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

/// Largest divisor of `d` that is coprime to `p`; `p = 0` leaves `d` alone.
pub fn coprime_part(d: &Int, p: u64) -> Int {
    let mut d = d.abs();
    if p == 0 || d.is_zero() {
        return d;
    }
    let p = Int::from(p);
    while (&d % &p).is_zero() {
        d /= &p;
    }
    d
}

/// `Some` when every entry fits in an `i64`.
pub fn small_vector(v: &[Int]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    v.iter().map(|x| x.to_i64()).collect()
}

pub fn from_small(v: &[i64]) -> Vector {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Lattice points of the cube `[-radius, radius]^n`, in lexicographic order.
pub fn box_points(n: usize, radius: u64) -> impl Iterator<Item = Vec<i64>> {
    let r = radius as i64;
    let mut cur: Option<Vec<i64>> = Some(vec![-r; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        cur = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < r {
                next[i] += 1;
                for x in next.iter_mut().skip(i + 1) {
                    *x = -r;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

pub fn fmt_vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn rat(x: &Int) -> Rat {
    Rat::from_integer(x.clone())
}

/// Solves `a · x = b` over the rationals. Returns one solution (free
/// variables set to zero) or `None` if the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &[Int]) -> Option<Vec<Rat>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m);
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut r: Vec<Rat> = (0..n).map(|j| rat(a.get(i, j))).collect();
            r.push(rat(&b[i]));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=n {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Some(x)
}

/// Clears denominators of a rational vector and returns the primitive
/// integer vector on the same ray.
pub fn primitive_from_rational(v: &[Rat]) -> Vector {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vector = v.iter().map(|x| (x * rat(&l)).to_integer()).collect();
    primitive(&ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_part_examples() {
        assert_eq!(coprime_part(&int(12), 2), int(3));
        assert_eq!(coprime_part(&int(12), 3), int(4));
        assert_eq!(coprime_part(&int(12), 0), int(12));
        assert_eq!(coprime_part(&int(7), 5), int(7));
    }

    #[test]
    fn solve_rational_consistent_and_not() {
        let a = IntMatrix::from_rows(2, &[vector(&[2, 0]), vector(&[0, 3])]);
        let x = solve_rational(&a, &vector(&[1, 1])).unwrap();
        assert_eq!(x[0], Rat::new(int(1), int(2)));
        assert_eq!(x[1], Rat::new(int(1), int(3)));
        let a = IntMatrix::from_rows(1, &[vector(&[1]), vector(&[2])]);
        assert!(solve_rational(&a, &vector(&[1, 1])).is_none());
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(box_points(2, 1).count(), 9);
        assert_eq!(box_points(0, 3).count(), 1);
        let pts: Vec<_> = box_points(1, 2).collect();
        assert_eq!(pts, vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&vector(&[4, -6])), vector(&[2, -3]));
        assert_eq!(primitive(&vector(&[0, 0])), vector(&[0, 0]));
    }
}
