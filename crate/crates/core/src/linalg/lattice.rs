use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{hnf, kernel_basis, snf, IntMatrix, Int, Vector};
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, stored by its canonical column-HNF basis so that
/// structural equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Sublattice {
    /// The lattice generated by `gens` (any integer vectors of length `n`).
    pub fn span(n: usize, gens: &[Vector]) -> Self {
        let a = IntMatrix::from_cols(n, gens);
        let f = hnf(&a);
        let r = f.rank();
        let basis = f.h.select_cols(&(0..r).collect::<Vec<_>>());
        Sublattice {
            ambient: n,
            basis,
            pivot_rows: f.pivot_rows,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::span(n, &[])
    }

    pub fn full(n: usize) -> Self {
        let cols = IntMatrix::identity(n).col_vectors();
        Self::span(n, &cols)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// `n × r` matrix whose columns form the canonical basis.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.col_vectors()
    }

    /// Integer coordinates of `v` in the canonical basis, if `v` is a member.
    pub fn coords(&self, v: &[Int]) -> Result<Option<Vector>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        let mut res: Vector = v.to_vec();
        let mut c = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivot_rows.iter().enumerate() {
            let piv = self.basis.get(p, k);
            if !(&res[p] % piv).is_zero() {
                return Ok(None);
            }
            let q = &res[p] / piv;
            if !q.is_zero() {
                for (i, x) in res.iter_mut().enumerate().skip(p) {
                    *x -= &q * self.basis.get(i, k);
                }
            }
            c.push(q);
        }
        if res.iter().all(Zero::is_zero) {
            Ok(Some(c))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    /// Maps coordinates back to the ambient lattice.
    pub fn from_coords(&self, c: &[Int]) -> Vector {
        self.basis.mul_vec(c)
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> bool {
        self.ambient == other.ambient
            && self
                .basis_vectors()
                .iter()
                .all(|v| other.contains(v).unwrap_or(false))
    }

    /// Smallest saturated lattice containing `self`: `Q·self ∩ Z^n`.
    pub fn saturate(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let orth = self.annihilator();
        let k = IntMatrix::from_rows(self.ambient, &orth.basis_vectors());
        kernel_basis(&k)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    /// Integer covectors vanishing on `self`, as a sublattice of `Z^n`.
    pub fn annihilator(&self) -> Sublattice {
        kernel_basis(&self.basis.transpose())
    }

    pub fn intersect(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient, other.ambient);
        let (r1, r2) = (self.rank(), other.rank());
        if r1 == 0 || r2 == 0 {
            return Sublattice::zero(self.ambient);
        }
        // [B1 | -B2] (x, y) = 0  ->  B1 x
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors().iter().map(|v| super::neg(v)));
        let k = kernel_basis(&IntMatrix::from_cols(self.ambient, &cols));
        let pts: Vec<Vector> = k
            .basis_vectors()
            .iter()
            .map(|xy| self.from_coords(&xy[..r1]))
            .collect();
        Sublattice::span(self.ambient, &pts)
    }

    /// Completes the basis to a unimodular matrix `w` whose first `rank`
    /// columns span `self`. Requires `self` saturated.
    pub fn unimodular_completion(&self) -> IntMatrix {
        let n = self.ambient;
        let r = self.rank();
        if r == 0 {
            return IntMatrix::identity(n);
        }
        let s = snf(&self.basis);
        // u·B·v = [I_r; 0]  =>  B·v = first r columns of u^{-1}
        debug_assert!((0..r).all(|i| s.d.get(i, i).is_one()));
        let bv = self.basis.mul(&s.v);
        let uinv = unimodular_inverse(&s.u);
        let mut cols = bv.col_vectors();
        cols.extend((r..n).map(|j| uinv.col(j)));
        IntMatrix::from_cols(n, &cols)
    }

    /// `sub` spanned by `vs` expressed inside `self`: lattice of coordinates.
    pub fn sublattice_in_coords(&self, sub: &Sublattice) -> Result<Sublattice> {
        let mut cs = Vec::new();
        for v in sub.basis_vectors() {
            match self.coords(&v)? {
                Some(c) => cs.push(c),
                None => return Err(Error::NotASublattice { witness: v }),
            }
        }
        Ok(Sublattice::span(self.rank(), &cs))
    }
}

/// Inverse of a unimodular matrix via its Hermite form.
pub(crate) fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    // u · x = I  ; column HNF of u is I (up to reduction), u·w = I  => w = u^{-1}
    let f = hnf(u);
    debug_assert_eq!(f.h, IntMatrix::identity(u.rows()));
    f.u
}

/// Index `[sup : sub]`; infinite when the ranks differ.
pub fn lattice_index(sub: &Sublattice, sup: &Sublattice) -> Result<LatticeIndex> {
    let coords = sup.sublattice_in_coords(sub)?;
    if coords.rank() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite(coords.basis().determinant().abs()))
}

/// Same index through the invariant factors of the inclusion matrix.
pub fn lattice_index_snf(sub: &Sublattice, sup: &Sublattice) -> Result<LatticeIndex> {
    let coords = sup.sublattice_in_coords(sub)?;
    let s = snf(coords.basis());
    let f = s.invariant_factors();
    if f.len() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite(f.iter().product()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn diag23() -> Sublattice {
        Sublattice::span(2, &[vector(&[2, 0]), vector(&[0, 3])])
    }

    #[test]
    fn index_examples() {
        let full = Sublattice::full(2);
        assert_eq!(
            lattice_index(&diag23(), &full).unwrap(),
            LatticeIndex::Finite(Int::from(6))
        );
        assert_eq!(
            lattice_index(&full, &full).unwrap(),
            LatticeIndex::Finite(Int::from(1))
        );
        let line = Sublattice::span(2, &[vector(&[1, 0])]);
        assert_eq!(lattice_index(&line, &full).unwrap(), LatticeIndex::Infinite);
        assert!(matches!(
            lattice_index(&full, &diag23()),
            Err(Error::NotASublattice { .. })
        ));
    }

    #[test]
    fn saturation_examples() {
        let l = Sublattice::span(2, &[vector(&[2, 0])]);
        assert_eq!(l.saturate(), Sublattice::span(2, &[vector(&[1, 0])]));
        let l = Sublattice::span(2, &[vector(&[2, 2])]);
        assert_eq!(l.saturate(), Sublattice::span(2, &[vector(&[1, 1])]));
        let s = Sublattice::span(2, &[vector(&[1, 1])]);
        assert_eq!(s.saturate(), s);
    }

    #[test]
    fn membership_examples() {
        let l = diag23();
        assert!(l.contains(&vector(&[2, 0])).unwrap());
        assert!(!l.contains(&vector(&[1, 0])).unwrap());
        assert!(l.contains(&vector(&[2, 3])).unwrap());
        assert!(matches!(
            l.contains(&vector(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersection_of_lattices() {
        let a = Sublattice::span(1, &[vector(&[4])]);
        let b = Sublattice::span(1, &[vector(&[6])]);
        assert_eq!(a.intersect(&b), Sublattice::span(1, &[vector(&[12])]));
    }

    #[test]
    fn completion_is_unimodular() {
        let l = Sublattice::span(3, &[vector(&[1, 1, 0]), vector(&[0, 1, 1])]);
        let w = l.unimodular_completion();
        assert_eq!(w.determinant().abs(), Int::from(1));
        assert_eq!(Sublattice::span(3, &w.col_vectors()[..2]), l);
    }
}
