//! Hilbert bases of `Λ ∩ σ` for a cone `σ` and a lattice `Λ` of finite
//! index in the lattice points of its span.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, snf, IntMatrix, Int, Sublattice, Vector};

/// Minimal generating set of the monoid `lattice ∩ cone`. The lineality
/// part is returned as a lattice basis and its negatives.
pub fn hilbert_basis(cone: &Cone, lattice: &Sublattice) -> Result<Vec<Vector>> {
    if lattice.rank() != cone.dim() || !lattice.is_subset_of(cone.span_lattice()) {
        return Err(Error::NotASublattice {
            witness: lattice
                .basis_vectors()
                .into_iter()
                .find(|v| !cone.span_lattice().contains(v).unwrap_or(false))
                .unwrap_or_else(|| linalg::zero_vector(cone.ambient_rank())),
        });
    }
    let d = lattice.rank();
    if d == 0 {
        return Ok(Vec::new());
    }
    let basis = lattice.basis();
    let local: Vec<Vector> = cone
        .generators()
        .iter()
        .map(|g| {
            let c = linalg::solve_rational(basis, g).expect("generator in the span");
            linalg::primitive_from_rational(&c)
        })
        .collect();
    let full = Cone::from_generators(d, &local)?;
    let mut out: Vec<Vector> = full_dimensional(&full)
        .iter()
        .map(|h| basis.mul_vec(h))
        .collect();
    out.sort();
    Ok(out)
}

/// Hilbert basis of `Z^d ∩ cone` for a full-dimensional cone.
fn full_dimensional(cone: &Cone) -> Vec<Vector> {
    let d = cone.ambient_rank();
    let l = cone.lineality_dim();
    let w = cone.lineality().unimodular_completion();
    let winv = crate::linalg::unimodular_inverse(&w);
    let k = d - l;
    let projections: Vec<Vector> = cone
        .rays()
        .iter()
        .map(|r| winv.mul_vec(r)[l..].to_vec())
        .collect();
    let mut out = Vec::new();
    for i in 0..l {
        let e = w.col(i);
        out.push(linalg::neg(&e));
        out.push(e);
    }
    if k > 0 {
        let pointed = Cone::from_generators(k, &projections).expect("lengths agree");
        for h in pointed_hilbert_basis(&pointed) {
            let mut y = linalg::zero_vector(l);
            y.extend(h);
            out.push(w.mul_vec(&y));
        }
    }
    out
}

/// Hilbert basis of a pointed full-dimensional cone: union of the
/// fundamental parallelepipeds of a triangulation, reduced to irreducibles.
pub(crate) fn pointed_hilbert_basis(cone: &Cone) -> Vec<Vector> {
    let k = cone.ambient_rank();
    let rays = cone.rays().to_vec();
    let mut candidates: BTreeSet<Vector> = rays.iter().cloned().collect();
    for simplex in triangulate(&rays, (0..rays.len()).collect(), k) {
        let gens: Vec<Vector> = simplex.iter().map(|&i| rays[i].clone()).collect();
        candidates.extend(parallelepiped_points(&IntMatrix::from_cols(k, &gens)));
    }
    let cands: Vec<Vector> = candidates.into_iter().collect();
    cands
        .iter()
        .filter(|h| {
            !cands.iter().any(|g| {
                g != *h && {
                    let diff = linalg::sub(h, g);
                    !linalg::is_zero(&diff) && cone.contains(&diff).expect("same length")
                }
            })
        })
        .cloned()
        .collect()
}

/// Pulling triangulation of the cone generated by `rays[idx]` (all extreme)
/// into simplicial cones, given as index sets.
pub(crate) fn triangulate(rays: &[Vector], idx: Vec<usize>, n: usize) -> Vec<Vec<usize>> {
    let gens: Vec<Vector> = idx.iter().map(|&i| rays[i].clone()).collect();
    let cone = Cone::from_generators(n, &gens).expect("lengths agree");
    let dim = cone.dim();
    if idx.len() <= dim {
        return vec![idx];
    }
    let apex = &rays[idx[0]];
    let mut out = Vec::new();
    for facet in cone.faces().iter().filter(|f| f.dim() + 1 == dim) {
        if facet.contains(apex).expect("same length") {
            continue;
        }
        let sub: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&i| facet.contains(&rays[i]).expect("same length"))
            .collect();
        for mut s in triangulate(rays, sub, n) {
            s.insert(0, idx[0]);
            out.push(s);
        }
    }
    out
}

/// Nonzero lattice points of `{R λ : 0 ≤ λ < 1}` for a square nonsingular `R`.
pub(crate) fn parallelepiped_points(r: &IntMatrix) -> Vec<Vector> {
    let k = r.rows();
    let s = snf(r);
    let uinv = crate::linalg::unimodular_inverse(&s.u);
    let factors: Vec<Int> = (0..k).map(|i| s.d.get(i, i).clone()).collect();
    let mut out = Vec::new();
    let mut t: Vec<Int> = vec![Int::from(0); k];
    loop {
        let x = uinv.mul_vec(&t);
        let lambda = linalg::solve_rational(r, &x).expect("nonsingular");
        let floors: Vector = lambda.iter().map(|q| q.numer().div_floor(q.denom())).collect();
        let p = linalg::sub(&x, &r.mul_vec(&floors));
        if !linalg::is_zero(&p) {
            out.push(p);
        }
        // odometer over ∏ [0, d_i)
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            t[i] += 1;
            if t[i] < factors[i] {
                break;
            }
            t[i] = Int::from(0);
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn cone(n: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<Vector> = gens.iter().map(|v| vector(v)).collect();
        Cone::from_generators(n, &g).unwrap()
    }

    /// Brute force: irreducible lattice points of the cone in a box.
    fn brute_force(c: &Cone, r: i64) -> Vec<Vector> {
        let n = c.ambient_rank();
        let pts: Vec<Vector> = linalg::box_points(n, r as u64)
            .filter(|p| c.contains_small(p) && p.iter().any(|&x| x != 0))
            .map(|p| linalg::from_small(&p))
            .collect();
        let mut out: Vec<Vector> = pts
            .iter()
            .filter(|h| {
                !pts.iter().any(|g| {
                    let d = linalg::sub(h, g);
                    g != *h && !linalg::is_zero(&d) && c.contains(&d).unwrap()
                })
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn classic_cone() {
        // cone((1,0),(1,3)): Hilbert basis (1,0),(1,1),(1,2),(1,3)
        let c = cone(2, &[&[1, 0], &[1, 3]]);
        let h = hilbert_basis(&c, c.span_lattice()).unwrap();
        assert_eq!(
            h,
            vec![vector(&[1, 0]), vector(&[1, 1]), vector(&[1, 2]), vector(&[1, 3])]
        );
        assert_eq!(h, brute_force(&c, 4));
    }

    #[test]
    fn matches_brute_force_in_three_dimensions() {
        let c = cone(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[0, 0, 1], &[2, 1, 3]]);
        assert_eq!(hilbert_basis(&c, c.span_lattice()).unwrap(), brute_force(&c, 4));
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(hilbert_basis(&c, c.span_lattice()).unwrap(), brute_force(&c, 3));
    }

    #[test]
    fn sublattice_and_lower_dimension() {
        // ray through (2,0) with lattice 2Z: generated by (2,0)
        let ray = cone(2, &[&[1, 0]]);
        let lat = Sublattice::span(2, &[vector(&[2, 0])]);
        assert_eq!(hilbert_basis(&ray, &lat).unwrap(), vec![vector(&[2, 0])]);
        // index-2 lattice in the quadrant
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let lat = Sublattice::span(2, &[vector(&[1, 1]), vector(&[2, 0])]);
        let h = hilbert_basis(&q, &lat).unwrap();
        assert_eq!(h, vec![vector(&[0, 2]), vector(&[1, 1]), vector(&[2, 0])]);
    }

    #[test]
    fn lineality_is_split_off() {
        let half = cone(2, &[&[1, 0], &[-1, 0], &[1, 2]]);
        let h = hilbert_basis(&half, half.span_lattice()).unwrap();
        assert_eq!(h.len(), 3);
        assert!(h.contains(&vector(&[1, 0])) && h.contains(&vector(&[-1, 0])));
        assert!(h.iter().any(|v| v[1] == Int::from(1)));
        assert!(hilbert_basis(&Cone::zero(2), &Sublattice::zero(2)).unwrap().is_empty());
    }

    #[test]
    fn triangulation_covers_square_cone() {
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        let t = triangulate(c.rays(), (0..4).collect(), 3);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3));
    }
}
