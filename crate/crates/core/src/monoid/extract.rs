//! Degree-bounded generator extraction for subsets of a cone that are
//! closed under addition and invariant under a lattice of lineality
//! translations.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::affine::MembershipOracle;
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, snf, unimodular_inverse, IntMatrix, Int, Sublattice, Vector};

/// Default radius of the verification box.
pub const DEFAULT_BOX_RADIUS: u64 = 8;

/// A monoid known only through a membership predicate.
pub(crate) struct Realized<'a> {
    pub cone: &'a Cone,
    /// The elements of the set lying in the lineality space (a group).
    pub lineality_group: Sublattice,
    pub contains: &'a (dyn Fn(&[Int]) -> Result<bool> + Sync),
}

/// Greedily collects elements of degree at most `degree_bound` not already
/// generated, then checks that every member in the box `[-radius, radius]^n`
/// is generated.
pub(crate) fn extract_generators(set: &Realized<'_>, degree_bound: u64, radius: u64) -> Result<Vec<Vector>> {
    let cone = set.cone;
    let n = cone.ambient_rank();
    let grading = cone.grading();
    let mut gens: Vec<Vector> = Vec::new();
    for b in set.lineality_group.basis_vectors() {
        gens.push(linalg::neg(&b));
        gens.push(b);
    }
    let mut candidates = Vec::new();
    for x in candidate_points(cone, &set.lineality_group, degree_bound)? {
        if (set.contains)(&x)? {
            candidates.push((dot(&grading, &x), x));
        }
    }
    candidates.sort();
    let mut oracle = MembershipOracle::new(n, &gens)?;
    for (_, x) in candidates {
        if !oracle.contains(&x)? {
            gens.push(x);
            oracle = MembershipOracle::new(n, &gens)?;
        }
    }
    for p in linalg::box_points(n, radius) {
        if !cone.contains_small(&p) {
            continue;
        }
        let m = linalg::from_small(&p);
        if (set.contains)(&m)? && !oracle.contains(&m)? {
            return Err(Error::GeneratorExtractionIncomplete {
                degree_bound,
                witness: m,
            });
        }
    }
    Ok(gens)
}

/// Representatives modulo `group` of the lattice points of `cone` with
/// grading in `(0, bound]`.
fn candidate_points(cone: &Cone, group: &Sublattice, bound: u64) -> Result<Vec<Vector>> {
    let span = cone.span_lattice();
    let d = span.rank();
    let lin_local = span.sublattice_in_coords(cone.lineality())?;
    let l = lin_local.rank();
    let k = d - l;
    let w = lin_local.unimodular_completion();
    let winv = unimodular_inverse(&w);
    // grading in the adapted coordinates y = W^{-1} (local coords)
    let grading_local = span.basis().transpose().mul_vec(&cone.grading());
    let grading_y = w.transpose().mul_vec(&grading_local);
    let proj_grading = grading_y[l..].to_vec();

    let projections: Vec<Vector> = cone
        .rays()
        .iter()
        .map(|r| winv.mul_vec(&span.coords(r).unwrap().expect("ray in span"))[l..].to_vec())
        .collect();
    let pointed = Cone::from_generators(k, &projections)?;
    let bound = Int::from(bound);
    let mut radii = vec![Int::zero(); k];
    for p in &projections {
        let deg = dot(&proj_grading, p);
        for j in 0..k {
            let r = (&bound * p[j].abs()).div_ceil(&deg);
            if r > radii[j] {
                radii[j] = r;
            }
        }
    }

    let reps = coset_representatives(&group_in_adapted(group, span, &winv, l)?);
    let mut out = Vec::new();
    let mut y: Vector = radii.iter().map(|r| -r).collect();
    if k == 0 {
        return Ok(out);
    }
    loop {
        let deg = dot(&proj_grading, &y);
        if deg.is_positive() && deg <= bound && pointed.contains(&y)? {
            for rep in &reps {
                let mut full = rep.clone();
                full.extend(y.iter().cloned());
                out.push(span.from_coords(&w.mul_vec(&full)));
            }
        }
        let mut j = 0;
        loop {
            if j == k {
                return Ok(out);
            }
            if y[j] < radii[j] {
                y[j] += 1;
                break;
            }
            y[j] = -radii[j].clone();
            j += 1;
        }
    }
}

/// The group in the first `l` adapted coordinates.
fn group_in_adapted(group: &Sublattice, span: &Sublattice, winv: &IntMatrix, l: usize) -> Result<Sublattice> {
    let cols: Vec<Vector> = group
        .basis_vectors()
        .iter()
        .map(|v| {
            let c = span.coords(v)?.ok_or_else(|| Error::NotASublattice { witness: v.clone() })?;
            Ok(winv.mul_vec(&c)[..l].to_vec())
        })
        .collect::<Result<_>>()?;
    let g = Sublattice::span(l, &cols);
    if g.rank() != l {
        return Err(Error::Postcondition(
            "lineality group has infinite index in the lineality lattice".into(),
        ));
    }
    Ok(g)
}

/// One representative per coset of a full-rank sublattice of `Z^l`.
fn coset_representatives(g: &Sublattice) -> Vec<Vector> {
    let l = g.ambient_rank();
    if l == 0 {
        return vec![Vec::new()];
    }
    let s = snf(g.basis());
    let uinv = unimodular_inverse(&s.u);
    let factors: Vec<Int> = (0..l).map(|i| s.d.get(i, i).clone()).collect();
    let mut out = Vec::new();
    let mut t = vec![Int::zero(); l];
    loop {
        out.push(uinv.mul_vec(&t));
        let mut i = 0;
        loop {
            if i == l {
                return out;
            }
            t[i] += 1;
            if t[i] < factors[i] {
                break;
            }
            t[i] = Int::zero();
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn cosets_of_index_six() {
        let g = Sublattice::span(2, &[vector(&[2, 0]), vector(&[0, 3])]);
        let reps = coset_representatives(&g);
        assert_eq!(reps.len(), 6);
        for i in 0..reps.len() {
            for j in 0..i {
                assert!(!g.contains(&linalg::sub(&reps[i], &reps[j])).unwrap());
            }
        }
    }

    #[test]
    fn extracts_multiples_of_three() {
        let ray = Cone::from_generators(1, &[vector(&[1])]).unwrap();
        let pred = |m: &[Int]| -> Result<bool> { Ok((&m[0] % Int::from(3)).is_zero()) };
        let set = Realized {
            cone: &ray,
            lineality_group: Sublattice::zero(1),
            contains: &pred,
        };
        assert_eq!(extract_generators(&set, 6, 8).unwrap(), vec![vector(&[3])]);
        // too small a degree bound is caught by the box check
        let err = extract_generators(&set, 2, 8).unwrap_err();
        assert!(matches!(err, Error::GeneratorExtractionIncomplete { .. }));
    }

    #[test]
    fn half_plane_with_lineality_group() {
        // 2Z × 0 ∪ {(a, b) : b > 0}: generated by ±(2,0), (0,1), (1,1)
        let half = Cone::from_generators(2, &[vector(&[1, 0]), vector(&[-1, 0]), vector(&[0, 1])]).unwrap();
        let pred = |m: &[Int]| -> Result<bool> {
            Ok(m[1].is_positive() || (m[1].is_zero() && m[0].is_even()))
        };
        let set = Realized {
            cone: &half,
            lineality_group: Sublattice::span(2, &[vector(&[2, 0])]),
            contains: &pred,
        };
        let g = extract_generators(&set, 2, 6).unwrap();
        assert_eq!(g.len(), 4);
    }
}
