use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, dot, hnf, kernel_basis, neg, IntMatrix, Int, Sublattice, Vector,
};

/// A rational polyhedral cone in `R^n` with both descriptions computed
/// exactly.
///
/// The cone is stored relative to its linear span `W`: facet normals live
/// in the dual of the saturated lattice `W ∩ Z^n` (coordinates in the
/// canonical basis of that lattice), which makes `(span, facets)` a
/// canonical form.
#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    span: Sublattice,
    lineality: Sublattice,
    rays: Vec<Vector>,
    facets: Vec<Vector>,
    inequalities: Vec<Vector>,
    equations: Vec<Vector>,
    faces: OnceLock<Vec<Cone>>,
    fast: OnceLock<Option<SmallCone>>,
}

/// Machine-integer copy of the H-description, used when every entry fits.
#[derive(Clone, Debug)]
struct SmallCone {
    equations: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
}

impl SmallCone {
    fn new(c: &Cone) -> Option<SmallCone> {
        let conv = |vs: &[Vector]| -> Option<Vec<Vec<i64>>> {
            vs.iter().map(|v| linalg::small_vector(v)).collect()
        };
        Some(SmallCone {
            equations: conv(&c.equations)?,
            inequalities: conv(&c.inequalities)?,
        })
    }

    fn eval(a: &[i64], v: &[i64]) -> i128 {
        a.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum()
    }

    fn in_span(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| Self::eval(e, v) == 0)
    }

    fn contains(&self, v: &[i64]) -> bool {
        self.in_span(v) && self.inequalities.iter().all(|a| Self::eval(a, v) >= 0)
    }

    fn relint_contains(&self, v: &[i64]) -> bool {
        self.in_span(v) && self.inequalities.iter().all(|a| Self::eval(a, v) > 0)
    }
}

impl Cone {
    /// Dual description of the cone generated by `gens` (which may be empty).
    pub fn from_generators(n: usize, gens: &[Vector]) -> Result<Cone> {
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let span = Sublattice::span(n, gens).saturate();
        let d = span.rank();
        let mut local: Vec<Vector> = gens
            .iter()
            .filter(|g| !linalg::is_zero(g))
            .map(|g| linalg::primitive(&span.coords(g).unwrap().expect("saturated span")))
            .collect();
        local.sort();
        local.dedup();

        let facets = facet_normals(d, &local);
        let lineality_local = if facets.is_empty() {
            Sublattice::full(d)
        } else {
            kernel_basis(&IntMatrix::from_rows(d, &facets))
        };
        let lineality = Sublattice::span(
            n,
            &lineality_local
                .basis_vectors()
                .iter()
                .map(|c| span.from_coords(c))
                .collect::<Vec<_>>(),
        );

        let inequalities = lift_covectors(&span, &facets);
        let equations = span.annihilator().basis_vectors();
        let rays = ray_representatives(&span, &lineality_local, &lineality, &facets, &local);

        Ok(Cone {
            ambient: n,
            span,
            lineality,
            rays,
            facets,
            inequalities,
            equations,
            faces: OnceLock::new(),
            fast: OnceLock::new(),
        })
    }

    pub fn zero(n: usize) -> Cone {
        Cone::from_generators(n, &[]).expect("zero cone")
    }

    /// The whole space `R^n` (a linear cone).
    pub fn whole_space(n: usize) -> Cone {
        let mut gens = IntMatrix::identity(n).col_vectors();
        gens.extend(IntMatrix::identity(n).col_vectors().iter().map(|v| neg(v)));
        Cone::from_generators(n, &gens).expect("whole space")
    }

    /// `{x : E x = 0, A x ≥ 0}` converted back to generators through the
    /// dual cone.
    pub fn from_inequalities(n: usize, equations: &[Vector], inequalities: &[Vector]) -> Result<Cone> {
        let mut dual_gens: Vec<Vector> = inequalities.to_vec();
        for e in equations {
            dual_gens.push(e.clone());
            dual_gens.push(neg(e));
        }
        let dual = Cone::from_generators(n, &dual_gens)?;
        let mut gens = dual.inequalities.clone();
        for e in &dual.equations {
            gens.push(e.clone());
            gens.push(neg(e));
        }
        Cone::from_generators(n, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Saturated lattice `Z^n ∩ span(cone)`.
    pub fn span_lattice(&self) -> &Sublattice {
        &self.span
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.rank()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.rank() == 0
    }

    /// The cone is a linear subspace.
    pub fn is_linear(&self) -> bool {
        self.facets.is_empty()
    }

    /// Canonical representatives of the extreme rays modulo lineality.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// Facet normals as ambient covectors; together with `equations` they
    /// cut out the cone.
    pub fn inequalities(&self) -> &[Vector] {
        &self.inequalities
    }

    /// Facet normals in coordinates of `span_lattice()`.
    pub fn local_facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    /// Lineality basis, its negatives, then the rays.
    pub fn generators(&self) -> Vec<Vector> {
        let mut g = self.lineality.basis_vectors();
        g.extend(self.lineality.basis_vectors().iter().map(|v| neg(v)));
        g.extend(self.rays.iter().cloned());
        g
    }

    fn check_len(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Local coordinates of `v` if it lies in the span.
    pub fn local_coords(&self, v: &[Int]) -> Result<Option<Vector>> {
        self.check_len(v)?;
        self.span.coords(v)
    }

    fn small(&self) -> Option<&SmallCone> {
        self.fast.get_or_init(|| SmallCone::new(self)).as_ref()
    }

    /// Membership for machine-integer points (box sweeps).
    pub fn contains_small(&self, v: &[i64]) -> bool {
        match self.small() {
            Some(s) => s.contains(v),
            None => self.contains(&linalg::from_small(v)).unwrap_or(false),
        }
    }

    pub fn relint_contains_small(&self, v: &[i64]) -> bool {
        match self.small() {
            Some(s) => s.relint_contains(v),
            None => self.relint_contains(&linalg::from_small(v)).unwrap_or(false),
        }
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        self.check_len(v)?;
        if let (Some(s), Some(x)) = (self.small(), linalg::small_vector(v)) {
            return Ok(s.contains(&x));
        }
        Ok(match self.local_coords(v)? {
            Some(c) => self.facets.iter().all(|a| !dot(a, &c).is_negative()),
            None => false,
        })
    }

    pub fn relint_contains(&self, v: &[Int]) -> Result<bool> {
        self.check_len(v)?;
        if let (Some(s), Some(x)) = (self.small(), linalg::small_vector(v)) {
            return Ok(s.relint_contains(&x));
        }
        Ok(match self.local_coords(v)? {
            Some(c) => self.facets.iter().all(|a| dot(a, &c).is_positive()),
            None => false,
        })
    }

    /// Sum of the generators; always a point of the relative interior.
    pub fn interior_point(&self) -> Vector {
        let mut s = linalg::zero_vector(self.ambient);
        for r in &self.rays {
            s = linalg::add(&s, r);
        }
        s
    }

    /// `Σ facets`, a functional vanishing on the lineality space and positive
    /// on the rest of the cone. Values only meaningful on the span.
    pub fn grading(&self) -> Vector {
        let mut s = linalg::zero_vector(self.ambient);
        for a in &self.inequalities {
            s = linalg::add(&s, a);
        }
        s
    }

    /// All faces, from the minimal face (the lineality space) up to the cone
    /// itself, in canonical order.
    pub fn faces(&self) -> &[Cone] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Cone> {
        let nrays = self.rays.len();
        let ray_local: Vec<Vector> = self
            .rays
            .iter()
            .map(|r| self.span.coords(r).unwrap().unwrap())
            .collect();
        let all: BTreeSet<usize> = (0..nrays).collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|a| (0..nrays).filter(|&i| dot(a, &ray_local[i]).is_zero()).collect())
            .collect();
        let mut frontier: Vec<BTreeSet<usize>> = vec![all];
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).cloned().collect();
                if sets.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let lin = self.lineality.basis_vectors();
        let mut faces: Vec<Cone> = sets
            .iter()
            .map(|s| {
                let mut g = lin.clone();
                g.extend(lin.iter().map(|v| neg(v)));
                g.extend(s.iter().map(|&i| self.rays[i].clone()));
                Cone::from_generators(self.ambient, &g).expect("face")
            })
            .collect();
        faces.sort();
        faces.dedup();
        faces
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient == other.ambient && other.faces().binary_search(self).is_ok()
    }

    /// The minimal face containing `v` (which must lie in the cone).
    pub fn face_containing(&self, v: &[Int]) -> Result<Option<Cone>> {
        for f in self.faces() {
            if f.relint_contains(v)? {
                return Ok(Some(f.clone()));
            }
        }
        Ok(None)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        Cone::from_inequalities(self.ambient, &eqs, &ineqs)
    }

    /// `s − t`: the cone generated by `s` and `−t`, for a face `t` of `s`.
    pub fn difference(&self, face: &Cone) -> Result<Cone> {
        if !face.is_face_of(self) {
            return Err(Error::NotAFace {
                face: face.to_string(),
                cone: self.to_string(),
            });
        }
        let mut g = self.generators();
        g.extend(face.generators().iter().map(|v| neg(v)));
        Cone::from_generators(self.ambient, &g)
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.generators()
            .iter()
            .all(|g| other.contains(g).unwrap_or(false))
    }
}

/// Facet normals of the full-dimensional cone in `Z^d` generated by `gens`
/// (primitive, deduplicated). Each facet is spanned by `d − 1` independent
/// generators, so enumerating those subsets finds all of them.
fn facet_normals(d: usize, gens: &[Vector]) -> Vec<Vector> {
    if d == 0 {
        return Vec::new();
    }
    let mut out: BTreeSet<Vector> = BTreeSet::new();
    let k = d - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    if k > gens.len() {
        return Vec::new();
    }
    loop {
        let rows: Vec<Vector> = idx.iter().map(|&i| gens[i].clone()).collect();
        let m = IntMatrix::from_rows(d, &rows);
        if m.rank() == k {
            let ker = kernel_basis(&m);
            let a = ker.basis_vectors().pop().expect("rank-one kernel");
            let (mut pos, mut negs) = (false, false);
            for g in gens {
                let s = dot(&a, g);
                pos |= s.is_positive();
                negs |= s.is_negative();
            }
            match (pos, negs) {
                (true, false) => {
                    out.insert(a);
                }
                (false, true) => {
                    out.insert(neg(&a));
                }
                _ => {}
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if idx[i] < gens.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out.into_iter().collect();
        }
    }
}

/// Ambient covectors `x` with `Bᵀ x = a` for the canonical span basis `B`.
fn lift_covectors(span: &Sublattice, covectors: &[Vector]) -> Vec<Vector> {
    if covectors.is_empty() {
        return Vec::new();
    }
    let d = span.rank();
    // Bᵀ U = [I | 0] because Bᵀ is onto Z^d (span saturated)
    let f = hnf(&span.basis().transpose());
    let lift = f.u.select_cols(&(0..d).collect::<Vec<_>>());
    debug_assert!((0..d).all(|i| f.h.get(i, i).is_one()));
    covectors.iter().map(|a| lift.mul_vec(a)).collect()
}

fn ray_representatives(
    span: &Sublattice,
    lineality_local: &Sublattice,
    lineality: &Sublattice,
    facets: &[Vector],
    gens: &[Vector],
) -> Vec<Vector> {
    let d = span.rank();
    let l = lineality_local.rank();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut rays = Vec::new();
    for g in gens {
        let tight: Vec<usize> = (0..facets.len())
            .filter(|&i| dot(&facets[i], g).is_zero())
            .collect();
        if tight.len() == facets.len() {
            continue; // in the lineality space
        }
        let t_rows: Vec<Vector> = tight.iter().map(|&i| facets[i].clone()).collect();
        let t = IntMatrix::from_rows(d, &t_rows);
        if d - t.rank() != l + 1 || !seen.insert(tight) {
            continue;
        }
        let face = kernel_basis(&t);
        let lin_in_face = face
            .sublattice_in_coords(lineality_local)
            .expect("lineality lies in every face");
        let mut phi = if l == 0 {
            // the face lattice has rank 1; its coordinate functional is the identity
            vec![Int::one()]
        } else {
            lin_in_face.annihilator().basis_vectors().pop().expect("rank-one quotient")
        };
        let gc = face.coords(g).unwrap().expect("generator lies on its face");
        if dot(&phi, &gc).is_negative() {
            phi = neg(&phi);
        }
        let w = {
            let f = hnf(&IntMatrix::from_rows(phi.len(), &[phi.clone()]));
            f.u.col(0)
        };
        let local = face.from_coords(&w);
        let ambient = span.from_coords(&local);
        rays.push(reduce_mod(lineality, &ambient));
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Canonical representative of `v + lattice` using the HNF pivots.
pub(crate) fn reduce_mod(lattice: &Sublattice, v: &[Int]) -> Vector {
    use num_integer::Integer;
    let mut v = v.to_vec();
    let b = lattice.basis();
    for k in 0..b.cols() {
        let p = (0..b.rows()).find(|&i| !b.get(i, k).is_zero()).expect("nonzero column");
        let q = v[p].div_floor(b.get(p, k));
        if !q.is_zero() {
            for i in 0..v.len() {
                v[i] -= &q * b.get(i, k);
            }
        }
    }
    v
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.span == other.span && self.facets == other.facets
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.span.hash(state);
        self.facets.hash(state);
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), self.lineality_dim(), &self.rays, &self.lineality, &self.span, &self.facets).cmp(&(
            other.dim(),
            other.lineality_dim(),
            &other.rays,
            &other.lineality,
            &other.span,
            &other.facets,
        ))
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| linalg::fmt_vector(g)).collect();
        write!(f, "cone[{}]", gens.join(","))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
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

    fn quadrant() -> Cone {
        cone(2, &[&[1, 0], &[0, 1]])
    }

    #[test]
    fn quadrant_dual_description() {
        let q = quadrant();
        assert_eq!(q.dim(), 2);
        let mut ineq = q.inequalities().to_vec();
        ineq.sort();
        assert_eq!(ineq, vec![vector(&[0, 1]), vector(&[1, 0])]);
        assert!(q.is_pointed());
    }

    #[test]
    fn zero_cone() {
        let z = cone(2, &[]);
        assert_eq!(z.dim(), 0);
        assert!(z.relint_contains(&vector(&[0, 0])).unwrap());
        assert_eq!(z.faces().len(), 1);
    }

    #[test]
    fn half_plane_has_line_lineality() {
        let h = cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(h.lineality(), &Sublattice::span(2, &[vector(&[1, 0])]));
        assert_eq!(h.inequalities(), &[vector(&[0, 1])]);
        let faces = h.faces();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0], cone(2, &[&[1, 0], &[-1, 0]]));
        assert_eq!(faces[1], h);
    }

    #[test]
    fn quadrant_faces() {
        let q = quadrant();
        let f = q.faces();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0], cone(2, &[]));
        assert!(f.contains(&cone(2, &[&[1, 0]])));
        assert!(f.contains(&cone(2, &[&[0, 1]])));
        assert_eq!(f[3], q);
    }

    #[test]
    fn relint_examples() {
        let q = quadrant();
        assert!(q.relint_contains(&vector(&[1, 1])).unwrap());
        assert!(!q.relint_contains(&vector(&[1, 0])).unwrap());
        assert!(matches!(
            q.relint_contains(&vector(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn face_relation() {
        let q = quadrant();
        let x = cone(2, &[&[1, 0]]);
        let y = cone(2, &[&[0, 1]]);
        assert!(x.is_face_of(&q));
        assert!(!x.is_face_of(&y));
        assert!(q.is_face_of(&q));
    }

    #[test]
    fn intersections() {
        let q = quadrant();
        let left = cone(2, &[&[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(q.intersect(&left).unwrap(), cone(2, &[&[0, 1]]));
        assert_eq!(q.intersect(&q).unwrap(), q);
        assert_eq!(q.intersect(&cone(2, &[])).unwrap(), cone(2, &[]));
    }

    #[test]
    fn differences() {
        let q = quadrant();
        let x = cone(2, &[&[1, 0]]);
        assert_eq!(q.difference(&x).unwrap(), cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]));
        assert_eq!(q.difference(&cone(2, &[])).unwrap(), q);
        assert_eq!(q.difference(&q).unwrap(), Cone::whole_space(2));
        let y = cone(2, &[&[0, 1]]);
        assert!(matches!(x.difference(&y), Err(Error::NotAFace { .. })));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(2, &[&[1, 0], &[1, 1], &[0, 1], &[2, 1]]);
        assert_eq!(c, quadrant());
        assert_eq!(c.rays(), quadrant().rays());
    }

    #[test]
    fn non_saturated_span() {
        // cone generated by (2,2) is the ray through (1,1)
        let c = cone(2, &[&[2, 2]]);
        assert_eq!(c.rays(), &[vector(&[1, 1])]);
        assert!(c.contains(&vector(&[3, 3])).unwrap());
        assert!(!c.contains(&vector(&[1, 2])).unwrap());
    }

    #[test]
    fn three_dimensional_non_simplicial() {
        // cone over a square
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(c.inequalities().len(), 4);
        assert_eq!(c.rays().len(), 4);
        // faces: 0, 4 rays, 4 facets, the cone
        assert_eq!(c.faces().len(), 10);
        assert!(c.relint_contains(&vector(&[0, 0, 1])).unwrap());
    }
}
