use std::collections::BTreeSet;

use super::Cone;
use crate::error::{Error, Result};

/// A finite fan: closed under faces, any two cones meet in a common face.
/// Cones are kept in canonical order, so the minimal cone comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
    /// `face_of[i][j]`: cone `i` is a face of cone `j`.
    face_of: Vec<Vec<bool>>,
}

impl Fan {
    /// Checks the fan axioms without adding anything: missing faces and bad
    /// intersections are reported, not repaired.
    pub fn validate(n: usize, cones: &[Cone]) -> Result<Fan> {
        if cones.is_empty() {
            return Err(Error::EmptyFan);
        }
        for c in cones {
            if c.ambient_rank() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.ambient_rank(),
                });
            }
        }
        let mut sorted = cones.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateCone(w[0].to_string()));
            }
        }
        for c in &sorted {
            for f in c.faces() {
                if sorted.binary_search(f).is_err() {
                    return Err(Error::MissingFace {
                        cone: c.to_string(),
                        face: f.to_string(),
                    });
                }
            }
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let (a, b) = (&sorted[i], &sorted[j]);
                let meet = a.intersect(b)?;
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    return Err(Error::BadIntersection {
                        first: a.to_string(),
                        second: b.to_string(),
                        meet: meet.to_string(),
                        witness: meet.interior_point(),
                    });
                }
            }
        }
        let face_of = sorted
            .iter()
            .map(|t| sorted.iter().map(|s| t.is_face_of(s)).collect())
            .collect();
        Ok(Fan {
            ambient: n,
            cones: sorted,
            face_of,
        })
    }

    /// Adds every face of the given cones, then validates.
    pub fn face_closure(n: usize, cones: &[Cone]) -> Result<Fan> {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            for f in c.faces() {
                all.insert(f.clone());
            }
        }
        let v: Vec<Cone> = all.into_iter().collect();
        Fan::validate(n, &v)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn require(&self, c: &Cone) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::ConeNotInFan(c.to_string()))
    }

    pub fn is_face(&self, face: usize, cone: usize) -> bool {
        self.face_of[face][cone]
    }

    /// Indices of the faces of cone `j` (including `j`).
    pub fn faces_of(&self, j: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.face_of[i][j]).collect()
    }

    /// Indices of cones having `i` as a face.
    pub fn star_of(&self, i: usize) -> Vec<usize> {
        (0..self.cones.len()).filter(|&j| self.face_of[i][j]).collect()
    }

    /// Inclusion-maximal cones.
    pub fn facet_indices(&self) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| (0..self.cones.len()).all(|j| j == i || !self.face_of[i][j]))
            .collect()
    }

    pub fn facets(&self) -> Vec<Cone> {
        self.facet_indices()
            .into_iter()
            .map(|i| self.cones[i].clone())
            .collect()
    }

    /// Intersection of all cones; a member of the fan.
    pub fn minimal_cone_index(&self) -> usize {
        let mut meet = self.cones[0].clone();
        for c in &self.cones[1..] {
            meet = meet.intersect(c).expect("same ambient rank");
        }
        self.index_of(&meet)
            .expect("the intersection of all cones of a fan is a cone of the fan")
    }

    pub fn minimal_cone(&self) -> Cone {
        self.cones[self.minimal_cone_index()].clone()
    }

    /// The fan `{σ − t : t ≺ σ}` describing a neighbourhood of the orbit of `t`.
    pub fn star_fan(&self, t: &Cone) -> Result<Fan> {
        let ti = self.require(t)?;
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for j in self.star_of(ti) {
            out.insert(self.cones[j].difference(t)?);
        }
        Fan::validate(self.ambient, &out.into_iter().collect::<Vec<_>>())
    }

    /// Index map from the cones of `sub` into `self`; fails unless `sub` is a
    /// fan whose cones all belong to `self`.
    pub fn embed_subfan(&self, sub: &Fan) -> Result<Vec<usize>> {
        sub.cones
            .iter()
            .map(|c| {
                self.index_of(c)
                    .ok_or_else(|| Error::NotASubfan(format!("{c} is not a cone of the fan")))
            })
            .collect()
    }

    /// The subfan generated by the given cones (closure under faces).
    pub fn subfan_closure(&self, idx: &[usize]) -> Fan {
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for &j in idx {
            keep.extend(self.faces_of(j));
        }
        let cones: Vec<Cone> = keep.iter().map(|&i| self.cones[i].clone()).collect();
        Fan::validate(self.ambient, &cones).expect("closed subfamily of a fan is a fan")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vector, Vector};

    fn cone(n: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<Vector> = gens.iter().map(|v| vector(v)).collect();
        Cone::from_generators(n, &g).unwrap()
    }

    fn quadrant_fan() -> Fan {
        Fan::validate(
            2,
            &[
                cone(2, &[]),
                cone(2, &[&[1, 0]]),
                cone(2, &[&[0, 1]]),
                cone(2, &[&[1, 0], &[0, 1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn valid_quadrant_fan() {
        let f = quadrant_fan();
        assert_eq!(f.len(), 4);
        assert_eq!(f.facets(), vec![cone(2, &[&[1, 0], &[0, 1]])]);
        assert_eq!(f.minimal_cone(), cone(2, &[]));
    }

    #[test]
    fn overlapping_cones_rejected() {
        let a = cone(2, &[&[1, 0], &[0, 1]]);
        let b = cone(2, &[&[1, 0], &[1, 2]]);
        let err = Fan::face_closure(2, &[a, b]).unwrap_err();
        match err {
            Error::BadIntersection { witness, .. } => {
                // witness lies in both cones
                assert!(cone(2, &[&[1, 0], &[0, 1]]).contains(&witness).unwrap());
                assert!(cone(2, &[&[1, 0], &[1, 2]]).contains(&witness).unwrap());
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn missing_faces_reported() {
        let err = Fan::validate(2, &[cone(2, &[&[1, 0], &[0, 1]])]).unwrap_err();
        assert!(matches!(err, Error::MissingFace { .. }));
    }

    #[test]
    fn opposite_rays() {
        let f = Fan::face_closure(1, &[cone(1, &[&[1]]), cone(1, &[&[-1]])]).unwrap();
        assert_eq!(f.facets().len(), 2);
        assert_eq!(f.minimal_cone(), cone(1, &[]));
    }

    #[test]
    fn star_fan_of_ray() {
        let f = quadrant_fan();
        let s = f.star_fan(&cone(2, &[&[1, 0]])).unwrap();
        assert_eq!(
            s.cones(),
            &[cone(2, &[&[1, 0], &[-1, 0]]), cone(2, &[&[1, 0], &[-1, 0], &[0, 1]])]
        );
        assert!(matches!(
            f.star_fan(&cone(2, &[&[1, 1]])),
            Err(Error::ConeNotInFan(_))
        ));
    }
}
