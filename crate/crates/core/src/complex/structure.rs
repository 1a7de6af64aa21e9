use std::collections::BTreeSet;
use std::fmt;

use crate::cones::{Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Sublattice, Vector};
use crate::monoid::{hilbert_basis, AffineMonoid};

/// A fan together with a compatible family of monoids, one per cone.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidalComplex {
    fan: Fan,
    /// Aligned with `fan.cones()`.
    monoids: Vec<AffineMonoid>,
    groups: Vec<Sublattice>,
}

impl MonoidalComplex {
    /// Checks that each monoid generates its cone and that restricting a
    /// cone's monoid to a face gives the face's monoid.
    pub fn validate(fan: Fan, family: &[(Cone, AffineMonoid)]) -> Result<Self> {
        let mut monoids = Vec::with_capacity(fan.len());
        for c in fan.cones() {
            let mut hits = family.iter().filter(|(k, _)| k == c);
            let Some((_, s)) = hits.next() else {
                return Err(Error::GenerationFailure {
                    cone: c.to_string(),
                    generated: "no monoid given".into(),
                });
            };
            if hits.next().is_some() {
                return Err(Error::DuplicateCone(c.to_string()));
            }
            monoids.push(s.clone());
        }
        for (k, _) in family {
            fan.require(k)?;
        }
        Self::from_aligned(fan, monoids)
    }

    pub(crate) fn from_aligned(fan: Fan, monoids: Vec<AffineMonoid>) -> Result<Self> {
        let n = fan.ambient_rank();
        for (c, s) in fan.cones().iter().zip(&monoids) {
            if s.ambient_rank() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.ambient_rank(),
                });
            }
            let generated = s.cone();
            if generated != *c {
                return Err(Error::GenerationFailure {
                    cone: c.to_string(),
                    generated: generated.to_string(),
                });
            }
        }
        for j in 0..fan.len() {
            for i in fan.faces_of(j) {
                if i == j {
                    continue;
                }
                let face = &fan.cones()[i];
                let restricted = monoids[j].face_restriction(face)?;
                let missing = restricted
                    .generators()
                    .iter()
                    .find(|g| !monoids[i].contains(g).unwrap_or(false))
                    .or_else(|| {
                        monoids[i]
                            .generators()
                            .iter()
                            .find(|g| !restricted.contains(g).unwrap_or(false))
                    });
                if let Some(w) = missing {
                    return Err(Error::CompatibilityFailure {
                        face: face.to_string(),
                        cone: fan.cones()[j].to_string(),
                        witness: w.clone(),
                    });
                }
            }
        }
        let groups = monoids.iter().map(|s| s.gp()).collect();
        Ok(MonoidalComplex { fan, monoids, groups })
    }

    /// Every cone gets its saturated monoid `M ∩ σ`.
    pub fn full(fan: &Fan) -> Self {
        let monoids = fan
            .cones()
            .iter()
            .map(|c| {
                let h = hilbert_basis(c, c.span_lattice()).expect("saturated span");
                AffineMonoid::new(fan.ambient_rank(), &h).expect("lengths agree")
            })
            .collect();
        Self::from_aligned(fan.clone(), monoids).expect("saturated family is compatible")
    }

    /// `S ∩ σ` over a subfan of the face fan of the cone of `S`.
    pub fn from_monoid_subfan(s: &AffineMonoid, subfan: &Fan) -> Result<Self> {
        let cone = s.cone();
        let mut monoids = Vec::new();
        for c in subfan.cones() {
            if !c.is_face_of(&cone) {
                return Err(Error::NotASubfan(format!("{c} is not a face of {cone}")));
            }
            monoids.push(s.face_restriction(c)?);
        }
        Self::from_aligned(subfan.clone(), monoids)
    }

    pub fn ambient_rank(&self) -> usize {
        self.fan.ambient_rank()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn cones(&self) -> &[Cone] {
        self.fan.cones()
    }

    pub fn monoids(&self) -> &[AffineMonoid] {
        &self.monoids
    }

    pub fn monoid(&self, c: &Cone) -> Result<&AffineMonoid> {
        Ok(&self.monoids[self.fan.require(c)?])
    }

    /// `gp(S_σ)` for the cone with the given index.
    pub fn group(&self, i: usize) -> &Sublattice {
        &self.groups[i]
    }

    /// `(cone, monoid)` pairs in canonical order.
    pub fn family(&self) -> Vec<(Cone, AffineMonoid)> {
        self.fan.cones().iter().cloned().zip(self.monoids.iter().cloned()).collect()
    }

    /// Index of the cone containing `m` in its relative interior, provided
    /// `m` lies in that cone's monoid.
    pub fn locate(&self, m: &[Int]) -> Result<Option<usize>> {
        if m.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank(),
                got: m.len(),
            });
        }
        for (i, c) in self.fan.cones().iter().enumerate() {
            if c.relint_contains(m)? {
                return Ok(if self.monoids[i].contains(m)? { Some(i) } else { None });
            }
        }
        Ok(None)
    }

    /// Machine-integer variant of `locate` for box sweeps.
    pub fn locate_small(&self, m: &[i64]) -> Option<usize> {
        let i = (0..self.fan.len()).find(|&i| self.fan.cones()[i].relint_contains_small(m))?;
        self.monoids[i]
            .contains(&linalg::from_small(m))
            .expect("same length")
            .then_some(i)
    }

    /// The cone `σ_m`, or `None` outside the support.
    pub fn support_locate(&self, m: &[Int]) -> Result<Option<&Cone>> {
        Ok(self.locate(m)?.map(|i| &self.fan.cones()[i]))
    }

    /// Whether some cone of the fan has both cones as faces.
    pub fn joinable(&self, i: usize, j: usize) -> bool {
        (0..self.fan.len()).any(|k| self.fan.is_face(i, k) && self.fan.is_face(j, k))
    }

    /// Restriction of the family to a subfan.
    pub fn subcomplex(&self, subfan: &Fan) -> Result<MonoidalComplex> {
        let idx = self.fan.embed_subfan(subfan)?;
        let monoids = idx.iter().map(|&i| self.monoids[i].clone()).collect();
        Ok(MonoidalComplex {
            fan: subfan.clone(),
            monoids,
            groups: idx.iter().map(|&i| self.groups[i].clone()).collect(),
        })
    }

    /// One subcomplex per facet (irreducible components).
    pub fn components(&self) -> Vec<MonoidalComplex> {
        self.fan
            .facet_indices()
            .into_iter()
            .map(|f| {
                self.subcomplex(&self.fan.subfan_closure(&[f]))
                    .expect("closure is a subfan")
            })
            .collect()
    }

    pub fn orbits(&self) -> OrbitTable {
        let facets: BTreeSet<usize> = self.fan.facet_indices().into_iter().collect();
        let closed = self.fan.minimal_cone_index();
        OrbitTable {
            rows: (0..self.fan.len())
                .map(|i| OrbitRow {
                    cone: self.fan.cones()[i].clone(),
                    lattice: self.groups[i].clone(),
                    is_facet: facets.contains(&i),
                    is_closed: i == closed,
                })
                .collect(),
        }
    }

    /// The complex describing a neighbourhood of the orbit of `t`: cones
    /// `σ − t` for `t ≺ σ`, monoids generated by `S_σ` and `−S_t`.
    pub fn germ_at(&self, t: &Cone) -> Result<MonoidalComplex> {
        let ti = self.fan.require(t)?;
        let n = self.ambient_rank();
        let minus_t: Vec<Vector> = self.monoids[ti].generators().iter().map(|g| linalg::neg(g)).collect();
        let mut family = Vec::new();
        for j in self.fan.star_of(ti) {
            let cone = self.fan.cones()[j].difference(t)?;
            let mut gens = self.monoids[j].generators().to_vec();
            gens.extend(minus_t.iter().cloned());
            family.push((cone, AffineMonoid::new(n, &gens)?));
        }
        let fan = self.fan.star_fan(t)?;
        MonoidalComplex::validate(fan, &family)
    }

    /// Members of `S_σ` in the box, cone by cone. Only facets are searched;
    /// a face inherits `S_F ∩ τ` from any facet `F` containing it.
    pub fn box_sets(&self, radius: u64) -> Vec<BTreeSet<Vec<i64>>> {
        let n = self.ambient_rank();
        let facets = self.fan.facet_indices();
        let facet_sets: Vec<BTreeSet<Vec<i64>>> = facets
            .iter()
            .map(|&f| {
                let (c, s) = (&self.fan.cones()[f], &self.monoids[f]);
                linalg::box_points(n, radius)
                    .filter(|p| c.contains_small(p))
                    .filter(|p| s.contains(&linalg::from_small(p)).expect("same length"))
                    .collect()
            })
            .collect();
        (0..self.fan.len())
            .map(|i| {
                let k = facets
                    .iter()
                    .position(|&f| self.fan.is_face(i, f))
                    .expect("every cone lies in a facet");
                let c = &self.fan.cones()[i];
                facet_sets[k].iter().filter(|p| c.contains_small(p)).cloned().collect()
            })
            .collect()
    }
}

impl fmt::Debug for MonoidalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (c, s) in self.fan.cones().iter().zip(&self.monoids) {
            m.entry(&c.to_string(), &s.to_string());
        }
        m.finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub cone: Cone,
    /// Character lattice of the orbit torus, `gp(S_σ)`.
    pub lattice: Sublattice,
    pub is_facet: bool,
    pub is_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub rows: Vec<OrbitRow>,
}
