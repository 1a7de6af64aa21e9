use super::MonoidalComplex;
use crate::cones::{Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{lattice_index, LatticeIndex, Sublattice};
use crate::monoid::{AffineMonoid, Characteristic, StratifiedMonoid};

impl MonoidalComplex {
    /// Seminormalization, cone by cone; the strata of a face agree across
    /// the cones containing it, so the result is again compatible.
    pub fn sn_complex(&self, degree_bound: Option<u64>, radius: u64) -> Result<MonoidalComplex> {
        self.normalize_with(|s| s.seminormalization(), degree_bound, radius)
    }

    pub fn wn_complex(&self, p: Characteristic, degree_bound: Option<u64>, radius: u64) -> Result<MonoidalComplex> {
        self.normalize_with(|s| s.weak_normalization(p), degree_bound, radius)
    }

    fn normalize_with(
        &self,
        strata: impl Fn(&AffineMonoid) -> StratifiedMonoid,
        degree_bound: Option<u64>,
        radius: u64,
    ) -> Result<MonoidalComplex> {
        let monoids = self
            .monoids()
            .iter()
            .map(|s| strata(s).generators(degree_bound, radius).map(|m| m.minimize()))
            .collect::<Result<Vec<_>>>()?;
        MonoidalComplex::from_aligned(self.fan().clone(), monoids)
    }

    /// Seminormal iff every facet monoid is.
    pub fn is_seminormal_complex(&self, radius: u64) -> Result<bool> {
        for f in self.fan().facet_indices() {
            if !self.monoids()[f].is_seminormal(radius)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Weakly normal iff every facet monoid is.
    pub fn is_weakly_normal_complex(&self, p: Characteristic, radius: u64) -> Result<bool> {
        for f in self.fan().facet_indices() {
            if !self.monoids()[f].is_weakly_normal(p, radius)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index test relative to the facets: `p` divides no index
    /// `[gp(S_F) ∩ span σ : gp(S_σ)]` for `σ ≺ F`. Agrees with
    /// `is_weakly_normal_complex` when every `gp(S_F)` is saturated.
    pub fn facet_index_criterion(&self, p: Characteristic) -> bool {
        let fan = self.fan();
        fan.facet_indices().into_iter().all(|f| {
            fan.faces_of(f).into_iter().all(|s| {
                let sup = self.group(f).intersect(fan.cones()[s].span_lattice());
                match lattice_index(self.group(s), &sup).expect("face group inside facet group") {
                    LatticeIndex::Finite(k) => !p.divides(&k),
                    LatticeIndex::Infinite => false,
                }
            })
        })
    }

    /// The lattice family `(gp(S_σ))_σ`.
    pub fn classify(&self) -> Vec<(Cone, Sublattice)> {
        self.cones()
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), self.group(i).clone()))
            .collect()
    }

    /// Inverse of `classify` on seminormal complexes: cone by cone, the
    /// monoid `⊔_τ Λ_τ ∩ relint τ`.
    pub fn from_lattice_family(
        fan: &Fan,
        family: &[(Cone, Sublattice)],
        degree_bound: Option<u64>,
        radius: u64,
    ) -> Result<MonoidalComplex> {
        let mut lattices = Vec::with_capacity(fan.len());
        for c in fan.cones() {
            let Some((_, lat)) = family.iter().find(|(k, _)| k == c) else {
                return Err(bad(c, c, "no lattice given for this cone"));
            };
            match lattice_index(lat, c.span_lattice()) {
                Ok(LatticeIndex::Finite(_)) => {}
                Ok(LatticeIndex::Infinite) => return Err(bad(c, c, "infinite index in the span")),
                Err(_) => return Err(bad(c, c, "not contained in the span")),
            }
            lattices.push(lat.clone());
        }
        for (k, _) in family {
            fan.require(k)?;
        }
        for j in 0..fan.len() {
            for i in fan.faces_of(j) {
                if !lattices[i].is_subset_of(&lattices[j]) {
                    return Err(bad(&fan.cones()[i], &fan.cones()[j], "face lattice not contained in cone lattice"));
                }
            }
        }
        let mut monoids = Vec::with_capacity(fan.len());
        for (j, c) in fan.cones().iter().enumerate() {
            let strata: Vec<(Cone, Sublattice)> = fan
                .faces_of(j)
                .into_iter()
                .map(|i| (fan.cones()[i].clone(), lattices[i].clone()))
                .collect();
            let s = StratifiedMonoid::new(c.clone(), &strata)?;
            monoids.push(s.generators(degree_bound, radius)?.minimize());
        }
        MonoidalComplex::from_aligned(fan.clone(), monoids)
    }
}

fn bad(face: &Cone, cone: &Cone, reason: &str) -> Error {
    Error::BadLatticeFamily {
        face: face.to_string(),
        cone: cone.to_string(),
        reason: reason.to_string(),
    }
}
