use super::affine::{AffineMonoid, Characteristic};
use super::extract::{extract_generators, Realized};
use super::hilbert::hilbert_basis;
use super::strata::StratifiedMonoid;
use crate::error::{Error, Result};
use crate::linalg::{dot, Int, Sublattice};

/// Elements of an extension `S ⊆ S'` lying in the face-wise lattices of a
/// stratification of `S`: `⊔_τ S' ∩ Λ_τ ∩ relint τ`.
#[derive(Clone, Debug)]
pub struct RelativeNormalization {
    strata: StratifiedMonoid,
    over: AffineMonoid,
}

impl RelativeNormalization {
    fn new(base: &AffineMonoid, over: &AffineMonoid, strata: StratifiedMonoid) -> Result<Self> {
        check_extension(base, over)?;
        Ok(RelativeNormalization {
            strata,
            over: over.clone(),
        })
    }

    pub fn strata(&self) -> &StratifiedMonoid {
        &self.strata
    }

    pub fn extension(&self) -> &AffineMonoid {
        &self.over
    }

    pub fn contains(&self, m: &[Int]) -> Result<bool> {
        Ok(self.strata.contains(m)? && self.over.contains(m)?)
    }

    /// `Λ_τ ∩ gp(S' ∩ τ)` for each face.
    fn effective_lattices(&self) -> Vec<(crate::cones::Cone, Sublattice)> {
        self.strata
            .strata()
            .map(|(f, lat)| {
                let over = self.over.face_restriction(f).expect("same cone").gp();
                (f.clone(), lat.intersect(&over))
            })
            .collect()
    }

    pub fn default_degree_bound(&self) -> u64 {
        let cone = self.strata.cone();
        let grading = cone.grading();
        let mut top = Int::from(1);
        for (f, lat) in self.effective_lattices() {
            for h in hilbert_basis(&f, &lat).expect("finite index") {
                top = top.max(dot(&grading, &h));
            }
        }
        for g in self.over.generators() {
            top = top.max(dot(&grading, g));
        }
        u64::try_from(2 * top).unwrap_or(u64::MAX)
    }

    pub fn generators(&self, degree_bound: Option<u64>, radius: u64) -> Result<AffineMonoid> {
        let bound = degree_bound.unwrap_or_else(|| self.default_degree_bound());
        let lineality_group = self.effective_lattices().swap_remove(0).1;
        let pred = |m: &[Int]| self.contains(m);
        let set = Realized {
            cone: self.strata.cone(),
            lineality_group,
            contains: &pred,
        };
        AffineMonoid::new(self.over.ambient_rank(), &extract_generators(&set, bound, radius)?)
    }
}

/// `S ⊆ S'` generator-wise, and every generator of `S'` has a positive
/// multiple in `S` (equivalently lies in the cone of `S`).
fn check_extension(base: &AffineMonoid, over: &AffineMonoid) -> Result<()> {
    if base.ambient_rank() != over.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: base.ambient_rank(),
            got: over.ambient_rank(),
        });
    }
    for g in base.generators() {
        if !over.contains(g)? {
            return Err(Error::NotAnExtension { witness: g.clone() });
        }
    }
    let cone = base.cone();
    for g in over.generators() {
        if !cone.contains(g)? {
            return Err(Error::NotFiniteExtension { witness: g.clone() });
        }
    }
    Ok(())
}

/// Seminormalization of `S` inside the finite extension `S'`.
pub fn relative_sn(base: &AffineMonoid, over: &AffineMonoid) -> Result<RelativeNormalization> {
    RelativeNormalization::new(base, over, base.seminormalization())
}

/// Weak normalization of `S` inside the finite extension `S'`.
pub fn relative_wn(base: &AffineMonoid, over: &AffineMonoid, p: Characteristic) -> Result<RelativeNormalization> {
    RelativeNormalization::new(base, over, base.weak_normalization(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vector, Vector};

    fn numeric(gens: &[i64]) -> AffineMonoid {
        let g: Vec<Vector> = gens.iter().map(|&x| vector(&[x])).collect();
        AffineMonoid::new(1, &g).unwrap()
    }

    #[test]
    fn sixth_power_in_characteristic_two() {
        let r = relative_wn(&numeric(&[6]), &numeric(&[1]), Characteristic::new(2).unwrap()).unwrap();
        for m in 0..=60 {
            assert_eq!(r.contains(&vector(&[m])).unwrap(), m % 3 == 0, "m = {m}");
        }
        assert_eq!(r.generators(None, 60).unwrap(), numeric(&[3]));
    }

    #[test]
    fn relative_seminormalization() {
        let r = relative_sn(&numeric(&[2, 3]), &numeric(&[1])).unwrap();
        assert_eq!(r.generators(None, 8).unwrap(), numeric(&[1]));
        let same = relative_sn(&numeric(&[2, 3]), &numeric(&[2, 3])).unwrap();
        assert_eq!(same.generators(None, 8).unwrap(), numeric(&[2, 3]));
    }

    #[test]
    fn extension_preconditions() {
        assert!(matches!(
            relative_sn(&numeric(&[1]), &numeric(&[2])),
            Err(Error::NotAnExtension { .. })
        ));
        assert!(matches!(
            relative_sn(&numeric(&[2]), &numeric(&[1, -1])),
            Err(Error::NotFiniteExtension { .. })
        ));
    }
}
