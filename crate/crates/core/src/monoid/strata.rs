use std::fmt;

use num_traits::{One, Signed, Zero};

use super::affine::{AffineMonoid, Characteristic};
use super::extract::{extract_generators, Realized};
use super::hilbert::hilbert_basis;
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, lattice_index, snf, unimodular_inverse, Int, LatticeIndex, Sublattice, Vector};

/// The set `⊔_τ Λ_τ ∩ relint τ` over the faces `τ` of a cone, one lattice
/// per face.
#[derive(Clone, PartialEq, Eq)]
pub struct StratifiedMonoid {
    cone: Cone,
    /// Aligned with `cone.faces()`.
    strata: Vec<Sublattice>,
}

impl StratifiedMonoid {
    /// Checks that each face has exactly one lattice, of finite index in the
    /// lattice points of its span, and that lattices grow along faces.
    pub fn new(cone: Cone, family: &[(Cone, Sublattice)]) -> Result<Self> {
        let faces = cone.faces();
        let mut strata = Vec::with_capacity(faces.len());
        for f in faces {
            let mut hits = family.iter().filter(|(t, _)| t == f);
            let Some((_, lat)) = hits.next() else {
                return Err(bad(f, "no lattice given for this face"));
            };
            if hits.next().is_some() {
                return Err(bad(f, "more than one lattice given for this face"));
            }
            if lat.ambient_rank() != cone.ambient_rank() {
                return Err(Error::DimensionMismatch {
                    expected: cone.ambient_rank(),
                    got: lat.ambient_rank(),
                });
            }
            match lattice_index(lat, f.span_lattice()) {
                Ok(LatticeIndex::Finite(_)) => {}
                Ok(LatticeIndex::Infinite) => {
                    return Err(bad(f, "lattice has infinite index in the span"));
                }
                Err(_) => return Err(bad(f, "lattice is not contained in the span")),
            }
            strata.push(lat.clone());
        }
        for (family_face, _) in family {
            if !faces.contains(family_face) {
                return Err(bad(family_face, "not a face of the cone"));
            }
        }
        for (i, t) in faces.iter().enumerate() {
            for (j, s) in faces.iter().enumerate() {
                if i != j && t.is_face_of(s) && !strata[i].is_subset_of(&strata[j]) {
                    return Err(bad(t, &format!("lattice is not contained in the lattice of {s}")));
                }
            }
        }
        Ok(StratifiedMonoid { cone, strata })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn ambient_rank(&self) -> usize {
        self.cone.ambient_rank()
    }

    /// `(face, lattice)` pairs in canonical face order.
    pub fn strata(&self) -> impl Iterator<Item = (&Cone, &Sublattice)> {
        self.cone.faces().iter().zip(&self.strata)
    }

    pub fn stratum(&self, face: &Cone) -> Option<&Sublattice> {
        let i = self.cone.faces().binary_search(face).ok()?;
        Some(&self.strata[i])
    }

    /// The face whose relative interior contains `m`, with its index.
    fn locate(&self, m: &[Int]) -> Result<Option<usize>> {
        if !self.cone.contains(m)? {
            return Ok(None);
        }
        for (i, f) in self.cone.faces().iter().enumerate() {
            if f.relint_contains(m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, m: &[Int]) -> Result<bool> {
        Ok(match self.locate(m)? {
            Some(i) => self.strata[i].contains(m)?,
            None => false,
        })
    }

    /// `2 ×` the largest grading value over the Hilbert bases of `Λ_τ ∩ τ`.
    pub fn default_degree_bound(&self) -> u64 {
        let grading = self.cone.grading();
        let mut top = Int::one();
        for (f, lat) in self.strata() {
            for h in hilbert_basis(f, lat).expect("strata validated") {
                top = top.max(dot(&grading, &h));
            }
        }
        u64::try_from(2 * top).unwrap_or(u64::MAX)
    }

    /// A finite generating set of the realized set, checked on the box of
    /// the given radius.
    pub fn generators(&self, degree_bound: Option<u64>, radius: u64) -> Result<AffineMonoid> {
        let bound = degree_bound.unwrap_or_else(|| self.default_degree_bound());
        let pred = |m: &[Int]| self.contains(m);
        let set = Realized {
            cone: &self.cone,
            lineality_group: self.strata[0].clone(),
            contains: &pred,
        };
        AffineMonoid::new(self.ambient_rank(), &extract_generators(&set, bound, radius)?)
    }

    /// Replaces each lattice by its `p`-saturation inside the span.
    pub fn p_saturate(&self, p: Characteristic) -> StratifiedMonoid {
        let strata = self
            .cone
            .faces()
            .iter()
            .zip(&self.strata)
            .map(|(f, lat)| p_saturation(lat, f.span_lattice(), p))
            .collect();
        StratifiedMonoid {
            cone: self.cone.clone(),
            strata,
        }
    }
}

impl fmt::Debug for StratifiedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (face, lat) in self.strata() {
            let b: Vec<String> = lat.basis_vectors().iter().map(|v| linalg::fmt_vector(v)).collect();
            m.entry(&face.to_string(), &b.join(","));
        }
        m.finish()
    }
}

fn bad(face: &Cone, reason: &str) -> Error {
    Error::BadStrata {
        face: face.to_string(),
        reason: reason.to_string(),
    }
}

/// `{m ∈ sup : p^e m ∈ lat for some e ≥ 0}` for `lat` of finite index in
/// `sup`; characteristic 0 returns `lat`.
pub fn p_saturation(lat: &Sublattice, sup: &Sublattice, p: Characteristic) -> Sublattice {
    let n = lat.ambient_rank();
    if p.get() == 0 || lat.rank() == 0 {
        return lat.clone();
    }
    let coords = sup.sublattice_in_coords(lat).expect("lattice inside its span");
    // u · C · v = D, so the lattice is u^{-1} D Z^r
    let s = snf(coords.basis());
    let uinv = unimodular_inverse(&s.u);
    let gens: Vec<Vector> = (0..coords.rank())
        .map(|i| {
            let f = linalg::coprime_part(s.d.get(i, i), p.get());
            sup.from_coords(&linalg::scale(&f, &uinv.col(i)))
        })
        .collect();
    Sublattice::span(n, &gens)
}

impl AffineMonoid {
    /// `M ∩ σ_S` as a monoid, generated by its Hilbert basis.
    pub fn saturation(&self) -> AffineMonoid {
        let cone = self.cone();
        let h = hilbert_basis(&cone, cone.span_lattice()).expect("saturated span");
        AffineMonoid::new(self.ambient_rank(), &h).expect("lengths agree")
    }

    /// Face-wise groups `gp(S ∩ τ)`.
    pub fn stratify(&self) -> StratifiedMonoid {
        let cone = self.cone();
        let strata = cone
            .faces()
            .iter()
            .map(|f| self.face_restriction(f).expect("face of the cone").gp())
            .collect();
        StratifiedMonoid { cone, strata }
    }

    pub fn seminormalization(&self) -> StratifiedMonoid {
        self.stratify()
    }

    pub fn weak_normalization(&self, p: Characteristic) -> StratifiedMonoid {
        self.stratify().p_saturate(p)
    }

    /// Certificate: the extracted generators of the seminormalization all
    /// lie in `S`.
    pub fn is_seminormal(&self, radius: u64) -> Result<bool> {
        let sn = self.seminormalization().generators(None, radius)?;
        for g in sn.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Seminormal, and `p` divides none of the indices `[M ∩ span τ : gp(S ∩ τ)]`.
    pub fn is_weakly_normal(&self, p: Characteristic, radius: u64) -> Result<bool> {
        if !self.is_seminormal(radius)? {
            return Ok(false);
        }
        Ok(self.stratify().strata().all(|(f, lat)| {
            match lattice_index(lat, f.span_lattice()).expect("stratum inside span") {
                LatticeIndex::Finite(k) => !p.divides(&k),
                LatticeIndex::Infinite => false,
            }
        }))
    }

    /// `nm ∈ S` for every `n` in `[N₀, N₀ + window]`, where `N₀` is the
    /// explicit threshold beyond which all multiples of a seminormal element
    /// lie in `S` (or `bound` when supplied).
    pub fn sn_member_oracle(&self, m: &[Int], window: u64, bound: Option<u64>) -> Result<bool> {
        if m.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank(),
                got: m.len(),
            });
        }
        if linalg::is_zero(m) {
            return Ok(true);
        }
        let start = match bound {
            Some(b) => Int::from(b),
            None => match self.multiple_threshold(m)? {
                Some(t) => t,
                None => return Ok(false),
            },
        };
        let mut n = start.max(Int::one());
        for _ in 0..=window {
            if !self.contains(&linalg::scale(&n, m))? {
                return Ok(false);
            }
            n += 1;
        }
        Ok(true)
    }

    /// `(lq − 1)·lq` from an integer representation `m = Σ z_i s_i` and a
    /// positive one `q m = Σ q_i s_i` over the generators `s_i` of the face
    /// containing `m` in its relative interior. `None` when `m` has no such
    /// representations (so `nm ∉ S` for infinitely many `n`).
    fn multiple_threshold(&self, m: &[Int]) -> Result<Option<Int>> {
        let cone = self.cone();
        let Some(face) = cone.face_containing(m)? else {
            return Ok(None);
        };
        let gens: Vec<Vector> = self.face_restriction(&face)?.generators().to_vec();
        let Some(z) = integer_combination(&gens, m) else {
            return Ok(None);
        };
        let (q, qs) = positive_combination(&face, &gens, m);
        let mut l = Int::zero();
        for (zi, qi) in z.iter().zip(&qs) {
            if zi.is_negative() {
                let need = num_integer::Integer::div_ceil(&(-zi), qi);
                l = l.max(need);
            }
        }
        let lq = l * q;
        Ok(Some(if lq.is_zero() { Int::zero() } else { (&lq - 1) * &lq }))
    }
}

/// Some `z` with `Σ z_i gens_i = m`.
fn integer_combination(gens: &[Vector], m: &[Int]) -> Option<Vector> {
    let n = m.len();
    let a = linalg::IntMatrix::from_cols(n, gens);
    let f = linalg::hnf(&a);
    let lat = Sublattice::span(n, gens);
    let y = lat.coords(m).ok()??;
    let mut full = y;
    full.resize(gens.len(), Int::zero());
    Some(f.u.mul_vec(&full))
}

/// `(q, q_i)` all positive with `q m = Σ q_i gens_i`, for `m` in the
/// relative interior of `face = cone(gens)`.
fn positive_combination(face: &Cone, gens: &[Vector], m: &[Int]) -> (Int, Vector) {
    let c = gens.iter().fold(linalg::zero_vector(m.len()), |s, g| linalg::add(&s, g));
    let mut k = Int::one();
    loop {
        let x = linalg::sub(&linalg::scale(&k, m), &c);
        if face.contains(&x).expect("same length") {
            let mu = caratheodory(gens, &x).expect("point of the cone");
            let den = mu.iter().fold(Int::one(), |l, r| num_integer::Integer::lcm(&l, r.denom()));
            let qs: Vector = mu
                .iter()
                .map(|r| ((r + linalg::Rat::one()) * linalg::rat(&den)).to_integer())
                .collect();
            return (k * den, qs);
        }
        k += 1;
    }
}

/// Nonnegative rational coefficients expressing `x` over `gens`, supported
/// on a linearly independent subset.
fn caratheodory(gens: &[Vector], x: &[Int]) -> Option<Vec<linalg::Rat>> {
    let n = x.len();
    if linalg::is_zero(x) {
        return Some(vec![linalg::Rat::zero(); gens.len()]);
    }
    let r = Sublattice::span(n, gens).rank();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let cols: Vec<Vector> = idx.iter().map(|&i| gens[i].clone()).collect();
        let a = linalg::IntMatrix::from_cols(n, &cols);
        if a.rank() == r {
            if let Some(sol) = linalg::solve_rational(&a, x) {
                if sol.iter().all(|s| !s.is_negative()) {
                    let mut out = vec![linalg::Rat::zero(); gens.len()];
                    for (j, &i) in idx.iter().enumerate() {
                        out[i] = sol[j].clone();
                    }
                    return Some(out);
                }
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < gens.len() - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
