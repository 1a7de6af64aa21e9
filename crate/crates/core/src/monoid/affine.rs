use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Int, Sublattice, Vector};

/// A finitely generated submonoid of `Z^n`. Zero is always a member; the
/// stored generators are nonzero, sorted and deduplicated.
#[derive(Clone)]
pub struct AffineMonoid {
    ambient: usize,
    generators: Vec<Vector>,
    oracle: OnceLock<Arc<MembershipOracle>>,
}

impl AffineMonoid {
    pub fn new(n: usize, gens: &[Vector]) -> Result<Self> {
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let mut generators: Vec<Vector> =
            gens.iter().filter(|g| !linalg::is_zero(g)).cloned().collect();
        generators.sort();
        generators.dedup();
        Ok(AffineMonoid {
            ambient: n,
            generators,
            oracle: OnceLock::new(),
        })
    }

    /// The trivial monoid `{0}`.
    pub fn trivial(n: usize) -> Self {
        AffineMonoid::new(n, &[]).expect("no generators")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Group generated by the monoid.
    pub fn gp(&self) -> Sublattice {
        Sublattice::span(self.ambient, &self.generators)
    }

    pub fn cone(&self) -> Cone {
        Cone::from_generators(self.ambient, &self.generators).expect("lengths checked")
    }

    pub fn oracle(&self) -> &MembershipOracle {
        self.oracle.get_or_init(|| {
            Arc::new(MembershipOracle::new(self.ambient, &self.generators).expect("lengths checked"))
        })
    }

    /// Whether `m` is a nonnegative integer combination of the generators.
    pub fn contains(&self, m: &[Int]) -> Result<bool> {
        self.oracle().contains(m)
    }

    /// `S ∩ t` for a face `t` of the cone of `S`. A sum of generators lies in
    /// a face only if every summand does, so filtering generators suffices.
    pub fn face_restriction(&self, t: &Cone) -> Result<AffineMonoid> {
        let cone = self.oracle().cone();
        if !t.is_face_of(cone) {
            return Err(Error::NotAFace {
                face: t.to_string(),
                cone: cone.to_string(),
            });
        }
        let gens: Vec<Vector> = self
            .generators
            .iter()
            .filter(|g| t.contains(g).unwrap_or(false))
            .cloned()
            .collect();
        AffineMonoid::new(self.ambient, &gens)
    }

    /// Drops generators that are sums of the others.
    pub fn minimize(&self) -> AffineMonoid {
        let mut keep = self.generators.clone();
        let mut i = 0;
        while i < keep.len() {
            let mut rest = keep.clone();
            let g = rest.remove(i);
            let m = MembershipOracle::new(self.ambient, &rest).expect("lengths checked");
            if m.contains(&g).expect("lengths checked") {
                keep = rest;
            } else {
                i += 1;
            }
        }
        AffineMonoid::new(self.ambient, &keep).expect("lengths checked")
    }
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl Hash for AffineMonoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Display for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|v| linalg::fmt_vector(v)).collect();
        write!(f, "<{}>", g.join(","))
    }
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Decides membership in the monoid generated by a finite set.
///
/// Generators in the lineality space of the cone generate a group, handled
/// by lattice membership. The rest have positive degree under the cone's
/// grading, which bounds a depth-first search over multiplicities; failed
/// states are memoized for the duration of one query.
pub struct MembershipOracle {
    ambient: usize,
    cone: Cone,
    grading: Vector,
    lineality_group: Sublattice,
    /// Pointed generators with their degrees, largest degree first.
    pointed: Vec<(Vector, Int)>,
}

impl MembershipOracle {
    pub fn new(n: usize, gens: &[Vector]) -> Result<Self> {
        let cone = Cone::from_generators(n, gens)?;
        let grading = cone.grading();
        let mut lin = Vec::new();
        let mut pointed = Vec::new();
        for g in gens.iter().filter(|g| !linalg::is_zero(g)) {
            let d = dot(&grading, g);
            if d.is_zero() {
                lin.push(g.clone());
            } else {
                pointed.push((g.clone(), d));
            }
        }
        pointed.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        pointed.dedup();
        Ok(MembershipOracle {
            ambient: n,
            cone,
            grading,
            lineality_group: Sublattice::span(n, &lin),
            pointed,
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn contains(&self, m: &[Int]) -> Result<bool> {
        if m.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: m.len(),
            });
        }
        if !self.cone.contains(m)? {
            return Ok(false);
        }
        let mut failures = HashSet::new();
        Ok(self.search(0, m.to_vec(), &mut failures))
    }

    fn search(&self, i: usize, r: Vector, failures: &mut HashSet<(usize, Vector)>) -> bool {
        let deg = dot(&self.grading, &r);
        if deg.is_zero() {
            return self.lineality_group.contains(&r).expect("same length");
        }
        if i == self.pointed.len() || failures.contains(&(i, r.clone())) {
            return false;
        }
        let (g, dg) = &self.pointed[i];
        let kmax = &deg / dg;
        let mut k = kmax;
        while !k.is_negative() {
            let next = linalg::sub(&r, &linalg::scale(&k, g));
            if self.cone.contains(&next).expect("same length") && self.search(i + 1, next, failures) {
                return true;
            }
            k -= 1;
        }
        failures.insert((i, r));
        false
    }
}

/// Characteristic of the coefficient field: 0 or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic(u64);

impl Characteristic {
    pub fn new(p: u64) -> Result<Self> {
        if p == 0 || is_prime(p) {
            Ok(Characteristic(p))
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn zero() -> Self {
        Characteristic(0)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p | k`; never true in characteristic 0.
    pub fn divides(self, k: &Int) -> bool {
        self.0 != 0 && (k % Int::from(self.0)).is_zero()
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn pinch() -> AffineMonoid {
        AffineMonoid::new(2, &[vector(&[2, 0]), vector(&[0, 1]), vector(&[1, 1])]).unwrap()
    }

    /// Enumerates all sums with coefficients up to `k` (small generator sets).
    fn sums(gens: &[Vector], k: i64) -> HashSet<Vector> {
        let mut out: HashSet<Vector> = HashSet::new();
        out.insert(linalg::zero_vector(gens[0].len()));
        for g in gens {
            let prev: Vec<Vector> = out.iter().cloned().collect();
            for p in prev {
                for c in 1..=k {
                    out.insert(linalg::add(&p, &linalg::scale(&Int::from(c), g)));
                }
            }
        }
        out
    }

    #[test]
    fn pinch_membership() {
        let s = pinch();
        assert!(!s.contains(&vector(&[1, 0])).unwrap());
        assert!(s.contains(&vector(&[3, 2])).unwrap());
        assert!(s.contains(&vector(&[0, 0])).unwrap());
        assert!(!s.contains(&vector(&[-1, 1])).unwrap());
        assert!(matches!(s.contains(&vector(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership_matches_enumerated_sums() {
        let gens = vec![vector(&[2, 0]), vector(&[0, 1]), vector(&[1, 1])];
        let s = AffineMonoid::new(2, &gens).unwrap();
        let all = sums(&gens, 6);
        for x in 0..=5i64 {
            for y in 0..=5i64 {
                let v = vector(&[x, y]);
                assert_eq!(s.contains(&v).unwrap(), all.contains(&v), "{v:?}");
            }
        }
    }

    #[test]
    fn numeric_semigroup() {
        let s = AffineMonoid::new(1, &[vector(&[2]), vector(&[3])]).unwrap();
        assert!(!s.contains(&vector(&[1])).unwrap());
        for k in 2..20 {
            assert!(s.contains(&vector(&[k])).unwrap());
        }
        assert_eq!(s.gp(), Sublattice::full(1));
        assert_eq!(s.cone(), Cone::from_generators(1, &[vector(&[1])]).unwrap());
    }

    #[test]
    fn group_part() {
        // Z × N generated by (1,0), (-1,0), (0,1); and 2Z × N
        let s = AffineMonoid::new(2, &[vector(&[2, 0]), vector(&[-2, 0]), vector(&[1, 1])]).unwrap();
        assert!(s.contains(&vector(&[-4, 0])).unwrap());
        assert!(!s.contains(&vector(&[1, 0])).unwrap());
        assert!(s.contains(&vector(&[-1, 1])).unwrap());
        assert!(!s.contains(&vector(&[0, 1])).unwrap());
    }

    #[test]
    fn face_restriction_filters_generators() {
        let s = pinch();
        let xray = Cone::from_generators(2, &[vector(&[1, 0])]).unwrap();
        assert_eq!(s.face_restriction(&xray).unwrap().generators(), &[vector(&[2, 0])]);
        assert_eq!(s.face_restriction(&s.cone()).unwrap(), s);
        assert_eq!(s.face_restriction(&Cone::zero(2)).unwrap(), AffineMonoid::trivial(2));
        let diag = Cone::from_generators(2, &[vector(&[1, 1])]).unwrap();
        assert!(matches!(s.face_restriction(&diag), Err(Error::NotAFace { .. })));
    }

    #[test]
    fn minimize_drops_redundant() {
        let s = AffineMonoid::new(1, &[vector(&[2]), vector(&[3]), vector(&[4]), vector(&[5])]).unwrap();
        assert_eq!(s.minimize().generators(), &[vector(&[2]), vector(&[3])]);
    }

    #[test]
    fn characteristics() {
        assert!(Characteristic::new(4).is_err());
        assert!(Characteristic::new(1).is_err());
        assert!(Characteristic::new(7).is_ok());
        let p = Characteristic::new(2).unwrap();
        assert!(p.divides(&Int::from(6)));
        assert!(!Characteristic::zero().divides(&Int::from(6)));
    }
}
