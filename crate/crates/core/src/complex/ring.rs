use std::collections::BTreeMap;

use num_traits::Zero;

use super::MonoidalComplex;
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat, Vector};

/// A finite rational combination of monomials `χ^m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElem {
    terms: BTreeMap<Vector, Rat>,
}

impl RingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Vector, c: Rat) -> Self {
        let mut r = Self::zero();
        r.add_term(m, c);
        r
    }

    /// The unit `χ^0`.
    pub fn one(n: usize) -> Self {
        Self::monomial(linalg::zero_vector(n), Rat::from_integer(Int::from(1)))
    }

    pub fn terms(&self) -> &BTreeMap<Vector, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Vector, c: Rat) {
        let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl MonoidalComplex {
    /// Builds an element, rejecting degrees outside the support.
    pub fn ring_elem(&self, terms: &[(Vector, Rat)]) -> Result<RingElem> {
        let mut r = RingElem::zero();
        for (m, c) in terms {
            if self.locate(m)?.is_none() {
                return Err(Error::DegreeNotInSupport(m.clone()));
            }
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    /// `χ^m · χ^{m'}`: the degree `m + m'` if both lie in a common `S_σ`.
    pub fn monomial_product(&self, m: &[Int], mp: &[Int]) -> Result<Option<Vector>> {
        let (Some(i), Some(j)) = (self.locate(m)?, self.locate(mp)?) else {
            return Err(Error::DegreeNotInSupport(
                if self.locate(m)?.is_none() { m.to_vec() } else { mp.to_vec() },
            ));
        };
        Ok(self.joinable(i, j).then(|| linalg::add(m, mp)))
    }

    pub fn ring_mult(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        let mut out = RingElem::zero();
        for (m, c) in a.terms() {
            for (mp, cp) in b.terms() {
                if let Some(s) = self.monomial_product(m, mp)? {
                    out.add_term(s, c * cp);
                }
            }
        }
        Ok(out)
    }

    /// Drops the terms whose degree is outside the support of `sub`.
    pub fn project_to(&self, sub: &MonoidalComplex, a: &RingElem) -> Result<RingElem> {
        let mut out = RingElem::zero();
        for (m, c) in a.terms() {
            if sub.locate(m)?.is_some() {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }
}
