use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::wedge::{apply, binomial, exterior_power, wedge_matrix};
use crate::complex::MonoidalComplex;
use crate::cones::{Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Int, Rat, Sublattice, Vector};
use crate::monoid::Characteristic;

/// The space `V_m = Q ⊗ gp(S_{σ_m})` at a support degree, with the
/// canonical lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    pub degree: Vector,
    pub cone: Cone,
    pub basis: Sublattice,
    /// Coordinates of the degree itself in `basis`.
    pub alpha: Vector,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }
}

/// A homogeneous form of degree `p`: for each support degree `m`, a
/// multivector in `∧^p V_m` (lexicographic basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    p: usize,
    terms: BTreeMap<Vector, Vec<Rat>>,
}

impl GradedForm {
    pub fn zero(p: usize) -> Self {
        GradedForm {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Vector, Vec<Rat>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Vector, coords: Vec<Rat>) {
        match self.terms.get_mut(&m) {
            Some(c) => {
                for (a, b) in c.iter_mut().zip(coords) {
                    *a += b;
                }
                if c.iter().all(Zero::is_zero) {
                    self.terms.remove(&m);
                }
            }
            None => {
                if !coords.iter().all(Zero::is_zero) {
                    self.terms.insert(m, coords);
                }
            }
        }
    }

    pub fn add(&self, other: &GradedForm) -> GradedForm {
        assert_eq!(self.p, other.p, "forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

/// h-differential forms on a weakly normal monoidal complex.
#[derive(Clone, Debug)]
pub struct DeRham {
    complex: MonoidalComplex,
}

impl DeRham {
    /// Requires the complex to be weakly normal in characteristic 0
    /// (equivalently seminormal), checked on the given verification box.
    pub fn new(complex: MonoidalComplex, radius: u64) -> Result<Self> {
        if !complex.is_weakly_normal_complex(Characteristic::zero(), radius)? {
            return Err(Error::NotWeaklyNormal);
        }
        Ok(DeRham { complex })
    }

    pub fn complex(&self) -> &MonoidalComplex {
        &self.complex
    }

    fn space_at(&self, m: &[Int], i: usize) -> FormSpace {
        let basis = self.complex.group(i).clone();
        let alpha = basis.coords(m).expect("same length").expect("degree in its stratum");
        FormSpace {
            degree: m.to_vec(),
            cone: self.complex.cones()[i].clone(),
            basis,
            alpha,
        }
    }

    pub fn fiber_space(&self, m: &[Int]) -> Result<FormSpace> {
        match self.complex.locate(m)? {
            Some(i) => Ok(self.space_at(m, i)),
            None => Err(Error::DegreeNotInSupport(m.to_vec())),
        }
    }

    /// A form with the given terms; coordinate vectors must have length
    /// `C(dim V_m, p)`.
    pub fn form(&self, p: usize, terms: &[(Vector, Vec<Rat>)]) -> Result<GradedForm> {
        let mut w = GradedForm::zero(p);
        for (m, c) in terms {
            let d = self.fiber_space(m)?.dim();
            if c.len() != binomial(d, p) {
                return Err(Error::DimensionMismatch {
                    expected: binomial(d, p),
                    got: c.len(),
                });
            }
            w.add_term(m.clone(), c.clone());
        }
        Ok(w)
    }

    /// `χ^m η ↦ χ^m (α(m) ∧ η)`, term by term.
    pub fn differential(&self, w: &GradedForm) -> Result<GradedForm> {
        let mut out = GradedForm::zero(w.p + 1);
        for (m, eta) in &w.terms {
            let s = self.fiber_space(m)?;
            out.add_term(m.clone(), apply(&wedge_matrix(&s.alpha, w.p), eta));
        }
        Ok(out)
    }

    /// Inclusion `V_m → V_{m'}` in canonical bases, for `σ_m ≺ σ_{m'}`.
    fn inclusion(&self, from: &FormSpace, to: &FormSpace) -> IntMatrix {
        let cols: Vec<Vector> = from
            .basis
            .basis_vectors()
            .iter()
            .map(|v| to.basis.coords(v).expect("same length").expect("face lattice inside"))
            .collect();
        IntMatrix::from_cols(to.dim(), &cols)
    }

    /// `χ^{m'} · w`: each term moves to degree `m + m'` through the
    /// inclusion of form spaces, or vanishes with the ring product.
    pub fn module_action(&self, mp: &[Int], w: &GradedForm) -> Result<GradedForm> {
        self.act(mp, w, false)
    }

    /// `χ^{m'} · (α(m') ∧ w)`, the extra term in the Leibniz rule.
    pub fn leibniz_correction(&self, mp: &[Int], w: &GradedForm) -> Result<GradedForm> {
        self.act(mp, w, true)
    }

    fn act(&self, mp: &[Int], w: &GradedForm, wedge_degree: bool) -> Result<GradedForm> {
        let out_p = if wedge_degree { w.p + 1 } else { w.p };
        let mut out = GradedForm::zero(out_p);
        for (m, eta) in &w.terms {
            let Some(target) = self.complex.monomial_product(mp, m)? else {
                continue;
            };
            let from = self.fiber_space(m)?;
            let to = self.fiber_space(&target)?;
            let mut image = apply(&exterior_power(&self.inclusion(&from, &to), w.p), eta);
            if wedge_degree {
                let a = to.basis.coords(mp)?.expect("factor degree in the target stratum");
                image = apply(&wedge_matrix(&a, w.p), &image);
            }
            out.add_term(target, image);
        }
        Ok(out)
    }

    /// Keeps the terms whose degree lies in the cone `t`.
    pub fn restrict(&self, w: &GradedForm, t: &Cone) -> Result<GradedForm> {
        self.complex.fan().require(t)?;
        let mut out = GradedForm::zero(w.p);
        for (m, c) in &w.terms {
            if t.contains(m)? {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Support degrees of the complex outside the support of the subfan.
    pub fn pair_filter(&self, subfan: &Fan) -> Result<PairFilter<'_>> {
        let idx = self.complex.fan().embed_subfan(subfan)?;
        let inside: BTreeSet<usize> = idx.into_iter().collect();
        Ok(PairFilter { de_rham: self, inside })
    }
}

pub struct PairFilter<'a> {
    de_rham: &'a DeRham,
    inside: BTreeSet<usize>,
}

impl PairFilter<'_> {
    /// `m ∈ |X|` and `m ∉ |Y|`; a support degree lies in `|Y|` exactly
    /// when its cone `σ_m` belongs to the subfan.
    pub fn accepts(&self, m: &[Int]) -> Result<bool> {
        Ok(match self.de_rham.complex.locate(m)? {
            Some(i) => !self.inside.contains(&i),
            None => false,
        })
    }

    pub(crate) fn accepts_index(&self, i: usize) -> bool {
        !self.inside.contains(&i)
    }
}
