use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::forms::DeRham;
use super::wedge::{binomial, wedge_matrix};
use crate::complex::MonoidalComplex;
use crate::cones::Fan;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Int, Vector};
use crate::monoid::Characteristic;

/// The finite complex `(∧^• V_m, α(m) ∧ −)` at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComplex {
    pub degree: Vector,
    pub dim: usize,
    /// `maps[p]: ∧^p V_m → ∧^{p+1} V_m` for `p < dim`.
    pub maps: Vec<IntMatrix>,
}

impl FiberComplex {
    /// `h^p = C(dim, p) − rank d_p − rank d_{p−1}`, for `p = 0..=dim`.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        (0..=self.dim)
            .map(|p| {
                let out = if p < self.dim { ranks[p] } else { 0 };
                let inc = if p > 0 { ranks[p - 1] } else { 0 };
                binomial(self.dim, p) - out - inc
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiMode {
    /// Only the degree `0` can contribute, since `α(m) ≠ 0` otherwise.
    Theoretical,
    /// Sum over every support degree in the box `[-B, B]^n`.
    Box(u64),
}

impl fmt::Display for BettiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BettiMode::Theoretical => write!(f, "theoretical"),
            BettiMode::Box(b) => write!(f, "box-truncated({b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    /// `h^0, …, h^n`.
    pub dims: Vec<usize>,
    pub mode: BettiMode,
}

/// Per-degree dimensions at one form degree `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDimRow {
    pub degree: Vec<i64>,
    /// `dim` of the fiber of `A^p(X)`.
    pub whole: usize,
    /// `dim` of the fiber of `A^p(Y)`.
    pub sub: usize,
    /// `dim` of the fiber of `A^p(X, Y)`.
    pub pair: usize,
    /// The same, summed over cones outside the subfan whose monoid has the
    /// degree in its relative interior.
    pub by_cones: usize,
}

impl DeRham {
    pub fn fiber_complex(&self, m: &[Int]) -> Result<FiberComplex> {
        let s = self.fiber_space(m)?;
        let dim = s.dim();
        Ok(FiberComplex {
            degree: m.to_vec(),
            dim,
            maps: (0..dim).map(|p| wedge_matrix(&s.alpha, p)).collect(),
        })
    }

    fn padded_cohomology(&self, m: &[Int]) -> Vec<usize> {
        let mut h = self.fiber_complex(m).expect("support degree").cohomology();
        h.resize(self.complex().ambient_rank() + 1, 0);
        h
    }

    /// Cohomology of the global de Rham complex of `X` (or of the pair
    /// `(X, Y)` for a subfan `Y`).
    pub fn betti(&self, pair: Option<&Fan>, mode: BettiMode) -> Result<BettiTable> {
        let n = self.complex().ambient_rank();
        let filter = pair.map(|f| self.pair_filter(f)).transpose()?;
        let dims = match mode {
            BettiMode::Theoretical => {
                let zero = linalg::zero_vector(n);
                let keep = match &filter {
                    Some(f) => f.accepts(&zero)?,
                    None => true,
                };
                if keep {
                    self.padded_cohomology(&zero)
                } else {
                    vec![0; n + 1]
                }
            }
            BettiMode::Box(b) => {
                let points: Vec<Vec<i64>> = linalg::box_points(n, b).collect();
                points
                    .par_iter()
                    .filter_map(|p| {
                        let i = self.complex().locate_small(p)?;
                        if let Some(f) = &filter {
                            if !f.accepts_index(i) {
                                return None;
                            }
                        }
                        Some(self.padded_cohomology(&linalg::from_small(p)))
                    })
                    .reduce(|| vec![0; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
            }
        };
        Ok(BettiTable { dims, mode })
    }

    /// Fiber dimensions of `A^p(X)`, `A^p(Y)` and `A^p(X, Y)` at every
    /// support degree in the box, with the cone-by-cone decomposition of
    /// the last one. Fails if the decomposition disagrees.
    pub fn pair_dims(&self, subfan: &Fan, p: usize, radius: u64) -> Result<Vec<PairDimRow>> {
        let x = self.complex();
        let filter = self.pair_filter(subfan)?;
        let y = x.subcomplex(subfan)?;
        let in_sub: Vec<bool> = x.cones().iter().map(|c| subfan.index_of(c).is_some()).collect();
        let mut rows = Vec::new();
        for pt in linalg::box_points(x.ambient_rank(), radius) {
            let Some(i) = x.locate_small(&pt) else { continue };
            let m = linalg::from_small(&pt);
            let whole = binomial(x.group(i).rank(), p);
            let sub = match y.locate(&m)? {
                Some(j) => binomial(y.group(j).rank(), p),
                None => 0,
            };
            let pair = if filter.accepts_index(i) { whole } else { 0 };
            let mut by_cones = 0;
            for (k, (c, s)) in x.cones().iter().zip(x.monoids()).enumerate() {
                if !in_sub[k] && c.relint_contains(&m)? && s.contains(&m)? {
                    by_cones += binomial(s.gp().rank(), p);
                }
            }
            if pair != by_cones {
                return Err(Error::Postcondition(format!(
                    "pair decomposition mismatch at {}: {pair} vs {by_cones}",
                    linalg::fmt_vector(&m)
                )));
            }
            rows.push(PairDimRow {
                degree: pt,
                whole,
                sub,
                pair,
                by_cones,
            });
        }
        Ok(rows)
    }
}

/// Fiber dimensions of `A^p` for a possibly non-weakly-normal complex,
/// computed on its weak normalization in characteristic 0. Degrees outside
/// the support are omitted (dimension 0).
pub fn hdiff_general(
    x: &MonoidalComplex,
    p: usize,
    radius: u64,
    degree_bound: Option<u64>,
    verify_radius: u64,
) -> Result<BTreeMap<Vec<i64>, usize>> {
    let wn = x.wn_complex(Characteristic::zero(), degree_bound, verify_radius)?;
    let d = DeRham::new(wn, verify_radius)?;
    let mut out = BTreeMap::new();
    for pt in linalg::box_points(x.ambient_rank(), radius) {
        if let Some(i) = d.complex().locate_small(&pt) {
            out.insert(pt, binomial(d.complex().group(i).rank(), p));
        }
    }
    Ok(out)
}
