//! Generic restriction, nearby and vanishing cycle operators evaluated at
//! generic points of strata.
//!
//! Everything is read off the Euler-obstruction expansion
//! `ξ = Σ_V c(V) · Eu_{closure(V)}` and the per-pair slice data. For a pair
//! `S < V` write `d = dim V − dim S`, `m = polar(S, V)` and `s` for its
//! [s-sequence](crate::geometry::s_sequence).
//!
//! Restricting `Eu_{closure(V)}` to `k` generic hyperplanes through a point
//! of `S` gives the Euler obstruction of the slice plus a point mass that
//! corrects its value at the point: `Ξ^k Eu_V = Eu_{V ∩ H^k} − (s_k − s_0) 1_p`.
//! The vanishing cycle along a generic form kills the Euler obstruction of a
//! positive-dimensional slice and keeps the point mass, so
//!
//! ```text
//! φ_k(S, V) = s_0 − s_k   (k < d)
//!           = s_0         (k ≥ d, the slice is a finite set of Eu-weight s_0)
//! φ_k(S, S) = 1
//! ```
//!
//! The nearby-vanishing chain is weighted by polar multiplicities:
//!
//! ```text
//! ψ_k(S, V) = (−1)^{d−k} m_k   (k ≤ d),   0 otherwise
//! ψ_k(S, S) = [k = 0]
//! ```
//!
//! With the telescoping identity `s_{d−1} = m_d` these satisfy
//! `φ_k = Σ_{j ≤ k} ψ_j`, which is what makes the two discriminant routes
//! agree and the Euler characteristic of the stalk complex equal `ξ(S)`.
//!
//! Depths `k` are relative to the normal slice of `S` (`0 ≤ k ≤ codim S`)
//! except in [`ambient_phi_psi`].

use crate::arith;
use crate::error::{Error, Result};
use crate::function::{ConstructibleFunction, EuCoefficients};
use crate::geometry::{euler_obstruction_matrix, s_sequence_with, EuMatrix, StratifiedGeometry};

/// A constructible function prepared for repeated operator evaluation.
#[derive(Debug, Clone)]
pub struct Operators<'a> {
    xi: &'a ConstructibleFunction,
    eu: EuMatrix,
    coeffs: EuCoefficients,
}

impl<'a> Operators<'a> {
    pub fn new(xi: &'a ConstructibleFunction) -> Result<Self> {
        let eu = euler_obstruction_matrix(xi.geometry())?;
        let coeffs = xi.eu_coefficients()?;
        Ok(Operators { xi, eu, coeffs })
    }

    fn geometry(&self) -> &StratifiedGeometry {
        self.xi.geometry()
    }

    pub fn coefficients(&self) -> &EuCoefficients {
        &self.coeffs
    }

    /// `ξ(S) − Ψ ξ(S)` along a generic form on the normal slice.
    pub fn phi_generic(&self, s: usize) -> Result<i64> {
        let g = self.geometry();
        if g.is_open(s) {
            return Ok(0);
        }
        arith::sub(self.xi.at(s), self.psi_generic(s)?)
    }

    /// Euler integral of `ξ` over the complex link: `Σ_{U > S} links(S, U) ξ(U)`.
    pub fn psi_generic(&self, s: usize) -> Result<i64> {
        let g = self.geometry();
        if g.is_open(s) {
            return Ok(self.xi.at(s));
        }
        g.above(s)
            .try_fold(0i64, |acc, u| arith::add(acc, arith::mul(g.link(s, u)?, self.xi.at(u))?))
    }

    fn check_depth(&self, s: usize, k: u32) -> Result<()> {
        let g = self.geometry();
        if self.xi.support_codim() == 0 {
            return Err(Error::AutoEmbedRequired);
        }
        if k > g.codim(s) {
            return Err(Error::DepthOutOfRange {
                stratum: g.id(s).to_string(),
                k,
                max: g.codim(s),
            });
        }
        Ok(())
    }

    /// `(Φ Ξ^k ξ)` at a generic point of `S`.
    pub fn phi_xi(&self, s: usize, k: u32) -> Result<i64> {
        self.check_depth(s, k)?;
        let g = self.geometry();
        let mut acc = self.coeffs.at(s);
        for v in g.above(s) {
            let c = self.coeffs.at(v);
            if c == 0 {
                continue;
            }
            acc = arith::add(acc, arith::mul(c, self.restriction_weight(s, v, k)?)?)?;
        }
        Ok(acc)
    }

    /// `(Φ Ψ^k ξ)` at a generic point of `S`.
    pub fn phi_psi(&self, s: usize, k: u32) -> Result<i64> {
        self.check_depth(s, k)?;
        let g = self.geometry();
        let mut acc = if k == 0 { self.coeffs.at(s) } else { 0 };
        for v in g.above(s) {
            let c = self.coeffs.at(v);
            if c == 0 {
                continue;
            }
            acc = arith::add(acc, arith::mul(c, self.nearby_weight(s, v, k)?)?)?;
        }
        Ok(acc)
    }

    /// `φ_k(S, V)` for `S < V`.
    fn restriction_weight(&self, s: usize, v: usize, k: u32) -> Result<i64> {
        let seq = s_sequence_with(self.geometry(), &self.eu, s, v)?.values;
        let d = seq.len() - 1;
        let k = k as usize;
        if k < d {
            arith::sub(seq[0], seq[k])
        } else {
            Ok(seq[0])
        }
    }

    /// `ψ_k(S, V)` for `S < V`.
    fn nearby_weight(&self, s: usize, v: usize, k: u32) -> Result<i64> {
        let m = self.geometry().polar(s, v)?;
        let d = m.len() - 1;
        let k = k as usize;
        if k <= d {
            arith::mul(arith::sign((d - k) as i64), m[k])
        } else {
            Ok(0)
        }
    }

    /// `(Φ Ψ^k ξ)` with `k` counted in ambient coordinates: the first
    /// `dim S` generic slices are tangent to `S` and contribute nothing.
    pub fn ambient_phi_psi(&self, s: usize, k: u32) -> Result<i64> {
        let g = self.geometry();
        if self.xi.support_codim() == 0 {
            return Err(Error::AutoEmbedRequired);
        }
        if k > g.ambient_dim() {
            return Err(Error::DepthOutOfRange {
                stratum: g.id(s).to_string(),
                k,
                max: g.ambient_dim(),
            });
        }
        if k < g.dim(s) {
            return Ok(0);
        }
        self.phi_psi(s, k - g.dim(s))
    }
}

pub fn phi_generic(xi: &ConstructibleFunction, s: &str) -> Result<i64> {
    let i = xi.geometry().index_of(s)?;
    Operators::new(xi)?.phi_generic(i)
}

pub fn psi_generic(xi: &ConstructibleFunction, s: &str) -> Result<i64> {
    let i = xi.geometry().index_of(s)?;
    Operators::new(xi)?.psi_generic(i)
}

pub fn phi_xi(xi: &ConstructibleFunction, s: &str, k: u32) -> Result<i64> {
    let i = xi.geometry().index_of(s)?;
    Operators::new(xi)?.phi_xi(i, k)
}

pub fn phi_psi(xi: &ConstructibleFunction, s: &str, k: u32) -> Result<i64> {
    let i = xi.geometry().index_of(s)?;
    Operators::new(xi)?.phi_psi(i, k)
}

pub fn ambient_phi_psi(xi: &ConstructibleFunction, s: &str, k: u32) -> Result<i64> {
    let i = xi.geometry().index_of(s)?;
    Operators::new(xi)?.ambient_phi_psi(i, k)
}
