//! Constructible functions: the group and ring structure, Euler
//! integration, and the change of basis between indicator values and
//! Euler obstructions of stratum closures.

use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::geometry::{euler_obstruction_matrix, StratifiedGeometry, StratumId};

/// An integer-valued function constant on every stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleFunction {
    geometry: Arc<StratifiedGeometry>,
    /// One value per stratum, in canonical order.
    values: Vec<i64>,
}

pub(crate) fn same_geometry(a: &Arc<StratifiedGeometry>, b: &Arc<StratifiedGeometry>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ConstructibleFunction {
    pub fn zero(geometry: Arc<StratifiedGeometry>) -> Self {
        let values = vec![0; geometry.len()];
        ConstructibleFunction { geometry, values }
    }

    /// Values indexed by the geometry's canonical stratum order.
    pub fn from_values(geometry: Arc<StratifiedGeometry>, values: Vec<i64>) -> Result<Self> {
        if values.len() != geometry.len() {
            return Err(Error::InvalidGeometry(format!(
                "expected {} values, got {}",
                geometry.len(),
                values.len()
            )));
        }
        Ok(ConstructibleFunction { geometry, values })
    }

    /// Values by stratum name; must be total.
    pub fn from_pairs<'a, I>(geometry: Arc<StratifiedGeometry>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let mut values = vec![None; geometry.len()];
        for (name, v) in pairs {
            let i = geometry.index_of(name)?;
            if values[i].replace(v).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate value for `{name}`")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidGeometry(format!("no value for stratum `{}`", geometry.id(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstructibleFunction { geometry, values })
    }

    /// `1_{closure(S)}`.
    pub fn indicator_closure(geometry: Arc<StratifiedGeometry>, s: &str) -> Result<Self> {
        let i = geometry.index_of(s)?;
        let values = (0..geometry.len())
            .map(|j| i64::from(geometry.le(j, i)))
            .collect();
        Ok(ConstructibleFunction { geometry, values })
    }

    /// `1_S` for a single stratum.
    pub fn indicator(geometry: Arc<StratifiedGeometry>, s: &str) -> Result<Self> {
        let i = geometry.index_of(s)?;
        let mut f = Self::zero(geometry);
        f.values[i] = 1;
        Ok(f)
    }

    /// The constant function 1.
    pub fn one(geometry: Arc<StratifiedGeometry>) -> Self {
        let values = vec![1; geometry.len()];
        ConstructibleFunction { geometry, values }
    }

    /// `Eu_{closure(V)}`.
    pub fn euler_obstruction(geometry: Arc<StratifiedGeometry>, v: &str) -> Result<Self> {
        let mut c = EuCoefficients::zero(geometry);
        let i = c.geometry.index_of(v)?;
        c.coeffs[i] = 1;
        c.to_function()
    }

    pub fn geometry(&self) -> &Arc<StratifiedGeometry> {
        &self.geometry
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn get(&self, s: &str) -> Result<i64> {
        Ok(self.values[self.geometry.index_of(s)?])
    }

    /// `(stratum, value)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&StratumId, i64)> + '_ {
        self.geometry
            .strata()
            .iter()
            .map(|s| &s.id)
            .zip(self.values.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Same values viewed on another (equal) geometry handle.
    pub(crate) fn with_values(&self, values: Vec<i64>) -> Self {
        ConstructibleFunction {
            geometry: self.geometry.clone(),
            values,
        }
    }

    /// Minimum codimension over strata where the function is nonzero;
    /// `ambient_dim + 1` for the zero function.
    pub fn support_codim(&self) -> u32 {
        (0..self.values.len())
            .filter(|&i| self.values[i] != 0)
            .map(|i| self.geometry.codim(i))
            .min()
            .unwrap_or(self.geometry.ambient_dim() + 1)
    }

    pub fn euler_integral(&self) -> Result<i64> {
        arith::dot(
            self.geometry
                .strata()
                .iter()
                .map(|s| s.chi_c)
                .zip(self.values.iter().copied()),
        )
    }

    /// Expansion `ξ = Σ_V c(V) · Eu_{closure(V)}`, by back substitution
    /// against the Euler obstruction matrix.
    pub fn eu_coefficients(&self) -> Result<EuCoefficients> {
        let g = &self.geometry;
        let eu = euler_obstruction_matrix(g)?;
        let n = g.len();
        let mut coeffs = vec![0i64; n];
        for s in (0..n).rev() {
            let mut acc = self.values[s];
            for v in g.above(s) {
                acc = arith::sub(acc, arith::mul(eu.entry(s, v), coeffs[v])?)?;
            }
            coeffs[s] = acc;
        }
        Ok(EuCoefficients {
            geometry: g.clone(),
            coeffs,
        })
    }

    /// The same expansion read off the link data directly:
    /// `c(S) = ξ(S) − Σ_{U > S} links(S, U) · ξ(U)`, and `c(S) = ξ(S)` on
    /// open strata.
    pub fn eu_coefficients_by_links(&self) -> Result<EuCoefficients> {
        let g = &self.geometry;
        g.check_order()?;
        let coeffs = (0..g.len())
            .map(|s| {
                let mut acc = self.values[s];
                for u in g.above(s) {
                    acc = arith::sub(acc, arith::mul(g.link(s, u)?, self.values[u])?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EuCoefficients {
            geometry: g.clone(),
            coeffs,
        })
    }
}

/// `Σ n_j · ξ_j` on `geometry`; the empty sum is the zero function.
pub fn linear_combine(
    geometry: Arc<StratifiedGeometry>,
    terms: &[(i64, &ConstructibleFunction)],
) -> Result<ConstructibleFunction> {
    let mut out = ConstructibleFunction::zero(geometry);
    for (n, f) in terms {
        if !same_geometry(&out.geometry, &f.geometry) {
            return Err(Error::GeometryMismatch);
        }
        for (acc, &v) in out.values.iter_mut().zip(&f.values) {
            *acc = arith::add(*acc, arith::mul(*n, v)?)?;
        }
    }
    Ok(out)
}

pub fn pointwise_multiply(
    a: &ConstructibleFunction,
    b: &ConstructibleFunction,
) -> Result<ConstructibleFunction> {
    if !same_geometry(&a.geometry, &b.geometry) {
        return Err(Error::GeometryMismatch);
    }
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&x, &y)| arith::mul(x, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(a.with_values(values))
}

/// Coefficients of a constructible function in the basis of Euler
/// obstructions of stratum closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuCoefficients {
    geometry: Arc<StratifiedGeometry>,
    coeffs: Vec<i64>,
}

impl EuCoefficients {
    pub fn zero(geometry: Arc<StratifiedGeometry>) -> Self {
        let coeffs = vec![0; geometry.len()];
        EuCoefficients { geometry, coeffs }
    }

    /// Coefficients by stratum name; omitted strata are zero.
    pub fn from_pairs<'a, I>(geometry: Arc<StratifiedGeometry>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let mut c = Self::zero(geometry);
        for (name, v) in pairs {
            let i = c.geometry.index_of(name)?;
            c.coeffs[i] = arith::add(c.coeffs[i], v)?;
        }
        Ok(c)
    }

    pub fn geometry(&self) -> &Arc<StratifiedGeometry> {
        &self.geometry
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn at(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn get(&self, s: &str) -> Result<i64> {
        Ok(self.coeffs[self.geometry.index_of(s)?])
    }

    /// Nonzero `(stratum index, coefficient)` in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
    }

    /// `ξ(S) = Σ_{V ≥ S} c(V) · Eu_{closure(V)}(S)`.
    pub fn to_function(&self) -> Result<ConstructibleFunction> {
        let g = &self.geometry;
        let eu = euler_obstruction_matrix(g)?;
        let values = (0..g.len())
            .map(|s| arith::dot(g.star(s).map(|v| (self.coeffs[v], eu.entry(s, v)))))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleFunction::from_values(g.clone(), values)
    }
}
