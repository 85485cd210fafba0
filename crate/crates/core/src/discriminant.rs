//! Higher discriminants of constructible functions and everything read off
//! the Euler-obstruction expansion: decompositions, characteristic cycles,
//! formal Chern–Schwartz–MacPherson classes and polar stalk bounds.
//!
//! All memberships are at generic points of strata. `S ∈ Δ^i(ξ)` exactly
//! when `i ≤ codim S` and `(Φ Ξ^{codim S − i} ξ)(S) ≠ 0`; the second route
//! `S ∈ Δ^{≥r}(ξ)` asks for a nonzero `(Φ Ψ^j ξ)(S)` with
//! `j ≤ codim S − r`. `Δ^0` is the whole space and is never stored.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::function::{ConstructibleFunction, EuCoefficients};
use crate::geometry::{Diagnostic, StratumId};
use crate::operators::Operators;

/// Pushes `ξ` forward along the zero section `Y ↪ Y × ℂ`. The new open
/// stratum carries the value 0.
pub fn embed(xi: &ConstructibleFunction) -> ConstructibleFunction {
    let g = xi.geometry();
    let outer = Arc::new(g.embed());
    let mut values = vec![0; outer.len()];
    for (i, s) in g.strata().iter().enumerate() {
        let j = outer
            .index_of(s.id.as_str())
            .expect("embedding keeps every stratum");
        values[j] = xi.at(i);
    }
    ConstructibleFunction::from_values(outer, values).expect("sizes agree")
}

/// Applies [`embed`] `times` times.
pub fn embed_n(xi: &ConstructibleFunction, times: u32) -> ConstructibleFunction {
    (0..times).fold(xi.clone(), |f, _| embed(&f))
}

/// Stratum-generic membership in the higher discriminants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    /// `i ↦ Δ^i(ξ)` for `1 ≤ i ≤ ambient_dim`, strata in canonical order.
    pub per_i: BTreeMap<u32, Vec<StratumId>>,
    /// `r ↦ Δ^{≥r}(ξ)`, computed through the nearby-vanishing chain.
    pub at_least: BTreeMap<u32, Vec<StratumId>>,
    /// Number of automatic embeddings applied before computing; indices are
    /// reported for the original geometry.
    pub auto_embedded: u32,
    pub diagnostics: Vec<Diagnostic>,
}

impl DiscriminantReport {
    pub fn contains(&self, i: u32, s: &str) -> bool {
        self.per_i
            .get(&i)
            .is_some_and(|v| v.iter().any(|x| x.as_str() == s))
    }
}

pub fn discriminants(xi: &ConstructibleFunction) -> Result<DiscriminantReport> {
    if xi.support_codim() == 0 {
        let mut report = discriminants(&embed(xi))?;
        report.per_i = shift_down(report.per_i);
        report.at_least = shift_down(report.at_least);
        report.auto_embedded += 1;
        return Ok(report);
    }

    let g = xi.geometry();
    let ops = Operators::new(xi)?;
    let n = g.ambient_dim();
    let mut per_i: BTreeMap<u32, Vec<StratumId>> = (1..=n).map(|i| (i, Vec::new())).collect();
    let mut at_least: BTreeMap<u32, Vec<StratumId>> = (1..=n).map(|r| (r, Vec::new())).collect();

    for s in 0..g.len() {
        let codim = g.codim(s);
        for i in 1..=codim.min(n) {
            if ops.phi_xi(s, codim - i)? != 0 {
                per_i.get_mut(&i).expect("range").push(g.id(s).clone());
            }
        }
        let chain = (0..=codim)
            .map(|j| ops.phi_psi(s, j))
            .collect::<Result<Vec<_>>>()?;
        for r in 1..=codim.min(n) {
            if chain[..=(codim - r) as usize].iter().any(|&v| v != 0) {
                at_least.get_mut(&r).expect("range").push(g.id(s).clone());
            }
        }
    }

    let mut diagnostics = Vec::new();
    for (&i, members) in &per_i {
        for s in members {
            let codim = g.codim(g.index_of(s.as_str())?);
            if codim < i {
                diagnostics.push(Diagnostic::new(
                    "dimension-estimate",
                    vec![s.clone()],
                    format!("{s} in discriminant {i} has codim {codim} < {i}"),
                ));
            }
        }
    }
    for r in 1..=n {
        let mut union: Vec<StratumId> = per_i
            .range(r..)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect();
        union.sort_by_key(|s| g.index_of(s.as_str()).unwrap_or(usize::MAX));
        union.dedup();
        if union != at_least[&r] {
            diagnostics.push(Diagnostic::new(
                "two-route",
                union.clone(),
                format!(
                    "restriction route gives {{{}}} but nearby route gives {{{}}} for r = {r}",
                    join(&union),
                    join(&at_least[&r])
                ),
            ));
        }
    }
    diagnostics.sort();

    Ok(DiscriminantReport {
        per_i,
        at_least,
        auto_embedded: 0,
        diagnostics,
    })
}

fn shift_down(m: BTreeMap<u32, Vec<StratumId>>) -> BTreeMap<u32, Vec<StratumId>> {
    m.into_iter()
        .filter(|&(i, _)| i >= 2)
        .map(|(i, v)| (i - 1, v))
        .collect()
}

fn join(v: &[StratumId]) -> String {
    v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
}

/// One term `coefficient · Eu_{closure(stratum)}` with `codim = i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub codim: u32,
    pub stratum: StratumId,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Nonzero terms in canonical stratum order.
    pub coefficients: Vec<DecompositionTerm>,
    /// The terms reproduce `ξ` exactly.
    pub residual_check: bool,
    pub diagnostics: Vec<Diagnostic>,
}

/// `ξ = Σ_{i,α} ξ^{i,α} Eu_{closure(Δ^{i,α})}`, with every coefficient
/// checked against the generic vanishing cycle and the discriminant report.
pub fn decompose(xi: &ConstructibleFunction) -> Result<Decomposition> {
    let g = xi.geometry();
    let ops = Operators::new(xi)?;
    let c = ops.coefficients().clone();
    let report = discriminants(xi)?;
    let mut diagnostics = report.diagnostics.clone();

    let mut coefficients = Vec::new();
    for (s, coeff) in c.nonzero() {
        let codim = g.codim(s);
        let id = g.id(s).clone();
        // Δ^0 is everything and the generic value there is ξ itself.
        let expected = if codim == 0 { xi.at(s) } else { ops.phi_generic(s)? };
        if expected != coeff {
            diagnostics.push(Diagnostic::new(
                "coefficient",
                vec![id.clone()],
                format!("coefficient at {id} is {coeff} but the vanishing cycle is {expected}"),
            ));
        }
        if codim > 0 && !report.contains(codim, id.as_str()) {
            diagnostics.push(Diagnostic::new(
                "support",
                vec![id.clone()],
                format!("{id} carries coefficient {coeff} but is not in discriminant {codim}"),
            ));
        }
        coefficients.push(DecompositionTerm {
            codim,
            stratum: id,
            coefficient: coeff,
        });
    }
    for (&i, members) in &report.per_i {
        for id in members {
            let s = g.index_of(id.as_str())?;
            if g.codim(s) == i && c.at(s) == 0 {
                diagnostics.push(Diagnostic::new(
                    "support",
                    vec![id.clone()],
                    format!("{id} is a codim-{i} member of discriminant {i} with zero coefficient"),
                ));
            }
        }
    }

    let residual_check = c.to_function()? == *xi;
    diagnostics.sort();
    Ok(Decomposition {
        coefficients,
        residual_check,
        diagnostics,
    })
}

/// `Σ multiplicity · [conormal variety of closure(stratum)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConormalCycle {
    pub terms: Vec<(StratumId, i64)>,
}

/// `CC(ξ) = Σ_S (−1)^{codim S} c(S) [T̄*_S Y]`.
pub fn characteristic_cycle(xi: &ConstructibleFunction) -> Result<ConormalCycle> {
    let g = xi.geometry();
    let c = xi.eu_coefficients()?;
    let terms = c
        .nonzero()
        .map(|(s, v)| Ok((g.id(s).clone(), arith::mul(arith::sign(i64::from(g.codim(s))), v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConormalCycle { terms })
}

/// `Σ coefficient · c^M(closure(stratum))`, kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalClass {
    pub terms: Vec<(StratumId, i64)>,
}

pub fn csm_formal(xi: &ConstructibleFunction) -> Result<FormalClass> {
    let g = xi.geometry();
    let c = xi.eu_coefficients()?;
    Ok(FormalClass {
        terms: c.nonzero().map(|(s, v)| (g.id(s).clone(), v)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StalkBounds {
    pub point: StratumId,
    /// `k ↦ Σ_V c(V) · m_k(S, V)` for `0 ≤ k ≤ codim S`.
    pub bounds: BTreeMap<u32, i64>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Upper bounds for `dim H^{−k}` of the stalk at `S` of a perverse object
/// whose class has Euler-obstruction coefficients `c`. The formula is applied
/// as is; negative coefficients are flagged since they cannot come from a
/// perverse sheaf.
pub fn stalk_bounds(c: &EuCoefficients, s: &str) -> Result<StalkBounds> {
    let g = c.geometry();
    let si = g.index_of(s)?;
    let codim = g.codim(si);
    let mut bounds = BTreeMap::new();
    for k in 0..=codim {
        let mut acc = if k == 0 { c.at(si) } else { 0 };
        for v in g.above(si) {
            let m = g.polar(si, v)?;
            let mk = m.get(k as usize).copied().unwrap_or(0);
            acc = arith::add(acc, arith::mul(c.at(v), mk)?)?;
        }
        bounds.insert(k, acc);
    }
    let negative: Vec<StratumId> = g
        .star(si)
        .filter(|&v| c.at(v) < 0)
        .map(|v| g.id(v).clone())
        .collect();
    let mut diagnostics = Vec::new();
    if !negative.is_empty() {
        diagnostics.push(Diagnostic::new(
            "negative-coefficient",
            negative.clone(),
            format!(
                "negative Euler obstruction coefficients at {{{}}}; bounds assume a perverse object",
                join(&negative)
            ),
        ));
    }
    Ok(StalkBounds {
        point: g.id(si).clone(),
        bounds,
        diagnostics,
    })
}

/// Euler characteristic check of the stalk complex:
/// `Σ_{k=0}^{codim S} (Φ Ψ^k ξ)(S) = ξ(S)`.
pub fn massey_chi_check(xi: &ConstructibleFunction, s: &str) -> Result<bool> {
    let g = xi.geometry();
    let si = g.index_of(s)?;
    if xi.support_codim() == 0 {
        return Err(Error::AutoEmbedRequired);
    }
    let ops = Operators::new(xi)?;
    let mut total = 0i64;
    for k in 0..=g.codim(si) {
        total = arith::add(total, ops.phi_psi(si, k)?)?;
    }
    Ok(total == xi.at(si))
}
