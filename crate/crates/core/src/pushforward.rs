//! Proper pushforward of constructible functions along maps given by fiber
//! Euler characteristics.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::arith;
use crate::discriminant::discriminants;
use crate::error::{Error, Result};
use crate::function::{same_geometry, ConstructibleFunction};
use crate::geometry::{Diagnostic, GeometryBuilder, StratifiedGeometry, StratumId};

/// Declared `Δ^i(f)` of a map, as unverified input.
pub type MapDiscriminants = BTreeMap<u32, BTreeSet<StratumId>>;

/// A proper map known through `χ_c(f^{-1}(y) ∩ W)` for `y` generic in each
/// target stratum `T` and each source stratum `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedMap {
    name: String,
    source: Arc<StratifiedGeometry>,
    target: Arc<StratifiedGeometry>,
    /// `fiber_chi[t][w]`, canonical order on both sides.
    fiber_chi: Vec<Vec<i64>>,
    annotation: Option<MapDiscriminants>,
    notes: Vec<String>,
}

impl StratifiedMap {
    /// Builds a map from `(target stratum, source stratum, χ)` entries, which
    /// must cover every pair exactly once.
    pub fn from_entries(
        name: impl Into<String>,
        source: Arc<StratifiedGeometry>,
        target: Arc<StratifiedGeometry>,
        entries: &[(&str, &str, i64)],
    ) -> Result<Self> {
        let name = name.into();
        let mut cells = vec![vec![None; source.len()]; target.len()];
        for &(t, w, v) in entries {
            let (ti, wi) = (target.index_of(t)?, source.index_of(w)?);
            if cells[ti][wi].replace(v).is_some() {
                return Err(Error::InvalidGeometry(format!(
                    "map `{name}` has two fiber_chi entries for ({t}, {w})"
                )));
            }
        }
        let fiber_chi = cells
            .into_iter()
            .enumerate()
            .map(|(ti, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(wi, v)| {
                        v.ok_or_else(|| {
                            Error::InvalidGeometry(format!(
                                "map `{name}` has no fiber_chi entry for ({}, {})",
                                target.id(ti),
                                source.id(wi)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StratifiedMap {
            name,
            source,
            target,
            fiber_chi,
            annotation: None,
            notes: Vec::new(),
        })
    }

    pub fn with_annotation(mut self, annotation: MapDiscriminants) -> Self {
        self.annotation = Some(annotation);
        self
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn identity(g: Arc<StratifiedGeometry>) -> Self {
        let n = g.len();
        let fiber_chi = (0..n)
            .map(|t| (0..n).map(|w| i64::from(t == w)).collect())
            .collect();
        StratifiedMap {
            name: format!("id_{}", g.name()),
            source: g.clone(),
            target: g,
            fiber_chi,
            annotation: None,
            notes: Vec::new(),
        }
    }

    /// The map to a point; its pushforward is the Euler integral.
    pub fn collapse(g: Arc<StratifiedGeometry>) -> Self {
        let point = Arc::new(
            GeometryBuilder::new("PT", 0)
                .stratum("pt", 0, 1)
                .build()
                .expect("point geometry"),
        );
        let row = g.strata().iter().map(|s| s.chi_c).collect();
        StratifiedMap {
            name: format!("collapse_{}", g.name()),
            source: g,
            target: point,
            fiber_chi: vec![row],
            annotation: None,
            notes: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<StratifiedGeometry> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StratifiedGeometry> {
        &self.target
    }

    pub fn annotation(&self) -> Option<&MapDiscriminants> {
        self.annotation.as_ref()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Indexed by canonical target and source order.
    pub fn fiber_chi(&self, t: usize, w: usize) -> i64 {
        self.fiber_chi[t][w]
    }

    pub fn fiber_chi_by_name(&self, t: &str, w: &str) -> Result<i64> {
        Ok(self.fiber_chi[self.target.index_of(t)?][self.source.index_of(w)?])
    }

    /// `(f_! ξ)(T) = Σ_W fiber_chi(T, W) · ξ(W)`.
    pub fn pushforward(&self, xi: &ConstructibleFunction) -> Result<ConstructibleFunction> {
        if !same_geometry(&self.source, xi.geometry()) {
            return Err(Error::GeometryMismatch);
        }
        let values = self
            .fiber_chi
            .iter()
            .map(|row| arith::dot(row.iter().copied().zip(xi.values().iter().copied())))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleFunction::from_values(self.target.clone(), values)
    }

    /// `outer ∘ self`; fiber data multiply as matrices.
    pub fn then(&self, outer: &StratifiedMap) -> Result<StratifiedMap> {
        compose(outer, self)
    }

    /// Computed discriminants of `f_! 1` that the annotation does not
    /// declare. Strata are reported per index in canonical order.
    pub fn check_discriminant_containment(&self) -> Result<Vec<Diagnostic>> {
        let declared = self
            .annotation
            .as_ref()
            .ok_or_else(|| Error::MissingAnnotation(self.name.clone()))?;
        let push = self.pushforward(&ConstructibleFunction::one(self.source.clone()))?;
        let report = discriminants(&push)?;
        let mut out = Vec::new();
        for (i, members) in &report.per_i {
            let empty = BTreeSet::new();
            let allowed = declared.get(i).unwrap_or(&empty);
            for s in members.iter().filter(|s| !allowed.contains(*s)) {
                out.push(Diagnostic::new(
                    "map-discriminant",
                    vec![s.clone()],
                    format!(
                        "{s} lies in discriminant {i} of {}_!1 but not in the declared discriminant {i} of {}",
                        self.name, self.name
                    ),
                ));
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `m2 ∘ m1`.
pub fn compose(m2: &StratifiedMap, m1: &StratifiedMap) -> Result<StratifiedMap> {
    if !same_geometry(&m1.target, &m2.source) {
        return Err(Error::GeometryMismatch);
    }
    let mid = m1.target.len();
    let fiber_chi = (0..m2.target.len())
        .map(|t| {
            (0..m1.source.len())
                .map(|w| arith::dot((0..mid).map(|u| (m2.fiber_chi[t][u], m1.fiber_chi[u][w]))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StratifiedMap {
        name: format!("{}*{}", m2.name, m1.name),
        source: m1.source.clone(),
        target: m2.target.clone(),
        fiber_chi,
        annotation: None,
        notes: Vec::new(),
    })
}

pub fn pushforward(m: &StratifiedMap, xi: &ConstructibleFunction) -> Result<ConstructibleFunction> {
    m.pushforward(xi)
}
