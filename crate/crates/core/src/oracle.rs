//! Brute-force Euler characteristics on labeled simplicial complexes.
//!
//! This is an independent check on the declared `chi_c` of strata and the
//! declared fiber data of maps. It only counts simplices; it shares no code
//! with the link/polar calculus.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geometry::{StratifiedGeometry, StratumId};
use crate::pushforward::StratifiedMap;

/// A finite simplicial complex whose open simplices are labeled by strata
/// of a geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialModel {
    name: String,
    geometry_ref: String,
    vertices: Vec<String>,
    /// Sorted vertex indices, each simplex listed once.
    simplices: BTreeMap<Vec<usize>, StratumId>,
}

impl SimplicialModel {
    /// `labels` pairs every listed simplex with its stratum. Every face of a
    /// listed simplex must itself be listed.
    pub fn new(
        name: impl Into<String>,
        geometry_ref: impl Into<String>,
        vertices: Vec<String>,
        simplices: &[Vec<String>],
        labels: &[(Vec<String>, String)],
    ) -> Result<Self> {
        let name = name.into();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidModel(format!("{name}: duplicate vertex")));
        }
        let key = |s: &[String]| -> Result<Vec<usize>> {
            let mut k = s
                .iter()
                .map(|v| {
                    index
                        .get(v.as_str())
                        .copied()
                        .ok_or_else(|| Error::InvalidModel(format!("{name}: unknown vertex `{v}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            k.sort_unstable();
            if k.is_empty() || k.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidModel(format!("{name}: malformed simplex {s:?}")));
            }
            Ok(k)
        };

        let listed: BTreeSet<Vec<usize>> =
            simplices.iter().map(|s| key(s)).collect::<Result<_>>()?;
        for s in &listed {
            for skip in 0..s.len() {
                if s.len() == 1 {
                    break;
                }
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if !listed.contains(&face) {
                    return Err(Error::InvalidModel(format!(
                        "{name}: face {:?} of {:?} is not listed",
                        names(&vertices, &face),
                        names(&vertices, s)
                    )));
                }
            }
        }
        for v in 0..vertices.len() {
            if !listed.contains(&vec![v]) {
                return Err(Error::InvalidModel(format!(
                    "{name}: vertex `{}` is not listed as a simplex",
                    vertices[v]
                )));
            }
        }

        let mut labeled = BTreeMap::new();
        for (s, stratum) in labels {
            let k = key(s)?;
            if !listed.contains(&k) {
                return Err(Error::InvalidModel(format!("{name}: label on unlisted simplex {s:?}")));
            }
            if labeled.insert(k, StratumId::new(stratum.as_str())).is_some() {
                return Err(Error::InvalidModel(format!("{name}: simplex {s:?} labeled twice")));
            }
        }
        if let Some(missing) = listed.iter().find(|s| !labeled.contains_key(*s)) {
            return Err(Error::InvalidModel(format!(
                "{name}: simplex {:?} has no label",
                names(&vertices, missing)
            )));
        }

        Ok(SimplicialModel {
            name,
            geometry_ref: geometry_ref.into(),
            vertices,
            simplices: labeled,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn geometry_ref(&self) -> &str {
        &self.geometry_ref
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// `(vertex names, label)` for every simplex, by dimension then vertices.
    pub fn simplices(&self) -> Vec<(Vec<String>, &StratumId)> {
        let mut out: Vec<_> = self
            .simplices
            .iter()
            .map(|(k, l)| (names(&self.vertices, k), l))
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::InvalidModel(format!("{}: unknown vertex `{v}`", self.name)))
    }

    /// Stratum labels that occur, sorted by name.
    pub fn labels(&self) -> BTreeSet<&StratumId> {
        self.simplices.values().collect()
    }

    pub fn label_of_vertex(&self, v: usize) -> &StratumId {
        &self.simplices[&vec![v]]
    }

    /// `Σ (−1)^{dim σ}` over open simplices `σ` accepted by `keep`, grouped by
    /// label.
    fn chi_where(&self, keep: impl Fn(&[usize]) -> bool) -> BTreeMap<StratumId, i64> {
        let mut out = BTreeMap::new();
        for (s, label) in &self.simplices {
            if keep(s) {
                let sign = if (s.len() - 1) % 2 == 0 { 1 } else { -1 };
                *out.entry(label.clone()).or_insert(0) += sign;
            }
        }
        out
    }
}

fn names(vertices: &[String], key: &[usize]) -> Vec<String> {
    key.iter().map(|&i| vertices[i].clone()).collect()
}

/// `χ_c` of the union of open simplices labeled `s`.
pub fn oracle_chi(model: &SimplicialModel, s: &str) -> i64 {
    model
        .chi_where(|_| true)
        .get(&StratumId::from(s))
        .copied()
        .unwrap_or(0)
}

/// A vertex map between two simplicial models, optionally modeling a
/// declared [`StratifiedMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub name: String,
    pub map_ref: Option<String>,
    pub source_model: String,
    pub target_model: String,
    pub vertex_map: BTreeMap<String, String>,
}

/// Fails with [`Error::NotSimplicial`] unless every source simplex maps onto
/// a target simplex. Returns the vertex map in indices.
fn check_simplicial(
    source: &SimplicialModel,
    target: &SimplicialModel,
    vertex_map: &BTreeMap<String, String>,
) -> Result<Vec<usize>> {
    let image = source
        .vertices
        .iter()
        .map(|v| {
            let w = vertex_map
                .get(v)
                .ok_or_else(|| Error::InvalidModel(format!("vertex `{v}` has no image")))?;
            target.vertex_index(w)
        })
        .collect::<Result<Vec<_>>>()?;
    for s in source.simplices.keys() {
        let mut img: Vec<usize> = s.iter().map(|&v| image[v]).collect();
        img.sort_unstable();
        img.dedup();
        if !target.simplices.contains_key(&img) {
            return Err(Error::NotSimplicial(names(&source.vertices, s)));
        }
    }
    Ok(image)
}

/// `χ_c(f^{-1}(v) ∩ W)` for every source label `W`. The preimage of a
/// vertex is the full subcomplex on the vertices sent to it.
pub fn oracle_pushforward_at_vertex(
    source: &SimplicialModel,
    target: &SimplicialModel,
    vertex_map: &BTreeMap<String, String>,
    v: &str,
) -> Result<BTreeMap<StratumId, i64>> {
    let image = check_simplicial(source, target, vertex_map)?;
    let v = target.vertex_index(v)?;
    Ok(source.chi_where(|s| s.iter().all(|&x| image[x] == v)))
}

/// One oracle value set against its declared counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub key: String,
    pub oracle: i64,
    pub declared: i64,
}

impl Comparison {
    pub fn matches(&self) -> bool {
        self.oracle == self.declared
    }
}

/// Oracle `χ_c` against declared `chi_c` for every label of the model.
pub fn compare_chi(model: &SimplicialModel, g: &StratifiedGeometry) -> Result<Vec<Comparison>> {
    let chi = model.chi_where(|_| true);
    chi.into_iter()
        .map(|(s, oracle)| {
            let i = g.index_of(s.as_str())?;
            Ok(Comparison {
                key: format!("chi_c.{s}"),
                oracle,
                declared: g.stratum(i).chi_c,
            })
        })
        .collect()
}

/// Oracle fiber Euler characteristics over every target vertex against the
/// declared `fiber_chi` of `map` at the vertex's stratum.
pub fn compare_fibers(
    smap: &SimplicialMap,
    source: &SimplicialModel,
    target: &SimplicialModel,
    map: &StratifiedMap,
) -> Result<Vec<Comparison>> {
    check_simplicial(source, target, &smap.vertex_map)?;
    let mut out = Vec::new();
    for (vi, v) in target.vertices.iter().enumerate() {
        let t = target.label_of_vertex(vi);
        let found = oracle_pushforward_at_vertex(source, target, &smap.vertex_map, v)?;
        for w in map.source().strata() {
            out.push(Comparison {
                key: format!("fiber_chi.{v}.{t}.{}", w.id),
                oracle: found.get(&w.id).copied().unwrap_or(0),
                declared: map.fiber_chi_by_name(t.as_str(), w.id.as_str())?,
            });
        }
    }
    Ok(out)
}
