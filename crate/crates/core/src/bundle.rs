//! The JSON bundle format.
//!
//! A bundle is one JSON object with the lists `geometries`, `functions`,
//! `maps`, `simplicial_models` and `simplicial_maps`; every list may be
//! omitted. Cross references are by name. [`serialize_bundle`] writes the
//! canonical form: sorted keys, named objects sorted by name, strata and
//! table entries in canonical stratum order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::ConstructibleFunction;
use crate::geometry::{GeometryBuilder, StratifiedGeometry, StratumId};
use crate::oracle::{SimplicialMap, SimplicialModel};
use crate::pushforward::{MapDiscriminants, StratifiedMap};

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    #[serde(default)]
    geometries: Vec<RawGeometry>,
    #[serde(default)]
    functions: Vec<RawFunction>,
    #[serde(default)]
    maps: Vec<RawMap>,
    #[serde(default)]
    simplicial_models: Vec<RawModel>,
    #[serde(default)]
    simplicial_maps: Vec<RawSimplicialMap>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    name: String,
    ambient_dim: u32,
    strata: Vec<RawStratum>,
    #[serde(default)]
    order: Vec<(String, String)>,
    #[serde(default)]
    links: Vec<RawLink>,
    #[serde(default)]
    polar: Vec<RawPolar>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStratum {
    id: String,
    dim: u32,
    chi_c: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    lower: String,
    upper: String,
    value: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolar {
    lower: String,
    upper: String,
    multiplicities: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    name: String,
    geometry: String,
    values: BTreeMap<String, i64>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    source: String,
    target: String,
    fiber_chi: Vec<RawFiber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map_discriminant_annotation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiber {
    target: String,
    source: String,
    value: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: String,
    geometry_ref: String,
    vertices: Vec<String>,
    simplices: Vec<Vec<String>>,
    labels: Vec<RawLabel>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    simplex: Vec<String>,
    stratum: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimplicialMap {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map_ref: Option<String>,
    source_model: String,
    target_model: String,
    vertex_map: BTreeMap<String, String>,
}

/// A named constructible function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFunction {
    pub name: String,
    pub function: ConstructibleFunction,
    pub notes: Vec<String>,
}

/// A named simplicial model with free-form notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedModel {
    pub model: SimplicialModel,
    pub notes: Vec<String>,
}

/// Every object of a bundle file, with references resolved.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bundle {
    pub geometries: Vec<Arc<StratifiedGeometry>>,
    pub functions: Vec<NamedFunction>,
    pub maps: Vec<StratifiedMap>,
    pub simplicial_models: Vec<NamedModel>,
    pub simplicial_maps: Vec<SimplicialMap>,
}

fn not_found(kind: &'static str, name: &str) -> Error {
    Error::NotFound {
        kind,
        name: name.to_owned(),
    }
}

impl Bundle {
    pub fn geometry(&self, name: &str) -> Result<&Arc<StratifiedGeometry>> {
        self.geometries
            .iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| not_found("geometry", name))
    }

    pub fn function(&self, name: &str) -> Result<&ConstructibleFunction> {
        self.functions
            .iter()
            .find(|f| f.name == name)
            .map(|f| &f.function)
            .ok_or_else(|| not_found("function", name))
    }

    pub fn map(&self, name: &str) -> Result<&StratifiedMap> {
        self.maps
            .iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| not_found("map", name))
    }

    pub fn model(&self, name: &str) -> Result<&SimplicialModel> {
        self.simplicial_models
            .iter()
            .map(|m| &m.model)
            .find(|m| m.name() == name)
            .ok_or_else(|| not_found("simplicial model", name))
    }

    /// Simplicial maps whose source or target is the model `name`.
    pub fn simplicial_maps_of(&self, name: &str) -> impl Iterator<Item = &SimplicialMap> + '_ {
        let name = name.to_owned();
        self.simplicial_maps
            .iter()
            .filter(move |m| m.source_model == name || m.target_model == name)
    }
}

fn parse_error(location: impl Into<String>, message: impl ToString) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.to_string(),
    }
}

fn unique<'a>(kind: &str, names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(parse_error(format!("{kind}[{n}]"), format!("duplicate {kind} name")));
        }
    }
    Ok(())
}

/// Reads a bundle. Syntax errors carry a line and column; semantic errors
/// name the offending object.
pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let raw: RawBundle = serde_json::from_str(text).map_err(|e| {
        parse_error(format!("line {}, column {}", e.line(), e.column()), e)
    })?;

    unique("geometries", raw.geometries.iter().map(|g| g.name.as_str()))?;
    unique("functions", raw.functions.iter().map(|f| f.name.as_str()))?;
    unique("maps", raw.maps.iter().map(|m| m.name.as_str()))?;
    unique("simplicial_models", raw.simplicial_models.iter().map(|m| m.name.as_str()))?;
    unique("simplicial_maps", raw.simplicial_maps.iter().map(|m| m.name.as_str()))?;

    let mut bundle = Bundle::default();
    for rg in raw.geometries {
        let loc = format!("geometries[{}]", rg.name);
        let mut b = GeometryBuilder::new(rg.name, rg.ambient_dim);
        for s in &rg.strata {
            b = b.stratum(&s.id, s.dim, s.chi_c);
        }
        for (lo, up) in &rg.order {
            b = b.le(lo, up);
        }
        for l in &rg.links {
            b = b.link(&l.lower, &l.upper, l.value);
        }
        for p in &rg.polar {
            b = b.polar(&p.lower, &p.upper, &p.multiplicities);
        }
        for n in rg.notes {
            b = b.note(n);
        }
        bundle.geometries.push(Arc::new(b.build().map_err(|e| parse_error(&loc, e))?));
    }

    let resolve = |geometries: &[Arc<StratifiedGeometry>], name: &str| {
        geometries
            .iter()
            .find(|g| g.name() == name)
            .cloned()
            .ok_or_else(|| Error::DanglingReference(name.to_owned()))
    };

    for rf in raw.functions {
        let g = resolve(&bundle.geometries, &rf.geometry)?;
        let function =
            ConstructibleFunction::from_pairs(g, rf.values.iter().map(|(k, &v)| (k.as_str(), v)))
                .map_err(|e| parse_error(format!("functions[{}]", rf.name), e))?;
        bundle.functions.push(NamedFunction {
            name: rf.name,
            function,
            notes: rf.notes,
        });
    }

    for rm in raw.maps {
        let loc = format!("maps[{}]", rm.name);
        let source = resolve(&bundle.geometries, &rm.source)?;
        let target = resolve(&bundle.geometries, &rm.target)?;
        let entries: Vec<(&str, &str, i64)> = rm
            .fiber_chi
            .iter()
            .map(|f| (f.target.as_str(), f.source.as_str(), f.value))
            .collect();
        let mut m = StratifiedMap::from_entries(rm.name.clone(), source, target.clone(), &entries)
            .map_err(|e| parse_error(&loc, e))?
            .with_notes(rm.notes);
        if let Some(ann) = rm.map_discriminant_annotation {
            let mut declared = MapDiscriminants::new();
            for (i, strata) in ann {
                let i: u32 = i
                    .parse()
                    .map_err(|_| parse_error(&loc, format!("annotation key `{i}` is not an index")))?;
                let mut set = BTreeSet::new();
                for s in strata {
                    target.index_of(&s).map_err(|e| parse_error(&loc, e))?;
                    set.insert(StratumId::new(s));
                }
                declared.insert(i, set);
            }
            m = m.with_annotation(declared);
        }
        bundle.maps.push(m);
    }

    for rm in raw.simplicial_models {
        let loc = format!("simplicial_models[{}]", rm.name);
        let g = resolve(&bundle.geometries, &rm.geometry_ref)?;
        for l in &rm.labels {
            g.index_of(&l.stratum).map_err(|e| parse_error(&loc, e))?;
        }
        let labels: Vec<_> = rm
            .labels
            .into_iter()
            .map(|l| (l.simplex, l.stratum))
            .collect();
        let model = SimplicialModel::new(rm.name, rm.geometry_ref, rm.vertices, &rm.simplices, &labels)
            .map_err(|e| parse_error(&loc, e))?;
        bundle.simplicial_models.push(NamedModel {
            model,
            notes: rm.notes,
        });
    }

    for rs in raw.simplicial_maps {
        for model in [&rs.source_model, &rs.target_model] {
            if bundle.model(model).is_err() {
                return Err(Error::DanglingReference(model.clone()));
            }
        }
        if let Some(m) = &rs.map_ref {
            if bundle.map(m).is_err() {
                return Err(Error::DanglingReference(m.clone()));
            }
        }
        bundle.simplicial_maps.push(SimplicialMap {
            name: rs.name,
            map_ref: rs.map_ref,
            source_model: rs.source_model,
            target_model: rs.target_model,
            vertex_map: rs.vertex_map,
        });
    }
    Ok(bundle)
}

fn raw_geometry(g: &StratifiedGeometry) -> RawGeometry {
    let id = |i: usize| g.id(i).to_string();
    RawGeometry {
        name: g.name().to_owned(),
        ambient_dim: g.ambient_dim(),
        strata: g
            .strata()
            .iter()
            .map(|s| RawStratum {
                id: s.id.to_string(),
                dim: s.dim,
                chi_c: s.chi_c,
            })
            .collect(),
        order: g.declared_order().map(|(a, b)| (id(a), id(b))).collect(),
        links: g
            .links()
            .map(|((a, b), value)| RawLink {
                lower: id(a),
                upper: id(b),
                value,
            })
            .collect(),
        polar: g
            .polars()
            .map(|((a, b), m)| RawPolar {
                lower: id(a),
                upper: id(b),
                multiplicities: m.to_vec(),
            })
            .collect(),
        notes: g.notes().to_vec(),
    }
}

fn raw_map(m: &StratifiedMap) -> RawMap {
    let (src, tgt) = (m.source(), m.target());
    let mut fiber_chi = Vec::new();
    for t in 0..tgt.len() {
        for w in 0..src.len() {
            fiber_chi.push(RawFiber {
                target: tgt.id(t).to_string(),
                source: src.id(w).to_string(),
                value: m.fiber_chi(t, w),
            });
        }
    }
    RawMap {
        name: m.name().to_owned(),
        source: src.name().to_owned(),
        target: tgt.name().to_owned(),
        fiber_chi,
        map_discriminant_annotation: m.annotation().map(|a| {
            a.iter()
                .map(|(i, set)| (i.to_string(), set.iter().map(|s| s.to_string()).collect()))
                .collect()
        }),
        notes: m.notes().to_vec(),
    }
}

fn raw_model(m: &NamedModel) -> RawModel {
    let mut vertices = m.model.vertices().to_vec();
    vertices.sort();
    let mut labeled: Vec<(Vec<String>, String)> = m
        .model
        .simplices()
        .into_iter()
        .map(|(mut s, l)| {
            s.sort();
            (s, l.to_string())
        })
        .collect();
    labeled.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    RawModel {
        name: m.model.name().to_owned(),
        geometry_ref: m.model.geometry_ref().to_owned(),
        vertices,
        simplices: labeled.iter().map(|(s, _)| s.clone()).collect(),
        labels: labeled
            .into_iter()
            .map(|(simplex, stratum)| RawLabel { simplex, stratum })
            .collect(),
        notes: m.notes.clone(),
    }
}

/// Canonical JSON text of a bundle, terminated by a newline.
pub fn serialize_bundle(bundle: &Bundle) -> String {
    let mut raw = RawBundle {
        geometries: bundle.geometries.iter().map(|g| raw_geometry(g)).collect(),
        functions: bundle
            .functions
            .iter()
            .map(|f| RawFunction {
                name: f.name.clone(),
                geometry: f.function.geometry().name().to_owned(),
                values: f.function.iter().map(|(s, v)| (s.to_string(), v)).collect(),
                notes: f.notes.clone(),
            })
            .collect(),
        maps: bundle.maps.iter().map(raw_map).collect(),
        simplicial_models: bundle.simplicial_models.iter().map(raw_model).collect(),
        simplicial_maps: bundle
            .simplicial_maps
            .iter()
            .map(|m| RawSimplicialMap {
                name: m.name.clone(),
                map_ref: m.map_ref.clone(),
                source_model: m.source_model.clone(),
                target_model: m.target_model.clone(),
                vertex_map: m.vertex_map.clone(),
            })
            .collect(),
    };
    raw.geometries.sort_by(|a, b| a.name.cmp(&b.name));
    raw.functions.sort_by(|a, b| a.name.cmp(&b.name));
    raw.maps.sort_by(|a, b| a.name.cmp(&b.name));
    raw.simplicial_models.sort_by(|a, b| a.name.cmp(&b.name));
    raw.simplicial_maps.sort_by(|a, b| a.name.cmp(&b.name));

    // Going through `Value` sorts object keys.
    let value = serde_json::to_value(&raw).expect("bundle serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("bundle serializes");
    text.push('\n');
    text
}

/// `serialize_bundle(parse_bundle(text))`.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(serialize_bundle(&parse_bundle(text)?))
}
