//! Stratified geometries as finite combinatorial data.
//!
//! A [`StratifiedGeometry`] records a Whitney stratification of a smooth
//! ambient space by its strata (dimension and compactly supported Euler
//! characteristic), the closure order, the Euler characteristic of the
//! complex link of every stratum in every stratum above it, and the
//! normal-slice polar multiplicities of every stratum closure along every
//! smaller stratum. Everything downstream is computed from this data.
//!
//! Strata are kept in canonical order: descending codimension, then name.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Name of a stratum, unique within its geometry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StratumId(String);

impl StratumId {
    pub fn new(name: impl Into<String>) -> Self {
        StratumId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StratumId {
    fn from(s: &str) -> Self {
        StratumId(s.to_owned())
    }
}

impl AsRef<str> for StratumId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub id: StratumId,
    /// Complex dimension.
    pub dim: u32,
    /// Compactly supported Euler characteristic.
    pub chi_c: i64,
}

/// A violated invariant. Diagnostics are data: validation never fails.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub strata: Vec<StratumId>,
    pub code: &'static str,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &'static str, strata: Vec<StratumId>, message: impl Into<String>) -> Self {
        Diagnostic {
            strata,
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.code, self.message)
    }
}

/// Incremental constructor for [`StratifiedGeometry`].
#[derive(Debug, Clone, Default)]
pub struct GeometryBuilder {
    name: String,
    ambient_dim: u32,
    strata: Vec<Stratum>,
    order: Vec<(String, String)>,
    links: Vec<(String, String, i64)>,
    polar: Vec<(String, String, Vec<i64>)>,
    notes: Vec<String>,
}

impl GeometryBuilder {
    pub fn new(name: impl Into<String>, ambient_dim: u32) -> Self {
        GeometryBuilder {
            name: name.into(),
            ambient_dim,
            ..Default::default()
        }
    }

    pub fn stratum(mut self, id: &str, dim: u32, chi_c: i64) -> Self {
        self.strata.push(Stratum {
            id: id.into(),
            dim,
            chi_c,
        });
        self
    }

    /// Declares `lower ⊆ closure(upper)`.
    pub fn le(mut self, lower: &str, upper: &str) -> Self {
        self.order.push((lower.to_owned(), upper.to_owned()));
        self
    }

    pub fn link(mut self, lower: &str, upper: &str, chi: i64) -> Self {
        self.links.push((lower.to_owned(), upper.to_owned(), chi));
        self
    }

    pub fn polar(mut self, lower: &str, upper: &str, multiplicities: &[i64]) -> Self {
        self.polar
            .push((lower.to_owned(), upper.to_owned(), multiplicities.to_vec()));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Builds the geometry. Only structural problems (empty or duplicate
    /// names, references to unknown strata, duplicate entries) are errors;
    /// everything else is left to [`StratifiedGeometry::validate`].
    pub fn build(self) -> Result<StratifiedGeometry> {
        if self.name.is_empty() {
            return Err(Error::InvalidGeometry("empty geometry name".into()));
        }
        let mut strata = self.strata;
        strata.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.id.cmp(&b.id)));

        let mut index = BTreeMap::new();
        for (i, s) in strata.iter().enumerate() {
            if s.id.as_str().is_empty() {
                return Err(Error::InvalidGeometry("empty stratum id".into()));
            }
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate stratum `{}`", s.id)));
            }
        }
        let lookup = |name: &str| -> Result<usize> {
            index
                .get(&StratumId::from(name))
                .copied()
                .ok_or_else(|| Error::UnknownStratum(name.to_owned()))
        };

        let mut declared = BTreeSet::new();
        for (a, b) in &self.order {
            declared.insert((lookup(a)?, lookup(b)?));
        }

        let mut links = BTreeMap::new();
        for (a, b, v) in &self.links {
            if links.insert((lookup(a)?, lookup(b)?), *v).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate link entry ({a}, {b})")));
            }
        }
        let mut polar = BTreeMap::new();
        for (a, b, m) in self.polar {
            let key = (lookup(&a)?, lookup(&b)?);
            if polar.insert(key, m).is_some() {
                return Err(Error::InvalidGeometry(format!("duplicate polar entry ({a}, {b})")));
            }
        }

        let n = strata.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &declared {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }

        Ok(StratifiedGeometry {
            name: self.name,
            ambient_dim: self.ambient_dim,
            strata,
            index,
            declared,
            le,
            links,
            polar,
            notes: self.notes,
        })
    }
}

/// A finite stratified geometry. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedGeometry {
    name: String,
    ambient_dim: u32,
    strata: Vec<Stratum>,
    index: BTreeMap<StratumId, usize>,
    declared: BTreeSet<(usize, usize)>,
    /// Reflexive-transitive closure of the declared order.
    le: Vec<Vec<bool>>,
    links: BTreeMap<(usize, usize), i64>,
    polar: BTreeMap<(usize, usize), Vec<i64>>,
    notes: Vec<String>,
}

impl StratifiedGeometry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    /// Strata in canonical order.
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(&StratumId::from(id))
            .copied()
            .ok_or_else(|| Error::UnknownStratum(id.to_owned()))
    }

    pub fn stratum(&self, i: usize) -> &Stratum {
        &self.strata[i]
    }

    pub fn id(&self, i: usize) -> &StratumId {
        &self.strata[i].id
    }

    pub fn dim(&self, i: usize) -> u32 {
        self.strata[i].dim
    }

    /// Codimension in the ambient space (saturating at zero for malformed
    /// strata whose dimension exceeds the ambient one).
    pub fn codim(&self, i: usize) -> u32 {
        self.ambient_dim.saturating_sub(self.strata[i].dim)
    }

    pub fn is_open(&self, i: usize) -> bool {
        self.strata[i].dim == self.ambient_dim
    }

    /// `a ⊆ closure(b)`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    /// Strata strictly above `i`, in canonical order.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.lt(i, j))
    }

    /// Strata `j` with `i ≤ j`, in canonical order.
    pub fn star(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.le[i][j])
    }

    pub fn declared_order(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.declared.iter().copied()
    }

    pub fn links(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.links.iter().map(|(&k, &v)| (k, v))
    }

    pub fn polars(&self) -> impl Iterator<Item = ((usize, usize), &[i64])> + '_ {
        self.polar.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn link(&self, lower: usize, upper: usize) -> Result<i64> {
        self.links
            .get(&(lower, upper))
            .copied()
            .ok_or_else(|| Error::MissingLink {
                lower: self.id(lower).to_string(),
                upper: self.id(upper).to_string(),
            })
    }

    /// Normal-slice polar multiplicities `[m_0, …, m_d]` of `closure(upper)`
    /// at a generic point of `lower`, with `d = dim upper − dim lower`.
    pub fn polar(&self, lower: usize, upper: usize) -> Result<&[i64]> {
        let m = self
            .polar
            .get(&(lower, upper))
            .ok_or_else(|| Error::MissingPolar {
                lower: self.id(lower).to_string(),
                upper: self.id(upper).to_string(),
            })?;
        let expected = self.relative_dim(lower, upper) as usize + 1;
        if m.len() != expected {
            return Err(Error::MalformedPolar {
                lower: self.id(lower).to_string(),
                upper: self.id(upper).to_string(),
                expected,
                found: m.len(),
            });
        }
        Ok(m)
    }

    /// `dim upper − dim lower`, saturating.
    pub fn relative_dim(&self, lower: usize, upper: usize) -> u32 {
        self.dim(upper).saturating_sub(self.dim(lower))
    }

    /// Fails unless the closure order is antisymmetric and strictly
    /// increases dimension.
    pub fn check_order(&self) -> Result<()> {
        for a in 0..self.len() {
            for b in self.above(a) {
                if self.le[b][a] || self.dim(a) >= self.dim(b) {
                    return Err(Error::InvalidOrder);
                }
            }
        }
        Ok(())
    }

    /// Checks every invariant of the data model. The result is ordered by
    /// stratum name.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let ids = |v: &[usize]| v.iter().map(|&i| self.id(i).clone()).collect::<Vec<_>>();

        for (i, s) in self.strata.iter().enumerate() {
            if s.dim > self.ambient_dim {
                out.push(Diagnostic::new(
                    "stratum-dim",
                    ids(&[i]),
                    format!(
                        "stratum {} has dim {} > ambient_dim {}",
                        s.id, s.dim, self.ambient_dim
                    ),
                ));
            }
        }

        let mut order_ok = true;
        for a in 0..self.len() {
            for b in self.above(a) {
                if self.le[b][a] {
                    order_ok = false;
                    if a < b {
                        out.push(Diagnostic::new(
                            "order-antisymmetry",
                            ids(&[a, b]),
                            format!("{} and {} lie in each other's closure", self.id(a), self.id(b)),
                        ));
                    }
                } else if self.dim(a) >= self.dim(b) {
                    order_ok = false;
                    out.push(Diagnostic::new(
                        "order-dim",
                        ids(&[a, b]),
                        format!(
                            "{} < {} but dim {} >= dim {}",
                            self.id(a),
                            self.id(b),
                            self.dim(a),
                            self.dim(b)
                        ),
                    ));
                }
                if self.is_open(a) {
                    out.push(Diagnostic::new(
                        "open-not-maximal",
                        ids(&[a, b]),
                        format!("open stratum {} lies below {}", self.id(a), self.id(b)),
                    ));
                }
            }
        }

        let mut links_ok = true;
        for a in 0..self.len() {
            for b in self.above(a) {
                if !self.links.contains_key(&(a, b)) {
                    links_ok = false;
                    out.push(Diagnostic::new(
                        "missing-link",
                        ids(&[a, b]),
                        format!("no link entry for ({}, {})", self.id(a), self.id(b)),
                    ));
                }
                match self.polar.get(&(a, b)) {
                    None => out.push(Diagnostic::new(
                        "missing-polar",
                        ids(&[a, b]),
                        format!("no polar entry for ({}, {})", self.id(a), self.id(b)),
                    )),
                    Some(m) => {
                        let expected = self.relative_dim(a, b) as usize + 1;
                        if m.len() != expected {
                            out.push(Diagnostic::new(
                                "polar-length",
                                ids(&[a, b]),
                                format!(
                                    "polar entry for ({}, {}) has length {} ≠ {}",
                                    self.id(a),
                                    self.id(b),
                                    m.len(),
                                    expected
                                ),
                            ));
                        } else if m[0] != 0 {
                            out.push(Diagnostic::new(
                                "polar-m0",
                                ids(&[a, b]),
                                format!(
                                    "polar entry for ({}, {}) has m_0 = {} ≠ 0",
                                    self.id(a),
                                    self.id(b),
                                    m[0]
                                ),
                            ));
                        }
                    }
                }
            }
        }
        for &(a, b) in self.links.keys() {
            if !self.lt(a, b) {
                out.push(Diagnostic::new(
                    "extraneous-link",
                    ids(&[a, b]),
                    format!("link entry for non-strict pair ({}, {})", self.id(a), self.id(b)),
                ));
            }
        }
        for &(a, b) in self.polar.keys() {
            if !self.lt(a, b) {
                out.push(Diagnostic::new(
                    "extraneous-polar",
                    ids(&[a, b]),
                    format!("polar entry for non-strict pair ({}, {})", self.id(a), self.id(b)),
                ));
            }
        }

        // Eu of the smooth ambient is identically 1.
        for a in 0..self.len() {
            if self.is_open(a) || !links_ok {
                continue;
            }
            let sum = self
                .above(a)
                .try_fold(0i64, |acc, b| arith::add(acc, self.links[&(a, b)]));
            match sum {
                Ok(1) => {}
                Ok(s) => out.push(Diagnostic::new(
                    "row-sum",
                    ids(&[a]),
                    format!("row-sum at {} is {} ≠ 1", self.id(a), s),
                )),
                Err(_) => out.push(Diagnostic::new(
                    "overflow",
                    ids(&[a]),
                    format!("row-sum at {} overflows", self.id(a)),
                )),
            }
        }

        if order_ok && links_ok {
            match euler_obstruction_matrix(self) {
                Ok(eu) => {
                    for a in 0..self.len() {
                        for b in self.above(a) {
                            if let Ok(seq) = s_sequence_with(self, &eu, a, b) {
                                out.extend(seq.diagnostic);
                            }
                        }
                    }
                }
                Err(e) => out.push(Diagnostic::new(
                    "eu-matrix",
                    Vec::new(),
                    format!("Euler obstruction matrix unavailable: {e}"),
                )),
            }
        }

        out.sort();
        out
    }

    /// The geometry of the same strata sitting as the zero section of
    /// `Y × ℂ`. One new open stratum `Y × ℂ*` is added; all existing links
    /// and polar tables are kept since they do not depend on the ambient.
    pub fn embed(&self) -> StratifiedGeometry {
        let new_ambient = self.ambient_dim + 1;
        let mut outer = format!("ext{new_ambient}");
        while self.index.contains_key(&StratumId::from(outer.as_str())) {
            outer.push('_');
        }
        let outer_id = StratumId::new(outer);

        let mut b = GeometryBuilder::new(format!("{}+1", self.name), new_ambient);
        b.notes = self.notes.clone();
        b.strata = self.strata.clone();
        b.strata.push(Stratum {
            id: outer_id.clone(),
            dim: new_ambient,
            chi_c: 0,
        });
        let name = |i: usize| self.id(i).as_str().to_owned();
        b.order = self.declared.iter().map(|&(x, y)| (name(x), name(y))).collect();
        b.links = self
            .links
            .iter()
            .map(|(&(x, y), &v)| (name(x), name(y), v))
            .collect();
        b.polar = self
            .polar
            .iter()
            .map(|(&(x, y), m)| (name(x), name(y), m.clone()))
            .collect();
        for i in 0..self.len() {
            b.order.push((name(i), outer_id.to_string()));
            // The complex link of S in the smooth total space has χ = 1; the
            // part outside the old ambient carries whatever the old strata
            // above S do not.
            let inside: i64 = if self.is_open(i) { 0 } else { 1 };
            b.links.push((name(i), outer_id.to_string(), 1 - inside));
            let d = new_ambient.saturating_sub(self.dim(i)) as usize;
            let mut m = vec![0; d + 1];
            m[d] = 1;
            b.polar.push((name(i), outer_id.to_string(), m));
        }
        b.build()
            .expect("embedding preserves structural validity")
    }
}

/// `Eu_{closure(V)}` evaluated at generic points of every `S ≤ V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuMatrix {
    ids: Vec<StratumId>,
    /// `values[s][v]`, zero when `s ≰ v`.
    values: Vec<Vec<i64>>,
    comparable: Vec<Vec<bool>>,
}

impl EuMatrix {
    /// Value at indices, `None` unless `s ≤ v`.
    pub fn at(&self, s: usize, v: usize) -> Option<i64> {
        self.comparable[s][v].then(|| self.values[s][v])
    }

    /// Value by name, `None` unless `s ≤ v` or a name is unknown.
    pub fn get(&self, s: &str, v: &str) -> Option<i64> {
        let s = self.ids.iter().position(|x| x.as_str() == s)?;
        let v = self.ids.iter().position(|x| x.as_str() == v)?;
        self.at(s, v)
    }

    /// Entry with zero off the comparable pairs.
    pub(crate) fn entry(&self, s: usize, v: usize) -> i64 {
        self.values[s][v]
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Solves `Eu_{V̄}(S) = Σ_{S < U ≤ V} links(S, U) · Eu_{V̄}(U)` downward from
/// `Eu_{V̄}(V) = 1`.
pub fn euler_obstruction_matrix(g: &StratifiedGeometry) -> Result<EuMatrix> {
    g.check_order()?;
    let n = g.len();
    let mut values = vec![vec![0i64; n]; n];
    for v in 0..n {
        values[v][v] = 1;
        // Canonical order is by ascending dimension, so going backwards
        // visits every U above S before S itself.
        for s in (0..v).rev() {
            if !g.lt(s, v) {
                continue;
            }
            let mut acc = 0i64;
            for u in g.above(s).filter(|&u| g.le(u, v)) {
                acc = arith::add(acc, arith::mul(g.link(s, u)?, values[u][v])?)?;
            }
            values[s][v] = acc;
        }
    }
    Ok(EuMatrix {
        ids: g.strata.iter().map(|s| s.id.clone()).collect(),
        values,
        comparable: g.le.clone(),
    })
}

/// Euler obstructions of iterated generic hyperplane slices of `closure(V)`
/// at a generic point of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSequence {
    /// `[s_0, …, s_d]` with `s_d = 1`.
    pub values: Vec<i64>,
    /// Present when `s_{d−1} ≠ m_d`.
    pub diagnostic: Option<Diagnostic>,
}

pub fn s_sequence(g: &StratifiedGeometry, lower: &str, upper: &str) -> Result<SSequence> {
    let (s, v) = (g.index_of(lower)?, g.index_of(upper)?);
    let eu = euler_obstruction_matrix(g)?;
    s_sequence_with(g, &eu, s, v)
}

/// `s_0 = Eu(S, V)`, `s_n = s_{n−1} − (−1)^{d−n} m_n` for `1 ≤ n < d`,
/// `s_d = 1`.
pub(crate) fn s_sequence_with(
    g: &StratifiedGeometry,
    eu: &EuMatrix,
    s: usize,
    v: usize,
) -> Result<SSequence> {
    if !g.lt(s, v) {
        return Err(Error::NotComparable {
            lower: g.id(s).to_string(),
            upper: g.id(v).to_string(),
        });
    }
    let m = g.polar(s, v)?;
    let d = m.len() - 1;
    let mut values = Vec::with_capacity(d + 1);
    values.push(eu.entry(s, v));
    for n in 1..d {
        let prev = values[n - 1];
        let step = arith::mul(arith::sign((d - n) as i64), m[n])?;
        values.push(arith::sub(prev, step)?);
    }
    values.push(1);

    let diagnostic = (d >= 1 && values[d - 1] != m[d]).then(|| {
        Diagnostic::new(
            "telescoping",
            vec![g.id(s).clone(), g.id(v).clone()],
            format!(
                "s_{} = {} ≠ m_{} = {} for ({}, {})",
                d - 1,
                values[d - 1],
                d,
                m[d],
                g.id(s),
                g.id(v)
            ),
        )
    });
    Ok(SSequence { values, diagnostic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cusp_is_valid() {
        assert!(corpus::cusp().validate().is_empty());
    }

    #[test]
    fn broken_cusp_reports_row_sum() {
        let d = corpus::cusp_broken().validate();
        let row: Vec<_> = d.iter().filter(|x| x.code == "row-sum").collect();
        assert_eq!(row.len(), 1, "{d:?}");
        assert_eq!(row[0].message, "row-sum at O is 2 ≠ 1");
        // Eu of the smooth ambient at O is now 2, which the polar data contradicts.
        assert!(d.iter().all(|x| x.code == "row-sum" || x.code == "telescoping"));
    }

    #[test]
    fn point_is_valid() {
        assert!(corpus::point().validate().is_empty());
    }

    #[test]
    fn cusp_euler_obstructions() {
        let g = corpus::cusp();
        let eu = euler_obstruction_matrix(&g).unwrap();
        assert_eq!(eu.get("O", "D"), Some(2));
        assert_eq!(eu.get("D", "D"), Some(1));
        for s in ["O", "D", "U"] {
            assert_eq!(eu.get(s, "U"), Some(1));
        }
        assert_eq!(eu.get("D", "O"), None);
    }

    #[test]
    fn ypp_line_is_smooth() {
        let eu = euler_obstruction_matrix(&corpus::ypp()).unwrap();
        assert_eq!(eu.get("O", "Yp"), Some(1));
        assert_eq!(eu.get("Yp", "Yp"), Some(1));
    }

    #[test]
    fn s_sequences() {
        let cusp = corpus::cusp();
        let seq = s_sequence(&cusp, "O", "D").unwrap();
        assert_eq!(seq.values, vec![2, 1]);
        assert!(seq.diagnostic.is_none());
        assert_eq!(s_sequence(&cusp, "O", "U").unwrap().values, vec![1, 1, 1]);
        assert_eq!(s_sequence(&corpus::ypp(), "O", "Yp").unwrap().values, vec![1, 1]);
        assert!(matches!(
            s_sequence(&cusp, "D", "O"),
            Err(Error::NotComparable { .. })
        ));
    }

    #[test]
    fn telescoping_violation_is_a_diagnostic() {
        let g = GeometryBuilder::new("BAD", 1)
            .stratum("O", 0, 1)
            .stratum("L", 1, 0)
            .le("O", "L")
            .link("O", "L", 1)
            .polar("O", "L", &[0, 3])
            .build()
            .unwrap();
        let seq = s_sequence(&g, "O", "L").unwrap();
        assert!(seq.diagnostic.is_some());
        let d = g.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "telescoping");
    }

    #[test]
    fn cycles_and_dimension_violations() {
        let g = GeometryBuilder::new("CYC", 2)
            .stratum("A", 1, 0)
            .stratum("B", 1, 0)
            .stratum("U", 2, 0)
            .le("A", "B")
            .le("B", "A")
            .le("A", "U")
            .le("B", "U")
            .link("A", "U", 1)
            .link("B", "U", 1)
            .link("A", "B", 0)
            .link("B", "A", 0)
            .polar("A", "U", &[0, 1])
            .polar("B", "U", &[0, 1])
            .polar("A", "B", &[0])
            .polar("B", "A", &[0])
            .build()
            .unwrap();
        let codes: Vec<_> = g.validate().into_iter().map(|d| d.code).collect();
        assert!(codes.contains(&"order-antisymmetry"));
        assert_eq!(euler_obstruction_matrix(&g), Err(Error::InvalidOrder));
    }

    #[test]
    fn missing_entries() {
        let g = GeometryBuilder::new("M", 1)
            .stratum("O", 0, 1)
            .stratum("L", 1, 0)
            .le("O", "L")
            .build()
            .unwrap();
        let codes: Vec<_> = g.validate().into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec!["missing-link", "missing-polar"]);
        assert!(matches!(
            euler_obstruction_matrix(&g),
            Err(Error::MissingLink { .. })
        ));
    }

    #[test]
    fn structural_errors() {
        let dup = GeometryBuilder::new("D", 0)
            .stratum("p", 0, 1)
            .stratum("p", 0, 1)
            .build();
        assert!(matches!(dup, Err(Error::InvalidGeometry(_))));
        let unknown = GeometryBuilder::new("D", 0).stratum("p", 0, 1).le("p", "q").build();
        assert_eq!(unknown, Err(Error::UnknownStratum("q".into())));
    }

    #[test]
    fn canonical_order_is_descending_codim_then_name() {
        let g = corpus::ypp();
        let names: Vec<_> = g.strata().iter().map(|s| s.id.as_str()).collect();
        assert_eq!(names, vec!["O", "Yp", "U"]);
    }

    #[test]
    fn embedding_keeps_the_geometry_valid() {
        for g in corpus::all_geometries() {
            let e = g.embed();
            assert_eq!(e.ambient_dim(), g.ambient_dim() + 1);
            assert_eq!(e.len(), g.len() + 1);
            assert!(e.validate().is_empty(), "{}: {:?}", g.name(), e.validate());
            let twice = e.embed();
            assert!(twice.validate().is_empty());
            let eu = euler_obstruction_matrix(&g).unwrap();
            let eu_e = euler_obstruction_matrix(&e).unwrap();
            for s in 0..g.len() {
                for v in 0..g.len() {
                    let (si, vi) = (e.index_of(g.id(s).as_str()).unwrap(), e.index_of(g.id(v).as_str()).unwrap());
                    assert_eq!(eu.at(s, v), eu_e.at(si, vi));
                }
            }
        }
    }
}
