//! The shipped example geometries and maps, built in code.
//!
//! The JSON bundles under `corpus/` describe the same objects together with
//! the derivation of every link and polar value; the bundle tests check that
//! both descriptions agree.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::geometry::{GeometryBuilder, StratifiedGeometry, StratumId};
use crate::pushforward::{MapDiscriminants, StratifiedMap};

fn annotation(entries: &[(u32, &[&str])]) -> MapDiscriminants {
    entries
        .iter()
        .map(|&(i, strata)| {
            let set: BTreeSet<StratumId> = strata.iter().map(|&s| s.into()).collect();
            (i, set)
        })
        .collect()
}

fn build(b: GeometryBuilder) -> StratifiedGeometry {
    b.build().expect("corpus geometry is structurally valid")
}

/// A single point.
pub fn point() -> StratifiedGeometry {
    build(GeometryBuilder::new("PT", 0).stratum("pt", 0, 1))
}

/// `ℂ` stratified by the origin.
pub fn line() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("LINE", 1)
            .stratum("O", 0, 1)
            .stratum("L", 1, 0)
            .le("O", "L")
            .link("O", "L", 1)
            .polar("O", "L", &[0, 1]),
    )
}

/// Base of the conic family `xy = t z²`, stratified by `t = 0`.
pub fn node() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("NODE", 1)
            .stratum("O", 0, 1)
            .stratum("T", 1, 0)
            .le("O", "T")
            .link("O", "T", 1)
            .polar("O", "T", &[0, 1]),
    )
}

/// Total space of the conic family: a smooth surface.
pub fn node_total() -> StratifiedGeometry {
    build(GeometryBuilder::new("NODETOT", 2).stratum("X", 2, 3))
}

/// `ℂ²` stratified by the origin, the punctured line `y = 0` and the rest.
pub fn ypp() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("YPP", 2)
            .stratum("O", 0, 1)
            .stratum("Yp", 1, 0)
            .stratum("U", 2, 0)
            .le("O", "Yp")
            .le("Yp", "U")
            .le("O", "U")
            .link("O", "Yp", 1)
            .link("O", "U", 0)
            .link("Yp", "U", 1)
            .polar("O", "Yp", &[0, 1])
            .polar("O", "U", &[0, 0, 1])
            .polar("Yp", "U", &[0, 1]),
    )
}

/// `ℂ²` stratified by the blown-up point.
pub fn blowup() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("BLOWUP", 2)
            .stratum("P", 0, 1)
            .stratum("Yo", 2, 0)
            .le("P", "Yo")
            .link("P", "Yo", 1)
            .polar("P", "Yo", &[0, 0, 1]),
    )
}

/// The blow-up of `ℂ²` at a point, stratified by the exceptional curve.
pub fn blowup_total() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("BLOWUPTOT", 2)
            .stratum("E", 1, 2)
            .stratum("Xo", 2, 0)
            .le("E", "Xo")
            .link("E", "Xo", 1)
            .polar("E", "Xo", &[0, 1]),
    )
}

/// The `(a, b)` plane of the Weierstrass family `y² = x³ + ax + b`,
/// stratified by the cusp, the rest of the discriminant curve, and its
/// complement.
pub fn cusp() -> StratifiedGeometry {
    cusp_with_link(-1, "CUSP")
}

/// [`cusp`] with a corrupted link entry.
pub fn cusp_broken() -> StratifiedGeometry {
    cusp_with_link(0, "CUSP")
}

fn cusp_with_link(o_u: i64, name: &str) -> StratifiedGeometry {
    build(
        GeometryBuilder::new(name, 2)
            .stratum("O", 0, 1)
            .stratum("D", 1, 0)
            .stratum("U", 2, 0)
            .le("O", "D")
            .le("D", "U")
            .le("O", "U")
            .link("O", "D", 2)
            .link("O", "U", o_u)
            .link("D", "U", 1)
            .polar("O", "D", &[0, 2])
            .polar("O", "U", &[0, 0, 1])
            .polar("D", "U", &[0, 1]),
    )
}

/// Total space of the projective Weierstrass family: a smooth threefold.
pub fn cusp_total() -> StratifiedGeometry {
    build(GeometryBuilder::new("CUSPTOT", 3).stratum("X", 3, 2))
}

/// A smooth line `C` in `ℂ²`.
pub fn smooth_pair() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("SMOOTHPAIR", 2)
            .stratum("C", 1, 1)
            .stratum("U", 2, 0)
            .le("C", "U")
            .link("C", "U", 1)
            .polar("C", "U", &[0, 1]),
    )
}

/// `ℙ¹` stratified by its two poles.
pub fn sphere() -> StratifiedGeometry {
    build(
        GeometryBuilder::new("SPHERE", 1)
            .stratum("N", 0, 1)
            .stratum("S", 0, 1)
            .stratum("L", 1, 0)
            .le("N", "L")
            .le("S", "L")
            .link("N", "L", 1)
            .link("S", "L", 1)
            .polar("N", "L", &[0, 1])
            .polar("S", "L", &[0, 1]),
    )
}

/// Every valid corpus geometry.
pub fn all_geometries() -> Vec<StratifiedGeometry> {
    vec![
        point(),
        line(),
        node(),
        node_total(),
        ypp(),
        blowup(),
        blowup_total(),
        cusp(),
        cusp_total(),
        smooth_pair(),
        sphere(),
    ]
}

/// `z ↦ z²` on `ℂ`.
pub fn zsq() -> StratifiedMap {
    let g = Arc::new(line());
    StratifiedMap::from_entries(
        "ZSQ",
        g.clone(),
        g,
        &[("L", "L", 2), ("L", "O", 0), ("O", "L", 0), ("O", "O", 1)],
    )
    .expect("corpus map")
    .with_annotation(annotation(&[(1, &["O"])]))
}

/// The projective Weierstrass family over the `(a, b)` plane.
pub fn cuspfam() -> StratifiedMap {
    StratifiedMap::from_entries(
        "CUSPFAM",
        Arc::new(cusp_total()),
        Arc::new(cusp()),
        &[("U", "X", 0), ("D", "X", 1), ("O", "X", 2)],
    )
    .expect("corpus map")
    .with_annotation(annotation(&[(1, &["D", "O"]), (2, &[])]))
}

/// The blow-up of a point.
pub fn blowup_map() -> StratifiedMap {
    StratifiedMap::from_entries(
        "BLOWUPMAP",
        Arc::new(blowup_total()),
        Arc::new(blowup()),
        &[("P", "E", 2), ("P", "Xo", 0), ("Yo", "E", 0), ("Yo", "Xo", 1)],
    )
    .expect("corpus map")
    .with_annotation(annotation(&[(1, &["P"]), (2, &["P"])]))
}

/// The conic family `xy = t z²`.
pub fn nodefam() -> StratifiedMap {
    StratifiedMap::from_entries(
        "NODEFAM",
        Arc::new(node_total()),
        Arc::new(node()),
        &[("T", "X", 2), ("O", "X", 3)],
    )
    .expect("corpus map")
    .with_annotation(annotation(&[(1, &["O"])]))
}

/// `z ↦ z²` on `ℙ¹`, branched at both poles.
pub fn sphere_zsq() -> StratifiedMap {
    let g = Arc::new(sphere());
    let mut entries = Vec::new();
    for t in ["N", "S", "L"] {
        for w in ["N", "S", "L"] {
            let v = match (t, w) {
                ("L", "L") => 2,
                (a, b) if a == b => 1,
                _ => 0,
            };
            entries.push((t, w, v));
        }
    }
    StratifiedMap::from_entries("SZSQ", g.clone(), g, &entries).expect("corpus map")
}

/// Every corpus map.
pub fn all_maps() -> Vec<StratifiedMap> {
    vec![zsq(), cuspfam(), blowup_map(), nodefam(), sphere_zsq()]
}
