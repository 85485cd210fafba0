#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratcalc_core::{euler_obstruction_matrix, GeometryBuilder, StratifiedGeometry};

struct Layout {
    ambient: u32,
    strata: Vec<(String, u32, i64)>,
    order: Vec<(usize, usize)>,
}

impl Layout {
    fn builder(&self) -> GeometryBuilder {
        let mut b = GeometryBuilder::new("RANDOM", self.ambient);
        for (id, dim, chi) in &self.strata {
            b = b.stratum(id, *dim, *chi);
        }
        for &(a, c) in &self.order {
            b = b.le(&self.strata[a].0, &self.strata[c].0);
        }
        b
    }
}

/// A random geometry satisfying every invariant checked by `validate`.
///
/// Links into the open stratum are chosen to fix the row sums, and the top
/// polar multiplicity of every pair is chosen to satisfy the telescoping
/// identity.
pub fn random_geometry(seed: u64) -> StratifiedGeometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ambient = rng.gen_range(1..=3u32);
    let mut strata = Vec::new();
    for dim in 0..ambient {
        for j in 0..rng.gen_range(0..=2) {
            strata.push((format!("S{dim}{}", (b'a' + j) as char), dim, rng.gen_range(-2..=3)));
        }
    }
    if strata.is_empty() {
        strata.push(("S0a".to_string(), 0, 1));
    }
    let open = strata.len();
    strata.push(("U".to_string(), ambient, rng.gen_range(-1..=1)));

    let mut order = Vec::new();
    for a in 0..open {
        order.push((a, open));
        for c in 0..open {
            if strata[a].1 < strata[c].1 && rng.gen_bool(0.5) {
                order.push((a, c));
            }
        }
    }
    let layout = Layout {
        ambient,
        strata,
        order,
    };

    let bare = layout.builder().build().unwrap();
    let mut with_links = layout.builder();
    let mut link_entries = Vec::new();
    for s in 0..bare.len() {
        let above: Vec<usize> = bare.above(s).collect();
        let mut sum = 0;
        for &u in &above {
            if !bare.is_open(u) {
                let v = rng.gen_range(-2..=2);
                sum += v;
                link_entries.push((s, u, v));
            }
        }
        for &u in &above {
            if bare.is_open(u) {
                link_entries.push((s, u, 1 - sum));
            }
        }
    }
    for &(s, u, v) in &link_entries {
        with_links = with_links.link(bare.id(s).as_str(), bare.id(u).as_str(), v);
    }
    let linked = with_links.clone().build().unwrap();
    let eu = euler_obstruction_matrix(&linked).unwrap();

    let mut full = with_links;
    for s in 0..linked.len() {
        for v in linked.above(s) {
            let d = (linked.dim(v) - linked.dim(s)) as usize;
            let mut m = vec![0i64; d + 1];
            let mut prev = eu.at(s, v).unwrap();
            for (n, slot) in m.iter_mut().enumerate().take(d).skip(1) {
                *slot = rng.gen_range(0..=3);
                let sign = if (d - n) % 2 == 0 { 1 } else { -1 };
                prev -= sign * *slot;
            }
            m[d] = prev;
            full = full.polar(linked.id(s).as_str(), linked.id(v).as_str(), &m);
        }
    }
    full.build().unwrap()
}

pub fn random_geometry_arc(seed: u64) -> Arc<StratifiedGeometry> {
    Arc::new(random_geometry(seed))
}

/// Dense strictly upper link matrix `N[s][u] = links(s, u)`.
pub fn link_matrix(g: &StratifiedGeometry) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut m = vec![vec![0; n]; n];
    for ((a, b), v) in g.links() {
        m[a][b] = v;
    }
    m
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// `(I − N)^{-1} = Σ_k N^k`; the series stops because `N` is nilpotent.
pub fn neumann_inverse(g: &StratifiedGeometry) -> Vec<Vec<i64>> {
    let n = g.len();
    let nmat = link_matrix(g);
    let mut term: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut sum = term.clone();
    for _ in 0..n {
        term = mat_mul(&term, &nmat);
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}
