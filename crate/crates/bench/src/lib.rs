//! Synthetic geometries for benchmarks.

use stratcalc_core::{GeometryBuilder, StratifiedGeometry};

/// A flag `S0 < S1 < … < Sn` with `dim Si = i`: every closure is smooth, so
/// links into the open stratum are 1 and all others vanish.
pub fn flag(n: u32) -> StratifiedGeometry {
    let name = |i: u32| format!("S{i:03}");
    let mut b = GeometryBuilder::new(format!("FLAG{n}"), n);
    for i in 0..=n {
        b = b.stratum(&name(i), i, i64::from(i == 0));
    }
    for i in 0..n {
        for j in i + 1..=n {
            b = b.le(&name(i), &name(j));
            b = b.link(&name(i), &name(j), i64::from(j == i + 1));
            let d = (j - i) as usize;
            let mut m = vec![0; d + 1];
            m[d] = 1;
            b = b.polar(&name(i), &name(j), &m);
        }
    }
    b.build().expect("flag geometry")
}

/// `n` isolated points in a smooth surface.
pub fn points(n: usize) -> StratifiedGeometry {
    let mut b = GeometryBuilder::new(format!("POINTS{n}"), 2).stratum("U", 2, 1 - n as i64);
    for i in 0..n {
        let p = format!("p{i:04}");
        b = b
            .stratum(&p, 0, 1)
            .le(&p, "U")
            .link(&p, "U", 1)
            .polar(&p, "U", &[0, 0, 1]);
    }
    b.build().expect("point geometry")
}
