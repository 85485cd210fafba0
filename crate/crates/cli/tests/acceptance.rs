//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratcalc_core::{
    characteristic_cycle, compare_chi, compare_fibers, compose, decompose, discriminants, embed,
    massey_chi_check, parse_bundle, stalk_bounds, Bundle, ConstructibleFunction, EuCoefficients,
    Operators, StratifiedGeometry, StratifiedMap, StratumId,
};

const FUNCTIONS_PER_GEOMETRY: usize = 1000;
const VALUE_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "bundle"))
        .collect();
    files.sort();
    files
}

fn load(name: &str) -> Bundle {
    parse_bundle(&std::fs::read_to_string(corpus_dir().join(name)).unwrap()).unwrap()
}

fn stratcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stratcalc"))
        .args(args)
        .output()
        .expect("run stratcalc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ids(v: &[&str]) -> Vec<StratumId> {
    v.iter().map(|&s| StratumId::from(s)).collect()
}

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn criterion_1() -> Check {
    let b = load("ypp.bundle");
    let xi = b.function("xi").unwrap();
    let d = discriminants(xi).map_err(|e| e.to_string())?;
    ensure(d.per_i[&1] == ids(&["Yp"]), || format!("per_1 = {:?}", d.per_i[&1]))?;
    ensure(d.per_i[&2] == ids(&["O"]), || format!("per_2 = {:?}", d.per_i[&2]))?;
    ensure(!d.contains(1, "O"), || "O in per_1".into())?;
    let file = corpus_dir().join("ypp.bundle");
    let out = stratcalc(&["discriminants", path(&file), "--function", "xi", "--format", "machine"]);
    let text = stdout(&out);
    ensure(out.status.success(), || format!("exit {:?}", out.status))?;
    ensure(text.contains("per_i.1=Yp\n") && text.contains("per_i.2=O\n"), || text.clone())
}

fn criterion_2() -> Check {
    let b = load("cusp.bundle");
    let m = b.map("CUSPFAM").unwrap();
    let push = m
        .pushforward(&ConstructibleFunction::one(m.source().clone()))
        .map_err(|e| e.to_string())?;
    ensure(push.values() == [2, 1, 0], || format!("f_!1 = {:?}", push.values()))?;
    let d = decompose(&push).map_err(|e| e.to_string())?;
    let terms: Vec<_> = d
        .coefficients
        .iter()
        .map(|t| (t.codim, t.stratum.as_str().to_owned(), t.coefficient))
        .collect();
    ensure(terms == vec![(1, "D".to_owned(), 1)], || format!("terms {terms:?}"))?;
    ensure(d.residual_check && d.diagnostics.is_empty(), || format!("{:?}", d.diagnostics))?;
    let r = discriminants(&push).map_err(|e| e.to_string())?;
    ensure(r.per_i[&2].is_empty(), || format!("per_2 = {:?}", r.per_i[&2]))?;
    let file = corpus_dir().join("cusp.bundle");
    let out = stratcalc(&["decompose", path(&file), "--function", "f1"]);
    ensure(out.status.success(), || format!("exit {:?}", out.status))?;
    ensure(stdout(&out) == "Eu[D-closure] coefficient 1\n", || stdout(&out))
}

fn terms(v: &[(StratumId, i64)]) -> Vec<(&str, i64)> {
    v.iter().map(|(s, m)| (s.as_str(), *m)).collect()
}

fn criterion_3() -> Check {
    let blowup = load("blowup.bundle");
    let f = blowup.function("f1").unwrap();
    let d = decompose(f).map_err(|e| e.to_string())?;
    let got: Vec<_> = d.coefficients.iter().map(|t| (t.codim, t.stratum.as_str(), t.coefficient)).collect();
    ensure(got == vec![(2, "P", 1), (0, "Yo", 1)], || format!("BLOWUP {got:?}"))?;
    let cc = characteristic_cycle(f).map_err(|e| e.to_string())?;
    ensure(terms(&cc.terms) == vec![("P", 1), ("Yo", 1)], || format!("BLOWUP CC {:?}", cc.terms))?;

    let zsq = load("zsq.bundle");
    let m = zsq.map("ZSQ").unwrap();
    let f = m
        .pushforward(&ConstructibleFunction::one(m.source().clone()))
        .map_err(|e| e.to_string())?;
    let d = decompose(&f).map_err(|e| e.to_string())?;
    let got: Vec<_> = d.coefficients.iter().map(|t| (t.codim, t.stratum.as_str(), t.coefficient)).collect();
    ensure(got == vec![(1, "O", -1), (0, "L", 2)], || format!("ZSQ {got:?}"))?;
    let cc = characteristic_cycle(&f).map_err(|e| e.to_string())?;
    ensure(terms(&cc.terms) == vec![("O", 1), ("L", 2)], || format!("ZSQ CC {:?}", cc.terms))
}

fn criterion_4() -> Check {
    let b = load("cusp.bundle");
    let g = b.geometry("CUSP").unwrap().clone();
    let c = EuCoefficients::from_pairs(g, [("D", 1)]).map_err(|e| e.to_string())?;
    let bounds = stalk_bounds(&c, "O").map_err(|e| e.to_string())?;
    let got: Vec<_> = bounds.bounds.iter().map(|(&k, &v)| (k, v)).collect();
    ensure(got == vec![(0, 0), (1, 2), (2, 0)], || format!("bounds {got:?}"))?;
    // The intersection complex of a unibranch curve has a one-dimensional stalk.
    ensure(bounds.bounds[&1] >= 1, || "bound below the known stalk".into())?;
    ensure(bounds.diagnostics.is_empty(), || format!("{:?}", bounds.diagnostics))
}

fn corpus_geometries() -> Vec<Arc<StratifiedGeometry>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in corpus_files() {
        if f.ends_with("cusp-broken.bundle") {
            continue;
        }
        let b = parse_bundle(&std::fs::read_to_string(&f).unwrap()).unwrap();
        for g in b.geometries {
            if seen.insert(g.name().to_owned()) {
                out.push(g);
            }
        }
    }
    out
}

fn check_function(xi: &ConstructibleFunction) -> Check {
    let g = xi.geometry();
    let name = g.name();
    let c = xi.eu_coefficients().map_err(|e| e.to_string())?;
    ensure(c.to_function().map_err(|e| e.to_string())? == *xi, || format!("{name}: round trip"))?;
    ensure(c == xi.eu_coefficients_by_links().map_err(|e| e.to_string())?, || {
        format!("{name}: coefficient paths disagree")
    })?;
    if xi.is_zero() {
        return Ok(());
    }

    let report = discriminants(xi).map_err(|e| e.to_string())?;
    ensure(report.diagnostics.is_empty(), || format!("{name}: {:?}", report.diagnostics))?;
    for (i, members) in &report.per_i {
        for s in members {
            let codim = g.codim(g.index_of(s.as_str()).unwrap());
            ensure(codim >= *i, || format!("{name}: {s} in per_{i} with codim {codim}"))?;
        }
    }
    for r in 1..=g.ambient_dim() {
        let union: BTreeSet<_> = report.per_i.range(r..).flat_map(|(_, v)| v.iter()).collect();
        let at_least: BTreeSet<_> = report.at_least[&r].iter().collect();
        ensure(union == at_least, || format!("{name}: routes differ at r = {r}"))?;
    }

    if xi.support_codim() == 0 {
        return Ok(());
    }
    let ops = Operators::new(xi).map_err(|e| e.to_string())?;
    for s in 0..g.len() {
        let total = (0..=g.codim(s)).try_fold(0i64, |acc, k| ops.phi_psi(s, k).map(|v| acc + v));
        ensure(total == Ok(xi.at(s)), || format!("{name}: Massey identity at {}", g.id(s)))?;
        ensure(massey_chi_check(xi, g.id(s).as_str()) == Ok(true), || format!("{name}: massey check"))?;
    }
    let d = decompose(xi).map_err(|e| e.to_string())?;
    ensure(d.residual_check && d.diagnostics.is_empty(), || format!("{name}: {:?}", d.diagnostics))?;
    for t in &d.coefficients {
        ensure(t.codim == 0 || report.contains(t.codim, t.stratum.as_str()), || {
            format!("{name}: coefficient at {} outside the discriminant", t.stratum)
        })?;
    }
    for (i, members) in &report.per_i {
        for s in members {
            let k = g.index_of(s.as_str()).unwrap();
            if g.codim(k) == *i {
                ensure(c.at(k) != 0, || format!("{name}: {s} has zero coefficient"))?;
            }
        }
    }
    let after = discriminants(&embed(xi)).map_err(|e| e.to_string())?;
    for (i, members) in &report.per_i {
        ensure(after.per_i.get(&(i + 1)) == Some(members), || format!("{name}: embedding shift at {i}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for g in corpus_geometries() {
        for _ in 0..FUNCTIONS_PER_GEOMETRY {
            let values: Vec<i64> = (0..g.len()).map(|_| rng.gen_range(VALUE_RANGE)).collect();
            let xi = ConstructibleFunction::from_values(g.clone(), values.clone()).unwrap();
            check_function(&xi)?;
            let lowered: Vec<i64> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| if g.is_open(i) { 0 } else { v })
                .collect();
            check_function(&ConstructibleFunction::from_values(g.clone(), lowered).unwrap())?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut models = 0;
    let mut maps = Vec::new();
    for f in corpus_files() {
        let b = parse_bundle(&std::fs::read_to_string(&f).unwrap()).unwrap();
        for m in &b.simplicial_models {
            let g = b.geometry(m.model.geometry_ref()).map_err(|e| e.to_string())?;
            for c in compare_chi(&m.model, g).map_err(|e| e.to_string())? {
                ensure(c.matches(), || format!("{}: {c:?}", m.model.name()))?;
            }
            let out = stratcalc(&["oracle", path(&f), "--model", m.model.name(), "--strict"]);
            ensure(out.status.success(), || format!("oracle {} exit {:?}", m.model.name(), out.status))?;
            models += 1;
        }
        for sm in &b.simplicial_maps {
            let declared = b.map(sm.map_ref.as_deref().unwrap_or_default()).map_err(|e| e.to_string())?;
            let source = b.model(&sm.source_model).map_err(|e| e.to_string())?;
            let target = b.model(&sm.target_model).map_err(|e| e.to_string())?;
            for c in compare_fibers(sm, source, target, declared).map_err(|e| e.to_string())? {
                ensure(c.matches(), || format!("{}: {c:?}", sm.name))?;
            }
        }
        maps.extend(b.maps);
    }
    ensure(models >= 4, || format!("only {models} simplicial models"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for m1 in &maps {
        let mut chain: Vec<StratifiedMap> = vec![
            StratifiedMap::collapse(m1.target().clone()),
            StratifiedMap::identity(m1.target().clone()),
        ];
        chain.extend(maps.iter().filter(|m2| **m2.source() == **m1.target()).cloned());
        for m2 in &chain {
            let composite = compose(m2, m1).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let values = (0..m1.source().len()).map(|_| rng.gen_range(VALUE_RANGE)).collect();
                let xi = ConstructibleFunction::from_values(m1.source().clone(), values).unwrap();
                let direct = composite.pushforward(&xi).map_err(|e| e.to_string())?;
                let stepwise = m2
                    .pushforward(&m1.pushforward(&xi).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure(direct == stepwise, || format!("{} not functorial", composite.name()))?;
                let before = xi.euler_integral().map_err(|e| e.to_string())?;
                let after = direct.euler_integral().map_err(|e| e.to_string())?;
                ensure(before == after, || format!("{}: integral {before} -> {after}", composite.name()))?;
            }
        }
    }
    Ok(())
}

fn machine_invocations() -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for f in corpus_files() {
        let p = path(&f).to_owned();
        let b = parse_bundle(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let cmd = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        out.push(cmd(&["validate", &p]));
        out.push(cmd(&["canonicalize", &p]));
        for nf in &b.functions {
            let n = nf.name.as_str();
            for verb in ["decompose", "discriminants", "cc", "csm", "integrate"] {
                out.push(cmd(&[verb, &p, "--function", n]));
            }
            out.push(cmd(&["discriminants", &p, "--function", n, "--embed", "1"]));
            for s in nf.function.geometry().strata() {
                out.push(cmd(&["bounds", &p, "--function", n, "--stratum", s.id.as_str()]));
            }
            for m in b.maps.iter().filter(|m| **m.source() == **nf.function.geometry()) {
                out.push(cmd(&["pushforward", &p, "--map", m.name(), "--function", n]));
            }
        }
        for m in &b.simplicial_models {
            out.push(cmd(&["oracle", &p, "--model", m.model.name()]));
        }
    }
    for v in &mut out {
        v.push("--format".into());
        v.push("machine".into());
    }
    out
}

fn criterion_7() -> Check {
    let invocations = machine_invocations();
    ensure(invocations.len() > 50, || format!("only {} invocations", invocations.len()))?;
    for args in &invocations {
        let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let (a, b) = (stratcalc(&args), stratcalc(&args));
        ensure(a.status.code() == Some(0), || format!("{args:?} exit {:?}: {}", a.status, String::from_utf8_lossy(&a.stderr)))?;
        ensure(a.status == b.status && a.stdout == b.stdout && a.stderr == b.stderr, || {
            format!("{args:?} differs between runs")
        })?;
        ensure(!a.stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "YPP non-closed, non-nested discriminants", limit: Duration::from_secs(1), run: criterion_1 },
        Criterion { id: 2, name: "CUSP decomposition and empty second discriminant", limit: Duration::from_secs(1), run: criterion_2 },
        Criterion { id: 3, name: "BLOWUP and ZSQ decompositions and characteristic cycles", limit: Duration::from_secs(1), run: criterion_3 },
        Criterion { id: 4, name: "CUSP stalk bound at the cusp", limit: Duration::from_secs(1), run: criterion_4 },
        Criterion { id: 5, name: "property suite over random corpus functions", limit: Duration::from_secs(60), run: criterion_5 },
        Criterion { id: 6, name: "oracle agreement, functoriality, integral preservation", limit: Duration::from_secs(5), run: criterion_6 },
        Criterion { id: 7, name: "machine output identical across runs", limit: Duration::from_secs(120), run: criterion_7 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= c.limit) {
            (Ok(()), true) => "PASS".to_owned(),
            (Ok(()), false) => format!("FAIL (time limit {:?} exceeded)", c.limit),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {}: {} ... {verdict} [{:.3}s, limit {}s]",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
