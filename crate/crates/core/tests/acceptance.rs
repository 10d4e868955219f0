//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use chomog::census::{census, generate};
use chomog::digraph::Digraph;
use chomog::families::{build_catalog, directed_cycle, h, search_h, t2_ball, CatalogEntry, H_SEARCH_BOUND};
use chomog::homogeneity::{brute_force_oracle, is_c_homogeneous, is_homogeneous};
use chomog::quotients::{covering_check, search_quotients, C10_QUOTIENT_POINTS};
use chomog::reachability::{delta_shape, is_1_arc_transitive, DeltaShape};
use chomog::symmetry::{are_isomorphic, canonical_form, extend_partial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn empty(n: usize) -> Digraph {
    Digraph::empty(n)
}

fn homogeneous_set() -> Outcome {
    let c3 = directed_cycle(3).unwrap();
    let mut expected: Vec<Digraph> = (1..=6).map(empty).collect();
    expected.push(directed_cycle(4).unwrap());
    expected.push(c3.clone());
    expected.push(empty(2).lex_product(&c3));
    expected.push(c3.lex_product(&empty(2)));
    let expected: HashSet<Digraph> = expected.iter().map(canonical_form).collect();
    let mut scanned = 0;
    let mut found = HashSet::new();
    for d in generate(6, false).into_iter().flatten() {
        scanned += 1;
        if is_homogeneous(&d).holds {
            found.insert(d);
        }
    }
    ensure(found == expected, || format!("found {} homogeneous digraphs, expected {}", found.len(), expected.len()))?;
    Ok(format!("{scanned} digraphs scanned, {} homogeneous", found.len()))
}

fn census_six() -> Outcome {
    let r = census(6).map_err(|e| e.to_string())?;
    ensure(r.unexplained.is_empty(), || format!("{} unexplained", r.unexplained.len()))?;
    ensure(r.missing.is_empty(), || format!("missing {:?}", r.missing))?;
    for f in &r.found {
        let ok = matches!(f.entry, CatalogEntry::Trivial | CatalogEntry::Cycle { .. } | CatalogEntry::T2Quotient { .. });
        ensure(ok, || format!("unexpected family {}", f.entry))?;
        ensure(is_c_homogeneous(&f.digraph).holds, || format!("{} does not re-verify", f.entry))?;
    }
    let entries: HashSet<&CatalogEntry> = r.found.iter().map(|f| &f.entry).collect();
    for m in 3..=6 {
        for n in 1..=6 / m {
            let e = CatalogEntry::Cycle { m, n };
            ensure(entries.contains(&e), || format!("{e} absent"))?;
        }
    }
    Ok(format!("{} survivors, families {:?}", r.found.len(), r.counts))
}

/// Every labelled digraph on up to 5 vertices.
fn labelled(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total).map(move |code| {
        let mut c = code;
        let mut edges = Vec::new();
        for &(u, v) in &pairs {
            match c % 3 {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            c /= 3;
        }
        Digraph::new(n, edges).unwrap()
    })
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for n in 1..=5 {
        for d in labelled(n) {
            for connected in [false, true] {
                let v = if connected { is_c_homogeneous(&d) } else { is_homogeneous(&d) };
                let o = brute_force_oracle(&d, connected).unwrap();
                ensure(v.holds == o.holds, || format!("disagreement on {:?} (connected: {connected})", d.edges()))?;
                if let Some(w) = &v.witness {
                    let ext = extend_partial(&d, &w.map()).map_err(|e| format!("invalid witness: {e}"))?;
                    ensure(ext.is_none(), || format!("witness extends on {:?}", d.edges()))?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} labelled digraphs, both variants"))
}

fn h_recovery() -> Outcome {
    let found = search_h(H_SEARCH_BOUND).map_err(|e| e.to_string())?;
    ensure(found.len() == 1, || format!("{} candidates up to order {H_SEARCH_BOUND}", found.len()))?;
    ensure(are_isomorphic(&found[0], &h()), || "search result differs from h()".into())?;
    ensure(is_homogeneous(&h()).holds, || "h() is not homogeneous".into())?;
    let h2 = h().lex_product(&empty(2));
    ensure(is_c_homogeneous(&h2).holds, || "H[K2] is not C-homogeneous".into())?;
    ensure(!is_homogeneous(&h2).holds, || "H[K2] is homogeneous".into())?;
    Ok(format!("unique, {} vertices", found[0].n()))
}

fn catalog_grid() -> Vec<CatalogEntry> {
    let mut v = Vec::new();
    for m in 3..=8 {
        for n in 1..=3 {
            v.push(CatalogEntry::Cycle { m, n });
        }
    }
    v.extend((3..=6).map(|k| CatalogEntry::Y { k }));
    v.extend((1..=3).map(|n| CatalogEntry::HComposite { n }));
    v
}

fn catalog_properties() -> Outcome {
    let grid = catalog_grid();
    for e in &grid {
        let d = build_catalog(e).unwrap();
        ensure(is_c_homogeneous(&d).holds, || format!("{e} is not C-homogeneous"))?;
        if d.has_directed_triangle() {
            let balanced = (0..d.n()).all(|v| d.out_degree(v) == d.in_degree(v));
            ensure(balanced, || format!("{e}: out-degree differs from in-degree"))?;
        }
        match *e {
            CatalogEntry::Cycle { n, .. } => {
                let shape = delta_shape(&d).unwrap().shape;
                ensure(shape == DeltaShape::CompleteBipartite { m: n, n }, || format!("{e}: shape {shape}"))?;
            }
            CatalogEntry::Y { k } => {
                let shape = delta_shape(&d).unwrap().shape;
                ensure(shape == DeltaShape::MatchingComplement { k }, || format!("{e}: shape {shape}"))?;
                let ok = d.edges().iter().all(|&(u, v)| d.triangles_on_edge(u, v) == k - 2 && d.out_degree(u) == k - 1);
                ensure(ok, || format!("{e}: an edge is not on k-2 triangles"))?;
            }
            _ => {}
        }
    }
    Ok(format!("{} members", grid.len()))
}

fn random_connected(rng: &mut ChaCha8Rng) -> Digraph {
    loop {
        let n = rng.gen_range(3..=8);
        let p: f64 = rng.gen_range(0.25..0.9);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
                }
            }
        }
        let d = Digraph::new(n, edges).unwrap();
        if d.is_connected() {
            return d;
        }
    }
}

fn dichotomy() -> Outcome {
    let mut instances: Vec<(String, Digraph)> = catalog_grid()
        .into_iter()
        .map(|e| (e.to_string(), build_catalog(&e).unwrap()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    instances.extend((0..1000).map(|i| (format!("random #{i}"), random_connected(&mut rng))));
    let mut tested = 0;
    for (name, d) in &instances {
        if !is_1_arc_transitive(d).unwrap() {
            continue;
        }
        tested += 1;
        let r = delta_shape(d).unwrap();
        ensure(r.dichotomy_holds(), || format!("{name}: neither universal nor bipartite"))?;
    }
    Ok(format!("{tested} arc-transitive instances of {}", instances.len()))
}

fn c10_quotient() -> Outcome {
    let results = search_quotients(C10_QUOTIENT_POINTS);
    let hit = results
        .iter()
        .find(|r| r.report.delta_shape == DeltaShape::EvenCycle { len: 10 })
        .ok_or_else(|| format!("no EvenCycle(10) quotient with at most {C10_QUOTIENT_POINTS} points"))?;
    ensure(hit.report.c_homogeneous && hit.report.delta_uniform, || "C_10 quotient not verified".into())?;
    let small: Vec<_> = results.iter().filter(|r| r.spec.k <= 12).collect();
    for r in &small {
        for radius in 1..=4 {
            ensure(covering_check(&r.spec, radius) == Ok(true), || format!("covering fails: {} r={radius}", r.spec))?;
        }
    }
    Ok(format!("C_10 quotient at k = {}; {} specs with k <= 12 cover", hit.spec.k, small.len()))
}

fn t2_balls() -> Outcome {
    for r in 1..=4 {
        let ball = t2_ball(r).map_err(|e| e.to_string())?;
        let d = &ball.digraph;
        for &v in &ball.interior {
            ensure(d.triangles_at(v).len() == 2, || format!("r={r}: vertex {v} not on 2 triangles"))?;
            let rest: Vec<usize> = (0..d.n()).filter(|&u| u != v).collect();
            ensure(!d.induced(&rest).unwrap().is_connected(), || format!("r={r}: vertex {v} is not a cut vertex"))?;
        }
    }
    Ok("radii 1..4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("homogeneous digraphs on <= 6 vertices", homogeneous_set),
        ("census(6) fully explained", census_six),
        ("checker agrees with brute-force oracle", oracle_equivalence),
        ("H recovery", h_recovery),
        ("catalog properties", catalog_properties),
        ("reachability dichotomy", dichotomy),
        ("C_10 quotient and covering", c10_quotient),
        ("T(2) ball invariants", t2_balls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
