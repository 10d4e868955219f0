//! Catalog recognition and an exhaustive census of small connected
//! C-homogeneous digraphs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, VertexPartition};
use crate::families::{build_catalog, directed_cycle, h, y, CatalogEntry};
use crate::homogeneity::is_c_homogeneous;
use crate::quotients::{build_quotient, search_quotients, QuotientSpec};
use crate::symmetry::{are_isomorphic, canonical_form, vertex_transitive};

/// Largest `n_max` accepted by [`census`].
pub const DEFAULT_CEILING: usize = 6;
/// Largest `n_max` accepted at all. A 7-vertex run canonicalises about
/// 15 million labelled children and takes minutes rather than seconds.
pub const EXTENDED_CEILING: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("n_max = {n} is outside 1..={ceiling}")]
    TooLarge { n: usize, ceiling: usize },
    #[error("digraph is not connected")]
    NotConnected,
}

/// Identifies the catalog family of a connected digraph, or `Unknown`.
pub fn recognize(d: &Digraph) -> Result<CatalogEntry, CensusError> {
    if !d.is_connected() {
        return Err(CensusError::NotConnected);
    }
    if d.n() == 1 {
        return Ok(CatalogEntry::Trivial);
    }
    if let Some((base, n)) = fibers(d) {
        let m = base.n();
        if m >= 3 && are_isomorphic(&base, &directed_cycle(m).expect("m >= 3")) {
            let entry = CatalogEntry::Cycle { m, n };
            if matches_entry(d, &entry) {
                return Ok(entry);
            }
        }
        if m == h().n() && are_isomorphic(&base, &h()) {
            let entry = CatalogEntry::HComposite { n };
            if matches_entry(d, &entry) {
                return Ok(entry);
            }
        }
    }
    if d.n().is_multiple_of(3) && d.n() >= 9 {
        let k = d.n() / 3;
        if d.edge_count() == 3 * k * (k - 1) && are_isomorphic(d, &y(k).expect("k >= 3")) {
            return Ok(CatalogEntry::Y { k });
        }
    }
    if let Some(spec) = t2_spec(d) {
        return Ok(CatalogEntry::T2Quotient { spec: spec.canonical() });
    }
    Ok(CatalogEntry::Unknown)
}

fn matches_entry(d: &Digraph, e: &CatalogEntry) -> bool {
    build_catalog(e).is_ok_and(|c| are_isomorphic(d, &c))
}

/// Quotient by "same out- and in-neighbourhood" together with the common
/// block size, if all blocks have equal size.
fn fibers(d: &Digraph) -> Option<(Digraph, usize)> {
    let mut index: HashMap<(&[usize], &[usize]), usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..d.n() {
        let key = (d.out_neighbors(v), d.in_neighbors(v));
        let i = *index.entry(key).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[i].push(v);
    }
    let size = blocks[0].len();
    if blocks.iter().any(|b| b.len() != size) {
        return None;
    }
    let part = VertexPartition::new(blocks).ok()?;
    Some((d.quotient(&part).ok()?, size))
}

/// Recovers the two generator actions from the triangles: every vertex must
/// lie on exactly two edge-disjoint directed triangles, and the triangles
/// must 2-colour so that the two at each vertex differ.
fn t2_spec(d: &Digraph) -> Option<QuotientSpec> {
    let n = d.n();
    if (0..n).any(|v| d.out_degree(v) != 2 || d.in_degree(v) != 2) {
        return None;
    }
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let ts = d.triangles_at(x);
        if ts.len() != 2 {
            return None;
        }
        for (a, b, c) in ts {
            if x == a.min(b).min(c) {
                for v in [a, b, c] {
                    at[v].push(triangles.len());
                }
                triangles.push([a, b, c]);
            }
        }
    }
    if 3 * triangles.len() != d.edge_count() {
        return None;
    }
    let mut color: Vec<Option<usize>> = vec![None; triangles.len()];
    color[0] = Some(0);
    let mut stack = vec![0];
    while let Some(t) = stack.pop() {
        let c = color[t].unwrap();
        for &v in &triangles[t] {
            let other = if at[v][0] == t { at[v][1] } else { at[v][0] };
            match color[other] {
                None => {
                    color[other] = Some(1 - c);
                    stack.push(other);
                }
                Some(c2) if c2 == c => return None,
                _ => {}
            }
        }
    }
    let mut maps = [vec![usize::MAX; n], vec![usize::MAX; n]];
    for (t, tri) in triangles.iter().enumerate() {
        let g = color[t]?;
        for i in 0..3 {
            maps[g][tri[i]] = tri[(i + 1) % 3];
        }
    }
    let [a, b] = maps;
    let spec = QuotientSpec::new(a, b);
    spec.validate().ok()?;
    (build_quotient(&spec).ok()? == *d).then_some(spec)
}

fn sort_digraphs(v: &mut [Digraph]) {
    v.sort_by(|a, b| (a.n(), a.edges()).cmp(&(b.n(), b.edges())));
}

/// All digraphs on `1..=n_max` vertices up to isomorphism, in canonical
/// form, indexed by vertex count (entry 0 is empty). Each level extends the
/// previous one by a vertex joined to the old vertices in every possible
/// way; with `connected_only` the new vertex must have a neighbour, which
/// suffices because every connected digraph has a vertex whose removal
/// leaves it connected.
pub fn generate(n_max: usize, connected_only: bool) -> Vec<Vec<Digraph>> {
    let mut levels: Vec<Vec<Digraph>> = vec![Vec::new()];
    if n_max == 0 {
        return levels;
    }
    levels.push(vec![Digraph::empty(1)]);
    for n in 2..=n_max {
        let old = n - 1;
        let patterns = 3usize.pow(old as u32);
        let children: HashSet<Digraph> = levels[old]
            .par_iter()
            .flat_map_iter(|parent| {
                let first = usize::from(connected_only);
                (first..patterns).map(move |code| {
                    let mut edges = parent.edges().to_vec();
                    let mut c = code;
                    for v in 0..old {
                        match c % 3 {
                            1 => edges.push((old, v)),
                            2 => edges.push((v, old)),
                            _ => {}
                        }
                        c /= 3;
                    }
                    canonical_form(&Digraph::new(n, edges).expect("new vertex adds no loop or pair"))
                })
            })
            .collect();
        let mut level: Vec<Digraph> = children.into_iter().collect();
        sort_digraphs(&mut level);
        levels.push(level);
    }
    levels
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CensusStats {
    /// Connected digraphs up to isomorphism, per vertex count `1..=n_max`.
    pub generated: Vec<usize>,
    /// Those that are vertex-transitive and in/out-regular.
    pub prefiltered: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn check_ceiling(n_max: usize, ceiling: usize) -> Result<(), CensusError> {
    let ceiling = ceiling.min(EXTENDED_CEILING);
    if n_max == 0 || n_max > ceiling {
        return Err(CensusError::TooLarge { n: n_max, ceiling });
    }
    Ok(())
}

fn survivors(n_max: usize, stats: &mut CensusStats) -> Vec<Digraph> {
    let levels = generate(n_max, true);
    stats.generated = levels[1..].iter().map(Vec::len).collect();
    let candidates: Vec<&Digraph> = levels
        .iter()
        .flatten()
        .filter(|d| d.is_regular() && vertex_transitive(d))
        .collect();
    stats.prefiltered = candidates.len();
    let mut out: Vec<Digraph> = candidates
        .into_par_iter()
        .filter(|d| is_c_homogeneous(d).holds)
        .cloned()
        .collect();
    sort_digraphs(&mut out);
    out
}

/// Connected C-homogeneous digraphs on at most `n_max` vertices, in
/// canonical form, sorted by `(n, edges)`. `n_max` may not exceed
/// [`DEFAULT_CEILING`].
pub fn enumerate_c_homogeneous(n_max: usize) -> Result<Vec<Digraph>, CensusError> {
    enumerate_c_homogeneous_with_ceiling(n_max, DEFAULT_CEILING)
}

pub fn enumerate_c_homogeneous_with_ceiling(n_max: usize, ceiling: usize) -> Result<Vec<Digraph>, CensusError> {
    check_ceiling(n_max, ceiling)?;
    Ok(survivors(n_max, &mut CensusStats::default()))
}

#[derive(Debug, Clone, Serialize)]
pub struct Found {
    pub digraph: Digraph,
    pub entry: CatalogEntry,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub n_max: usize,
    pub found: Vec<Found>,
    /// C-homogeneous survivors that no catalog family explains.
    pub unexplained: Vec<Digraph>,
    /// Catalog members with at most `n_max` vertices that did not survive.
    pub missing: Vec<CatalogEntry>,
    pub counts: BTreeMap<String, usize>,
    pub stats: CensusStats,
}

fn family_name(e: &CatalogEntry) -> &'static str {
    match e {
        CatalogEntry::Cycle { .. } => "cycle",
        CatalogEntry::HComposite { .. } => "h_composite",
        CatalogEntry::Y { .. } => "y",
        CatalogEntry::T2Quotient { .. } => "t2_quotient",
        CatalogEntry::Trivial => "trivial",
        CatalogEntry::Unknown => "unknown",
    }
}

/// Catalog members with at most `n_max` vertices.
fn expected_members(n_max: usize) -> Vec<CatalogEntry> {
    let mut out = vec![CatalogEntry::Trivial];
    for m in 3..=n_max {
        out.extend((1..=n_max / m).map(|n| CatalogEntry::Cycle { m, n }));
    }
    out.extend((1..=n_max / h().n()).map(|n| CatalogEntry::HComposite { n }));
    out.extend((3..=n_max / 3).map(|k| CatalogEntry::Y { k }));
    out.extend(search_quotients(n_max).into_iter().map(|r| CatalogEntry::T2Quotient { spec: r.spec }));
    out
}

pub fn census(n_max: usize) -> Result<CensusReport, CensusError> {
    census_with_ceiling(n_max, DEFAULT_CEILING)
}

pub fn census_with_ceiling(n_max: usize, ceiling: usize) -> Result<CensusReport, CensusError> {
    check_ceiling(n_max, ceiling)?;
    let start = Instant::now();
    let mut stats = CensusStats::default();
    let survivors = survivors(n_max, &mut stats);
    let mut found = Vec::new();
    let mut unexplained = Vec::new();
    let mut counts = BTreeMap::new();
    for d in &survivors {
        let entry = recognize(d)?;
        *counts.entry(family_name(&entry).to_string()).or_insert(0) += 1;
        if entry == CatalogEntry::Unknown {
            unexplained.push(d.clone());
        } else {
            found.push(Found {
                digraph: d.clone(),
                entry,
            });
        }
    }
    let present: HashSet<&Digraph> = survivors.iter().collect();
    let missing = expected_members(n_max)
        .into_iter()
        .filter(|e| !present.contains(&canonical_form(&build_catalog(e).expect("catalog member"))))
        .collect();
    stats.elapsed = start.elapsed();
    Ok(CensusReport {
        n_max,
        found,
        unexplained,
        missing,
        counts,
        stats,
    })
}
