//! Homogeneity and connected-homogeneity of finite digraphs.
//!
//! A structure is homogeneous when every isomorphism between two induced
//! substructures extends to an automorphism; the connected variant only asks
//! this of connected induced substructures.
//!
//! The checker works level by level over vertex sets. Level `k` holds one
//! representative set per automorphism orbit of `k`-sets. Each representative
//! is grown by one vertex (for the connected variant, only by a neighbour of
//! the set), and the candidates are grouped into isomorphism classes of their
//! induced substructures. The structure passes level `k+1` when, for every
//! class,
//!
//! * every automorphism of the representative's induced substructure extends
//!   to the whole structure (checked on a generating set), and
//! * every other member is the image of the representative under some
//!   automorphism (checked by extending one isomorphism between them).
//!
//! Together these say that every isomorphism between two members of a class
//! extends. Growing only orbit representatives loses nothing: any `(k+1)`-set
//! contains a `k`-set that is the image of a representative, and in the
//! connected case any connected set has a vertex whose removal leaves it
//! connected (a leaf of a spanning tree), so connected sets are reachable
//! through connected sets only.
//!
//! A representative fixed pointwise only by the identity is not grown any
//! further: every isomorphism between supersets is then pinned down by its
//! restriction to the representative, and a polynomial test over pairs of
//! indistinguishable vertices settles all supersets at once (see
//! `rigid_cone_failure`). This keeps large sparse inputs tractable.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, Vertex, IN, OUT};
use crate::symmetry::{automorphism_group_of, find_isomorphism, PartialMap, Structure};

/// Default vertex bound for [`brute_force_oracle`].
pub const ORACLE_BOUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneityError {
    #[error("declared bipartition is not a 2-colouring: edge ({0},{1})")]
    NotBipartite(Vertex, Vertex),
    #[error("side labels must be 0 or 1 for each of the {0} vertices")]
    BadSides(usize),
    #[error("{n} vertices exceeds the oracle bound {bound}")]
    TooLarge { n: usize, bound: usize },
}

/// A non-extending isomorphism between two induced substructures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `(x, image of x)` pairs.
    pub pairs: Vec<(Vertex, Vertex)>,
    /// Edges of the substructure induced on the domain, indexed by position
    /// in `pairs`. Identical for the codomain since the map is an isomorphism.
    pub pattern: Vec<(usize, usize)>,
}

impl Witness {
    pub fn map(&self) -> PartialMap {
        PartialMap::new(self.pairs.clone()).expect("witness maps are injective")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Largest substructure size examined.
    pub levels_checked: usize,
    /// False when a size cap stopped the search early; a passing verdict then
    /// only means "holds up to `levels_checked` vertices".
    pub complete: bool,
}

impl HomogeneityVerdict {
    /// Short human-readable summary.
    pub fn describe(&self) -> String {
        match (self.holds, self.complete) {
            (true, true) => "holds".to_string(),
            (true, false) => format!("holds up to size {}", self.levels_checked),
            (false, _) => "fails".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    All,
    Connected,
}

struct Class {
    rep: Vec<Vertex>,
    sub: Structure,
}

fn iso_invariant(s: &Structure) -> Vec<u64> {
    let n = s.n();
    let mut v: Vec<u64> = (0..n)
        .map(|x| {
            let (mut o, mut i, mut u) = (0u64, 0u64, 0u64);
            for y in 0..n {
                match s.rel(x, y) {
                    OUT => o += 1,
                    IN => i += 1,
                    0 => {}
                    _ => u += 1,
                }
            }
            (s.color(x) as u64) << 48 | o << 32 | i << 16 | u
        })
        .collect();
    v.sort_unstable();
    v
}

fn witness(s: &Structure, pairs: Vec<(Vertex, Vertex)>) -> Witness {
    let mut pattern = Vec::new();
    for (i, &(a, _)) in pairs.iter().enumerate() {
        for (j, &(b, _)) in pairs.iter().enumerate() {
            if s.rel(a, b) == OUT || (i < j && s.adjacent(a, b) && s.rel(a, b) != IN) {
                pattern.push((i, j));
            }
        }
    }
    Witness { pairs, pattern }
}

fn check(s: &Structure, scope: Scope, max_size: Option<usize>) -> HomogeneityVerdict {
    let n = s.n();
    let limit = max_size.map_or(n, |m| m.min(n));
    let mut reps: Vec<Vec<Vertex>> = vec![Vec::new()];
    let mut levels = 0;
    for k in 1..=limit {
        let mut candidates = BTreeSet::new();
        for r in &reps {
            for v in 0..n {
                if r.contains(&v) {
                    continue;
                }
                if scope == Scope::Connected && !r.is_empty() && !r.iter().any(|&u| s.adjacent(u, v)) {
                    continue;
                }
                let mut t = r.clone();
                t.push(v);
                t.sort_unstable();
                candidates.insert(t);
            }
        }
        if candidates.is_empty() {
            break;
        }
        let mut classes: Vec<Class> = Vec::new();
        let mut by_invariant: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for t in candidates {
            let sub = s.induced(&t);
            let inv = iso_invariant(&sub);
            let bucket = by_invariant.entry(inv).or_default();
            let found = bucket.iter().find_map(|&ci| {
                find_isomorphism(&classes[ci].sub, &sub, &[]).map(|psi| (ci, psi))
            });
            match found {
                Some((ci, psi)) => {
                    let rep = &classes[ci].rep;
                    let pairs: Vec<_> = (0..k).map(|i| (rep[i], t[psi[i]])).collect();
                    if s.extend(&pairs).is_none() {
                        return HomogeneityVerdict {
                            holds: false,
                            witness: Some(witness(s, pairs)),
                            levels_checked: k,
                            complete: true,
                        };
                    }
                }
                None => {
                    let group = automorphism_group_of(&sub);
                    for g in group.generators() {
                        let pairs: Vec<_> = (0..k).map(|i| (t[i], t[g[i]])).collect();
                        if s.extend(&pairs).is_none() {
                            return HomogeneityVerdict {
                                holds: false,
                                witness: Some(witness(s, pairs)),
                                levels_checked: k,
                                complete: true,
                            };
                        }
                    }
                    bucket.push(classes.len());
                    classes.push(Class { rep: t, sub });
                }
            }
        }
        reps = Vec::with_capacity(classes.len());
        for c in classes {
            if max_size.is_none() && s.pointwise_stabilizer_trivial(&c.rep) {
                if let Some(pairs) = rigid_cone_failure(s, &c.rep, scope) {
                    let size = pairs.len();
                    return HomogeneityVerdict {
                        holds: false,
                        witness: Some(witness(s, pairs)),
                        levels_checked: size,
                        complete: true,
                    };
                }
            } else {
                reps.push(c.rep);
            }
        }
        levels = k;
        if reps.is_empty() {
            levels = limit;
            break;
        }
    }
    HomogeneityVerdict {
        holds: true,
        witness: None,
        levels_checked: levels,
        complete: limit == n || reps.is_empty(),
    }
}

/// Settles every superset of `fixed` at once, given that only the identity
/// fixes `fixed` pointwise. An isomorphism between supersets of (an image
/// of) `fixed` can then only extend as the unique automorphism agreeing with
/// it on `fixed`, so it fails exactly when some partial map fixing a superset
/// `P` of `fixed` pointwise moves a vertex `v` to a different vertex `w`
/// that `P` cannot tell apart from `v`. For the connected variant `P` must
/// also be connected and touch `v`; the largest candidate is the component of
/// `fixed` among the vertices that do not separate `v` from `w`.
fn rigid_cone_failure(s: &Structure, fixed: &[Vertex], scope: Scope) -> Option<Vec<(Vertex, Vertex)>> {
    let n = s.n();
    let mut in_fixed = vec![false; n];
    for &x in fixed {
        in_fixed[x] = true;
    }
    let mut twins: HashMap<(u32, Vec<u8>), Vec<Vertex>> = HashMap::new();
    for v in (0..n).filter(|&v| !in_fixed[v]) {
        let key = (s.color(v), fixed.iter().map(|&x| s.rel(x, v)).collect());
        twins.entry(key).or_default().push(v);
    }
    let mut groups: Vec<Vec<Vertex>> = twins.into_values().filter(|g| g.len() > 1).collect();
    groups.sort_unstable();
    for g in groups {
        for (i, &v) in g.iter().enumerate() {
            for &w in &g[i + 1..] {
                let keep: Vec<Vertex> = match scope {
                    Scope::All => fixed.to_vec(),
                    Scope::Connected => match touching_path(s, fixed, &in_fixed, v, w) {
                        Some(path) => fixed.iter().copied().chain(path).collect(),
                        None => continue,
                    },
                };
                let mut pairs: Vec<_> = keep.into_iter().map(|x| (x, x)).collect();
                pairs.sort_unstable();
                pairs.push((v, w));
                return Some(pairs);
            }
        }
    }
    None
}

/// Breadth-first search from `fixed` through vertices with equal relations
/// to `v` and `w`; returns the extra vertices of a path ending next to `v`.
fn touching_path(s: &Structure, fixed: &[Vertex], in_fixed: &[bool], v: Vertex, w: Vertex) -> Option<Vec<Vertex>> {
    let n = s.n();
    if fixed.iter().any(|&x| s.adjacent(x, v)) {
        return Some(Vec::new());
    }
    let usable = |x: Vertex| x != v && x != w && s.rel(x, v) == s.rel(x, w);
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = in_fixed.to_vec();
    let mut queue: std::collections::VecDeque<Vertex> = fixed.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for y in 0..n {
            if seen[y] || !s.adjacent(x, y) || !usable(y) {
                continue;
            }
            seen[y] = true;
            parent[y] = Some(x);
            if s.adjacent(y, v) {
                let mut path = vec![y];
                let mut cur = x;
                while !in_fixed[cur] {
                    path.push(cur);
                    cur = parent[cur].unwrap();
                }
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

pub fn is_homogeneous(d: &Digraph) -> HomogeneityVerdict {
    check(&Structure::from_digraph(d), Scope::All, None)
}

pub fn is_c_homogeneous(d: &Digraph) -> HomogeneityVerdict {
    check(&Structure::from_digraph(d), Scope::Connected, None)
}

/// Homogeneity restricted to substructures of at most `max_size` vertices.
pub fn is_homogeneous_up_to(d: &Digraph, max_size: usize) -> HomogeneityVerdict {
    check(&Structure::from_digraph(d), Scope::All, Some(max_size))
}

pub fn is_c_homogeneous_up_to(d: &Digraph, max_size: usize) -> HomogeneityVerdict {
    check(&Structure::from_digraph(d), Scope::Connected, Some(max_size))
}

fn bipartite_structure(d: &Digraph, sides: &[u32]) -> Result<Structure, HomogeneityError> {
    if sides.len() != d.n() || sides.iter().any(|&s| s > 1) {
        return Err(HomogeneityError::BadSides(d.n()));
    }
    if let Some(&(u, v)) = d.edges().iter().find(|&&(u, v)| sides[u] == sides[v]) {
        return Err(HomogeneityError::NotBipartite(u, v));
    }
    Ok(Structure::undirected(d, sides))
}

/// Connected-homogeneity of the underlying undirected graph of `d` for
/// side-preserving maps. `sides[v]` is 0 or 1.
pub fn is_c_homogeneous_bipartite(d: &Digraph, sides: &[u32]) -> Result<HomogeneityVerdict, HomogeneityError> {
    Ok(check(&bipartite_structure(d, sides)?, Scope::Connected, None))
}

/// A 2-colouring of the underlying graph, the smallest vertex of every
/// component on side 0; `None` if the underlying graph has an odd cycle.
pub fn two_coloring(d: &Digraph) -> Option<Vec<u32>> {
    let mut side: Vec<Option<u32>> = vec![None; d.n()];
    for start in 0..d.n() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(0);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let sx = side[x].unwrap();
            for &y in d.out_neighbors(x).iter().chain(d.in_neighbors(x)) {
                match side[y] {
                    None => {
                        side[y] = Some(1 - sx);
                        stack.push(y);
                    }
                    Some(sy) if sy == sx => return None,
                    _ => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

/// Direct enumeration of every pair of induced subdigraphs and every
/// bijection between them, checked against the full list of automorphisms.
/// Shares no code with the level-wise checker.
pub fn brute_force_oracle(d: &Digraph, connected_only: bool) -> Result<HomogeneityVerdict, HomogeneityError> {
    brute_force_oracle_bounded(d, connected_only, ORACLE_BOUND)
}

pub fn brute_force_oracle_bounded(
    d: &Digraph,
    connected_only: bool,
    bound: usize,
) -> Result<HomogeneityVerdict, HomogeneityError> {
    let n = d.n();
    if n > bound {
        return Err(HomogeneityError::TooLarge { n, bound });
    }
    let arc = |u: usize, v: usize| d.edges().binary_search(&(u, v)).is_ok();
    let mut autos: Vec<Vec<usize>> = Vec::new();
    for_each_permutation(n, &mut |p| {
        let ok = (0..n).all(|u| (0..n).all(|v| arc(u, v) == arc(p[u], p[v])));
        if ok {
            autos.push(p.to_vec());
        }
        true
    });
    let members = |mask: usize| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>();
    let connected = |verts: &[usize]| -> bool {
        if verts.is_empty() {
            return true;
        }
        let mut reached = 1usize << verts[0];
        loop {
            let mut grown = reached;
            for &u in verts {
                if reached >> u & 1 == 1 {
                    for &v in verts {
                        if arc(u, v) || arc(v, u) {
                            grown |= 1 << v;
                        }
                    }
                }
            }
            if grown == reached {
                break;
            }
            reached = grown;
        }
        verts.iter().all(|&v| reached >> v & 1 == 1)
    };
    for size in 1..=n {
        let sets: Vec<Vec<usize>> = (0..1usize << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(members)
            .filter(|vs| !connected_only || connected(vs))
            .collect();
        for a in &sets {
            for b in &sets {
                let mut failure = None;
                for_each_permutation(size, &mut |p| {
                    let image: Vec<usize> = p.iter().map(|&i| b[i]).collect();
                    let iso = (0..size).all(|i| (0..size).all(|j| arc(a[i], a[j]) == arc(image[i], image[j])));
                    if !iso {
                        return true;
                    }
                    let extends = autos.iter().any(|g| (0..size).all(|i| g[a[i]] == image[i]));
                    if !extends {
                        failure = Some(image);
                        return false;
                    }
                    true
                });
                if let Some(image) = failure {
                    let pairs: Vec<_> = a.iter().copied().zip(image).collect();
                    return Ok(HomogeneityVerdict {
                        holds: false,
                        witness: Some(witness(&Structure::from_digraph(d), pairs)),
                        levels_checked: size,
                        complete: true,
                    });
                }
            }
        }
    }
    Ok(HomogeneityVerdict {
        holds: true,
        witness: None,
        levels_checked: n,
        complete: true,
    })
}

/// Heap's algorithm; stops when `f` returns false.
fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    if !f(&p) {
        return;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if !f(&p) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
