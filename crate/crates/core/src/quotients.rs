//! Finite quotients of the triangle tree `T(2)`.
//!
//! `T(2)` is the Cayley digraph of `Z3 * Z3 = <a> * <b>` with edges
//! `g -> ga` and `g -> gb`. A transitive action of this group on the points
//! `0..k` is fixed by the images `A` and `B` of the two generators, and the
//! orbit map of point 0 identifies `T(2)` with its quotient by the cosets of
//! the point stabiliser. The quotient digraph has an edge `p -> A[p]` and an
//! edge `p -> B[p]` for each point `p`.
//!
//! Permutations are zero-based image arrays; words act on the right, so the
//! word `ab` sends `p` to `B[A[p]]`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, Vertex};
use crate::families::{t2_ball, FamilyError, Gen};
use crate::homogeneity::is_c_homogeneous;
use crate::reachability::{delta_shape, DeltaShape};
use crate::symmetry::{canonical_form, vertex_transitive};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum QuotientError {
    #[error("{gen} is not a permutation of 0..{k}")]
    NotAPermutation { gen: char, k: usize },
    #[error("point {point} is fixed by {gen}")]
    FixedPoint { gen: char, point: usize },
    #[error("{gen} does not have order 3")]
    WrongOrder { gen: char },
    #[error("the generated group is not transitive on the points")]
    NotTransitive,
    #[error("points {p} and {q} are joined in both directions")]
    QuotientSymmetric { p: usize, q: usize },
    #[error("radius must be at least 1")]
    BadRadius,
}

/// A transitive action of `Z3 * Z3` on `0..k` by fixed-point-free
/// permutations of order 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} a={:?} b={:?}", self.k, self.a, self.b)
    }
}

impl QuotientSpec {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Self {
        QuotientSpec { k: a.len(), a, b }
    }

    fn generators(&self) -> [(char, &[usize]); 2] {
        [('A', &self.a), ('B', &self.b)]
    }

    /// Checks the permutation, order, fixed-point and transitivity conditions.
    pub fn validate(&self) -> Result<(), QuotientError> {
        for (gen, p) in self.generators() {
            let mut seen = vec![false; self.k];
            if p.len() != self.k || p.iter().any(|&x| x >= self.k || std::mem::replace(&mut seen[x], true)) {
                return Err(QuotientError::NotAPermutation { gen, k: self.k });
            }
        }
        for (gen, p) in self.generators() {
            if let Some(point) = (0..self.k).find(|&x| p[x] == x) {
                return Err(QuotientError::FixedPoint { gen, point });
            }
            if (0..self.k).any(|x| p[p[p[x]]] != x) {
                return Err(QuotientError::WrongOrder { gen });
            }
        }
        if self.k == 0 || self.orbit_of_zero().len() != self.k {
            return Err(QuotientError::NotTransitive);
        }
        Ok(())
    }

    fn orbit_of_zero(&self) -> Vec<usize> {
        let mut seen = vec![false; self.k];
        let mut order = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            for q in [self.a[p], self.b[p]] {
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
        order
    }

    /// Some point where both edge families coincide.
    pub fn is_collapsed(&self) -> bool {
        (0..self.k).any(|p| self.a[p] == self.b[p])
    }

    /// Image of point `p` under a word of `Z3 * Z3`.
    pub fn act(&self, p: usize, letters: impl IntoIterator<Item = Gen>) -> usize {
        letters.into_iter().fold(p, |x, g| match g {
            Gen::A => self.a[x],
            Gen::B => self.b[x],
        })
    }

    /// Relabels points in order of first appearance when scanning from
    /// `base` through the images under `a, a², b, b²`, optionally with the
    /// roles of the two generators exchanged.
    fn standard_form(&self, base: usize, swap: bool) -> QuotientSpec {
        let (a, b) = if swap { (&self.b, &self.a) } else { (&self.a, &self.b) };
        let k = self.k;
        let mut label = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        label[base] = 0;
        order.push(base);
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            for q in [a[p], a[a[p]], b[p], b[b[p]]] {
                if label[q] == usize::MAX {
                    label[q] = order.len();
                    order.push(q);
                }
            }
        }
        let mut na = vec![0; k];
        let mut nb = vec![0; k];
        for p in 0..k {
            na[label[p]] = label[a[p]];
            nb[label[p]] = label[b[p]];
        }
        QuotientSpec { k, a: na, b: nb }
    }

    /// Representative of the spec under simultaneous conjugation and the
    /// exchange of the two generators. Requires a valid spec.
    pub fn canonical(&self) -> QuotientSpec {
        (0..self.k)
            .flat_map(|base| [false, true].map(|swap| self.standard_form(base, swap)))
            .min()
            .expect("non-empty spec")
    }
}

/// Builds the quotient digraph `p -> A[p]`, `p -> B[p]`.
pub fn build_quotient(spec: &QuotientSpec) -> Result<Digraph, QuotientError> {
    spec.validate()?;
    let mut edges = Vec::with_capacity(2 * spec.k);
    for p in 0..spec.k {
        edges.push((p, spec.a[p]));
        edges.push((p, spec.b[p]));
    }
    for &(p, q) in &edges {
        if spec.a[q] == p || spec.b[q] == p {
            return Err(QuotientError::QuotientSymmetric { p: p.min(q), q: p.max(q) });
        }
    }
    Ok(Digraph::new(spec.k, edges).expect("checked above"))
}

/// A permutation `π` of the points with `π∘A = B∘π` and `π∘B = A∘π`, i.e. a
/// quotient automorphism exchanging the two triangle families.
pub fn check_swap_invariance(spec: &QuotientSpec) -> Option<Vec<usize>> {
    let k = spec.k;
    'image: for q in 0..k {
        let mut pi = vec![usize::MAX; k];
        let mut used = vec![false; k];
        pi[0] = q;
        used[q] = true;
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for (src, dst) in [(&spec.a, &spec.b), (&spec.b, &spec.a)] {
                let x = src[p];
                let y = dst[pi[p]];
                if pi[x] == usize::MAX {
                    if used[y] {
                        continue 'image;
                    }
                    pi[x] = y;
                    used[y] = true;
                    stack.push(x);
                } else if pi[x] != y {
                    continue 'image;
                }
            }
        }
        if pi.iter().all(|&x| x != usize::MAX) {
            return Some(pi);
        }
    }
    None
}

/// Whether the orbit map of point 0 restricted to the radius-`r` ball of
/// `T(2)` is a digraph homomorphism that maps the out- and in-neighbourhood
/// of every interior vertex onto the corresponding neighbourhood of its
/// image. Where the quotient has two distinct neighbours this makes the map
/// bijective on that neighbourhood.
pub fn covering_check(spec: &QuotientSpec, r: usize) -> Result<bool, QuotientError> {
    if r < 1 {
        return Err(QuotientError::BadRadius);
    }
    let quotient = build_quotient(spec)?;
    let ball = match t2_ball(r) {
        Ok(b) => b,
        Err(FamilyError::Quotient(e)) => return Err(e),
        Err(_) => return Err(QuotientError::BadRadius),
    };
    let image: Vec<usize> = ball.words.iter().map(|w| spec.act(0, w.letters())).collect();
    let d = &ball.digraph;
    if !d.edges().iter().all(|&(u, v)| quotient.has_edge(image[u], image[v])) {
        return Ok(false);
    }
    let as_set = |vs: &[Vertex]| {
        let mut s: Vec<usize> = vs.iter().map(|&v| image[v]).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    Ok(ball.interior.iter().all(|&x| {
        as_set(d.out_neighbors(x)) == quotient.out_neighbors(image[x])
            && as_set(d.in_neighbors(x)) == quotient.in_neighbors(image[x])
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub spec: QuotientSpec,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    /// Some point has `A[p] = B[p]`.
    pub collapsed: bool,
    pub has_triangle: bool,
    pub c_homogeneous: bool,
    pub vertex_transitive: bool,
    pub delta_shape: DeltaShape,
    pub delta_uniform: bool,
    pub swap_witness: Option<Vec<usize>>,
    /// Every class of the underlying equivalence on `T(2)` is a coset of a
    /// finite-index subgroup, hence infinite.
    pub classes_infinite: bool,
}

impl QuotientReport {
    /// Valid, connected and C-homogeneous.
    pub fn passes(&self) -> bool {
        self.connected && self.c_homogeneous
    }
}

pub fn verify_quotient(spec: &QuotientSpec) -> Result<QuotientReport, QuotientError> {
    let d = build_quotient(spec)?;
    let delta = delta_shape(&d).expect("quotients have edges");
    Ok(QuotientReport {
        spec: spec.clone(),
        vertices: d.n(),
        edges: d.edge_count(),
        connected: d.is_connected(),
        collapsed: spec.is_collapsed(),
        has_triangle: d.has_directed_triangle(),
        c_homogeneous: is_c_homogeneous(&d).holds,
        vertex_transitive: vertex_transitive(&d),
        delta_shape: delta.shape,
        delta_uniform: delta.uniform,
        swap_witness: check_swap_invariance(spec),
        classes_infinite: true,
    })
}

/// All transitive actions of `Z3 * Z3` on at most `k_max` points by
/// fixed-point-free generators whose quotient is a digraph, one per
/// conjugacy class (generator exchange included), in canonical form.
pub fn enumerate_specs(k_max: usize) -> Vec<QuotientSpec> {
    let mut out = Vec::new();
    let mut st = Enumeration {
        k_max,
        maps: [vec![usize::MAX; k_max], vec![usize::MAX; k_max]],
        points: 1,
    };
    if k_max >= 1 {
        st.extend(&mut out);
    }
    out.sort();
    out.dedup();
    out
}

struct Enumeration {
    k_max: usize,
    /// Partial images under A and B.
    maps: [Vec<usize>; 2],
    points: usize,
}

impl Enumeration {
    fn extend(&mut self, out: &mut Vec<QuotientSpec>) {
        // first undefined slot in scan order
        let slot = (0..self.points).flat_map(|p| [(p, 0), (p, 1)]).find(|&(p, g)| self.maps[g][p] == usize::MAX);
        let Some((p, g)) = slot else {
            let k = self.points;
            let spec = QuotientSpec::new(self.maps[0][..k].to_vec(), self.maps[1][..k].to_vec());
            if spec.canonical() == spec {
                out.push(spec);
            }
            return;
        };
        let free: Vec<usize> = (0..self.points).filter(|&q| q != p && self.maps[g][q] == usize::MAX).collect();
        let k_max = self.k_max;
        let with_new = |pts: usize, fixed: &[usize]| -> Vec<usize> {
            let mut c: Vec<usize> = free.iter().copied().filter(|x| !fixed.contains(x)).collect();
            if pts < k_max {
                c.push(pts);
            }
            c
        };
        for q in with_new(self.points, &[]) {
            let pts_after_q = if q == self.points { self.points + 1 } else { self.points };
            for r in with_new(pts_after_q, &[q]) {
                let pts_after_r = if r == pts_after_q { pts_after_q + 1 } else { pts_after_q };
                let saved = self.points;
                self.points = pts_after_r;
                let cycle = [p, q, r];
                for i in 0..3 {
                    self.maps[g][cycle[i]] = cycle[(i + 1) % 3];
                }
                // an arc in each direction between two points is never allowed
                let symmetric = (0..3).any(|i| {
                    let (x, y) = (cycle[i], cycle[(i + 1) % 3]);
                    self.maps[1 - g][y] == x
                });
                if !symmetric {
                    self.extend(out);
                }
                for &x in &cycle {
                    self.maps[g][x] = usize::MAX;
                }
                self.points = saved;
            }
        }
    }
}

/// Regular actions of `Z3 * Z3` on at most `k_max` points, i.e. actions of
/// finite groups `<x, y>` generated by two elements of order 3 on
/// themselves, one per conjugacy class (generator exchange included).
///
/// Uses coset enumeration: every closed loop at point 0 is recorded as a
/// relator and, since the point stabiliser of a regular action is normal,
/// imposed at every point, which forces most definitions.
pub fn enumerate_regular_specs(k_max: usize) -> Vec<QuotientSpec> {
    let mut out = Vec::new();
    if k_max >= 3 {
        let mut st = Cosets {
            k_max,
            fwd: [vec![usize::MAX; k_max], vec![usize::MAX; k_max]],
            bwd: [vec![usize::MAX; k_max], vec![usize::MAX; k_max]],
            points: 1,
            words: vec![Vec::new()],
            relators: vec![vec![0, 0, 0], vec![2, 2, 2]],
        };
        st.extend(&mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Letters: `0 = a`, `1 = a⁻¹`, `2 = b`, `3 = b⁻¹`; `l ^ 1` inverts `l`.
#[derive(Clone)]
struct Cosets {
    k_max: usize,
    fwd: [Vec<usize>; 2],
    bwd: [Vec<usize>; 2],
    points: usize,
    /// A word leading from point 0 to each point.
    words: Vec<Vec<u8>>,
    relators: Vec<Vec<u8>>,
}

struct Contradiction;

impl Cosets {
    fn get(&self, x: usize, l: u8) -> usize {
        let g = (l >> 1) as usize;
        if l & 1 == 0 { self.fwd[g][x] } else { self.bwd[g][x] }
    }

    /// Sets `x·l = y` for two existing points and records the new loop.
    fn join(&mut self, x: usize, l: u8, y: usize) -> Result<(), Contradiction> {
        let g = (l >> 1) as usize;
        let (u, v) = if l & 1 == 0 { (x, y) } else { (y, x) };
        if u == v || self.fwd[g][u] != usize::MAX || self.bwd[g][v] != usize::MAX || self.fwd[1 - g][v] == u {
            return Err(Contradiction);
        }
        self.fwd[g][u] = v;
        self.bwd[g][v] = u;
        if y < self.words.len() {
            let mut w = self.words[x].clone();
            w.push(l);
            w.extend(self.words[y].iter().rev().map(|&c| c ^ 1));
            let w = reduce(w);
            if !w.is_empty() && !self.relators.contains(&w) {
                self.relators.push(w);
            }
        }
        Ok(())
    }

    fn add_point(&mut self, x: usize, l: u8) -> Result<(), Contradiction> {
        let y = self.points;
        self.points += 1;
        let mut w = self.words[x].clone();
        w.push(l);
        self.join(x, l, y)?;
        self.words.push(w);
        Ok(())
    }

    /// Traces every relator from every point, filling single gaps, until
    /// nothing changes.
    fn deduce(&mut self) -> Result<(), Contradiction> {
        loop {
            let mut changed = false;
            let mut ri = 0;
            while ri < self.relators.len() {
                let rel = self.relators[ri].clone();
                for x in 0..self.points {
                    let mut f = x;
                    let mut i = 0;
                    while i < rel.len() {
                        let y = self.get(f, rel[i]);
                        if y == usize::MAX {
                            break;
                        }
                        f = y;
                        i += 1;
                    }
                    if i == rel.len() {
                        if f != x {
                            return Err(Contradiction);
                        }
                        continue;
                    }
                    let mut b = x;
                    let mut j = rel.len();
                    while j > i {
                        let y = self.get(b, rel[j - 1] ^ 1);
                        if y == usize::MAX {
                            break;
                        }
                        b = y;
                        j -= 1;
                    }
                    if j == i {
                        if f != b {
                            return Err(Contradiction);
                        }
                    } else if j == i + 1 {
                        self.join(f, rel[i], b)?;
                        changed = true;
                    }
                }
                ri += 1;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn extend(&mut self, out: &mut Vec<QuotientSpec>) {
        let slot = (0..self.points).flat_map(|p| (0..4u8).map(move |l| (p, l))).find(|&(p, l)| self.get(p, l) == usize::MAX);
        let Some((p, l)) = slot else {
            let k = self.points;
            let spec = QuotientSpec::new(self.fwd[0][..k].to_vec(), self.fwd[1][..k].to_vec());
            if spec.canonical() == spec {
                out.push(spec);
            }
            return;
        };
        for y in 0..=self.points {
            let mut next = self.clone();
            let step = if y == self.points {
                if y == self.k_max {
                    continue;
                }
                next.add_point(p, l)
            } else if self.get(y, l ^ 1) == usize::MAX {
                next.join(p, l, y)
            } else {
                continue;
            };
            if step.is_ok() && next.deduce().is_ok() {
                next.extend(out);
            }
        }
    }
}

/// Free and cyclic reduction.
fn reduce(w: Vec<u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    for c in w {
        if out.last() == Some(&(c ^ 1)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == out[j - 1] ^ 1 {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub spec: QuotientSpec,
    pub report: QuotientReport,
}

/// Up to this many points [`search_quotients`] tries every transitive
/// action; beyond it only regular ones.
pub const TRANSITIVE_SEARCH_BOUND: usize = 15;

/// Point count of the smallest quotient whose reachability digraphs are
/// 10-cycles: the action of `A5` on itself, generated by two 3-cycles whose
/// quotient `x y⁻¹` has order 5. No group of order 15, 30 or 45 is generated
/// by two elements of order 3 with such a quotient.
pub const C10_QUOTIENT_POINTS: usize = 60;

/// Verified C-homogeneous quotients on at most `k_max` points, one per
/// isomorphism class of digraph, sorted by `(k, canonical spec)`.
///
/// A C-homogeneous quotient of out-degree 2 comes from an equivalence
/// invariant under a vertex-transitive group of automorphisms of `T(2)`;
/// such a group contains the whole left-regular `Z3 * Z3` (which has no
/// subgroup of index 2), forcing the point stabiliser to be normal. All
/// transitive actions are still tried up to [`TRANSITIVE_SEARCH_BOUND`]
/// points as a cross-check; above it the search is restricted to regular
/// actions.
pub fn search_quotients(k_max: usize) -> Vec<SearchResult> {
    let mut specs = enumerate_specs(k_max.min(TRANSITIVE_SEARCH_BOUND));
    specs.extend(enumerate_regular_specs(k_max).into_iter().filter(|s| s.k > TRANSITIVE_SEARCH_BOUND));
    let mut verified: Vec<SearchResult> = specs
        .par_iter()
        .filter_map(|spec| {
            let report = verify_quotient(spec).ok()?;
            report.passes().then(|| SearchResult {
                spec: spec.clone(),
                report,
            })
        })
        .collect();
    verified.sort_by(|x, y| (x.spec.k, &x.spec).cmp(&(y.spec.k, &y.spec)));
    let mut seen: HashSet<Digraph> = HashSet::new();
    verified.retain(|r| seen.insert(canonical_form(&build_quotient(&r.spec).expect("verified"))));
    verified
}

/// Number of canonical specs per point count, for reporting.
pub fn spec_counts(specs: &[QuotientSpec]) -> HashMap<usize, usize> {
    let mut m = HashMap::new();
    for s in specs {
        *m.entry(s.k).or_insert(0) += 1;
    }
    m
}

/// The 3×3 torus action: point `(x, y)` is `3x + y`, `A` adds `(1, 0)` and
/// `B` adds `(0, 1)`.
pub fn torus_spec() -> QuotientSpec {
    let idx = |x: usize, y: usize| 3 * (x % 3) + (y % 3);
    let a = (0..9).map(|p| idx(p / 3 + 1, p % 3)).collect();
    let b = (0..9).map(|p| idx(p / 3, p % 3 + 1)).collect();
    QuotientSpec::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_spec() -> QuotientSpec {
        QuotientSpec::new(vec![1, 2, 0], vec![1, 2, 0])
    }

    #[test]
    fn build_examples() {
        let d = build_quotient(&c3_spec()).unwrap();
        assert_eq!(d.edges(), &[(0, 1), (1, 2), (2, 0)]);
        let t = build_quotient(&torus_spec()).unwrap();
        assert_eq!((t.n(), t.edge_count()), (9, 18));
        for v in 0..9 {
            assert_eq!((t.out_degree(v), t.in_degree(v)), (2, 2));
            assert_eq!(t.triangles_at(v).len(), 2);
        }
        let bad = QuotientSpec::new(vec![1, 2, 0, 3], vec![1, 2, 0, 3]);
        assert_eq!(build_quotient(&bad), Err(QuotientError::FixedPoint { gen: 'A', point: 3 }));
        let sym = QuotientSpec::new(vec![1, 2, 0], vec![2, 0, 1]);
        assert!(matches!(build_quotient(&sym), Err(QuotientError::QuotientSymmetric { .. })));
        let split = QuotientSpec::new(vec![1, 2, 0, 4, 5, 3], vec![1, 2, 0, 4, 5, 3]);
        assert_eq!(build_quotient(&split), Err(QuotientError::NotTransitive));
        let order = QuotientSpec::new(vec![1, 0, 3, 2, 5, 4], vec![1, 2, 0, 4, 5, 3]);
        assert_eq!(order.validate(), Err(QuotientError::WrongOrder { gen: 'A' }));
    }

    #[test]
    fn swap_examples() {
        assert_eq!(check_swap_invariance(&c3_spec()), Some(vec![0, 1, 2]));
        let pi = check_swap_invariance(&torus_spec()).unwrap();
        let swap: Vec<usize> = (0..9).map(|p| 3 * (p % 3) + p / 3).collect();
        assert_eq!(pi, swap);
    }

    #[test]
    fn covering() {
        assert!(covering_check(&torus_spec(), 2).unwrap());
        assert!(covering_check(&c3_spec(), 2).unwrap());
        let split = QuotientSpec::new(vec![1, 2, 0, 4, 5, 3], vec![1, 2, 0, 4, 5, 3]);
        assert_eq!(covering_check(&split, 2), Err(QuotientError::NotTransitive));
    }

    #[test]
    fn canonical_is_conjugation_invariant() {
        let t = torus_spec();
        let c = t.canonical();
        // conjugate by a relabelling and exchange the generators
        let perm = [4, 0, 8, 1, 3, 2, 7, 6, 5];
        let mut a = vec![0; 9];
        let mut b = vec![0; 9];
        for p in 0..9 {
            a[perm[p]] = perm[t.b[p]];
            b[perm[p]] = perm[t.a[p]];
        }
        assert_eq!(QuotientSpec::new(a, b).canonical(), c);
    }

    #[test]
    fn smallest_search() {
        let specs = enumerate_specs(3);
        assert_eq!(specs, vec![c3_spec()]);
        let found = search_quotients(3);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].spec, c3_spec());
    }
}
