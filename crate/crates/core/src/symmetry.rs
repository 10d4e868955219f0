//! Automorphisms and isomorphisms by individualisation–refinement.
//!
//! The engine works on a [`Structure`]: a complete relation-code matrix over
//! `0..n` plus a vertex colouring. Digraphs use the codes
//! [`OUT`](crate::digraph::OUT)/[`IN`](crate::digraph::IN); undirected graphs
//! use [`UNDIRECTED`] in both directions. Colour refinement splits every
//! neighbour multiset by relation code, so orientation is always respected.
//!
//! Branching always picks the smallest non-singleton cell (lowest colour on
//! ties) and tries its images in ascending order, so every witness returned
//! here is deterministic.

use num_bigint::BigUint;
use thiserror::Error;

use crate::digraph::{Digraph, Vertex, NONE};

/// Relation code for an undirected edge.
pub const UNDIRECTED: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("map is not injective or has an out-of-range vertex")]
    NotInjective,
    #[error("map does not preserve the induced structure at ({0},{1})")]
    NotPartialIso(Vertex, Vertex),
    #[error("tuples have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("tuple repeats vertex {0}")]
    RepeatedEntry(Vertex),
}

/// A coloured relational structure on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    n: usize,
    rel: Vec<u8>,
    colors: Vec<u32>,
}

impl Structure {
    pub fn from_digraph(d: &Digraph) -> Self {
        Structure {
            n: d.n(),
            rel: d.relation_matrix().to_vec(),
            colors: vec![0; d.n()],
        }
    }

    /// Underlying undirected graph of `d`, coloured by `sides`.
    pub fn undirected(d: &Digraph, sides: &[u32]) -> Self {
        let rel = d
            .relation_matrix()
            .iter()
            .map(|&c| if c == NONE { NONE } else { UNDIRECTED })
            .collect();
        Structure {
            n: d.n(),
            rel,
            colors: sides.to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rel(&self, u: Vertex, v: Vertex) -> u8 {
        self.rel[u * self.n + v]
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v]
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rel(u, v) != NONE
    }

    /// Substructure on `verts`, vertex `i` of the result being `verts[i]`.
    pub fn induced(&self, verts: &[Vertex]) -> Structure {
        let k = verts.len();
        let mut rel = vec![NONE; k * k];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                rel[i * k + j] = self.rel(u, v);
            }
        }
        Structure {
            n: k,
            rel,
            colors: verts.iter().map(|&v| self.colors[v]).collect(),
        }
    }

    /// True when the vertex set induces a connected substructure.
    pub fn is_connected_on(&self, verts: &[Vertex]) -> bool {
        if verts.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; verts.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..verts.len() {
                if !seen[j] && self.adjacent(verts[i], verts[j]) {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == verts.len()
    }

    /// Checks that `pairs` is injective and preserves colours and relations.
    pub fn check_partial_iso(&self, pairs: &[(Vertex, Vertex)]) -> Result<(), SymmetryError> {
        let mut dom = vec![false; self.n];
        let mut cod = vec![false; self.n];
        for &(a, b) in pairs {
            if a >= self.n || b >= self.n || dom[a] || cod[b] {
                return Err(SymmetryError::NotInjective);
            }
            dom[a] = true;
            cod[b] = true;
        }
        for &(a, b) in pairs {
            if self.colors[a] != self.colors[b] {
                return Err(SymmetryError::NotPartialIso(a, a));
            }
            for &(c, d) in pairs {
                if self.rel(a, c) != self.rel(b, d) {
                    return Err(SymmetryError::NotPartialIso(a, c));
                }
            }
        }
        Ok(())
    }

    /// An automorphism extending `pairs`, or `None`. The caller is
    /// responsible for `pairs` being a partial isomorphism.
    pub fn extend(&self, pairs: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
        find_isomorphism(self, self, pairs)
    }

    /// Whether the only automorphism fixing every vertex of `fixed` is the
    /// identity.
    pub fn pointwise_stabilizer_trivial(&self, fixed: &[Vertex]) -> bool {
        let pairs: Vec<_> = fixed.iter().map(|&v| (v, v)).collect();
        let (lc, _) = individualize(self, &self.colors, &pairs, &self.colors);
        let Some(colors) = refine_single(self, lc) else {
            return true;
        };
        if target_cell(&colors).is_none() {
            return true;
        }
        let mut probe = pairs.clone();
        for v in 0..self.n {
            for w in v + 1..self.n {
                if colors[v] != colors[w] {
                    continue;
                }
                probe.push((v, w));
                let moved = self.extend(&probe).is_some();
                probe.pop();
                if moved {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_automorphism(&self, perm: &[Vertex]) -> bool {
        perm.len() == self.n
            && (0..self.n).all(|u| {
                self.colors[u] == self.colors[perm[u]]
                    && (0..self.n).all(|v| self.rel(u, v) == self.rel(perm[u], perm[v]))
            })
    }

    /// Orbit of `v` under the full automorphism group, ascending.
    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let colors = match refine_single(self, self.colors.clone()) {
            Some(c) => c,
            None => return vec![v],
        };
        let mut gens: Vec<Vec<Vertex>> = Vec::new();
        let mut in_orbit = vec![false; self.n];
        in_orbit[v] = true;
        for w in 0..self.n {
            if in_orbit[w] || colors[w] != colors[v] {
                continue;
            }
            if let Some(g) = self.extend(&[(v, w)]) {
                gens.push(g);
                close_orbit(&mut in_orbit, &gens);
            }
        }
        (0..self.n).filter(|&w| in_orbit[w]).collect()
    }
}

fn close_orbit(in_orbit: &mut [bool], gens: &[Vec<Vertex>]) {
    let mut stack: Vec<Vertex> = (0..in_orbit.len()).filter(|&w| in_orbit[w]).collect();
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !in_orbit[y] {
                in_orbit[y] = true;
                stack.push(y);
            }
        }
    }
}

fn signatures(s: &Structure, colors: &[u32]) -> Vec<Vec<u64>> {
    let n = s.n;
    (0..n)
        .map(|v| {
            let mut sig = Vec::with_capacity(8);
            for (u, &c) in colors.iter().enumerate() {
                let code = s.rel[v * n + u];
                if code != NONE {
                    sig.push(((code as u64) << 32) | c as u64);
                }
            }
            sig.sort_unstable();
            sig.push(u64::MAX);
            sig.push(colors[v] as u64);
            sig
        })
        .collect()
}

fn count_colors(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines two colourings in lockstep. Returns `None` as soon as the colour
/// multisets diverge, i.e. no colour-preserving isomorphism exists.
fn refine_pair(
    l: &Structure,
    r: &Structure,
    mut lc: Vec<u32>,
    mut rc: Vec<u32>,
) -> Option<(Vec<u32>, Vec<u32>)> {
    {
        let mut a = lc.clone();
        let mut b = rc.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let mut count = usize::MAX;
    loop {
        let ls = signatures(l, &lc);
        let rs = signatures(r, &rc);
        let mut sorted_l: Vec<&Vec<u64>> = ls.iter().collect();
        let mut sorted_r: Vec<&Vec<u64>> = rs.iter().collect();
        sorted_l.sort_unstable();
        sorted_r.sort_unstable();
        if sorted_l != sorted_r {
            return None;
        }
        sorted_l.dedup();
        let new_count = sorted_l.len();
        for v in 0..l.n {
            lc[v] = sorted_l.binary_search(&&ls[v]).unwrap() as u32;
            rc[v] = sorted_l.binary_search(&&rs[v]).unwrap() as u32;
        }
        if new_count == count {
            return Some((lc, rc));
        }
        count = new_count;
    }
}

fn refine_single(s: &Structure, mut colors: Vec<u32>) -> Option<Vec<u32>> {
    let mut count = usize::MAX;
    loop {
        let sigs = signatures(s, &colors);
        let mut sorted: Vec<&Vec<u64>> = sigs.iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let new_count = sorted.len();
        for v in 0..s.n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap() as u32;
        }
        if new_count == count {
            return Some(colors);
        }
        count = new_count;
    }
}

/// Smallest non-singleton cell: returns its colour, or `None` if discrete.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let k = count_colors(colors);
    let mut sizes = vec![0usize; k.max(colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0))];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s > 1)
        .min_by_key(|&(c, &s)| (s, c))
        .map(|(c, _)| c as u32)
}

fn individualize(l: &Structure, lc: &[u32], pairs: &[(Vertex, Vertex)], rc: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let base = lc.iter().copied().max().map_or(0, |m| m + 1);
    let mut lc = lc.to_vec();
    let mut rc = rc.to_vec();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        debug_assert!(a < l.n);
        lc[a] = base + i as u32;
        rc[b] = base + i as u32;
    }
    (lc, rc)
}

fn search(l: &Structure, r: &Structure, lc: Vec<u32>, rc: Vec<u32>) -> Option<Vec<Vertex>> {
    match target_cell(&lc) {
        None => {
            let mut by_color = vec![0; l.n];
            for w in 0..r.n {
                by_color[rc[w] as usize] = w;
            }
            let map: Vec<Vertex> = (0..l.n).map(|v| by_color[lc[v] as usize]).collect();
            let ok = (0..l.n).all(|u| {
                l.colors[u] == r.colors[map[u]]
                    && (0..l.n).all(|v| l.rel(u, v) == r.rel(map[u], map[v]))
            });
            ok.then_some(map)
        }
        Some(cell) => {
            let v = (0..l.n).find(|&v| lc[v] == cell).unwrap();
            for w in (0..r.n).filter(|&w| rc[w] == cell) {
                let (lc2, rc2) = individualize(l, &lc, &[(v, w)], &rc);
                if let Some((lc2, rc2)) = refine_pair(l, r, lc2, rc2) {
                    if let Some(map) = search(l, r, lc2, rc2) {
                        return Some(map);
                    }
                }
            }
            None
        }
    }
}

/// A colour- and relation-preserving bijection `l -> r` extending `pairs`.
pub fn find_isomorphism(l: &Structure, r: &Structure, pairs: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    if l.n != r.n {
        return None;
    }
    let (lc, rc) = individualize(l, &l.colors, pairs, &r.colors);
    let (lc, rc) = refine_pair(l, r, lc, rc)?;
    search(l, r, lc, rc)
}

/// Canonical relabelling: returns `perm` with `perm[v]` the canonical label
/// of `v`. Explores every leaf of the refinement tree, so it is meant for
/// small or rigid structures.
pub fn canonical_labeling(s: &Structure) -> Vec<Vertex> {
    fn key(s: &Structure, labels: &[u32]) -> Vec<u8> {
        let n = s.n;
        let mut inv = vec![0; n];
        for v in 0..n {
            inv[labels[v] as usize] = v;
        }
        let mut k = Vec::with_capacity(n * n + 4 * n);
        for &v in &inv {
            k.extend_from_slice(&s.colors[v].to_be_bytes());
        }
        for &u in &inv {
            for &v in &inv {
                k.push(s.rel(u, v));
            }
        }
        k
    }
    fn walk(s: &Structure, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<u32>)>) {
        match target_cell(&colors) {
            None => {
                let k = key(s, &colors);
                if best.as_ref().is_none_or(|(b, _)| k < *b) {
                    *best = Some((k, colors));
                }
            }
            Some(cell) => {
                let next = count_colors(&colors) as u32;
                for v in (0..s.n).filter(|&v| colors[v] == cell) {
                    let mut c = colors.clone();
                    c[v] = next;
                    let c = refine_single(s, c).unwrap();
                    walk(s, c, best);
                }
            }
        }
    }
    // start from colours ranked canonically by value so the labelling
    // does not depend on the concrete colour ids chosen by the caller
    let mut best = None;
    let start = refine_single(s, s.colors.clone()).unwrap();
    walk(s, start, &mut best);
    best.map(|(_, c)| c.into_iter().map(|x| x as usize).collect()).unwrap_or_default()
}

/// Injective partial vertex map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    pairs: Vec<(Vertex, Vertex)>,
}

impl PartialMap {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<Self, SymmetryError> {
        let mut dom: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
        let mut cod: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        dom.sort_unstable();
        cod.sort_unstable();
        if dom.windows(2).any(|w| w[0] == w[1]) || cod.windows(2).any(|w| w[0] == w[1]) {
            return Err(SymmetryError::NotInjective);
        }
        Ok(PartialMap { pairs })
    }

    /// Entrywise map `t1[i] -> t2[i]` between two tuples of distinct vertices.
    pub fn from_tuples(t1: &[Vertex], t2: &[Vertex]) -> Result<Self, SymmetryError> {
        if t1.len() != t2.len() {
            return Err(SymmetryError::LengthMismatch(t1.len(), t2.len()));
        }
        for t in [t1, t2] {
            let mut s = t.to_vec();
            s.sort_unstable();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(SymmetryError::RepeatedEntry(w[0]));
            }
        }
        Ok(PartialMap {
            pairs: t1.iter().copied().zip(t2.iter().copied()).collect(),
        })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn domain(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn codomain(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Generators and order of the automorphism group of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    n: usize,
    generators: Vec<Vec<Vertex>>,
    order: BigUint,
    base: Vec<Vertex>,
    orbit_sizes: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn generators(&self) -> &[Vec<Vertex>] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Base points of the stabiliser chain with the basic orbit sizes.
    pub fn chain(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.base.iter().copied().zip(self.orbit_sizes.iter().copied())
    }

    /// Vertex orbits under the generators, each ascending, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen[v] {
                continue;
            }
            let mut in_orbit = vec![false; self.n];
            in_orbit[v] = true;
            close_orbit(&mut in_orbit, &self.generators);
            let orbit: Vec<Vertex> = (0..self.n).filter(|&w| in_orbit[w]).collect();
            for &w in &orbit {
                seen[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn same_orbit(&self, u: Vertex, v: Vertex) -> bool {
        let mut in_orbit = vec![false; self.n];
        in_orbit[u] = true;
        close_orbit(&mut in_orbit, &self.generators);
        in_orbit[v]
    }
}

/// Automorphism group by a stabiliser chain over the base `0, 1, ..., n-1`.
pub fn automorphism_group_of(s: &Structure) -> AutomorphismGroup {
    let n = s.n;
    // depth at which the pointwise stabiliser of the base prefix becomes trivial
    let mut refined_levels: Vec<Vec<u32>> = Vec::new();
    let mut depth = 0;
    loop {
        let pairs: Vec<(Vertex, Vertex)> = (0..depth).map(|v| (v, v)).collect();
        let (lc, _) = individualize(s, &s.colors, &pairs, &s.colors);
        let c = refine_single(s, lc).unwrap();
        let discrete = target_cell(&c).is_none();
        refined_levels.push(c);
        if discrete || depth >= n {
            break;
        }
        depth += 1;
    }
    // levels 0..depth are non-trivial candidates
    let mut generators: Vec<Vec<Vertex>> = Vec::new();
    let mut orbit_sizes = vec![1usize; depth];
    for level in (0..depth).rev() {
        let b = level;
        let colors = &refined_levels[level];
        let fixes_prefix = |g: &Vec<Vertex>| (0..level).all(|v| g[v] == v);
        let mut level_gens: Vec<Vec<Vertex>> =
            generators.iter().filter(|g| fixes_prefix(g)).cloned().collect();
        let mut in_orbit = vec![false; n];
        in_orbit[b] = true;
        close_orbit(&mut in_orbit, &level_gens);
        for w in 0..n {
            if in_orbit[w] || colors[w] != colors[b] {
                continue;
            }
            let mut pairs: Vec<(Vertex, Vertex)> = (0..level).map(|v| (v, v)).collect();
            pairs.push((b, w));
            if let Some(g) = s.extend(&pairs) {
                generators.push(g.clone());
                level_gens.push(g);
                close_orbit(&mut in_orbit, &level_gens);
            }
        }
        orbit_sizes[level] = in_orbit.iter().filter(|&&x| x).count();
    }
    let order = orbit_sizes
        .iter()
        .fold(BigUint::from(1u32), |acc, &k| acc * BigUint::from(k));
    AutomorphismGroup {
        n,
        generators,
        order,
        base: (0..depth).collect(),
        orbit_sizes,
    }
}

pub fn automorphism_group(d: &Digraph) -> AutomorphismGroup {
    automorphism_group_of(&Structure::from_digraph(d))
}

/// Extends `map` to an automorphism of `d`, if one exists.
pub fn extend_partial(d: &Digraph, map: &PartialMap) -> Result<Option<Vec<Vertex>>, SymmetryError> {
    let s = Structure::from_digraph(d);
    s.check_partial_iso(map.pairs())?;
    Ok(s.extend(map.pairs()))
}

/// Whether some automorphism maps the ordered tuple `t1` onto `t2`.
/// Tuples with different induced patterns are simply not in one orbit.
pub fn same_orbit(d: &Digraph, t1: &[Vertex], t2: &[Vertex]) -> Result<bool, SymmetryError> {
    let map = PartialMap::from_tuples(t1, t2)?;
    match extend_partial(d, &map) {
        Ok(r) => Ok(r.is_some()),
        Err(SymmetryError::NotPartialIso(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

pub fn vertex_transitive(d: &Digraph) -> bool {
    d.n() == 0 || Structure::from_digraph(d).orbit(0).len() == d.n()
}

/// An isomorphism `a -> b` as an image array, if one exists.
pub fn isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<Vertex>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    find_isomorphism(&Structure::from_digraph(a), &Structure::from_digraph(b), &[])
}

pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    isomorphism(a, b).is_some()
}

/// Canonical representative of the isomorphism class of `d`.
pub fn canonical_form(d: &Digraph) -> Digraph {
    let labels = canonical_labeling(&Structure::from_digraph(d));
    d.relabel(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: usize) -> Digraph {
        Digraph::new(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
    }

    fn brute_force_order(d: &Digraph) -> usize {
        let s = Structure::from_digraph(d);
        let mut perm: Vec<usize> = (0..d.n()).collect();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            if s.is_automorphism(p) {
                count += 1;
            }
        });
        count
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn group_orders() {
        for m in 3..9 {
            assert_eq!(automorphism_group(&cycle(m)).order(), &BigUint::from(m));
        }
        assert_eq!(automorphism_group(&Digraph::empty(5)).order(), &BigUint::from(120u32));
        let blown = cycle(3).lex_product(&Digraph::empty(2));
        assert_eq!(brute_force_order(&blown), 24);
        assert_eq!(automorphism_group(&blown).order(), &BigUint::from(24u32));
    }

    #[test]
    fn generators_are_automorphisms() {
        let d = cycle(4).lex_product(&Digraph::empty(3));
        let g = automorphism_group(&d);
        let s = Structure::from_digraph(&d);
        assert!(g.generators().iter().all(|p| s.is_automorphism(p)));
        assert_eq!(g.order(), &BigUint::from(4u32 * 6 * 6 * 6 * 6));
    }

    #[test]
    fn extend_examples() {
        let c4 = cycle(4);
        let m = PartialMap::new(vec![(0, 2)]).unwrap();
        assert_eq!(extend_partial(&c4, &m).unwrap(), Some(vec![2, 3, 0, 1]));
        let edge = Digraph::new(2, [(0, 1)]).unwrap();
        let m = PartialMap::new(vec![(0, 1)]).unwrap();
        assert_eq!(extend_partial(&edge, &m).unwrap(), None);
        let c5 = cycle(5);
        let m = PartialMap::new(vec![(0, 0), (2, 3)]).unwrap();
        assert_eq!(extend_partial(&c5, &m).unwrap(), None);
        let bad = PartialMap::new(vec![(0, 0), (1, 2)]).unwrap();
        assert!(matches!(extend_partial(&c5, &bad), Err(SymmetryError::NotPartialIso(..))));
        let id = extend_partial(&c5, &PartialMap::new(vec![]).unwrap()).unwrap();
        assert_eq!(id, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn orbit_queries() {
        assert!(same_orbit(&cycle(6), &[0], &[3]).unwrap());
        let edge = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(!same_orbit(&edge, &[0], &[1]).unwrap());
        assert!(same_orbit(&edge, &[0, 0], &[0, 1]).is_err());
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!vertex_transitive(&path));
        assert!(vertex_transitive(&Digraph::empty(5)));
        let blown = cycle(3).lex_product(&Digraph::empty(2));
        for v in 0..6 {
            assert!(same_orbit(&blown, &[0], &[v]).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let d = Digraph::new(5, [(0, 1), (1, 2), (2, 0), (3, 0), (3, 4)]).unwrap();
        let c = canonical_form(&d);
        for perm in [[4, 3, 2, 1, 0], [1, 2, 3, 4, 0], [2, 0, 1, 4, 3]] {
            assert_eq!(canonical_form(&d.relabel(&perm)), c);
        }
        assert!(are_isomorphic(&c, &d));
    }

    #[test]
    fn undirected_structure_respects_sides() {
        // path a0 - b0 - a1 - b1 oriented A -> B
        let d = Digraph::new(4, [(0, 1), (2, 1), (2, 3)]).unwrap();
        let s = Structure::undirected(&d, &[0, 1, 0, 1]);
        // the reflection swaps sides, so only the identity survives
        assert_eq!(automorphism_group_of(&s).order(), &BigUint::from(1u32));
        let s = Structure::undirected(&d, &[0, 0, 0, 0]);
        assert_eq!(automorphism_group_of(&s).order(), &BigUint::from(2u32));
    }
}
