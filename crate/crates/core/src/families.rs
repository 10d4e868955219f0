//! Constructors for the named digraphs of the catalog.
//!
//! Labelings are fixed so that outputs are reproducible:
//!
//! * `directed_cycle(m)`: vertices `0..m`, edges `i -> i+1 mod m`.
//! * `cp(k)`: side A is `0..k`, side B is `k..2k`, edges `i -> k+j` for `i != j`.
//! * `y(k)`: vertex `(i, j)` with part `i ∈ {1,2,3}` and index `j ∈ 0..k` is
//!   `(i-1)*k + j`; the removed matching pairs equal indices.
//! * `t2_ball(r)`: vertices in breadth-first order of their normal forms,
//!   neighbours expanded in the order `a, a², b, b²`.
//! * `lex_product(D, E)`: vertex `(x, y)` is `x * |E| + y`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, Vertex, VertexPartition};
use crate::homogeneity::is_homogeneous;
use crate::quotients::{build_quotient, QuotientError, QuotientSpec};
use crate::symmetry::are_isomorphic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("directed cycles need length at least 3, got {0}")]
    TooShort(usize),
    #[error("parameter {got} below the minimum {min}")]
    TooSmall { got: usize, min: usize },
    #[error("no candidate found up to order {0}")]
    SearchExhausted(usize),
    #[error("the Unknown entry has no digraph")]
    UnknownEntry,
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

pub fn directed_cycle(m: usize) -> Result<Digraph, FamilyError> {
    if m < 3 {
        return Err(FamilyError::TooShort(m));
    }
    Ok(Digraph::new(m, (0..m).map(|i| (i, (i + 1) % m))).expect("cycle is a digraph"))
}

/// Complete bipartite digraph from `0..k` to `k..2k` minus the matching `i -> k+i`.
/// Disconnected for `k = 2`.
pub fn cp(k: usize) -> Result<Digraph, FamilyError> {
    if k < 2 {
        return Err(FamilyError::TooSmall { got: k, min: 2 });
    }
    let edges = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, k + j)));
    Ok(Digraph::new(2 * k, edges).expect("cp is a digraph"))
}

/// Three parts of size `k` with `cp(k)` between consecutive parts.
pub fn y(k: usize) -> Result<Digraph, FamilyError> {
    if k < 3 {
        return Err(FamilyError::TooSmall { got: k, min: 3 });
    }
    let mut edges = Vec::with_capacity(3 * k * (k - 1));
    for part in 0..3 {
        let next = (part + 1) % 3;
        for j in 0..k {
            for j2 in (0..k).filter(|&j2| j2 != j) {
                edges.push((part * k + j, next * k + j2));
            }
        }
    }
    Ok(Digraph::new(3 * k, edges).expect("y is a digraph"))
}

/// The canonical parts `V_1, V_2, V_3` of `y(k)`.
pub fn y_parts(k: usize) -> VertexPartition {
    VertexPartition::new((0..3).map(|p| (p * k..(p + 1) * k).collect()).collect()).expect("disjoint")
}

/// Generator of the free product of two cyclic groups of order 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
}

/// Normal form of an element of `Z3 * Z3`: alternating syllables `g^e` with
/// `e ∈ {1, 2}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(Gen, u8)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[(Gen, u8)] {
        &self.0
    }

    /// Syllable length, equal to the distance from the identity in the
    /// underlying undirected Cayley graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Right multiplication by `g^e`.
    pub fn times(&self, g: Gen, e: u8) -> Word {
        let mut s = self.0.clone();
        match s.last_mut() {
            Some(last) if last.0 == g => {
                let p = (last.1 + e) % 3;
                if p == 0 {
                    s.pop();
                } else {
                    last.1 = p;
                }
            }
            _ => {
                if !e.is_multiple_of(3) {
                    s.push((g, e % 3));
                }
            }
        }
        Word(s)
    }

    /// Letters `a`/`b` spelling the word, exponent 2 written twice.
    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(g, e) in &self.0 {
            let c = match g {
                Gen::A => 'a',
                Gen::B => 'b',
            };
            if e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite ball in the triangle tree `T(2)`.
#[derive(Debug, Clone)]
pub struct T2Ball {
    pub digraph: Digraph,
    /// Normal form of each vertex.
    pub words: Vec<Word>,
    /// Vertices at distance at most `r - 1` from the identity.
    pub interior: Vec<Vertex>,
}

/// Radius-`r` ball around the identity in the Cayley digraph of `Z3 * Z3`
/// with edges `g -> ga` and `g -> gb`.
pub fn t2_ball(r: usize) -> Result<T2Ball, FamilyError> {
    if r < 1 {
        return Err(FamilyError::TooSmall { got: r, min: 1 });
    }
    let mut words = vec![Word::identity()];
    let mut index: HashMap<Word, Vertex> = HashMap::from([(Word::identity(), 0)]);
    let mut head = 0;
    while head < words.len() {
        let w = words[head].clone();
        head += 1;
        if w.len() == r {
            continue;
        }
        for (g, e) in [(Gen::A, 1), (Gen::A, 2), (Gen::B, 1), (Gen::B, 2)] {
            let next = w.times(g, e);
            if !index.contains_key(&next) {
                index.insert(next.clone(), words.len());
                words.push(next);
            }
        }
    }
    let mut edges = Vec::new();
    for (v, w) in words.iter().enumerate() {
        for g in [Gen::A, Gen::B] {
            if let Some(&u) = index.get(&w.times(g, 1)) {
                edges.push((v, u));
            }
        }
    }
    let digraph = Digraph::new(words.len(), edges).expect("Cayley digraph is oriented");
    let interior = (0..words.len()).filter(|&v| words[v].len() < r).collect();
    Ok(T2Ball {
        digraph,
        words,
        interior,
    })
}

/// Edge list of `H`, the connected homogeneous digraph in which every out- and
/// in-neighbourhood induces a directed triangle. Produced by [`search_h`]
/// and checked against it in the tests.
const H_EDGES: &[(Vertex, Vertex)] = &[
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (1, 7), (2, 3), (2, 5),
    (2, 7), (3, 1), (3, 6), (3, 7), (4, 0), (4, 2), (4, 5), (5, 0),
    (5, 3), (5, 6), (6, 0), (6, 1), (6, 4), (7, 4), (7, 5), (7, 6),
];
const H_ORDER: usize = 8;

pub fn h() -> Digraph {
    Digraph::new(H_ORDER, H_EDGES.iter().copied()).expect("frozen H is a digraph")
}

/// Order bound used by [`search_h`] when regenerating `H`.
pub const H_SEARCH_BOUND: usize = 12;

/// Every connected homogeneous digraph on at most `max_order` vertices whose
/// out- and in-neighbourhoods all induce directed triangles, up to
/// isomorphism, in increasing order.
pub fn search_h(max_order: usize) -> Result<Vec<Digraph>, FamilyError> {
    let mut found: Vec<Digraph> = Vec::new();
    for n in 7..=max_order {
        let mut candidates = Vec::new();
        triangle_neighborhood_digraphs(n, &mut candidates);
        for d in candidates {
            if found.iter().any(|f| are_isomorphic(f, &d)) {
                continue;
            }
            if d.is_connected() && is_homogeneous(&d).holds {
                found.push(d);
            }
        }
    }
    if found.is_empty() {
        Err(FamilyError::SearchExhausted(max_order))
    } else {
        Ok(found)
    }
}

/// True when `vs` (three vertices) induces a directed triangle.
fn induces_triangle(d: &Digraph, vs: &[Vertex]) -> bool {
    vs.len() == 3 && vs.iter().all(|&x| vs.iter().filter(|&&y| d.has_edge(x, y)).count() == 1)
}

pub(crate) fn has_triangle_neighborhoods(d: &Digraph) -> bool {
    (0..d.n()).all(|x| induces_triangle(d, d.out_neighbors(x)) && induces_triangle(d, d.in_neighbors(x)))
}

/// All labelled digraphs on `n` vertices with `d⁺ = d⁻ = 3` and triangle
/// neighbourhoods where vertex 0 has out-triangle `1 -> 2 -> 3 -> 1`,
/// in-triangle `4 -> 5 -> 6 -> 4` and no other neighbours. Every such
/// digraph has a labelling of this form.
fn triangle_neighborhood_digraphs(n: usize, out: &mut Vec<Digraph>) {
    const UNSET: u8 = 255;
    let mut rel = vec![UNSET; n * n];
    let set = |rel: &mut Vec<u8>, u: usize, v: usize, code: u8| {
        rel[u * n + v] = code;
        rel[v * n + u] = match code {
            1 => 2,
            2 => 1,
            c => c,
        };
    };
    for v in 0..n {
        rel[v * n + v] = 0;
    }
    for v in 1..n {
        set(&mut rel, 0, v, 0);
    }
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1), (4, 0), (5, 0), (6, 0), (4, 5), (5, 6), (6, 4)] {
        set(&mut rel, u, v, 1);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| rel[u * n + v] == UNSET)
        .collect();

    fn consistent(rel: &[u8], n: usize, x: usize) -> bool {
        const UNSET: u8 = 255;
        let (mut o, mut i, mut free) = (0, 0, 0);
        let mut outs = [0usize; 4];
        let mut ins = [0usize; 4];
        for y in 0..n {
            match rel[x * n + y] {
                1 => {
                    if o == 3 {
                        return false;
                    }
                    outs[o] = y;
                    o += 1;
                }
                2 => {
                    if i == 3 {
                        return false;
                    }
                    ins[i] = y;
                    i += 1;
                }
                UNSET => free += 1,
                _ => {}
            }
        }
        if (3 - o) + (3 - i) > free {
            return false;
        }
        // neighbourhood members must be pairwise adjacent, each with at
        // most one out- and one in-neighbour inside the neighbourhood
        for set in [&outs[..o], &ins[..i]] {
            for (a_idx, &a) in set.iter().enumerate() {
                let (mut ao, mut ai) = (0, 0);
                for (b_idx, &b) in set.iter().enumerate() {
                    if a_idx == b_idx {
                        continue;
                    }
                    match rel[a * n + b] {
                        0 => return false,
                        1 => ao += 1,
                        2 => ai += 1,
                        _ => {}
                    }
                }
                if ao > 1 || ai > 1 {
                    return false;
                }
            }
        }
        true
    }

    fn rec(rel: &mut Vec<u8>, n: usize, pairs: &[(usize, usize)], idx: usize, out: &mut Vec<Digraph>) {
        if idx == pairs.len() {
            let d = Digraph::from_relation(n, rel);
            if d.is_regular() && d.out_degree(0) == 3 && d.in_degree(0) == 3 && has_triangle_neighborhoods(&d) {
                out.push(d);
            }
            return;
        }
        let (u, v) = pairs[idx];
        for code in [1u8, 2, 0] {
            rel[u * n + v] = code;
            rel[v * n + u] = match code {
                1 => 2,
                2 => 1,
                c => c,
            };
            let ok = consistent(rel, n, u)
                && consistent(rel, n, v)
                && (0..n).all(|w| {
                    // u and v sit together in N⁺(w) or N⁻(w)
                    let (a, b) = (rel[w * n + u], rel[w * n + v]);
                    !((a == 1 && b == 1) || (a == 2 && b == 2)) || consistent(rel, n, w)
                });
            if ok {
                rec(rel, n, pairs, idx + 1, out);
            }
        }
        rel[u * n + v] = 255;
        rel[v * n + u] = 255;
    }

    rec(&mut rel, n, &pairs, 0, out);
}

/// A family identifier with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CatalogEntry {
    /// `C_m[K̄_n]`.
    Cycle { m: usize, n: usize },
    /// `H[K̄_n]`.
    HComposite { n: usize },
    /// `Y_k`.
    Y { k: usize },
    /// Finite quotient of the triangle tree.
    T2Quotient { spec: QuotientSpec },
    /// The one-vertex digraph.
    Trivial,
    Unknown,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::Cycle { m, n } => write!(f, "Cycle({m},{n})"),
            CatalogEntry::HComposite { n } => write!(f, "HComposite({n})"),
            CatalogEntry::Y { k } => write!(f, "Y({k})"),
            CatalogEntry::T2Quotient { spec } => write!(f, "T2Quotient({spec})"),
            CatalogEntry::Trivial => write!(f, "Trivial"),
            CatalogEntry::Unknown => write!(f, "Unknown"),
        }
    }
}

pub fn build_catalog(entry: &CatalogEntry) -> Result<Digraph, FamilyError> {
    match entry {
        CatalogEntry::Cycle { m, n } => {
            if *n < 1 {
                return Err(FamilyError::TooSmall { got: *n, min: 1 });
            }
            Ok(directed_cycle(*m)?.lex_product(&Digraph::empty(*n)))
        }
        CatalogEntry::HComposite { n } => {
            if *n < 1 {
                return Err(FamilyError::TooSmall { got: *n, min: 1 });
            }
            Ok(h().lex_product(&Digraph::empty(*n)))
        }
        CatalogEntry::Y { k } => y(*k),
        CatalogEntry::T2Quotient { spec } => Ok(build_quotient(spec)?),
        CatalogEntry::Trivial => Ok(Digraph::empty(1)),
        CatalogEntry::Unknown => Err(FamilyError::UnknownEntry),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        let c3 = directed_cycle(3).unwrap();
        assert!((0..3).all(|v| c3.out_degree(v) == 1 && c3.in_degree(v) == 1));
        assert_eq!(directed_cycle(2), Err(FamilyError::TooShort(2)));
        let c6 = directed_cycle(6).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert!(c6.is_connected() && !c6.has_directed_triangle());
    }

    #[test]
    fn cp_examples() {
        let d = cp(3).unwrap();
        assert_eq!((d.n(), d.edge_count()), (6, 6));
        assert!((0..6).all(|v| d.out_degree(v) + d.in_degree(v) == 2));
        assert!(!cp(2).unwrap().is_connected());
        let d = cp(4).unwrap();
        for i in 0..4 {
            assert!(!d.adjacent(i, 4 + i));
            assert_eq!(d.in_degree(i), 0);
            assert_eq!(d.out_degree(4 + i), 0);
        }
        assert!(cp(1).is_err());
    }

    #[test]
    fn y_examples() {
        let d = y(3).unwrap();
        assert_eq!((d.n(), d.edge_count()), (9, 18));
        assert!((0..9).all(|v| d.out_degree(v) == 2 && d.in_degree(v) == 2));
        // vertex (1,0) is 0; (2,j) is 3+j; (3,j) is 6+j
        let nb = d.neighbors(0).unwrap();
        assert_eq!(nb.out, vec![4, 5]);
        assert_eq!(nb.inc, vec![7, 8]);
        assert_eq!(d.induced(&[0, 1, 2]).unwrap(), Digraph::empty(3));
        let comp = d.tripartite_complement(&y_parts(3)).unwrap();
        let blocks = comp.components();
        assert_eq!(blocks.blocks().len(), 3);
        for b in blocks.blocks() {
            assert!(are_isomorphic(&comp.induced(b).unwrap(), &directed_cycle(3).unwrap()));
        }
        assert_eq!(y(2), Err(FamilyError::TooSmall { got: 2, min: 3 }));
    }

    #[test]
    fn y_triangle_counts() {
        for k in 3..7 {
            let d = y(k).unwrap();
            for &(u, v) in d.edges() {
                assert_eq!(d.triangles_on_edge(u, v), k - 2);
            }
        }
    }

    #[test]
    fn words() {
        let a = Word::identity().times(Gen::A, 1);
        assert_eq!(a.times(Gen::A, 2), Word::identity());
        assert_eq!(a.times(Gen::A, 1).to_string(), "a^2");
        assert_eq!(a.times(Gen::B, 2).to_string(), "ab^2");
        assert_eq!(a.times(Gen::B, 2).letters().count(), 3);
    }

    #[test]
    fn ball_radius_one() {
        let ball = t2_ball(1).unwrap();
        assert_eq!(ball.digraph.n(), 5);
        assert_eq!(ball.interior, vec![0]);
        assert_eq!(ball.digraph.triangles_at(0).len(), 2);
        assert!(t2_ball(0).is_err());
    }

    #[test]
    fn h_regenerates() {
        let found = search_h(H_SEARCH_BOUND).unwrap();
        assert_eq!(found.len(), 1);
        assert!(are_isomorphic(&found[0], &h()));
    }

    #[test]
    fn h_properties() {
        let d = h();
        assert!(d.is_connected() && d.is_regular());
        assert_eq!((d.out_degree(0), d.in_degree(0)), (3, 3));
        assert!(has_triangle_neighborhoods(&d));
        assert!(crate::symmetry::vertex_transitive(&d));
        // a directed triangle together with a vertex dominating all of it
        let dominated = (0..8).any(|x| induces_triangle(&d, d.out_neighbors(x)));
        assert!(dominated);
        assert!(is_homogeneous(&d).holds);
    }

    #[test]
    fn catalog_entries() {
        let d = build_catalog(&CatalogEntry::Cycle { m: 3, n: 2 }).unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(build_catalog(&CatalogEntry::Y { k: 3 }).unwrap(), y(3).unwrap());
        assert_eq!(build_catalog(&CatalogEntry::HComposite { n: 1 }).unwrap(), h());
        assert_eq!(build_catalog(&CatalogEntry::Trivial).unwrap(), Digraph::empty(1));
        assert_eq!(build_catalog(&CatalogEntry::Unknown), Err(FamilyError::UnknownEntry));
    }
}
