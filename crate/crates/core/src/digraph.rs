//! Finite digraphs with an irreflexive, antisymmetric edge relation.
//!
//! Vertices are the dense integers `0..n`. Every constructor validates its
//! output, so a [`Digraph`] value never carries a loop or a pair of opposite
//! arcs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::GraphRecord;

pub type Vertex = usize;

/// Relation code between an ordered pair of vertices, as stored in the
/// adjacency matrix.
pub const NONE: u8 = 0;
/// `u -> v` is an edge.
pub const OUT: u8 = 1;
/// `v -> u` is an edge.
pub const IN: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("both ({0},{1}) and ({1},{0}) supplied")]
    SymmetricPair(Vertex, Vertex),
    #[error("vertex {vertex} out of range for digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge ({0},{1}) does not follow the V_i -> V_(i+1) pattern")]
    NotTripartiteOriented(Vertex, Vertex),
    #[error("block {0} contains an internal edge")]
    QuotientLoop(usize),
    #[error("blocks {0} and {1} carry edges in both directions")]
    QuotientSymmetric(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("edge ({0},{1}) is not present")]
    UnknownEdge(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRecord", try_from = "GraphRecord")]
pub struct Digraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    rel: Vec<u8>,
}

/// Out- and in-neighbourhood of a vertex together with its degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub out: Vec<Vertex>,
    pub inc: Vec<Vertex>,
    pub out_degree: usize,
    pub in_degree: usize,
}

impl Digraph {
    /// Builds a digraph from an edge list. Duplicate pairs are collapsed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(DigraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(DigraphError::LoopEdge(u));
            }
            set.insert((u, v));
        }
        for &(u, v) in &set {
            if set.contains(&(v, u)) {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                return Err(DigraphError::SymmetricPair(a, b));
            }
        }
        Ok(Self::from_sorted_unchecked(n, set.into_iter().collect()))
    }

    /// Edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    /// Builds from an adjacency-code matrix (row-major, `OUT` marks `u -> v`).
    pub(crate) fn from_relation(n: usize, rel: &[u8]) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if rel[u * n + v] == OUT {
                    edges.push((u, v));
                }
            }
        }
        Self::from_sorted_unchecked(n, edges)
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut rel = vec![NONE; n * n];
        for &(u, v) in &edges {
            debug_assert!(u != v && rel[u * n + v] == NONE && rel[v * n + u] == NONE);
            out_adj[u].push(v);
            in_adj[v].push(u);
            rel[u * n + v] = OUT;
            rel[v * n + u] = IN;
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        Digraph {
            n,
            edges,
            out_adj,
            in_adj,
            rel,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.out_adj[x]
    }

    pub fn in_neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.in_adj[x]
    }

    pub fn out_degree(&self, x: Vertex) -> usize {
        self.out_adj[x].len()
    }

    pub fn in_degree(&self, x: Vertex) -> usize {
        self.in_adj[x].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.rel[u * self.n + v] == OUT
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rel[u * self.n + v] != NONE
    }

    /// Relation code of the ordered pair `(u, v)`: [`NONE`], [`OUT`] or [`IN`].
    pub fn relation(&self, u: Vertex, v: Vertex) -> u8 {
        self.rel[u * self.n + v]
    }

    pub(crate) fn relation_matrix(&self) -> &[u8] {
        &self.rel
    }

    fn check_vertex(&self, x: Vertex) -> Result<(), DigraphError> {
        if x < self.n {
            Ok(())
        } else {
            Err(DigraphError::VertexOutOfRange {
                vertex: x,
                n: self.n,
            })
        }
    }

    pub fn neighbors(&self, x: Vertex) -> Result<Neighborhood, DigraphError> {
        self.check_vertex(x)?;
        Ok(Neighborhood {
            out: self.out_adj[x].clone(),
            inc: self.in_adj[x].clone(),
            out_degree: self.out_adj[x].len(),
            in_degree: self.in_adj[x].len(),
        })
    }

    /// Subdigraph induced on `subset`, relabelled `0..|S|` in ascending
    /// order of the original indices.
    pub fn induced(&self, subset: &[Vertex]) -> Result<Digraph, DigraphError> {
        let mut verts: Vec<Vertex> = subset.to_vec();
        for &v in &verts {
            self.check_vertex(v)?;
        }
        verts.sort_unstable();
        verts.dedup();
        Ok(self.induced_ordered(&verts))
    }

    /// Subdigraph induced on `verts`, with vertex `i` of the result being
    /// `verts[i]`. Entries must be distinct and in range.
    pub(crate) fn induced_ordered(&self, verts: &[Vertex]) -> Digraph {
        let mut edges = Vec::new();
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.rel[u * self.n + v] == OUT {
                    edges.push((i, j));
                }
            }
        }
        Self::from_sorted_unchecked(verts.len(), edges)
    }

    /// Lexicographic product `self[other]`: vertex `(x, y)` is flattened to
    /// `x * other.n() + y`.
    pub fn lex_product(&self, other: &Digraph) -> Digraph {
        let m = other.n;
        let mut edges = Vec::with_capacity(self.edges.len() * m * m + self.n * other.edges.len());
        for x in 0..self.n {
            for y in 0..m {
                let from = x * m + y;
                for x2 in 0..self.n {
                    if x2 == x {
                        for &y2 in &other.out_adj[y] {
                            edges.push((from, x * m + y2));
                        }
                    } else if self.rel[x * self.n + x2] == OUT {
                        for y2 in 0..m {
                            edges.push((from, x2 * m + y2));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted_unchecked(self.n * m, edges)
    }

    /// Complement inside the arc set `V_1×V_2 ∪ V_2×V_3 ∪ V_3×V_1`.
    pub fn tripartite_complement(&self, parts: &VertexPartition) -> Result<Digraph, DigraphError> {
        parts.check_covers(self.n)?;
        if parts.blocks().len() != 3 {
            return Err(DigraphError::InvalidPartition(format!(
                "expected 3 blocks, got {}",
                parts.blocks().len()
            )));
        }
        let block_of = parts.block_index(self.n);
        for &(u, v) in &self.edges {
            if (block_of[u] + 1) % 3 != block_of[v] {
                return Err(DigraphError::NotTripartiteOriented(u, v));
            }
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if (block_of[u] + 1) % 3 == block_of[v] && !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(self.n, edges))
    }

    /// Quotient digraph with one vertex per block, in block order.
    pub fn quotient(&self, parts: &VertexPartition) -> Result<Digraph, DigraphError> {
        parts.check_covers(self.n)?;
        let block_of = parts.block_index(self.n);
        let mut set = BTreeSet::new();
        for &(u, v) in &self.edges {
            let (bu, bv) = (block_of[u], block_of[v]);
            if bu == bv {
                return Err(DigraphError::QuotientLoop(bu));
            }
            set.insert((bu, bv));
        }
        for &(x, y) in &set {
            if set.contains(&(y, x)) {
                return Err(DigraphError::QuotientSymmetric(x.min(y), x.max(y)));
            }
        }
        Ok(Self::from_sorted_unchecked(
            parts.blocks().len(),
            set.into_iter().collect(),
        ))
    }

    /// Weak components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> VertexPartition {
        let mut seen = vec![false; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in self.out_adj[x].iter().chain(&self.in_adj[x]) {
                    if !seen[y] {
                        seen[y] = true;
                        block.push(y);
                        stack.push(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        VertexPartition { blocks }
    }

    /// True for the weakly connected digraphs, including the empty one.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().blocks().len() == 1
    }

    /// Image of `self` under `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        edges.sort_unstable();
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// Vertices lying on a common directed triangle with `x`, as triangles
    /// `(x, y, z)` with `x -> y -> z -> x`.
    pub fn triangles_at(&self, x: Vertex) -> Vec<(Vertex, Vertex, Vertex)> {
        let mut out = Vec::new();
        for &y in &self.out_adj[x] {
            for &z in &self.out_adj[y] {
                if self.has_edge(z, x) {
                    out.push((x, y, z));
                }
            }
        }
        out
    }

    /// Number of directed triangles through the edge `u -> v`.
    pub fn triangles_on_edge(&self, u: Vertex, v: Vertex) -> usize {
        self.out_adj[v].iter().filter(|&&w| self.has_edge(w, u)).count()
    }

    pub fn has_directed_triangle(&self) -> bool {
        (0..self.n).any(|x| !self.triangles_at(x).is_empty())
    }

    /// Every vertex has the same out-degree and the same in-degree.
    pub fn is_regular(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let (o, i) = (self.out_degree(0), self.in_degree(0));
        (0..self.n).all(|x| self.out_degree(x) == o && self.in_degree(x) == i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    blocks: Vec<Vec<Vertex>>,
}

impl VertexPartition {
    /// Validates that `blocks` are non-empty and pairwise disjoint. Coverage
    /// is checked against a digraph when the partition is used.
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Result<Self, DigraphError> {
        let mut seen = BTreeSet::new();
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(DigraphError::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in b {
                if !seen.insert(v) {
                    return Err(DigraphError::InvalidPartition(format!(
                        "vertex {v} appears twice"
                    )));
                }
            }
        }
        Ok(VertexPartition { blocks })
    }

    /// All singletons on `0..n`.
    pub fn discrete(n: usize) -> Self {
        VertexPartition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    fn check_covers(&self, n: usize) -> Result<(), DigraphError> {
        let total: usize = self.blocks.iter().map(Vec::len).sum();
        for b in &self.blocks {
            for &v in b {
                if v >= n {
                    return Err(DigraphError::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        if total != n {
            return Err(DigraphError::InvalidPartition(format!(
                "covers {total} of {n} vertices"
            )));
        }
        Ok(())
    }

    fn block_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                idx[v] = i;
            }
        }
        idx
    }
}
