//! Alternating-walk reachability between edges.
//!
//! Two edges are related when they share a head or share a tail; the
//! reachability relation is the transitive closure. Each class, taken as a
//! set of edges together with their endpoints, is a reachability digraph.
//! Chords between endpoints that belong to other classes are not included.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, Vertex};
use crate::symmetry::{isomorphism, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachabilityError {
    #[error("digraph has no edges")]
    NoEdges,
    #[error("edge ({0},{1}) is not present")]
    UnknownEdge(Vertex, Vertex),
}

/// Disjoint-set forest with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachabilityPartition {
    /// Edge classes, each sorted, ordered by their smallest edge.
    pub classes: Vec<Vec<(Vertex, Vertex)>>,
    pub universal: bool,
}

impl ReachabilityPartition {
    /// Reachability digraph of class `i`, with the original vertex of each
    /// relabelled vertex.
    pub fn class_digraph(&self, i: usize) -> (Digraph, Vec<Vertex>) {
        edge_set_digraph(&self.classes[i])
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

fn edge_set_digraph(edges: &[(Vertex, Vertex)]) -> (Digraph, Vec<Vertex>) {
    let mut verts: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let pos = |x: Vertex| verts.binary_search(&x).unwrap();
    let d = Digraph::new(verts.len(), edges.iter().map(|&(u, v)| (pos(u), pos(v))))
        .expect("subset of a digraph's edges");
    (d, verts)
}

pub fn reachability_classes(d: &Digraph) -> Result<ReachabilityPartition, ReachabilityError> {
    let edges = d.edges();
    if edges.is_empty() {
        return Err(ReachabilityError::NoEdges);
    }
    let mut uf = UnionFind::new(edges.len());
    // edges leaving x are consecutive in the sorted list; edges entering x
    // are collected per head
    let mut first_out: Vec<Option<usize>> = vec![None; d.n()];
    let mut first_in: Vec<Option<usize>> = vec![None; d.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        match first_out[u] {
            Some(j) => {
                uf.union(i, j);
            }
            None => first_out[u] = Some(i),
        }
        match first_in[v] {
            Some(j) => {
                uf.union(i, j);
            }
            None => first_in[v] = Some(i),
        }
    }
    let mut by_root: Vec<Option<usize>> = vec![None; edges.len()];
    let mut classes: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let r = uf.find(i);
        let c = *by_root[r].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(e);
    }
    let universal = classes.len() == 1;
    Ok(ReachabilityPartition { classes, universal })
}

/// The reachability digraph of the class containing `e`, with edge-set
/// semantics: vertices are the endpoints of the class edges, relabelled in
/// ascending order.
pub fn reachability_digraph(d: &Digraph, e: (Vertex, Vertex)) -> Result<Digraph, ReachabilityError> {
    if !d.has_edge(e.0, e.1) {
        return Err(ReachabilityError::UnknownEdge(e.0, e.1));
    }
    let part = reachability_classes(d)?;
    let class = part
        .classes
        .iter()
        .position(|c| c.binary_search(&e).is_ok())
        .expect("every edge lies in a class");
    Ok(part.class_digraph(class).0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum DeltaShape {
    Universal,
    CompleteBipartite { m: usize, n: usize },
    MatchingComplement { k: usize },
    EvenCycle { len: usize },
    TreeFragment { k: usize, l: usize },
    Other,
}

impl std::fmt::Display for DeltaShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeltaShape::Universal => write!(f, "Universal"),
            DeltaShape::CompleteBipartite { m, n } => write!(f, "CompleteBipartite({m},{n})"),
            DeltaShape::MatchingComplement { k } => write!(f, "MatchingComplement({k})"),
            DeltaShape::EvenCycle { len } => write!(f, "EvenCycle({len})"),
            DeltaShape::TreeFragment { k, l } => write!(f, "TreeFragment({k},{l})"),
            DeltaShape::Other => write!(f, "Other"),
        }
    }
}

impl DeltaShape {
    /// True for every shape whose class digraph is a cycle of even length,
    /// whichever name the fixed recognition order gave it.
    pub fn is_cycle(&self) -> bool {
        matches!(
            self,
            DeltaShape::EvenCycle { .. }
                | DeltaShape::CompleteBipartite { m: 2, n: 2 }
                | DeltaShape::MatchingComplement { k: 3 }
        )
    }

    /// Length of the cycle for shapes accepted by [`DeltaShape::is_cycle`].
    pub fn cycle_len(&self) -> Option<usize> {
        match *self {
            DeltaShape::EvenCycle { len } => Some(len),
            DeltaShape::CompleteBipartite { m: 2, n: 2 } => Some(4),
            DeltaShape::MatchingComplement { k: 3 } => Some(6),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassShape {
    pub edges: usize,
    pub shape: DeltaShape,
    /// No vertex is both a head and a tail inside the class.
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    /// Common shape of all classes, or the shape of the largest class (the
    /// first one on ties) when they differ.
    pub shape: DeltaShape,
    pub uniform: bool,
    pub universal: bool,
    pub classes: Vec<ClassShape>,
}

impl DeltaReport {
    /// The reachability relation is universal or every reachability digraph
    /// is bipartite.
    pub fn dichotomy_holds(&self) -> bool {
        self.universal || self.classes.iter().all(|c| c.bipartite)
    }
}

fn classify_class(edges: &[(Vertex, Vertex)], whole: bool) -> ClassShape {
    let (d, _) = edge_set_digraph(edges);
    let n = d.n();
    let sources: Vec<Vertex> = (0..n).filter(|&v| d.out_degree(v) > 0).collect();
    let sinks: Vec<Vertex> = (0..n).filter(|&v| d.in_degree(v) > 0).collect();
    let bipartite = sources.len() + sinks.len() == n;
    let shape = if !bipartite {
        if whole {
            DeltaShape::Universal
        } else {
            DeltaShape::Other
        }
    } else {
        let (m, k) = (sources.len(), sinks.len());
        let e = edges.len();
        let degree = |v: Vertex| d.out_degree(v) + d.in_degree(v);
        if e == m * k {
            DeltaShape::CompleteBipartite { m, n: k }
        } else if m == k
            && m >= 2
            && sources.iter().all(|&v| d.out_degree(v) == m - 1)
            && sinks.iter().all(|&v| d.in_degree(v) == m - 1)
        {
            DeltaShape::MatchingComplement { k: m }
        } else if (0..n).all(|v| degree(v) == 2) && d.is_connected() {
            DeltaShape::EvenCycle { len: e }
        } else if e + 1 == n && d.is_connected() {
            let interior = |side: &[Vertex]| {
                let mut ds: Vec<usize> = side.iter().map(|&v| degree(v)).filter(|&x| x > 1).collect();
                ds.sort_unstable();
                ds.dedup();
                ds
            };
            match (interior(&sources).as_slice(), interior(&sinks).as_slice()) {
                (&[k], &[l]) => DeltaShape::TreeFragment { k, l },
                _ => DeltaShape::Other,
            }
        } else {
            DeltaShape::Other
        }
    };
    ClassShape {
        edges: edges.len(),
        shape,
        bipartite,
    }
}

pub fn delta_shape(d: &Digraph) -> Result<DeltaReport, ReachabilityError> {
    let part = reachability_classes(d)?;
    let classes: Vec<ClassShape> = part
        .classes
        .iter()
        .map(|c| classify_class(c, part.universal))
        .collect();
    let uniform = classes.windows(2).all(|w| w[0].shape == w[1].shape);
    let largest = classes
        .iter()
        .enumerate()
        .max_by_key(|&(i, c)| (c.edges, std::cmp::Reverse(i)))
        .map(|(_, c)| c.shape)
        .expect("at least one class");
    Ok(DeltaReport {
        shape: if uniform { classes[0].shape } else { largest },
        uniform,
        universal: part.universal,
        classes,
    })
}

/// Whether all reachability digraphs are pairwise isomorphic.
pub fn classes_isomorphic(part: &ReachabilityPartition) -> bool {
    let first = part.class_digraph(0).0;
    (1..part.classes.len()).all(|i| isomorphism(&first, &part.class_digraph(i).0).is_some())
}

/// Whether the automorphism group is transitive on edges.
pub fn is_1_arc_transitive(d: &Digraph) -> Result<bool, ReachabilityError> {
    let edges = d.edges();
    let Some(&(u0, v0)) = edges.first() else {
        return Err(ReachabilityError::NoEdges);
    };
    let s = Structure::from_digraph(d);
    let mut reached = vec![false; edges.len()];
    reached[0] = true;
    let mut gens: Vec<Vec<Vertex>> = Vec::new();
    for i in 1..edges.len() {
        if reached[i] {
            continue;
        }
        let (u, v) = edges[i];
        match s.extend(&[(u0, u), (v0, v)]) {
            None => return Ok(false),
            Some(g) => {
                gens.push(g);
                // close the edge orbit under the generators found so far
                let mut stack: Vec<usize> = (0..edges.len()).filter(|&j| reached[j]).collect();
                stack.push(i);
                reached[i] = true;
                while let Some(j) = stack.pop() {
                    let (a, b) = edges[j];
                    for g in &gens {
                        let k = edges.binary_search(&(g[a], g[b])).expect("automorphism maps edges to edges");
                        if !reached[k] {
                            reached[k] = true;
                            stack.push(k);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cp, directed_cycle, y};
    use crate::symmetry::are_isomorphic;

    #[test]
    fn union_find() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn class_examples() {
        let c3 = directed_cycle(3).unwrap();
        let p = reachability_classes(&c3).unwrap();
        assert_eq!(p.sizes(), vec![1, 1, 1]);
        assert!(!p.universal);

        let y3 = y(3).unwrap();
        let p = reachability_classes(&y3).unwrap();
        assert_eq!(p.sizes(), vec![6, 6, 6]);
        for class in &p.classes {
            let (u, v) = class[0];
            assert!(class.iter().all(|&(a, b)| a / 3 == u / 3 && b / 3 == v / 3));
        }

        let blown = c3.lex_product(&Digraph::empty(2));
        assert_eq!(reachability_classes(&blown).unwrap().sizes(), vec![4, 4, 4]);
        assert_eq!(reachability_classes(&Digraph::empty(3)), Err(ReachabilityError::NoEdges));
    }

    #[test]
    fn reachability_digraph_examples() {
        let c3 = directed_cycle(3).unwrap();
        assert_eq!(reachability_digraph(&c3, (0, 1)).unwrap().edge_count(), 1);
        let y3 = y(3).unwrap();
        let delta = reachability_digraph(&y3, (0, 4)).unwrap();
        assert!(are_isomorphic(&delta, &cp(3).unwrap()));
        let blown = c3.lex_product(&Digraph::empty(2));
        let delta = reachability_digraph(&blown, (0, 2)).unwrap();
        assert_eq!((delta.n(), delta.edge_count()), (4, 4));
        assert_eq!(reachability_digraph(&c3, (1, 0)), Err(ReachabilityError::UnknownEdge(1, 0)));
    }

    #[test]
    fn shapes() {
        assert_eq!(delta_shape(&y(4).unwrap()).unwrap().shape, DeltaShape::MatchingComplement { k: 4 });
        let r = delta_shape(&directed_cycle(8).unwrap()).unwrap();
        assert_eq!(r.shape, DeltaShape::CompleteBipartite { m: 1, n: 1 });
        assert!(r.uniform && r.dichotomy_holds());
        // transitive triangle: one class containing a vertex that is head and tail
        let tt = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = delta_shape(&tt).unwrap();
        assert_eq!(r.shape, DeltaShape::Universal);
        assert!(r.dichotomy_holds());
    }

    #[test]
    fn arc_transitivity() {
        assert!(is_1_arc_transitive(&directed_cycle(5).unwrap()).unwrap());
        assert!(is_1_arc_transitive(&y(3).unwrap()).unwrap());
        let tt = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_1_arc_transitive(&tt).unwrap());
        assert_eq!(is_1_arc_transitive(&Digraph::empty(2)), Err(ReachabilityError::NoEdges));
    }
}
