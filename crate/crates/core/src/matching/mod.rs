//! Unweighted bipartite matching machinery.

mod alternating;
mod maximum;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::instance::{Side, Vertex};

pub use alternating::{
    alternating_reachable, dm_labels, konig_cover, symmetric_difference, AltPath, AltWalkSpec,
    DmLabel, DmLabels, EdgeKind, Reach,
};
pub use maximum::{augment_to_maximum, augmenting_path, maximum_matching};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("vertex {0:?} is matched twice")]
    VertexReused(Vertex),
    #[error("({0:?}, {1:?}) is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("matching is not maximum")]
    NotMaximum,
    #[error("edge sequence is not alternating")]
    NotAlternating,
    #[error("edge sequence repeats vertex {0:?}")]
    NotSimple(Vertex),
    #[error("flipping would leave {0:?} matched twice")]
    WouldDoubleMatch(Vertex),
}

/// A bipartite graph over a fixed vertex set. Edges are `(left, right)` pairs
/// and their ids are positions in [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    sides: Vec<Side>,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(sides: Vec<Side>, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); sides.len()];
        for (e, &(l, r)) in edges.iter().enumerate() {
            assert!(
                sides[l.index()] == Side::Left && sides[r.index()] == Side::Right,
                "edges must run from the left side to the right side"
            );
            adj[l.index()].push(e);
            adj[r.index()].push(e);
        }
        Graph { sides, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.sides.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.sides[v.index()]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn is_left(&self, v: Vertex) -> bool {
        self.sides[v.index()] == Side::Left
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.index()].len()
    }

    /// Incident edge ids of `v`, in edge-id order.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.adj[v.index()]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (usize, Vertex)> + '_ {
        self.adj[v.index()].iter().map(move |&e| {
            let (l, r) = self.edges[e];
            (e, if l == v { r } else { l })
        })
    }

    pub fn left_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.sides.len())
            .map(Vertex::new)
            .filter(|&v| self.is_left(v))
    }

    pub fn right_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.sides.len())
            .map(Vertex::new)
            .filter(|&v| !self.is_left(v))
    }

    /// Id of the edge joining `a` and `b`, given in either order.
    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let (l, r) = if self.is_left(a) { (a, b) } else { (b, a) };
        self.adj[l.index()]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == (l, r))
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// Same vertex set, keeping the edges for which `keep(id, edge)` holds.
    pub fn subgraph(&self, mut keep: impl FnMut(usize, (Vertex, Vertex)) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(e, &pair)| keep(e, pair))
            .map(|(_, &pair)| pair)
            .collect();
        Graph::new(self.sides.clone(), edges)
    }

    /// Same graph with edges renumbered in the given order.
    pub fn reordered(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.edges.len());
        Graph::new(
            self.sides.clone(),
            order.iter().map(|&e| self.edges[e]).collect(),
        )
    }
}

/// A set of vertex-disjoint edges with per-vertex partner lookup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<Vertex>>,
    pairs: BTreeMap<Vertex, Vertex>,
}

impl Matching {
    pub fn empty(vertex_count: usize) -> Self {
        Matching {
            mate: vec![None; vertex_count],
            pairs: BTreeMap::new(),
        }
    }

    pub fn from_pairs(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, MatchingError> {
        let mut m = Matching::empty(vertex_count);
        for (l, r) in pairs {
            m.insert(l, r)?;
        }
        Ok(m)
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// Adds the edge `(left, right)`; both endpoints must be free.
    pub fn insert(&mut self, left: Vertex, right: Vertex) -> Result<(), MatchingError> {
        for v in [left, right] {
            if self.mate[v.index()].is_some() {
                return Err(MatchingError::VertexReused(v));
            }
        }
        if left == right {
            return Err(MatchingError::VertexReused(left));
        }
        self.mate[left.index()] = Some(right);
        self.mate[right.index()] = Some(left);
        self.pairs.insert(left, right);
        Ok(())
    }

    /// Removes the edge at left vertex `left`, returning its right endpoint.
    pub fn remove(&mut self, left: Vertex) -> Option<Vertex> {
        let right = self.pairs.remove(&left)?;
        self.mate[left.index()] = None;
        self.mate[right.index()] = None;
        Some(right)
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v.index()]
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.mate[v.index()].is_some()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Matched edges as `(left, right)`, ordered by left vertex.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs.iter().map(|(&l, &r)| (l, r))
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.mate[a.index()] == Some(b)
    }

    /// Every matched edge belongs to `g`.
    pub fn check_in(&self, g: &Graph) -> Result<(), MatchingError> {
        match self.pairs().find(|&(l, r)| !g.has_edge(l, r)) {
            Some((l, r)) => Err(MatchingError::NotAnEdge(l, r)),
            None => Ok(()),
        }
    }

    /// Restriction to the edges of `g`.
    pub fn restricted_to(&self, g: &Graph) -> Matching {
        let mut m = Matching::empty(self.vertex_count());
        for (l, r) in self.pairs().filter(|&(l, r)| g.has_edge(l, r)) {
            m.insert(l, r).expect("subset of a matching");
        }
        m
    }

    pub fn covers(&self, vertices: &[Vertex]) -> bool {
        vertices.iter().all(|&v| self.is_matched(v))
    }

    /// Sum of `w` over matched edges, with `w` indexed by edge id of `g`.
    pub fn weight(&self, g: &Graph, w: &[i64]) -> i64 {
        self.pairs()
            .map(|(l, r)| w[g.edge_id(l, r).expect("matching edges belong to g")])
            .sum()
    }
}
