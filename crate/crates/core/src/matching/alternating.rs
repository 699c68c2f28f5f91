use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, Matching, MatchingError};
use crate::instance::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Matched,
    Unmatched,
}

impl EdgeKind {
    pub fn flip(self) -> Self {
        match self {
            EdgeKind::Matched => EdgeKind::Unmatched,
            EdgeKind::Unmatched => EdgeKind::Matched,
        }
    }

    fn slot(self) -> usize {
        match self {
            EdgeKind::Matched => 0,
            EdgeKind::Unmatched => 1,
        }
    }
}

/// Where an alternating search starts and which kind of edge it takes first.
#[derive(Clone, Debug)]
pub struct AltWalkSpec<'g> {
    pub graph: &'g Graph,
    pub starts: Vec<Vertex>,
    pub first_edge: EdgeKind,
}

/// Result of an alternating search: every `(vertex, last edge kind)` state
/// reachable from the start set, with BFS parents for walk reconstruction.
///
/// Start vertices count as reached through a virtual edge of the kind
/// opposite to the first edge, i.e. with an even (length-zero) walk.
#[derive(Clone, Debug)]
pub struct Reach {
    seen: Vec<[bool; 2]>,
    parent: Vec<[Option<(Vertex, EdgeKind)>; 2]>,
    is_start: Vec<bool>,
}

impl Reach {
    pub fn contains(&self, v: Vertex) -> bool {
        self.seen[v.index()].iter().any(|&s| s)
    }

    pub fn reached_via(&self, v: Vertex, kind: EdgeKind) -> bool {
        self.seen[v.index()][kind.slot()]
    }

    pub fn is_start(&self, v: Vertex) -> bool {
        self.is_start[v.index()]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.seen.len())
            .map(Vertex::new)
            .filter(|&v| self.contains(v))
    }

    /// The BFS walk from a start vertex to `v`, ending with an edge of `kind`
    /// (or the bare start when `v` is a start reached by the virtual edge).
    pub fn walk_to(&self, v: Vertex, kind: EdgeKind) -> Option<Vec<Vertex>> {
        if !self.reached_via(v, kind) {
            return None;
        }
        let mut walk = vec![v];
        let (mut cur, mut k) = (v, kind);
        while let Some((prev, pk)) = self.parent[cur.index()][k.slot()] {
            walk.push(prev);
            cur = prev;
            k = pk;
        }
        walk.reverse();
        Some(walk)
    }
}

/// Alternating breadth-first search from `spec.starts`.
///
/// Matched edges of `m` that are not edges of `spec.graph` are ignored.
pub fn alternating_reachable(spec: &AltWalkSpec<'_>, m: &Matching) -> Reach {
    let g = spec.graph;
    let n = g.vertex_count();
    let mut reach = Reach {
        seen: vec![[false; 2]; n],
        parent: vec![[None; 2]; n],
        is_start: vec![false; n],
    };
    let virtual_kind = spec.first_edge.flip();
    let mut queue = VecDeque::new();
    for &s in &spec.starts {
        reach.is_start[s.index()] = true;
        if !core::mem::replace(&mut reach.seen[s.index()][virtual_kind.slot()], true) {
            queue.push_back((s, virtual_kind));
        }
    }
    while let Some((v, arrived)) = queue.pop_front() {
        let next = arrived.flip();
        let mut visit = |u: Vertex, queue: &mut VecDeque<(Vertex, EdgeKind)>| {
            let slot = &mut reach.seen[u.index()][next.slot()];
            if !*slot {
                *slot = true;
                reach.parent[u.index()][next.slot()] = Some((v, arrived));
                queue.push_back((u, next));
            }
        };
        match next {
            EdgeKind::Matched => {
                if let Some(u) = m.mate(v) {
                    if g.has_edge(v, u) {
                        visit(u, &mut queue);
                    }
                }
            }
            EdgeKind::Unmatched => {
                for (_, u) in g.neighbors(v) {
                    if m.mate(v) != Some(u) {
                        visit(u, &mut queue);
                    }
                }
            }
        }
    }
    reach
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DmLabel {
    Even,
    Odd,
    Unreachable,
}

/// Dulmage–Mendelsohn labels of every vertex of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmLabels {
    labels: Vec<DmLabel>,
}

impl DmLabels {
    pub fn get(&self, v: Vertex) -> DmLabel {
        self.labels[v.index()]
    }

    pub fn is_even(&self, v: Vertex) -> bool {
        self.get(v) == DmLabel::Even
    }

    pub fn as_slice(&self) -> &[DmLabel] {
        &self.labels
    }
}

/// Even/odd/unreachable labels from a maximum matching, via one alternating
/// sweep from the free left vertices and one from the free right vertices.
pub fn dm_labels(g: &Graph, m: &Matching) -> Result<DmLabels, MatchingError> {
    m.check_in(g)?;
    let mut labels: Vec<Option<DmLabel>> = vec![None; g.vertex_count()];
    let sweeps = [
        g.left_vertices().filter(|&v| !m.is_matched(v)).collect::<Vec<_>>(),
        g.right_vertices().filter(|&v| !m.is_matched(v)).collect::<Vec<_>>(),
    ];
    for starts in sweeps {
        let start_is_left = match starts.first() {
            Some(&s) => g.is_left(s),
            None => continue,
        };
        let reach = alternating_reachable(
            &AltWalkSpec {
                graph: g,
                starts,
                first_edge: EdgeKind::Unmatched,
            },
            m,
        );
        for v in reach.vertices() {
            let label = if g.is_left(v) == start_is_left {
                DmLabel::Even
            } else {
                if !m.is_matched(v) {
                    // An odd-length walk between two free vertices augments.
                    return Err(MatchingError::NotMaximum);
                }
                DmLabel::Odd
            };
            match labels[v.index()] {
                Some(prev) if prev != label => return Err(MatchingError::NotMaximum),
                _ => labels[v.index()] = Some(label),
            }
        }
    }
    Ok(DmLabels {
        labels: labels
            .into_iter()
            .map(|l| l.unwrap_or(DmLabel::Unreachable))
            .collect(),
    })
}

/// Minimum vertex cover from a maximum matching: with `Z` the vertices
/// alternating-reachable from free left vertices, the cover is
/// `(Left \ Z) ∪ (Right ∩ Z)`.
pub fn konig_cover(g: &Graph, m: &Matching) -> Result<Vec<Vertex>, MatchingError> {
    m.check_in(g)?;
    let starts: Vec<Vertex> = g.left_vertices().filter(|&v| !m.is_matched(v)).collect();
    let z = alternating_reachable(
        &AltWalkSpec {
            graph: g,
            starts,
            first_edge: EdgeKind::Unmatched,
        },
        m,
    );
    let mut cover = Vec::new();
    for v in (0..g.vertex_count()).map(Vertex::new) {
        let in_z = z.contains(v);
        if g.is_left(v) {
            if !in_z {
                cover.push(v);
            }
        } else if in_z {
            if !m.is_matched(v) {
                return Err(MatchingError::NotMaximum);
            }
            cover.push(v);
        }
    }
    Ok(cover)
}

/// A simple path or cycle given by its vertex sequence. For a cycle the last
/// vertex is joined back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltPath {
    pub vertices: Vec<Vertex>,
    pub closed: bool,
}

impl AltPath {
    pub fn path(vertices: Vec<Vertex>) -> Self {
        AltPath {
            vertices,
            closed: false,
        }
    }

    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        AltPath {
            vertices,
            closed: true,
        }
    }

    /// Consecutive vertex pairs, including the closing pair of a cycle.
    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// `(m \ alt) ∪ (alt \ m)` for an alternating path or cycle `alt` in `g`.
pub fn symmetric_difference(
    g: &Graph,
    m: &Matching,
    alt: &AltPath,
) -> Result<Matching, MatchingError> {
    let verts = &alt.vertices;
    let min_len = if alt.closed { 4 } else { 2 };
    if verts.len() < min_len || (alt.closed && verts.len() % 2 == 1) {
        return Err(MatchingError::NotAlternating);
    }
    for (i, &v) in verts.iter().enumerate() {
        if verts[..i].contains(&v) {
            return Err(MatchingError::NotSimple(v));
        }
    }
    let mut kinds = Vec::with_capacity(verts.len());
    for (a, b) in alt.steps() {
        if !g.has_edge(a, b) {
            return Err(MatchingError::NotAnEdge(a, b));
        }
        kinds.push(m.contains(a, b));
    }
    if kinds.windows(2).any(|w| w[0] == w[1]) {
        return Err(MatchingError::NotAlternating);
    }
    if alt.closed && kinds.first() == kinds.last() {
        return Err(MatchingError::NotAlternating);
    }
    if !alt.closed {
        let ends = [
            (verts[0], kinds[0]),
            (verts[verts.len() - 1], kinds[kinds.len() - 1]),
        ];
        for (v, end_edge_matched) in ends {
            if m.is_matched(v) && !end_edge_matched {
                return Err(MatchingError::WouldDoubleMatch(v));
            }
        }
    }
    let mut out = m.clone();
    let steps: Vec<(Vertex, Vertex)> = alt.steps().collect();
    for (&(a, b), &matched) in steps.iter().zip(&kinds) {
        if matched {
            let l = if g.is_left(a) { a } else { b };
            out.remove(l);
        }
    }
    for (&(a, b), &matched) in steps.iter().zip(&kinds) {
        if !matched {
            let (l, r) = if g.is_left(a) { (a, b) } else { (b, a) };
            out.insert(l, r)
                .map_err(|e| match e {
                    MatchingError::VertexReused(v) => MatchingError::WouldDoubleMatch(v),
                    other => other,
                })?;
        }
    }
    Ok(out)
}
