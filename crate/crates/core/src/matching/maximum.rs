use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, Matching};
use crate::instance::Vertex;

/// Maximum-cardinality matching by repeated BFS augmentation.
///
/// Free left vertices are tried in id order and neighbors in edge-id order,
/// so the result only depends on the graph's edge order.
pub fn maximum_matching(g: &Graph) -> Matching {
    augment_to_maximum(g, Matching::empty(g.vertex_count()))
}

/// Grows `m` (which must lie inside `g`) to a maximum matching of `g`.
/// Vertices matched by `m` stay matched.
pub fn augment_to_maximum(g: &Graph, mut m: Matching) -> Matching {
    let lefts: Vec<Vertex> = g.left_vertices().collect();
    // A free vertex with no augmenting path never gains one later, so one
    // pass suffices.
    for &a in &lefts {
        if m.is_matched(a) {
            continue;
        }
        if let Some(path) = augmenting_path_from(g, &m, &[a]) {
            flip_path(&mut m, g, &path);
        }
    }
    m
}

/// An augmenting path for `m` in `g`, from a free left vertex to a free right
/// vertex, listed left to right along the path.
pub fn augmenting_path(g: &Graph, m: &Matching) -> Option<Vec<Vertex>> {
    let starts: Vec<Vertex> = g.left_vertices().filter(|&a| !m.is_matched(a)).collect();
    augmenting_path_from(g, m, &starts)
}

fn augmenting_path_from(g: &Graph, m: &Matching, starts: &[Vertex]) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    // parent[h] = left vertex from which right vertex h was discovered.
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut seen_left = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in starts {
        seen_left[s.index()] = true;
        queue.push_back(s);
    }
    while let Some(a) = queue.pop_front() {
        for (_, h) in g.neighbors(a) {
            if parent[h.index()].is_some() || m.mate(a) == Some(h) {
                continue;
            }
            parent[h.index()] = Some(a);
            match m.mate(h) {
                None => {
                    let mut path = vec![h];
                    let mut cur = h;
                    loop {
                        let a = parent[cur.index()].expect("discovered vertex");
                        path.push(a);
                        match m.mate(a) {
                            Some(prev) if !starts.contains(&a) => {
                                path.push(prev);
                                cur = prev;
                            }
                            _ => break,
                        }
                    }
                    path.reverse();
                    return Some(path);
                }
                Some(next) => {
                    if g.has_edge(next, h) && !seen_left[next.index()] {
                        seen_left[next.index()] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

fn flip_path(m: &mut Matching, g: &Graph, path: &[Vertex]) {
    // path = a0 h0 a1 h1 ... ak hk; edges (a_i, h_i) enter, (h_i, a_{i+1}) leave.
    for pair in path.chunks(2).skip(1) {
        m.remove(pair[0]);
    }
    for pair in path.chunks(2) {
        let (a, h) = (pair[0], pair[1]);
        debug_assert!(g.is_left(a));
        m.insert(a, h).expect("augmenting path flips cleanly");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Side;

    fn v(i: usize) -> Vertex {
        Vertex::new(i)
    }

    fn complete(nl: usize, nr: usize) -> Graph {
        let mut sides = vec![Side::Left; nl];
        sides.extend(vec![Side::Right; nr]);
        let mut edges = Vec::new();
        for a in 0..nl {
            for h in 0..nr {
                edges.push((v(a), v(nl + h)));
            }
        }
        Graph::new(sides, edges)
    }

    #[test]
    fn empty_graph_has_empty_matching() {
        let g = Graph::new(vec![Side::Left, Side::Right], Vec::new());
        assert!(maximum_matching(&g).is_empty());
        assert_eq!(augmenting_path(&g, &Matching::empty(2)), None);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(maximum_matching(&complete(3, 2)).len(), 2);
        assert_eq!(maximum_matching(&complete(2, 5)).len(), 2);
        assert_eq!(maximum_matching(&complete(4, 4)).len(), 4);
    }

    #[test]
    fn needs_rerouting() {
        // a0-h0, a1-h0, a1-h1: greedy a0-h0 then a1 takes h1;
        // start with a1-h0 and a0 must reroute a1.
        let g = Graph::new(
            vec![Side::Left, Side::Left, Side::Right, Side::Right],
            vec![(v(0), v(2)), (v(1), v(2)), (v(1), v(3))],
        );
        let start = Matching::from_pairs(4, [(v(1), v(2))]).unwrap();
        let path = augmenting_path(&g, &start).unwrap();
        assert_eq!(path, vec![v(0), v(2), v(1), v(3)]);
        let m = augment_to_maximum(&g, start);
        assert_eq!(m.len(), 2);
        assert!(m.contains(v(0), v(2)));
        assert!(m.contains(v(1), v(3)));
    }
}
