//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! Every graph keeps three views of its edge set: sorted adjacency lists for
//! iteration, one bitset row per vertex for O(1) membership and word-parallel
//! neighbourhood intersections, and the canonical edge list `{u, v}, u < v`.
//!
//! The ordered pairs `(u, v)` with `uv` an edge are called *arcs*. Arcs are
//! numbered `0..2m` in lexicographic order, which is the indexing used by the
//! pair-node graph and by [`crate::orientation::PartialOrientation`].

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
    arc_offset: Vec<usize>,
    arc_tail: Vec<usize>,
    arc_reverse: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if rows[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            rows[u].insert(v);
            rows[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self::from_parts(adj, rows))
    }

    fn from_parts(adj: Vec<Vec<usize>>, rows: Vec<FixedBitSet>) -> Self {
        let mut edges = Vec::new();
        let mut arc_offset = Vec::with_capacity(adj.len() + 1);
        let mut arc_tail = Vec::new();
        arc_offset.push(0);
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
                arc_tail.push(u);
            }
            arc_offset.push(arc_tail.len());
        }
        // Tails arrive in ascending order, so each head's list is filled left
        // to right.
        let mut cursor = arc_offset[..adj.len()].to_vec();
        let mut arc_reverse = vec![0; arc_tail.len()];
        for (i, &u) in arc_tail.iter().enumerate() {
            let v = adj[u][i - arc_offset[u]];
            arc_reverse[i] = cursor[v];
            cursor[v] += 1;
        }
        Graph {
            adj,
            rows,
            edges,
            arc_offset,
            arc_tail,
            arc_reverse,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_parts(vec![Vec::new(); n], vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Neighbourhood of `v` as a bitset row.
    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Canonical edge list, `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of arcs, `2m`.
    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_tail.len()
    }

    /// Index of the arc `(u, v)` if `uv` is an edge.
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
            return None;
        }
        let at = self.adj[u].binary_search(&v).ok()?;
        Some(self.arc_offset[u] + at)
    }

    /// The arc with index `i`.
    #[inline]
    pub fn arc(&self, i: usize) -> (usize, usize) {
        let u = self.arc_tail[i];
        (u, self.adj[u][i - self.arc_offset[u]])
    }

    /// Arc indices with tail `u`, in the same order as `neighbors(u)`.
    #[inline]
    pub fn arcs_from(&self, u: usize) -> std::ops::Range<usize> {
        self.arc_offset[u]..self.arc_offset[u + 1]
    }

    /// Index of the reverse of arc `i`.
    #[inline]
    pub fn reverse_arc(&self, i: usize) -> usize {
        self.arc_reverse[i]
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        let mut rows = Vec::with_capacity(n);
        for u in 0..n {
            let mut row = self.rows[u].clone();
            row.toggle_range(..);
            row.set(u, false);
            adj[u].extend(row.ones());
            rows.push(row);
        }
        Self::from_parts(adj, rows)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Connected components, each sorted ascending, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A vertex `z` closing the path `(u, v, w)` into a chordless 4-cycle
    /// `(u, v, w, z)`, if one exists. Requires `uv, vw` to be edges.
    pub fn c4_closing_vertex(&self, u: usize, v: usize, w: usize) -> Option<usize> {
        if u == w || self.has_edge(u, w) {
            return None;
        }
        let ru = self.rows[u].as_slice();
        let rw = self.rows[w].as_slice();
        let rv = self.rows[v].as_slice();
        for (k, ((&a, &b), &c)) in ru.iter().zip(rw).zip(rv).enumerate() {
            let mut word = a & b & !c;
            let base = k * fixedbitset::Block::BITS as usize;
            if (base..base + fixedbitset::Block::BITS as usize).contains(&v) {
                word &= !(1usize << (v - base));
            }
            if word != 0 {
                return Some(base + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Whether the path `(u, v, w)` lies on a chordless 4-cycle.
    #[inline]
    pub fn on_chordless_c4(&self, u: usize, v: usize, w: usize) -> bool {
        self.c4_closing_vertex(u, v, w).is_some()
    }

    /// Whether the edge `uv` lies on some chordless 4-cycle.
    pub fn edge_on_chordless_c4(&self, u: usize, v: usize) -> bool {
        self.adj[v]
            .iter()
            .any(|&w| w != u && self.on_chordless_c4(u, v, w))
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

/// Paths of three vertices `(u, v, w)`: `uv, vw` edges, `u != w`. Each path
/// appears once in each direction, so the count is `sum deg(v)(deg(v) - 1)`.
pub fn three_paths(g: &Graph) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    (0..g.n()).flat_map(move |v| {
        let nb = g.neighbors(v);
        nb.iter().flat_map(move |&u| {
            nb.iter()
                .filter(move |&&w| w != u)
                .map(move |&w| (u, v, w))
        })
    })
}

pub type ArcSet = BTreeSet<(usize, usize)>;

pub fn reversal(arcs: &ArcSet) -> ArcSet {
    arcs.iter().map(|&(u, v)| (v, u)).collect()
}

/// A chordless cycle `a-b-c-d-a`: `ab, bc, cd, da` are edges, `ac, bd` are not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordlessC4(pub [usize; 4]);

impl ChordlessC4 {
    pub fn new(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Option<Self> {
        let vs = [a, b, c, d];
        if vs.iter().any(|&x| x >= g.n()) {
            return None;
        }
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
        let ok = distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && g.has_edge(d, a)
            && !g.has_edge(a, c)
            && !g.has_edge(b, d);
        ok.then_some(ChordlessC4(vs))
    }

    /// Rotation/reflection with the smallest vertex first and the smaller
    /// of its two cycle neighbours second.
    pub fn canonical(self) -> Self {
        let v = self.0;
        let i = (0..4).min_by_key(|&i| v[i]).unwrap();
        let fwd = [v[i], v[(i + 1) % 4], v[(i + 2) % 4], v[(i + 3) % 4]];
        if fwd[1] <= fwd[3] {
            ChordlessC4(fwd)
        } else {
            ChordlessC4([fwd[0], fwd[3], fwd[2], fwd[1]])
        }
    }

    /// The four cycle edges as consecutive pairs.
    pub fn edges(&self) -> [(usize, usize); 4] {
        let v = self.0;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }
}

/// Every chordless 4-cycle of `g`, canonicalised and sorted.
pub fn chordless_c4s(g: &Graph) -> Vec<ChordlessC4> {
    let mut out = BTreeSet::new();
    for (a, b, c) in three_paths(g) {
        if a > c || g.has_edge(a, c) {
            continue;
        }
        for &d in g.neighbors(a) {
            if d != b && g.has_edge(c, d) && !g.has_edge(b, d) {
                out.insert(ChordlessC4([a, b, c, d]).canonical());
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_c4_is_two_k2() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.complement().edges(), &[(0, 2), (1, 3)]);
    }

    #[test]
    fn complement_of_k3_is_empty() {
        let g = Graph::complete(3).complement();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn complement_of_c5_is_a_five_cycle() {
        let h = Graph::cycle(5).complement();
        assert_eq!(h.edges(), &[(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
        assert!((0..5).all(|v| h.degree(v) == 2));
        assert_eq!(h.components().len(), 1);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn three_paths_examples() {
        let p3: Vec<_> = three_paths(&Graph::path(3)).collect();
        assert_eq!(p3, vec![(0, 1, 2), (2, 1, 0)]);
        assert_eq!(three_paths(&Graph::complete(3)).count(), 6);
        assert_eq!(three_paths(&Graph::empty(4)).count(), 0);
    }

    #[test]
    fn arc_indexing_is_lexicographic() {
        let g = Graph::cycle(4);
        let arcs: Vec<_> = (0..g.arc_count()).map(|i| g.arc(i)).collect();
        let mut sorted = arcs.clone();
        sorted.sort();
        assert_eq!(arcs, sorted);
        for (i, &(u, v)) in arcs.iter().enumerate() {
            assert_eq!(g.arc_index(u, v), Some(i));
            assert_eq!(g.arc(g.reverse_arc(i)), (v, u));
        }
        assert_eq!(g.arc_index(0, 2), None);
    }

    #[test]
    fn reversal_examples() {
        let s: ArcSet = [(0, 1)].into();
        assert_eq!(reversal(&s), [(1, 0)].into());
        assert_eq!(reversal(&ArcSet::new()), ArcSet::new());
        let s: ArcSet = [(0, 1), (2, 3)].into();
        assert_eq!(reversal(&s), [(1, 0), (3, 2)].into());
    }

    #[test]
    fn chordless_c4_census() {
        assert_eq!(chordless_c4s(&Graph::cycle(4)), vec![ChordlessC4([0, 1, 2, 3])]);
        assert!(chordless_c4s(&Graph::complete(5)).is_empty());
        assert!(chordless_c4s(&Graph::cycle(5)).is_empty());
        // K_{2,3}: three chordless 4-cycles
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(chordless_c4s(&k23).len(), 3);
        assert_eq!(Graph::cycle(4).c4_closing_vertex(0, 1, 2), Some(3));
        assert!(!Graph::cycle(4).on_chordless_c4(0, 1, 0));
    }

    #[test]
    fn c4_closing_vertex_crosses_word_boundaries() {
        // square 3-64-130-65 with vertex ids spread over three 64-bit words
        let g = Graph::new(140, [(3, 64), (64, 130), (130, 65), (65, 3)]).unwrap();
        assert_eq!(g.c4_closing_vertex(3, 64, 130), Some(65));
        assert_eq!(g.c4_closing_vertex(64, 130, 65), Some(3));
    }

    #[test]
    fn components_are_ordered_by_smallest_vertex() {
        let g = Graph::new(6, [(4, 5), (1, 3), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1, 3], vec![4, 5]]);
    }
}
