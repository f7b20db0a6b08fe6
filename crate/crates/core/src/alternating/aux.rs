//! The pair-node graph: one node per arc `(u, v)` of the input graph,
//! `(u, v)` joined to `(v, u)`, and `(u, v)` joined to `(v, w)` whenever
//! `(u, v, w)` is a path on a chordless 4-cycle. The input graph is
//! alternately orientable iff this graph is bipartite.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::orientation::{ComplementOrder, RankedRows};

#[derive(Clone, Debug)]
pub struct AuxiliaryGraph<'g> {
    host: &'g Graph,
    adj: Vec<Vec<usize>>,
}

impl<'g> AuxiliaryGraph<'g> {
    pub fn host(&self) -> &'g Graph {
        self.host
    }

    /// Number of nodes, `2m`. Node `i` is the arc `host.arc(i)`.
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn is_adjacent(&self, p: usize, q: usize) -> bool {
        self.adj[p].binary_search(&q).is_ok()
    }

    /// Edges as arc pairs, each once with the smaller node first.
    pub fn edge_list(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for (p, list) in self.adj.iter().enumerate() {
            for &q in list.iter().filter(|&&q| q > p) {
                out.push((self.host.arc(p), self.host.arc(q)));
            }
        }
        out
    }
}

/// Reports every edge of the pair-node graph, some more than once, using
/// the upper and lower sets of a transitive orientation `fbar` of the
/// complement: for each edge `uv` with `N(u) ∩ U(v)` and `N(v) ∩ U(u)` both
/// non-empty (or both lower-set intersections non-empty), every `w` in the
/// first and `z` in the second close a chordless 4-cycle `(u, v, z, w)`,
/// which contributes its paths centred at `u` and `v`. Every chordless
/// 4-cycle is reached this way from one of its edges for each of its two
/// centre pairs.
fn for_each_link(g: &Graph, fbar: &ComplementOrder, mut link: impl FnMut(usize, usize)) {
    for p in 0..g.arc_count() {
        let q = g.reverse_arc(p);
        if p < q {
            link(p, q);
        }
    }
    let rows = RankedRows::new(fbar);
    // Arcs `(a, w)` out of `a` with `w` above (or below) `b`.
    let side = |out: &mut Vec<usize>, a: usize, b: usize, upper: bool| {
        out.clear();
        rows.scan(a, b, upper, |_, arc| {
            out.push(arc);
            true
        });
    };
    let (mut ws, mut zs) = (Vec::new(), Vec::new());

    for u in 0..g.n() {
        for (uv, &v) in g.arcs_from(u).zip(g.neighbors(u)) {
            if v < u {
                continue;
            }
            let vu = g.reverse_arc(uv);
            for upper in [true, false] {
                if !rows.any(u, v, upper) || !rows.any(v, u, upper) {
                    continue;
                }
                side(&mut ws, u, v, upper);
                side(&mut zs, v, u, upper);
                for &vz in &zs {
                    link(uv, vz);
                    link(g.reverse_arc(vz), vu);
                }
                for &uw in &ws {
                    link(vu, uw);
                    link(g.reverse_arc(uw), uv);
                }
            }
        }
    }
}

pub fn build_auxiliary_graph<'g>(g: &'g Graph, fbar: &ComplementOrder) -> AuxiliaryGraph<'g> {
    let mut adj = vec![Vec::new(); g.arc_count()];
    for_each_link(g, fbar, |p, q| {
        adj[p].push(q);
        adj[q].push(p);
    });
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    AuxiliaryGraph { host: g, adj }
}

/// Union-find whose nodes carry their parity relative to the root.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
    size: Vec<usize>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest {
            parent: (0..n).collect(),
            parity: vec![0; n],
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let (mut root, mut par) = (x, 0);
        while self.parent[root] != root {
            par ^= self.parity[root];
            root = self.parent[root];
        }
        let (mut cur, mut p) = (x, par);
        while cur != root {
            let next = self.parent[cur];
            let np = p ^ self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = p;
            cur = next;
            p = np;
        }
        (root, par)
    }

    /// Puts `a` and `b` on opposite sides; false if they already share one.
    fn join_opposite(&mut self, a: usize, b: usize) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa != pb;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ 1;
        self.size[big] += self.size[small];
        true
    }
}

/// The result of `bipartition(&build_auxiliary_graph(g, fbar))` without
/// storing the pair-node graph; it is only built to extract an odd cycle.
pub fn color_auxiliary_graph(g: &Graph, fbar: &ComplementOrder) -> Result<Coloring, OddCycle> {
    let nodes = g.arc_count();
    let mut forest = ParityForest::new(nodes);
    let mut odd = false;
    for_each_link(g, fbar, |p, q| {
        if !odd && !forest.join_opposite(p, q) {
            odd = true;
        }
    });
    if odd {
        return match bipartition(&build_auxiliary_graph(g, fbar)) {
            Err(cycle) => Err(cycle),
            Ok(_) => unreachable!("parity conflict without an odd cycle"),
        };
    }
    const NONE: usize = usize::MAX;
    let mut id_of_root = vec![NONE; nodes];
    let mut root_parity = vec![0u8; nodes];
    let mut component = vec![0; nodes];
    let mut color = vec![0u8; nodes];
    let mut sizes = Vec::new();
    for p in 0..nodes {
        let (r, par) = forest.find(p);
        if id_of_root[r] == NONE {
            id_of_root[r] = sizes.len();
            root_parity[r] = par;
            sizes.push(0);
        }
        component[p] = id_of_root[r];
        color[p] = par ^ root_parity[r];
        sizes[id_of_root[r]] += 1;
    }
    Ok(Coloring {
        component,
        color,
        component_sizes: sizes,
    })
}

/// Proper 2-colouring of the pair-node graph. Components are numbered in
/// order of their smallest node, which is also the BFS root and gets
/// colour 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub component: Vec<usize>,
    pub color: Vec<u8>,
    pub component_sizes: Vec<usize>,
}

/// An odd closed walk of pair-nodes, given as arcs; consecutive entries
/// (cyclically) are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle(pub Vec<(usize, usize)>);

impl OddCycle {
    /// Checks the walk against the definition of the pair-node graph on
    /// `g`, without reference to any orientation.
    pub fn verify(&self, g: &Graph) -> bool {
        let c = &self.0;
        if c.len() < 3 || c.len() % 2 == 0 {
            return false;
        }
        if !c.iter().all(|&(a, b)| a < g.n() && b < g.n() && g.has_edge(a, b)) {
            return false;
        }
        let adjacent = |p: (usize, usize), q: (usize, usize)| {
            q == (p.1, p.0)
                || (p.1 == q.0 && g.on_chordless_c4(p.0, p.1, q.1))
                || (q.1 == p.0 && g.on_chordless_c4(q.0, q.1, p.1))
        };
        (0..c.len()).all(|i| adjacent(c[i], c[(i + 1) % c.len()]))
    }
}

pub fn bipartition(aux: &AuxiliaryGraph) -> Result<Coloring, OddCycle> {
    let n = aux.node_count();
    const NONE: usize = usize::MAX;
    let mut component = vec![NONE; n];
    let mut color = vec![0u8; n];
    let mut parent = vec![NONE; n];
    let mut depth = vec![0usize; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for root in 0..n {
        if component[root] != NONE {
            continue;
        }
        let id = sizes.len();
        sizes.push(0);
        component[root] = id;
        queue.push_back(root);
        while let Some(p) = queue.pop_front() {
            sizes[id] += 1;
            for &q in aux.neighbors(p) {
                if component[q] == NONE {
                    component[q] = id;
                    color[q] = 1 - color[p];
                    parent[q] = p;
                    depth[q] = depth[p] + 1;
                    queue.push_back(q);
                } else if color[q] == color[p] {
                    return Err(odd_cycle(aux, &parent, &depth, p, q));
                }
            }
        }
    }
    Ok(Coloring {
        component,
        color,
        component_sizes: sizes,
    })
}

fn odd_cycle(aux: &AuxiliaryGraph, parent: &[usize], depth: &[usize], p: usize, q: usize) -> OddCycle {
    let (mut a, mut b) = (p, q);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    let host = aux.host();
    OddCycle(left.into_iter().map(|i| host.arc(i)).collect())
}
