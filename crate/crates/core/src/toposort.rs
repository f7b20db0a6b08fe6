//! Linear extensions with deterministic tie-breaking.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// A directed cycle, listed from its smallest vertex in arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleFound(pub Vec<usize>);

/// Topological sort of `arcs` on `0..n`; among ready vertices the smallest
/// index goes first.
pub fn topological_sort(n: usize, arcs: &[(usize, usize)]) -> Result<Vec<usize>, CycleFound> {
    let mut out_adj = vec![Vec::new(); n];
    for &(u, v) in arcs {
        out_adj[u].push(v);
    }
    topological_sort_with(n, |u, out| out.extend_from_slice(&out_adj[u]))
}

/// Same as [`topological_sort`] with the arcs supplied implicitly:
/// `successors(u, buf)` appends the heads of the arcs leaving `u`.
/// It is called twice per vertex, so it must be deterministic.
pub fn topological_sort_with<F>(n: usize, mut successors: F) -> Result<Vec<usize>, CycleFound>
where
    F: FnMut(usize, &mut Vec<usize>),
{
    let mut indegree = vec![0usize; n];
    let mut buf = Vec::new();
    for u in 0..n {
        buf.clear();
        successors(u, &mut buf);
        for &v in &buf {
            indegree[v] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        placed[u] = true;
        buf.clear();
        successors(u, &mut buf);
        for &v in &buf {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every unplaced vertex still has an unplaced predecessor, so walking
    // predecessors backwards from any of them must revisit a vertex.
    let mut pred = vec![usize::MAX; n];
    for u in (0..n).filter(|&u| !placed[u]) {
        buf.clear();
        successors(u, &mut buf);
        for &v in &buf {
            if !placed[v] && pred[v] == usize::MAX {
                pred[v] = u;
            }
        }
    }
    let start = (0..n).find(|&v| !placed[v]).unwrap();
    let mut step = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while step[v] == usize::MAX {
        step[v] = walk.len();
        walk.push(v);
        v = pred[v];
    }
    let mut cycle: Vec<usize> = walk[step[v]..].to_vec();
    cycle.reverse();
    let at = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(at);
    Err(CycleFound(cycle))
}
