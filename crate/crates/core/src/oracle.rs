//! Exhaustive oracles and obstruction detectors. Everything here is
//! exponential or high-degree polynomial and guarded by input-size limits.

use std::collections::BTreeSet;

use crate::apex::verify_apex_ordering;
use crate::error::{Error, Result};
use crate::gen::reduction::next_permutation;
use crate::gen::NonBetweennessInstance;
use crate::graph::Graph;
use crate::orientation::{Arcs, PartialOrientation};

pub const MAX_ORACLE_VERTICES: usize = 9;
pub const MAX_ORIENTATION_EDGES: usize = 24;
pub const MAX_NONBETWEENNESS_ELEMENTS: usize = 8;

fn guard(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::InputTooLarge { what, got, limit })
    } else {
        Ok(())
    }
}

/// The lexicographically first apex ordering of `g`, if any, found by
/// depth-first search over orderings. A branch is cut as soon as the
/// vertices placed so far contain an umbrella or a non-alternating
/// 4-cycle path, both of which are decided by three placed vertices.
pub fn brute_force_recognize(g: &Graph) -> Result<Option<Vec<usize>>> {
    guard("vertex count", g.n(), MAX_ORACLE_VERTICES)?;
    let mut order = Vec::with_capacity(g.n());
    let mut used = vec![false; g.n()];
    Ok(extend(g, &mut order, &mut used).then_some(order))
}

fn extend(g: &Graph, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if order.len() == g.n() {
        return true;
    }
    for w in 0..g.n() {
        if used[w] || !placeable(g, order, w) {
            continue;
        }
        used[w] = true;
        order.push(w);
        if extend(g, order, used) {
            return true;
        }
        order.pop();
        used[w] = false;
    }
    false
}

/// Whether appending `w` after `order` creates a violating triple ending at `w`.
fn placeable(g: &Graph, order: &[usize], w: usize) -> bool {
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            let umbrella = g.has_edge(u, w) && !g.has_edge(u, v) && !g.has_edge(v, w);
            let bent_c4 = g.has_edge(u, v)
                && g.has_edge(v, w)
                && g.on_chordless_c4(u, v, w);
            if umbrella || bent_c4 {
                return false;
            }
        }
    }
    true
}

/// Same answer as [`brute_force_recognize`], by checking all `n!` orderings.
pub fn brute_force_recognize_naive(g: &Graph) -> Result<Option<Vec<usize>>> {
    guard("vertex count", g.n(), MAX_ORACLE_VERTICES)?;
    let mut sigma: Vec<usize> = (0..g.n()).collect();
    loop {
        if verify_apex_ordering(g, &sigma).is_ok() {
            return Ok(Some(sigma));
        }
        if !next_permutation(&mut sigma) {
            return Ok(None);
        }
    }
}

/// All `(a, b, c)` with `(a, b), (b, c) ∈ F` and `(c, a) ∈ F̄`.
pub fn find_delta_obstructions(f: &impl Arcs, fbar: &impl Arcs) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in f.arc_list() {
        for c in f.successors(b) {
            if fbar.has_arc(c, a) {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// All directed triangles `(a, b, c)` of `F`, each listed once from its
/// smallest vertex.
pub fn find_directed_triangles(f: &impl Arcs) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in f.arc_list() {
        if b < a {
            continue;
        }
        for c in f.successors(b) {
            if c > a && f.has_arc(c, a) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// All alternating `2k`-cycles `(a_0, b_0, ..., a_{k-1}, b_{k-1})` on
/// distinct vertices, with `(a_i, b_i) ∈ F` and `(b_i, a_{i+1}) ∈ F̄`.
/// Each cycle is reported once, rotated so that its sequence is smallest.
pub fn find_alternating_cycles(f: &impl Arcs, fbar: &impl Arcs, k: usize) -> Vec<Vec<usize>> {
    assert!(k >= 2, "alternating cycles have at least four vertices");
    let f_arcs = f.arc_list();
    let mut found = BTreeSet::new();
    let mut path = Vec::with_capacity(2 * k);
    for &(a0, b0) in &f_arcs {
        path.clear();
        path.extend([a0, b0]);
        grow_alternating(f, fbar, k, &mut path, &mut found);
    }
    found.into_iter().collect()
}

fn grow_alternating(
    f: &impl Arcs,
    fbar: &impl Arcs,
    k: usize,
    path: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if path.len() == 2 * k {
        if fbar.has_arc(last, path[0]) {
            found.insert(smallest_rotation(path));
        }
        return;
    }
    for a in fbar.successors(last) {
        if path.contains(&a) {
            continue;
        }
        for b in f.successors(a) {
            if path.contains(&b) {
                continue;
            }
            path.extend([a, b]);
            grow_alternating(f, fbar, k, path, found);
            path.truncate(path.len() - 2);
        }
    }
}

fn smallest_rotation(cycle: &[usize]) -> Vec<usize> {
    (0..cycle.len())
        .step_by(2)
        .map(|s| {
            let mut r = cycle.to_vec();
            r.rotate_left(s);
            r
        })
        .min()
        .unwrap()
}

/// All alternating 4-anticycles `[a_0, b_0, a_1, b_1]`: `(a_0, b_0),
/// (a_1, b_1) ∈ F` and `(a_0, b_1), (a_1, b_0) ∈ F̄`, with
/// `(a_0, b_0) < (a_1, b_1)`.
pub fn find_4_anticycles(f: &impl Arcs, fbar: &impl Arcs) -> Vec<[usize; 4]> {
    let arcs = f.arc_list();
    let mut out = Vec::new();
    for (i, &(a0, b0)) in arcs.iter().enumerate() {
        for &(a1, b1) in &arcs[i + 1..] {
            let distinct = a0 != a1 && a0 != b1 && b0 != a1 && b0 != b1;
            if distinct && fbar.has_arc(a0, b1) && fbar.has_arc(a1, b0) {
                out.push([a0, b0, a1, b1]);
            }
        }
    }
    out
}

/// Every chordless cycle of `g` with at least `min_len` vertices, as a
/// vertex sequence starting at its smallest vertex with the smaller
/// neighbour second.
pub fn chordless_cycles(g: &Graph, min_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..g.n() {
        for &t in g.neighbors(s).iter().filter(|&&t| t > s) {
            path.clear();
            path.extend([s, t]);
            induced_paths(g, min_len.max(3), &mut path, &mut out);
        }
    }
    out
}

fn induced_paths(g: &Graph, min_len: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    for &x in g.neighbors(last) {
        if x <= s || path.contains(&x) {
            continue;
        }
        // x may touch only `last` among interior vertices, and s only to close
        let inner = &path[1..path.len() - 1];
        if inner.iter().any(|&y| g.has_edge(x, y)) {
            continue;
        }
        path.push(x);
        if g.has_edge(x, s) {
            if path.len() >= min_len && path[1] < x {
                out.push(path.clone());
            }
        } else {
            induced_paths(g, min_len, path, out);
        }
        path.pop();
    }
}

/// An acyclic orientation of `g` that alternates on every chordless cycle
/// of length at least 4, if one exists. The search orients edges one at a
/// time and backtracks as soon as a chordless cycle gets two consecutive
/// edges pointing the same way or a directed cycle closes.
pub fn brute_force_acyclic_alternating(g: &Graph) -> Result<Option<PartialOrientation<'_>>> {
    guard("edge count", g.m(), MAX_ORIENTATION_EDGES)?;
    let arcs = g.arc_count();
    // bent[p] lists arcs q such that p followed by q is a forbidden 2-path
    let mut bent = vec![Vec::new(); arcs];
    for cycle in chordless_cycles(g, 4) {
        let len = cycle.len();
        for i in 0..len {
            let (x, y, z) = (cycle[i], cycle[(i + 1) % len], cycle[(i + 2) % len]);
            for (a, b, c) in [(x, y, z), (z, y, x)] {
                let p = g.arc_index(a, b).unwrap();
                let q = g.arc_index(b, c).unwrap();
                bent[p].push(q);
                bent[q].push(p);
            }
        }
    }
    let mut chosen = vec![false; arcs];
    let mut out = Vec::new();
    let edges = g.edges();
    if !orient_from(g, edges, 0, &bent, &mut chosen, &mut out) {
        return Ok(None);
    }
    Ok(Some(
        PartialOrientation::from_arcs(g, out).expect("one direction per edge"),
    ))
}

fn orient_from(
    g: &Graph,
    edges: &[(usize, usize)],
    i: usize,
    bent: &[Vec<usize>],
    chosen: &mut [bool],
    out: &mut Vec<(usize, usize)>,
) -> bool {
    let Some(&(a, b)) = edges.get(i) else {
        return true;
    };
    for (u, v) in [(a, b), (b, a)] {
        let p = g.arc_index(u, v).unwrap();
        if bent[p].iter().any(|&q| chosen[q]) || reaches(g, chosen, v, u) {
            continue;
        }
        chosen[p] = true;
        out.push((u, v));
        if orient_from(g, edges, i + 1, bent, chosen, out) {
            return true;
        }
        out.pop();
        chosen[p] = false;
    }
    false
}

fn reaches(g: &Graph, chosen: &[bool], from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for i in g.arcs_from(x) {
            let y = g.arc(i).1;
            if chosen[i] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// The lexicographically first rank vector satisfying `inst`, if any.
pub fn brute_force_nonbetweenness(inst: &NonBetweennessInstance) -> Result<Option<Vec<usize>>> {
    guard(
        "element count",
        inst.element_count(),
        MAX_NONBETWEENNESS_ELEMENTS,
    )?;
    let mut rank: Vec<usize> = (0..inst.element_count()).collect();
    loop {
        if inst.is_satisfied_by(&rank) {
            return Ok(Some(rank));
        }
        if !next_permutation(&mut rank) {
            return Ok(None);
        }
    }
}
