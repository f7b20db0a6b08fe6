//! Step 2: a partial orientation `F` of the input graph that alternates on
//! every chordless 4-cycle, leaves every other edge undirected, and forms
//! no Δ-obstruction with the complement orientation `F̄`.
//!
//! Each pair-node component with more than two nodes gets one Boolean
//! variable; the colour class holding the component's smallest node carries
//! the positive literal. An arc `(u, v)` is put in `F` iff its literal is
//! false. Every path `(u, v, w)` with `(w, u) ∈ F̄` yields the clause
//! `l(u,v) ∨ l(v,w)`, which forbids `(u, v), (v, w) ∈ F`.

pub mod aux;
pub mod twosat;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

pub use aux::{bipartition, build_auxiliary_graph, color_auxiliary_graph, AuxiliaryGraph, Coloring, OddCycle};
pub use twosat::{solve_2sat, Literal, TwoCnf, Unsatisfiable};

use crate::graph::{three_paths, ChordlessC4, Graph};
use crate::orientation::{Arcs, ComplementOrder, PartialOrientation, RankedRows};
use crate::transitive::{cocomparability_orient, verify_transitive_extension, ForcingChain, NotCocomparability};

/// The formula together with the literal carried by each arc (`None` for
/// arcs whose edge is on no chordless 4-cycle).
#[derive(Clone, Debug)]
pub struct Phi {
    pub cnf: TwoCnf,
    pub literals: Vec<Option<Literal>>,
}

pub fn build_phi(g: &Graph, fbar: &ComplementOrder, coloring: &Coloring) -> Phi {
    let mut var_of_component = vec![None; coloring.component_sizes.len()];
    let mut vars = 0;
    for (c, &size) in coloring.component_sizes.iter().enumerate() {
        if size > 2 {
            var_of_component[c] = Some(vars);
            vars += 1;
        }
    }
    let literals: Vec<Option<Literal>> = (0..g.arc_count())
        .map(|p| {
            var_of_component[coloring.component[p]].map(|var| Literal {
                var,
                positive: coloring.color[p] == 0,
            })
        })
        .collect();

    let rows = RankedRows::new(fbar);
    let mut clauses = Vec::new();
    // last (v, u) pass that emitted each second literal
    let mut stamp = vec![usize::MAX; 2 * vars];
    for v in 0..g.n() {
        for (vu, &u) in g.arcs_from(v).zip(g.neighbors(v)) {
            let Some(a) = literals[g.reverse_arc(vu)] else {
                continue;
            };
            rows.scan(v, u, false, |_, vw| {
                if let Some(b) = literals[vw] {
                    let key = 2 * b.var + b.positive as usize;
                    if stamp[key] != vu {
                        stamp[key] = vu;
                        clauses.push((a, b));
                    }
                }
                true
            });
        }
    }
    let cnf = TwoCnf::new(vars, clauses).expect("variables are in range");
    Phi { cnf, literals }
}

/// `(u, v) ∈ F` iff the literal of `(u, v)` is false under `assignment`.
pub fn extract_f<'g>(g: &'g Graph, phi: &Phi, assignment: &[bool]) -> PartialOrientation<'g> {
    let mut bits = FixedBitSet::with_capacity(g.arc_count());
    for (p, lit) in phi.literals.iter().enumerate() {
        if let Some(l) = lit {
            if !l.eval(assignment) {
                bits.insert(p);
            }
        }
    }
    PartialOrientation::from_arc_bits(g, bits)
}

/// Why one arc being in `F` forces another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The two arcs would form a directed path on the chordless 4-cycle
    /// closed by `closing`.
    Alternation { closing: usize },
    /// The two arcs would form a directed path `(x, y, z)` with `(z, x)` in
    /// the complement orientation.
    Delta,
}

/// `from ∈ F` forces `to ∈ F`: the reverse of `to`, together with `from`,
/// would be a forbidden directed path of two arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImplicationStep {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub reason: Reason,
}

/// Proof that no Step-2 orientation exists for the complement orientation
/// given by `order`: a closed chain of forced arcs that passes through an
/// arc and its reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiConflict {
    pub order: Vec<usize>,
    pub steps: Vec<ImplicationStep>,
}

impl PhiConflict {
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return false;
            }
            rank[v] = i;
        }
        let sub = g.induced(&self.order);
        let local: Vec<usize> = (0..self.order.len()).collect();
        if verify_transitive_extension(&sub, &local).is_err() {
            return false;
        }
        let steps = &self.steps;
        let Some(first) = steps.first() else {
            return false;
        };
        let start = first.from;
        let closed = (0..steps.len()).all(|i| steps[i].to == steps[(i + 1) % steps.len()].from);
        let passes_reverse = steps.iter().any(|s| s.to == (start.1, start.0));
        closed && passes_reverse && steps.iter().all(|s| step_is_valid(g, &rank, s))
    }
}

fn step_is_valid(g: &Graph, rank: &[usize], s: &ImplicationStep) -> bool {
    let n = g.n();
    let arc_ok = |(a, b): (usize, usize)| a < n && b < n && g.has_edge(a, b);
    if !arc_ok(s.from) || !arc_ok(s.to) {
        return false;
    }
    let p = s.from;
    let r = (s.to.1, s.to.0);
    let path = if p.1 == r.0 {
        (p.0, p.1, r.1)
    } else if r.1 == p.0 {
        (r.0, r.1, p.1)
    } else {
        return false;
    };
    let (x, y, z) = path;
    if x == z {
        return false;
    }
    match s.reason {
        Reason::Alternation { closing } => {
            closing < n && ChordlessC4::new(g, x, y, z, closing).is_some()
        }
        Reason::Delta => {
            !g.has_edge(x, z)
                && rank[x] != usize::MAX
                && rank[z] != usize::MAX
                && rank[z] < rank[x]
                && g.edge_on_chordless_c4(x, y)
                && g.edge_on_chordless_c4(y, z)
        }
    }
}

/// Lifts an unsatisfiable variable to a chain of forced arcs.
fn phi_conflict(
    g: &Graph,
    fbar: &ComplementOrder,
    phi: &Phi,
    unsat: &Unsatisfiable,
) -> PhiConflict {
    let aux = build_auxiliary_graph(g, fbar);
    let arcs = g.arc_count();
    let mut next: Vec<Vec<(usize, Reason)>> = vec![Vec::new(); arcs];
    // forbidden directed path p then q: p forces rev(q), q forces rev(p)
    let mut forbid = |p: usize, q: usize, reason: Reason| {
        next[p].push((g.reverse_arc(q), reason));
        next[q].push((g.reverse_arc(p), reason));
    };
    for p in 0..arcs {
        let (a, b) = g.arc(p);
        for &q in aux.neighbors(p) {
            let (c, d) = g.arc(q);
            if c == b && d != a {
                let closing = g.c4_closing_vertex(a, b, d).expect("pair-node edge lies on a 4-cycle");
                forbid(p, q, Reason::Alternation { closing });
            }
        }
    }
    for (u, v, w) in three_paths(g) {
        if fbar.has_arc(w, u) {
            let p = g.arc_index(u, v).unwrap();
            let q = g.arc_index(v, w).unwrap();
            if phi.literals[p].is_some() && phi.literals[q].is_some() {
                forbid(p, q, Reason::Delta);
            }
        }
    }

    let start = (0..arcs)
        .find(|&p| phi.literals[p].is_some_and(|l| l.var == unsat.var))
        .expect("variable has a node");
    let back = g.reverse_arc(start);
    let chain = |from: usize, to: usize| -> Vec<ImplicationStep> {
        let mut prev: Vec<Option<(usize, Reason)>> = vec![None; arcs];
        let mut seen = vec![false; arcs];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, reason) in &next[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, reason));
                    queue.push_back(y);
                }
            }
        }
        assert!(seen[to], "unsatisfiable formula does not lift to a forcing chain");
        let mut steps = Vec::new();
        let mut y = to;
        while y != from {
            let (x, reason) = prev[y].unwrap();
            steps.push(ImplicationStep {
                from: g.arc(x),
                to: g.arc(y),
                reason,
            });
            y = x;
        }
        steps.reverse();
        steps
    };
    let mut steps = chain(start, back);
    steps.extend(chain(back, start));
    PhiConflict {
        order: fbar.order(),
        steps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step2Rejection {
    AuxNotBipartite(OddCycle),
    PhiUnsatisfiable(PhiConflict),
}

/// Everything Step 2 computes, for inspection.
#[derive(Clone, Debug)]
pub struct Step2<'g> {
    pub coloring: Coloring,
    pub phi: Phi,
    pub f: PartialOrientation<'g>,
}

pub fn alternating_step<'g>(
    g: &'g Graph,
    fbar: &ComplementOrder,
) -> Result<Step2<'g>, Step2Rejection> {
    let coloring = color_auxiliary_graph(g, fbar).map_err(|odd| {
        assert!(odd.verify(g), "odd cycle witness failed to verify: {odd:?}");
        Step2Rejection::AuxNotBipartite(odd)
    })?;
    let phi = build_phi(g, fbar, &coloring);
    let assignment = match solve_2sat(&phi.cnf) {
        Ok(a) => a,
        Err(unsat) => {
            let conflict = phi_conflict(g, fbar, &phi, &unsat);
            assert!(conflict.verify(g), "conflict witness failed to verify: {conflict:?}");
            return Err(Step2Rejection::PhiUnsatisfiable(conflict));
        }
    };
    let f = extract_f(g, &phi, &assignment);
    let phi = Phi {
        cnf: phi.cnf.with_assignment(assignment).expect("solver output satisfies"),
        literals: phi.literals,
    };
    Ok(Step2 {
        coloring,
        phi,
        f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlternationRejection {
    NotCocomparability(ForcingChain),
    NotAlternatelyOrientable(OddCycle),
}

/// An alternating orientation of a cocomparability graph: on pair-node
/// components with a 4-cycle the colour-0 class is used, every other edge
/// follows the complement's linear extension.
pub fn alternating_orientation_of_cocomp(
    g: &Graph,
) -> Result<PartialOrientation<'_>, AlternationRejection> {
    let fbar = cocomparability_orient(g).map_err(|e| match e {
        NotCocomparability::Forcing(chain) => AlternationRejection::NotCocomparability(chain),
        NotCocomparability::Umbrella(u) => unreachable!("forcing does not report umbrellas: {u:?}"),
    })?;
    let coloring = color_auxiliary_graph(g, &fbar).map_err(AlternationRejection::NotAlternatelyOrientable)?;
    let rank = fbar.rank();
    let mut bits = FixedBitSet::with_capacity(g.arc_count());
    for p in 0..g.arc_count() {
        let (u, v) = g.arc(p);
        let on_cycle = coloring.component_sizes[coloring.component[p]] > 2;
        let take = if on_cycle {
            coloring.color[p] == 0
        } else {
            rank[u] < rank[v]
        };
        if take {
            bits.insert(p);
        }
    }
    Ok(PartialOrientation::from_arc_bits(g, bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step2(g: &Graph) -> Result<Step2<'_>, Step2Rejection> {
        let fbar = cocomparability_orient(g).unwrap();
        alternating_step(g, &fbar)
    }

    #[test]
    fn k3_and_p3_leave_everything_undirected() {
        for g in [Graph::complete(3), Graph::path(3), Graph::empty(1), Graph::empty(0)] {
            let s = step2(&g).unwrap();
            assert!(s.phi.cnf.clauses().is_empty());
            assert!(s.f.is_empty());
        }
    }

    #[test]
    fn c4_gets_an_alternating_orientation() {
        let g = Graph::cycle(4);
        let s = step2(&g).unwrap();
        assert_eq!(s.phi.cnf.var_count(), 1);
        assert!(!s.phi.cnf.clauses().is_empty());
        assert_eq!(s.f.len(), 4);
        let arcs = s.f.to_arc_set();
        let a: crate::graph::ArcSet = [(0, 1), (2, 1), (2, 3), (0, 3)].into();
        let b = crate::graph::reversal(&a);
        assert!(arcs == a || arcs == b);
    }

    #[test]
    fn c4_formula_admits_both_alternations() {
        // an alternating C4 has no directed 2-path, so every clause is
        // trivially true and both values of the single variable survive
        let g = Graph::cycle(4);
        let fbar = ComplementOrder::from_order(&g, &[0, 2, 1, 3]).unwrap();
        let s = alternating_step(&g, &fbar).unwrap();
        assert!(s.phi.cnf.is_satisfied_by(&[false]));
        assert!(s.phi.cnf.is_satisfied_by(&[true]));
        assert!(!s.phi.cnf.clauses().is_empty());
    }

    #[test]
    fn alternating_orientation_examples() {
        let c4 = Graph::cycle(4);
        let f = alternating_orientation_of_cocomp(&c4).unwrap();
        assert!(f.is_total());
        for (a, b, c) in three_paths(&c4) {
            assert!(!(f.has_arc(a, b) && f.has_arc(b, c)));
        }
        let k3 = Graph::complete(3);
        assert!(alternating_orientation_of_cocomp(&k3).unwrap().is_total());
        assert!(matches!(
            alternating_orientation_of_cocomp(&Graph::cycle(5)),
            Err(AlternationRejection::NotCocomparability(_))
        ));
    }
}
