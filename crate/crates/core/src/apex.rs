//! Steps 3 and 4, the end-to-end recognizer, and the apex-ordering check.

use fixedbitset::FixedBitSet;

use crate::alternating::{alternating_step, OddCycle, PhiConflict, Reason, Step2Rejection};
use crate::error::{positions, Error};
use crate::graph::{ChordlessC4, Graph};
use crate::orientation::{Arcs, ComplementOrder, PartialOrientation};
use crate::toposort::topological_sort_with;
use crate::transitive::{
    cocomparability_orient_with, find_umbrella, ForcingChain, NotCocomparability, SeedOrder,
    Umbrella,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotCocomparability(ForcingChain),
    AuxNotBipartite(OddCycle),
    PhiUnsatisfiable(PhiConflict),
}

impl Rejection {
    pub fn stage(&self) -> &'static str {
        match self {
            Rejection::NotCocomparability(_) => "NOT_COCOMPARABILITY",
            Rejection::AuxNotBipartite(_) => "AUX_NOT_BIPARTITE",
            Rejection::PhiUnsatisfiable(_) => "PHI_UNSAT",
        }
    }

    /// Re-checks the witness against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Rejection::NotCocomparability(chain) => chain.verify_in_complement(g),
            Rejection::AuxNotBipartite(cycle) => cycle.verify(g),
            Rejection::PhiUnsatisfiable(conflict) => conflict.verify(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionOutcome {
    Accepted(Vec<usize>),
    Rejected(Rejection),
}

impl RecognitionOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, RecognitionOutcome::Accepted(_))
    }

    pub fn ordering(&self) -> Option<&[usize]> {
        match self {
            RecognitionOutcome::Accepted(o) => Some(o),
            RecognitionOutcome::Rejected(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApexViolation {
    Malformed(Error),
    Umbrella(Umbrella),
    C4NotAlternating(ChordlessC4),
}

/// Step 3 with every vertex pass reported to `observe(v, reversed, after)`,
/// where `reversed` is `F_v` before reversal.
pub fn step3_fixup_observed<'g>(
    f: &PartialOrientation<'g>,
    mut observe: impl FnMut(usize, &[(usize, usize)], &PartialOrientation<'g>),
) -> PartialOrientation<'g> {
    step3(f, Some(&mut observe))
}

/// Step 3: for `v = 0, 1, ...` reverse every arc `(w, u)` that closes a
/// directed triangle `(u, v, w)` in the current orientation.
pub fn step3_fixup<'g>(f: &PartialOrientation<'g>) -> PartialOrientation<'g> {
    step3(f, None)
}

type Observer<'a, 'g> = &'a mut dyn FnMut(usize, &[(usize, usize)], &PartialOrientation<'g>);

fn step3<'g>(f: &PartialOrientation<'g>, mut observe: Option<Observer<'_, 'g>>) -> PartialOrientation<'g> {
    let g = f.host();
    let n = g.n();
    let mut bits: FixedBitSet = f.bits().clone();
    let mut outs = vec![FixedBitSet::with_capacity(n); n];
    let mut ins = vec![FixedBitSet::with_capacity(n); n];
    for i in bits.ones() {
        let (a, b) = g.arc(i);
        outs[a].insert(b);
        ins[b].insert(a);
    }
    let mut fv: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        fv.clear();
        for w in outs[v].ones() {
            let (ow, iv) = (outs[w].as_slice(), ins[v].as_slice());
            for (k, (&x, &y)) in ow.iter().zip(iv).enumerate() {
                let mut word = x & y;
                while word != 0 {
                    fv.push((w, k * usize::BITS as usize + word.trailing_zeros() as usize));
                    word &= word - 1;
                }
            }
        }
        for &(w, u) in &fv {
            let i = g.arc_index(w, u).expect("arc of F");
            bits.set(i, false);
            bits.insert(g.reverse_arc(i));
            outs[w].set(u, false);
            ins[u].set(w, false);
            outs[u].insert(w);
            ins[w].insert(u);
        }
        if let Some(obs) = observe.as_mut() {
            obs(v, &fv, &PartialOrientation::from_arc_bits(g, bits.clone()));
        }
    }
    PartialOrientation::from_arc_bits(g, bits)
}

/// Step 4: the smallest-index-first linear extension of `F″ ∪ F̄`.
pub fn step4_order(f2: &PartialOrientation, fbar: &ComplementOrder) -> Vec<usize> {
    let g = f2.host();
    let n = g.n();
    let rank = fbar.rank();
    let by_rank = fbar.order();
    topological_sort_with(n, |u, out| {
        out.extend(f2.successors(u));
        out.extend(
            by_rank[rank[u] + 1..]
                .iter()
                .copied()
                .filter(|&x| !g.has_edge(u, x)),
        );
    })
    .unwrap_or_else(|c| {
        panic!(
            "F'' with the complement orientation has a directed cycle {:?}; F'' = {f2:?}, complement order = {by_rank:?}",
            c.0
        )
    })
}

/// Steps 1 to 4 on a connected graph.
fn recognize_connected(g: &Graph, seeds: SeedOrder) -> Result<Vec<usize>, Rejection> {
    let fbar = cocomparability_orient_with(g, seeds).map_err(|e| match e {
        NotCocomparability::Forcing(chain) => Rejection::NotCocomparability(chain),
        NotCocomparability::Umbrella(u) => unreachable!("forcing does not report umbrellas: {u:?}"),
    })?;
    let step2 = alternating_step(g, &fbar).map_err(|e| match e {
        Step2Rejection::AuxNotBipartite(c) => Rejection::AuxNotBipartite(c),
        Step2Rejection::PhiUnsatisfiable(c) => Rejection::PhiUnsatisfiable(c),
    })?;
    let f2 = step3_fixup(&step2.f);
    Ok(step4_order(&f2, &fbar))
}

fn relabel(rejection: Rejection, labels: &[usize]) -> Rejection {
    let arc = |(a, b): (usize, usize)| (labels[a], labels[b]);
    match rejection {
        Rejection::NotCocomparability(ForcingChain(arcs)) => {
            Rejection::NotCocomparability(ForcingChain(arcs.into_iter().map(arc).collect()))
        }
        Rejection::AuxNotBipartite(OddCycle(arcs)) => {
            Rejection::AuxNotBipartite(OddCycle(arcs.into_iter().map(arc).collect()))
        }
        Rejection::PhiUnsatisfiable(mut c) => {
            c.order = c.order.into_iter().map(|v| labels[v]).collect();
            for s in &mut c.steps {
                s.from = arc(s.from);
                s.to = arc(s.to);
                if let Reason::Alternation { closing } = &mut s.reason {
                    *closing = labels[*closing];
                }
            }
            Rejection::PhiUnsatisfiable(c)
        }
    }
}

/// Recognizes simple-triangle graphs. Components are handled separately and
/// their orderings concatenated in order of smallest vertex; the first
/// rejecting component decides the rejection.
pub fn recognize(g: &Graph) -> RecognitionOutcome {
    recognize_with(g, SeedOrder::Canonical)
}

pub fn recognize_with(g: &Graph, seeds: SeedOrder) -> RecognitionOutcome {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        if comp.len() <= 2 {
            order.extend_from_slice(&comp);
            continue;
        }
        let sub = g.induced(&comp);
        match recognize_connected(&sub, seeds) {
            Ok(local) => order.extend(local.into_iter().map(|v| comp[v])),
            Err(r) => {
                let r = relabel(r, &comp);
                assert!(r.verify(g), "rejection witness failed to verify: {r:?}");
                return RecognitionOutcome::Rejected(r);
            }
        }
    }
    debug_assert_eq!(verify_apex_ordering(g, &order), Ok(()));
    RecognitionOutcome::Accepted(order)
}

/// Whether `sigma` is an apex ordering of `g`: no umbrella, and the
/// orientation it induces alternates on every chordless 4-cycle.
pub fn verify_apex_ordering(g: &Graph, sigma: &[usize]) -> Result<(), ApexViolation> {
    let pos = positions(g.n(), sigma).map_err(ApexViolation::Malformed)?;
    if let Some(u) = find_umbrella(g, sigma, &pos) {
        return Err(ApexViolation::Umbrella(u));
    }
    // a 4-cycle fails to alternate iff some vertex on it has one cycle
    // neighbour before it and the other after it
    for v in 0..g.n() {
        for &u in g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]) {
            for &w in g.neighbors(v).iter().filter(|&&w| pos[w] > pos[v]) {
                if let Some(z) = g.c4_closing_vertex(u, v, w) {
                    return Err(ApexViolation::C4NotAlternating(
                        ChordlessC4([u, v, w, z]).canonical(),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transitive::cocomparability_orient;

    #[test]
    fn verifier_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(verify_apex_ordering(&c4, &[0, 2, 1, 3]), Ok(()));
        assert_eq!(
            verify_apex_ordering(&c4, &[0, 1, 2, 3]),
            Err(ApexViolation::C4NotAlternating(ChordlessC4([0, 1, 2, 3])))
        );
        let k3 = Graph::complete(3);
        assert_eq!(verify_apex_ordering(&k3, &[2, 0, 1]), Ok(()));
        assert!(matches!(
            verify_apex_ordering(&k3, &[0, 0, 1]),
            Err(ApexViolation::Malformed(_))
        ));
        let k2k1 = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            verify_apex_ordering(&k2k1, &[1, 2, 0]),
            Err(ApexViolation::Umbrella(Umbrella { u: 1, v: 2, w: 0 }))
        );
    }

    #[test]
    fn recognize_examples() {
        for g in [Graph::empty(0), Graph::empty(1), Graph::empty(4), Graph::complete(5)] {
            let out = recognize(&g);
            assert_eq!(out.ordering().map(|o| o.len()), Some(g.n()));
        }
        let c4 = Graph::cycle(4);
        let out = recognize(&c4);
        assert_eq!(verify_apex_ordering(&c4, out.ordering().unwrap()), Ok(()));
        let RecognitionOutcome::Rejected(r) = recognize(&Graph::cycle(5)) else {
            panic!("C5 accepted");
        };
        assert_eq!(r.stage(), "NOT_COCOMPARABILITY");
        assert!(r.verify(&Graph::cycle(5)));
    }

    #[test]
    fn components_are_concatenated_by_smallest_vertex() {
        // triangle on {1, 3, 5}, edge {0, 4}, isolated 2
        let g = Graph::new(6, [(1, 3), (3, 5), (1, 5), (0, 4)]).unwrap();
        let o = recognize(&g).ordering().unwrap().to_vec();
        assert_eq!(&o[..2], &[0, 4]);
        let mut tri = o[2..5].to_vec();
        tri.sort_unstable();
        assert_eq!(tri, vec![1, 3, 5]);
        assert_eq!(o[5], 2);
    }

    #[test]
    fn rejection_in_second_component_uses_global_labels() {
        // edge {0, 1} then a 5-cycle on 2..7
        let mut edges = vec![(0, 1)];
        edges.extend((0..5).map(|i| (2 + i, 2 + (i + 1) % 5)));
        let g = Graph::new(7, edges).unwrap();
        let RecognitionOutcome::Rejected(r) = recognize(&g) else {
            panic!("accepted a graph with an induced C5");
        };
        assert!(r.verify(&g));
    }

    #[test]
    fn step3_leaves_acyclic_orientations_alone() {
        let c4 = Graph::cycle(4);
        let f = PartialOrientation::from_arcs(&c4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        assert_eq!(step3_fixup(&f), f);
        let empty = PartialOrientation::empty(&c4);
        assert_eq!(step3_fixup(&empty), empty);
    }

    #[test]
    fn step3_reverses_a_directed_triangle() {
        let k3 = Graph::complete(3);
        let f = PartialOrientation::from_arcs(&k3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut seen = Vec::new();
        let f2 = step3_fixup_observed(&f, |v, fv, _| seen.push((v, fv.to_vec())));
        // pass 0: triangle (u, v, w) = (2, 0, 1), so (1, 2) is reversed
        assert_eq!(seen[0], (0, vec![(1, 2)]));
        assert!(f2.is_acyclic());
        assert_eq!(step3_fixup(&f2), f2);
    }

    #[test]
    fn step4_respects_both_orientations() {
        let c4 = Graph::cycle(4);
        let fbar = cocomparability_orient(&c4).unwrap();
        let s = alternating_step(&c4, &fbar).unwrap();
        let order = step4_order(&step3_fixup(&s.f), &fbar);
        let pos = positions(4, &order).unwrap();
        for (a, b) in s.f.arcs().chain(fbar.arc_list()) {
            assert!(pos[a] < pos[b]);
        }
    }
}
