//! Non-betweenness instances and their reduction to acyclic alternating
//! orientability.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gen::rng::Xorshift64Star;
use crate::graph::Graph;

/// Ground set `0..element_count` and ordered triples `(i, j, k)`: a valid
/// ordering never puts `j` strictly between `i` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonBetweennessInstance {
    element_count: usize,
    triples: Vec<(usize, usize, usize)>,
}

impl NonBetweennessInstance {
    pub fn new(element_count: usize, triples: Vec<(usize, usize, usize)>) -> Result<Self> {
        for &(i, j, k) in &triples {
            if i >= element_count || j >= element_count || k >= element_count {
                return Err(Error::InvalidInstance(format!(
                    "triple ({i}, {j}, {k}) out of range for {element_count} elements"
                )));
            }
            if i == j || j == k || i == k {
                return Err(Error::InvalidInstance(format!(
                    "triple ({i}, {j}, {k}) repeats an element"
                )));
            }
        }
        Ok(NonBetweennessInstance {
            element_count,
            triples,
        })
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    /// Whether `rank` (rank of each element, a bijection onto
    /// `0..element_count`) keeps every middle element outside its pair.
    pub fn is_satisfied_by(&self, rank: &[usize]) -> bool {
        self.triples.iter().all(|&(i, j, k)| {
            (rank[i] < rank[j] && rank[k] < rank[j]) || (rank[j] < rank[i] && rank[j] < rank[k])
        })
    }

    /// Graph vertex of element `i`.
    pub fn element_vertex(&self, i: usize) -> usize {
        i
    }

    /// Graph vertices `(u_h, w_h)` of triple `h`.
    pub fn gadget_vertices(&self, h: usize) -> (usize, usize) {
        let base = self.element_count + 2 * h;
        (base, base + 1)
    }
}

/// A clique on the elements plus, for triple `h = (i, j, k)`, two vertices
/// `u_h, w_h` with edges `u_h w_h, u_h v_j, w_h v_i, w_h v_k`.
pub fn nonbetweenness_to_graph(inst: &NonBetweennessInstance) -> Graph {
    let a = inst.element_count;
    let mut edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (i + 1..a).map(move |j| (i, j)))
        .collect();
    for (h, &(i, j, k)) in inst.triples.iter().enumerate() {
        let (u, w) = inst.gadget_vertices(h);
        edges.extend([(u, w), (u, j), (w, i), (w, k)]);
    }
    Graph::new(a + 2 * inst.triples.len(), edges).expect("reduction graph is simple")
}

pub fn random_instance(elements: usize, triples: usize, seed: u64) -> Result<NonBetweennessInstance> {
    if elements < 3 && triples > 0 {
        return Err(Error::InvalidInstance(
            "triples need at least three elements".into(),
        ));
    }
    let mut rng = Xorshift64Star::new(seed);
    let list = (0..triples)
        .map(|_| {
            let p = rng.permutation(elements);
            (p[0], p[1], p[2])
        })
        .collect();
    NonBetweennessInstance::new(elements, list)
}

type Constraint = (usize, usize, usize);

fn canonical_constraint((i, j, k): Constraint) -> Constraint {
    (i.min(k), j, i.max(k))
}

fn canonical_form(elements: usize, cs: &[Constraint]) -> Vec<Constraint> {
    let mut best: Option<Vec<Constraint>> = None;
    let mut perm: Vec<usize> = (0..elements).collect();
    loop {
        let mut mapped: Vec<Constraint> = cs
            .iter()
            .map(|&(i, j, k)| canonical_constraint((perm[i], perm[j], perm[k])))
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every instance with `1..=max_elements` elements and at most
/// `max_triples` distinct triples, one representative per class under
/// relabelling the elements and swapping the outer two entries of a triple.
pub fn enumerate_instances(max_elements: usize, max_triples: usize) -> Vec<NonBetweennessInstance> {
    let mut out = Vec::new();
    for a in 1..=max_elements {
        let all: Vec<Constraint> = (0..a)
            .flat_map(|j| {
                (0..a).flat_map(move |i| (i + 1..a).map(move |k| (i, j, k)))
            })
            .filter(|&(i, j, k)| i != j && k != j)
            .collect();
        let mut seen = BTreeSet::new();
        let mut chosen = Vec::new();
        subsets(&all, 0, max_triples, &mut chosen, &mut |cs| {
            let canon = canonical_form(a, cs);
            if seen.insert(canon.clone()) {
                out.push(NonBetweennessInstance::new(a, canon).expect("in range"));
            }
        });
    }
    out
}

fn subsets(
    all: &[Constraint],
    from: usize,
    left: usize,
    chosen: &mut Vec<Constraint>,
    f: &mut impl FnMut(&[Constraint]),
) {
    f(chosen);
    if left == 0 {
        return;
    }
    for i in from..all.len() {
        chosen.push(all[i]);
        subsets(all, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triple_reduction() {
        let inst = NonBetweennessInstance::new(3, vec![(0, 1, 2)]).unwrap();
        let g = nonbetweenness_to_graph(&inst);
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn empty_instance_is_a_clique() {
        let inst = NonBetweennessInstance::new(4, vec![]).unwrap();
        assert_eq!(nonbetweenness_to_graph(&inst), Graph::complete(4));
    }

    #[test]
    fn counting_formula() {
        let inst = NonBetweennessInstance::new(4, vec![(0, 1, 2), (3, 0, 1)]).unwrap();
        let g = nonbetweenness_to_graph(&inst);
        assert_eq!((g.n(), g.m()), (8, 14));
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(NonBetweennessInstance::new(3, vec![(0, 0, 1)]).is_err());
        assert!(NonBetweennessInstance::new(3, vec![(0, 1, 3)]).is_err());
    }

    #[test]
    fn satisfaction_check() {
        let inst = NonBetweennessInstance::new(3, vec![(0, 1, 2)]).unwrap();
        assert!(inst.is_satisfied_by(&[0, 2, 1]));
        assert!(!inst.is_satisfied_by(&[0, 1, 2]));
    }

    #[test]
    fn enumeration_up_to_symmetry() {
        let three = enumerate_instances(3, 3);
        // a = 1, 2, 3 with no triples, plus on three elements: one kind of
        // single constraint, and the pairs/triples of the three constraints
        let with_three: Vec<_> = three.iter().filter(|i| i.element_count() == 3).collect();
        assert_eq!(with_three.len(), 4);
        let five = enumerate_instances(5, 3);
        assert!(five.iter().all(|i| i.triples().len() <= 3));
        let mut dedup = five.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), five.len());
    }

    #[test]
    fn next_permutation_is_lexicographic() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }
}
