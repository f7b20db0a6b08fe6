//! 2-satisfiability through the implication graph and its strongly
//! connected components.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    #[inline]
    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    fn from_node(i: usize) -> Self {
        Literal {
            var: i / 2,
            positive: i % 2 == 0,
        }
    }
}

pub type Clause = (Literal, Literal);

fn normalize((a, b): Clause) -> Clause {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoCnf {
    var_count: usize,
    clauses: Vec<Clause>,
    assignment: Option<Vec<bool>>,
}

impl TwoCnf {
    /// Clauses are stored once each, with the smaller literal first.
    pub fn new(var_count: usize, clauses: impl IntoIterator<Item = Clause>) -> Result<Self> {
        let mut clauses: Vec<Clause> = clauses.into_iter().map(normalize).collect();
        if let Some(&(a, b)) = clauses
            .iter()
            .find(|(a, b)| a.var >= var_count || b.var >= var_count)
        {
            return Err(Error::InvalidInstance(format!(
                "clause ({a:?}, {b:?}) mentions a variable outside 0..{var_count}"
            )));
        }
        clauses.sort_unstable();
        clauses.dedup();
        Ok(TwoCnf {
            var_count,
            clauses,
            assignment: None,
        })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn assignment(&self) -> Option<&[bool]> {
        self.assignment.as_deref()
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.var_count
            && self
                .clauses
                .iter()
                .all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }

    /// Attaches `assignment`, which must satisfy every clause.
    pub fn with_assignment(mut self, assignment: Vec<bool>) -> Result<Self> {
        if !self.is_satisfied_by(&assignment) {
            return Err(Error::InvalidInstance(
                "assignment does not satisfy the formula".into(),
            ));
        }
        self.assignment = Some(assignment);
        Ok(self)
    }

    /// Implication graph on literal nodes `2v` (positive) and `2v + 1`.
    fn implication_graph(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); 2 * self.var_count];
        for &(a, b) in &self.clauses {
            adj[a.negate().node()].push(b.node());
            adj[b.negate().node()].push(a.node());
        }
        adj
    }
}

/// `x` and its negation imply each other, so no assignment exists.
/// `forward` runs from `x` (as `Literal::pos(var)`) to its negation and
/// `backward` returns; each step is backed by a clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unsatisfiable {
    pub var: usize,
    pub forward: Vec<Literal>,
    pub backward: Vec<Literal>,
}

impl Unsatisfiable {
    pub fn verify(&self, phi: &TwoCnf) -> bool {
        let clauses: HashSet<Clause> = phi.clauses.iter().copied().collect();
        let chain_ok = |chain: &[Literal], from: Literal, to: Literal| {
            chain.first() == Some(&from)
                && chain.last() == Some(&to)
                && chain.windows(2).all(|w| {
                    clauses.contains(&normalize((w[0].negate(), w[1])))
                })
        };
        let x = Literal::pos(self.var);
        self.var < phi.var_count
            && chain_ok(&self.forward, x, x.negate())
            && chain_ok(&self.backward, x.negate(), x)
    }
}

/// Iterative Tarjan; component ids come out in reverse topological order.
fn strongly_connected(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut next_comp = 0;
    for s in 0..n {
        if index[s] != UNSET {
            continue;
        }
        index[s] = counter;
        low[s] = counter;
        counter += 1;
        stack.push(s);
        call.push((s, 0));
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = adj[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    call.push((w, 0));
                } else if comp[w] == UNSET {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

fn implication_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<Literal> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    assert!(prev[to] != usize::MAX, "literals share a component but no path joins them");
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path.into_iter().map(Literal::from_node).collect()
}

/// A satisfying assignment: `x` is true iff its component comes after the
/// component of its negation in topological order.
pub fn solve_2sat(phi: &TwoCnf) -> std::result::Result<Vec<bool>, Unsatisfiable> {
    let adj = phi.implication_graph();
    let comp = strongly_connected(&adj);
    let mut assignment = Vec::with_capacity(phi.var_count);
    for var in 0..phi.var_count {
        let (p, q) = (Literal::pos(var).node(), Literal::neg(var).node());
        if comp[p] == comp[q] {
            let witness = Unsatisfiable {
                var,
                forward: implication_path(&adj, p, q),
                backward: implication_path(&adj, q, p),
            };
            debug_assert!(witness.verify(phi));
            return Err(witness);
        }
        assignment.push(comp[p] < comp[q]);
    }
    Ok(assignment)
}
