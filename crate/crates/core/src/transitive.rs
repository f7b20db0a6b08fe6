//! Transitive orientation by implication-class forcing, cocomparability
//! recognition, and the umbrella test for orderings.
//!
//! The orientation routine is the classical G-decomposition: pick a live
//! edge, grow its implication class under the forcing relation of the
//! *remaining* graph, reject if the class contains an arc and its reverse,
//! otherwise orient the class and delete it. For a complement host the
//! forcing neighbours of an arc are one masked pass over bitset rows of
//! the host and of the already-deleted edges.

use std::collections::HashMap;

use crate::error::{positions, Error};
use crate::gen::rng::Xorshift64Star;
use crate::graph::Graph;
use crate::orientation::{ComplementOrder, PartialOrientation};
use crate::toposort::topological_sort_with;

/// A sequence of arcs, each forcing the next, that starts with an arc and
/// ends with its reverse. Two arcs force each other when they share their
/// tail (or head) and their other endpoints are non-adjacent in the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingChain(pub Vec<(usize, usize)>);

impl ForcingChain {
    fn verify_with(&self, n: usize, is_edge: impl Fn(usize, usize) -> bool) -> bool {
        let arcs = &self.0;
        if arcs.len() < 2 {
            return false;
        }
        let (a0, b0) = arcs[0];
        if arcs[arcs.len() - 1] != (b0, a0) {
            return false;
        }
        let edge = |a: usize, b: usize| a < n && b < n && a != b && is_edge(a, b);
        if !arcs.iter().all(|&(a, b)| edge(a, b)) {
            return false;
        }
        arcs.windows(2).all(|w| {
            let ((a, b), (c, d)) = (w[0], w[1]);
            (a == c && b != d && !edge(b, d)) || (b == d && a != c && !edge(a, c))
        })
    }

    /// Checks the chain as a proof that `h` is not a comparability graph.
    pub fn verify_in(&self, h: &Graph) -> bool {
        self.verify_with(h.n(), |a, b| h.has_edge(a, b))
    }

    /// Checks the chain as a proof that `g` is not a cocomparability graph.
    pub fn verify_in_complement(&self, g: &Graph) -> bool {
        self.verify_with(g.n(), |a, b| !g.has_edge(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotComparability(pub ForcingChain);

/// Three vertices `u <σ v <σ w` with `uw` an edge and `uv`, `vw` non-edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Umbrella {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCocomparability {
    Forcing(ForcingChain),
    Umbrella(Umbrella),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransitiveViolation {
    Malformed(Error),
    Umbrella(Umbrella),
}

/// How Step 1 picks the next edge to grow an implication class from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeedOrder {
    /// Smallest live edge `(a, b)`, `a < b`, oriented `a -> b`.
    #[default]
    Canonical,
    /// Live edges in a seeded random order with random directions.
    Shuffled(u64),
}

trait Host {
    fn n(&self) -> usize;
    fn is_edge(&self, a: usize, b: usize) -> bool;
    /// Appends a superset of `{c : xc an edge, yc not an edge}`.
    fn candidates(&self, x: usize, y: usize, out: &mut Vec<usize>);
    fn for_each_edge(&self, f: impl FnMut(usize, usize));
}

struct Explicit<'a>(&'a Graph);

impl Host for Explicit<'_> {
    fn n(&self) -> usize {
        self.0.n()
    }
    #[inline]
    fn is_edge(&self, a: usize, b: usize) -> bool {
        self.0.has_edge(a, b)
    }
    fn candidates(&self, x: usize, _y: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(self.0.neighbors(x));
    }
    fn for_each_edge(&self, mut f: impl FnMut(usize, usize)) {
        for &(a, b) in self.0.edges() {
            f(a, b);
        }
    }
}

/// The complement of the wrapped graph.
struct Complement<'a>(&'a Graph);

impl Host for Complement<'_> {
    fn n(&self) -> usize {
        self.0.n()
    }
    #[inline]
    fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && !self.0.has_edge(a, b)
    }
    fn candidates(&self, _x: usize, y: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(self.0.neighbors(y));
    }
    fn for_each_edge(&self, mut f: impl FnMut(usize, usize)) {
        let n = self.0.n();
        for a in 0..n {
            for b in a + 1..n {
                if !self.0.has_edge(a, b) {
                    f(a, b);
                }
            }
        }
    }
}

const LIVE: u8 = 0;
const CURRENT: u8 = 1;
const FORWARD: u8 = 2;
const BACKWARD: u8 = 3;

const WORD: usize = usize::BITS as usize;

struct Decomposition<'h, H: Host> {
    host: &'h H,
    n: usize,
    words: usize,
    state: Vec<u8>,
    /// Host adjacency rows, `words` blocks per vertex.
    adj: Vec<usize>,
    /// Rows of edges already oriented and deleted.
    resolved: Vec<usize>,
}

impl<'h, H: Host> Decomposition<'h, H> {
    fn new(host: &'h H) -> Self {
        let n = host.n();
        let words = n.div_ceil(WORD);
        let mut adj = vec![0; n * words];
        host.for_each_edge(|a, b| {
            adj[a * words + b / WORD] |= 1 << (b % WORD);
            adj[b * words + a / WORD] |= 1 << (a % WORD);
        });
        Decomposition {
            host,
            n,
            words,
            state: vec![LIVE; n * n],
            adj,
            resolved: vec![0; n * words],
        }
    }

    #[inline]
    fn st(&self, a: usize, b: usize) -> u8 {
        self.state[a * self.n + b]
    }

    /// Endpoints `c` such that the arc sharing `a` with `(a, b)` (in the
    /// same role) and ending at `c` is forced by it in the remaining graph:
    /// `ac` live, and `bc` not an edge or already deleted.
    fn forced(&self, a: usize, b: usize, out: &mut Vec<usize>) {
        out.clear();
        let w = self.words;
        let (ha, hb) = (&self.adj[a * w..(a + 1) * w], &self.adj[b * w..(b + 1) * w]);
        let (ra, rb) = (&self.resolved[a * w..(a + 1) * w], &self.resolved[b * w..(b + 1) * w]);
        for k in 0..w {
            let mut word = ha[k] & !ra[k] & (!hb[k] | rb[k]);
            while word != 0 {
                let c = k * WORD + word.trailing_zeros() as usize;
                if c != a && c != b {
                    out.push(c);
                }
                word &= word - 1;
            }
        }
    }

    /// Grows the implication class of `seed`; `Err(())` if it meets its
    /// own reversal.
    fn grow(&mut self, seed: (usize, usize)) -> Result<(), ()> {
        let n = self.n;
        let mut class = vec![seed];
        self.state[seed.0 * n + seed.1] = CURRENT;
        let (mut tails, mut heads) = (Vec::new(), Vec::new());
        let mut head = 0;
        while head < class.len() {
            let (x, y) = class[head];
            head += 1;
            self.forced(x, y, &mut tails);
            self.forced(y, x, &mut heads);
            let arcs = tails.iter().map(|&c| (x, c)).chain(heads.iter().map(|&c| (c, y)));
            for (p, q) in arcs {
                if self.st(q, p) == CURRENT {
                    return Err(());
                }
                if self.st(p, q) == LIVE {
                    self.state[p * n + q] = CURRENT;
                    class.push((p, q));
                }
            }
        }
        let w = self.words;
        for (x, y) in class {
            self.state[x * n + y] = FORWARD;
            self.state[y * n + x] = BACKWARD;
            self.resolved[x * w + y / WORD] |= 1 << (y % WORD);
            self.resolved[y * w + x / WORD] |= 1 << (x % WORD);
        }
        Ok(())
    }

    fn run(&mut self, seeds: SeedOrder) -> Result<(), ()> {
        match seeds {
            SeedOrder::Canonical => {
                let mut live = Vec::new();
                self.host.for_each_edge(|a, b| live.push((a, b)));
                for (a, b) in live {
                    if self.st(a, b) == LIVE {
                        self.grow((a, b))?;
                    }
                }
            }
            SeedOrder::Shuffled(seed) => {
                let mut rng = Xorshift64Star::new(seed);
                let mut live = Vec::new();
                self.host.for_each_edge(|a, b| live.push((a, b)));
                rng.shuffle(&mut live);
                for (a, b) in live {
                    let (a, b) = if rng.below(2) == 0 { (a, b) } else { (b, a) };
                    if self.st(a, b) == LIVE {
                        self.grow((a, b))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Searches the implication classes of the whole host (no deletions) for
/// one containing an arc and its reverse and returns the forcing chain.
fn contradiction_chain<H: Host>(host: &H) -> Option<ForcingChain> {
    let n = host.n();
    let mut class_of = vec![u32::MAX; n * n];
    let mut parent: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut seeds = Vec::new();
    host.for_each_edge(|a, b| seeds.push((a, b)));
    let mut cand = Vec::new();
    let mut next_class = 0u32;

    let path_to = |parent: &HashMap<(usize, usize), (usize, usize)>, mut arc: (usize, usize)| {
        let mut path = vec![arc];
        while let Some(&p) = parent.get(&arc) {
            path.push(p);
            arc = p;
        }
        path.reverse();
        path
    };

    for seed in seeds {
        if class_of[seed.0 * n + seed.1] != u32::MAX || class_of[seed.1 * n + seed.0] != u32::MAX {
            continue;
        }
        let id = next_class;
        next_class += 1;
        class_of[seed.0 * n + seed.1] = id;
        let mut queue = vec![seed];
        let mut head = 0;
        while head < queue.len() {
            let (x, y) = queue[head];
            head += 1;
            let mut forced = Vec::new();
            for (a, b, tail_shared) in [(x, y, true), (y, x, false)] {
                cand.clear();
                host.candidates(a, b, &mut cand);
                for &c in &cand {
                    if c != a && c != b && host.is_edge(a, c) && !host.is_edge(b, c) {
                        forced.push(if tail_shared { (a, c) } else { (c, a) });
                    }
                }
            }
            for (p, q) in forced {
                if class_of[q * n + p] == id {
                    // (q, p) is already in the class; (p, q) is forced by (x, y).
                    let mut to_pq = path_to(&parent, (x, y));
                    to_pq.push((p, q));
                    let to_qp = path_to(&parent, (q, p));
                    let mut chain: Vec<_> = to_pq.into_iter().rev().collect();
                    chain.extend(to_qp.into_iter().skip(1));
                    return Some(ForcingChain(chain));
                }
                if class_of[p * n + q] == u32::MAX {
                    class_of[p * n + q] = id;
                    parent.insert((p, q), (x, y));
                    queue.push((p, q));
                }
            }
        }
    }
    None
}

fn decompose<H: Host>(host: &H, seeds: SeedOrder) -> Result<Vec<u8>, ForcingChain> {
    let mut dec = Decomposition::new(host);
    match dec.run(seeds) {
        Ok(()) => Ok(dec.state),
        Err(()) => Err(contradiction_chain(host).unwrap_or_else(|| {
            panic!("G-decomposition rejected a host whose implication classes are all consistent")
        })),
    }
}

/// A transitive orientation of `h`, or a forcing chain proving there is none.
pub fn comparability_orient(h: &Graph) -> Result<PartialOrientation<'_>, NotComparability> {
    comparability_orient_with(h, SeedOrder::Canonical)
}

pub fn comparability_orient_with(
    h: &Graph,
    seeds: SeedOrder,
) -> Result<PartialOrientation<'_>, NotComparability> {
    let n = h.n();
    let state = decompose(&Explicit(h), seeds).map_err(NotComparability)?;
    let arcs = h
        .edges()
        .iter()
        .map(|&(a, b)| if state[a * n + b] == FORWARD { (a, b) } else { (b, a) });
    Ok(PartialOrientation::from_arcs(h, arcs).expect("one direction per edge"))
}

/// Linear extension of a transitive orientation of the complement of `g`.
fn complement_order(g: &Graph, seeds: SeedOrder) -> Result<Vec<usize>, ForcingChain> {
    let n = g.n();
    let state = decompose(&Complement(g), seeds)?;
    let order = topological_sort_with(n, |a, out| {
        let row = &state[a * n..(a + 1) * n];
        out.extend((0..n).filter(|&b| row[b] == FORWARD));
    })
    .unwrap_or_else(|c| panic!("transitive orientation has a directed cycle {:?}", c.0));
    Ok(order)
}

/// Step 1: a transitive orientation of the complement of `g`, carried as
/// the ranking it induces, or a proof that `g` is not cocomparability.
pub fn cocomparability_orient(g: &Graph) -> Result<ComplementOrder<'_>, NotCocomparability> {
    cocomparability_orient_with(g, SeedOrder::Canonical)
}

pub fn cocomparability_orient_with(
    g: &Graph,
    seeds: SeedOrder,
) -> Result<ComplementOrder<'_>, NotCocomparability> {
    let order = complement_order(g, seeds).map_err(NotCocomparability::Forcing)?;
    let pos = positions(g.n(), &order).expect("topological order is a permutation");
    if let Some(u) = find_umbrella(g, &order, &pos) {
        panic!(
            "forcing produced a non-transitive complement orientation: order {order:?}, umbrella {u:?}"
        );
    }
    Ok(ComplementOrder::from_order(g, &order).expect("permutation"))
}

/// First umbrella found scanning edges in canonical order.
pub(crate) fn find_umbrella(g: &Graph, sigma: &[usize], pos: &[usize]) -> Option<Umbrella> {
    let n = g.n();
    let words = n.div_ceil(WORD);
    // rows[i]: positions of the neighbours of sigma[i]
    let mut rows = vec![0usize; n * words];
    for (i, &v) in sigma.iter().enumerate() {
        for &x in g.neighbors(v) {
            rows[i * words + pos[x] / WORD] |= 1 << (pos[x] % WORD);
        }
    }
    for &(a, b) in g.edges() {
        let (pu, pw) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        if pw - pu < 2 {
            continue;
        }
        let (ru, rw) = (&rows[pu * words..(pu + 1) * words], &rows[pw * words..(pw + 1) * words]);
        let (lo, hi) = (pu + 1, pw - 1);
        for k in lo / WORD..=hi / WORD {
            let mut word = !(ru[k] | rw[k]);
            if k == lo / WORD {
                word &= !0 << (lo % WORD);
            }
            if k == hi / WORD && hi % WORD != WORD - 1 {
                word &= (1 << (hi % WORD + 1)) - 1;
            }
            if word != 0 {
                let v = sigma[k * WORD + word.trailing_zeros() as usize];
                return Some(Umbrella { u: sigma[pu], v, w: sigma[pw] });
            }
        }
    }
    None
}

/// Whether orienting the non-edges of `g` along `sigma` gives a transitive
/// orientation of the complement, i.e. whether `sigma` has no umbrella.
pub fn verify_transitive_extension(g: &Graph, sigma: &[usize]) -> Result<(), TransitiveViolation> {
    let pos = positions(g.n(), sigma).map_err(TransitiveViolation::Malformed)?;
    match find_umbrella(g, sigma, &pos) {
        None => Ok(()),
        Some(u) => Err(TransitiveViolation::Umbrella(u)),
    }
}
