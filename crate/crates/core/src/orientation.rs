//! Directed edge sets over a host graph.
//!
//! [`PartialOrientation`] stores an explicit subset of a graph's arcs and is
//! used for the orientation `F` of the input graph and its Step-3 rewrites.
//! The transitive orientation of the complement is almost always dense, so
//! it is represented implicitly by a vertex ranking ([`ComplementOrder`]):
//! `(u, v)` is an arc iff `uv` is a non-edge and `u` is ranked below `v`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{ArcSet, Graph};

/// Read access to a set of directed edges on vertices `0..n`.
pub trait Arcs {
    fn vertex_count(&self) -> usize;
    fn has_arc(&self, u: usize, v: usize) -> bool;
    /// Heads of the arcs leaving `u`, ascending.
    fn successors(&self, u: usize) -> Vec<usize>;

    fn arc_list(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.successors(u).into_iter().map(move |v| (u, v)))
            .collect()
    }
}

/// A set of arcs of `host`, never containing both `(u, v)` and `(v, u)`.
#[derive(Clone)]
pub struct PartialOrientation<'g> {
    host: &'g Graph,
    directed: FixedBitSet,
}

impl<'g> PartialOrientation<'g> {
    pub fn empty(host: &'g Graph) -> Self {
        PartialOrientation {
            host,
            directed: FixedBitSet::with_capacity(host.arc_count()),
        }
    }

    pub fn from_arcs<I>(host: &'g Graph, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = Self::empty(host);
        for (u, v) in arcs {
            let i = host.arc_index(u, v).ok_or(Error::NotAnEdge(u, v))?;
            if out.directed.contains(host.reverse_arc(i)) {
                return Err(Error::BothDirections(u.min(v), u.max(v)));
            }
            out.directed.insert(i);
        }
        Ok(out)
    }

    /// Orientation with exactly the arcs whose indices are set in `bits`.
    pub(crate) fn from_arc_bits(host: &'g Graph, bits: FixedBitSet) -> Self {
        debug_assert_eq!(bits.len(), host.arc_count());
        debug_assert!(bits
            .ones()
            .all(|i| !bits.contains(host.reverse_arc(i))));
        PartialOrientation {
            host,
            directed: bits,
        }
    }

    /// Every edge oriented from the lower-ranked endpoint to the higher.
    pub fn by_rank(host: &'g Graph, rank: &[usize]) -> Self {
        let mut bits = FixedBitSet::with_capacity(host.arc_count());
        for i in 0..host.arc_count() {
            let (u, v) = host.arc(i);
            if rank[u] < rank[v] {
                bits.insert(i);
            }
        }
        Self::from_arc_bits(host, bits)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.directed
    }

    pub fn len(&self) -> usize {
        self.directed.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.directed.is_clear()
    }

    #[inline]
    pub fn has_arc_index(&self, i: usize) -> bool {
        self.directed.contains(i)
    }

    /// Whether the edge `uv` is oriented in either direction.
    pub fn is_oriented(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.directed.ones().map(|i| self.host.arc(i))
    }

    pub fn to_arc_set(&self) -> ArcSet {
        self.arcs().collect()
    }

    /// Whether every edge of the host is oriented.
    pub fn is_total(&self) -> bool {
        self.len() == self.host.m()
    }

    /// `(F - S) ∪ S⁻¹`. Arcs of `s` not in `self` are ignored.
    pub fn with_reversed(&self, s: &[(usize, usize)]) -> Self {
        let mut out = self.clone();
        for &(u, v) in s {
            if let Some(i) = self.host.arc_index(u, v) {
                if self.directed.contains(i) {
                    out.directed.set(i, false);
                    out.directed.insert(self.host.reverse_arc(i));
                }
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        crate::toposort::topological_sort_with(self.host.n(), |u, out| {
            out.extend(self.successors(u))
        })
        .is_ok()
    }
}

impl Arcs for PartialOrientation<'_> {
    fn vertex_count(&self) -> usize {
        self.host.n()
    }

    #[inline]
    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.host
            .arc_index(u, v)
            .is_some_and(|i| self.directed.contains(i))
    }

    fn successors(&self, u: usize) -> Vec<usize> {
        self.host
            .arcs_from(u)
            .filter(|&i| self.directed.contains(i))
            .map(|i| self.host.arc(i).1)
            .collect()
    }
}

impl PartialEq for PartialOrientation<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.directed == other.directed
    }
}

impl std::fmt::Debug for PartialOrientation<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.arcs()).finish()
    }
}

/// The orientation of the complement of `host` induced by a vertex ranking.
#[derive(Clone, Debug)]
pub struct ComplementOrder<'g> {
    host: &'g Graph,
    rank: Vec<usize>,
}

impl<'g> ComplementOrder<'g> {
    /// `order` lists the vertices from lowest to highest rank.
    pub fn from_order(host: &'g Graph, order: &[usize]) -> Result<Self> {
        let rank = crate::error::positions(host.n(), order)?;
        Ok(ComplementOrder { host, rank })
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            order[r] = v;
        }
        order
    }

    /// The upper set of `v`: non-neighbours ranked above `v`.
    #[inline]
    pub fn in_upper(&self, v: usize, x: usize) -> bool {
        self.has_arc(v, x)
    }

    /// The lower set of `v`: non-neighbours ranked below `v`.
    #[inline]
    pub fn in_lower(&self, v: usize, x: usize) -> bool {
        self.has_arc(x, v)
    }
}

/// Neighbourhood rows relabelled by complement rank, so that "neighbours
/// of `x` in the upper (or lower) set of `b`" is a masked word scan.
pub(crate) struct RankedRows<'g> {
    host: &'g Graph,
    order: Vec<usize>,
    rank: Vec<usize>,
    words: usize,
    bits: Vec<usize>,
    /// Set bits of row `x` in words before `k`, at `x * words + k`.
    before: Vec<u32>,
    /// Arcs out of each vertex sorted by the rank of their head, laid out
    /// like the host's arc indices.
    arc_by_rank: Vec<usize>,
}

impl<'g> RankedRows<'g> {
    const W: usize = usize::BITS as usize;

    pub fn new(fbar: &ComplementOrder<'g>) -> Self {
        let g = fbar.host;
        let n = g.n();
        let words = n.div_ceil(Self::W);
        let mut bits = vec![0usize; n * words];
        for v in 0..n {
            let r = fbar.rank[v];
            for &w in g.neighbors(v) {
                let rw = fbar.rank[w];
                bits[r * words + rw / Self::W] |= 1 << (rw % Self::W);
            }
        }
        // Heads arrive in rank order, so each tail's slots fill in rank order.
        let order = fbar.order();
        let mut cursor: Vec<usize> = (0..n).map(|v| g.arcs_from(v).start).collect();
        let mut arc_by_rank = vec![0; g.arc_count()];
        for &w in &order {
            for i in g.arcs_from(w) {
                let x = g.arc(i).1;
                arc_by_rank[cursor[x]] = g.reverse_arc(i);
                cursor[x] += 1;
            }
        }
        let mut before = vec![0u32; n * words];
        for r in 0..n {
            let mut acc = 0;
            for k in 0..words {
                before[r * words + k] = acc;
                acc += bits[r * words + k].count_ones();
            }
        }
        RankedRows {
            host: g,
            order,
            rank: fbar.rank.clone(),
            words,
            bits,
            before,
            arc_by_rank,
        }
    }

    fn row(&self, v: usize) -> &[usize] {
        let r = self.rank[v];
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    /// Calls `f(w, arc)` on every neighbour `w` of `x` that is a
    /// non-neighbour of `b` ranked above `b` (`upper`) or below it, in rank
    /// order, with `arc` the index of `(x, w)`. Stops early when `f`
    /// returns false.
    pub fn scan(&self, x: usize, b: usize, upper: bool, mut f: impl FnMut(usize, usize) -> bool) {
        let (rx, rb) = (self.row(x), self.row(b));
        let before = &self.before[self.rank[x] * self.words..];
        let arcs = &self.arc_by_rank[self.host.arcs_from(x)];
        let cut = self.rank[b];
        let (lo, hi) = if upper {
            ((cut + 1) / Self::W, self.words)
        } else {
            (0, (cut / Self::W + 1).min(self.words))
        };
        for k in lo..hi {
            let base = k * Self::W;
            let mut word = rx[k] & !rb[k];
            if upper && base <= cut {
                let shift = cut + 1 - base;
                word &= if shift >= Self::W { 0 } else { !0 << shift };
            }
            if !upper && base + Self::W > cut {
                word &= (1usize << (cut - base)) - 1;
            }
            while word != 0 {
                let bit = word.trailing_zeros();
                let j = before[k] + (rx[k] & ((1usize << bit) - 1)).count_ones();
                if !f(self.order[base + bit as usize], arcs[j as usize]) {
                    return;
                }
                word &= word - 1;
            }
        }
    }

    pub fn any(&self, x: usize, b: usize, upper: bool) -> bool {
        let mut found = false;
        self.scan(x, b, upper, |_, _| {
            found = true;
            false
        });
        found
    }
}

impl Arcs for ComplementOrder<'_> {
    fn vertex_count(&self) -> usize {
        self.host.n()
    }

    #[inline]
    fn has_arc(&self, u: usize, v: usize) -> bool {
        u != v && self.rank[u] < self.rank[v] && !self.host.has_edge(u, v)
    }

    fn successors(&self, u: usize) -> Vec<usize> {
        (0..self.host.n()).filter(|&v| self.has_arc(u, v)).collect()
    }
}
