//! Point-interval triangle models and their intersection graphs.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gen::rng::Xorshift64Star;
use crate::graph::Graph;

pub type Coord = Ratio<i64>;

/// A triangle with its apex on the upper line and base `[left, right]` on
/// the lower line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub apex: Coord,
    pub left: Coord,
    pub right: Coord,
}

impl Triangle {
    pub fn new(apex: Coord, left: Coord, right: Coord) -> Result<Self> {
        if left > right {
            return Err(Error::InvalidInstance(format!(
                "base [{left}, {right}] has left end after right end"
            )));
        }
        Ok(Triangle { apex, left, right })
    }

    fn integer(apex: i64, left: i64, right: i64) -> Self {
        Triangle {
            apex: Coord::from_integer(apex),
            left: Coord::from_integer(left),
            right: Coord::from_integer(right),
        }
    }

    /// Closed triangles intersect unless one lies strictly left of the other
    /// on both lines.
    pub fn intersects(&self, other: &Triangle) -> bool {
        let left_of = |a: &Triangle, b: &Triangle| a.right < b.left && a.apex < b.apex;
        !(left_of(self, other) || left_of(other, self))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleRepresentation {
    pub triangles: Vec<Triangle>,
}

impl TriangleRepresentation {
    pub fn new(triangles: Vec<Triangle>) -> Self {
        TriangleRepresentation { triangles }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

pub fn representation_to_graph(rep: &TriangleRepresentation) -> Graph {
    let t = &rep.triangles;
    let mut edges = Vec::new();
    for u in 0..t.len() {
        for v in u + 1..t.len() {
            if t[u].intersects(&t[v]) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(t.len(), edges).expect("pairs are distinct")
}

/// Apexes are a random permutation of `1..=n`; the `2n` base endpoints are
/// the first `2n` entries of a shuffled `0..=2n`, vertex `v` taking entries
/// `2v` and `2v + 1`. The apex permutation is drawn first.
pub fn random_representation(n: usize, seed: u64) -> TriangleRepresentation {
    let mut rng = Xorshift64Star::new(seed);
    let apex = rng.permutation(n);
    let mut ends: Vec<i64> = (0..=2 * n as i64).collect();
    rng.shuffle(&mut ends);
    let triangles = (0..n)
        .map(|v| {
            let (a, b) = (ends[2 * v], ends[2 * v + 1]);
            Triangle::integer(apex[v] as i64 + 1, a.min(b), a.max(b))
        })
        .collect();
    TriangleRepresentation { triangles }
}

/// Sparse models: triangle `v` sits near position `1000 v` on both lines,
/// with base half-widths drawn from `0..1000 * spread` and apex offsets from
/// `-1000 * spread..1000 * spread`. The expected degree grows linearly in
/// `spread`; `spread = 4` gives roughly `m = 4n`.
pub fn banded_representation(n: usize, spread: u64, seed: u64) -> TriangleRepresentation {
    let mut rng = Xorshift64Star::new(seed);
    let unit = 1000i64;
    let span = (unit as u64 * spread).max(1);
    let triangles = (0..n as i64)
        .map(|v| {
            let centre = unit * v;
            let lo = rng.below(span) as i64;
            let hi = rng.below(span) as i64;
            let jitter = rng.below(2 * span) as i64 - span as i64;
            Triangle::integer(centre + jitter, centre - lo, centre + hi)
        })
        .collect();
    TriangleRepresentation { triangles }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(p: i64, l: i64, r: i64) -> Triangle {
        Triangle::integer(p, l, r)
    }

    #[test]
    fn intersection_examples() {
        assert!(!tri(1, 0, 2).intersects(&tri(5, 3, 4)));
        assert!(tri(5, 0, 2).intersects(&tri(1, 3, 4)));
        assert!(tri(0, 0, 10).intersects(&tri(5, 2, 3)));
        // touching bases count as intersecting
        assert!(tri(0, 0, 2).intersects(&tri(5, 2, 3)));
    }

    #[test]
    fn invalid_base_is_rejected() {
        let c = Coord::from_integer;
        assert!(Triangle::new(c(0), c(3), c(1)).is_err());
    }

    #[test]
    fn random_representation_contract() {
        assert!(random_representation(0, 3).is_empty());
        let one = random_representation(1, 3);
        assert_eq!(representation_to_graph(&one), Graph::empty(1));
        assert_eq!(random_representation(50, 11), random_representation(50, 11));
        let rep = random_representation(30, 5);
        let mut apexes: Vec<_> = rep.triangles.iter().map(|t| *t.apex.numer()).collect();
        apexes.sort();
        assert_eq!(apexes, (1..=30).collect::<Vec<_>>());
        let mut ends: Vec<_> = rep
            .triangles
            .iter()
            .flat_map(|t| [*t.left.numer(), *t.right.numer()])
            .collect();
        ends.sort();
        ends.dedup();
        assert_eq!(ends.len(), 60);
        assert!(ends.iter().all(|&e| (0..=60).contains(&e)));
        assert!(rep.triangles.iter().all(|t| t.left < t.right));
    }

    #[test]
    fn banded_density() {
        let g = representation_to_graph(&banded_representation(2000, 4, 1));
        let ratio = g.m() as f64 / g.n() as f64;
        assert!((3.0..5.0).contains(&ratio), "m/n = {ratio}");
    }
}
