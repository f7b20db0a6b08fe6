//! The generator behind every seeded instance.
//!
//! Reproducing instances in another language needs exactly this:
//!
//! * seeding: `state = splitmix64(seed)`, replaced by `0x9E3779B97F4A7C15`
//!   if that is zero, where `splitmix64(z)` adds `0x9E3779B97F4A7C15`, then
//!   applies `z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9`,
//!   `z = (z ^ z >> 27) * 0x94D049BB133111EB`, `z ^ z >> 31` (wrapping);
//! * `next`: xorshift64* with shifts 12, 25, 27 and output multiplier
//!   `0x2545F4914F6CDD1D`;
//! * `below(k)`: the high 64 bits of the 128-bit product `next() * k`;
//! * `shuffle`: Fisher-Yates from the back, `j = below(i + 1)` for
//!   `i = len-1 down to 1`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct Xorshift64Star {
    state: u64,
}

impl Xorshift64Star {
    pub fn new(seed: u64) -> Self {
        let s = splitmix64(seed);
        Xorshift64Star {
            state: if s == 0 { GOLDEN } else { s },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform-ish value in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0);
        ((self.next_u64() as u128 * k as u128) >> 64) as u64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// A uniformly shuffled `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}
