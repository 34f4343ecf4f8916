//! Counter-based seeded randomness.
//!
//! Every random draw in the pipeline is a pure function of a `u64` seed and a
//! stable identifier (a stage name, a document id, a vote counter). Nothing
//! depends on evaluation order, which makes selection and judging
//! deterministic under any parallel schedule and resumable across runs.

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer; bijective on `u64`.
#[inline]
pub fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combine two words into one well-mixed word.
#[inline]
pub fn combine(a: u64, b: u64) -> u64 {
    mix64(a ^ mix64(b))
}

/// FNV-1a over the raw bytes, finalized with [`mix64`].
pub fn hash_bytes(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix64(h)
}

#[inline]
pub fn hash_str(s: &str) -> u64 {
    hash_bytes(s.as_bytes())
}

/// Named sub-seed, e.g. `derive_seed(seed, "judge")` for the judging stage.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    combine(seed, hash_str(tag))
}

/// Map 64 random bits to the open interval (0, 1).
#[inline]
pub fn unit_open(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Standard Gumbel(0, 1) draw from 64 random bits.
#[inline]
pub fn gumbel_from_bits(bits: u64) -> f64 {
    -(-unit_open(bits).ln()).ln()
}

/// The standard Gumbel draw for a document: depends only on (seed, id).
pub fn gumbel_noise(seed: u64, id: &str) -> f64 {
    gumbel_from_bits(combine(seed, hash_str(id)))
}

/// Uniform draw in (0, 1) keyed by (seed, id).
pub fn unit_noise(seed: u64, id: &str) -> f64 {
    unit_open(combine(seed, hash_str(id)))
}

/// Sequential splitmix64 stream, for the few places that need more than one
/// draw per key (snippet windows, shuffles).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in (0, 1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        unit_open(self.next_u64())
    }

    /// Uniform integer in `[0, n)` via rejection sampling (no modulo bias).
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform integer in the inclusive range `[lo, hi]`.
    pub fn next_in_range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_below(hi - lo + 1)
    }
}

/// Seeded Fisher-Yates shuffle.
pub fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut rng = SplitMix64::new(seed);
    for i in (1..items.len()).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_is_deterministic_and_spreads() {
        assert_eq!(mix64(42), mix64(42));
        assert_ne!(mix64(42), mix64(43));
        assert_ne!(combine(1, 2), combine(2, 1));
    }

    #[test]
    fn unit_open_stays_in_open_interval() {
        for bits in [0u64, 1, u64::MAX, u64::MAX / 2, 0xdead_beef] {
            let u = unit_open(bits);
            assert!(u > 0.0 && u < 1.0, "u = {u}");
        }
    }

    #[test]
    fn gumbel_noise_depends_only_on_seed_and_id() {
        assert_eq!(gumbel_noise(7, "doc-1").to_bits(), gumbel_noise(7, "doc-1").to_bits());
        assert_ne!(gumbel_noise(7, "doc-1"), gumbel_noise(8, "doc-1"));
        assert_ne!(gumbel_noise(7, "doc-1"), gumbel_noise(7, "doc-2"));
    }

    #[test]
    fn gumbel_mean_matches_euler_mascheroni() {
        let n = 200_000u64;
        let mean = (0..n).map(|i| gumbel_from_bits(mix64(i))).sum::<f64>() / n as f64;
        assert!((mean - 0.5772).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn next_below_is_unbiased_at_boundaries() {
        let mut rng = SplitMix64::new(3);
        let mut counts = [0u32; 3];
        for _ in 0..30_000 {
            counts[rng.next_below(3) as usize] += 1;
        }
        for c in counts {
            assert!((f64::from(c) / 10_000.0 - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn shuffle_is_seed_stable() {
        let mut a: Vec<u32> = (0..50).collect();
        let mut b: Vec<u32> = (0..50).collect();
        shuffle(&mut a, 9);
        shuffle(&mut b, 9);
        assert_eq!(a, b);
        let mut c: Vec<u32> = (0..50).collect();
        shuffle(&mut c, 10);
        assert_ne!(a, c);
    }
}
