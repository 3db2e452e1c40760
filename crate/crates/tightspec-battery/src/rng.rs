//! The battery's pseudorandom stream: xorshift64* with the shift triple
//! (12, 25, 27) and multiplier `0x2545F4914F6CDD1D`. The algorithm is part
//! of the battery's contract so that corpora are identical across
//! platforms and reimplementations; a seed of zero is replaced by the
//! fixed constant `0x9E3779B97F4A7C15`.

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        XorShift64Star { state: if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform-enough draw below `n` by modulo (documented; bias is
    /// irrelevant at these ranges and determinism is the contract).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    /// A derived stream for a named sub-task, so per-check sampling stays
    /// reproducible from `(seed, name)` alone.
    pub fn child(&self, name: &str) -> XorShift64Star {
        let mut h = 0xcbf2_9ce4_8422_2325u64; // FNV-1a
        for b in name.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01B3);
        }
        XorShift64Star::new(self.state ^ h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = XorShift64Star::new(1);
        let mut b = XorShift64Star::new(1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        // zero seed maps to the documented constant
        let mut z = XorShift64Star::new(0);
        assert_ne!(z.next_u64(), 0);
    }

    #[test]
    fn pinned_first_draws() {
        // freeze the stream contract: these values must never change
        let mut r = XorShift64Star::new(1);
        assert_eq!(r.next_u64(), 0x47e4_ce4b_896c_dd1d);
        assert_eq!(r.next_u64(), 0xabcf_a6a8_e079_651d);
        let mut r = XorShift64Star::new(42);
        assert_eq!(r.next_u64(), 0x56ce_4ab7_719b_a3a0);
    }
}
