//! Counter-based pseudo-random stream for reproducible sweeps.
//!
//! Each sample index gets its own SplitMix64 stream keyed by
//! `(seed, index)`, so a sweep can be resumed, reordered, or sharded
//! without changing any drawn value. SplitMix64 is used instead of an
//! external generator because the sweep reports must stay byte-identical
//! forever; a hand-rolled 20-line generator cannot change under us.

/// SplitMix64 step: advances the state and returns the next value.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic stream of f64/u64 values for one sample of a sweep.
#[derive(Debug, Clone)]
pub struct SampleStream {
    state: u64,
}

impl SampleStream {
    /// Stream keyed by `(seed, index)`; distinct keys give independent
    /// streams, identical keys give identical streams.
    pub fn new(seed: u64, index: u64) -> Self {
        // Mix the pair once so that (seed, index) and (seed+1, index-1)
        // do not collide.
        let mut s = seed ^ 0x6A09_E667_F3BC_C909;
        let mixed = splitmix64(&mut s) ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut t = mixed;
        splitmix64(&mut t);
        SampleStream { state: t }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state)
    }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Log-uniform in [lo, hi], lo > 0.
    pub fn next_log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = self.next_f64();
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    }

    /// Uniform in [lo, hi].
    pub fn next_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_f64() * (hi - lo)
    }

    /// Uniform choice from a slice.
    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        let i = (self.next_u64() % items.len() as u64) as usize;
        &items[i]
    }
}
