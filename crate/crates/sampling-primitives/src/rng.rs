use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const KEY_TAG: u64 = 0x6b65_795f_7461_675f;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Label-addressed seed tree. Each logical consumer of randomness (a trial, a
/// copy, a pass, one sampler slot) gets its own stream id, so a run is fully
/// reproducible from the master seed alone and siblings stay decorrelated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(master_seed: u64) -> Self {
        let mut s = master_seed;
        // Scramble once so nearby master seeds do not produce sibling trees.
        Self {
            state: splitmix64(&mut s),
        }
    }

    /// Child stream labeled `stream_id`. Derivation is pure: the same path of
    /// labels from the same master always lands on the same generator.
    #[must_use]
    pub fn derive(&self, stream_id: u64) -> Self {
        let mut s = self.state ^ stream_id.wrapping_mul(GOLDEN | 1);
        Self {
            state: splitmix64(&mut s),
        }
    }

    /// Materialize this node of the tree as a full generator.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut s = self.state;
        let mut seed = [0u8; 32];
        for chunk in seed.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
        }
        ChaCha12Rng::from_seed(seed)
    }

    /// One 64-bit key, for keyed hashing where a full generator is overkill.
    /// Decoupled from `rng` so drawing both from one node stays independent.
    pub fn key(&self) -> u64 {
        let mut s = self.state ^ KEY_TAG;
        splitmix64(&mut s)
    }
}
