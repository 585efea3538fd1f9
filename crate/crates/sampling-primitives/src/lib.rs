//! Randomness building blocks for the streaming estimators: deterministic
//! seed derivation, single-slot reservoir sampling, d-wise independent
//! hashing over a Mersenne-prime field, keyed Bernoulli membership tests,
//! min-hash sampling of distinct items, and distinct-count estimation.
//!
//! Everything here is replayable: given the same master seed and stream
//! labels, every draw repeats exactly, which is what lets multi-pass
//! algorithms make identical decisions in each pass.

mod distinct;
mod encode;
mod f0;
mod hashing;
mod reservoir;
mod rng;

pub use distinct::DistinctSampler;
pub use encode::{encode_sorted_tuple, tuple_domain};
pub use f0::{F0Estimator, F0Mode};
pub use hashing::{keyed_hash64, BernoulliHash, KwiseHashFamily, HASH_PRIME};
pub use reservoir::ReservoirSampler;
pub use rng::SeededRng;
