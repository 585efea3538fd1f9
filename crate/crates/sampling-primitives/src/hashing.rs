use rand::Rng;

/// 2^61 - 1, the largest Mersenne prime that fits a machine word. All
/// polynomial hashing works over this field.
pub const HASH_PRIME: u64 = (1 << 61) - 1;

/// Reduces a value below 2^123 modulo `HASH_PRIME` with two shift-folds.
fn reduce(x: u128) -> u64 {
    let p = HASH_PRIME as u128;
    let folded = (x & p) + (x >> 61);
    let folded = (folded & p) + (folded >> 61);
    let r = folded as u64;
    if r >= HASH_PRIME {
        r - HASH_PRIME
    } else {
        r
    }
}

/// Strong 64-bit mixer of (key, item). Used for min-hash priorities and
/// Bernoulli membership; not algebraic, so independence is empirical.
pub fn keyed_hash64(key: u64, item: u64) -> u64 {
    let mut z = key ^ item.wrapping_mul(0xd6e8_feb8_6659_fd93);
    z = (z ^ (z >> 32)).wrapping_mul(0xd6e8_feb8_6659_fd93);
    z = (z ^ (z >> 32)).wrapping_mul(0xd6e8_feb8_6659_fd93);
    z ^ (z >> 32)
}

/// Degree-(d-1) polynomial over the `HASH_PRIME` field, folded into `[1, N]`.
/// Evaluations at any d distinct keys are uniform and independent over the
/// field; taking the result mod N adds a truncation bias of at most N / 2^61,
/// which we document rather than correct.
#[derive(Clone, Debug)]
pub struct KwiseHashFamily {
    coeffs: Vec<u64>,
    domain_size: u64,
    range_size: u64,
}

impl KwiseHashFamily {
    pub fn draw(d: usize, domain_size: u64, range_size: u64, rng: &mut impl Rng) -> Self {
        assert!(d >= 1, "independence degree must be positive");
        assert!(
            domain_size >= 1 && domain_size <= HASH_PRIME,
            "domain must fit the hash field"
        );
        assert!(range_size >= 1, "need at least one color");
        let coeffs = (0..d).map(|_| rng.gen_range(0..HASH_PRIME)).collect();
        Self {
            coeffs,
            domain_size,
            range_size,
        }
    }

    /// Color of `key`, in `[1, N]`.
    pub fn color(&self, key: u64) -> u64 {
        assert!(key < self.domain_size, "key {key} outside hash domain");
        let mut acc: u64 = 0;
        for &c in &self.coeffs {
            acc = reduce(acc as u128 * key as u128 + c as u128);
        }
        acc % self.range_size + 1
    }

    pub fn range_size(&self) -> u64 {
        self.range_size
    }

    pub fn independence(&self) -> usize {
        self.coeffs.len()
    }

    /// Words of state to charge: the coefficient vector.
    pub fn space_words(&self) -> u64 {
        self.coeffs.len() as u64
    }
}

/// Keyed membership test that holds with an exact dyadic probability. The
/// threshold lives in u128 so that p = 1 is representable (2^64 itself) and
/// `prob` is the exact acceptance rate, which estimators divide by.
#[derive(Clone, Copy, Debug)]
pub struct BernoulliHash {
    key: u64,
    threshold: u128,
}

impl BernoulliHash {
    const ONE: u128 = 1 << 64;

    pub fn new(key: u64, p: f64) -> Self {
        assert!(p.is_finite() && p >= 0.0, "probability must be nonnegative");
        let threshold = if p >= 1.0 {
            Self::ONE
        } else {
            (p * Self::ONE as f64).round() as u128
        };
        Self { key, threshold }
    }

    pub fn contains(&self, item: u64) -> bool {
        (keyed_hash64(self.key, item) as u128) < self.threshold
    }

    /// Exact acceptance probability, threshold / 2^64.
    pub fn prob(&self) -> f64 {
        self.threshold as f64 / Self::ONE as f64
    }

    pub fn is_certain(&self) -> bool {
        self.threshold == Self::ONE
    }
}
