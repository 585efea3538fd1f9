use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;

/// 0/1 labeling of the k-fold cube [n]^k, indexed by full tuples. Used by the
/// indexing gadget, where each cube point picks one vertex per matrix row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeBits {
    n: u32,
    k: usize,
    bits: Vec<bool>,
}

impl CubeBits {
    pub fn zeros(n: u32, k: usize) -> Self {
        let size = (n as u64)
            .checked_pow(k as u32)
            .and_then(|s| usize::try_from(s).ok())
            .expect("cube too large");
        Self {
            n,
            k,
            bits: vec![false; size],
        }
    }

    pub fn random(n: u32, k: usize, density: f64, rng: &mut impl Rng) -> Self {
        let mut out = Self::zeros(n, k);
        for b in &mut out.bits {
            *b = rng.gen_bool(density);
        }
        out
    }

    pub fn set(&mut self, tuple: &[u32], value: bool) {
        let idx = self.offset(tuple);
        self.bits[idx] = value;
    }

    pub fn get(&self, tuple: &[u32]) -> bool {
        self.bits[self.offset(tuple)]
    }

    pub fn ones(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, &b)| {
            b.then(|| self.tuple_at(i))
        })
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn side(&self) -> u32 {
        self.n
    }

    pub fn dims(&self) -> usize {
        self.k
    }

    fn offset(&self, tuple: &[u32]) -> usize {
        assert_eq!(tuple.len(), self.k, "tuple length must be k");
        let mut idx = 0usize;
        for &t in tuple {
            assert!(t >= 1 && t <= self.n, "coordinate {t} outside [1, {}]", self.n);
            idx = idx * self.n as usize + (t as usize - 1);
        }
        idx
    }

    fn tuple_at(&self, mut idx: usize) -> Vec<u32> {
        let mut tuple = vec![0u32; self.k];
        for slot in tuple.iter_mut().rev() {
            *slot = (idx % self.n as usize) as u32 + 1;
            idx /= self.n as usize;
        }
        tuple
    }
}

/// 0/1 labeling of [n] x C([n], k-1): a head index plus a canonical
/// strictly-increasing tail. This is the data domain of the three-block
/// gadget; full cube tuples would not map injectively onto edges because a
/// tail with repeats is not a k-set and permuted tails collapse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NkBits {
    ones: BTreeSet<(u32, Vec<u32>)>,
}

impl NkBits {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Bernoulli(density) on every slot of the domain.
    pub fn random(n: u32, k: usize, density: f64, rng: &mut impl Rng) -> Self {
        let mut ones = BTreeSet::new();
        for head in 1..=n {
            for tail in (1..=n).combinations(k - 1) {
                if rng.gen_bool(density) {
                    ones.insert((head, tail.clone()));
                }
            }
        }
        Self { ones }
    }

    pub fn insert(&mut self, head: u32, tail: Vec<u32>) {
        assert!(
            tail.windows(2).all(|w| w[0] < w[1]),
            "tail must be strictly increasing"
        );
        self.ones.insert((head, tail));
    }

    pub fn ones(&self) -> impl Iterator<Item = &(u32, Vec<u32>)> {
        self.ones.iter()
    }

    pub fn intersection_size(&self, other: &Self) -> u64 {
        self.ones.intersection(&other.ones).count() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }
}
