use crate::hashing::keyed_hash64;

/// Min-hash sampler over the distinct items of an insert-only stream. The
/// retained item is a pure function of the key and the distinct-item set, so
/// duplicate arrivals cannot shift the outcome; across fresh keys the sample
/// is near-uniform over the distinct items. Ties on priority go to the
/// smaller item.
#[derive(Clone, Copy, Debug)]
pub struct DistinctSampler {
    key: u64,
    best: Option<(u64, u64)>,
}

impl DistinctSampler {
    pub fn new(key: u64) -> Self {
        Self { key, best: None }
    }

    pub fn observe(&mut self, item: u64) {
        let candidate = (keyed_hash64(self.key, item), item);
        if self.best.map_or(true, |b| candidate < b) {
            self.best = Some(candidate);
        }
    }

    pub fn sample(&self) -> Option<u64> {
        self.best.map(|(_, item)| item)
    }
}
