use rand::Rng;

/// Single-slot uniform sample over a stream of unknown length: after t
/// observations each one is the retained item with probability exactly 1/t.
#[derive(Clone, Debug, Default)]
pub struct ReservoirSampler<T> {
    current: Option<T>,
    seen: u64,
}

impl<T> ReservoirSampler<T> {
    pub fn new() -> Self {
        Self {
            current: None,
            seen: 0,
        }
    }

    pub fn observe(&mut self, item: T, rng: &mut impl Rng) {
        self.seen += 1;
        if rng.gen_range(0..self.seen) == 0 {
            self.current = Some(item);
        }
    }

    pub fn sample(&self) -> Option<&T> {
        self.current.as_ref()
    }

    pub fn into_sample(self) -> Option<T> {
        self.current
    }

    pub fn seen(&self) -> u64 {
        self.seen
    }
}
