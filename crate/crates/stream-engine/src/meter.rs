/// Accounts streaming-legal storage in machine words, independently of what
/// the harness itself holds in memory. Conventions: a stored hyperedge
/// charges its arity in words, a stored vertex or counter charges one word;
/// container overhead (hash buckets, indices over charged data) is not
/// charged. Passes count rewind-and-scan cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpaceMeter {
    current: u64,
    peak: u64,
    passes: u64,
}

impl SpaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, words: u64) {
        self.current += words;
        self.peak = self.peak.max(self.current);
    }

    pub fn release(&mut self, words: u64) {
        assert!(
            words <= self.current,
            "releasing {words} words with only {} charged",
            self.current
        );
        self.current -= words;
    }

    pub fn begin_pass(&mut self) {
        self.passes += 1;
    }

    pub fn current_words(&self) -> u64 {
        self.current
    }

    pub fn peak_words(&self) -> u64 {
        self.peak
    }

    pub fn passes_used(&self) -> u64 {
        self.passes
    }

    /// Folds another meter into this one: space peaks add (the trials hold
    /// their state concurrently), pass counts take the maximum (they scan the
    /// same stream side by side).
    pub fn absorb_concurrent(&mut self, other: &SpaceMeter) {
        self.current += other.current;
        self.peak += other.peak;
        self.passes = self.passes.max(other.passes);
    }
}
