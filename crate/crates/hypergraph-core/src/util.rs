//! Small combinatorial helpers shared across crates.

/// Binomial coefficient, exact. Panics on u64 overflow, which is far beyond
/// any instance size handled here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}
