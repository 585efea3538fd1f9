/// Packs a strictly increasing tuple with entries in `[1, radix]` into one
/// integer by positional encoding (entry x becomes digit x-1). Injective over
/// all such tuples of a fixed length, with image inside `[0, radix^len)`, so
/// the code can feed a hash family whose domain is `tuple_domain(radix, len)`.
pub fn encode_sorted_tuple(tuple: &[u64], radix: u64) -> u64 {
    assert!(!tuple.is_empty(), "cannot encode an empty tuple");
    let mut code: u64 = 0;
    let mut prev = 0;
    for &x in tuple {
        assert!(x >= 1 && x <= radix, "entry {x} outside [1, {radix}]");
        assert!(x > prev, "tuple must be strictly increasing");
        prev = x;
        code = code
            .checked_mul(radix)
            .and_then(|c| c.checked_add(x - 1))
            .expect("tuple code overflows u64");
    }
    code
}

/// Size of the code space `encode_sorted_tuple` maps into.
pub fn tuple_domain(radix: u64, len: usize) -> u64 {
    radix
        .checked_pow(len as u32)
        .expect("tuple domain overflows u64")
}
