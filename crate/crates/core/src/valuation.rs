//! k-adic valuations and powers.

/// The k-adic valuation of `v`: the largest `e` with `k^e | v`.
///
/// Panics if `k < 2` or `v == 0`.
pub fn nu(k: u64, v: u64) -> u32 {
    assert!(k >= 2, "valuation base must be at least 2, got {k}");
    assert!(v >= 1, "valuation is undefined at 0");
    let mut v = v;
    let mut e = 0;
    while v.is_multiple_of(k) {
        v /= k;
        e += 1;
    }
    e
}

/// Whether `v` is `k^e` for some `e >= 0`.
pub fn is_power_of(k: u64, v: u64) -> bool {
    if v == 0 {
        return false;
    }
    let mut v = v;
    while v.is_multiple_of(k) {
        v /= k;
    }
    v == 1
}
