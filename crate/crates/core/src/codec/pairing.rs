//! Cantor pairing of ℕ² with ℕ.

/// `pair(k, j) = (k + j)(k + j + 1)/2 + j`.
pub fn pair(k: u64, j: u64) -> u64 {
    let s = k + j;
    s * (s + 1) / 2 + j
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn unpair(n: u64) -> (u64, u64) {
    let w = (isqrt(8 * n + 1) - 1) / 2;
    let j = n - w * (w + 1) / 2;
    (w - j, j)
}
