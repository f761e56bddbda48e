//! Prime generation by the sieve of Eratosthenes.

use std::sync::OnceLock;

/// Upper bound of the cached sieve used by the prime-pair sums.
pub const CACHED_BOUND: u32 = 1_000_000;

/// All primes `p ≤ limit` in increasing order.
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut i = 2;
    while i * i <= limit {
        if !composite[i] {
            for j in (i * i..=limit).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..=limit)
        .filter(|&k| !composite[k])
        .map(|k| k as u32)
        .collect()
}

pub fn odd_primes_up_to(limit: u32) -> Vec<u32> {
    if limit <= CACHED_BOUND {
        let all = cached();
        let end = all.partition_point(|&p| p <= limit);
        all[1..end].to_vec()
    } else {
        primes_up_to(limit).into_iter().skip(1).collect()
    }
}

/// Primes below [`CACHED_BOUND`], sieved once per process.
pub fn cached() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(CACHED_BOUND))
}

pub fn is_odd_prime(n: u32) -> bool {
    n > 2 && n % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
