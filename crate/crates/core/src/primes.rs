//! Prime lists shared by factorization, Euler products and the extremal sequences.

use std::sync::OnceLock;

/// Trial-division primes used by [`crate::factor`].
pub(crate) const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// All primes `p <= limit`, ascending.
///
/// ```
/// assert_eq!(regint::primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
/// ```
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // odd-only sieve: index i stands for 2i + 1
    let half = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(estimate_prime_count(limit));
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    out
}

fn estimate_prime_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.26 * x / x.ln().max(1.0)) as usize + 16
}

pub(crate) fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_LIMIT))
}
