//! Exact 64-bit integer arithmetic: modular helpers, primality, factorization
//! and the classical arithmetic functions built on a canonical factorization.

use crate::error::{domain, Result};
use crate::primes::{trial_primes, TRIAL_DIVISION_LIMIT};

/// Largest argument accepted by the pointwise operations.
pub const MAX_N: u64 = i64::MAX as u64;

pub(crate) fn check_domain(n: u64) -> Result<()> {
    if n == 0 {
        return domain("n must be positive");
    }
    if n > MAX_N {
        return domain(format!("n = {n} exceeds the supported bound 2^63 - 1"));
    }
    Ok(())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; replay one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted every increment")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Canonical factorization `n = p_1^e_1 ... p_r^e_r` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking the invariants.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.sort_unstable();
        let mut n: u64 = 1;
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return domain(format!("prime {} listed twice", w[0].0));
            }
        }
        for &(p, e) in &factors {
            if e == 0 || !is_prime(p) {
                return domain(format!("invalid factor {p}^{e}"));
            }
            let pe = p
                .checked_pow(e)
                .and_then(|pe| n.checked_mul(pe))
                .filter(|&m| m <= MAX_N);
            match pe {
                Some(m) => n = m,
                None => return domain("product exceeds the supported bound"),
            }
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes, `omega(n)`.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// The prime powers `p_i^e_i`, ascending by prime.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, e)| p.pow(e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| phi_prime_power(p, e))
            .product()
    }

    /// `rho(n)`, the product of `phi(p^e) + 1` over the prime powers.
    pub fn rho(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| phi_prime_power(p, e) + 1)
            .product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Unitary divisors `d || n`: products over subsets of the prime powers, ascending.
    pub fn unitary_divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for q in self.prime_powers() {
            let len = out.len();
            for i in 0..len {
                out.push(out[i] * q);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn summary(&self) -> ArithmeticSummary {
        let mut mobius = 1i8;
        let mut tau = 1u64;
        let mut sigma = 1u128;
        for &(p, e) in &self.factors {
            mobius = if e > 1 { 0 } else { -mobius };
            tau *= e as u64 + 1;
            let mut s = 1u128;
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p as u128;
                s += pk;
            }
            sigma *= s;
        }
        ArithmeticSummary {
            mobius,
            tau,
            sigma,
            omega: self.omega(),
        }
    }
}

/// `phi(p^e) = p^e - p^(e-1)`, with `phi(p^0) = 1`.
pub(crate) fn phi_prime_power(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        let lower = p.pow(e - 1);
        lower * p - lower
    }
}

/// Factors `n` into its canonical form.
///
/// Trial division by the primes below 10^6, then Miller-Rabin and Pollard rho
/// on whatever cofactor remains.
///
/// ```
/// let f = regint::factor(100).unwrap();
/// assert_eq!(f.factors(), &[(2, 2), (5, 2)]);
/// assert!(regint::factor(1).unwrap().factors().is_empty());
/// ```
pub fn factor(n: u64) -> Result<PrimeFactorization> {
    check_domain(n)?;
    let mut factors = Vec::new();
    let mut m = n;
    for &p in trial_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if m > 1 {
        if m < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT {
            factors.push((m, 1));
        } else {
            let mut big = Vec::new();
            split_into(m, &mut big);
            big.sort_unstable();
            for p in big {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Ok(PrimeFactorization { n, factors })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factor(n)?.euler_phi())
}

/// Unitary divisors of `n`, ascending.
///
/// ```
/// assert_eq!(regint::unitary_divisors(12).unwrap(), vec![1, 3, 4, 12]);
/// ```
pub fn unitary_divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factor(n)?.unitary_divisors())
}

/// Mobius, divisor count, divisor sum and number of distinct prime factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticSummary {
    pub mobius: i8,
    pub tau: u64,
    pub sigma: u128,
    pub omega: u32,
}

pub fn aux_functions(n: u64) -> Result<ArithmeticSummary> {
    Ok(factor(n)?.summary())
}

/// Multiplicative order of `a` modulo the prime power `p^e`; requires `gcd(a, p) = 1`.
pub(crate) fn order_mod_prime_power(a: u64, p: u64, e: u32) -> u64 {
    let m = p.pow(e);
    let mut t = phi_prime_power(p, e);
    if m <= 2 {
        return 1;
    }
    // phi(p^e) is below 2^63, so factoring it cannot fail
    let ft = factor(t).expect("phi of a prime power is in range");
    for &(q, _) in ft.factors() {
        while t % q == 0 && pow_mod(a, t / q, m) == 1 {
            t /= q;
        }
    }
    t
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn divisors_naive(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    #[test]
    fn factor_examples() {
        assert!(factor(1).unwrap().factors().is_empty());
        assert_eq!(factor(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(100).unwrap().factors(), &[(2, 2), (5, 2)]);
    }

    #[test]
    fn factor_domain() {
        assert!(factor(0).is_err());
        assert!(factor(MAX_N + 1).is_err());
        assert!(factor(MAX_N).is_ok());
    }

    #[test]
    fn factor_large_inputs() {
        // 2^63 - 1 = 7^2 * 73 * 127 * 337 * 92737 * 649657
        let f = factor(MAX_N).unwrap();
        assert_eq!(
            f.factors(),
            &[(7, 2), (73, 1), (127, 1), (337, 1), (92737, 1), (649657, 1)]
        );
        // product of two primes above the trial-division range
        let (p, q) = (1_000_003u64, 2_147_483_659u64);
        assert_eq!(factor(p * q).unwrap().factors(), &[(p, 1), (q, 1)]);
        let big_prime = 9_223_372_036_854_775_783u64;
        assert!(is_prime(big_prime));
        assert_eq!(factor(big_prime).unwrap().factors(), &[(big_prime, 1)]);
        let sq = 3_037_000_493u64; // prime, square just below 2^63
        assert!(is_prime(sq));
        assert_eq!(factor(sq * sq).unwrap().factors(), &[(sq, 2)]);
    }

    #[test]
    fn miller_rabin_against_trial_division() {
        for n in 0..20_000u64 {
            let naive = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        // strong pseudoprimes to several small bases
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(30).unwrap(), 8);
    }

    #[test]
    fn unitary_divisor_examples() {
        assert_eq!(unitary_divisors(1).unwrap(), vec![1]);
        assert_eq!(unitary_divisors(97).unwrap(), vec![1, 97]);
        assert_eq!(unitary_divisors(12).unwrap(), vec![1, 3, 4, 12]);
    }

    #[test]
    fn unitary_divisors_match_filtered_divisors() {
        for n in 1..=2000u64 {
            let expected: Vec<u64> = divisors_naive(n)
                .into_iter()
                .filter(|&d| gcd(d, n / d) == 1)
                .collect();
            let got = unitary_divisors(n).unwrap();
            assert_eq!(got, expected, "n = {n}");
            assert_eq!(got.len(), 1 << factor(n).unwrap().omega());
        }
    }

    #[test]
    fn aux_examples() {
        let s = aux_functions(1).unwrap();
        assert_eq!((s.mobius, s.tau, s.sigma, s.omega), (1, 1, 1, 0));
        let s = aux_functions(12).unwrap();
        assert_eq!((s.mobius, s.tau, s.sigma, s.omega), (0, 6, 28, 2));
        let s = aux_functions(30).unwrap();
        assert_eq!((s.mobius, s.tau, s.sigma, s.omega), (-1, 8, 72, 3));
    }

    #[test]
    fn aux_against_enumeration() {
        for n in 1..=1000u64 {
            let ds = divisors_naive(n);
            let s = aux_functions(n).unwrap();
            assert_eq!(s.tau, ds.len() as u64);
            assert_eq!(s.sigma, ds.iter().map(|&d| d as u128).sum::<u128>());
            assert_eq!(factor(n).unwrap().divisors(), ds);
        }
    }

    #[test]
    fn phi_divisor_sum_identity() {
        for n in 1..=10_000u64 {
            let f = factor(n).unwrap();
            let total: u64 = f.divisors().iter().map(|&d| euler_phi(d).unwrap()).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn order_matches_search() {
        for (p, e) in [
            (2u64, 1u32),
            (2, 3),
            (2, 5),
            (3, 2),
            (5, 3),
            (7, 1),
            (11, 2),
        ] {
            let m = p.pow(e);
            for a in 1..m {
                if a % p == 0 {
                    continue;
                }
                let brute = (1..=m).find(|&k| pow_mod(a, k, m) == 1).unwrap();
                assert_eq!(order_mod_prime_power(a, p, e), brute, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn from_factors_checks_invariants() {
        assert!(PrimeFactorization::from_factors(vec![(4, 1)]).is_err());
        assert!(PrimeFactorization::from_factors(vec![(2, 0)]).is_err());
        assert!(PrimeFactorization::from_factors(vec![(2, 1), (2, 2)]).is_err());
        assert!(PrimeFactorization::from_factors(vec![(2, 64)]).is_err());
        let f = PrimeFactorization::from_factors(vec![(3, 1), (2, 2)]).unwrap();
        assert_eq!(f, factor(12).unwrap());
    }

    proptest! {
        #[test]
        fn factorization_invariants(n in 1u64..=MAX_N) {
            let f = factor(n).unwrap();
            let mut prod = 1u64;
            for w in f.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for &(p, e) in f.factors() {
                prop_assert!(e >= 1);
                prop_assert!(is_prime(p));
                prod *= p.pow(e);
            }
            prop_assert_eq!(prod, n);
            prop_assert_eq!(f.factors().is_empty(), n == 1);
        }

        #[test]
        fn unitary_divisors_of_coprime_product(m in 1u64..5000, n in 1u64..5000) {
            prop_assume!(gcd(m, n) == 1);
            let mut products: Vec<u64> = unitary_divisors(m).unwrap().iter()
                .flat_map(|&a| unitary_divisors(n).unwrap().into_iter().map(move |b| a * b))
                .collect();
            products.sort_unstable();
            prop_assert_eq!(unitary_divisors(m * n).unwrap(), products);
        }
    }
}
