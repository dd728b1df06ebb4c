//! Extremal orders of `rho(n)` and `rho(n)/phi(n)` along primorial-type
//! sequences.
//!
//! The integers involved overflow immediately, so every sample is carried as
//! `log n` plus a product of per-prime ratio factors accumulated in log space.

use crate::asymptotics::EULER_GAMMA;
use crate::error::{domain, Result};
use crate::primes::primes_up_to;
use crate::sieve::ArithmeticTable;
use crate::summation::CompensatedSum;

/// Largest prime bound accepted for a sequence.
pub const MAX_PRIME_BOUND: u64 = 10_000_000;

/// How the exponent of each prime `p <= y` is chosen in the minimal-order sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentRule {
    /// `n = prod_{p <= y} p^3`.
    Cubed,
    /// Each `p <= y` raised to the least power with `p^e >= y^2`.
    PowerAboveSquare,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSample {
    pub y: u64,
    pub n_description: String,
    pub log_n: f64,
    pub ratio: f64,
    /// The limit the normalized quantity tends to along extremal sequences.
    pub limit: f64,
    /// `ratio - limit`.
    pub deviation: f64,
}

fn check_ladder(y_values: &[u64]) -> Result<Vec<u64>> {
    if y_values.is_empty() {
        return domain("at least one prime bound is required");
    }
    if y_values[0] < 3 {
        return domain("prime bounds must be at least 3");
    }
    if y_values.windows(2).any(|w| w[0] >= w[1]) {
        return domain("prime bounds must be strictly ascending");
    }
    let top = *y_values.last().unwrap();
    if top > MAX_PRIME_BOUND {
        return domain(format!("prime bound {top} exceeds {MAX_PRIME_BOUND}"));
    }
    Ok(primes_up_to(top))
}

fn distinct_prime_sets(primes: &[u64], y_values: &[u64]) -> Result<()> {
    for w in y_values.windows(2) {
        let lo = primes.partition_point(|&p| p <= w[0]);
        let hi = primes.partition_point(|&p| p <= w[1]);
        if lo == hi {
            return domain(format!(
                "no prime in ({}, {}]: both bounds give the same n",
                w[0], w[1]
            ));
        }
    }
    Ok(())
}

fn exponent_for(p: u64, y: u64, rule: ExponentRule) -> u32 {
    match rule {
        ExponentRule::Cubed => 3,
        ExponentRule::PowerAboveSquare => {
            let target = y as u128 * y as u128;
            let mut e = 1;
            let mut pw = p as u128;
            while pw < target {
                pw *= p as u128;
                e += 1;
            }
            e
        }
    }
}

/// Samples of `rho(n) log log n / n`, which has liminf `e^-gamma`.
///
/// Uses [`ExponentRule::Cubed`]. Along cubed primorials the ratio decreases
/// but settles at `e^-gamma prod_p (1 + 1/(p^2 (p - 1)))`, see
/// [`cubed_primorial_limit`].
pub fn minimal_order_sequence(y_values: &[u64]) -> Result<Vec<ExtremalSample>> {
    minimal_order_sequence_with(y_values, ExponentRule::Cubed)
}

/// Like [`minimal_order_sequence`] with an explicit exponent rule.
pub fn minimal_order_sequence_with(
    y_values: &[u64],
    rule: ExponentRule,
) -> Result<Vec<ExtremalSample>> {
    let primes = check_ladder(y_values)?;
    if rule == ExponentRule::Cubed {
        distinct_prime_sets(&primes, y_values)?;
    }
    let limit = (-EULER_GAMMA).exp();
    let mut out = Vec::with_capacity(y_values.len());
    match rule {
        ExponentRule::Cubed => {
            // nested sequence: extend the running sums prime by prime
            let mut log_ratio = CompensatedSum::new();
            let mut theta = CompensatedSum::new();
            let mut idx = 0;
            for &y in y_values {
                while idx < primes.len() && primes[idx] <= y {
                    let p = primes[idx] as f64;
                    log_ratio += (-1.0 / p + 1.0 / (p * p * p)).ln_1p();
                    theta += p.ln();
                    idx += 1;
                }
                let log_n = 3.0 * theta.value();
                let ratio = log_ratio.value().exp() * log_n.ln();
                out.push(sample(
                    y,
                    format!("prod_{{p<={y}}} p^3"),
                    log_n,
                    ratio,
                    limit,
                ));
            }
        }
        ExponentRule::PowerAboveSquare => {
            for &y in y_values {
                let mut log_ratio = CompensatedSum::new();
                let mut log_n = CompensatedSum::new();
                for &p in primes.iter().take_while(|&&p| p <= y) {
                    let e = exponent_for(p, y, rule);
                    let lp = (p as f64).ln();
                    let p_to_minus_e = (-(e as f64) * lp).exp();
                    log_ratio += (-1.0 / p as f64 + p_to_minus_e).ln_1p();
                    log_n += e as f64 * lp;
                }
                let log_n = log_n.value();
                let ratio = log_ratio.value().exp() * log_n.ln();
                out.push(sample(
                    y,
                    format!("prod_{{p<={y}}} p^e(p), p^e(p) >= {y}^2"),
                    log_n,
                    ratio,
                    limit,
                ));
            }
        }
    }
    Ok(out)
}

/// Samples of `rho(n) / (phi(n) log log n)` along primorials; limsup `e^gamma`.
pub fn maximal_order_sequence(y_values: &[u64]) -> Result<Vec<ExtremalSample>> {
    let primes = check_ladder(y_values)?;
    distinct_prime_sets(&primes, y_values)?;
    let limit = EULER_GAMMA.exp();
    let mut log_ratio = CompensatedSum::new();
    let mut theta = CompensatedSum::new();
    let mut idx = 0;
    let mut out = Vec::with_capacity(y_values.len());
    for &y in y_values {
        while idx < primes.len() && primes[idx] <= y {
            let p = primes[idx] as f64;
            // rho(p)/phi(p) = p/(p-1)
            log_ratio += -(-1.0 / p).ln_1p();
            theta += p.ln();
            idx += 1;
        }
        let log_n = theta.value();
        let ratio = log_ratio.value().exp() / log_n.ln();
        out.push(sample(y, format!("prod_{{p<={y}}} p"), log_n, ratio, limit));
    }
    Ok(out)
}

fn sample(y: u64, n_description: String, log_n: f64, ratio: f64, limit: f64) -> ExtremalSample {
    ExtremalSample {
        y,
        n_description,
        log_n,
        ratio,
        limit,
        deviation: ratio - limit,
    }
}

/// `e^-gamma prod_{p <= cutoff} (1 + 1/(p^2 (p - 1)))`, the value the cubed
/// primorial ratios converge to.
pub fn cubed_primorial_limit(cutoff: u64) -> f64 {
    let s: CompensatedSum = primes_up_to(cutoff)
        .into_iter()
        .map(|p| {
            let p = p as f64;
            (1.0 / (p * p * (p - 1.0))).ln_1p()
        })
        .sum();
    (s.value() - EULER_GAMMA).exp()
}

/// Scan of the two trivial extremal statements over `n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivialExtremes {
    pub n_max: u64,
    /// `max rho(n)/n`; exactly 1.
    pub max_rho_over_n: f64,
    /// Whether `rho(n) = n` holds exactly for the squarefree `n`.
    pub max_attained_exactly_at_squarefree: bool,
    /// Minimum of `rho(n)/phi(n)` over `2 <= n <= n_max`, and where it occurs.
    pub min_rho_over_phi: f64,
    pub argmin_rho_over_phi: u64,
    pub largest_prime: u64,
    /// `(k, rho(2^k)/2^k)` for `2^k <= n_max`.
    pub two_power_ratios: Vec<(u32, f64)>,
}

impl TrivialExtremes {
    pub fn passed(&self) -> bool {
        let powers_ok = self.two_power_ratios.windows(2).all(|w| w[1].1 < w[0].1)
            && self
                .two_power_ratios
                .iter()
                .all(|&(k, r)| (r - (0.5 + 0.5f64.powi(k as i32))).abs() < 1e-15);
        self.max_rho_over_n == 1.0
            && self.max_attained_exactly_at_squarefree
            && (self.n_max < 2 || self.argmin_rho_over_phi == self.largest_prime)
            && powers_ok
    }
}

pub fn trivial_extremes_check(n_max: u64) -> Result<TrivialExtremes> {
    if n_max == 0 || n_max > MAX_PRIME_BOUND {
        return domain(format!("n_max must lie in [1, {MAX_PRIME_BOUND}]"));
    }
    let table = ArithmeticTable::build(n_max)?;
    Ok(trivial_extremes_on(&table))
}

pub fn trivial_extremes_on(table: &ArithmeticTable) -> TrivialExtremes {
    let n_max = table.max_n();
    let squarefree = squarefree_flags(n_max);
    let mut max_ratio = 0.0f64;
    let mut exact_at_squarefree = true;
    let (mut best_num, mut best_den, mut argmin) = (u64::MAX, 1u64, 1u64);
    let mut largest_prime = 1;
    for row in table.rows() {
        max_ratio = max_ratio.max(row.rho as f64 / row.n as f64);
        exact_at_squarefree &= (row.rho == row.n) == squarefree[row.n as usize];
        if row.n >= 2 {
            if row.spf == row.n {
                largest_prime = row.n;
            }
            // rho/phi < best_num/best_den, ties keep the later n
            if (row.rho as u128) * (best_den as u128) <= (best_num as u128) * (row.phi as u128) {
                best_num = row.rho;
                best_den = row.phi;
                argmin = row.n;
            }
        }
    }
    let two_power_ratios = (1..)
        .map(|k: u32| (k, 1u64 << k))
        .take_while(|&(_, m)| m <= n_max)
        .map(|(k, m)| (k, table.rho(m) as f64 / m as f64))
        .collect();
    TrivialExtremes {
        n_max,
        max_rho_over_n: max_ratio,
        max_attained_exactly_at_squarefree: exact_at_squarefree,
        min_rho_over_phi: if n_max >= 2 {
            best_num as f64 / best_den as f64
        } else {
            1.0
        },
        argmin_rho_over_phi: argmin,
        largest_prime,
        two_power_ratios,
    }
}

/// `flags[n]` is true when `n` is squarefree; index 0 unused.
pub fn squarefree_flags(n_max: u64) -> Vec<bool> {
    let mut flags = vec![true; n_max as usize + 1];
    let mut p = 2u64;
    while p * p <= n_max {
        let sq = p * p;
        let mut m = sq;
        while m <= n_max {
            flags[m as usize] = false;
            m += sq;
        }
        p += 1;
    }
    flags
}

/// First prime `p <= p_max` where a hypothesis of the general extremal-order
/// theorem fails for `n/rho(n)` (exponent 3) or `rho(n)/phi(n)` (exponent 1).
///
/// Checked exactly in integers:
/// `p^3/rho(p^3) = 1 + (p^2 - 1)/(p^3 - p^2 + 1) > 1 + 1/p`, every
/// `p^e/rho(p^e) < p/(p - 1)`, and `rho(p)/phi(p) = 1 + 1/(p - 1) > 1 + 1/p`.
pub fn extremal_hypotheses_failure(p_max: u64) -> Option<u64> {
    for p in primes_up_to(p_max) {
        let p = p as u128;
        let rho3 = p * p * p - p * p + 1;
        // p^3 / rho3 == 1 + (p^2 - 1)/rho3 as an identity of fractions
        let identity = p * p * p == rho3 + (p * p - 1);
        let beats_one_over_p = (p * p - 1) * p > rho3;
        // p^e/(p^e - p^(e-1) + 1) < p/(p-1)  <=>  p^e (p-1) < p (p^e - p^(e-1) + 1)
        let below_sup = (1..=6u32).all(|e| {
            let pe = p.pow(e);
            pe * (p - 1) < p * (pe - pe / p + 1)
        });
        // rho(p)/phi(p) = p/(p-1) > (p+1)/p  <=>  p^2 > p^2 - 1
        let unit_exponent = p * p > (p + 1) * (p - 1);
        if !(identity && beats_one_over_p && below_sup && unit_exponent) {
            return Some(p as u64);
        }
    }
    None
}
