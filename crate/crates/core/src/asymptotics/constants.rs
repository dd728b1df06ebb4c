//! Euler-product constants governing the mean values of `rho`, `rho/phi`,
//! `phi/rho` and `1/rho`.
//!
//! Every product is accumulated as a compensated sum of logarithms over the
//! primes up to a cutoff `P`; the primes above `P` are handled by a tail
//! estimate (value) and a tail bound (bracket).

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::primes::primes_up_to;
use crate::summation::CompensatedSum;

/// Euler-Mascheroni constant to 20 digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub const ZETA2: f64 = PI * PI / 6.0;

pub fn zeta6() -> f64 {
    PI.powi(6) / 945.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantName {
    /// Quadratic class-number constant; `sum rho(n) ~ A x^2 / 2`.
    A,
    /// `pi^2 / 6`; `sum rho(n)/phi(n) ~ B x`.
    B,
    /// Mean value of `phi(n)/rho(n)`.
    C,
    /// Coefficient of `log x` in `sum 1/rho(n)`.
    D,
    /// `zeta(2) zeta(3) / zeta(6)`.
    K,
    Gamma,
    EGamma,
    ENegGamma,
}

impl ConstantName {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantName::A => "A",
            ConstantName::B => "B",
            ConstantName::C => "C",
            ConstantName::D => "D",
            ConstantName::K => "K",
            ConstantName::Gamma => "gamma",
            ConstantName::EGamma => "e_gamma",
            ConstantName::ENegGamma => "e_neg_gamma",
        }
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A numerically evaluated constant with a bracket `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantEstimate {
    pub name: ConstantName,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// Largest prime bound used; 0 for closed forms.
    pub prime_cutoff: u64,
    pub method: &'static str,
}

impl ConstantEstimate {
    fn exact(name: ConstantName, value: f64, method: &'static str) -> Self {
        Self {
            name,
            value,
            lower: value,
            upper: value,
            prime_cutoff: 0,
            method,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

fn check_cutoff(cutoff: u64) -> Result<Vec<u64>> {
    if cutoff < 2 {
        return domain("prime cutoff must be at least 2");
    }
    Ok(primes_up_to(cutoff))
}

fn log_product(primes: &[u64], log_factor: impl Fn(f64) -> f64) -> f64 {
    primes
        .iter()
        .map(|&p| log_factor(p as f64))
        .sum::<CompensatedSum>()
        .value()
}

/// Heuristic `sum_{p > P} p^-s` for `s > 1`, from the prime density `1/log t`.
fn prime_tail_estimate(cutoff: u64, s: f64) -> f64 {
    let p = cutoff as f64;
    p.powf(1.0 - s) / ((s - 1.0) * p.ln())
}

/// `prod_{p <= P} (1 - p^-2)^-1`.
pub fn zeta2_partial_product(cutoff: u64) -> Result<f64> {
    let primes = check_cutoff(cutoff)?;
    Ok((-log_product(&primes, |p| (-1.0 / (p * p)).ln_1p())).exp())
}

/// The two product forms of `A` truncated at the same prime cutoff:
/// `prod (1 - 1/(p^2 (p+1)))` and
/// `zeta_P(2) prod (1 - p^-2 - p^-3 + p^-4)` with `zeta_P(2)` the partial
/// Euler product of `zeta(2)` over the same primes.
pub fn a_product_forms(cutoff: u64) -> Result<(f64, f64)> {
    let primes = check_cutoff(cutoff)?;
    let first = log_product(&primes, |p| (-1.0 / (p * p * (p + 1.0))).ln_1p()).exp();
    let zeta2_log = -log_product(&primes, |p| (-1.0 / (p * p)).ln_1p());
    let second_log = log_product(&primes, |p| {
        let q = 1.0 / p;
        (-(q * q + q * q * q - q * q * q * q)).ln_1p()
    });
    Ok((first, (zeta2_log + second_log).exp()))
}

/// The quadratic class-number constant `A = prod_p (1 - 1/(p^2 (p+1)))`.
///
/// Factors are below 1, so the partial product is an upper bound; the
/// lower bound uses `sum_{p > P} p^-3 < 1/(2 P^2)`.
pub fn constant_a(cutoff: u64) -> Result<ConstantEstimate> {
    let (first, second) = a_product_forms(cutoff)?;
    let p = cutoff as f64;
    let tail_bound = 1.0 / (2.0 * p * p) * (1.0 + 1.0 / p);
    if (first - second).abs() > tail_bound.max(1e-12) {
        return Err(Error::Inconsistent(format!(
            "product forms of A disagree at cutoff {cutoff}: {first} vs {second}"
        )));
    }
    Ok(ConstantEstimate {
        name: ConstantName::A,
        value: first * (-prime_tail_estimate(cutoff, 3.0).min(tail_bound)).exp(),
        lower: first * (-tail_bound).exp(),
        upper: first,
        prime_cutoff: cutoff,
        method: "euler-product;integral-tail",
    })
}

pub fn constant_b() -> ConstantEstimate {
    ConstantEstimate::exact(ConstantName::B, ZETA2, "closed-form")
}

/// One factor of the Delange product for `C` with the `nu > k` tail
/// replaced by `1/(p^k r)`.
fn c_factor(p: f64, k: u32, r: f64) -> f64 {
    let q = 1.0 - 1.0 / p;
    let mut s = CompensatedSum::new();
    let mut lower_power = 1.0; // p^(nu-1)
    for _ in 0..k {
        s += 1.0 / (lower_power * (p - 1.0) + 1.0);
        lower_power *= p;
    }
    // lower_power is now p^k
    q * (1.0 + q * s.value() + 1.0 / (lower_power * r))
}

/// Per-prime factor of `C` to depth `k`, bracketed by `r_p = p` (lower) and
/// `r_p = p - 1` (upper).
pub fn c_prime_factor_bracket(p: u64, k: u32) -> (f64, f64) {
    let pf = p as f64;
    (c_factor(pf, k, pf), c_factor(pf, k, pf - 1.0))
}

/// The mean value `C` of `phi(n)/rho(n)`.
///
/// The bracket is rigorous: each prime factor lies between its `r_p = p` and
/// `r_p = p - 1` evaluations, every factor is at most 1, and every factor
/// with `p > P` is at least `1 - 2/p^2`, so the primes above `P` contribute a
/// factor in `[1 - 2/P, 1]`.
pub fn constant_c(cutoff: u64, k: u32) -> Result<ConstantEstimate> {
    if k == 0 {
        return domain("truncation depth k must be at least 1");
    }
    let primes = check_cutoff(cutoff)?;
    let lower = log_product(&primes, |p| c_factor(p, k, p).ln()).exp();
    let upper = log_product(&primes, |p| c_factor(p, k, p - 1.0).ln()).exp();
    let mid = log_product(&primes, |p| c_factor(p, k, p - 0.5).ln()).exp();
    let p = cutoff as f64;
    Ok(ConstantEstimate {
        name: ConstantName::C,
        value: mid * (-prime_tail_estimate(cutoff, 2.0)).exp(),
        lower: lower * (1.0 - 2.0 / p),
        upper,
        prime_cutoff: cutoff,
        method: "euler-product;r_p-bracket;rigorous",
    })
}

/// Direct series for `zeta(3)` over `n <= terms`, with the integral tail.
/// Returns `(value, lower, upper)`.
pub fn zeta3_estimate(terms: u64) -> (f64, f64, f64) {
    let terms = terms.max(1);
    let mut s = CompensatedSum::new();
    for n in (1..=terms).rev() {
        let x = n as f64;
        s += 1.0 / (x * x * x);
    }
    let n = terms as f64;
    let head = s.value();
    let lower = head + 1.0 / (2.0 * (n + 1.0) * (n + 1.0));
    let upper = head + 1.0 / (2.0 * n * n);
    let value = head + 1.0 / (2.0 * n * n) - 1.0 / (2.0 * n * n * n);
    (value, lower, upper)
}

pub const ZETA3_TERMS: u64 = 1_000_000;

/// `K = zeta(2) zeta(3) / zeta(6)`.
pub fn constant_k() -> ConstantEstimate {
    let (z3, lo, hi) = zeta3_estimate(ZETA3_TERMS);
    let scale = ZETA2 / zeta6();
    ConstantEstimate {
        name: ConstantName::K,
        value: scale * z3,
        lower: scale * lo,
        upper: scale * hi,
        prime_cutoff: 0,
        method: "closed-form;zeta3-series",
    }
}

/// Largest dropped `nu`-tail tolerated in a factor of `D`.
pub const D_NU_TAIL: f64 = 1e-18;

/// Bound on `sum_{nu > m} 1/(p^nu (p^nu - p^(nu-1) + 1))` at `p = 2`, the
/// worst prime.
fn d_nu_tail_bound(m: u32) -> f64 {
    // term_nu <= p^(1 - 2 nu) / (p - 1); geometric with ratio p^-2
    2f64.powi(1 - 2 * (m as i32 + 1)) * 4.0 / 3.0
}

/// One factor of the Euler product in `D`.
pub fn d_prime_factor(p: u64, nu_max: u32) -> f64 {
    let p = p as f64;
    let mut s = CompensatedSum::new();
    let mut lower_power = 1.0; // p^(nu-1)
    for _ in 0..nu_max {
        let power = lower_power * p;
        let term = 1.0 / (power * (lower_power * (p - 1.0) + 1.0));
        s += term;
        if term < s.value() * 1e-20 {
            break;
        }
        lower_power = power;
    }
    1.0 - p * (p - 1.0) / (p * p - p + 1.0) * s.value()
}

/// Coefficient `D` of `log x` in `sum_{n <= x} 1/rho(n)`.
///
/// Factors are below 1 so the partial product bounds from above; the lower
/// end of the bracket assumes the omitted factors behave like `1 - 1/p^2`
/// and is heuristic.
pub fn constant_d(cutoff: u64, nu_max: u32) -> Result<ConstantEstimate> {
    if nu_max == 0 || d_nu_tail_bound(nu_max) > D_NU_TAIL {
        return domain(format!(
            "nu_max = {nu_max} leaves a per-prime tail above {D_NU_TAIL:e}"
        ));
    }
    let primes = check_cutoff(cutoff)?;
    let partial = log_product(&primes, |p| d_prime_factor(p as u64, nu_max).ln()).exp();
    let k = constant_k();
    let p = cutoff as f64;
    Ok(ConstantEstimate {
        name: ConstantName::D,
        value: k.value * partial * (-prime_tail_estimate(cutoff, 2.0)).exp(),
        lower: k.lower * partial * (-2.0 / p).exp(),
        upper: k.upper * partial,
        prime_cutoff: cutoff,
        method: "euler-product;heuristic-tail",
    })
}

pub fn constant_gamma() -> ConstantEstimate {
    ConstantEstimate::exact(ConstantName::Gamma, EULER_GAMMA, "tabulated")
}

pub fn constant_e_gamma() -> ConstantEstimate {
    ConstantEstimate::exact(ConstantName::EGamma, EULER_GAMMA.exp(), "tabulated")
}

pub fn constant_e_neg_gamma() -> ConstantEstimate {
    ConstantEstimate::exact(ConstantName::ENegGamma, (-EULER_GAMMA).exp(), "tabulated")
}

/// Every constant, in the order `A, B, C, D, K, gamma, e_gamma, e_neg_gamma`.
pub fn all_constants(cutoff: u64, k: u32, nu_max: u32) -> Result<Vec<ConstantEstimate>> {
    Ok(vec![
        constant_a(cutoff)?,
        constant_b(),
        constant_c(cutoff, k)?,
        constant_d(cutoff, nu_max)?,
        constant_k(),
        constant_gamma(),
        constant_e_gamma(),
        constant_e_neg_gamma(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_single_factor() {
        let a = constant_a(2).unwrap();
        assert!((a.upper - 11.0 / 12.0).abs() < 1e-15);
        let (f, s) = a_product_forms(2).unwrap();
        assert!((f - s).abs() < 1e-15);
    }

    #[test]
    fn a_forms_agree_and_bracket_shrinks() {
        let (f, s) = a_product_forms(10_000).unwrap();
        assert!((f - s).abs() < 1e-8);
        let small = constant_a(1_000).unwrap();
        let large = constant_a(100_000).unwrap();
        assert!(large.width() < small.width());
        assert!(small.lower <= large.value && large.value <= small.upper);
        for est in [&small, &large] {
            assert!(est.lower <= est.value && est.value <= est.upper);
        }
    }

    #[test]
    fn a_value() {
        let a = constant_a(100_000).unwrap();
        assert!((a.value - 0.8815).abs() < 5e-4);
    }

    #[test]
    fn b_matches_zeta2_product() {
        let b = constant_b();
        assert!((6.0 * b.value / (PI * PI) - 1.0).abs() < 1e-15);
        assert!((b.value - 1.6449).abs() < 1e-4);
        let cutoff = 100_000;
        let partial = zeta2_partial_product(cutoff).unwrap();
        // log(zeta(2)/zeta_P(2)) < sum_{n > P} 1/(n^2 - 1) < 1/(P - 1)
        let tail = 1.0 / (cutoff as f64 - 1.0);
        assert!(partial < b.value);
        assert!(b.value.ln() - partial.ln() < tail);
    }

    #[test]
    fn c_factor_at_two_is_the_series() {
        // (1/2)(1 + (1/2) sum_nu 1/(2^(nu-1) + 1))
        let series: f64 = (1..200).map(|nu| 1.0 / (2f64.powi(nu - 1) + 1.0)).sum();
        let expected = 0.5 * (1.0 + 0.5 * series);
        let (lo, hi) = c_prime_factor_bracket(2, 60);
        assert!(lo <= expected + 1e-15 && expected <= hi + 1e-15);
        assert!(hi - lo < 1e-17);
        let (lo, hi) = c_prime_factor_bracket(2, 3);
        assert!(lo < expected && expected < hi);
    }

    #[test]
    fn c_bracket() {
        let c = constant_c(100_000, 30).unwrap();
        // the quoted 0.6875 is C truncated to four decimals
        assert!(c.lower < 0.6876 && c.upper >= 0.6875);
        assert!(c.lower <= c.value && c.value <= c.upper);
        assert!(c.width() < 1e-3);
        let coarse = constant_c(1_000, 30).unwrap();
        assert!(coarse.lower <= c.lower && c.upper <= coarse.upper);
        assert!(constant_c(100, 0).is_err());
        assert!(constant_c(1, 5).is_err());
    }

    #[test]
    fn zeta3_and_k() {
        let (z, lo, hi) = zeta3_estimate(ZETA3_TERMS);
        assert!(lo <= z && z <= hi);
        assert!(hi - lo < 1e-12);
        assert!((z - 1.202_056_903_159_594_3).abs() < 1e-12);
        let k = constant_k();
        assert!((k.value - 1.943_596_436_820_759).abs() < 1e-11);
    }

    #[test]
    fn d_factor_at_two() {
        // 1 - (2/3)(1/(2*2) + 1/(4*3) + 1/(8*5) + 1/(16*9) + ...)
        let series: f64 = (1..60)
            .map(|nu| 1.0 / (2f64.powi(nu) * (2f64.powi(nu - 1) + 1.0)))
            .sum();
        let expected = 1.0 - (2.0 / 3.0) * series;
        assert!((d_prime_factor(2, 60) - expected).abs() < 1e-16);
        let head = 1.0 / 4.0 + 1.0 / 12.0 + 1.0 / 40.0;
        assert!(series > head && series - head < 1.0 / 100.0);
    }

    #[test]
    fn d_consistency_across_cutoffs() {
        let coarse = constant_d(1_000, 60).unwrap();
        let fine = constant_d(100_000, 60).unwrap();
        assert!((coarse.value - fine.value).abs() < coarse.width());
        assert!(fine.width() < coarse.width());
        assert!(fine.lower <= fine.value && fine.value <= fine.upper);
    }

    #[test]
    fn d_rejects_shallow_nu() {
        assert!(constant_d(1000, 10).is_err());
        assert!(constant_d(1000, 0).is_err());
        assert!(constant_d(1000, 30).is_ok());
    }

    #[test]
    fn gamma_constants() {
        assert!((constant_e_gamma().value - 1.781_072_417_990_198).abs() < 1e-14);
        assert!((constant_e_neg_gamma().value - 0.561_459_483_566_885_2).abs() < 1e-14);
        let all = all_constants(1000, 30, 60).unwrap();
        let names: Vec<_> = all.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            ["A", "B", "C", "D", "K", "gamma", "e_gamma", "e_neg_gamma"]
        );
    }
}
