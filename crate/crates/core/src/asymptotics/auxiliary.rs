//! The multiplicative helpers behind the average-order proofs and the exact
//! convolution identities they rely on.
//!
//! With `f = phi/rho`:
//!
//! * `rho(n)/phi(n) = sum_{d || n} 1/phi(d)`
//! * `f(n) = sum_{d | n} (phi(d)/d) v(n/d)`
//! * `1/rho(n) = sum_{d || n} h(d) / phi(n/d)`
//!
//! `v` and `h` are multiplicative and given on prime powers by
//! [`v_at_prime_power`] and [`h_at_prime_power`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, is_prime, phi_prime_power, PrimeFactorization};
use crate::error::{domain, Error, Result};
use crate::primes::primes_up_to;
use crate::sieve::ArithmeticTable;
use crate::summation::CompensatedSum;

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn check_prime_power(p: u64, nu: u32) -> Result<()> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if nu == 0 {
        return domain("exponent must be at least 1");
    }
    if p.checked_pow(nu).is_none() {
        return domain(format!("{p}^{nu} overflows 64 bits"));
    }
    Ok(())
}

/// `f(p^mu) = phi(p^mu) / rho(p^mu)`, with `f(1) = 1`.
fn f_prime_power(p: u64, mu: u32) -> BigRational {
    let phi = phi_prime_power(p, mu);
    if mu == 0 {
        BigRational::one()
    } else {
        ratio(phi, phi + 1)
    }
}

/// `v(p^nu) = f(p^nu) - (1 - 1/p) sum_{j=0}^{nu-1} f(p^(nu-1-j)) / p^j`.
///
/// ```
/// use num_rational::BigRational;
/// let v = regint::v_at_prime_power(2, 2).unwrap();
/// assert_eq!(v, BigRational::new(1.into(), 6.into()));
/// ```
pub fn v_at_prime_power(p: u64, nu: u32) -> Result<BigRational> {
    check_prime_power(p, nu)?;
    let mut tail = BigRational::zero();
    let mut scale = BigRational::one();
    let inv_p = ratio(1, p);
    for j in 0..nu {
        tail += f_prime_power(p, nu - 1 - j) * &scale;
        scale *= &inv_p;
    }
    Ok(f_prime_power(p, nu) - ratio(p - 1, p) * tail)
}

/// `h(p^nu) = -1 / (phi(p^nu) (phi(p^nu) + 1))`.
pub fn h_at_prime_power(p: u64, nu: u32) -> Result<BigRational> {
    check_prime_power(p, nu)?;
    let phi = phi_prime_power(p, nu) as u128;
    Ok(BigRational::new(
        BigInt::from(-1),
        BigInt::from(phi * (phi + 1)),
    ))
}

fn multiplicative(
    f: &PrimeFactorization,
    at: impl Fn(u64, u32) -> Result<BigRational>,
) -> Result<BigRational> {
    let mut out = BigRational::one();
    for &(p, e) in f.factors() {
        out *= at(p, e)?;
    }
    Ok(out)
}

pub fn v_of(n: u64) -> Result<BigRational> {
    multiplicative(&factor(n)?, v_at_prime_power)
}

pub fn h_of(n: u64) -> Result<BigRational> {
    multiplicative(&factor(n)?, h_at_prime_power)
}

/// `a(k)`, `b(k)` and `psi(k)` from the asymptotic for `sum 1/phi(n)` over `n`
/// coprime to `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoprimeReciprocalTerms {
    /// `prod_{p | k} (1 - p/(p^2 - p + 1))`
    pub a: f64,
    /// `sum_{p | k} log p/(p - 1) - sum_{p not | k} log p/(p^2 - p + 1)`
    pub b: f64,
    /// `k prod_{p | k} (1 + 1/p)`
    pub psi: u128,
}

/// Default prime cutoff for the infinite sum in `b(k)`.
pub const B_PRIME_CUTOFF: u64 = 1_000_000;

/// Evaluates `a(k)`, `b(k)` and `psi(k)`.
///
/// The sum over primes not dividing `k` runs to `prime_cutoff`, and the
/// remainder is estimated by `sum_{p > P} log p / p^2 ~ 1/P`.
pub fn a_b_psi_of_k(k: u64, prime_cutoff: u64) -> Result<CoprimeReciprocalTerms> {
    let f = factor(k)?;
    if prime_cutoff < 2 {
        return domain("prime cutoff must be at least 2");
    }
    let mut a = 1.0;
    let mut psi = k as u128;
    let mut b = CompensatedSum::new();
    for &(p, _) in f.factors() {
        let pf = p as f64;
        a *= 1.0 - pf / (pf * pf - pf + 1.0);
        psi = psi / p as u128 * (p as u128 + 1);
        b += pf.ln() / (pf - 1.0);
    }
    for p in primes_up_to(prime_cutoff) {
        if k % p != 0 {
            let pf = p as f64;
            b += -pf.ln() / (pf * pf - pf + 1.0);
        }
    }
    b += -1.0 / prime_cutoff as f64;
    let phi_ratio = f.euler_phi() as f64 / k as f64;
    if a > phi_ratio * (1.0 + 1e-12) {
        return Err(Error::Inconsistent(format!(
            "a({k}) = {a} exceeds phi(k)/k = {phi_ratio}"
        )));
    }
    Ok(CoprimeReciprocalTerms {
        a,
        b: b.value(),
        psi,
    })
}

/// Which of the three convolution identities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `rho/phi = sum_{d || n} 1/phi(d)`
    RhoOverPhi,
    /// `phi/rho = sum_{d | n} (phi(d)/d) v(n/d)`
    PhiOverRho,
    /// `1/rho = sum_{d || n} h(d)/phi(n/d)`
    RecipRho,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub n_max: u64,
    pub checked: u64,
    pub first_failure: Option<(Identity, u64)>,
    /// `max |h(n)| phi(n)^2` over `n <= n_max`, the empirical constant in `h << 1/phi^2`.
    pub h_phi_squared_max: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Largest `n_max` accepted by [`verify_identities`].
pub const IDENTITY_LIMIT: u64 = 10_000;

/// Checks all three identities exactly, in rational arithmetic, for every
/// `n <= n_max`, using `phi` and `rho` from `table`.
pub fn verify_identities_with(table: &ArithmeticTable, n_max: u64) -> Result<IdentityReport> {
    if n_max == 0 || n_max > IDENTITY_LIMIT {
        return domain(format!("n_max must lie in [1, {IDENTITY_LIMIT}]"));
    }
    if n_max > table.max_n() {
        return domain("table too small for n_max");
    }
    let len = n_max as usize + 1;
    let mut v = vec![BigRational::zero(); len];
    let mut h = vec![BigRational::zero(); len];
    let mut facts = Vec::with_capacity(len);
    facts.push(None);
    for n in 1..=n_max {
        let f = factor(n)?;
        v[n as usize] = multiplicative(&f, v_at_prime_power)?;
        h[n as usize] = multiplicative(&f, h_at_prime_power)?;
        facts.push(Some(f));
    }

    let mut h_max = 0.0f64;
    for n in 1..=n_max {
        let f = facts[n as usize].as_ref().unwrap();
        let (phi_n, rho_n) = (table.phi(n), table.rho(n));
        let unitary = f.unitary_divisors();

        let lhs = ratio(rho_n, phi_n);
        let rhs: BigRational = unitary.iter().map(|&d| ratio(1, table.phi(d))).sum();
        if lhs != rhs {
            return Ok(failure(n_max, n, Identity::RhoOverPhi, h_max));
        }

        let lhs = ratio(phi_n, rho_n);
        let rhs: BigRational = f
            .divisors()
            .iter()
            .map(|&d| ratio(table.phi(d), d) * &v[(n / d) as usize])
            .sum();
        if lhs != rhs {
            return Ok(failure(n_max, n, Identity::PhiOverRho, h_max));
        }

        let lhs = ratio(1, rho_n);
        let rhs: BigRational = unitary
            .iter()
            .map(|&d| &h[d as usize] / BigInt::from(table.phi(n / d)))
            .sum();
        if lhs != rhs {
            return Ok(failure(n_max, n, Identity::RecipRho, h_max));
        }

        let scaled = h[n as usize].abs() * BigInt::from(phi_n as u128 * phi_n as u128);
        h_max = h_max.max(to_f64(&scaled));
    }
    Ok(IdentityReport {
        n_max,
        checked: n_max,
        first_failure: None,
        h_phi_squared_max: h_max,
    })
}

fn failure(n_max: u64, n: u64, which: Identity, h_max: f64) -> IdentityReport {
    IdentityReport {
        n_max,
        checked: n - 1,
        first_failure: Some((which, n)),
        h_phi_squared_max: h_max,
    }
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// [`verify_identities_with`] on a freshly sieved table.
pub fn verify_identities(n_max: u64) -> Result<IdentityReport> {
    if n_max == 0 || n_max > IDENTITY_LIMIT {
        return domain(format!("n_max must lie in [1, {IDENTITY_LIMIT}]"));
    }
    let table = ArithmeticTable::build(n_max)?;
    verify_identities_with(&table, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn v_values() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            assert!(v_at_prime_power(p, 1).unwrap().is_zero());
            assert!(v_at_prime_power(p, 2).unwrap().abs() <= r(1, p as i64));
        }
        assert_eq!(v_at_prime_power(2, 2).unwrap(), r(1, 6));
        assert!(v_at_prime_power(4, 2).is_err());
        assert!(v_at_prime_power(2, 0).is_err());
    }

    #[test]
    fn v_asymptotic_shape() {
        // |v(p^nu) - (nu-1)/p^(nu-1)| <= c / p^nu, c fitted on p <= 100
        let within = |p: u64, nu: u32| {
            let v = v_at_prime_power(p, nu).unwrap().to_f64().unwrap();
            let main = (nu - 1) as f64 / (p as f64).powi(nu as i32 - 1);
            (v - main).abs() * (p as f64).powi(nu as i32)
        };
        let fitted = primes_up_to(100)
            .into_iter()
            .flat_map(|p| (3..=8).map(move |nu| (p, nu)))
            .map(|(p, nu)| within(p, nu))
            .fold(0.0f64, f64::max);
        assert!(fitted.is_finite() && fitted > 0.0);
        for p in [101u64, 211, 499, 997] {
            for nu in 3..=6 {
                assert!(within(p, nu) <= fitted, "p={p} nu={nu}");
            }
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h_at_prime_power(2, 1).unwrap(), r(-1, 2));
        assert_eq!(h_at_prime_power(3, 1).unwrap(), r(-1, 6));
        assert_eq!(h_at_prime_power(2, 2).unwrap(), r(-1, 6));
        for p in primes_up_to(50) {
            for nu in 1..=5 {
                let h = h_at_prime_power(p, nu).unwrap();
                assert!(h.is_negative());
                let phi = phi_prime_power(p, nu) as i64;
                assert!(h.abs() <= r(1, phi * phi));
            }
        }
    }

    #[test]
    fn identities_small() {
        // n = 12: unitary divisors 1, 3, 4, 12 with phi 1, 2, 2, 4
        let s = r(1, 1) + r(1, 2) + r(1, 2) + r(1, 4);
        assert_eq!(s, r(9, 4));
        // n = 4: 1/rho(4) = h(1)/phi(4) + h(4)/phi(1)
        assert_eq!(h_of(1).unwrap() / r(2, 1) + h_of(4).unwrap(), r(1, 3));
        let rep = verify_identities(1).unwrap();
        assert!(rep.passed());
        let rep = verify_identities(2000).unwrap();
        assert!(rep.passed(), "{:?}", rep.first_failure);
        assert_eq!(rep.h_phi_squared_max, 1.0); // attained at n = 1
        assert!(verify_identities(0).is_err());
        assert!(verify_identities(IDENTITY_LIMIT + 1).is_err());
    }

    #[test]
    fn identities_catch_corruption() {
        let table = ArithmeticTable::build(100).unwrap().with_corrupted_rho(36);
        let rep = verify_identities_with(&table, 100).unwrap();
        assert_eq!(rep.first_failure, Some((Identity::RhoOverPhi, 36)));
        assert_eq!(rep.checked, 35);
    }

    #[test]
    fn a_b_psi_examples() {
        let t = a_b_psi_of_k(2, 10_000).unwrap();
        assert!((t.a - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.psi, 3);
        let t = a_b_psi_of_k(1, 10_000).unwrap();
        assert_eq!(t.a, 1.0);
        assert_eq!(t.psi, 1);
        assert!(t.b < 0.0);
        assert_eq!(a_b_psi_of_k(6, 10_000).unwrap().psi, 12);
        assert!(a_b_psi_of_k(0, 100).is_err());
    }

    #[test]
    fn b_converges_with_cutoff() {
        let coarse = a_b_psi_of_k(1, 10_000).unwrap().b;
        let fine = a_b_psi_of_k(1, 1_000_000).unwrap().b;
        assert!((coarse - fine).abs() < 1e-4);
        // b(2) adds log 2 and drops the p = 2 term of the coprime sum
        let b2 = a_b_psi_of_k(2, 1_000_000).unwrap().b;
        let ln2 = 2f64.ln();
        assert!((b2 - (fine + ln2 + ln2 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn a_below_phi_ratio() {
        for k in 1..=2000u64 {
            let t = a_b_psi_of_k(k, 100).unwrap();
            let f = factor(k).unwrap();
            assert!(t.a <= f.euler_phi() as f64 / k as f64 + 1e-15);
        }
    }
}
