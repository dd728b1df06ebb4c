//! Regular residues modulo `n`.
//!
//! An integer `a` is regular mod `n` when `a^2 x = a (mod n)` has a solution.
//! Residues are represented in `[1, n]`, so the zero class appears as `a = n`.

use std::fmt;

use crate::arith::{
    check_domain, factor, gcd, lcm, mul_mod, order_mod_prime_power, pow_mod, PrimeFactorization,
};
use crate::error::{domain, Error, Result};

/// The six equivalent ways of deciding regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characterization {
    /// Search `x` in `[0, n)` with `a^2 x = a (mod n)`.
    Definition,
    /// For each `p^e || n`, either `p` does not divide `a` or `p^e` divides `a`.
    PrimeCondition,
    /// `gcd(a, n) = gcd(a^2, n)`.
    GcdSquare,
    /// `gcd(a, n)` is a unitary divisor of `n`.
    UnitaryGcd,
    /// `a^(phi(n) + 1) = a (mod n)`.
    EulerPower,
    /// Some `k` in `[1, phi(n)]` has `a^(k + 1) = a (mod n)`.
    WeakOrder,
}

impl Characterization {
    pub const ALL: [Characterization; 6] = [
        Characterization::Definition,
        Characterization::PrimeCondition,
        Characterization::GcdSquare,
        Characterization::UnitaryGcd,
        Characterization::EulerPower,
        Characterization::WeakOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Characterization::Definition => "definition",
            Characterization::PrimeCondition => "prime-condition",
            Characterization::GcdSquare => "gcd-square",
            Characterization::UnitaryGcd => "unitary-gcd",
            Characterization::EulerPower => "euler-power",
            Characterization::WeakOrder => "weak-order",
        }
    }
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reduces any integer into the representative range `[1, n]`.
pub fn reduce_residue(a: i128, n: u64) -> u64 {
    let r = a.rem_euclid(n as i128) as u64;
    if r == 0 {
        n
    } else {
        r
    }
}

fn check_modulus(n: u64) -> Result<()> {
    check_domain(n)?;
    if n < 2 {
        return domain("regularity tests need n >= 2");
    }
    Ok(())
}

/// Outcome of a single characterization, with its witness when it produces one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodOutcome {
    pub regular: bool,
    /// `x` with `a^2 x = a (mod n)` (definition search only).
    pub witness_x: Option<u64>,
    /// Minimal `k` with `a^(k+1) = a (mod n)` (weak-order search only).
    pub weak_order: Option<u64>,
}

impl MethodOutcome {
    fn plain(regular: bool) -> Self {
        Self {
            regular,
            witness_x: None,
            weak_order: None,
        }
    }
}

fn definition_search(a: u64, n: u64) -> Option<u64> {
    let a = a % n;
    let a2 = mul_mod(a, a, n);
    let mut acc = 0u64; // a^2 * x mod n
    for x in 0..n {
        if acc == a {
            return Some(x);
        }
        acc = (acc + a2) % n;
    }
    None
}

fn prime_condition(a: u64, f: &PrimeFactorization) -> bool {
    f.factors()
        .iter()
        .all(|&(p, e)| a % p != 0 || a % p.pow(e) == 0)
}

/// Smallest `k` in `[1, phi(n)]` with `a^(k+1) = a (mod n)`, by direct search.
pub fn weak_order_by_search(a: i128, n: u64) -> Result<Option<u64>> {
    check_modulus(n)?;
    let a = reduce_residue(a, n) % n;
    let cap = factor(n)?.euler_phi();
    let mut power = mul_mod(a, a, n); // a^(k+1) for k = 1
    for k in 1..=cap {
        if power == a {
            return Ok(Some(k));
        }
        power = mul_mod(power, a, n);
    }
    Ok(None)
}

/// Decides whether `a` is regular mod `n` using one characterization.
///
/// ```
/// use regint::{is_regular, Characterization};
/// assert!(is_regular(3, 12, Characterization::UnitaryGcd).unwrap().regular);
/// assert!(!is_regular(2, 4, Characterization::EulerPower).unwrap().regular);
/// ```
pub fn is_regular(a: i128, n: u64, method: Characterization) -> Result<MethodOutcome> {
    check_modulus(n)?;
    let a = reduce_residue(a, n);
    let outcome = match method {
        Characterization::Definition => {
            let x = definition_search(a, n);
            MethodOutcome {
                regular: x.is_some(),
                witness_x: x,
                weak_order: None,
            }
        }
        Characterization::PrimeCondition => MethodOutcome::plain(prime_condition(a, &factor(n)?)),
        Characterization::GcdSquare => {
            let a_sq = mul_mod(a % n, a % n, n);
            MethodOutcome::plain(gcd(a, n) == gcd(a_sq, n))
        }
        Characterization::UnitaryGcd => {
            let d = gcd(a, n);
            MethodOutcome::plain(gcd(d, n / d) == 1)
        }
        Characterization::EulerPower => {
            let phi = factor(n)?.euler_phi();
            MethodOutcome::plain(pow_mod(a, phi + 1, n) == a % n)
        }
        Characterization::WeakOrder => {
            let k = weak_order_by_search(a as i128, n)?;
            MethodOutcome {
                regular: k.is_some(),
                witness_x: None,
                weak_order: k,
            }
        }
    };
    Ok(outcome)
}

/// All six characterizations evaluated together, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub a: u64,
    pub n: u64,
    pub verdicts: [(Characterization, bool); 6],
    pub witness_x: Option<u64>,
    pub weak_order_k: Option<u64>,
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        self.verdicts[0].1
    }
}

/// Runs every characterization and refuses to answer if any two disagree.
///
/// The definition and weak-order searches are linear in `n`; this is a
/// verification entry point, not a fast path.
pub fn check_regularity(a: i128, n: u64) -> Result<RegularityVerdict> {
    check_modulus(n)?;
    let a = reduce_residue(a, n);
    let mut verdicts = [(Characterization::Definition, false); 6];
    let mut witness_x = None;
    let mut weak_order_k = None;
    for (slot, method) in verdicts.iter_mut().zip(Characterization::ALL) {
        let out = is_regular(a as i128, n, method)?;
        *slot = (method, out.regular);
        witness_x = witness_x.or(out.witness_x);
        weak_order_k = weak_order_k.or(out.weak_order);
    }
    let first = verdicts[0].1;
    if let Some((m, _)) = verdicts.iter().find(|(_, v)| *v != first) {
        return Err(Error::Inconsistent(format!(
            "characterizations disagree for a = {a}, n = {n}: definition says {first}, {m} differs"
        )));
    }
    Ok(RegularityVerdict {
        a,
        n,
        verdicts,
        witness_x,
        weak_order_k,
    })
}

/// Number of regular residues in `[1, n]`.
///
/// ```
/// assert_eq!(regint::rho(8).unwrap(), 5);
/// assert_eq!(regint::rho(100).unwrap(), 63);
/// ```
pub fn rho(n: u64) -> Result<u64> {
    Ok(factor(n)?.rho())
}

/// `rho(n)` as the sum of `phi(d)` over the unitary divisors `d` of `n`.
pub fn rho_via_unitary_sum(n: u64) -> Result<u64> {
    let f = factor(n)?;
    f.unitary_divisors()
        .into_iter()
        .map(|d| Ok(factor(d)?.euler_phi()))
        .sum()
}

/// The regular residues in `[1, n]`, ascending; `[1]` for `n = 1`.
pub fn enumerate_regular(n: u64) -> Result<Vec<u64>> {
    check_domain(n)?;
    if n == 1 {
        return Ok(vec![1]);
    }
    let f = factor(n)?;
    let mut out = Vec::with_capacity(f.rho() as usize);
    out.extend((1..=n).filter(|&a| prime_condition(a, &f)));
    Ok(out)
}

/// Sum of the regular residues in `[1, n]`: `n (rho(n) + 1) / 2`.
pub fn regular_sum(n: u64) -> Result<u128> {
    let r = rho(n)?;
    // n(rho + 1) is always even: rho is odd unless n = 2 (mod 4)
    Ok(n as u128 * (r as u128 + 1) / 2)
}

/// Sum of the residues in `[1, n]` coprime to `n`: `n phi(n) / 2`.
pub fn sum_coprime(n: u64) -> Result<u128> {
    check_domain(n)?;
    if n < 2 {
        return domain("the coprime-sum formula holds for n >= 2");
    }
    Ok(n as u128 * factor(n)?.euler_phi() as u128 / 2)
}

/// Weak order of `a` mod `n`: the least `k >= 1` with `a^(k+1) = a (mod n)`.
///
/// Computed as the lcm of the multiplicative orders of `a` modulo the prime
/// powers of `n` that do not divide `a`. `None` when `a` is not regular.
///
/// ```
/// assert_eq!(regint::weak_order(2, 7).unwrap(), Some(3));
/// assert_eq!(regint::weak_order(4, 8).unwrap(), None);
/// ```
pub fn weak_order(a: i128, n: u64) -> Result<Option<u64>> {
    check_modulus(n)?;
    let a = reduce_residue(a, n);
    let f = factor(n)?;
    if !prime_condition(a, &f) {
        return Ok(None);
    }
    let k = f
        .factors()
        .iter()
        .filter(|&&(p, _)| a % p != 0)
        .map(|&(p, e)| order_mod_prime_power(a % p.pow(e), p, e))
        .fold(1, lcm);
    Ok(Some(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::MAX_N;

    #[test]
    fn rho_examples() {
        assert_eq!(rho(1).unwrap(), 1);
        assert_eq!(rho(8).unwrap(), 5);
        assert_eq!(rho(27).unwrap(), 19);
        assert_eq!(rho(100).unwrap(), 63);
        assert_eq!(enumerate_regular(100).unwrap().len(), 63);
    }

    #[test]
    fn rho_unitary_examples() {
        assert_eq!(rho_via_unitary_sum(12).unwrap(), 9);
        assert_eq!(rho_via_unitary_sum(1).unwrap(), 1);
        assert_eq!(rho_via_unitary_sum(30).unwrap(), 30);
    }

    #[test]
    fn is_regular_examples() {
        for m in Characterization::ALL {
            assert!(is_regular(3, 12, m).unwrap().regular, "{m}");
            assert!(!is_regular(2, 4, m).unwrap().regular, "{m}");
            for a in [1, 5, 7, 11] {
                assert!(is_regular(a, 12, m).unwrap().regular, "{m} a={a}");
            }
        }
        assert_eq!(
            is_regular(3, 12, Characterization::Definition)
                .unwrap()
                .witness_x,
            Some(3)
        );
    }

    #[test]
    fn residue_reduction() {
        assert_eq!(reduce_residue(0, 12), 12);
        assert_eq!(reduce_residue(-1, 12), 11);
        assert_eq!(reduce_residue(27, 12), 3);
        let v = check_regularity(-9, 12).unwrap();
        assert_eq!(v.a, 3);
        assert!(v.is_regular());
        assert!(check_regularity(0, 12).unwrap().is_regular());
    }

    #[test]
    fn modulus_one_rejected() {
        assert!(matches!(
            is_regular(1, 1, Characterization::GcdSquare),
            Err(Error::Domain(_))
        ));
        assert!(is_regular(1, 0, Characterization::GcdSquare).is_err());
        assert!(weak_order(1, 1).is_err());
    }

    #[test]
    fn verdict_witnesses() {
        for n in 2..=60u64 {
            for a in 1..=n {
                let v = check_regularity(a as i128, n).unwrap();
                match (v.is_regular(), v.witness_x, v.weak_order_k) {
                    (true, Some(x), Some(k)) => {
                        assert!(x < n);
                        assert_eq!(mul_mod(mul_mod(a, a, n), x, n), a % n);
                        assert_eq!(pow_mod(a, k + 1, n), a % n);
                        assert!((1..k).all(|j| pow_mod(a, j + 1, n) != a % n));
                    }
                    (false, None, None) => {}
                    other => panic!("inconsistent witnesses for a={a} n={n}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_regular(12).unwrap(),
            vec![1, 3, 4, 5, 7, 8, 9, 11, 12]
        );
        assert_eq!(enumerate_regular(1).unwrap(), vec![1]);
        assert_eq!(enumerate_regular(13).unwrap(), (1..=13).collect::<Vec<_>>());
    }

    #[test]
    fn sums() {
        assert_eq!(regular_sum(12).unwrap(), 60);
        assert_eq!(regular_sum(1).unwrap(), 1);
        assert_eq!(regular_sum(30).unwrap(), 465);
        // largest allowed n still fits
        assert!(regular_sum(MAX_N).is_ok());
        assert_eq!(sum_coprime(12).unwrap(), 24);
        assert_eq!(sum_coprime(13).unwrap(), 13 * 12 / 2);
        assert_eq!(sum_coprime(30).unwrap(), 120);
        let direct: u64 = (1..=30u64).filter(|&a| gcd(a, 30) == 1).sum();
        assert_eq!(direct, 120);
        assert!(sum_coprime(1).is_err());
    }

    #[test]
    fn weak_order_examples() {
        assert_eq!(weak_order(2, 7).unwrap(), Some(3));
        assert_eq!(weak_order(4, 8).unwrap(), None);
        assert_eq!(weak_order(8, 8).unwrap(), Some(1));
        assert_eq!(weak_order(0, 8).unwrap(), Some(1));
        assert_eq!(weak_order_by_search(2, 7).unwrap(), Some(3));
        assert_eq!(weak_order_by_search(4, 8).unwrap(), None);
    }

    #[test]
    fn weak_order_routes_agree() {
        for n in 2..=400u64 {
            for a in 1..=n {
                assert_eq!(
                    weak_order(a as i128, n).unwrap(),
                    weak_order_by_search(a as i128, n).unwrap(),
                    "a={a} n={n}"
                );
            }
        }
    }

    #[test]
    fn weak_order_large_modulus() {
        // the order of a unit divides p - 1
        let p = 1_000_003u64;
        let k = weak_order(2, p).unwrap().unwrap();
        assert_eq!((p - 1) % k, 0);
        assert_eq!(pow_mod(2, k, p), 1);
    }

    #[test]
    fn closure_under_multiplication() {
        for n in 1..=100u64 {
            let reg = enumerate_regular(n).unwrap();
            for &a in &reg {
                for &b in &reg {
                    let c = reduce_residue((a * b) as i128, n);
                    assert!(reg.binary_search(&c).is_ok(), "n={n} a={a} b={b}");
                }
            }
        }
    }
}
