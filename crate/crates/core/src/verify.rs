//! Self-verification suites: every characterization and identity checked
//! against an independent route over a range of `n`.

use std::fmt;

use crate::arith::factor;
use crate::asymptotics::{verify_identities_with, IDENTITY_LIMIT};
use crate::error::{Error, Result};
use crate::extremal::squarefree_flags;
use crate::regular::{check_regularity, enumerate_regular, rho_via_unitary_sum};
use crate::sieve::{ArithmeticTable, MAX_SIEVE};

/// The definitional search makes this suite cubic in `n`.
pub const EQUIVALENCE_LIMIT: u64 = 300;
pub const REGULAR_SUM_LIMIT: u64 = 5_000;
pub const RHO_ROUTES_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    /// Largest `n` the suite covered.
    pub limit: u64,
    pub first_failure: Option<u64>,
    pub detail: String,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    fn new(
        name: &'static str,
        limit: u64,
        first_failure: Option<u64>,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name,
            limit,
            first_failure,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure {
            None => write!(f, "PASS  {:<18} n <= {}", self.name, self.limit),
            Some(n) => write!(
                f,
                "FAIL  {:<18} n <= {}: first failing n = {} ({})",
                self.name, self.limit, n, self.detail
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub n_max: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let verdict = if self.passed() {
            "all suites passed"
        } else {
            "verification FAILED"
        };
        write!(f, "{verdict} (n_max = {})", self.n_max)
    }
}

/// Sieved table against pointwise factorization.
pub fn table_suite(table: &ArithmeticTable, n_max: u64) -> Result<SuiteResult> {
    for n in 1..=n_max {
        let f = factor(n)?;
        if table.phi(n) != f.euler_phi() || table.rho(n) != f.rho() {
            return Ok(SuiteResult::new(
                "table",
                n_max,
                Some(n),
                format!(
                    "table has phi={}, rho={}; pointwise phi={}, rho={}",
                    table.phi(n),
                    table.rho(n),
                    f.euler_phi(),
                    f.rho()
                ),
            ));
        }
    }
    Ok(SuiteResult::new("table", n_max, None, ""))
}

/// All six characterizations agree for every `a` in `[1, n]`, `2 <= n <= limit`.
pub fn equivalence_suite(limit: u64) -> Result<SuiteResult> {
    for n in 2..=limit {
        for a in 1..=n {
            match check_regularity(a as i128, n) {
                Ok(_) => {}
                Err(Error::Inconsistent(msg)) => {
                    return Ok(SuiteResult::new("equivalence", limit, Some(n), msg))
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(SuiteResult::new("equivalence", limit, None, ""))
}

/// `rho` from the table, from the unitary-divisor sum and from counting `Reg_n`.
pub fn rho_routes_suite(table: &ArithmeticTable, limit: u64) -> Result<SuiteResult> {
    for n in 1..=limit {
        let counted = enumerate_regular(n)?.len() as u64;
        let unitary = rho_via_unitary_sum(n)?;
        let tabled = table.rho(n);
        if counted != unitary || unitary != tabled {
            return Ok(SuiteResult::new(
                "rho-routes",
                limit,
                Some(n),
                format!("|Reg_n|={counted}, unitary sum={unitary}, table={tabled}"),
            ));
        }
    }
    Ok(SuiteResult::new("rho-routes", limit, None, ""))
}

/// `n (rho(n) + 1) / 2` against the direct sum of `Reg_n`.
pub fn regular_sum_suite(table: &ArithmeticTable, limit: u64) -> Result<SuiteResult> {
    for n in 1..=limit {
        let formula = n as u128 * (table.rho(n) as u128 + 1) / 2;
        let direct: u128 = enumerate_regular(n)?.iter().map(|&a| a as u128).sum();
        if formula != direct {
            return Ok(SuiteResult::new(
                "regular-sum",
                limit,
                Some(n),
                format!("formula {formula} vs direct {direct}"),
            ));
        }
    }
    Ok(SuiteResult::new("regular-sum", limit, None, ""))
}

pub fn identity_suite(table: &ArithmeticTable, limit: u64) -> Result<SuiteResult> {
    let rep = verify_identities_with(table, limit)?;
    Ok(match rep.first_failure {
        None => SuiteResult::new("identities", limit, None, ""),
        Some((which, n)) => SuiteResult::new("identities", limit, Some(n), format!("{which:?}")),
    })
}

/// First `n` in `[1, n_max]` violating parity, `sqrt(n) <= rho(n) <= n`,
/// `phi(n) < rho(n)` (for `n > 1`), or `rho(n) = n <=> n squarefree`.
pub fn parity_bounds_failure(table: &ArithmeticTable, n_max: u64) -> Option<(u64, &'static str)> {
    let squarefree = squarefree_flags(n_max);
    for n in 1..=n_max {
        let (phi, rho) = (table.phi(n), table.rho(n));
        if (rho % 2 == 0) != (n % 4 == 2) {
            return Some((n, "parity"));
        }
        if (rho as u128) * (rho as u128) < n as u128 || rho > n {
            return Some((n, "sqrt(n) <= rho(n) <= n"));
        }
        if n > 1 && phi >= rho {
            return Some((n, "phi(n) < rho(n)"));
        }
        if (rho == n) != squarefree[n as usize] {
            return Some((n, "rho(n) = n iff squarefree"));
        }
    }
    None
}

pub fn parity_bounds_suite(table: &ArithmeticTable, n_max: u64) -> SuiteResult {
    match parity_bounds_failure(table, n_max) {
        None => SuiteResult::new("parity-bounds", n_max, None, ""),
        Some((n, what)) => SuiteResult::new("parity-bounds", n_max, Some(n), what),
    }
}

/// Runs every suite against `table`, each capped at its own limit.
pub fn run_verification_on(table: &ArithmeticTable, n_max: u64) -> Result<VerifyReport> {
    let n_max = n_max.min(table.max_n());
    let suites = vec![
        table_suite(table, n_max)?,
        equivalence_suite(n_max.min(EQUIVALENCE_LIMIT))?,
        rho_routes_suite(table, n_max.min(RHO_ROUTES_LIMIT))?,
        regular_sum_suite(table, n_max.min(REGULAR_SUM_LIMIT))?,
        identity_suite(table, n_max.min(IDENTITY_LIMIT))?,
        parity_bounds_suite(table, n_max),
    ];
    Ok(VerifyReport { n_max, suites })
}

/// Sieves `[1, n_max]` and runs every suite.
pub fn run_verification(n_max: u64) -> Result<VerifyReport> {
    if n_max == 0 || n_max > MAX_SIEVE {
        return Err(Error::Domain(format!("n_max must lie in [1, {MAX_SIEVE}]")));
    }
    let table = ArithmeticTable::build(n_max)?;
    run_verification_on(&table, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run() {
        let rep = run_verification(200).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.suites.len(), 6);
        assert!(rep.to_string().ends_with("all suites passed (n_max = 200)"));
    }

    #[test]
    fn corrupted_table_reports_first_failure() {
        let table = ArithmeticTable::build(200).unwrap().with_corrupted_rho(72);
        let rep = run_verification_on(&table, 200).unwrap();
        assert!(!rep.passed());
        let table_suite = &rep.suites[0];
        assert_eq!(table_suite.first_failure, Some(72));
        assert!(rep.to_string().contains("first failing n = 72"));
        // suites that never look at the table still pass
        assert!(rep.suites[1].passed());
    }

    #[test]
    fn parity_bounds_small() {
        let table = ArithmeticTable::build(10_000).unwrap();
        assert_eq!(parity_bounds_failure(&table, 10_000), None);
        let bad = table.with_corrupted_rho(10);
        assert_eq!(parity_bounds_failure(&bad, 10_000), Some((10, "parity")));
    }

    #[test]
    fn rejects_zero() {
        assert!(run_verification(0).is_err());
    }
}
