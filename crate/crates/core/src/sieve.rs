//! Batch evaluation of `spf`, `phi` and `rho` over `[1, N]` with a linear sieve.

use crate::error::{domain, Error, Result};

/// Largest table the sieve will build.
pub const MAX_SIEVE: u64 = 100_000_000;

/// One row of an [`ArithmeticTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    /// Smallest prime factor; 1 for `n = 1`.
    pub spf: u64,
    pub phi: u64,
    pub rho: u64,
}

/// Sieved columns `(spf, phi, rho)` for every `n` in `[1, max_n]`.
///
/// Index 0 is unused so that `n` addresses its own slot.
#[derive(Debug, Clone)]
pub struct ArithmeticTable {
    spf: Vec<u32>,
    phi: Vec<u32>,
    rho: Vec<u32>,
}

fn zeroed(len: usize, what: &str) -> Result<Vec<u32>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|e| Error::Resource(format!("cannot allocate {what} column of {len}: {e}")))?;
    v.resize(len, 0);
    Ok(v)
}

impl ArithmeticTable {
    /// Builds the table in one pass.
    ///
    /// The linear sieve assigns every composite its smallest prime factor
    /// exactly once; `phi` and `rho` then follow from `f(n) = f(m) f(p^k)`
    /// where `p^k` is the exact power of `spf(n)` in `n` and `m < n`.
    pub fn build(max_n: u64) -> Result<Self> {
        if max_n == 0 {
            return domain("sieve bound must be at least 1");
        }
        if max_n > MAX_SIEVE {
            return domain(format!("sieve bound {max_n} exceeds {MAX_SIEVE}"));
        }
        let len = max_n as usize + 1;
        let mut spf = zeroed(len, "spf")?;
        let mut phi = zeroed(len, "phi")?;
        let mut rho = zeroed(len, "rho")?;
        let mut primes: Vec<u32> = Vec::new();

        spf[1] = 1;
        phi[1] = 1;
        rho[1] = 1;
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p;
            }

            let p = si as usize;
            let mut m = i / p;
            let mut q = p;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            let phi_q = (q - q / p) as u32;
            phi[i] = phi[m] * phi_q;
            rho[i] = rho[m] * (phi_q + 1);
        }
        Ok(Self { spf, phi, rho })
    }

    pub fn max_n(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    fn index(&self, n: u64) -> usize {
        assert!(
            n >= 1 && n <= self.max_n(),
            "n = {n} outside table [1, {}]",
            self.max_n()
        );
        n as usize
    }

    pub fn spf(&self, n: u64) -> u64 {
        self.spf[self.index(n)] as u64
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[self.index(n)] as u64
    }

    pub fn rho(&self, n: u64) -> u64 {
        self.rho[self.index(n)] as u64
    }

    pub fn row(&self, n: u64) -> TableRow {
        let i = self.index(n);
        TableRow {
            n,
            spf: self.spf[i] as u64,
            phi: self.phi[i] as u64,
            rho: self.rho[i] as u64,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        (1..=self.max_n()).map(move |n| self.row(n))
    }

    /// `(phi(n), rho(n))` for `n = 1..=max_n`, in order.
    pub fn phi_rho(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.phi[1..]
            .iter()
            .zip(&self.rho[1..])
            .map(|(&f, &r)| (f as u64, r as u64))
    }

    /// Copy of the table with `rho(n)` bumped by one. Used to exercise the
    /// failure path of the verification suites.
    #[doc(hidden)]
    pub fn with_corrupted_rho(&self, n: u64) -> Self {
        let mut out = self.clone();
        let i = out.index(n);
        out.rho[i] += 1;
        out
    }
}

/// Convenience wrapper for [`ArithmeticTable::build`].
pub fn sieve_table(max_n: u64) -> Result<ArithmeticTable> {
    ArithmeticTable::build(max_n)
}
