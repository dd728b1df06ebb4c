//! Partial sums of `rho`, `rho/phi`, `phi/rho` and `1/rho` with their error
//! terms against the main terms `A x^2/2`, `B x`, `C x` and `D log x + E`.

use std::thread;

use crate::error::{domain, Result};
use crate::sieve::ArithmeticTable;
use crate::summation::CompensatedSum;

use super::constants::{constant_a, constant_b, constant_c, constant_d};

/// Main-term coefficients used to form the error columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTerms {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl MainTerms {
    /// Coefficients from the Euler products at the given cutoff; `e` starts at 0
    /// and is normally refitted with [`super::estimate_e`].
    pub fn from_constants(cutoff: u64, k: u32, nu_max: u32) -> Result<Self> {
        Ok(Self {
            a: constant_a(cutoff)?.value,
            b: constant_b().value,
            c: constant_c(cutoff, k)?.value,
            d: constant_d(cutoff, nu_max)?.value,
            e: 0.0,
        })
    }

    pub fn with_e(self, e: f64) -> Self {
        Self { e, ..self }
    }
}

/// Accumulated sums at a checkpoint `x` and their error terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSumRow {
    pub x: u64,
    pub sum_rho: u128,
    pub sum_rho_over_phi: f64,
    pub sum_phi_over_rho: f64,
    pub sum_recip_rho: f64,
    /// `sum_rho - (A/2) x^2`
    pub err_rho: f64,
    /// `sum_rho_over_phi - B x`
    pub err_b: f64,
    /// `sum_phi_over_rho - C x`
    pub err_c: f64,
    /// `sum_recip_rho - (D log x + E)`
    pub err_d: f64,
}

impl PartialSumRow {
    fn from_sums(x: u64, acc: &Accumulator, terms: &MainTerms) -> Self {
        let mut row = Self {
            x,
            sum_rho: acc.rho,
            sum_rho_over_phi: acc.rho_over_phi.value(),
            sum_phi_over_rho: acc.phi_over_rho.value(),
            sum_recip_rho: acc.recip_rho.value(),
            err_rho: 0.0,
            err_b: 0.0,
            err_c: 0.0,
            err_d: 0.0,
        };
        row.apply_main_terms(terms);
        row
    }

    /// Recomputes the error columns against new main terms.
    pub fn apply_main_terms(&mut self, terms: &MainTerms) {
        let x = self.x as f64;
        self.err_rho = self.sum_rho as f64 - 0.5 * terms.a * x * x;
        self.err_b = self.sum_rho_over_phi - terms.b * x;
        self.err_c = self.sum_phi_over_rho - terms.c * x;
        self.err_d = self.sum_recip_rho - (terms.d * x.ln() + terms.e);
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    rho: u128,
    rho_over_phi: CompensatedSum,
    phi_over_rho: CompensatedSum,
    recip_rho: CompensatedSum,
}

impl Accumulator {
    #[inline]
    fn push(&mut self, phi: u64, rho: u64) {
        let (phi_f, rho_f) = (phi as f64, rho as f64);
        self.rho += rho as u128;
        self.rho_over_phi += rho_f / phi_f;
        self.phi_over_rho += phi_f / rho_f;
        self.recip_rho += 1.0 / rho_f;
    }

    fn merge(&mut self, other: &Accumulator) {
        self.rho += other.rho;
        self.rho_over_phi.merge(&other.rho_over_phi);
        self.phi_over_rho.merge(&other.phi_over_rho);
        self.recip_rho.merge(&other.recip_rho);
    }
}

fn check_checkpoints(table: &ArithmeticTable, checkpoints: &[u64]) -> Result<()> {
    if checkpoints.is_empty() {
        return domain("at least one checkpoint is required");
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return domain("checkpoints must be positive and strictly ascending");
    }
    let last = *checkpoints.last().unwrap();
    if last > table.max_n() {
        return domain(format!(
            "checkpoint {last} exceeds the table bound {}",
            table.max_n()
        ));
    }
    Ok(())
}

/// Sums over `n <= x` for every checkpoint `x`, in one pass over the table.
///
/// ```
/// use regint::{partial_sums, sieve_table, MainTerms};
/// let table = sieve_table(30).unwrap();
/// let terms = MainTerms { a: 0.0, b: 0.0, c: 0.0, d: 0.0, e: 0.0 };
/// let rows = partial_sums(&table, &[1, 12, 30], &terms).unwrap();
/// assert_eq!(rows[0].sum_rho, 1);
/// assert_eq!(rows[1].sum_rho, 1 + 2 + 3 + 3 + 5 + 6 + 7 + 5 + 7 + 10 + 11 + 9);
/// ```
pub fn partial_sums(
    table: &ArithmeticTable,
    checkpoints: &[u64],
    terms: &MainTerms,
) -> Result<Vec<PartialSumRow>> {
    check_checkpoints(table, checkpoints)?;
    let mut acc = Accumulator::default();
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for (n, (phi, rho)) in (1u64..).zip(table.phi_rho()) {
        acc.push(phi, rho);
        if next.peek() == Some(&&n) {
            rows.push(PartialSumRow::from_sums(n, &acc, terms));
            next.next();
            if next.peek().is_none() {
                break;
            }
        }
    }
    Ok(rows)
}

/// Same result as [`partial_sums`], with `[1, max checkpoint]` split into
/// contiguous chunks summed on separate threads and merged in order.
pub fn partial_sums_chunked(
    table: &ArithmeticTable,
    checkpoints: &[u64],
    terms: &MainTerms,
    chunks: usize,
) -> Result<Vec<PartialSumRow>> {
    check_checkpoints(table, checkpoints)?;
    let max_x = *checkpoints.last().unwrap();
    let chunks = chunks.clamp(1, max_x as usize);
    let step = max_x.div_ceil(chunks as u64);
    let bounds: Vec<(u64, u64)> = (0..chunks as u64)
        .map(|i| (i * step + 1, ((i + 1) * step).min(max_x)))
        .filter(|(lo, hi)| lo <= hi)
        .collect();

    // each chunk: local sums at the checkpoints it contains, plus its total
    let partials: Vec<(Vec<(u64, Accumulator)>, Accumulator)> = thread::scope(|s| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| {
                s.spawn(move || {
                    let mut acc = Accumulator::default();
                    let mut marks = Vec::new();
                    let start = checkpoints.partition_point(|&c| c < lo);
                    let mut next = checkpoints[start..]
                        .iter()
                        .take_while(|&&c| c <= hi)
                        .peekable();
                    for n in lo..=hi {
                        acc.push(table.phi(n), table.rho(n));
                        if next.peek() == Some(&&n) {
                            marks.push((n, acc));
                            next.next();
                        }
                    }
                    (marks, acc)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("partial-sum worker panicked"))
            .collect()
    });

    let mut prefix = Accumulator::default();
    let mut rows = Vec::with_capacity(checkpoints.len());
    for (marks, total) in partials {
        for (x, local) in marks {
            let mut at = prefix;
            at.merge(&local);
            rows.push(PartialSumRow::from_sums(x, &at, terms));
        }
        prefix.merge(&total);
    }
    Ok(rows)
}

/// Checkpoints `1000 * 2^j` together with the powers of ten, up to `max_x`,
/// always ending at `max_x`.
pub fn default_checkpoints(max_x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 1u64;
    while p <= max_x {
        out.push(p);
        p = match p.checked_mul(10) {
            Some(q) => q,
            None => break,
        };
    }
    let mut q = 1000u64;
    while q <= max_x {
        out.push(q);
        q = match q.checked_mul(2) {
            Some(r) => r,
            None => break,
        };
    }
    if max_x >= 1 {
        out.push(max_x);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Running maxima of the normalized error terms over `x <= scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEnvelope {
    pub scale: u64,
    /// `max |R(x)| / (x log x)` over `2 <= x <= scale`.
    pub rho: f64,
    /// `max |err_B(x)| / log^2 x` over `2 <= x <= scale`.
    pub b: f64,
    /// `max |err_C(x)| / ((log x)^(5/3) (log log x)^(4/3))` over `16 <= x <= scale`.
    pub c: f64,
}

/// Scans every `x` up to the largest scale and reports the running maxima at each scale.
pub fn error_envelopes(
    table: &ArithmeticTable,
    scales: &[u64],
    terms: &MainTerms,
) -> Result<Vec<ErrorEnvelope>> {
    check_checkpoints(table, scales)?;
    let mut acc = Accumulator::default();
    let (mut rho_max, mut b_max, mut c_max) = (0.0f64, 0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(scales.len());
    let mut next = scales.iter().peekable();
    for (n, (phi, rho)) in (1u64..).zip(table.phi_rho()) {
        acc.push(phi, rho);
        if n >= 2 {
            let x = n as f64;
            let lx = x.ln();
            let r = acc.rho as f64 - 0.5 * terms.a * x * x;
            rho_max = rho_max.max(r.abs() / (x * lx));
            b_max = b_max.max((acc.rho_over_phi.value() - terms.b * x).abs() / (lx * lx));
            if n >= 16 {
                let scale = lx.powf(5.0 / 3.0) * lx.ln().powf(4.0 / 3.0);
                c_max = c_max.max((acc.phi_over_rho.value() - terms.c * x).abs() / scale);
            }
        }
        if next.peek() == Some(&&n) {
            out.push(ErrorEnvelope {
                scale: n,
                rho: rho_max,
                b: b_max,
                c: c_max,
            });
            next.next();
            if next.peek().is_none() {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::sieve_table;

    fn zero_terms() -> MainTerms {
        MainTerms {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
            e: 0.0,
        }
    }

    #[test]
    fn first_row() {
        let t = sieve_table(10).unwrap();
        let r = partial_sums(&t, &[1], &zero_terms()).unwrap()[0];
        assert_eq!(r.sum_rho, 1);
        assert_eq!(r.sum_rho_over_phi, 1.0);
        assert_eq!(r.sum_phi_over_rho, 1.0);
        assert_eq!(r.sum_recip_rho, 1.0);
    }

    #[test]
    fn matches_naive_loop() {
        let t = sieve_table(1000).unwrap();
        let terms = MainTerms::from_constants(10_000, 30, 60).unwrap();
        let cps: Vec<u64> = (1..=1000).collect();
        let rows = partial_sums(&t, &cps, &terms).unwrap();
        let mut naive = 0.0f64;
        for (x, row) in (1..=1000u64).zip(&rows) {
            let f = crate::arith::factor(x).unwrap();
            naive += f.rho() as f64 / f.euler_phi() as f64;
            let err_b = naive - terms.b * x as f64;
            assert!((row.err_b - err_b).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn sums_monotone_and_bounded() {
        let t = sieve_table(20_000).unwrap();
        let rows = partial_sums(&t, &default_checkpoints(20_000), &zero_terms()).unwrap();
        for w in rows.windows(2) {
            assert!(w[0].sum_rho <= w[1].sum_rho);
            assert!(w[0].sum_rho_over_phi <= w[1].sum_rho_over_phi);
            assert!(w[0].sum_phi_over_rho <= w[1].sum_phi_over_rho);
            assert!(w[0].sum_recip_rho <= w[1].sum_recip_rho);
        }
        for r in &rows {
            assert!(r.sum_phi_over_rho <= r.x as f64);
        }
    }

    #[test]
    fn chunked_equals_single_pass() {
        let t = sieve_table(100_000).unwrap();
        let terms = MainTerms::from_constants(1000, 30, 60).unwrap();
        let cps = default_checkpoints(100_000);
        let single = partial_sums(&t, &cps, &terms).unwrap();
        for chunks in [1, 3, 8, 1000] {
            let multi = partial_sums_chunked(&t, &cps, &terms, chunks).unwrap();
            assert_eq!(multi.len(), single.len());
            for (a, b) in single.iter().zip(&multi) {
                assert_eq!(a.x, b.x);
                assert_eq!(a.sum_rho, b.sum_rho);
                assert!((a.sum_rho_over_phi - b.sum_rho_over_phi).abs() < 1e-9);
                assert!((a.sum_phi_over_rho - b.sum_phi_over_rho).abs() < 1e-9);
                assert!((a.sum_recip_rho - b.sum_recip_rho).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn checkpoint_validation() {
        let t = sieve_table(100).unwrap();
        let z = zero_terms();
        assert!(partial_sums(&t, &[], &z).is_err());
        assert!(partial_sums(&t, &[0, 5], &z).is_err());
        assert!(partial_sums(&t, &[5, 5], &z).is_err());
        assert!(partial_sums(&t, &[10, 5], &z).is_err());
        assert!(partial_sums(&t, &[101], &z).is_err());
    }

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(default_checkpoints(1), vec![1]);
        assert_eq!(
            default_checkpoints(10_000),
            vec![1, 10, 100, 1000, 2000, 4000, 8000, 10_000]
        );
        let cps = default_checkpoints(1_000_000);
        assert_eq!(cps.last(), Some(&1_000_000));
        assert!(cps.contains(&512_000));
    }

    #[test]
    fn envelope_is_running_max() {
        let t = sieve_table(10_000).unwrap();
        let terms = MainTerms::from_constants(1000, 30, 60).unwrap();
        let env = error_envelopes(&t, &[100, 1000, 10_000], &terms).unwrap();
        assert_eq!(env.len(), 3);
        for w in env.windows(2) {
            assert!(w[0].rho <= w[1].rho && w[0].b <= w[1].b && w[0].c <= w[1].c);
        }
    }
}
