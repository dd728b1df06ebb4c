//! Locale-independent CSV rendering for tables, sweeps and constants.

use std::io::{self, Write};

use crate::asymptotics::{ConstantEstimate, PartialSumRow};
use crate::extremal::ExtremalSample;
use crate::sieve::ArithmeticTable;

pub const SIEVE_HEADER: &str = "n,spf,phi,rho";
pub const SUMS_HEADER: &str =
    "x,sum_rho,sum_rho_over_phi,sum_phi_over_rho,sum_recip_rho,err_rho,err_B,err_C,err_D";
pub const CONSTANTS_HEADER: &str = "name,value,lower,upper,cutoff,method";
pub const EXTREMAL_HEADER: &str = "y,log_n,ratio,limit,deviation";

/// Formats a real with 15 significant digits.
///
/// Plain decimal notation for magnitudes in `[1e-5, 1e15)`, scientific
/// otherwise.
///
/// ```
/// assert_eq!(regint::csv::format_real(0.0), "0");
/// assert_eq!(regint::csv::format_real(1.5), "1.50000000000000");
/// assert_eq!(regint::csv::format_real(-0.000123), "-0.000123000000000000");
/// assert_eq!(regint::csv::format_real(2.5e20), "2.50000000000000e20");
/// ```
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs();
    if (1e-5..1e15).contains(&mag) {
        let exponent = mag.log10().floor() as i32;
        let decimals = (14 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    }
}

pub fn write_sieve<W: Write>(out: &mut W, table: &ArithmeticTable) -> io::Result<()> {
    writeln!(out, "{SIEVE_HEADER}")?;
    for r in table.rows() {
        writeln!(out, "{},{},{},{}", r.n, r.spf, r.phi, r.rho)?;
    }
    Ok(())
}

pub fn write_sums<W: Write>(out: &mut W, rows: &[PartialSumRow]) -> io::Result<()> {
    writeln!(out, "{SUMS_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.x,
            r.sum_rho,
            format_real(r.sum_rho_over_phi),
            format_real(r.sum_phi_over_rho),
            format_real(r.sum_recip_rho),
            format_real(r.err_rho),
            format_real(r.err_b),
            format_real(r.err_c),
            format_real(r.err_d),
        )?;
    }
    Ok(())
}

pub fn write_constants<W: Write>(out: &mut W, constants: &[ConstantEstimate]) -> io::Result<()> {
    writeln!(out, "{CONSTANTS_HEADER}")?;
    for c in constants {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            c.name,
            format_real(c.value),
            format_real(c.lower),
            format_real(c.upper),
            c.prime_cutoff,
            c.method,
        )?;
    }
    Ok(())
}

pub fn write_extremal<W: Write>(out: &mut W, samples: &[ExtremalSample]) -> io::Result<()> {
    writeln!(out, "{EXTREMAL_HEADER}")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{},{}",
            s.y,
            format_real(s.log_n),
            format_real(s.ratio),
            format_real(s.limit),
            format_real(s.deviation),
        )?;
    }
    Ok(())
}
