//! Least-squares fits of `sum 1/rho(n)` against `log x`.

use crate::error::{domain, Result};

use super::sums::PartialSumRow;

/// Straight-line fit `sum_recip_rho ~ slope * log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Empirical constant term of `sum 1/rho(n) - D log x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EEstimate {
    pub e: f64,
    /// Largest minus smallest residual inside the window.
    pub spread: f64,
    pub window_start: u64,
    pub points: usize,
}

fn window(rows: &[PartialSumRow], min_x: u64) -> Result<Vec<(f64, f64)>> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.x >= min_x && r.x > 1)
        .map(|r| ((r.x as f64).ln(), r.sum_recip_rho))
        .collect();
    if pts.len() < 3 {
        return domain(format!(
            "need at least 3 checkpoints with x >= {min_x}, found {}",
            pts.len()
        ));
    }
    Ok(pts)
}

/// Two-parameter regression over the checkpoints with `x >= min_x`.
pub fn fit_log_linear(rows: &[PartialSumRow], min_x: u64) -> Result<LogLinearFit> {
    let pts = window(rows, min_x)?;
    let m = pts.len() as f64;
    let mean_l = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_s = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_l).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_l) * (p.1 - mean_s)).sum();
    if sxx == 0.0 {
        return domain("checkpoints do not spread in log x");
    }
    let slope = sxy / sxx;
    Ok(LogLinearFit {
        slope,
        intercept: mean_s - slope * mean_l,
        points: pts.len(),
    })
}

/// Least-squares intercept of `sum_recip_rho - d log x` with the slope held
/// at `d`, over the checkpoints with `x >= min_x`.
pub fn estimate_e(rows: &[PartialSumRow], d: f64, min_x: u64) -> Result<EEstimate> {
    let pts = window(rows, min_x)?;
    let residuals: Vec<f64> = pts.iter().map(|&(l, s)| s - d * l).collect();
    let e = residuals.iter().sum::<f64>() / residuals.len() as f64;
    let (lo, hi) = residuals
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    Ok(EEstimate {
        e,
        spread: hi - lo,
        window_start: min_x,
        points: pts.len(),
    })
}
