//! Dyadic-envelope log–log regression.
//!
//! Oscillating error terms are summarized by the supremum of |error| over
//! windows [2^j, 2^{j+1}); the envelope exponent is the least-squares slope
//! of ln(sup) against ln(window midpoint). Windows whose supremum is zero
//! carry no information on a log scale and are dropped.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Result of an envelope regression.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the regression in log space.
    pub residual: f64,
    /// Number of usable windows.
    pub windows: usize,
}

/// Ordinary least squares y = slope·x + intercept; returns RMS residual too.
pub fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Envelope fit over (x, |error|) samples with x ≥ 1.
///
/// Window j collects samples with ⌊log₂ x⌋ = j; its abscissa is the midpoint
/// of the x-values actually covered. At least four usable (nonzero-supremum)
/// windows are required.
pub fn envelope_fit(points: &[(f64, f64)]) -> Result<EnvelopeFit> {
    // window -> (sup |e|, min x, max x)
    let mut windows: BTreeMap<i32, (f64, f64, f64)> = BTreeMap::new();
    for &(x, e) in points {
        if !(x >= 1.0) {
            continue;
        }
        let j = x.log2().floor() as i32;
        let a = e.abs();
        windows
            .entry(j)
            .and_modify(|(sup, lo, hi)| {
                if a > *sup {
                    *sup = a;
                }
                if x < *lo {
                    *lo = x;
                }
                if x > *hi {
                    *hi = x;
                }
            })
            .or_insert((a, x, x));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (_, (sup, lo, hi)) in windows {
        if sup > 0.0 {
            xs.push(((lo + hi) / 2.0).ln());
            ys.push(sup.ln());
        }
    }
    if xs.len() < 4 {
        return Err(Error::InsufficientWindows { got: xs.len() });
    }
    let (slope, intercept, residual) = ols(&xs, &ys);
    Ok(EnvelopeFit {
        slope,
        intercept,
        residual,
        windows: xs.len(),
    })
}
