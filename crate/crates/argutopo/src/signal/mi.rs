//! Delay selection from lagged mutual information.

use super::{Selection, TimeSeries};
use crate::error::{Error, Result};

/// Mutual information (in nats) between `z_n` and `z_{n+lag}`, estimated
/// from a `bins x bins` equal-width histogram. Both axes use the full-series
/// range, so the estimate is deterministic and symmetric in the lag sign.
pub fn mutual_information(series: &TimeSeries, lag: usize, bins: usize) -> Result<f64> {
    let n = series.len();
    if bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "histogram needs at least 2 bins, got {bins}"
        )));
    }
    if n < 2 {
        return Err(Error::SeriesTooShort {
            n,
            dim: 1,
            tau: lag.max(1),
            need: 2,
        });
    }
    if lag >= n {
        return Err(Error::InvalidParameter(format!(
            "lag {lag} out of range for a series of length {n}"
        )));
    }
    let z = series.values();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in z {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi <= lo {
        return Err(Error::ZeroVariance(
            "series is constant; mutual information is undefined".into(),
        ));
    }

    let bin_of = |v: f64| -> usize {
        let idx = ((v - lo) / (hi - lo) * bins as f64) as usize;
        idx.min(bins - 1)
    };
    let pairs = n - lag;
    let mut joint = vec![0u64; bins * bins];
    for i in 0..pairs {
        joint[bin_of(z[i]) * bins + bin_of(z[i + lag])] += 1;
    }
    let mut row = vec![0u64; bins];
    let mut col = vec![0u64; bins];
    for x in 0..bins {
        for y in 0..bins {
            let c = joint[x * bins + y];
            row[x] += c;
            col[y] += c;
        }
    }

    let total = pairs as f64;
    let mut mi = 0.0;
    for x in 0..bins {
        for y in 0..bins {
            let c = joint[x * bins + y];
            if c == 0 {
                continue;
            }
            let pxy = c as f64 / total;
            let px = row[x] as f64 / total;
            let py = col[y] as f64 / total;
            mi += pxy * (pxy / (px * py)).ln();
        }
    }
    Ok(mi.max(0.0))
}

/// Picks the first local minimum of lagged mutual information: the smallest
/// `tau` where `MI(tau) < MI(tau+1)`. Plateaus are scanned past. If MI never
/// turns upward the largest scanned lag is returned with a warning.
pub fn select_delay_mi(
    series: &TimeSeries,
    max_lag: Option<usize>,
    bins: usize,
) -> Result<Selection> {
    let n = series.len();
    if n < 3 {
        return Err(Error::SeriesTooShort {
            n,
            dim: 1,
            tau: 1,
            need: 3,
        });
    }
    let max_lag = max_lag.unwrap_or(n / 2).clamp(1, n - 1);
    let mut prev = mutual_information(series, 1, bins)?;
    for lag in 1..max_lag {
        let next = mutual_information(series, lag + 1, bins)?;
        if prev < next {
            return Ok(Selection {
                value: lag,
                method: "mi".into(),
                warnings: Vec::new(),
            });
        }
        prev = next;
    }
    Ok(Selection {
        value: max_lag,
        method: "mi".into(),
        warnings: vec![format!(
            "mutual information never turned upward up to lag {max_lag}; using {max_lag}"
        )],
    })
}
