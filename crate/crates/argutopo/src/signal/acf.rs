//! Delay selection from the autocorrelation function.

use super::{Selection, TimeSeries};
use crate::error::{Error, Result};

/// Sample autocorrelation at the given lag.
///
/// Deviations from the global mean are correlated over the overlapping
/// window and normalized by the energies of the two lagged segments:
///
/// ```text
/// rho(tau) = sum_{n<N-tau} a_n * a_{n+tau}
///            / sqrt(sum_{n<N-tau} a_n^2 * sum_{n>=tau} a_n^2),   a_n = z_n - mean
/// ```
///
/// so `rho(0) == 1` and `|rho| <= 1` by Cauchy-Schwarz.
pub fn autocorrelation(series: &TimeSeries, lag: usize) -> Result<f64> {
    let n = series.len();
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
    let mean = series.mean();
    let total_energy: f64 = z.iter().map(|v| (v - mean) * (v - mean)).sum();
    if total_energy <= 0.0 {
        return Err(Error::ZeroVariance(
            "series is constant; autocorrelation is undefined".into(),
        ));
    }
    if lag == 0 {
        return Ok(1.0);
    }

    let m = n - lag;
    let mut cross = 0.0;
    let mut head = 0.0;
    let mut tail = 0.0;
    for i in 0..m {
        let a = z[i] - mean;
        let b = z[i + lag] - mean;
        cross += a * b;
        head += a * a;
        tail += b * b;
    }
    let denom = (head * tail).sqrt();
    if denom <= 0.0 {
        return Err(Error::ZeroVariance(format!(
            "lagged segment at lag {lag} has zero variance"
        )));
    }
    Ok(cross / denom)
}

/// Picks the first lag whose autocorrelation drops below `1/e`.
///
/// Lags `1..=max_lag` are scanned in order (`max_lag` defaults to `N/2` and
/// is clamped to `N-1`). If no lag crosses the threshold the largest
/// scanned lag is returned with a warning.
pub fn select_delay_acf(series: &TimeSeries, max_lag: Option<usize>) -> Result<Selection> {
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
    let threshold = 1.0 / std::f64::consts::E;
    for lag in 1..=max_lag {
        if autocorrelation(series, lag)? < threshold {
            return Ok(Selection {
                value: lag,
                method: "acf".into(),
                warnings: Vec::new(),
            });
        }
    }
    Ok(Selection {
        value: max_lag,
        method: "acf".into(),
        warnings: vec![format!(
            "autocorrelation never dropped below 1/e up to lag {max_lag}; using {max_lag}"
        )],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new(values).unwrap()
    }

    fn sine(n: usize, period: f64) -> TimeSeries {
        series(
            (0..n)
                .map(|i| (2.0 * std::f64::consts::PI * i as f64 / period).sin())
                .collect(),
        )
    }

    #[test]
    fn lag_zero_is_exactly_one() {
        let z = series(vec![0.3, -1.2, 4.5, 0.0, 2.2]);
        assert_eq!(autocorrelation(&z, 0).unwrap(), 1.0);
    }

    #[test]
    fn alternating_series_has_correlation_minus_one_at_lag_one() {
        let z = series((0..64).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect());
        let rho = autocorrelation(&z, 1).unwrap();
        assert!((rho + 1.0).abs() <= 1e-9, "rho = {rho}");
    }

    #[test]
    fn sine_matches_cosine_of_phase() {
        let z = sine(200, 40.0);
        for lag in [1usize, 5, 8, 10, 13, 20] {
            let rho = autocorrelation(&z, lag).unwrap();
            let expected = (2.0 * std::f64::consts::PI * lag as f64 / 40.0).cos();
            assert!(
                (rho - expected).abs() <= 0.05,
                "lag {lag}: rho = {rho}, expected ~{expected}"
            );
        }
    }

    #[test]
    fn magnitude_never_exceeds_one() {
        let z = series(vec![10.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 10.0]);
        for lag in 0..z.len() {
            let rho = autocorrelation(&z, lag).unwrap();
            assert!(rho.abs() <= 1.0 + 1e-9, "lag {lag}: rho = {rho}");
        }
    }

    #[test]
    fn constant_series_is_rejected() {
        let z = series(vec![2.0; 10]);
        assert!(matches!(
            autocorrelation(&z, 1),
            Err(Error::ZeroVariance(_))
        ));
    }

    #[test]
    fn lag_out_of_range_is_rejected() {
        let z = series(vec![1.0, 2.0, 3.0]);
        assert!(autocorrelation(&z, 3).is_err());
    }

    #[test]
    fn selects_first_crossing_on_the_sine() {
        let z = sine(200, 40.0);
        let sel = select_delay_acf(&z, None).unwrap();
        assert_eq!(sel.value, 8);
        assert_eq!(sel.method, "acf");
        assert!(sel.warnings.is_empty());
    }

    #[test]
    fn monotone_series_falls_back_with_warning() {
        let z = series((0..20).map(f64::from).collect());
        let sel = select_delay_acf(&z, Some(4)).unwrap();
        assert_eq!(sel.value, 4);
        assert_eq!(sel.warnings.len(), 1);
    }
}
