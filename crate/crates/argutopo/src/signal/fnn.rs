//! Embedding-dimension selection by the false-nearest-neighbor criterion.

use super::{Selection, TimeSeries};
use crate::error::{Error, Result};

/// A neighbor pair is declared false when the next delay coordinate moves
/// the points apart by more than this factor times their current distance.
pub const FNN_RATIO_THRESHOLD: f64 = 10.0;

/// A dimension is accepted once the false-neighbor fraction drops below
/// this value.
pub const FNN_FALSE_FRACTION: f64 = 0.01;

/// Fraction of points whose nearest neighbor at embedding dimension `dim`
/// (delay `tau`) is false under [`FNN_RATIO_THRESHOLD`].
///
/// Only points that extend to dimension `dim + 1` participate. The nearest
/// neighbor is the closest point at a strictly positive distance; points
/// whose every candidate sits at distance zero are left out of the count,
/// and a fully degenerate input yields `0.0`.
pub fn false_neighbor_fraction(series: &TimeSeries, tau: usize, dim: usize) -> Result<f64> {
    let (false_count, evaluated) = count_false_neighbors(series, tau, dim)?;
    if evaluated == 0 {
        return Ok(0.0);
    }
    Ok(false_count as f64 / evaluated as f64)
}

fn count_false_neighbors(series: &TimeSeries, tau: usize, dim: usize) -> Result<(usize, usize)> {
    if tau == 0 || dim == 0 {
        return Err(Error::InvalidParameter(format!(
            "false-neighbor parameters must be positive (got D={dim}, tau={tau})"
        )));
    }
    let n = series.len();
    let extendable = n.saturating_sub(dim * tau);
    if extendable < 2 {
        return Err(Error::SeriesTooShort {
            n,
            dim: dim + 1,
            tau,
            need: 2,
        });
    }
    let z = series.values();

    let mut false_count = 0;
    let mut evaluated = 0;
    for i in 0..extendable {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for j in 0..extendable {
            if j == i {
                continue;
            }
            let mut d2 = 0.0;
            for k in 0..dim {
                let diff = z[i + k * tau] - z[j + k * tau];
                d2 += diff * diff;
            }
            if d2 > 0.0 && d2 < best {
                best = d2;
                best_j = j;
            }
        }
        if best_j == usize::MAX {
            continue;
        }
        evaluated += 1;
        let gap = (z[i + dim * tau] - z[best_j + dim * tau]).abs();
        if gap > FNN_RATIO_THRESHOLD * best.sqrt() {
            false_count += 1;
        }
    }
    Ok((false_count, evaluated))
}

/// Picks the smallest embedding dimension whose false-neighbor fraction is
/// below [`FNN_FALSE_FRACTION`], scanning `1..=max_dim` (default 10).
///
/// Requires the series to support the full scan: `N - max_dim*tau >= 2`.
/// If no dimension passes, the largest scanned dimension is returned with a
/// warning.
pub fn select_dimension_fnn(
    series: &TimeSeries,
    tau: usize,
    max_dim: Option<usize>,
) -> Result<Selection> {
    let max_dim = max_dim.unwrap_or(10);
    if tau == 0 || max_dim == 0 {
        return Err(Error::InvalidParameter(format!(
            "false-neighbor parameters must be positive (got max D={max_dim}, tau={tau})"
        )));
    }
    let n = series.len();
    if n.saturating_sub(max_dim * tau) < 2 {
        return Err(Error::SeriesTooShort {
            n,
            dim: max_dim + 1,
            tau,
            need: 2,
        });
    }

    let mut warnings = Vec::new();
    for dim in 1..=max_dim {
        let (false_count, evaluated) = count_false_neighbors(series, tau, dim)?;
        if evaluated == 0 {
            warnings.push(format!(
                "no neighbor pairs at positive distance for D={dim}; treating as unfolded"
            ));
        }
        let fraction = if evaluated == 0 {
            0.0
        } else {
            false_count as f64 / evaluated as f64
        };
        if fraction < FNN_FALSE_FRACTION {
            return Ok(Selection {
                value: dim,
                method: "fnn".into(),
                warnings,
            });
        }
    }
    warnings.push(format!(
        "false-neighbor fraction never dropped below 1% up to D={max_dim}; using {max_dim}"
    ));
    Ok(Selection {
        value: max_dim,
        method: "fnn".into(),
        warnings,
    })
}
