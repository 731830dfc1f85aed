//! Vietoris-Rips persistent homology.

mod diagram;
mod h0;
mod rips;

pub use diagram::{DiagramPoint, PersistenceDiagram};
pub use h0::h0_persistence;
pub use rips::rips_persistence;

use crate::error::{Error, Result};
use crate::signal::PointCloud;

/// Pairwise distances over `n >= 1` points, stored condensed: entry
/// `(i, j)` with `i < j` lives at `i*n - i*(i+1)/2 + (j-i-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    condensed: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a condensed upper triangle. Entries must be finite and
    /// non-negative; the length must be `n*(n-1)/2`.
    pub fn from_condensed(n: usize, condensed: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("distance matrix over zero points".into()));
        }
        let expected = n * (n - 1) / 2;
        if condensed.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "condensed length {} does not match n={n} (expected {expected})",
                condensed.len()
            )));
        }
        if let Some(bad) = condensed.iter().find(|d| !d.is_finite() || **d < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "distances must be finite and non-negative, found {bad}"
            )));
        }
        Ok(DistanceMatrix { n, condensed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.condensed[a * self.n - a * (a + 1) / 2 + (b - a - 1)]
    }

    pub(crate) fn condensed(&self) -> &[f64] {
        &self.condensed
    }
}

/// Euclidean distances between all point pairs of a cloud.
pub fn pairwise_distances(cloud: &PointCloud) -> DistanceMatrix {
    let n = cloud.n_points();
    let mut condensed = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let pi = cloud.point(i);
        for j in (i + 1)..n {
            let pj = cloud.point(j);
            let d2: f64 = pi
                .iter()
                .zip(pj)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            condensed.push(d2.sqrt());
        }
    }
    DistanceMatrix { n, condensed }
}

/// The smallest radius at which some point sees every other point:
/// `min_i max_j d(i, j)`. Beyond it the Rips complex is a cone, so the
/// filtration adds nothing new.
pub fn enclosing_radius(dm: &DistanceMatrix) -> f64 {
    let n = dm.n();
    if n == 1 {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| dm.get(i, j))
                .fold(0.0f64, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condensed_indexing_round_trips() {
        let cloud = PointCloud::from_rows(&[
            vec![0.0, 0.0],
            vec![3.0, 0.0],
            vec![0.0, 4.0],
            vec![3.0, 4.0],
        ])
        .unwrap();
        let dm = pairwise_distances(&cloud);
        assert_eq!(dm.n(), 4);
        assert_eq!(dm.get(0, 1), 3.0);
        assert_eq!(dm.get(0, 2), 4.0);
        assert_eq!(dm.get(0, 3), 5.0);
        assert_eq!(dm.get(1, 2), 5.0);
        assert_eq!(dm.get(2, 3), 3.0);
        assert_eq!(dm.get(3, 2), 3.0);
        assert_eq!(dm.get(2, 2), 0.0);
    }

    #[test]
    fn from_condensed_validates() {
        assert!(DistanceMatrix::from_condensed(0, vec![]).is_err());
        assert!(DistanceMatrix::from_condensed(3, vec![1.0, 2.0]).is_err());
        assert!(DistanceMatrix::from_condensed(3, vec![1.0, 2.0, -0.5]).is_err());
        assert!(DistanceMatrix::from_condensed(3, vec![1.0, 2.0, f64::NAN]).is_err());
        assert!(DistanceMatrix::from_condensed(1, vec![]).is_ok());
        assert!(DistanceMatrix::from_condensed(3, vec![1.0, 2.0, 1.5]).is_ok());
    }

    #[test]
    fn enclosing_radius_of_a_path() {
        let cloud = PointCloud::from_rows(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let dm = pairwise_distances(&cloud);
        assert_eq!(enclosing_radius(&dm), 1.0);

        let single = DistanceMatrix::from_condensed(1, vec![]).unwrap();
        assert_eq!(enclosing_radius(&single), 0.0);
    }
}
