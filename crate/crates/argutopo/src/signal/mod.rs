//! Scalar series extraction and delay embedding.

mod acf;
mod fnn;
mod mi;

pub use acf::{autocorrelation, select_delay_acf};
pub use fnn::{false_neighbor_fraction, select_dimension_fnn};
pub use mi::{mutual_information, select_delay_mi};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::embedding::VectorSequence;
use crate::error::{Error, Result};

/// A finite scalar series `z_0, ..., z_{N-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "series contains non-finite value {bad}"
            )));
        }
        Ok(TimeSeries { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// A direction in `R^d` with unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    components: Vec<f64>,
}

impl UnitVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "direction must have at least one component".into(),
            ));
        }
        let norm = components.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "direction norm is {norm}, expected 1 within 1e-12"
            )));
        }
        Ok(UnitVector { components })
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }
}

/// Draws a uniformly random unit direction in `R^dim` from a seeded
/// generator. The same `(dim, seed)` pair always yields the same vector,
/// bit for bit.
pub fn sample_direction(dim: usize, seed: u64) -> Result<UnitVector> {
    if dim == 0 {
        return Err(Error::InvalidParameter(
            "direction dimension must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let components: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = components.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 && norm.is_finite() {
            return UnitVector::new(components.iter().map(|v| v / norm).collect());
        }
    }
}

/// Projects each word vector onto the direction: `z_n = <x_n, u>`.
pub fn project_series(vectors: &VectorSequence, direction: &UnitVector) -> Result<TimeSeries> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput(
            "no vectors to project (empty or fully out-of-vocabulary text)".into(),
        ));
    }
    if vectors.dimension() != direction.dimension() {
        return Err(Error::InvalidParameter(format!(
            "vector dimension {} does not match direction dimension {}",
            vectors.dimension(),
            direction.dimension()
        )));
    }
    let u = direction.components();
    let values = vectors
        .iter()
        .map(|x| x.iter().zip(u).map(|(a, b)| a * b).sum())
        .collect();
    TimeSeries::new(values)
}

/// The outcome of an automatic parameter search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub value: usize,
    pub method: String,
    pub warnings: Vec<String>,
}

/// Delay-embedding parameters: dimension `D` and lag `tau`, both at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelayParameters {
    pub dim: usize,
    pub tau: usize,
}

impl DelayParameters {
    pub fn new(dim: usize, tau: usize) -> Result<Self> {
        if dim == 0 || tau == 0 {
            return Err(Error::InvalidParameter(format!(
                "delay parameters must be positive (got D={dim}, tau={tau})"
            )));
        }
        Ok(DelayParameters { dim, tau })
    }
}

/// A finite point cloud in `R^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    data: Vec<f64>,
}

impl PointCloud {
    pub fn new(data: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "point dimension must be at least 1".into(),
            ));
        }
        if data.is_empty() {
            return Err(Error::EmptyInput("point cloud has no points".into()));
        }
        if data.len() % dim != 0 {
            return Err(Error::InvalidParameter(format!(
                "{} values do not divide into points of dimension {dim}",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "point cloud contains non-finite value {bad}"
            )));
        }
        Ok(PointCloud { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter(
                "rows have inconsistent dimensions".into(),
            ));
        }
        PointCloud::new(rows.concat(), dim)
    }

    pub fn n_points(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }
}

/// The raw word-vector trajectory as a point cloud (the baseline input).
pub fn baseline_cloud(vectors: &VectorSequence) -> Result<PointCloud> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput(
            "no vectors for the baseline cloud".into(),
        ));
    }
    let data: Vec<f64> = vectors.iter().flatten().copied().collect();
    PointCloud::new(data, vectors.dimension())
}

/// Takens delay embedding: point `n` is
/// `(z_n, z_{n+tau}, ..., z_{n+(D-1)tau})`, giving `N - (D-1)*tau` points.
pub fn delay_embed(series: &TimeSeries, params: DelayParameters) -> Result<PointCloud> {
    let n = series.len();
    let span = (params.dim - 1) * params.tau;
    if n <= span {
        return Err(Error::SeriesTooShort {
            n,
            dim: params.dim,
            tau: params.tau,
            need: 1,
        });
    }
    let count = n - span;
    let z = series.values();
    let mut data = Vec::with_capacity(count * params.dim);
    for i in 0..count {
        for k in 0..params.dim {
            data.push(z[i + k * params.tau]);
        }
    }
    PointCloud::new(data, params.dim)
}
