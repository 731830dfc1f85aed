use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::json;

/// One homology class: its dimension, birth radius and death radius.
/// Essential classes (alive at the end of the filtration) carry
/// `death == f64::INFINITY` and serialize with a null death.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// A persistence diagram: the multiset of classes up to `max_dim`, plus
/// free-form metadata describing how it was computed.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub max_dim: usize,
    pub points: Vec<DiagramPoint>,
    pub metadata: BTreeMap<String, String>,
}

impl PersistenceDiagram {
    pub fn new(
        max_dim: usize,
        points: Vec<DiagramPoint>,
        metadata: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut diagram = PersistenceDiagram {
            max_dim,
            points,
            metadata,
        };
        diagram.validate()?;
        diagram.normalize();
        Ok(diagram)
    }

    /// Checks every class: finite non-negative birth, `death >= birth`
    /// (infinity allowed), dimension within `max_dim`.
    pub fn validate(&self) -> Result<()> {
        for p in &self.points {
            if !p.birth.is_finite() || p.birth < 0.0 {
                return Err(Error::InvalidDiagram(format!(
                    "birth {} is not a finite non-negative number",
                    p.birth
                )));
            }
            if p.death.is_nan() || p.death < p.birth {
                return Err(Error::InvalidDiagram(format!(
                    "death {} precedes birth {}",
                    p.death, p.birth
                )));
            }
            if p.dim > self.max_dim {
                return Err(Error::InvalidDiagram(format!(
                    "class dimension {} exceeds max_dim {}",
                    p.dim, self.max_dim
                )));
            }
        }
        Ok(())
    }

    /// Sorts classes into the canonical order: dimension, then birth, then
    /// death (essentials last within a dimension).
    pub fn normalize(&mut self) {
        self.points.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.partial_cmp(&b.birth).expect("validated"))
                .then(a.death.partial_cmp(&b.death).expect("validated"))
        });
    }

    pub fn points_in_dim(&self, dim: usize) -> impl Iterator<Item = &DiagramPoint> {
        self.points.iter().filter(move |p| p.dim == dim)
    }

    pub fn n_finite(&self, dim: usize) -> usize {
        self.points_in_dim(dim).filter(|p| !p.is_essential()).count()
    }

    pub fn n_essential(&self, dim: usize) -> usize {
        self.points_in_dim(dim).filter(|p| p.is_essential()).count()
    }

    /// Largest persistence in the dimension, `f64::INFINITY` if an
    /// essential class is present, `None` if the dimension is empty.
    pub fn max_persistence(&self, dim: usize) -> Option<f64> {
        self.points_in_dim(dim)
            .map(DiagramPoint::persistence)
            .fold(None, |acc, p| Some(acc.map_or(p, |a: f64| a.max(p))))
    }

    /// Serializes to pretty JSON. Floats are written with 17 significant
    /// digits so parsing them back is exact; essential deaths become null.
    pub fn to_json(&self) -> Result<String> {
        json::to_pretty_string(&DiagramRepr::from(self))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: DiagramRepr =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let diagram = PersistenceDiagram {
            max_dim: repr.max_dim,
            points: repr
                .points
                .into_iter()
                .map(|p| DiagramPoint {
                    dim: p.dim,
                    birth: p.birth,
                    death: p.death.unwrap_or(f64::INFINITY),
                })
                .collect(),
            metadata: repr.metadata,
        };
        diagram.validate()?;
        Ok(diagram)
    }
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    dim: usize,
    birth: f64,
    death: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    max_dim: usize,
    points: Vec<PointRepr>,
    metadata: BTreeMap<String, String>,
}

impl From<&PersistenceDiagram> for DiagramRepr {
    fn from(d: &PersistenceDiagram) -> Self {
        DiagramRepr {
            max_dim: d.max_dim,
            points: d
                .points
                .iter()
                .map(|p| PointRepr {
                    dim: p.dim,
                    birth: p.birth,
                    death: if p.death.is_finite() {
                        Some(p.death)
                    } else {
                        None
                    },
                })
                .collect(),
            metadata: d.metadata.clone(),
        }
    }
}
