use serde::{Deserialize, Serialize};

use super::PersistenceError;
use crate::complex::FilteredComplex;
use crate::pairing::PersistencePairing;

/// One off-diagonal point; `death` is `+∞` for essential classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl DiagramPoint {
    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Multiset of diagram points. The diagonal is implicit.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(points: Vec<DiagramPoint>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points of one dimension.
    pub fn of_dim(&self, p: usize) -> PersistenceDiagram {
        PersistenceDiagram {
            points: self.points.iter().copied().filter(|x| x.dim == p).collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.points.iter().map(|x| x.dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Sorted copy; two diagrams are equal as multisets iff their canonical forms are equal.
    pub fn canonical(&self) -> PersistenceDiagram {
        let mut points = self.points.clone();
        points.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        PersistenceDiagram { points }
    }
}

/// Dimension-`p` diagram of a pairing, dropping zero-persistence points.
pub fn diagram(pairing: &PersistencePairing, k: &FilteredComplex, p: usize) -> Result<PersistenceDiagram, PersistenceError> {
    if let Some(top) = k.dim() {
        if p > top {
            return Err(PersistenceError::DimensionOutOfRange { p, top });
        }
    }
    let mut points = Vec::new();
    for &(c, d) in pairing.pairs() {
        if k.dim_of(c) != p {
            continue;
        }
        let (birth, death) = (k.height(c), k.height(d));
        if birth != death {
            points.push(DiagramPoint { dim: p, birth, death });
        }
    }
    for &e in pairing.essential() {
        if k.dim_of(e) == p {
            points.push(DiagramPoint {
                dim: p,
                birth: k.height(e),
                death: f64::INFINITY,
            });
        }
    }
    Ok(PersistenceDiagram { points })
}
