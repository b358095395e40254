//! Persistent homology over the two-element field: reduction, diagrams,
//! bottleneck distance and homology-class comparison in sublevel sets.

mod bottleneck;
mod diagram;
mod reduction;

pub use bottleneck::{bottleneck, diagonal_distance, point_distance};
pub use diagram::{diagram, DiagramPoint, PersistenceDiagram};
pub use reduction::{reduce, BoundaryMatrix, Reduction};

use thiserror::Error;

use crate::chain::Chain;
use crate::complex::FilteredComplex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error("dimension {p} exceeds complex dimension {top}")]
    DimensionOutOfRange { p: usize, top: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chains have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("chain is not supported in the sublevel set at {0}")]
    NotInSublevel(f64),
}

/// Full persistence diagram (all dimensions) of a complex.
pub fn full_diagram(k: &FilteredComplex) -> PersistenceDiagram {
    let pairing = reduce(k);
    let mut points = Vec::new();
    for p in 0..=k.dim().unwrap_or(0) {
        points.extend(diagram(&pairing, k, p).expect("p within range").points);
    }
    PersistenceDiagram::new(points)
}

/// Homology queries against one reduced boundary matrix.
pub struct SublevelHomology<'a> {
    complex: &'a FilteredComplex,
    reduction: Reduction,
}

impl<'a> SublevelHomology<'a> {
    pub fn new(k: &'a FilteredComplex) -> Self {
        Self {
            complex: k,
            reduction: Reduction::standard(k, true),
        }
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Whether cycles `c1` and `c2` differ by a boundary inside `K_a`.
    pub fn homologous(&self, a: f64, c1: &Chain, c2: &Chain) -> Result<bool, PersistenceError> {
        if c1.dim() != c2.dim() {
            return Err(PersistenceError::DimensionMismatch(c1.dim(), c2.dim()));
        }
        let prefix = self.complex.sublevel_len(a);
        for c in [c1, c2] {
            if c.last().is_some_and(|s| s.0 >= prefix) {
                return Err(PersistenceError::NotInSublevel(a));
            }
            if !c.is_cycle(self.complex) {
                return Err(PersistenceError::NotACycle);
            }
        }
        Ok(self.reduction.is_boundary_within(&c1.add(c2), prefix))
    }

    /// Cycle basis in dimension `p` of the sublevel set at `a`.
    pub fn cycle_basis(&self, p: usize, a: f64) -> Vec<Chain> {
        self.reduction.cycle_basis(p, self.complex.sublevel_len(a))
    }
}

/// One-shot form of [`SublevelHomology::homologous`].
pub fn homologous(k: &FilteredComplex, a: f64, c1: &Chain, c2: &Chain) -> Result<bool, PersistenceError> {
    SublevelHomology::new(k).homologous(a, c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    #[test]
    fn homologous_cycles_in_triangle() {
        let k = build_complex(vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![0, 1], 1.0),
            (vec![1, 2], 1.0),
            (vec![0, 2], 2.0),
            (vec![0, 1, 2], 3.0),
        ])
        .unwrap();
        let cycle = Chain::from_ids(&k, 1, [[0, 1], [1, 2], [0, 2]].map(|e| k.find(&e).unwrap())).unwrap();
        let zero = Chain::zero(1);
        assert!(homologous(&k, 3.0, &cycle, &cycle).unwrap());
        assert!(homologous(&k, 3.0, &cycle, &zero).unwrap());
        assert!(!homologous(&k, 2.0, &cycle, &zero).unwrap());
        assert_eq!(homologous(&k, 1.0, &cycle, &zero), Err(PersistenceError::NotInSublevel(1.0)));
        let path = Chain::from_ids(&k, 1, [k.find(&[0, 1]).unwrap()]).unwrap();
        assert_eq!(homologous(&k, 3.0, &path, &zero), Err(PersistenceError::NotACycle));
        assert_eq!(
            homologous(&k, 3.0, &Chain::zero(0), &zero),
            Err(PersistenceError::DimensionMismatch(0, 1))
        );
    }
}
