//! Chains with coefficients in the two-element field.

use thiserror::Error;

use crate::complex::{FilteredComplex, SimplexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("simplex {id} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        id: SimplexId,
        expected: usize,
        found: usize,
    },
    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(SimplexId),
}

/// A mod-2 chain: a set of simplices of one dimension.
///
/// Members are kept sorted by id, so the largest member is the `≺`-latest one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    simplices: Vec<SimplexId>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            simplices: Vec::new(),
        }
    }

    /// Builds a chain from ids, cancelling repeated entries in pairs.
    pub fn from_ids(
        k: &FilteredComplex,
        dim: usize,
        ids: impl IntoIterator<Item = SimplexId>,
    ) -> Result<Self, ChainError> {
        let mut v: Vec<SimplexId> = ids.into_iter().collect();
        for &id in &v {
            let s = k.get(id).map_err(|_| ChainError::UnknownSimplex(id))?;
            if s.dim() != dim {
                return Err(ChainError::DimensionMismatch {
                    id,
                    expected: dim,
                    found: s.dim(),
                });
            }
        }
        cancel_pairs(&mut v);
        Ok(Self { dim, simplices: v })
    }

    /// Builds a chain from ids that the caller guarantees are of dimension `dim`.
    pub(crate) fn from_ids_unchecked(dim: usize, mut ids: Vec<SimplexId>) -> Self {
        cancel_pairs(&mut ids);
        Self { dim, simplices: ids }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplices(&self) -> &[SimplexId] {
        &self.simplices
    }

    pub fn is_zero(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.simplices.binary_search(&id).is_ok()
    }

    /// `≺`-latest member.
    pub fn last(&self) -> Option<SimplexId> {
        self.simplices.last().copied()
    }

    /// Mod-2 sum. Panics if the dimensions differ.
    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        Chain {
            dim: self.dim,
            simplices: symmetric_difference(&self.simplices, &other.simplices),
        }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        *self = self.add(other);
    }

    /// Maximum height over the support, `-∞` for the zero chain.
    pub fn max_height(&self, k: &FilteredComplex) -> f64 {
        self.simplices
            .iter()
            .map(|&s| k.height(s))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Boundary `∂c`. The boundary of a 0-chain is the zero 0-chain.
    pub fn boundary(&self, k: &FilteredComplex) -> Chain {
        if self.dim == 0 {
            return Chain::zero(0);
        }
        let mut out = Vec::with_capacity(self.simplices.len() * (self.dim + 1));
        for &s in &self.simplices {
            out.extend_from_slice(k.facets(s));
        }
        Chain::from_ids_unchecked(self.dim - 1, out)
    }

    pub fn is_cycle(&self, k: &FilteredComplex) -> bool {
        self.boundary(k).is_zero()
    }
}

/// Sorts and removes every id that appears an even number of times.
pub(crate) fn cancel_pairs(v: &mut Vec<SimplexId>) {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    *v = out;
}

/// Symmetric difference of two sorted, duplicate-free slices.
pub(crate) fn symmetric_difference<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    #[test]
    fn boundary_of_boundary_vanishes() {
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
        let t = Chain::from_ids(&k, 2, [k.find(&[0, 1, 2]).unwrap()]).unwrap();
        let b = t.boundary(&k);
        assert_eq!(b.len(), 3);
        assert!(b.boundary(&k).is_zero());
        assert!(b.is_cycle(&k));
        let err = Chain::from_ids(&k, 1, [k.vertex(0).unwrap()]).unwrap_err();
        assert!(matches!(err, ChainError::DimensionMismatch { expected: 1, found: 0, .. }));
    }

    #[test]
    fn repeated_entries_cancel() {
        let mut v = vec![SimplexId(3), SimplexId(1), SimplexId(3), SimplexId(3), SimplexId(2), SimplexId(2)];
        cancel_pairs(&mut v);
        assert_eq!(v, vec![SimplexId(1), SimplexId(3)]);
        assert_eq!(symmetric_difference(&[1, 2, 5], &[2, 3]), vec![1, 3, 5]);
    }
}
