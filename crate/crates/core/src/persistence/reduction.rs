//! Column reduction of the mod-2 boundary matrix.

use crate::chain::{symmetric_difference, Chain};
use crate::complex::{FilteredComplex, SimplexId};
use crate::pairing::PersistencePairing;

/// Boundary matrix in `≺` order: column `j` holds the facet rows of simplex `j`.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    columns: Vec<Vec<usize>>,
}

impl BoundaryMatrix {
    pub fn new(k: &FilteredComplex) -> Self {
        let columns = k
            .order()
            .map(|id| k.facets(id).iter().map(|f| f.0).collect())
            .collect();
        Self { columns }
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }
}

/// Result of the standard left-to-right reduction `R = ∂V`.
#[derive(Clone, Debug)]
pub struct Reduction {
    r: Vec<Vec<usize>>,
    v: Option<Vec<Vec<usize>>>,
    pivot_of_row: Vec<Option<usize>>,
    dims: Vec<usize>,
}

impl Reduction {
    /// Standard reduction; `track_v` also keeps the column operations in `V`.
    pub fn standard(k: &FilteredComplex, track_v: bool) -> Self {
        let mut r: Vec<Vec<usize>> = BoundaryMatrix::new(k).columns;
        let n = r.len();
        let mut v: Option<Vec<Vec<usize>>> = track_v.then(|| (0..n).map(|j| vec![j]).collect());
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; n];
        for j in 0..n {
            let mut col = std::mem::take(&mut r[j]);
            while let Some(&low) = col.last() {
                let Some(i) = pivot_of_row[low] else { break };
                col = symmetric_difference(&col, &r[i]);
                if let Some(v) = v.as_mut() {
                    let merged = symmetric_difference(v[j].as_slice(), v[i].as_slice());
                    v[j] = merged;
                }
            }
            if let Some(&low) = col.last() {
                pivot_of_row[low] = Some(j);
            }
            r[j] = col;
        }
        Self {
            r,
            v,
            pivot_of_row,
            dims: k.simplices().iter().map(|s| s.dim()).collect(),
        }
    }

    /// Reduction with clearing: dimensions are processed top-down and the
    /// column of every creator found as a pivot is zeroed without reduction.
    pub fn twist(k: &FilteredComplex) -> Self {
        let mut r: Vec<Vec<usize>> = BoundaryMatrix::new(k).columns;
        let n = r.len();
        let dims: Vec<usize> = k.simplices().iter().map(|s| s.dim()).collect();
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; n];
        let mut cleared = vec![false; n];
        let top = k.dim().unwrap_or(0);
        for d in (1..=top).rev() {
            for j in (0..n).filter(|&j| dims[j] == d) {
                if cleared[j] {
                    r[j].clear();
                    continue;
                }
                let mut col = std::mem::take(&mut r[j]);
                while let Some(&low) = col.last() {
                    let Some(i) = pivot_of_row[low] else { break };
                    col = symmetric_difference(&col, &r[i]);
                }
                if let Some(&low) = col.last() {
                    pivot_of_row[low] = Some(j);
                    cleared[low] = true;
                }
                r[j] = col;
            }
        }
        Self {
            r,
            v: None,
            pivot_of_row,
            dims,
        }
    }

    pub fn pairing(&self) -> PersistencePairing {
        let n = self.r.len();
        let mut paired = vec![false; n];
        let mut pairs = Vec::new();
        for (j, col) in self.r.iter().enumerate() {
            if let Some(&low) = col.last() {
                pairs.push((SimplexId(low), SimplexId(j)));
                paired[low] = true;
                paired[j] = true;
            }
        }
        let essential = (0..n).filter(|&j| !paired[j]).map(SimplexId).collect();
        PersistencePairing::new(pairs, essential)
    }

    /// Reduced column `j`, sorted ascending.
    pub fn reduced_column(&self, j: usize) -> &[usize] {
        &self.r[j]
    }

    /// The reduced column whose lowest entry is `row`, if any.
    pub fn pivot_column(&self, row: usize) -> Option<usize> {
        self.pivot_of_row[row]
    }

    /// Cycle basis of dimension `p` among the first `prefix` simplices:
    /// the `V` columns of zero `R` columns. Requires `track_v`.
    pub fn cycle_basis(&self, p: usize, prefix: usize) -> Vec<Chain> {
        let v = self.v.as_ref().expect("cycle basis needs a reduction with V tracked");
        (0..prefix.min(self.r.len()))
            .filter(|&j| self.dims[j] == p && self.r[j].is_empty())
            .map(|j| Chain::from_ids_unchecked(p, v[j].iter().map(|&i| SimplexId(i)).collect()))
            .collect()
    }

    /// Whether `z` lies in the span of the reduced columns among the first
    /// `prefix` simplices, i.e. is a boundary in that sublevel set.
    pub fn is_boundary_within(&self, z: &Chain, prefix: usize) -> bool {
        let mut col: Vec<usize> = z.simplices().iter().map(|s| s.0).collect();
        while let Some(&low) = col.last() {
            match self.pivot_of_row[low] {
                Some(j) if j < prefix => col = symmetric_difference(&col, &self.r[j]),
                _ => return false,
            }
        }
        true
    }
}

/// Persistence pairing by standard column reduction in `≺` order.
pub fn reduce(k: &FilteredComplex) -> PersistencePairing {
    Reduction::standard(k, false).pairing()
}
