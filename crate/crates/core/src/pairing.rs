//! Persistence pairings: creator/destroyer pairs plus essential simplices.

use crate::complex::{FilteredComplex, SimplexId};

/// Pairs and essential simplices, each simplex given by its vertex labels.
pub type VertexPairing = (Vec<(Vec<usize>, Vec<usize>)>, Vec<Vec<usize>>);

/// Canonical form: `pairs` sorted by creator, `essential` sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PersistencePairing {
    pairs: Vec<(SimplexId, SimplexId)>,
    essential: Vec<SimplexId>,
}

impl PersistencePairing {
    pub fn new(mut pairs: Vec<(SimplexId, SimplexId)>, mut essential: Vec<SimplexId>) -> Self {
        pairs.sort_unstable();
        essential.sort_unstable();
        Self { pairs, essential }
    }

    /// `(creator, destroyer)` pairs sorted by creator.
    pub fn pairs(&self) -> &[(SimplexId, SimplexId)] {
        &self.pairs
    }

    pub fn essential(&self) -> &[SimplexId] {
        &self.essential
    }

    /// Partner lookup table indexed by simplex id.
    pub fn partners(&self, n: usize) -> Vec<Option<SimplexId>> {
        let mut out = vec![None; n];
        for &(c, d) in &self.pairs {
            out[c.0] = Some(d);
            out[d.0] = Some(c);
        }
        out
    }

    pub fn is_paired(&self, a: SimplexId, b: SimplexId) -> bool {
        let (c, d) = if a < b { (a, b) } else { (b, a) };
        self.pairs
            .binary_search_by(|&(x, _)| x.cmp(&c))
            .map(|i| self.pairs[i].1 == d)
            .unwrap_or(false)
    }

    /// Number of essential simplices in each dimension.
    pub fn essential_counts(&self, k: &FilteredComplex) -> Vec<usize> {
        let mut counts = vec![0; k.dim().map_or(0, |d| d + 1)];
        for &s in &self.essential {
            counts[k.dim_of(s)] += 1;
        }
        counts
    }

    /// Pairs and essential simplices as vertex lists, for comparing pairings
    /// of different complexes.
    pub fn by_vertices(&self, k: &FilteredComplex) -> VertexPairing {
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(c, d)| (k.vertices_of(c).to_vec(), k.vertices_of(d).to_vec()))
            .collect();
        pairs.sort();
        let mut ess: Vec<_> = self.essential.iter().map(|&s| k.vertices_of(s).to_vec()).collect();
        ess.sort();
        (pairs, ess)
    }

    /// Checks the pairing invariants against `k`.
    pub fn check(&self, k: &FilteredComplex) -> Result<(), String> {
        let mut seen = vec![false; k.len()];
        let mut mark = |s: SimplexId| -> Result<(), String> {
            if s.0 >= seen.len() {
                return Err(format!("simplex {s} out of range"));
            }
            if std::mem::replace(&mut seen[s.0], true) {
                return Err(format!("simplex {s} appears twice"));
            }
            Ok(())
        };
        for &(c, d) in &self.pairs {
            mark(c)?;
            mark(d)?;
            if c >= d {
                return Err(format!("creator {c} does not precede destroyer {d}"));
            }
            if k.dim_of(d) != k.dim_of(c) + 1 {
                return Err(format!("pair ({c}, {d}) does not step up one dimension"));
            }
        }
        for &e in &self.essential {
            mark(e)?;
        }
        if let Some(i) = seen.iter().position(|&x| !x) {
            return Err(format!("simplex #{i} is neither paired nor essential"));
        }
        Ok(())
    }
}
