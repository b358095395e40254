//! Admissibility and windows, read off the star of one edge.

use serde::{Deserialize, Serialize};

use super::StabilityError;
use crate::complex::{Edge, FilteredComplex, SimplexId};
use crate::contraction::link_condition_ids;

/// Vanishing simplices and mirror pairs of one contractible edge.
#[derive(Clone, Debug)]
pub(crate) struct EdgeStar {
    /// Oriented edge, `u ≺ v`.
    pub edge: Edge,
    pub u: SimplexId,
    /// Cofaces of the edge, itself included, in `≺` order.
    pub vanishing: Vec<SimplexId>,
    /// `(earlier, later, shared vanishing cofacet)`.
    pub mirrors: Vec<(SimplexId, SimplexId, SimplexId)>,
}

impl EdgeStar {
    pub fn new(k: &FilteredComplex, e: Edge) -> Result<Self, StabilityError> {
        let (edge_id, u, v) = k.orient_edge(e).ok_or(StabilityError::UnknownEdge(e))?;
        let edge = Edge(k.vertices_of(u)[0], k.vertices_of(v)[0]);
        if !link_condition_ids(k, edge_id, u, v) {
            return Err(StabilityError::LinkConditionViolated(edge));
        }
        let mut vanishing = k.cofaces(edge_id);
        vanishing.sort_unstable();
        let mut mirrors = Vec::with_capacity(vanishing.len());
        let mut scratch = Vec::new();
        for &tau in &vanishing {
            let mut face = |drop: usize| {
                scratch.clear();
                scratch.extend(k.vertices_of(tau).iter().copied().filter(|&x| x != drop));
                k.find(&scratch).expect("complex is closed under faces")
            };
            let a = face(edge.1);
            let b = face(edge.0);
            mirrors.push((a.min(b), a.max(b), tau));
        }
        Ok(Self {
            edge,
            u,
            vanishing,
            mirrors,
        })
    }

    /// Largest gap `|h(σ₂) − h(τ)|` over mirror pairs of dimension `p` and `p − 1`.
    pub fn admissibility_gap(&self, k: &FilteredComplex, p: usize) -> f64 {
        self.mirrors
            .iter()
            .filter(|&&(a, _, _)| {
                let q = k.dim_of(a);
                q == p || q + 1 == p
            })
            .map(|&(_, later, tau)| (k.height(later) - k.height(tau)).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_admissible(&self, k: &FilteredComplex, p: usize, eps: f64) -> bool {
        self.admissibility_gap(k, p) <= eps
    }

    /// `[h(r), h(s)]`, where `r` is the lowest mirror one dimension below `p`
    /// and `s` the highest vanishing simplex one dimension above `p` (capped
    /// at the top dimension). When a dimension has no local simplices the
    /// search steps down; for `p = 0` this gives `[h(u), h(e)]`.
    pub fn window(&self, k: &FilteredComplex, p: usize) -> Result<Window, StabilityError> {
        let top = k.dim().unwrap_or(0);
        if p > top {
            return Err(StabilityError::DimensionOutOfRange { p, top });
        }
        let mut lo = k.height(self.u);
        for q in (0..=p.saturating_sub(1)).rev() {
            let lowest = self
                .mirrors
                .iter()
                .filter(|&&(a, _, _)| k.dim_of(a) == q)
                .map(|&(a, _, _)| k.height(a))
                .reduce(f64::min);
            if let Some(h) = lowest {
                lo = h;
                break;
            }
        }
        let mut hi = k.height(self.vanishing[0]);
        for q in (1..=(p + 1).min(top)).rev() {
            let highest = self
                .vanishing
                .iter()
                .filter(|&&t| k.dim_of(t) == q)
                .map(|&t| k.height(t))
                .reduce(f64::max);
            if let Some(h) = highest {
                hi = h;
                break;
            }
        }
        Ok(Window {
            lo,
            hi,
            p,
            edge: self.edge,
        })
    }
}

/// Height interval `[lo, hi]` outside which contracting `edge` leaves the
/// `p`-th homology of every sublevel set untouched.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub p: usize,
    pub edge: Edge,
}

impl Window {
    /// Closed-interval overlap; touching endpoints count.
    pub fn overlaps(&self, other: &Window) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// The `(p, ε)`-admissibility test for a contractible edge.
pub fn is_p_eps_admissible(k: &FilteredComplex, e: Edge, p: usize, eps: f64) -> Result<bool, StabilityError> {
    Ok(EdgeStar::new(k, e)?.is_admissible(k, p, eps))
}

/// The `p`-window of a contractible edge.
pub fn window(k: &FilteredComplex, e: Edge, p: usize) -> Result<Window, StabilityError> {
    EdgeStar::new(k, e)?.window(k, p)
}
