//! Compatible-set selection and the staged simplification driver.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::local::{EdgeStar, Window};
use crate::complex::{Edge, FilteredComplex};
use crate::contraction::contract_edges;

/// One stage of [`simplify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub contracted_edges: Vec<Edge>,
    pub windows: Vec<Window>,
    /// Selected edges that failed re-validation.
    pub skipped: usize,
    pub simplices_before: usize,
    pub simplices_after: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplificationLog {
    pub stages: Vec<StageRecord>,
    pub epsilon: f64,
    pub p: usize,
}

impl SimplificationLog {
    /// Number of stages, the `m` in the `m·ε` bound.
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn contraction_count(&self) -> usize {
        self.stages.iter().map(|s| s.contracted_edges.len()).sum()
    }

    /// Upper bound on the bottleneck distance between first and last diagrams.
    pub fn distance_bound(&self) -> f64 {
        self.stage_count() as f64 * self.epsilon
    }
}

/// Windows of every `(p, ε)`-admissible contractible edge, in `≺` order of edges.
pub fn admissible_windows(k: &FilteredComplex, p: usize, eps: f64) -> Vec<Window> {
    let edges: Vec<Edge> = k.ids_of_dim(1).map(|e| k.edge_labels(e)).collect();
    edges
        .par_iter()
        .filter_map(|&e| {
            let star = EdgeStar::new(k, e).ok()?;
            if !star.is_admissible(k, p, eps) {
                return None;
            }
            star.window(k, p).ok()
        })
        .collect()
}

/// Greedy interval scheduling by ascending right endpoint, also requiring the
/// chosen edges to share no vertex. Returns the chosen windows in that order.
pub fn select_disjoint(mut windows: Vec<Window>) -> Vec<Window> {
    windows.sort_by(|a, b| {
        a.hi.total_cmp(&b.hi)
            .then(a.lo.total_cmp(&b.lo))
            .then(a.edge.sorted_vertices().cmp(&b.edge.sorted_vertices()))
    });
    let mut used = HashSet::new();
    let mut last_hi = f64::NEG_INFINITY;
    let mut chosen = Vec::new();
    for w in windows {
        let Edge(a, b) = w.edge;
        if w.lo > last_hi && !used.contains(&a) && !used.contains(&b) {
            used.insert(a);
            used.insert(b);
            last_hi = w.hi;
            chosen.push(w);
        }
    }
    chosen
}

/// A maximal `(p, ε)`-compatible set of edges, with their windows.
pub fn compatible_windows(k: &FilteredComplex, p: usize, eps: f64) -> Vec<Window> {
    select_disjoint(admissible_windows(k, p, eps))
}

/// Edges of [`compatible_windows`], in contraction order.
pub fn compatible_set(k: &FilteredComplex, p: usize, eps: f64) -> Vec<Edge> {
    compatible_windows(k, p, eps).into_iter().map(|w| w.edge).collect()
}

/// Stage-wise greedy contraction. Every stage contracts a compatible set,
/// so each changes the dimension-`p` diagram by at most `ε`.
pub fn simplify(k: &FilteredComplex, p: usize, eps: f64, max_stages: usize) -> (FilteredComplex, SimplificationLog) {
    simplify_with(k, p, eps, max_stages, |_, _| {})
}

/// [`simplify`], calling `observe` with the complex after each logged stage.
pub fn simplify_with<F>(k: &FilteredComplex, p: usize, eps: f64, max_stages: usize, mut observe: F) -> (FilteredComplex, SimplificationLog)
where
    F: FnMut(&FilteredComplex, &StageRecord),
{
    let mut current = k.clone();
    let mut log = SimplificationLog {
        stages: Vec::new(),
        epsilon: eps,
        p,
    };
    while log.stages.len() < max_stages {
        let selected = compatible_windows(&current, p, eps);
        if selected.is_empty() {
            break;
        }
        let before = current.len();
        let (next, stage) = run_stage(current, selected, p, eps);
        current = next;
        if stage.contracted_edges.is_empty() {
            break;
        }
        let stage = StageRecord {
            simplices_before: before,
            simplices_after: current.len(),
            ..stage
        };
        observe(&current, &stage);
        log.stages.push(stage);
    }
    (current, log)
}

/// Contracts the selected edges in order, re-validating each against the
/// complex left by the ones before it.
///
/// Contractions are applied lazily: an edge none of whose neighbours was an
/// endpoint of a pending contraction sees exactly the same star as in the
/// materialized complex, so its earlier evaluation stands. Otherwise the
/// pending contractions are applied and the edge is evaluated afresh.
fn run_stage(mut current: FilteredComplex, selected: Vec<Window>, p: usize, eps: f64) -> (FilteredComplex, StageRecord) {
    let mut record = StageRecord {
        contracted_edges: Vec::new(),
        windows: Vec::new(),
        skipped: 0,
        simplices_before: 0,
        simplices_after: 0,
    };
    let mut pending: Vec<Edge> = Vec::new();
    let mut dirty: HashSet<usize> = HashSet::new();
    for w in selected {
        let Edge(a, b) = w.edge;
        let touched = [a, b]
            .iter()
            .any(|&x| dirty.contains(&x) || neighbours(&current, x).any(|y| dirty.contains(&y)));
        let window = if touched {
            current = contract_edges(&current, &pending).expect("pending edges were validated");
            pending.clear();
            dirty.clear();
            revalidate(&current, w.edge, p, eps)
        } else {
            Some(w)
        };
        match window {
            Some(w) if !record.windows.iter().any(|x| x.overlaps(&w)) => {
                pending.push(w.edge);
                dirty.insert(a);
                dirty.insert(b);
                record.contracted_edges.push(w.edge);
                record.windows.push(w);
            }
            _ => record.skipped += 1,
        }
    }
    if !pending.is_empty() {
        current = contract_edges(&current, &pending).expect("pending edges were validated");
    }
    (current, record)
}

fn revalidate(k: &FilteredComplex, e: Edge, p: usize, eps: f64) -> Option<Window> {
    let star = EdgeStar::new(k, e).ok()?;
    if !star.is_admissible(k, p, eps) {
        return None;
    }
    star.window(k, p).ok()
}

fn neighbours(k: &FilteredComplex, x: usize) -> impl Iterator<Item = usize> + '_ {
    let id = k.vertex(x);
    id.into_iter().flat_map(move |id| {
        k.cofacets(id)
            .iter()
            .map(move |&e| *k.vertices_of(e).iter().find(|&&y| y != x).unwrap())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::fixtures::fix_c;

    fn w(lo: f64, hi: f64, edge: Edge) -> Window {
        Window { lo, hi, p: 1, edge }
    }

    #[test]
    fn interval_scheduling_by_right_endpoint() {
        let chosen = select_disjoint(vec![
            w(1.0, 3.0, Edge(2, 3)),
            w(2.5, 4.0, Edge(4, 5)),
            w(0.0, 2.0, Edge(0, 1)),
        ]);
        let his: Vec<f64> = chosen.iter().map(|w| w.hi).collect();
        assert_eq!(his, vec![2.0, 4.0]);
        let both = select_disjoint(vec![w(2.0, 3.0, Edge(2, 3)), w(0.0, 1.0, Edge(0, 1))]);
        assert_eq!(both.len(), 2);
        assert!(select_disjoint(Vec::new()).is_empty());
    }

    #[test]
    fn shared_vertices_and_touching_windows_conflict() {
        let chosen = select_disjoint(vec![w(0.0, 1.0, Edge(0, 1)), w(2.0, 3.0, Edge(1, 2))]);
        assert_eq!(chosen.len(), 1);
        let chosen = select_disjoint(vec![w(0.0, 1.0, Edge(0, 1)), w(1.0, 3.0, Edge(2, 3))]);
        assert_eq!(chosen.len(), 1);
    }

    #[test]
    fn compatible_set_on_square() {
        let k = fix_c();
        assert!(compatible_set(&k, 1, 0.5).is_empty());
        // uw and ux have gap 1, uv has gap 2; all windows are [0,3], ties go by vertex labels
        assert_eq!(compatible_set(&k, 1, 1.0), vec![Edge(0, 2)]);
        assert_eq!(compatible_set(&k, 1, 2.0), vec![Edge(0, 1)]);
    }

    #[test]
    fn zero_epsilon_with_distinct_heights_contracts_nothing() {
        let k = fix_c();
        let (out, log) = simplify(&k, 1, 0.0, 10);
        assert_eq!(log.stage_count(), 0);
        assert_eq!(out.len(), k.len());
    }

    #[test]
    fn square_simplifies_within_bound() {
        let k = fix_c();
        let (out, log) = simplify(&k, 1, 10.0, 100);
        out.check_invariants().unwrap();
        assert!(log.stage_count() >= 1);
        assert!(out.len() < k.len());
        for s in &log.stages {
            assert!(s.simplices_after < s.simplices_before);
        }
    }
}
