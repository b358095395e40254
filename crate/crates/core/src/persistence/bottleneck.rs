//! Exact bottleneck distance.
//!
//! Essential points can only match essential points of the same dimension,
//! and optimally do so in sorted order of birth. For finite points the answer
//! is one of the pairwise `d∞` distances or half-persistences; a binary search
//! over those candidates decides each threshold with a bipartite matching.
//!
//! A threshold `δ` is feasible iff some matching between the two diagrams,
//! using only pairs within `δ`, covers every point that is farther than `δ`
//! from the diagonal. By the Mendelsohn–Dulmage theorem that holds iff the far
//! points of each side can separately be matched into the other side.

use super::diagram::{DiagramPoint, PersistenceDiagram};

/// `d∞` between two finite points.
#[inline]
pub fn point_distance(a: &DiagramPoint, b: &DiagramPoint) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

/// `d∞` from a finite point to the diagonal.
#[inline]
pub fn diagonal_distance(a: &DiagramPoint) -> f64 {
    (a.death - a.birth) / 2.0
}

/// Bottleneck distance; diagrams with several dimensions are compared per
/// dimension and the largest distance is returned.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let mut dims = d1.dims();
    dims.extend(d2.dims());
    dims.sort_unstable();
    dims.dedup();
    dims.into_iter()
        .map(|p| bottleneck_single_dim(&d1.of_dim(p).points, &d2.of_dim(p).points))
        .fold(0.0, f64::max)
}

fn bottleneck_single_dim(a: &[DiagramPoint], b: &[DiagramPoint]) -> f64 {
    let (mut ea, fa): (Vec<_>, Vec<_>) = a.iter().copied().partition(DiagramPoint::is_essential);
    let (mut eb, fb): (Vec<_>, Vec<_>) = b.iter().copied().partition(DiagramPoint::is_essential);
    if ea.len() != eb.len() {
        return f64::INFINITY;
    }
    ea.sort_by(|x, y| x.birth.total_cmp(&y.birth));
    eb.sort_by(|x, y| x.birth.total_cmp(&y.birth));
    let essential = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| (x.birth - y.birth).abs())
        .fold(0.0, f64::max);
    essential.max(finite_bottleneck(&fa, &fb))
}

fn finite_bottleneck(a: &[DiagramPoint], b: &[DiagramPoint]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates = Vec::with_capacity(a.len() * b.len() + a.len() + b.len() + 1);
    candidates.push(0.0);
    candidates.extend(a.iter().map(diagonal_distance));
    candidates.extend(b.iter().map(diagonal_distance));
    for x in a {
        for y in b {
            candidates.push(point_distance(x, y));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // the largest candidate is always feasible: everything can go to the diagonal
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn feasible(a: &[DiagramPoint], b: &[DiagramPoint], delta: f64) -> bool {
    covers_far_points(a, b, delta) && covers_far_points(b, a, delta)
}

/// Whether every point of `from` farther than `delta` from the diagonal can be
/// matched to a distinct point of `to` within `delta`.
fn covers_far_points(from: &[DiagramPoint], to: &[DiagramPoint], delta: f64) -> bool {
    let far: Vec<&DiagramPoint> = from.iter().filter(|x| diagonal_distance(x) > delta).collect();
    if far.len() > to.len() {
        return false;
    }
    let adjacency: Vec<Vec<usize>> = far
        .iter()
        .map(|x| {
            to.iter()
                .enumerate()
                .filter(|(_, y)| point_distance(x, y) <= delta)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    if adjacency.iter().any(Vec::is_empty) {
        return false;
    }
    hopcroft_karp(&adjacency, to.len()) == far.len()
}

/// Maximum bipartite matching size; `adjacency[i]` lists right neighbours of left node `i`.
pub(crate) fn hopcroft_karp(adjacency: &[Vec<usize>], n_right: usize) -> usize {
    const FREE: usize = usize::MAX;
    let n_left = adjacency.len();
    let mut match_left = vec![FREE; n_left];
    let mut match_right = vec![FREE; n_right];
    let mut dist = vec![0u32; n_left];
    let mut matched = 0;

    loop {
        // BFS layers from free left nodes
        let mut queue = std::collections::VecDeque::new();
        let mut found = false;
        for i in 0..n_left {
            if match_left[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = u32::MAX;
            }
        }
        while let Some(i) = queue.pop_front() {
            for &j in &adjacency[i] {
                let m = match_right[j];
                if m == FREE {
                    found = true;
                } else if dist[m] == u32::MAX {
                    dist[m] = dist[i] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for i in 0..n_left {
            if match_left[i] == FREE && augment(i, adjacency, &mut match_left, &mut match_right, &mut dist, &mut it) {
                matched += 1;
            }
        }
    }
    matched
}

fn augment(
    i: usize,
    adjacency: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [u32],
    it: &mut [usize],
) -> bool {
    while it[i] < adjacency[i].len() {
        let j = adjacency[i][it[i]];
        it[i] += 1;
        let m = match_right[j];
        let ok = m == usize::MAX
            || (dist[m] == dist[i] + 1 && augment(m, adjacency, match_left, match_right, dist, it));
        if ok {
            match_left[i] = j;
            match_right[j] = i;
            return true;
        }
    }
    dist[i] = u32::MAX;
    false
}
