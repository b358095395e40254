//! Oracles written independently of the library code they check.
#![allow(dead_code)]

use contracta::complex::{build_complex, FilteredComplex};
use contracta::persistence::{DiagramPoint, PersistenceDiagram};

/// Triangle with edges entering at 1, 1, 2 and the face at 3.
pub fn hollow_then_filled_triangle() -> FilteredComplex {
    build_complex(vec![
        (vec![0], 0.0),
        (vec![1], 0.0),
        (vec![2], 0.0),
        (vec![0, 1], 1.0),
        (vec![1, 2], 1.0),
        (vec![0, 2], 2.0),
        (vec![0, 1, 2], 3.0),
    ])
    .unwrap()
}

/// Square `u w v x` split by its diagonal `{u,v}`: u=0, v=1, w=2, x=3.
pub fn split_square() -> FilteredComplex {
    build_complex(vec![
        (vec![0], 0.0),
        (vec![1], 0.0),
        (vec![2], 0.0),
        (vec![3], 0.0),
        (vec![0, 2], 1.0),
        (vec![0, 3], 1.0),
        (vec![1, 2], 2.0),
        (vec![1, 3], 2.0),
        (vec![0, 1], 2.0),
        (vec![0, 1, 2], 3.0),
        (vec![0, 1, 3], 3.0),
    ])
    .unwrap()
}

/// Vertex list after sending `from` to `to`.
pub fn collapse(vertices: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut out: Vec<usize> = vertices.iter().map(|&x| if x == from { to } else { x }).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether `target` lies in the GF(2) span of `vectors` (sets of indices).
pub fn in_span(vectors: &[Vec<usize>], target: &[usize], width: usize) -> bool {
    let words = width.div_ceil(64);
    let to_bits = |v: &[usize]| {
        let mut b = vec![0u64; words];
        for &i in v {
            b[i / 64] ^= 1 << (i % 64);
        }
        b
    };
    // each row is reduced against the rows before it, so one ordered pass reduces fully
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let reduce = |mut b: Vec<u64>, basis: &[(usize, Vec<u64>)]| {
        for (lead, row) in basis {
            if b[lead / 64] >> (lead % 64) & 1 == 1 {
                for (x, y) in b.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        b
    };
    let leading = |b: &[u64]| {
        b.iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    };
    for v in vectors {
        let b = reduce(to_bits(v), &basis);
        if let Some(lead) = leading(&b) {
            basis.push((lead, b));
        }
    }
    leading(&reduce(to_bits(target), &basis)).is_none()
}

fn linf(a: &DiagramPoint, b: &DiagramPoint) -> f64 {
    let death = if a.death == b.death { 0.0 } else { (a.death - b.death).abs() };
    (a.birth - b.birth).abs().max(death)
}

fn to_diagonal(a: &DiagramPoint) -> f64 {
    (a.death - a.birth) / 2.0
}

/// Bottleneck distance by trying every partial matching, one dimension at a time.
pub fn brute_force_bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> f64 {
    let mut dims: Vec<usize> = a.points.iter().chain(&b.points).map(|p| p.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    dims.into_iter()
        .map(|d| {
            let xs: Vec<DiagramPoint> = a.points.iter().copied().filter(|p| p.dim == d).collect();
            let ys: Vec<DiagramPoint> = b.points.iter().copied().filter(|p| p.dim == d).collect();
            let mut used = vec![false; ys.len()];
            best_matching(&xs, &ys, 0, &mut used, 0.0)
        })
        .fold(0.0, f64::max)
}

fn best_matching(xs: &[DiagramPoint], ys: &[DiagramPoint], i: usize, used: &mut [bool], so_far: f64) -> f64 {
    if i == xs.len() {
        let rest = ys
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(y, _)| to_diagonal(y))
            .fold(0.0, f64::max);
        return so_far.max(rest);
    }
    let mut best = best_matching(xs, ys, i + 1, used, so_far.max(to_diagonal(&xs[i])));
    for j in 0..ys.len() {
        if !used[j] {
            used[j] = true;
            best = best.min(best_matching(xs, ys, i + 1, used, so_far.max(linf(&xs[i], &ys[j]))));
            used[j] = false;
        }
    }
    best
}
