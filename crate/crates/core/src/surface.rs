//! Spanning-tree persistence pairing for closed triangulated surfaces.
//!
//! On a closed 2-manifold every edge borders exactly two triangles, so the
//! edges are arcs of two graphs at once: the vertex graph and its dual, the
//! triangle graph. A minimum spanning forest on the vertex graph (arcs taken in
//! ascending `≺` order) pairs vertices with edges; a maximum spanning forest on
//! the triangle graph (arcs in descending `≺` order) pairs edges with
//! triangles. Edges in neither tree carry the essential 1-classes.

use thiserror::Error;

use crate::complex::{Edge, FilteredComplex, SimplexId};
use crate::contraction::{link_condition_ids, ContractionError};
use crate::pairing::PersistencePairing;
use crate::union_find::LabeledDisjointSets;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("complex is not a closed 2-manifold")]
    NotClosed2Manifold,
    #[error("edge {0} violates the link condition")]
    LinkConditionViolated(Edge),
    #[error("edge {0} is not in the complex")]
    UnknownEdge(Edge),
}

impl From<ContractionError> for SurfaceError {
    fn from(e: ContractionError) -> Self {
        match e {
            ContractionError::UnknownEdge(e) => SurfaceError::UnknownEdge(e),
            ContractionError::LinkConditionViolated(e) => SurfaceError::LinkConditionViolated(e),
            _ => SurfaceError::NotClosed2Manifold,
        }
    }
}

/// Vertex graph and triangle graph of a closed surface.
///
/// Arcs are indexed by edge; `vertex_arcs[i]` and `triangle_arcs[i]` both
/// belong to `edges[i]`, and arc weight is the edge's position in `≺`.
#[derive(Clone, Debug)]
pub struct DualGraphs {
    pub edges: Vec<SimplexId>,
    pub vertex_arcs: Vec<(SimplexId, SimplexId)>,
    pub triangle_arcs: Vec<(SimplexId, SimplexId)>,
}

impl DualGraphs {
    pub fn new(k: &FilteredComplex) -> Result<Self, SurfaceError> {
        let edges: Vec<SimplexId> = k.ids_of_dim(1).collect();
        let mut vertex_arcs = Vec::with_capacity(edges.len());
        let mut triangle_arcs = Vec::with_capacity(edges.len());
        for &e in &edges {
            let f = k.facets(e);
            vertex_arcs.push((f[0], f[1]));
            match k.cofacets(e) {
                &[a, b] => triangle_arcs.push((a, b)),
                _ => return Err(SurfaceError::NotClosed2Manifold),
            }
        }
        Ok(Self {
            edges,
            vertex_arcs,
            triangle_arcs,
        })
    }
}

/// True iff every edge has two triangle cofacets and every vertex link is one cycle.
pub fn verify_closed_2manifold(k: &FilteredComplex) -> bool {
    if k.dim() != Some(2) {
        return false;
    }
    for id in k.order() {
        match k.dim_of(id) {
            1 if k.cofacets(id).len() != 2 => return false,
            0 if !vertex_link_is_cycle(k, id) => return false,
            _ => {}
        }
    }
    true
}

fn vertex_link_is_cycle(k: &FilteredComplex, vertex: SimplexId) -> bool {
    let x = k.vertices_of(vertex)[0];
    let other = |s: SimplexId| -> Vec<usize> { k.vertices_of(s).iter().copied().filter(|&y| y != x).collect() };
    let link_vertices: Vec<usize> = k.cofacets(vertex).iter().map(|&e| other(e)[0]).collect();
    if link_vertices.len() < 3 {
        return false;
    }
    let mut adjacency: std::collections::HashMap<usize, Vec<usize>> =
        link_vertices.iter().map(|&y| (y, Vec::new())).collect();
    let mut link_edges = 0;
    for &e in k.cofacets(vertex) {
        for &t in k.cofacets(e) {
            let ab = other(t);
            // every link edge is seen from both of its edges in the star
            if ab[0] == other(e)[0] {
                adjacency.get_mut(&ab[0]).unwrap().push(ab[1]);
                adjacency.get_mut(&ab[1]).unwrap().push(ab[0]);
                link_edges += 1;
            }
        }
    }
    if link_edges != link_vertices.len() || adjacency.values().any(|n| n.len() != 2) {
        return false;
    }
    // connected: walk the cycle from one vertex
    let start = link_vertices[0];
    let (mut prev, mut cur) = (start, adjacency[&start][0]);
    let mut steps = 1;
    while cur != start {
        let n = &adjacency[&cur];
        let next = if n[0] != prev { n[0] } else { n[1] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > link_vertices.len() {
            return false;
        }
    }
    steps == link_vertices.len()
}

/// Persistence pairing of a closed surface via the two spanning forests.
pub fn compute_pairing(k: &FilteredComplex) -> Result<PersistencePairing, SurfaceError> {
    if !verify_closed_2manifold(k) {
        return Err(SurfaceError::NotClosed2Manifold);
    }
    let graphs = DualGraphs::new(k)?;
    let n = k.len();
    let mut pairs = Vec::with_capacity(n / 2);
    let mut in_tree = vec![false; graphs.edges.len()];

    // Labels are simplex ids so label comparisons are `≺` comparisons.
    let mut vertices = LabeledDisjointSets::new(n);
    for (i, &(a, b)) in graphs.vertex_arcs.iter().enumerate() {
        let (la, lb) = (vertices.label(a.0), vertices.label(b.0));
        if la == lb {
            continue;
        }
        let (older, younger) = if la < lb { (la, lb) } else { (lb, la) };
        vertices.union_with_label(a.0, b.0, older);
        pairs.push((SimplexId(younger), graphs.edges[i]));
        in_tree[i] = true;
    }

    let mut triangles = LabeledDisjointSets::new(n);
    for (i, &(a, b)) in graphs.triangle_arcs.iter().enumerate().rev() {
        let (la, lb) = (triangles.label(a.0), triangles.label(b.0));
        if la == lb {
            continue;
        }
        debug_assert!(!in_tree[i], "edge in both spanning forests");
        let (earlier, later) = if la < lb { (la, lb) } else { (lb, la) };
        triangles.union_with_label(a.0, b.0, later);
        pairs.push((graphs.edges[i], SimplexId(earlier)));
        in_tree[i] = true;
    }

    let mut essential = Vec::new();
    if let Some(v0) = k.ids_of_dim(0).next() {
        essential.push(SimplexId(vertices.label(v0.0)));
    }
    essential.extend(
        graphs
            .edges
            .iter()
            .zip(&in_tree)
            .filter(|(_, &t)| !t)
            .map(|(&e, _)| e),
    );
    if let Some(t0) = k.ids_of_dim(2).next() {
        essential.push(SimplexId(triangles.label(t0.0)));
    }
    Ok(PersistencePairing::new(pairs, essential))
}

/// Mirrored edge pairs `(earlier, later)` in the two triangles around `e`.
fn mirrored_edges(k: &FilteredComplex, e: Edge) -> Option<[(SimplexId, SimplexId, SimplexId); 2]> {
    let (edge, _, _) = k.orient_edge(e)?;
    let &[t1, t2] = k.cofacets(edge) else { return None };
    let side = |t: SimplexId| {
        let w = *k.vertices_of(t).iter().find(|&&x| x != e.0 && x != e.1).unwrap();
        let a = k.find_unsorted(&[w, e.0]).unwrap();
        let b = k.find_unsorted(&[w, e.1]).unwrap();
        (a.min(b), a.max(b), t)
    };
    Some([side(t1), side(t2)])
}

/// Pairing-preservation test: `e` is paired with `v`, and each triangle of
/// `e` is paired with the `≺`-later of its two mirrored edges.
pub fn is_admissible(k: &FilteredComplex, e: Edge, pairing: &PersistencePairing) -> Result<bool, SurfaceError> {
    let (edge, u, v) = k.orient_edge(e).ok_or(SurfaceError::UnknownEdge(e))?;
    if !verify_closed_2manifold(k) {
        return Err(SurfaceError::NotClosed2Manifold);
    }
    if !link_condition_ids(k, edge, u, v) {
        return Err(SurfaceError::LinkConditionViolated(e));
    }
    let sides = mirrored_edges(k, e).ok_or(SurfaceError::NotClosed2Manifold)?;
    Ok(pairing.is_paired(v, edge) && sides.iter().all(|&(_, later, t)| pairing.is_paired(later, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::lower_star_extend;

    pub(crate) fn tetrahedron(heights: &[f64]) -> FilteredComplex {
        let mut list = Vec::new();
        for mask in 1u32..16 {
            let s: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            if s.len() <= 3 {
                list.push(s);
            }
        }
        lower_star_extend(heights, list).unwrap()
    }

    #[test]
    fn tetrahedron_is_a_closed_surface() {
        let k = tetrahedron(&[0.0, 1.0, 2.0, 3.0]);
        assert!(verify_closed_2manifold(&k));
        assert_eq!(k.len(), 14);
    }

    #[test]
    fn open_disc_is_rejected() {
        let k = crate::contraction::fixtures::fix_c();
        assert!(!verify_closed_2manifold(&k));
        assert_eq!(compute_pairing(&k), Err(SurfaceError::NotClosed2Manifold));
    }

    #[test]
    fn wedge_of_spheres_is_rejected() {
        // two tetrahedron boundaries sharing vertex 0
        let mut list = Vec::new();
        for verts in [[0usize, 1, 2, 3], [0, 4, 5, 6]] {
            for mask in 1u32..16 {
                let s: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).map(|i| verts[i]).collect();
                if s.len() <= 3 && !list.contains(&s) {
                    list.push(s);
                }
            }
        }
        let heights: Vec<f64> = (0..7).map(|x| x as f64).collect();
        let k = lower_star_extend(&heights, list).unwrap();
        // every edge still has two triangles; only the vertex link test catches it
        assert!(k.ids_of_dim(1).all(|e| k.cofacets(e).len() == 2));
        assert!(!verify_closed_2manifold(&k));
    }

    #[test]
    fn tetrahedron_pairing() {
        let k = tetrahedron(&[0.0, 1.0, 2.0, 3.0]);
        let p = compute_pairing(&k).unwrap();
        p.check(&k).unwrap();
        assert_eq!(p.essential_counts(&k), vec![1, 0, 1]);
        let (pairs, ess) = p.by_vertices(&k);
        assert_eq!(ess, vec![vec![0], vec![1, 2, 3]]);
        assert!(pairs.contains(&(vec![1], vec![0, 1])));
        assert!(pairs.contains(&(vec![2], vec![0, 2])));
        assert!(pairs.contains(&(vec![3], vec![0, 3])));
    }

    #[test]
    fn admissibility_clauses() {
        // no edge of the tetrahedron boundary satisfies the link condition
        let k = tetrahedron(&[0.0, 1.0, 2.0, 3.0]);
        let p = compute_pairing(&k).unwrap();
        for e in k.ids_of_dim(1) {
            let edge = k.edge_labels(e);
            assert_eq!(is_admissible(&k, edge, &p), Err(SurfaceError::LinkConditionViolated(edge)));
        }
    }
}
