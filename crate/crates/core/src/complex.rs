//! Filtered simplicial complexes.
//!
//! A [`FilteredComplex`] stores every simplex together with a height, and the
//! facet/cofacet incidence between them. Simplices are kept in filtration
//! order: the [`SimplexId`] of a simplex *is* its position in the total order
//! `≺`, so comparing ids compares filtration positions.
//!
//! [`build_complex`] derives the order from `(height, dimension, vertex list)`.
//! [`FilteredComplex::from_ordered`] accepts a caller-supplied order instead,
//! which is how contraction carries the inherited order over to the contracted
//! complex.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Dense handle of a simplex inside one complex; equal to its filtration position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId(pub usize);

impl SimplexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A simplex given by its strictly increasing vertex labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub height: f64,
}

impl Simplex {
    #[inline]
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("simplex {simplex:?} has facet {facet:?} which is not in the complex")]
    MissingFace { simplex: Vec<usize>, facet: Vec<usize> },
    #[error("height of face {face:?} ({face_height}) exceeds height of coface {coface:?} ({coface_height})")]
    NonMonotoneHeight {
        face: Vec<usize>,
        face_height: f64,
        coface: Vec<usize>,
        coface_height: f64,
    },
    #[error("simplex {0:?} listed more than once")]
    DuplicateSimplex(Vec<usize>),
    #[error("simplex {0:?} has an empty or repeated vertex list")]
    InvalidSimplex(Vec<usize>),
    #[error("simplex {0:?} has a non-finite height")]
    NonFiniteHeight(Vec<usize>),
    #[error("vertex {0} has no height")]
    UnknownVertex(usize),
    #[error("unknown simplex {0}")]
    UnknownSimplex(SimplexId),
    #[error("simplex {later:?} precedes {earlier:?} in the supplied order but sorts after it by (height, dimension)")]
    NotFiltrationOrder { earlier: Vec<usize>, later: Vec<usize> },
}

/// Edge named by its two vertex labels, in either orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn sorted_vertices(self) -> [usize; 2] {
        if self.0 <= self.1 {
            [self.0, self.1]
        } else {
            [self.1, self.0]
        }
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Immutable filtered simplicial complex.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    lookup: HashMap<Vec<usize>, SimplexId>,
    facets: Vec<Vec<SimplexId>>,
    cofacets: Vec<Vec<SimplexId>>,
    vertex_ids: HashMap<usize, SimplexId>,
    max_dim: Option<usize>,
}

/// Builds a complex from `(vertex list, height)` entries, ordering simplices by
/// `(height, dimension, lexicographic vertex list)`.
///
/// Vertex lists need not be sorted. Missing faces are reported, never inserted.
pub fn build_complex<I, V>(simplex_list: I) -> Result<FilteredComplex, ComplexError>
where
    I: IntoIterator<Item = (V, f64)>,
    V: Into<Vec<usize>>,
{
    let mut entries = simplex_list
        .into_iter()
        .map(|(verts, h)| normalize(verts.into(), h))
        .collect::<Result<Vec<_>, _>>()?;
    entries.sort_by(filtration_cmp);
    FilteredComplex::from_ordered(entries)
}

/// Lower-star filtration: every simplex gets the maximum height of its vertices.
///
/// `vertex_heights[x]` is the height of vertex label `x`.
pub fn lower_star_extend<I, V>(vertex_heights: &[f64], skeleton: I) -> Result<FilteredComplex, ComplexError>
where
    I: IntoIterator<Item = V>,
    V: Into<Vec<usize>>,
{
    let mut list = Vec::new();
    for verts in skeleton {
        let verts = verts.into();
        let mut h = f64::NEG_INFINITY;
        for &x in &verts {
            let hx = *vertex_heights.get(x).ok_or(ComplexError::UnknownVertex(x))?;
            h = h.max(hx);
        }
        list.push((verts, h));
    }
    build_complex(list)
}

fn normalize(mut vertices: Vec<usize>, height: f64) -> Result<Simplex, ComplexError> {
    vertices.sort_unstable();
    if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
        return Err(ComplexError::InvalidSimplex(vertices));
    }
    if !height.is_finite() {
        return Err(ComplexError::NonFiniteHeight(vertices));
    }
    Ok(Simplex { vertices, height })
}

fn filtration_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.height
        .total_cmp(&b.height)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

impl FilteredComplex {
    /// Builds a complex whose total order is exactly the order of `simplices`.
    ///
    /// The sequence must be nondecreasing in `(height, dimension)`; ties are
    /// kept in the supplied order. Vertex lists must already be sorted.
    pub fn from_ordered(simplices: Vec<Simplex>) -> Result<Self, ComplexError> {
        let n = simplices.len();
        let mut lookup: HashMap<Vec<usize>, SimplexId> = HashMap::with_capacity(n);
        let mut vertex_ids = HashMap::new();
        let mut max_dim = None;
        for (i, s) in simplices.iter().enumerate() {
            if s.vertices.is_empty() || s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ComplexError::InvalidSimplex(s.vertices.clone()));
            }
            if !s.height.is_finite() {
                return Err(ComplexError::NonFiniteHeight(s.vertices.clone()));
            }
            if i > 0 {
                let prev = &simplices[i - 1];
                let key_order = prev
                    .height
                    .total_cmp(&s.height)
                    .then(prev.vertices.len().cmp(&s.vertices.len()));
                if key_order == Ordering::Greater {
                    return Err(ComplexError::NotFiltrationOrder {
                        earlier: s.vertices.clone(),
                        later: prev.vertices.clone(),
                    });
                }
            }
            if lookup.insert(s.vertices.clone(), SimplexId(i)).is_some() {
                return Err(ComplexError::DuplicateSimplex(s.vertices.clone()));
            }
            if s.vertices.len() == 1 {
                vertex_ids.insert(s.vertices[0], SimplexId(i));
            }
            max_dim = max_dim.max(Some(s.dim()));
        }

        let mut facets = vec![Vec::new(); n];
        let mut cofacets = vec![Vec::new(); n];
        let mut scratch = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            if s.vertices.len() < 2 {
                continue;
            }
            let mut fs = Vec::with_capacity(s.vertices.len());
            for skip in 0..s.vertices.len() {
                scratch.clear();
                scratch.extend(
                    s.vertices
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &x)| x),
                );
                let Some(&f) = lookup.get(scratch.as_slice()) else {
                    return Err(ComplexError::MissingFace {
                        simplex: s.vertices.clone(),
                        facet: scratch.clone(),
                    });
                };
                let fh = simplices[f.0].height;
                if fh > s.height {
                    return Err(ComplexError::NonMonotoneHeight {
                        face: scratch.clone(),
                        face_height: fh,
                        coface: s.vertices.clone(),
                        coface_height: s.height,
                    });
                }
                fs.push(f);
                cofacets[f.0].push(SimplexId(i));
            }
            fs.sort_unstable();
            facets[i] = fs;
        }

        Ok(Self {
            simplices,
            lookup,
            facets,
            cofacets,
            vertex_ids,
            max_dim,
        })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.max_dim
    }

    pub fn simplex(&self, id: SimplexId) -> &Simplex {
        &self.simplices[id.0]
    }

    pub fn get(&self, id: SimplexId) -> Result<&Simplex, ComplexError> {
        self.simplices.get(id.0).ok_or(ComplexError::UnknownSimplex(id))
    }

    pub fn height(&self, id: SimplexId) -> f64 {
        self.simplices[id.0].height
    }

    pub fn dim_of(&self, id: SimplexId) -> usize {
        self.simplices[id.0].dim()
    }

    pub fn vertices_of(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id.0].vertices
    }

    /// Looks up a simplex by its (sorted) vertex list.
    pub fn find(&self, vertices: &[usize]) -> Option<SimplexId> {
        self.lookup.get(vertices).copied()
    }

    /// Like [`find`](Self::find) but sorts the vertex list first.
    pub fn find_unsorted(&self, vertices: &[usize]) -> Option<SimplexId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.find(&v)
    }

    pub fn vertex(&self, label: usize) -> Option<SimplexId> {
        self.vertex_ids.get(&label).copied()
    }

    pub fn edge(&self, e: Edge) -> Option<SimplexId> {
        if e.0 == e.1 {
            return None;
        }
        self.find(&e.sorted_vertices())
    }

    pub fn facets(&self, id: SimplexId) -> &[SimplexId] {
        &self.facets[id.0]
    }

    pub fn cofacets(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofacets[id.0]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Simplex ids in `≺` order.
    pub fn order(&self) -> impl DoubleEndedIterator<Item = SimplexId> + ExactSizeIterator + '_ {
        (0..self.simplices.len()).map(SimplexId)
    }

    /// Simplex ids of a single dimension in `≺` order.
    pub fn ids_of_dim(&self, dim: usize) -> impl DoubleEndedIterator<Item = SimplexId> + '_ {
        self.order().filter(move |&id| self.dim_of(id) == dim)
    }

    pub fn count_of_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }

    /// Euler characteristic `Σ (-1)^dim`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Number of simplices with height `≤ a`; the sublevel set is this prefix.
    pub fn sublevel_len(&self, a: f64) -> usize {
        self.simplices.partition_point(|s| s.height <= a)
    }

    /// All simplices of height `≤ a`, in `≺` order.
    pub fn sublevel(&self, a: f64) -> Vec<SimplexId> {
        (0..self.sublevel_len(a)).map(SimplexId).collect()
    }

    /// Orients an edge so that `u ≺ v`; returns `(edge, u, v)` simplex ids.
    pub fn orient_edge(&self, e: Edge) -> Option<(SimplexId, SimplexId, SimplexId)> {
        let id = self.edge(e)?;
        let a = self.vertex(e.0)?;
        let b = self.vertex(e.1)?;
        Some(if a < b { (id, a, b) } else { (id, b, a) })
    }

    /// Edge labels of an edge simplex, oriented `u ≺ v`.
    pub fn edge_labels(&self, id: SimplexId) -> Edge {
        let vs = self.vertices_of(id);
        debug_assert_eq!(vs.len(), 2);
        let (a, b) = (vs[0], vs[1]);
        if self.vertex_ids[&a] < self.vertex_ids[&b] {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    /// `cl(S)`: every face of a simplex in `S`, including the simplex itself.
    pub fn closure(&self, set: &[SimplexId]) -> BTreeSet<SimplexId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<SimplexId> = set.to_vec();
        while let Some(s) = stack.pop() {
            if out.insert(s) {
                stack.extend_from_slice(self.facets(s));
            }
        }
        out
    }

    /// `st(S)`: every coface of a simplex in `S`, including the simplex itself.
    pub fn star(&self, set: &[SimplexId]) -> BTreeSet<SimplexId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<SimplexId> = set.to_vec();
        while let Some(s) = stack.pop() {
            if out.insert(s) {
                stack.extend_from_slice(self.cofacets(s));
            }
        }
        out
    }

    /// `lk(σ) = cl(st(σ)) \ st(cl(σ))`.
    pub fn link(&self, sigma: SimplexId) -> Result<BTreeSet<SimplexId>, ComplexError> {
        self.get(sigma)?;
        let st = self.star(&[sigma]);
        let st: Vec<_> = st.into_iter().collect();
        let cl_st = self.closure(&st);
        let cl = self.closure(&[sigma]);
        let cl: Vec<_> = cl.into_iter().collect();
        let st_cl = self.star(&cl);
        Ok(cl_st.difference(&st_cl).copied().collect())
    }

    /// Cofaces of `sigma` including itself; same set as `star(&[sigma])`.
    pub fn cofaces(&self, sigma: SimplexId) -> Vec<SimplexId> {
        let mut out = vec![sigma];
        let mut i = 0;
        while i < out.len() {
            for &c in self.cofacets(out[i]) {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    /// Link as vertex lists: `{τ \ σ : τ ∈ st(σ), τ ≠ σ}`.
    ///
    /// Equal to [`link`](Self::link) on a closed complex but only walks the star.
    pub fn link_vertex_sets(&self, sigma: SimplexId) -> BTreeSet<Vec<usize>> {
        let base = self.vertices_of(sigma);
        self.cofaces(sigma)
            .into_iter()
            .filter(|&t| t != sigma)
            .map(|t| {
                self.vertices_of(t)
                    .iter()
                    .copied()
                    .filter(|x| base.binary_search(x).is_err())
                    .collect()
            })
            .collect()
    }

    /// Checks the structural invariants; used by tests and `verify`.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, s) in self.simplices.iter().enumerate() {
            let id = SimplexId(i);
            if s.vertices.len() > 1 && self.facets(id).len() != s.vertices.len() {
                return Err(format!("simplex {:?} has {} facets", s.vertices, self.facets(id).len()));
            }
            for &f in self.facets(id) {
                if f >= id {
                    return Err(format!("facet {:?} does not precede {:?}", self.vertices_of(f), s.vertices));
                }
                if self.height(f) > s.height {
                    return Err(format!("height of {:?} exceeds {:?}", self.vertices_of(f), s.vertices));
                }
                if !self.cofacets(f).contains(&id) {
                    return Err(format!("cofacet list of {:?} misses {:?}", self.vertices_of(f), s.vertices));
                }
            }
            for &c in self.cofacets(id) {
                if !self.facets(c).contains(&id) {
                    return Err(format!("facet list of {:?} misses {:?}", self.vertices_of(c), s.vertices));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(k: &FilteredComplex, lists: &[&[usize]]) -> BTreeSet<SimplexId> {
        lists.iter().map(|l| k.find_unsorted(l).unwrap()).collect()
    }

    // a=0, b=1, c=2
    fn fix_b() -> FilteredComplex {
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

    #[test]
    fn order_by_height_dim_lex() {
        let k = build_complex(vec![(vec![1], 0.0), (vec![0, 1], 1.0), (vec![0], 0.0)]).unwrap();
        let order: Vec<_> = k.order().map(|id| k.vertices_of(id).to_vec()).collect();
        assert_eq!(order, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn missing_face_is_an_error() {
        let err = build_complex(vec![(vec![0], 0.0), (vec![0, 1], 1.0)]).unwrap_err();
        assert_eq!(
            err,
            ComplexError::MissingFace {
                simplex: vec![0, 1],
                facet: vec![1]
            }
        );
    }

    #[test]
    fn non_monotone_height_is_an_error() {
        let err = build_complex(vec![(vec![0], 2.0), (vec![1], 0.0), (vec![0, 1], 1.0)]).unwrap_err();
        assert!(matches!(err, ComplexError::NonMonotoneHeight { ref face, ref coface, .. } if face == &vec![0] && coface == &vec![0, 1]));
    }

    #[test]
    fn duplicate_simplex_is_an_error() {
        let err = build_complex(vec![(vec![0], 0.0), (vec![0], 1.0)]).unwrap_err();
        assert_eq!(err, ComplexError::DuplicateSimplex(vec![0]));
    }

    #[test]
    fn lower_star_takes_vertex_max() {
        let k = lower_star_extend(&[0.0, 3.0], vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        assert_eq!(k.height(k.find(&[0, 1]).unwrap()), 3.0);

        let k = lower_star_extend(&[0.0; 3], vec![vec![0], vec![1], vec![2], vec![0, 1]]).unwrap();
        assert!(k.simplices().iter().all(|s| s.height == 0.0));

        let tri = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let k = lower_star_extend(&[1.0, 2.0, 5.0], tri).unwrap();
        assert_eq!(k.height(k.find(&[0, 1, 2]).unwrap()), 5.0);
        assert_eq!(k.height(k.find(&[0, 1]).unwrap()), 2.0);

        let err = lower_star_extend(&[0.0], vec![vec![0], vec![1]]).unwrap_err();
        assert_eq!(err, ComplexError::UnknownVertex(1));
    }

    #[test]
    fn link_of_vertex_in_triangle() {
        let k = fix_b();
        let lk = k.link(k.vertex(0).unwrap()).unwrap();
        assert_eq!(lk, ids(&k, &[&[1], &[2], &[1, 2]]));
        let top = k.find(&[0, 1, 2]).unwrap();
        assert!(k.link(top).unwrap().is_empty());
        assert!(matches!(k.link(SimplexId(99)), Err(ComplexError::UnknownSimplex(_))));
    }

    #[test]
    fn link_of_shared_edge() {
        // triangles abc and abd; a=0,b=1,c=2,d=3
        let mut list = vec![];
        for s in [
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![0, 3],
            vec![1, 3],
            vec![0, 1, 2],
            vec![0, 1, 3],
        ] {
            list.push((s, 0.0));
        }
        let k = build_complex(list).unwrap();
        let ab = k.find(&[0, 1]).unwrap();
        assert_eq!(k.link(ab).unwrap(), ids(&k, &[&[2], &[3]]));
        let fast: BTreeSet<Vec<usize>> = [vec![2], vec![3]].into_iter().collect();
        assert_eq!(k.link_vertex_sets(ab), fast);
    }

    #[test]
    fn sublevel_sets() {
        let k = fix_b();
        assert!(k.sublevel(f64::NEG_INFINITY).is_empty());
        assert_eq!(k.sublevel(3.0).len(), 7);
        let at1: BTreeSet<_> = k.sublevel(1.0).into_iter().collect();
        assert_eq!(at1, ids(&k, &[&[0], &[1], &[2], &[0, 1], &[1, 2]]));
    }

    #[test]
    fn from_ordered_rejects_out_of_order() {
        let s = |v: Vec<usize>, h| Simplex { vertices: v, height: h };
        let err = FilteredComplex::from_ordered(vec![s(vec![0], 1.0), s(vec![1], 0.0)]).unwrap_err();
        assert!(matches!(err, ComplexError::NotFiltrationOrder { .. }));
        // equal keys keep the supplied tie order
        let k = FilteredComplex::from_ordered(vec![s(vec![1], 0.0), s(vec![0], 0.0)]).unwrap();
        assert!(k.vertex(1).unwrap() < k.vertex(0).unwrap());
    }
}
