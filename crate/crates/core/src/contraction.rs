//! Edge contraction as a simplicial map.
//!
//! Contracting `{u,v}` with `u ≺ v` sends vertex `v` to `u`. Simplices that
//! contain both endpoints are *vanishing*; faces of vanishing simplices that
//! contain exactly one endpoint come in *mirrored* pairs that collapse onto one
//! image; non-local simplices with a mirrored facet are *adjacent*.
//!
//! The contracted complex inherits heights by taking the minimum over
//! preimages, and inherits the total order by placing each image at the first
//! position among its preimages.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::chain::{Chain, ChainError};
use crate::complex::{ComplexError, Edge, FilteredComplex, Simplex, SimplexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContractionError {
    #[error("edge {0} is not in the complex")]
    UnknownEdge(Edge),
    #[error("edge {0} violates the link condition")]
    LinkConditionViolated(Edge),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("contracted complex is malformed: {0}")]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexClass {
    Vanishing,
    Mirrored { partner: SimplexId },
    Adjacent,
    Nonlocal,
}

impl SimplexClass {
    pub fn is_local(self) -> bool {
        matches!(self, SimplexClass::Vanishing | SimplexClass::Mirrored { .. })
    }

    pub fn mirror_partner(self) -> Option<SimplexId> {
        match self {
            SimplexClass::Mirrored { partner } => Some(partner),
            _ => None,
        }
    }
}

/// Classification of every simplex of a complex relative to one edge.
#[derive(Clone, Debug)]
pub struct Classification {
    /// Oriented edge, `u ≺ v`.
    pub edge: Edge,
    pub edge_id: SimplexId,
    pub u: SimplexId,
    pub v: SimplexId,
    classes: Vec<SimplexClass>,
    vanishing: Vec<SimplexId>,
}

impl Classification {
    pub fn class(&self, id: SimplexId) -> SimplexClass {
        self.classes[id.0]
    }

    pub fn classes(&self) -> &[SimplexClass] {
        &self.classes
    }

    /// Vanishing simplices (cofaces of the edge) in `≺` order.
    pub fn vanishing(&self) -> &[SimplexId] {
        &self.vanishing
    }

    /// Mirror pairs `(earlier, later)` together with their shared vanishing cofacet.
    pub fn mirror_pairs<'a>(
        &'a self,
        k: &'a FilteredComplex,
    ) -> impl Iterator<Item = (SimplexId, SimplexId, SimplexId)> + 'a {
        self.vanishing.iter().map(move |&tau| {
            let a = face_without(k, tau, self.edge.1);
            let b = face_without(k, tau, self.edge.0);
            (a.min(b), a.max(b), tau)
        })
    }
}

fn face_without(k: &FilteredComplex, id: SimplexId, drop: usize) -> SimplexId {
    let vs: Vec<usize> = k.vertices_of(id).iter().copied().filter(|&x| x != drop).collect();
    k.find(&vs).expect("complex is closed under faces")
}

/// Classifies every simplex of `k` relative to edge `e`.
pub fn classify(k: &FilteredComplex, e: Edge) -> Result<Classification, ContractionError> {
    let (edge_id, u, v) = k.orient_edge(e).ok_or(ContractionError::UnknownEdge(e))?;
    let edge = Edge(k.vertices_of(u)[0], k.vertices_of(v)[0]);
    let mut classes = vec![SimplexClass::Nonlocal; k.len()];
    let mut vanishing = k.cofaces(edge_id);
    vanishing.sort_unstable();
    for &tau in &vanishing {
        classes[tau.0] = SimplexClass::Vanishing;
    }
    let mut mirrors = Vec::with_capacity(2 * vanishing.len());
    for &tau in &vanishing {
        let with_u = face_without(k, tau, edge.1);
        let with_v = face_without(k, tau, edge.0);
        classes[with_u.0] = SimplexClass::Mirrored { partner: with_v };
        classes[with_v.0] = SimplexClass::Mirrored { partner: with_u };
        mirrors.push(with_u);
        mirrors.push(with_v);
    }
    for m in mirrors {
        for &alpha in k.cofacets(m) {
            if classes[alpha.0] == SimplexClass::Nonlocal {
                classes[alpha.0] = SimplexClass::Adjacent;
            }
        }
    }
    Ok(Classification {
        edge,
        edge_id,
        u,
        v,
        classes,
        vanishing,
    })
}

/// `lk(e) = lk(u) ∩ lk(v)`.
pub fn link_condition(k: &FilteredComplex, e: Edge) -> Result<bool, ContractionError> {
    let (edge_id, u, v) = k.orient_edge(e).ok_or(ContractionError::UnknownEdge(e))?;
    Ok(link_condition_ids(k, edge_id, u, v))
}

pub(crate) fn link_condition_ids(k: &FilteredComplex, edge: SimplexId, u: SimplexId, v: SimplexId) -> bool {
    let lk_e = k.link_vertex_sets(edge);
    let lk_u = k.link_vertex_sets(u);
    let lk_v = k.link_vertex_sets(v);
    let mut common = lk_u.intersection(&lk_v);
    // lk(e) ⊆ lk(u) ∩ lk(v) always holds, so comparing sizes suffices; the
    // explicit walk keeps the check honest on malformed input.
    let mut count = 0;
    for s in common.by_ref() {
        if !lk_e.contains(s) {
            return false;
        }
        count += 1;
    }
    count == lk_e.len()
}

/// The contraction map `K → K'` for one edge, together with `K'`.
#[derive(Clone, Debug)]
pub struct ContractionRecord<'a> {
    source: &'a FilteredComplex,
    classification: Classification,
    image: Vec<SimplexId>,
    preimages: Vec<Vec<SimplexId>>,
    contracted: FilteredComplex,
}

/// Contracts edge `e`, which must satisfy the link condition.
pub fn contract(k: &FilteredComplex, e: Edge) -> Result<ContractionRecord<'_>, ContractionError> {
    let classification = classify(k, e)?;
    let edge = classification.edge;
    if !link_condition_ids(k, classification.edge_id, classification.u, classification.v) {
        return Err(ContractionError::LinkConditionViolated(edge));
    }

    let mut kept = Vec::with_capacity(k.len());
    for id in k.order() {
        let keep = match classification.class(id) {
            SimplexClass::Vanishing => false,
            SimplexClass::Mirrored { partner } => id < partner,
            _ => true,
        };
        if keep {
            let s = k.simplex(id);
            kept.push(Simplex {
                vertices: substitute(&s.vertices, edge.1, edge.0),
                height: s.height,
            });
        }
    }
    let contracted = FilteredComplex::from_ordered(kept)?;

    let mut image = Vec::with_capacity(k.len());
    let mut preimages = vec![Vec::new(); contracted.len()];
    for id in k.order() {
        let target = contracted
            .find(&substitute(k.vertices_of(id), edge.1, edge.0))
            .ok_or(ContractionError::Complex(ComplexError::UnknownSimplex(id)))?;
        image.push(target);
        preimages[target.0].push(id);
    }

    Ok(ContractionRecord {
        source: k,
        classification,
        image,
        preimages,
        contracted,
    })
}

/// Contracts pairwise vertex-disjoint edges in one pass.
///
/// Gives the same complex as contracting them one after another, provided each
/// contraction satisfies the link condition at its turn; the caller checks that.
pub(crate) fn contract_edges(k: &FilteredComplex, edges: &[Edge]) -> Result<FilteredComplex, ContractionError> {
    let mut target: HashMap<usize, usize> = HashMap::with_capacity(edges.len());
    for &e in edges {
        let (_, u, v) = k.orient_edge(e).ok_or(ContractionError::UnknownEdge(e))?;
        target.insert(k.vertices_of(v)[0], k.vertices_of(u)[0]);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(k.len());
    let mut kept = Vec::with_capacity(k.len());
    for s in k.simplices() {
        let mut vs: Vec<usize> = s.vertices.iter().map(|x| *target.get(x).unwrap_or(x)).collect();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() == s.vertices.len() && seen.insert(vs.clone()) {
            kept.push(Simplex {
                vertices: vs,
                height: s.height,
            });
        }
    }
    Ok(FilteredComplex::from_ordered(kept)?)
}

/// Replaces `from` by `to` in a sorted vertex list, keeping it sorted and duplicate-free.
fn substitute(vertices: &[usize], from: usize, to: usize) -> Vec<usize> {
    if vertices.binary_search(&from).is_err() {
        return vertices.to_vec();
    }
    let mut out: Vec<usize> = vertices.iter().map(|&x| if x == from { to } else { x }).collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl<'a> ContractionRecord<'a> {
    pub fn source(&self) -> &'a FilteredComplex {
        self.source
    }

    pub fn contracted(&self) -> &FilteredComplex {
        &self.contracted
    }

    pub fn into_contracted(self) -> FilteredComplex {
        self.contracted
    }

    /// Oriented edge `(u, v)`, `u ≺ v`; `v` is the vertex that disappears.
    pub fn edge(&self) -> Edge {
        self.classification.edge
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn class(&self, id: SimplexId) -> SimplexClass {
        self.classification.class(id)
    }

    /// `ξ(σ)` as a simplex of the contracted complex.
    pub fn image(&self, id: SimplexId) -> SimplexId {
        self.image[id.0]
    }

    pub fn preimages(&self, id: SimplexId) -> &[SimplexId] {
        &self.preimages[id.0]
    }

    /// The `≺`-first preimage, which fixes the height and position of `id`.
    pub fn representative(&self, id: SimplexId) -> SimplexId {
        self.preimages[id.0][0]
    }

    /// Vanishing cofacet shared by a mirrored simplex and its partner.
    pub fn vanishing_cofacet(&self, mirror: SimplexId) -> Option<SimplexId> {
        self.class(mirror).mirror_partner()?;
        let mut vs = self.source.vertices_of(mirror).to_vec();
        let Edge(u, v) = self.edge();
        let missing = if vs.binary_search(&u).is_ok() { v } else { u };
        let pos = vs.binary_search(&missing).unwrap_err();
        vs.insert(pos, missing);
        self.source.find(&vs)
    }

    /// Chain map `ξ#`: images of equal dimension, summed mod 2.
    ///
    /// Vanishing simplices drop a dimension and contribute nothing.
    pub fn xi_chain(&self, c: &Chain) -> Result<Chain, ContractionError> {
        let p = c.dim();
        let mut out = Vec::with_capacity(c.len());
        for &s in c.simplices() {
            let simplex = self
                .source
                .get(s)
                .map_err(|_| ChainError::UnknownSimplex(s))?;
            if simplex.dim() != p {
                return Err(ChainError::DimensionMismatch {
                    id: s,
                    expected: p,
                    found: simplex.dim(),
                }
                .into());
            }
            let img = self.image(s);
            if self.contracted.dim_of(img) == p {
                out.push(img);
            }
        }
        Ok(Chain::from_ids_unchecked(p, out))
    }
}

/// Free-function form of [`ContractionRecord::xi_chain`].
pub fn xi_chain(rec: &ContractionRecord<'_>, c: &Chain) -> Result<Chain, ContractionError> {
    rec.xi_chain(c)
}


#[cfg(test)]
mod tests {
    use super::fixtures::{fan, fix_c};
    use super::*;
    use crate::complex::build_complex;

    fn class_of(k: &FilteredComplex, c: &Classification, vs: &[usize]) -> SimplexClass {
        c.class(k.find_unsorted(vs).unwrap())
    }

    #[test]
    fn fan_classification() {
        let k = fan();
        let c = classify(&k, Edge(0, 1)).unwrap();
        let (u, v, r, p, m, n, s, t, q) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
        for vs in [vec![u, v], vec![r, u, v], vec![p, u, v], vec![m, u, v], vec![n, u, v]] {
            assert_eq!(class_of(&k, &c, &vs), SimplexClass::Vanishing, "{vs:?}");
        }
        let ru = k.find_unsorted(&[r, u]).unwrap();
        let rv = k.find_unsorted(&[r, v]).unwrap();
        assert_eq!(c.class(ru), SimplexClass::Mirrored { partner: rv });
        assert_eq!(c.class(rv), SimplexClass::Mirrored { partner: ru });
        assert!(matches!(class_of(&k, &c, &[u]), SimplexClass::Mirrored { .. }));
        for vs in [vec![r, s, u], vec![m, t, u], vec![p, q, v], vec![r, t, u], vec![s, u], vec![t, u], vec![q, v]] {
            assert_eq!(class_of(&k, &c, &vs), SimplexClass::Adjacent, "{vs:?}");
        }
        assert_eq!(class_of(&k, &c, &[r, s]), SimplexClass::Nonlocal);
        assert_eq!(class_of(&k, &c, &[s]), SimplexClass::Nonlocal);
    }

    #[test]
    fn fix_c_classification() {
        let k = fix_c();
        let c = classify(&k, Edge(1, 0)).unwrap();
        assert_eq!(c.edge, Edge(0, 1));
        let vanishing: Vec<_> = c.vanishing().iter().map(|&s| k.vertices_of(s).to_vec()).collect();
        assert_eq!(vanishing, vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 3]]);
        let pairs: Vec<_> = c
            .mirror_pairs(&k)
            .map(|(a, b, _)| (k.vertices_of(a).to_vec(), k.vertices_of(b).to_vec()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (vec![0], vec![1]),
                (vec![0, 2], vec![1, 2]),
                (vec![0, 3], vec![1, 3]),
            ]
        );
        assert!(c.classes().iter().all(|&x| x != SimplexClass::Adjacent));
        assert!(matches!(classify(&k, Edge(2, 3)), Err(ContractionError::UnknownEdge(_))));
    }

    #[test]
    fn link_condition_cases() {
        let k = fix_c();
        assert!(link_condition(&k, Edge(0, 1)).unwrap());

        // u=0 w=1 v=2 x=3: 4-cycle plus chord uv, no triangles
        let sq = build_complex(
            [vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 2]]
                .into_iter()
                .map(|v| (v, 0.0)),
        )
        .unwrap();
        assert!(!link_condition(&sq, Edge(0, 2)).unwrap());
        assert!(matches!(contract(&sq, Edge(0, 2)), Err(ContractionError::LinkConditionViolated(_))));

        let single = build_complex(vec![(vec![0], 0.0), (vec![1], 0.0), (vec![0, 1], 0.0)]).unwrap();
        assert!(link_condition(&single, Edge(0, 1)).unwrap());
    }

    #[test]
    fn contract_fix_c() {
        let k = fix_c();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let kp = rec.contracted();
        let got: Vec<(Vec<usize>, f64)> = kp.simplices().iter().map(|s| (s.vertices.clone(), s.height)).collect();
        assert_eq!(
            got,
            vec![
                (vec![0], 0.0),
                (vec![2], 0.0),
                (vec![3], 0.0),
                (vec![0, 2], 1.0),
                (vec![0, 3], 1.0),
            ]
        );
        for id in k.order() {
            assert!(kp.height(rec.image(id)) <= k.height(id));
        }
        let uw = kp.find(&[0, 2]).unwrap();
        assert_eq!(rec.preimages(uw).len(), 3);
        assert_eq!(rec.representative(uw), k.find(&[0, 2]).unwrap());
    }

    #[test]
    fn mirror_image_takes_min_height_and_first_position() {
        // v w edge earlier than u w edge: tau = {v,w} ≺ m(tau) = {u,w}
        let k = build_complex(vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![1, 2], 3.0),
            (vec![0, 2], 5.0),
            (vec![0, 1], 5.0),
            (vec![0, 1, 2], 6.0),
        ])
        .unwrap();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let kp = rec.contracted();
        let img = kp.find(&[0, 2]).unwrap();
        assert_eq!(kp.height(img), 3.0);
        assert_eq!(rec.representative(img), k.find(&[1, 2]).unwrap());
    }

    #[test]
    fn xi_chain_cases() {
        let k = fix_c();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let id = |vs: &[usize]| k.find(vs).unwrap();

        // nonlocal simplices map identically (only w and x are nonlocal here)
        let c = Chain::from_ids(&k, 0, [id(&[2])]).unwrap();
        let img = rec.xi_chain(&c).unwrap();
        assert_eq!(rec.contracted().vertices_of(img.simplices()[0]), &[2]);

        let pair = Chain::from_ids(&k, 1, [id(&[0, 2]), id(&[1, 2])]).unwrap();
        assert!(rec.xi_chain(&pair).unwrap().is_zero());

        let square = Chain::from_ids(&k, 1, [id(&[0, 2]), id(&[1, 2]), id(&[1, 3]), id(&[0, 3])]).unwrap();
        assert!(square.is_cycle(&k));
        assert!(rec.xi_chain(&square).unwrap().is_zero());

        // the vanishing edge drops out of 1-chains
        let e = Chain::from_ids(&k, 1, [id(&[0, 1])]).unwrap();
        assert!(rec.xi_chain(&e).unwrap().is_zero());
    }

    #[test]
    fn vanishing_cofacet_lookup() {
        let k = fix_c();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let vw = k.find(&[1, 2]).unwrap();
        assert_eq!(rec.vanishing_cofacet(vw), k.find(&[0, 1, 2]));
        assert_eq!(rec.vanishing_cofacet(k.vertex(1).unwrap()), k.find(&[0, 1]));
        assert_eq!(rec.vanishing_cofacet(k.vertex(2).unwrap()), None);
    }
}
