//! The chain map `ψ : C(K') → C(K)` going back across a contraction.
//!
//! Each simplex of `K'` is sent to its `≺`-first preimage, plus the vanishing
//! cofacet of every `≺`-later mirror among that preimage's facets. On images
//! of mirror pairs this adds the vanishing simplices attached through a later
//! mirror facet; on images of adjacent simplices it closes the hole left by
//! the later mirror; nonlocal simplices map to themselves. The result is a
//! chain map and `ξ ∘ ψ` is the identity.

use super::StabilityError;
use crate::chain::{Chain, ChainError};
use crate::complex::SimplexId;
use crate::contraction::{ContractionRecord, SimplexClass};

/// `ψ(c)` for a `p`-chain `c` of the contracted complex.
pub fn psi_chain(rec: &ContractionRecord<'_>, c: &Chain, p: usize) -> Result<Chain, StabilityError> {
    if c.dim() != p {
        return Err(StabilityError::DimensionMismatch {
            expected: p,
            found: c.dim(),
        });
    }
    let target = rec.contracted();
    let source = rec.source();
    let mut out: Vec<SimplexId> = Vec::with_capacity(2 * c.len());
    for &sigma in c.simplices() {
        let s = target.get(sigma).map_err(|_| ChainError::UnknownSimplex(sigma))?;
        if s.dim() != p {
            return Err(ChainError::DimensionMismatch {
                id: sigma,
                expected: p,
                found: s.dim(),
            }
            .into());
        }
        let rep = rec.representative(sigma);
        out.push(rep);
        for &eta in source.facets(rep) {
            if let SimplexClass::Mirrored { partner } = rec.class(eta) {
                if partner < eta {
                    out.push(rec.vanishing_cofacet(eta).expect("mirrors have a vanishing cofacet"));
                }
            }
        }
    }
    Ok(Chain::from_ids_unchecked(p, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Edge;
    use crate::contraction::contract;
    use crate::contraction::fixtures::{fan, fix_c};

    fn chain_of(k: &crate::complex::FilteredComplex, dim: usize, simplices: &[&[usize]]) -> Chain {
        Chain::from_ids(k, dim, simplices.iter().map(|s| k.find(s).unwrap())).unwrap()
    }

    #[test]
    fn image_of_earlier_mirror_pulls_back_to_itself() {
        let k = fix_c();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let kc = rec.contracted();
        let uw = chain_of(kc, 1, &[&[0, 2]]);
        assert_eq!(psi_chain(&rec, &uw, 1).unwrap(), chain_of(&k, 1, &[&[0, 2]]));
        let u = chain_of(kc, 0, &[&[0]]);
        assert_eq!(psi_chain(&rec, &u, 0).unwrap(), chain_of(&k, 0, &[&[0]]));
    }

    #[test]
    fn adjacent_simplex_gets_vanishing_cofacet() {
        // in the fan, u=0 ≺ v=1; edge {v,q} is adjacent through the later mirror v
        let k = fan();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let kc = rec.contracted();
        let uq = chain_of(kc, 1, &[&[0, 8]]);
        let back = psi_chain(&rec, &uq, 1).unwrap();
        assert_eq!(back, chain_of(&k, 1, &[&[1, 8], &[0, 1]]));
        assert_eq!(rec.xi_chain(&back).unwrap(), uq);
    }

    #[test]
    fn dimension_checked() {
        let k = fix_c();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let c = chain_of(rec.contracted(), 1, &[&[0, 2]]);
        assert_eq!(
            psi_chain(&rec, &c, 0),
            Err(StabilityError::DimensionMismatch { expected: 0, found: 1 })
        );
    }

    #[test]
    fn commutes_with_boundary_on_fan() {
        let k = fan();
        let rec = contract(&k, Edge(0, 1)).unwrap();
        let kc = rec.contracted();
        for p in 1..=kc.dim().unwrap() {
            for id in kc.ids_of_dim(p) {
                let c = Chain::from_ids(kc, p, [id]).unwrap();
                let lhs = psi_chain(&rec, &c, p).unwrap().boundary(&k);
                let rhs = psi_chain(&rec, &c.boundary(kc), p - 1).unwrap();
                assert_eq!(lhs, rhs, "simplex {:?}", kc.vertices_of(id));
                assert_eq!(rec.xi_chain(&psi_chain(&rec, &c, p).unwrap()).unwrap(), c);
            }
        }
    }
}
