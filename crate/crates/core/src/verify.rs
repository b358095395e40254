//! Property checks on generated complexes, as run by `contracta verify`.
//!
//! Each check returns `Err` with a description when a property fails.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::Chain;
use crate::complex::{Edge, FilteredComplex};
use crate::contraction::{contract, ContractionRecord};
use crate::generate::{random_closed_surface, random_flag_complex, seeded_rng};
use crate::pairing::{PersistencePairing, VertexPairing};
use crate::persistence::{bottleneck, diagram, reduce, SublevelHomology};
use crate::stability::{is_p_eps_admissible, psi_chain};
use crate::surface;


/// Spanning-forest pairing equals the reduction pairing.
pub fn check_surface_pairing(k: &FilteredComplex) -> Result<(), String> {
    let fast = surface::compute_pairing(k).map_err(|e| e.to_string())?;
    let slow = reduce(k);
    if fast != slow {
        return Err(format!(
            "surface pairing differs from reduction on a complex with {} simplices",
            k.len()
        ));
    }
    Ok(())
}

/// Pairs of `P(K)` pushed through the contraction, dropping collapsed pairs.
pub fn pairing_image(rec: &ContractionRecord<'_>, pairing: &PersistencePairing) -> VertexPairing {
    let target = rec.contracted();
    let labels = |id| target.vertices_of(rec.image(id)).to_vec();
    let mut pairs: Vec<_> = pairing
        .pairs()
        .iter()
        .filter(|&&(a, b)| rec.image(a) != rec.image(b))
        .map(|&(a, b)| (labels(a), labels(b)))
        .collect();
    let mut essential: Vec<_> = pairing.essential().iter().map(|&e| labels(e)).collect();
    pairs.sort();
    essential.sort();
    (pairs, essential)
}

/// Every pairing-admissible edge of a closed surface preserves the pairing.
/// Returns the number of edges checked.
pub fn check_pairing_preservation(k: &FilteredComplex) -> Result<usize, String> {
    let pairing = surface::compute_pairing(k).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for e in k.ids_of_dim(1) {
        let edge = k.edge_labels(e);
        if surface::is_admissible(k, edge, &pairing) != Ok(true) {
            continue;
        }
        let rec = contract(k, edge).map_err(|e| e.to_string())?;
        let after = reduce(rec.contracted()).by_vertices(rec.contracted());
        if after != pairing_image(&rec, &pairing) {
            return Err(format!("contracting {edge} changed the pairing"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `d_b(Dgm_p(K), Dgm_p(K'))` for one contraction; fails above `eps`.
pub fn check_single_stability(k: &FilteredComplex, e: Edge, p: usize, eps: f64) -> Result<f64, String> {
    let rec = contract(k, e).map_err(|e| e.to_string())?;
    let before = diagram(&reduce(k), k, p).map_err(|e| e.to_string())?;
    let kc = rec.contracted();
    let after = if kc.dim().is_some_and(|d| d >= p) {
        diagram(&reduce(kc), kc, p).map_err(|e| e.to_string())?
    } else {
        Default::default()
    };
    let d = bottleneck(&before, &after);
    if d > eps + 1e-9 {
        return Err(format!("contracting {e} moved Dgm_{p} by {d} > {eps}"));
    }
    Ok(d)
}

/// Random mod-2 combination of `basis`.
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, dim: usize, basis: &[Chain]) -> Chain {
    let mut c = Chain::zero(dim);
    for b in basis {
        if rng.gen_bool(0.5) {
            c.add_assign(b);
        }
    }
    c
}

/// Random chain of dimension `dim` over all of `k`.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, k: &FilteredComplex, dim: usize) -> Chain {
    let ids: Vec<_> = k.ids_of_dim(dim).filter(|_| rng.gen_bool(0.4)).collect();
    Chain::from_ids(k, dim, ids).expect("ids have the requested dimension")
}

/// `ξ` and `ψ` commute with the boundary, send cycles to cycles, and
/// `ξ ∘ ψ = id`. Returns the number of chains tested.
pub fn check_chain_maps<R: Rng + ?Sized>(rng: &mut R, rec: &ContractionRecord<'_>, trials: usize) -> Result<usize, String> {
    let (k, kc) = (rec.source(), rec.contracted());
    let mut tested = 0;
    for _ in 0..trials {
        for p in 1..=kc.dim().unwrap_or(0) {
            let c = random_chain(rng, k, p);
            let lhs = rec.xi_chain(&c).map_err(|e| e.to_string())?.boundary(kc);
            let rhs = rec.xi_chain(&c.boundary(k)).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("ξ does not commute with ∂ in dimension {p}"));
            }
            let c = random_chain(rng, kc, p);
            let back = psi_chain(rec, &c, p).map_err(|e| e.to_string())?;
            if back.boundary(k) != psi_chain(rec, &c.boundary(kc), p - 1).map_err(|e| e.to_string())? {
                return Err(format!("ψ does not commute with ∂ in dimension {p}"));
            }
            if rec.xi_chain(&back).map_err(|e| e.to_string())? != c {
                return Err(format!("ξψ is not the identity in dimension {p}"));
            }
            tested += 2;
        }
    }
    Ok(tested)
}

/// For cycles `z` of `K_α`, `ψξ(z)` is homologous to `z` in `K_{α+ε}`.
/// Returns the number of cycles tested.
pub fn check_round_trip<R: Rng + ?Sized>(rng: &mut R, rec: &ContractionRecord<'_>, p: usize, eps: f64, trials: usize) -> Result<usize, String> {
    let k = rec.source();
    let homology = SublevelHomology::new(k);
    let mut heights: Vec<f64> = k.simplices().iter().map(|s| s.height).collect();
    heights.dedup();
    let mut tested = 0;
    for _ in 0..trials {
        let alpha = *heights.choose(rng).expect("complex is not empty");
        let basis = homology.cycle_basis(p, alpha);
        let z = random_combination(rng, p, &basis);
        let image = rec.xi_chain(&z).map_err(|e| e.to_string())?;
        let back = psi_chain(rec, &image, p).map_err(|e| e.to_string())?;
        let level = alpha + eps;
        match homology.homologous(level, &z, &back) {
            Ok(true) => tested += 1,
            Ok(false) => return Err(format!("ψξ(z) not homologous to z at level {level}")),
            Err(e) => return Err(format!("ψξ(z) at level {level}: {e}")),
        }
    }
    Ok(tested)
}

/// Tally of one `verify` run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub checks: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct CaseOutcome {
    checks: BTreeMap<String, usize>,
    failures: Vec<String>,
}

impl CaseOutcome {
    fn record(&mut self, name: &str, case: usize, result: Result<usize, String>) {
        match result {
            Ok(n) => *self.checks.entry(name.to_string()).or_default() += n,
            Err(e) => self.failures.push(format!("case {case}, {name}: {e}")),
        }
    }
}

fn run_case(seed: u64, case: usize) -> CaseOutcome {
    let mut rng = seeded_rng(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(case as u64));
    let mut out = CaseOutcome::default();

    let s = random_closed_surface(&mut rng, 500);
    out.record("surface pairing", case, check_surface_pairing(&s).map(|_| 1));
    out.record("pairing preservation", case, check_pairing_preservation(&s));

    let k = random_flag_complex(&mut rng, 10, 0.45, 3);
    let p = rng.gen_range(0..=1usize);
    let eps = rng.gen_range(0.1..5.0);
    let mut edges: Vec<Edge> = k
        .ids_of_dim(1)
        .map(|e| k.edge_labels(e))
        .filter(|&e| is_p_eps_admissible(&k, e, p, eps) == Ok(true))
        .collect();
    edges.shuffle(&mut rng);
    if let Some(&e) = edges.first() {
        out.record("single contraction stability", case, check_single_stability(&k, e, p, eps).map(|_| 1));
        let rec = contract(&k, e).expect("admissible edges are contractible");
        out.record("chain maps", case, check_chain_maps(&mut rng, &rec, 3));
        out.record("round trip", case, check_round_trip(&mut rng, &rec, p, eps, 3));
    }
    out
}

/// Runs `cases` seeded cases in parallel.
pub fn run_suites(seed: u64, cases: usize) -> VerifyReport {
    let outcomes: Vec<CaseOutcome> = (0..cases).into_par_iter().map(|c| run_case(seed, c)).collect();
    let mut report = VerifyReport {
        seed,
        cases,
        ..Default::default()
    };
    for o in outcomes {
        for (name, n) in o.checks {
            *report.checks.entry(name).or_default() += n;
        }
        report.failures.extend(o.failures);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_few_cases() {
        let report = run_suites(11, 12);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.checks["surface pairing"], 12);
    }
}
