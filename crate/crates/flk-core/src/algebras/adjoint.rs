//! Stability of a subalgebra under the adjoint action Ad(h)(y) = Σ h₍₁₎ y S(h₍₂₎).

use super::{AlgError, BasedAlgebra, SparseVec};
use crate::linalg::Subspace;
use crate::scalars::Field;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub generators: Vec<String>,
    pub checked: usize,
    /// (generator, index of the spanning element) pairs whose image leaves the subspace.
    pub failures: Vec<(String, usize)>,
    pub stable: bool,
}

/// `sub` lists amb-elements spanning the subalgebra; every Ad(h)(y) must stay in their span.
pub fn adjoint_stability_check<K: Field>(
    sub: &[SparseVec<K::E>],
    amb: &BasedAlgebra<K>,
    generators: &[&str],
) -> Result<AdjointReport, AlgError> {
    let hopf = amb.hopf.as_ref().ok_or(AlgError::HopfDataMissing)?;
    let k = &amb.field;
    let singletons = sub.iter().all(|v| v.len() == 1);
    let index_set: HashSet<usize> = if singletons {
        sub.iter().map(|v| v[0].0).collect()
    } else {
        HashSet::new()
    };
    let space = if singletons {
        None
    } else {
        let n = amb.dim();
        let dense: Vec<Vec<K::E>> = sub.iter().map(|v| super::sv_to_dense(k, v, n)).collect();
        Some(Subspace::spanned_by(k, n, &dense))
    };
    let contains = |v: &SparseVec<K::E>| -> bool {
        match &space {
            None => v.iter().all(|(i, _)| index_set.contains(i)),
            Some(s) => s.contains(k, &super::sv_to_dense(k, v, amb.dim())),
        }
    };
    let mut checked = 0;
    let mut failures = vec![];
    for name in generators {
        let g = hopf
            .generators
            .iter()
            .find(|g| g.name == *name)
            .ok_or_else(|| AlgError::BadParameters(format!("no generator {name}")))?;
        for (idx, y) in sub.iter().enumerate() {
            let mut total: SparseVec<K::E> = vec![];
            for (h1, sh2) in &g.adjoint_terms {
                let t = amb.mul(&amb.mul(h1, y), sh2);
                total = super::sv_add(k, &total, &t);
            }
            checked += 1;
            if !contains(&total) {
                failures.push((name.to_string(), idx));
            }
        }
    }
    Ok(AdjointReport {
        generators: generators.iter().map(|s| s.to_string()).collect(),
        checked,
        stable: failures.is_empty(),
        failures,
    })
}

/// Σ S(h₁) h₂ = ε(h) and Σ h₁ S(h₂) = ε(h) for every stored generator.
pub fn check_antipode<K: Field>(amb: &BasedAlgebra<K>) -> Result<bool, AlgError> {
    let hopf = amb.hopf.as_ref().ok_or(AlgError::HopfDataMissing)?;
    let k = &amb.field;
    for g in &hopf.generators {
        let eps = amb.augment(&g.element);
        let expect: SparseVec<K::E> = amb
            .one()
            .into_iter()
            .map(|(i, x)| (i, k.mul(&x, &eps)))
            .filter(|(_, x)| !k.is_zero(x))
            .collect();
        let mut left: SparseVec<K::E> = vec![];
        for (a, b) in &g.antipode_terms {
            left = super::sv_add(k, &left, &amb.mul(a, b));
        }
        let mut right: SparseVec<K::E> = vec![];
        for (a, b) in &g.adjoint_terms {
            right = super::sv_add(k, &right, &amb.mul(a, b));
        }
        if left != expect || right != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::small::basis_index;
    use crate::algebras::{build_dividedpower_kernel_a1, build_small_quantum, KernelPart, Part};
    use crate::rootdata::RootDatum;
    use crate::scalars::{make_field, Gf};

    #[test]
    fn antipode_axioms() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        assert!(check_antipode(&g).unwrap());
        let k3 = Gf::new(&make_field(3, 5).unwrap()).unwrap();
        let g1 = build_dividedpower_kernel_a1(&k3, 1, KernelPart::G).unwrap();
        assert!(check_antipode(&g1).unwrap());
    }

    #[test]
    fn borel_stable_in_a1() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        let q = g.quantum.clone().unwrap();
        let sub: Vec<_> = (0..q.n_mono)
            .flat_map(|a| (0..q.n_tor).map(move |c| (a, c)))
            .map(|(a, c)| vec![(basis_index(&q, Part::G, a, c, 0).unwrap(), 1u32)])
            .collect();
        let rep = adjoint_stability_check(&sub, &g, &["F1", "K1"]).unwrap();
        assert!(rep.stable);
        // E moves F out of the Borel part
        let rep = adjoint_stability_check(&sub, &g, &["E1"]).unwrap();
        assert!(!rep.stable);
    }
}
