//! Filtration degrees and associated graded algebras.

use super::{AlgError, AlgebraCore, BasedAlgebra, Grade, KernelPart, SparseVec};
use crate::rootdata::RootDatum;
use crate::scalars::Field;
use std::sync::Arc;

/// Degree of F^{(r)} u E^{(s)}: r_N + θ r_{N−1} + … + θ^{N−1} r_1 + θ^N s_1 + … + θ^{2N−1} s_N
/// + θ^{2N} · total height, with θ = 2 p^r ℓ (θ = 2ℓ when r = 0).
pub fn monomial_degree(theta: u64, r: &[u32], s: &[u32], heights: &[i64]) -> u64 {
    let n = r.len();
    let mut deg = 0u64;
    let mut pw = 1u64;
    for k in (0..n).rev() {
        deg += pw * r[k] as u64;
        pw *= theta;
    }
    for &x in s {
        deg += pw * x as u64;
        pw *= theta;
    }
    let ht: i64 = r
        .iter()
        .chain(s)
        .zip(heights.iter().chain(heights))
        .map(|(&x, h)| x as i64 * h)
        .sum();
    deg + pw * ht as u64
}

/// The filtration degree of every basis element of a small quantum group, kernel or tower algebra.
pub fn pbw_filtration<K: Field>(alg: &BasedAlgebra<K>) -> Result<Vec<u64>, AlgError> {
    let info = &alg.info;
    let scale = if info.r == 0 { 1 } else { info.p.pow(info.r) };
    let theta = 2 * scale * info.ell;
    if let Some(q) = &alg.quantum {
        let heights: Vec<i64> = q
            .generic
            .roots
            .iter()
            .map(|g| RootDatum::height(g))
            .collect();
        let zero = vec![0u32; q.n_roots];
        return Ok((0..alg.dim())
            .map(|i| match info.part.as_str() {
                "u" => monomial_degree(theta, &q.exps[i], &zero, &heights),
                "b" => monomial_degree(theta, &q.exps[i / q.n_tor], &zero, &heights),
                _ => {
                    let b = i % q.n_mono;
                    let a = i / q.n_mono / q.n_tor;
                    monomial_degree(theta, &q.exps[a], &q.exps[b], &heights)
                }
            })
            .collect());
    }
    if let Some(k) = &alg.kernel {
        return Ok((0..alg.dim())
            .map(|i| {
                let (a, _, b) = k.split(i);
                let s = if k.part == KernelPart::G {
                    vec![b as u32]
                } else {
                    vec![0]
                };
                monomial_degree(theta, &[a as u32], &s, &[1])
            })
            .collect());
    }
    // graded algebras: any additive degree works
    let mut out = vec![];
    for i in 0..alg.dim() {
        let g = alg
            .grade(i)
            .ok_or_else(|| AlgError::BadParameters("no filtration available".into()))?;
        let mut d = 0u64;
        for &x in g.coords().iter() {
            d = d * theta + x as u64;
        }
        out.push(d);
    }
    Ok(out)
}

struct GrCore<K: Field> {
    inner: Arc<dyn AlgebraCore<K>>,
    deg: Vec<u64>,
}

impl<K: Field> AlgebraCore<K> for GrCore<K> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn label(&self, i: usize) -> String {
        self.inner.label(i)
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        self.inner.weight(i)
    }
    fn grade(&self, i: usize) -> Option<Grade> {
        self.inner.grade(i)
    }
    fn augmentation(&self, i: usize) -> K::E {
        self.inner.augmentation(i)
    }
    fn unit(&self) -> SparseVec<K::E> {
        self.inner.unit()
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        let d = self.deg[i] + self.deg[j];
        self.inner
            .mul(i, j)
            .into_iter()
            .filter(|(t, _)| self.deg[*t] == d)
            .collect()
    }
}

/// Keeps the products of maximal (additive) filtration degree; checks submultiplicativity first.
/// Lazily multiplied algebras are checked on `sample` pseudo-random pairs.
pub fn associated_graded<K: Field>(
    alg: &BasedAlgebra<K>,
    deg: &[u64],
    sample: usize,
) -> Result<BasedAlgebra<K>, AlgError> {
    let n = alg.dim();
    if deg.len() != n {
        return Err(AlgError::BadParameters(
            "one degree per basis element is needed".into(),
        ));
    }
    let check = |i: usize, j: usize| -> Result<(), AlgError> {
        for (t, _) in alg.mul_basis(i, j) {
            if deg[t] > deg[i] + deg[j] {
                return Err(AlgError::NotFiltered(format!(
                    "{} · {} ∋ {}",
                    alg.label(i),
                    alg.label(j),
                    alg.label(t)
                )));
            }
        }
        Ok(())
    };
    if alg.is_tabulated() {
        for i in 0..n {
            for j in 0..n {
                check(i, j)?;
            }
        }
    } else {
        let mut s: u64 = 0x2545f4914f6cdd1d;
        for _ in 0..sample {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let i = (s % n as u64) as usize;
            let j = ((s >> 32) % n as u64) as usize;
            check(i, j)?;
        }
    }
    let core = GrCore {
        inner: alg.core().clone(),
        deg: deg.to_vec(),
    };
    let mut info = alg.info.clone();
    info.kind = format!("gr {}", info.kind);
    let mut out = BasedAlgebra::new(alg.field.clone(), info, Arc::new(core));
    out.generators = alg.generators.clone();
    out.filtration = Some(deg.to_vec());
    out.quantum = alg.quantum.clone();
    out.kernel = alg.kernel.clone();
    Ok(out)
}
