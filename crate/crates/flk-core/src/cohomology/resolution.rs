//! Weight-tracked minimal free resolutions of the trivial module, built grade by grade.
//!
//! F_n = ⊕_t A e_{n,t}. At each grade g the kernel of d_{n−1} is compared with the span of
//! A · d(e_{n,s}) for the generators already chosen; a complement supplies new generators.
//! Because the grading is connected this is exactly Nakayama's criterion, so b_n = dim H^n(A, k).

use super::{CohomError, GradedAlgebra};
use crate::algebras::{Grade, SparseVec};
use crate::linalg::{kernel, zeros, Mat, Subspace};
use crate::rootdata::RootDatum;
use crate::scalars::Field;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// Element of a free module: ((generator, algebra basis id), coefficient), sorted.
pub type FreeElem<E> = Vec<((usize, usize), E)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGen {
    pub grade: Grade,
    /// Weight in root coordinates.
    pub weight: Vec<i64>,
}

pub struct Resolution<K: Field> {
    pub alg: Arc<dyn GradedAlgebra<K>>,
    pub n_max: usize,
    /// Internal total-degree cutoff (graded-infinite algebras only).
    pub cutoff: Option<u32>,
    pub gens: Vec<Vec<FreeGen>>,
    /// diffs[n][t] = d(e_{n,t}) ∈ F_{n−1}; diffs[0] is empty.
    pub diffs: Vec<Vec<FreeElem<K::E>>>,
}

impl<K: Field> std::fmt::Debug for Resolution<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Resolution")
            .field("betti", &self.betti())
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

fn sorted<E>(m: HashMap<(usize, usize), E>) -> FreeElem<E> {
    let mut v: FreeElem<E> = m.into_iter().collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

/// Block basis of a free module at grade g: pairs (generator, algebra id).
pub(crate) fn block<K: Field>(
    alg: &dyn GradedAlgebra<K>,
    gens: &[FreeGen],
    g: &Grade,
) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for (t, gen) in gens.iter().enumerate() {
        if let Some(h) = g.checked_sub(&gen.grade) {
            for id in alg.basis_in(&h) {
                out.push((t, id));
            }
        }
    }
    out
}

/// b · x for a basis element b and a free-module element x.
pub(crate) fn mul_left<K: Field>(
    alg: &dyn GradedAlgebra<K>,
    b: usize,
    x: &FreeElem<K::E>,
) -> FreeElem<K::E> {
    let k = alg.field();
    if b == alg.unit_id() {
        return x.clone();
    }
    let mut acc: HashMap<(usize, usize), K::E> = HashMap::new();
    for ((s, id), c) in x {
        for (id3, c2) in alg.mul(b, *id) {
            let e = acc.entry((*s, id3)).or_insert_with(|| k.zero());
            *e = k.add(e, &k.mul(c, &c2));
        }
    }
    acc.retain(|_, v| !k.is_zero(v));
    sorted(acc)
}

pub(crate) fn add_scaled<K: Field>(
    k: &K,
    acc: &mut HashMap<(usize, usize), K::E>,
    x: &FreeElem<K::E>,
    c: &K::E,
) {
    for (key, v) in x {
        let e = acc.entry(*key).or_insert_with(|| k.zero());
        *e = k.add(e, &k.mul(c, v));
    }
}

pub(crate) fn finish<K: Field>(k: &K, mut acc: HashMap<(usize, usize), K::E>) -> FreeElem<K::E> {
    acc.retain(|_, v| !k.is_zero(v));
    sorted(acc)
}

impl<K: Field> Resolution<K> {
    pub fn field(&self) -> &K {
        self.alg.field()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.len()).collect()
    }

    /// Dual weights of the cohomology classes in degree n (negatives of generator weights).
    pub fn class_weights(&self, n: usize) -> Vec<Vec<i64>> {
        self.gens[n]
            .iter()
            .map(|g| g.weight.iter().map(|x| -x).collect())
            .collect()
    }

    pub fn block(&self, n: usize, g: &Grade) -> Vec<(usize, usize)> {
        block(self.alg.as_ref(), &self.gens[n], g)
    }

    /// d_n(x) for x ∈ F_n, n ≥ 1.
    pub fn apply_d(&self, n: usize, x: &FreeElem<K::E>) -> FreeElem<K::E> {
        let k = self.field();
        let mut acc = HashMap::new();
        for ((t, id), c) in x {
            let y = mul_left(self.alg.as_ref(), *id, &self.diffs[n][*t]);
            add_scaled(k, &mut acc, &y, c);
        }
        finish(k, acc)
    }

    /// Matrix of d_n : (F_n)_g → (F_{n−1})_g with its column and row bases.
    pub fn d_matrix(
        &self,
        n: usize,
        g: &Grade,
    ) -> (Vec<(usize, usize)>, Vec<(usize, usize)>, Mat<K::E>) {
        let k = self.field();
        let cols = self.block(n, g);
        let rows = self.block(n - 1, g);
        let index: HashMap<(usize, usize), usize> =
            rows.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut m = zeros(k, rows.len(), cols.len());
        for (j, (t, id)) in cols.iter().enumerate() {
            for (key, c) in mul_left(self.alg.as_ref(), *id, &self.diffs[n][*t]) {
                m[index[&key]][j] = c;
            }
        }
        (cols, rows, m)
    }

    /// Grade of a homogeneous nonzero free-module element in F_n.
    pub fn grade_of(&self, n: usize, x: &FreeElem<K::E>) -> Option<Grade> {
        x.first()
            .map(|((t, id), _)| self.gens[n][*t].grade.add(&self.alg.grade_of(*id)))
    }

    /// Exhaustive check of d∘d = 0 on generators and of minimality (no unit coefficients).
    pub fn verify(&self) -> bool {
        let unit = self.alg.unit_id();
        for n in 1..self.gens.len() {
            for d in &self.diffs[n] {
                if d.iter().any(|((_, id), _)| *id == unit) {
                    return false;
                }
                if n >= 2 && !self.apply_d(n - 1, d).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn build<K: Field>(
    alg: Arc<dyn GradedAlgebra<K>>,
    n_max: usize,
    cutoff: Option<u32>,
) -> Result<Resolution<K>, CohomError> {
    let k = alg.field().clone();
    let unit = alg.unit_id();
    let glen = alg.grade_of(unit).len();
    let wlen = alg.weight_of(unit).len();
    let limit = cutoff.unwrap_or(u32::MAX);
    let mut gens = vec![vec![FreeGen {
        grade: Grade::zero(glen),
        weight: vec![0; wlen],
    }]];
    let mut diffs: Vec<Vec<FreeElem<K::E>>> = vec![vec![]];
    let algebra_grades = alg.grades_upto(limit);
    for n in 1..=n_max {
        let prev = n - 1;
        let mut cands: BTreeSet<Grade> = BTreeSet::new();
        for gen in &gens[prev] {
            let room = limit.saturating_sub(gen.grade.total());
            for h in algebra_grades.iter().take_while(|h| h.total() <= room) {
                cands.insert(gen.grade.add(h));
            }
        }
        let mut new_gens: Vec<FreeGen> = vec![];
        let mut new_diffs: Vec<FreeElem<K::E>> = vec![];
        let partial = Resolution {
            alg: alg.clone(),
            n_max,
            cutoff,
            gens: gens.clone(),
            diffs: diffs.clone(),
        };
        for g in cands {
            if prev == 0 && g.total() == 0 {
                continue;
            }
            let basis = partial.block(prev, &g);
            if basis.is_empty() {
                continue;
            }
            let index: HashMap<(usize, usize), usize> =
                basis.iter().enumerate().map(|(i, x)| (*x, i)).collect();
            let ker: Vec<Vec<K::E>> = if prev == 0 {
                (0..basis.len())
                    .map(|i| {
                        let mut v = vec![k.zero(); basis.len()];
                        v[i] = k.one();
                        v
                    })
                    .collect()
            } else {
                let (_, _, m) = partial.d_matrix(prev, &g);
                kernel(&k, &m, basis.len())
            };
            if ker.is_empty() {
                continue;
            }
            let mut span: Subspace<K> = Subspace::new(basis.len());
            for (s, gen) in new_gens.iter().enumerate() {
                let Some(h) = g.checked_sub(&gen.grade) else {
                    continue;
                };
                for id in alg.basis_in(&h) {
                    let y = mul_left(alg.as_ref(), id, &new_diffs[s]);
                    let mut v = vec![k.zero(); basis.len()];
                    for (key, c) in y {
                        v[index[&key]] = c;
                    }
                    span.insert(&k, v);
                }
            }
            if span.dim() == ker.len() {
                continue;
            }
            for v in ker {
                if !span.insert(&k, v.clone()) {
                    continue;
                }
                let d: FreeElem<K::E> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !k.is_zero(x))
                    .map(|(i, x)| (basis[i], x.clone()))
                    .collect();
                let mut weight: Option<Vec<i64>> = None;
                for ((t, id), _) in &d {
                    let w: Vec<i64> = alg
                        .weight_of(*id)
                        .iter()
                        .zip(&gens[prev][*t].weight)
                        .map(|(a, b)| a + b)
                        .collect();
                    match &weight {
                        None => weight = Some(w),
                        Some(w0) if *w0 != w => {
                            return Err(CohomError::NotLocal(format!(
                                "differential is not weight-homogeneous at {g:?}"
                            )))
                        }
                        _ => {}
                    }
                }
                new_gens.push(FreeGen {
                    grade: g,
                    weight: weight.unwrap(),
                });
                new_diffs.push(d);
            }
        }
        gens.push(new_gens);
        diffs.push(new_diffs);
    }
    Ok(Resolution {
        alg,
        n_max,
        cutoff,
        gens,
        diffs,
    })
}

/// Single run at a fixed cutoff (ignored for finite algebras).
pub fn minimal_resolution_at<K: Field>(
    alg: Arc<dyn GradedAlgebra<K>>,
    n_max: usize,
    cutoff: Option<u32>,
) -> Result<Resolution<K>, CohomError> {
    if alg.is_finite() {
        build(alg, n_max, None)
    } else {
        build(alg, n_max, Some(cutoff.ok_or(CohomError::CutoffRequired)?))
    }
}

const CUTOFF_ROUNDS: usize = 6;

/// Minimal resolution to homological degree n_max.
///
/// For graded-infinite algebras the cutoff is raised by `step` until two consecutive
/// cutoffs give identical Betti numbers and generator weights.
pub fn minimal_resolution<K: Field>(
    alg: Arc<dyn GradedAlgebra<K>>,
    n_max: usize,
    cutoff: Option<u32>,
) -> Result<Resolution<K>, CohomError> {
    if alg.is_finite() {
        return build(alg, n_max, None);
    }
    let mut c = cutoff.ok_or(CohomError::CutoffRequired)?;
    let step = (c / 4).max(2);
    let mut last = build(alg.clone(), n_max, Some(c))?;
    for _ in 0..CUTOFF_ROUNDS {
        c += step;
        let next = build(alg.clone(), n_max, Some(c))?;
        if next.gens == last.gens {
            return Ok(next);
        }
        last = next;
    }
    Err(CohomError::CutoffUnstable(c))
}

fn is_invariant(rd: &RootDatum, w: &[i64], modulus: i64) -> bool {
    rd.root_to_weight(w)
        .0
        .iter()
        .all(|x| x.rem_euclid(modulus) == 0)
}

/// K_α acts on weight μ by ζ^{(μ, α)}; invariance means every such eigenvalue is 1.
fn is_invariant_by_eigenvalues<K: Field>(k: &K, rd: &RootDatum, w: &[i64]) -> bool {
    (0..rd.rank).all(|i| k.is_one(&k.zeta_pow(rd.pair_roots(&rd.simple_root(i), w))))
}

/// Indices of degree-n classes fixed by the torus U_ζ(T_r) (weights ≡ 0 mod p^rℓ on coroots).
pub fn invariant_classes<K: Field>(
    res: &Resolution<K>,
    n: usize,
    modulus: i64,
) -> Result<Vec<usize>, CohomError> {
    let rd =
        RootDatum::from_type_str(&res.alg.root_type()).map_err(|_| CohomError::WeightsMissing)?;
    let k = res.field();
    let check_eigen = modulus == k.ctx().ell as i64;
    let mut out = vec![];
    for (t, g) in res
        .gens
        .get(n)
        .ok_or(CohomError::DegreeOutOfRange(n, res.n_max))?
        .iter()
        .enumerate()
    {
        if g.weight.len() != rd.rank {
            return Err(CohomError::WeightsMissing);
        }
        let inv = is_invariant(&rd, &g.weight, modulus);
        if check_eigen {
            assert_eq!(
                inv,
                is_invariant_by_eigenvalues(k, &rd, &g.weight),
                "lattice and eigenvalue criteria disagree"
            );
        }
        if inv {
            out.push(t);
        }
    }
    Ok(out)
}

/// Betti numbers of the torus-invariant part: dim H^n(U_ζ(B_r), k) from a resolution over U_ζ(U_r).
pub fn torus_invariant_betti<K: Field>(
    res: &Resolution<K>,
    modulus: i64,
) -> Result<Vec<usize>, CohomError> {
    (0..res.gens.len())
        .map(|n| invariant_classes(res, n, modulus).map(|v| v.len()))
        .collect()
}

/// Sparse vector helper used by callers that need algebra elements as free elements in F_0.
pub fn in_f0<E: Clone>(x: &SparseVec<E>) -> FreeElem<E> {
    x.iter().map(|(i, c)| ((0, *i), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{graded, graded_tower};
    use super::*;
    use crate::algebras::{
        associated_graded, build_small_quantum, build_tower_algebra, pbw_filtration, Part,
    };
    use crate::scalars::{make_field, Gf};

    fn gf(p: u64, ell: u64) -> Gf {
        Gf::new(&make_field(p, ell).unwrap()).unwrap()
    }

    #[test]
    fn truncated_polynomial() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let a = build_tower_algebra(&rd, &k, 0, &[0])
            .unwrap()
            .to_based()
            .unwrap();
        let res = minimal_resolution(graded(&a).unwrap(), 10, None).unwrap();
        assert_eq!(res.betti(), vec![1; 11]);
        assert!(res.verify());
        assert_eq!(
            torus_invariant_betti(&res, 5).unwrap(),
            vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
        );
        assert_eq!(torus_invariant_betti(&res, 1).unwrap(), vec![1; 11]);
    }

    #[test]
    fn quantum_polynomial_ring() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A2").unwrap();
        let t = build_tower_algebra(&rd, &k, 0, &[]).unwrap();
        let res = minimal_resolution(graded_tower(&t).unwrap(), 5, Some(6)).unwrap();
        assert_eq!(res.betti(), vec![1, 3, 3, 1, 0, 0]);
        assert!(res.verify());
        let err = minimal_resolution(graded_tower(&t).unwrap(), 3, None).unwrap_err();
        assert_eq!(err, CohomError::CutoffRequired);
    }

    #[test]
    fn gr_small_a2() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A2").unwrap();
        let u = build_small_quantum(&rd, &k, Part::U).unwrap();
        let gr = associated_graded(&u, &pbw_filtration(&u).unwrap(), 0).unwrap();
        let res = minimal_resolution(graded(&gr).unwrap(), 4, None).unwrap();
        assert_eq!(res.betti(), vec![1, 3, 6, 10, 15]);
        assert!(res.verify());
        let ures = minimal_resolution(graded(&u).unwrap(), 4, None).unwrap();
        assert_eq!(ures.betti()[1], 2);
        assert!(ures.verify());
        let inv = torus_invariant_betti(&ures, 5).unwrap();
        assert_eq!(inv, vec![1, 0, 3, 0, 6]);
    }

    #[test]
    fn ungraded_is_not_local() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let b = build_small_quantum(&rd, &k, Part::B).unwrap();
        assert!(matches!(graded(&b), Err(CohomError::NotLocal(_))));
    }
}
