//! Low-degree cobar computations on trivial coefficients.
//!
//! Cochains are functions on tensors of basis elements of A₊, and
//! (δf)(a_1⊗…⊗a_{n+1}) = Σ_{i=1}^{n} (−1)^{i+1} f(…⊗a_i a_{i+1}⊗…).

use super::CohomError;
use crate::algebras::{sv_to_dense, BasedAlgebra};
use crate::linalg::{inverse, rank, vec_mat, Mat};
use crate::scalars::Field;

/// Indices of the basis elements spanning A₊ (everything but the unit).
fn aug_basis<K: Field>(alg: &BasedAlgebra<K>) -> Result<(usize, Vec<usize>), CohomError> {
    let k = &alg.field;
    let unit = match alg.unit().as_slice() {
        [(u, c)] if k.is_one(c) => *u,
        _ => return Err(CohomError::NotLocal("unit is not a basis element".into())),
    };
    let plus: Vec<usize> = (0..alg.dim()).filter(|&i| i != unit).collect();
    if plus.iter().any(|&i| !k.is_zero(&alg.augmentation(i))) {
        return Err(CohomError::NotLocal(
            "augmentation does not vanish off the unit".into(),
        ));
    }
    Ok((unit, plus))
}

/// dim A₊ − rank(A₊·A₊), the number of minimal generators.
pub fn b1_oracle<K: Field>(alg: &BasedAlgebra<K>) -> Result<usize, CohomError> {
    let k = &alg.field;
    let (_, plus) = aug_basis(alg)?;
    let n = alg.dim();
    let mut rows = vec![];
    for &i in &plus {
        for &j in &plus {
            let v = alg.mul_basis(i, j);
            if !v.is_empty() {
                rows.push(sv_to_dense(k, &v, n));
            }
        }
    }
    Ok(plus.len() - rank(k, &rows))
}

const COBAR_BUDGET: usize = 4_000_000;

/// b_0..b_{n_max} from the normalized cobar complex; only meant for n_max ≤ 3.
pub fn cobar_betti<K: Field>(
    alg: &BasedAlgebra<K>,
    n_max: usize,
) -> Result<Vec<usize>, CohomError> {
    let k = &alg.field;
    let (_, plus) = aug_basis(alg)?;
    let d = plus.len();
    let pos: std::collections::HashMap<usize, usize> =
        plus.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let size = |n: usize| d.checked_pow(n as u32).unwrap_or(usize::MAX);
    let top = size(n_max + 1).saturating_mul(size(n_max));
    if n_max > 3 || top > COBAR_BUDGET {
        return Err(CohomError::TooLarge(format!(
            "cobar degree {n_max} over dim A₊ = {d}"
        )));
    }
    // products in A₊ coordinates
    let prod: Vec<Vec<Vec<(usize, K::E)>>> = plus
        .iter()
        .map(|&i| {
            plus.iter()
                .map(|&j| {
                    alg.mul_basis(i, j)
                        .into_iter()
                        .map(|(t, c)| (pos[&t], c))
                        .collect()
                })
                .collect()
        })
        .collect();
    // rank of the bar differential A₊^{⊗n} → A₊^{⊗(n−1)}
    let bar_rank = |n: usize| -> usize {
        let mut rows = Vec::with_capacity(size(n));
        let mut idx = vec![0usize; n];
        for _ in 0..size(n) {
            let mut row = vec![k.zero(); size(n - 1)];
            for i in 0..n - 1 {
                let sign = if i % 2 == 0 { k.one() } else { k.neg(&k.one()) };
                for (t, c) in &prod[idx[i]][idx[i + 1]] {
                    let mut code = 0;
                    for (s, &x) in idx.iter().enumerate() {
                        if s == i + 1 {
                            continue;
                        }
                        code = code * d + if s == i { *t } else { x };
                    }
                    row[code] = k.add(&row[code], &k.mul(&sign, c));
                }
            }
            rows.push(row);
            for s in (0..n).rev() {
                idx[s] += 1;
                if idx[s] < d {
                    break;
                }
                idx[s] = 0;
            }
        }
        rank(k, &rows)
    };
    let ranks: Vec<usize> = (0..=n_max + 1)
        .map(|n| if n < 2 { 0 } else { bar_rank(n) })
        .collect();
    Ok((0..=n_max)
        .map(|n| {
            if n == 0 {
                1
            } else {
                size(n) - ranks[n + 1] - ranks[n]
            }
        })
        .collect())
}

/// The basis of monomials g_0^{a_0} g_1^{a_1} ⋯ in the named generators, with a_i < ε_i where
/// ε_i is the nilpotency order of g_i.
#[derive(Clone, Debug)]
pub struct MonomialBasis<E> {
    pub eps: Vec<u32>,
    pub exps: Vec<Vec<u32>>,
    /// Row t holds the standard coordinates of monomial t.
    pub rows: Mat<E>,
    pub inv: Mat<E>,
}

impl<E> MonomialBasis<E> {
    pub fn index(&self, a: &[u32]) -> Option<usize> {
        self.exps.iter().position(|x| x.as_slice() == a)
    }
}

pub fn monomial_basis<K: Field>(alg: &BasedAlgebra<K>) -> Result<MonomialBasis<K::E>, CohomError> {
    let k = &alg.field;
    let n = alg.dim();
    let gens: Vec<_> = alg.generators.iter().map(|(_, v)| v.clone()).collect();
    if gens.is_empty() {
        return Err(CohomError::BasisMismatch("no generators".into()));
    }
    let mut eps = vec![];
    for g in &gens {
        let mut x = alg.unit();
        let mut e = 0u32;
        while !x.is_empty() {
            x = alg.mul(&x, g);
            e += 1;
            if e as usize > n {
                return Err(CohomError::BasisMismatch(
                    "generator is not nilpotent".into(),
                ));
            }
        }
        eps.push(e);
    }
    let count: usize = eps.iter().map(|&e| e as usize).product();
    if count != n {
        return Err(CohomError::BasisMismatch(format!(
            "{count} monomials for dimension {n}"
        )));
    }
    let mut exps = vec![];
    let mut rows = vec![];
    let mut a = vec![0u32; gens.len()];
    for _ in 0..count {
        let mut x = alg.unit();
        for (g, &e) in gens.iter().zip(&a) {
            for _ in 0..e {
                x = alg.mul(&x, g);
            }
        }
        exps.push(a.clone());
        rows.push(sv_to_dense(k, &x, n));
        for s in (0..a.len()).rev() {
            a[s] += 1;
            if a[s] < eps[s] {
                break;
            }
            a[s] = 0;
        }
    }
    let inv = inverse(k, &rows)
        .ok_or_else(|| CohomError::BasisMismatch("monomials are linearly dependent".into()))?;
    Ok(MonomialBasis {
        eps,
        exps,
        rows,
        inv,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Report {
    pub generator: String,
    pub eps: u32,
    /// Number of A₊ monomial triples where δf₂ was evaluated.
    pub triples: usize,
    /// First triple (monomial exponents) with δf₂ ≠ 0.
    pub witness: Option<[Vec<u32>; 3]>,
    /// The extra monomial pair set to 1 when mutating.
    pub mutation: Option<(Vec<u32>, Vec<u32>)>,
    pub is_cocycle: bool,
}

/// Builds f₂ with f₂(g_j^a ⊗ g_j^b) = 1 for a, b ≥ 1, a + b = ε_j and 0 on every other pair of
/// monomials, then evaluates δf₂ on all triples of A₊ monomials.
///
/// With `mutate`, f₂ is also set to 1 on one non-matching pair chosen so that the result is
/// no longer a cocycle; the checker should then report false.
pub fn cobar_f2_check<K: Field>(
    alg: &BasedAlgebra<K>,
    j: usize,
    mutate: bool,
) -> Result<F2Report, CohomError> {
    let k = &alg.field;
    let mb = monomial_basis(alg)?;
    let g = mb.eps.len();
    if j >= g {
        return Err(CohomError::BasisMismatch(format!(
            "generator index {j} out of 0..{g}"
        )));
    }
    let e = mb.eps[j];
    let n = alg.dim();
    let pure = |a: u32| -> usize {
        let mut v = vec![0u32; g];
        v[j] = a;
        mb.index(&v).unwrap()
    };
    let mut f = vec![vec![k.zero(); n]; n];
    for a in 1..e {
        f[pure(a)][pure(e - a)] = k.one();
    }
    let mut mutation = None;
    if mutate {
        // f(g_j² ⊗ g_j) gives δf(g_j ⊗ g_j ⊗ g_j) ≠ 0 unless ε_j ≤ 3; otherwise use a mixed
        // monomial in the first slot and test on g_j ⊗ g_o ⊗ g_j.
        let (x, y) = if e > 3 {
            (pure(2), pure(1))
        } else if let Some(o) = (0..g).find(|&o| o != j && mb.eps[o] > 1) {
            let mut v = vec![0u32; g];
            v[j] = 1;
            v[o] = 1;
            (mb.index(&v).unwrap(), pure(1))
        } else {
            return Err(CohomError::BasisMismatch(
                "no pair available for mutation".into(),
            ));
        };
        f[x][y] = k.add(&f[x][y], &k.one());
        mutation = Some((mb.exps[x].clone(), mb.exps[y].clone()));
    }
    let unit_idx = mb.index(&vec![0; g]).unwrap();
    let plus: Vec<usize> = (0..n).filter(|&t| t != unit_idx).collect();
    // products of monomials in monomial coordinates
    let mut prod = vec![vec![vec![]; n]; n];
    for &x in &plus {
        for &y in &plus {
            let sx: Vec<(usize, K::E)> = mb.rows[x]
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !k.is_zero(c))
                .collect();
            let sy: Vec<(usize, K::E)> = mb.rows[y]
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !k.is_zero(c))
                .collect();
            let std = sv_to_dense(k, &alg.mul(&sx, &sy), n);
            prod[x][y] = vec_mat(k, &std, &mb.inv);
        }
    }
    let eval = |u: &[K::E], v_first: bool, m: usize| -> K::E {
        // f(u ⊗ m) or f(m ⊗ u)
        let mut s = k.zero();
        for (t, c) in u.iter().enumerate() {
            if !k.is_zero(c) {
                let fv = if v_first { &f[t][m] } else { &f[m][t] };
                s = k.add(&s, &k.mul(c, fv));
            }
        }
        s
    };
    let mut witness = None;
    let mut triples = 0;
    'outer: for &x in &plus {
        for &y in &plus {
            for &z in &plus {
                triples += 1;
                let v = k.sub(&eval(&prod[x][y], true, z), &eval(&prod[y][z], false, x));
                if !k.is_zero(&v) {
                    witness = Some([mb.exps[x].clone(), mb.exps[y].clone(), mb.exps[z].clone()]);
                    break 'outer;
                }
            }
        }
    }
    Ok(F2Report {
        generator: alg.generators[j].0.clone(),
        eps: e,
        triples,
        is_cocycle: witness.is_none(),
        witness,
        mutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{
        associated_graded, build_dividedpower_kernel_a1, build_small_quantum, pbw_filtration,
        KernelPart, Part,
    };
    use crate::rootdata::RootDatum;
    use crate::scalars::{make_field, Gf};

    fn kernel_u() -> BasedAlgebra<Gf> {
        let k = Gf::new(&make_field(3, 5).unwrap()).unwrap();
        build_dividedpower_kernel_a1(&k, 1, KernelPart::U).unwrap()
    }

    #[test]
    fn f2_is_a_cocycle_for_both_generators() {
        let u = kernel_u();
        let gr = associated_graded(&u, &pbw_filtration(&u).unwrap(), 0).unwrap();
        for alg in [&u, &gr] {
            let a = cobar_f2_check(alg, 0, false).unwrap();
            assert_eq!((a.generator.as_str(), a.eps, a.is_cocycle), ("F", 5, true));
            let b = cobar_f2_check(alg, 1, false).unwrap();
            assert_eq!(
                (b.generator.as_str(), b.eps, b.is_cocycle),
                ("F(5)", 3, true)
            );
            assert_eq!(b.triples, 14 * 14 * 14);
            for j in 0..2 {
                let m = cobar_f2_check(alg, j, true).unwrap();
                assert!(!m.is_cocycle && m.witness.is_some() && m.mutation.is_some());
            }
        }
        assert!(matches!(
            cobar_f2_check(&u, 2, false),
            Err(CohomError::BasisMismatch(_))
        ));
    }

    #[test]
    fn monomials_need_a_basis() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A2").unwrap();
        // F1, F2 only generate; their ordered monomials give 25 < 125 elements
        let u = build_small_quantum(&rd, &k, Part::U).unwrap();
        assert!(matches!(
            monomial_basis(&u),
            Err(CohomError::BasisMismatch(_))
        ));
    }

    #[test]
    fn cobar_matches_b1_and_truncated_polynomial() {
        let u = kernel_u();
        assert_eq!(b1_oracle(&u).unwrap(), 2);
        assert_eq!(cobar_betti(&u, 2).unwrap(), vec![1, 2, 3]);
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let rd = RootDatum::from_type_str("A1").unwrap();
        let a1 = build_small_quantum(&rd, &k, Part::U).unwrap();
        assert_eq!(cobar_betti(&a1, 3).unwrap(), vec![1, 1, 1, 1]);
        let rd2 = RootDatum::from_type_str("A2").unwrap();
        assert_eq!(
            b1_oracle(&build_small_quantum(&rd2, &k, Part::U).unwrap()).unwrap(),
            2
        );
    }
}
