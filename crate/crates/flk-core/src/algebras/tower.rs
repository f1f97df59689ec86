//! Twisted polynomial algebras: the tower 𝒜 = u₀ → u_j → u_m = gr U_ζ(U_r).
//!
//! Generators X_1, …, X_m are ordered level by level (level 0 carries the root vectors X_γ,
//! level i ≥ 1 the generators X_{p^{i−1}ℓγ}), each level in the convex order. A monomial X^a
//! is the ordered product, and X_i X_j = ζ^{t_ij} X_j X_i for i > j.

use super::{AlgError, AlgInfo, AlgebraCore, BasedAlgebra, Grade, SparseVec, MAX_GRADE_LEN};
use crate::rootdata::RootDatum;
use crate::scalars::Field;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerGen {
    pub label: String,
    pub weight: Vec<i64>,
    /// X^ε = 0 when set; unbounded otherwise.
    pub bound: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct TowerAlgebra<K: Field> {
    pub field: K,
    pub gens: Vec<TowerGen>,
    /// t_ij for i > j (lower triangle used).
    pub twist: Vec<Vec<i64>>,
    pub info: AlgInfo,
}

impl<K: Field> TowerAlgebra<K> {
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_finite(&self) -> bool {
        self.gens.iter().all(|g| g.bound.is_some())
    }

    pub fn allowed(&self, a: &[u32]) -> bool {
        a.iter()
            .zip(&self.gens)
            .all(|(&x, g)| g.bound.is_none_or(|b| x < b))
    }

    /// X^a · X^b = ζ^{Σ_{i>j} a_i b_j t_ij} X^{a+b}, or zero.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Option<(K::E, Vec<u32>)> {
        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !self.allowed(&s) {
            return None;
        }
        let mut e = 0i64;
        for i in 0..a.len() {
            for j in 0..i {
                e += a[i] as i64 * b[j] as i64 * self.twist[i][j];
            }
        }
        Some((self.field.zeta_pow(e), s))
    }

    pub fn weight(&self, a: &[u32]) -> Vec<i64> {
        let n = self.gens.first().map_or(0, |g| g.weight.len());
        let mut w = vec![0; n];
        for (x, g) in a.iter().zip(&self.gens) {
            for (wi, gi) in w.iter_mut().zip(&g.weight) {
                *wi += *x as i64 * gi;
            }
        }
        w
    }

    /// Number of monomials of total degree d.
    pub fn graded_dim(&self, d: u32) -> u64 {
        fn rec(gens: &[TowerGen], d: u32) -> u64 {
            match gens.split_first() {
                None => u64::from(d == 0),
                Some((g, rest)) => {
                    let top = g.bound.map_or(d, |b| d.min(b - 1));
                    (0..=top).map(|x| rec(rest, d - x)).sum()
                }
            }
        }
        rec(&self.gens, d)
    }

    /// Tensor product with trivial twist between the factors.
    pub fn tensor(&self, o: &TowerAlgebra<K>) -> TowerAlgebra<K> {
        let m = self.gens.len() + o.gens.len();
        let mut twist = vec![vec![0; m]; m];
        for (i, row) in self.twist.iter().enumerate() {
            twist[i][..row.len()].copy_from_slice(row);
        }
        let s = self.gens.len();
        for (i, row) in o.twist.iter().enumerate() {
            twist[s + i][s..s + row.len()].copy_from_slice(row);
        }
        let mut gens = self.gens.clone();
        gens.extend(o.gens.iter().cloned());
        let mut info = self.info.clone();
        info.kind = format!("{}⊗{}", self.info.kind, o.info.kind);
        TowerAlgebra {
            field: self.field.clone(),
            gens,
            twist,
            info,
        }
    }

    /// Same generators with the weights negated (the positive-part model).
    pub fn opposite_weights(&self) -> TowerAlgebra<K> {
        let mut t = self.clone();
        for g in t.gens.iter_mut() {
            for w in g.weight.iter_mut() {
                *w = -*w;
            }
            g.label = g.label.replace('X', "Z");
        }
        t
    }

    /// Basis of a finite tower algebra in mixed radix, first generator most significant.
    pub fn basis(&self) -> Result<Vec<Vec<u32>>, AlgError> {
        if !self.is_finite() {
            return Err(AlgError::BadParameters(
                "algebra is infinite-dimensional".into(),
            ));
        }
        let mut out = vec![vec![]];
        for g in &self.gens {
            let b = g.bound.unwrap();
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..b).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        Ok(out)
    }

    pub fn to_based(&self) -> Result<BasedAlgebra<K>, AlgError> {
        if self.gens.len() > MAX_GRADE_LEN {
            return Err(AlgError::BadParameters(format!(
                "{} generators exceed the grading limit",
                self.gens.len()
            )));
        }
        let basis = self.basis()?;
        let core = TowerCore {
            t: Arc::new(self.clone()),
            basis,
        };
        let mut alg = BasedAlgebra::new(self.field.clone(), self.info.clone(), Arc::new(core));
        alg.generators = (0..self.gens.len())
            .filter(|&i| self.gens[i].bound != Some(1))
            .map(|i| {
                let mut e = vec![0u32; self.gens.len()];
                e[i] = 1;
                (
                    self.gens[i].label.clone(),
                    vec![(self.index_of(&e), self.field.one())],
                )
            })
            .collect();
        Ok(alg)
    }

    pub fn index_of(&self, a: &[u32]) -> usize {
        a.iter().zip(&self.gens).fold(0, |acc, (&x, g)| {
            acc * g.bound.unwrap() as usize + x as usize
        })
    }
}

struct TowerCore<K: Field> {
    t: Arc<TowerAlgebra<K>>,
    basis: Vec<Vec<u32>>,
}

impl<K: Field> AlgebraCore<K> for TowerCore<K> {
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn label(&self, i: usize) -> String {
        let v: Vec<String> = self.basis[i].iter().map(|x| x.to_string()).collect();
        format!("X[{}]", v.join(","))
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        self.t.weight(&self.basis[i])
    }
    fn grade(&self, i: usize) -> Option<Grade> {
        Some(Grade::from_slice(&self.basis[i]))
    }
    fn augmentation(&self, i: usize) -> K::E {
        if i == 0 {
            self.t.field.one()
        } else {
            self.t.field.zero()
        }
    }
    fn unit(&self) -> SparseVec<K::E> {
        vec![(0, self.t.field.one())]
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        match self.t.mul(&self.basis[i], &self.basis[j]) {
            Some((c, s)) => vec![(self.t.index_of(&s), c)],
            None => vec![],
        }
    }
}

/// Builds u_j: the tower algebra with the generators listed in `kill` truncated (0-based indices).
pub fn build_tower_algebra<K: Field>(
    rd: &RootDatum,
    field: &K,
    r: u32,
    kill: &[usize],
) -> Result<TowerAlgebra<K>, AlgError> {
    build_tower_algebra_with_word(rd, field, r, kill, &rd.w0_word.clone())
}

pub fn build_tower_algebra_with_word<K: Field>(
    rd: &RootDatum,
    field: &K,
    r: u32,
    kill: &[usize],
    word: &[usize],
) -> Result<TowerAlgebra<K>, AlgError> {
    let ctx = field.ctx();
    let (p, ell) = (ctx.p, ctx.ell);
    if r >= 1 && p == 0 {
        return Err(AlgError::BadParameters(
            "r ≥ 1 needs positive characteristic".into(),
        ));
    }
    let roots = rd.convex_positive_roots(word)?;
    let nn = roots.len();
    let m = (r as usize + 1) * nn;
    if let Some(&bad) = kill.iter().find(|&&i| i >= m) {
        return Err(AlgError::BadParameters(format!(
            "kill index {bad} outside 0..{m}"
        )));
    }
    let mut gens = vec![];
    let mut labels_roots = vec![];
    for level in 0..=r {
        let scale = if level == 0 {
            1
        } else {
            p.pow(level - 1) as i64 * ell as i64
        };
        for g in &roots {
            let idx = gens.len();
            let lab: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            let label = if level == 0 {
                format!("X[{}]", lab.join(","))
            } else {
                format!("X[{}·{}]", scale, lab.join(","))
            };
            let eps = if level == 0 { ell as u32 } else { p as u32 };
            gens.push(TowerGen {
                label,
                weight: g.iter().map(|x| -x * scale).collect(),
                bound: kill.contains(&idx).then_some(eps),
            });
            labels_roots.push(g.iter().map(|x| x * scale).collect::<Vec<i64>>());
        }
    }
    let mut twist = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..i {
            // X_j X_i = ζ^{(γ_j, γ_i)} X_i X_j
            twist[i][j] = -rd.pair_roots(&labels_roots[j], &labels_roots[i]);
        }
    }
    let mut kill_sorted = kill.to_vec();
    kill_sorted.sort_unstable();
    kill_sorted.dedup();
    let info = AlgInfo {
        kind: "tower".into(),
        root_type: rd.name(),
        ell,
        p,
        r,
        part: "u".into(),
        kill: kill_sorted,
        w0_word: word.to_vec(),
    };
    Ok(TowerAlgebra {
        field: field.clone(),
        gens,
        twist,
        info,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_field, Gf};

    #[test]
    fn sizes() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let a1 = RootDatum::from_type_str("A1").unwrap();
        let t = build_tower_algebra(&a1, &k, 0, &[0]).unwrap();
        assert_eq!(t.to_based().unwrap().dim(), 5);
        let a2 = RootDatum::from_type_str("A2").unwrap();
        let free = build_tower_algebra(&a2, &k, 0, &[]).unwrap();
        assert_eq!(
            (0..4).map(|d| free.graded_dim(d)).collect::<Vec<_>>(),
            vec![1, 3, 6, 10]
        );
        let full = build_tower_algebra(&a2, &k, 0, &[0, 1, 2])
            .unwrap()
            .to_based()
            .unwrap();
        assert_eq!(full.dim(), 125);
        assert!(full.check_associativity(200_000));
        let q0 = crate::scalars::Cyclo::new(&make_field(0, 5).unwrap()).unwrap();
        assert!(build_tower_algebra(&a2, &q0, 1, &[]).is_err());
        assert_eq!(build_tower_algebra(&a2, &k, 1, &[]).unwrap().num_gens(), 6);
    }

    #[test]
    fn twist_signs() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let a2 = RootDatum::from_type_str("A2").unwrap();
        let t = build_tower_algebra(&a2, &k, 0, &[]).unwrap();
        // X_{α1} X_{α2} = ζ^{(α1,α2)} X_{α2} X_{α1} = ζ^{−1} X_{α2} X_{α1}
        let (c1, s1) = t.mul(&[1, 0, 0], &[0, 0, 1]).unwrap();
        let (c2, s2) = t.mul(&[0, 0, 1], &[1, 0, 0]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(c1, 1);
        assert_eq!(c2, k.zeta_pow(1));
    }
}
