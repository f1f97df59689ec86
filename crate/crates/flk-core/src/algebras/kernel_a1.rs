//! Divided-power kernels U_ζ(U_r) ⊂ U_ζ(B_r) ⊂ U_ζ(G_r) for sl₂.
//!
//! Write N = p^r ℓ. The toral part is the algebra of functions on weights modulo N, with basis
//! the idempotents δ_ν (ν ∈ ℤ/N); K acts on δ_ν by ζ^ν and [K; c choose t] by [ν + c choose t]_ζ.
//! The basis of U_ζ(G_r) is F^{(a)} δ_ν E^{(b)} with a, b < N, and E–F products use
//!
//!   E^{(m)} F^{(n)} = Σ_t F^{(n−t)} [K; 2t − m − n choose t] E^{(m−t)}.

use super::small::QuantumData;
use super::{
    sv_add_scaled, sv_from_map, AlgError, AlgInfo, AlgebraCore, BasedAlgebra, HopfData,
    HopfGenerator, SparseVec,
};
use crate::rootdata::RootDatum;
use crate::scalars::Field;
use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelPart {
    U,
    B,
    G,
}

impl FromStr for KernelPart {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        match s {
            "U" | "U_r" | "u" => Ok(KernelPart::U),
            "B" | "B_r" | "b" => Ok(KernelPart::B),
            "G" | "G_r" | "g" => Ok(KernelPart::G),
            _ => Err(AlgError::BadParameters(format!("unknown kernel part {s}"))),
        }
    }
}

impl KernelPart {
    pub fn name(&self) -> &'static str {
        match self {
            KernelPart::U => "U_r",
            KernelPart::B => "B_r",
            KernelPart::G => "G_r",
        }
    }
}

pub struct KernelA1<K: Field> {
    pub field: K,
    pub p: u64,
    pub r: u32,
    pub ell: usize,
    /// N = p^r ℓ
    pub n: usize,
    pub part: KernelPart,
    /// Gaussian binomials [m choose k] at ζ for m < 2N.
    binom: Vec<Vec<K::E>>,
}

impl<K: Field> KernelA1<K> {
    pub fn new(field: &K, r: u32, part: KernelPart) -> Result<Self, AlgError> {
        let ctx = field.ctx();
        if ctx.p == 0 {
            return Err(AlgError::BadParameters(
                "divided-power kernels need p > 0".into(),
            ));
        }
        let ell = ctx.ell as usize;
        let n = (ctx.p as usize).pow(r) * ell;
        let k = field.clone();
        let mut binom: Vec<Vec<K::E>> = vec![vec![k.one()]];
        for m in 1..2 * n {
            let prev = &binom[m - 1];
            let mut row = vec![k.zero(); m + 1];
            for (j, slot) in row.iter_mut().enumerate() {
                // [m j] = ζ^{−j}[m−1 j] + ζ^{m−j}[m−1 j−1]
                let mut x = k.zero();
                if j < m {
                    x = k.mul(&k.zeta_pow(-(j as i64)), &prev[j]);
                }
                if j > 0 {
                    x = k.add(&x, &k.mul(&k.zeta_pow((m - j) as i64), &prev[j - 1]));
                }
                *slot = x;
            }
            binom.push(row);
        }
        Ok(KernelA1 {
            field: k,
            p: ctx.p,
            r,
            ell,
            n,
            part,
            binom,
        })
    }

    /// [m choose k] at ζ for 0 ≤ m < 2N (zero when k > m).
    pub fn qbinom(&self, m: usize, k: usize) -> K::E {
        if k > m {
            self.field.zero()
        } else {
            self.binom[m][k].clone()
        }
    }

    /// [ν + c choose t] at ζ, a function of ν modulo N when t < N.
    pub fn toral_binom(&self, nu: i64, c: i64, t: usize) -> K::E {
        let m = (nu + c).rem_euclid(self.n as i64) as usize;
        self.qbinom(m, t)
    }

    pub fn dim(&self) -> usize {
        match self.part {
            KernelPart::U => self.n,
            KernelPart::B => self.n * self.n,
            KernelPart::G => self.n * self.n * self.n,
        }
    }

    pub fn index(&self, a: usize, nu: usize, b: usize) -> usize {
        match self.part {
            KernelPart::U => a,
            KernelPart::B => a * self.n + nu,
            KernelPart::G => (a * self.n + nu) * self.n + b,
        }
    }

    pub fn split(&self, i: usize) -> (usize, usize, usize) {
        let n = self.n;
        match self.part {
            KernelPart::U => (i, 0, 0),
            KernelPart::B => (i / n, i % n, 0),
            KernelPart::G => (i / (n * n), (i / n) % n, i % n),
        }
    }

    /// Overflow check: every F^{(a)} F^{(b)} with a + b ≥ N has vanishing coefficient.
    pub fn closure_check(&self) -> Result<usize, AlgError> {
        let mut checked = 0;
        for a in 0..self.n {
            for b in 0..self.n {
                if a + b >= self.n {
                    checked += 1;
                    if !self.field.is_zero(&self.qbinom(a + b, a)) {
                        return Err(AlgError::ClosureViolation(format!(
                            "F^({a}) F^({b}) has nonzero overflow"
                        )));
                    }
                }
            }
        }
        Ok(checked)
    }

    fn fprod(&self, a: usize, b: usize) -> Option<(usize, K::E)> {
        if a + b >= self.n {
            return None;
        }
        let c = self.qbinom(a + b, a);
        (!self.field.is_zero(&c)).then_some((a + b, c))
    }

    fn product(&self, i: usize, j: usize) -> SparseVec<K::E> {
        let k = &self.field;
        let n = self.n as i64;
        let (a, nu, b) = self.split(i);
        let (a2, nu2, b2) = self.split(j);
        match self.part {
            KernelPart::U => self
                .fprod(a, a2)
                .map(|(s, c)| vec![(s, c)])
                .unwrap_or_default(),
            KernelPart::B => {
                if (nu as i64 + 2 * a2 as i64 - nu2 as i64).rem_euclid(n) != 0 {
                    return vec![];
                }
                self.fprod(a, a2)
                    .map(|(s, c)| vec![(self.index(s, nu2, 0), c)])
                    .unwrap_or_default()
            }
            KernelPart::G => {
                let mut acc = HashMap::new();
                for t in 0..=b.min(a2) {
                    let left = nu as i64 + 2 * (a2 - t) as i64;
                    let right = nu2 as i64 + 2 * (b - t) as i64;
                    if (left - right).rem_euclid(n) != 0 {
                        continue;
                    }
                    let mu = left.rem_euclid(n);
                    let f = self.toral_binom(mu, 2 * t as i64 - b as i64 - a2 as i64, t);
                    if k.is_zero(&f) {
                        continue;
                    }
                    let Some((fa, x)) = self.fprod(a, a2 - t) else {
                        continue;
                    };
                    let Some((eb, y)) = self.fprod(b - t, b2) else {
                        continue;
                    };
                    let c = k.mul(&f, &k.mul(&x, &y));
                    sv_add_scaled(
                        k,
                        &mut acc,
                        &vec![(self.index(fa, mu as usize, eb), k.one())],
                        &c,
                    );
                }
                sv_from_map(k, acc)
            }
        }
    }

    /// F^{(a)} · (Σ_ν f(ν) δ_ν) · E^{(b)}.
    pub fn element(&self, a: usize, f: impl Fn(i64) -> K::E, b: usize) -> SparseVec<K::E> {
        let k = &self.field;
        match self.part {
            KernelPart::U => {
                let x = f(0);
                if k.is_zero(&x) {
                    vec![]
                } else {
                    vec![(a, x)]
                }
            }
            _ => (0..self.n)
                .filter_map(|nu| {
                    let x = f(nu as i64);
                    (!k.is_zero(&x)).then(|| (self.index(a, nu, b), x))
                })
                .collect(),
        }
    }

    /// F^{(a)} K^c E^{(b)}.
    pub fn fke(&self, a: usize, c: i64, b: usize) -> SparseVec<K::E> {
        let k = self.field.clone();
        self.element(a, move |nu| k.zeta_pow(c * nu), b)
    }

    fn sign(&self, j: usize) -> K::E {
        if j % 2 == 0 {
            self.field.one()
        } else {
            self.field.neg(&self.field.one())
        }
    }

    fn scaled(&self, v: SparseVec<K::E>, c: &K::E) -> SparseVec<K::E> {
        v.into_iter()
            .map(|(i, x)| (i, self.field.mul(&x, c)))
            .collect()
    }

    /// Generators F^{(n)}, E^{(n)} (n ∈ {1, ℓ, pℓ, …}) and K with coproduct data.
    fn hopf(&self) -> (Vec<(String, SparseVec<K::E>)>, HopfData<K::E>) {
        let k = &self.field;
        let z = |e: i64| k.zeta_pow(e);
        let mut sizes = vec![1usize];
        for i in 0..self.r {
            sizes.push(self.ell * (self.p as usize).pow(i));
        }
        let mut gens = vec![];
        let mut hopf = vec![];
        for &m in &sizes {
            let name = if m == 1 {
                "F".to_string()
            } else {
                format!("F({m})")
            };
            let el = self.fke(m, 0, 0);
            let mut adj = vec![];
            let mut anti = vec![];
            for kk in 0..=m {
                let j = m - kk;
                let c = z(-((kk * j) as i64));
                // h1 = F^{(k)}, h2 = K^{−k} F^{(j)}
                let s_h2 = self.scaled(
                    self.fke(j, m as i64, 0),
                    &k.mul(&self.sign(j), &z(-((j * j.saturating_sub(1)) as i64))),
                );
                adj.push((self.scaled(self.fke(kk, 0, 0), &c), s_h2));
                let s_h1 = self.scaled(
                    self.fke(kk, kk as i64, 0),
                    &k.mul(&self.sign(kk), &z(-((kk * kk.saturating_sub(1)) as i64))),
                );
                let h2 = self.mul_vec(&self.fke(0, -(kk as i64), 0), &self.fke(j, 0, 0));
                anti.push((self.scaled(s_h1, &c), h2));
            }
            gens.push((name.clone(), el.clone()));
            hopf.push(HopfGenerator {
                name,
                element: el,
                adjoint_terms: adj,
                antipode_terms: anti,
            });
        }
        let kel = self.fke(0, 1, 0);
        let kinv = self.fke(0, -1, 0);
        gens.push(("K".into(), kel.clone()));
        hopf.push(HopfGenerator {
            name: "K".into(),
            element: kel.clone(),
            adjoint_terms: vec![(kel.clone(), kinv.clone())],
            antipode_terms: vec![(kinv, kel)],
        });
        if self.part == KernelPart::G {
            for &m in &sizes {
                let name = if m == 1 {
                    "E".to_string()
                } else {
                    format!("E({m})")
                };
                let el = self.fke(0, 0, m);
                let mut adj = vec![];
                let mut anti = vec![];
                for kk in 0..=m {
                    let j = m - kk;
                    let c = z((kk * j) as i64);
                    // h1 = E^{(k)} K^{j}, h2 = E^{(j)}
                    let h1 = self.mul_vec(&self.fke(0, 0, kk), &self.fke(0, j as i64, 0));
                    let s_h2 = self.scaled(
                        self.fke(0, -(j as i64), j),
                        &k.mul(&self.sign(j), &z((j * j.saturating_sub(1)) as i64)),
                    );
                    adj.push((self.scaled(h1, &c), s_h2));
                    // S(E^{(k)} K^{j}) = K^{−j} S(E^{(k)}) = (−1)^k ζ^{k(k−1)} K^{−m} E^{(k)}
                    let s_h1 = self.scaled(
                        self.fke(0, -(m as i64), kk),
                        &k.mul(&self.sign(kk), &z((kk * kk.saturating_sub(1)) as i64)),
                    );
                    anti.push((self.scaled(s_h1, &c), self.fke(0, 0, j)));
                }
                gens.push((name.clone(), el.clone()));
                hopf.push(HopfGenerator {
                    name,
                    element: el,
                    adjoint_terms: adj,
                    antipode_terms: anti,
                });
            }
        }
        (gens, HopfData { generators: hopf })
    }

    pub fn mul_vec(&self, a: &SparseVec<K::E>, b: &SparseVec<K::E>) -> SparseVec<K::E> {
        let k = &self.field;
        let mut acc = HashMap::new();
        for (i, x) in a {
            for (j, y) in b {
                sv_add_scaled(k, &mut acc, &self.product(*i, *j), &k.mul(x, y));
            }
        }
        sv_from_map(k, acc)
    }

    /// Compares E^{(m)} F^{(n)} for m, n < ℓ with the generic computation in u_ζ(sl₂).
    pub fn verify_against_small(&self, q: &QuantumData<K>) -> Result<usize, AlgError> {
        let k = &self.field;
        let ell = self.ell;
        let mut fact = vec![k.one()];
        for i in 1..ell {
            let qi = k.mul(
                &k.sub(&k.zeta_pow(i as i64), &k.zeta_pow(-(i as i64))),
                &k.inv(&k.sub(&k.zeta_pow(1), &k.zeta_pow(-1))).unwrap(),
            );
            fact.push(k.mul(&fact[i - 1], &qi));
        }
        let mut checked = 0;
        for m in 0..ell {
            for nn in 0..ell {
                // small side: coefficient functions indexed by (a, b)
                let mut small: HashMap<(usize, usize), Vec<K::E>> = HashMap::new();
                let norm = k.inv(&k.mul(&fact[m], &fact[nn])).unwrap();
                for (idx, x) in q.ef(m, nn) {
                    let b = idx % q.n_mono;
                    let rest = idx / q.n_mono;
                    let (a, c) = (rest / q.n_tor, rest % q.n_tor);
                    let coef = k.mul(&k.mul(&x, &norm), &k.mul(&fact[a], &fact[b]));
                    let f = small
                        .entry((a, b))
                        .or_insert_with(|| vec![k.zero(); self.n]);
                    for (nu, slot) in f.iter_mut().enumerate() {
                        *slot = k.add(slot, &k.mul(&coef, &k.zeta_pow(c as i64 * nu as i64)));
                    }
                }
                for t in 0..=m.min(nn) {
                    let (a, b) = (nn - t, m - t);
                    let expect: Vec<K::E> = (0..self.n)
                        .map(|nu| {
                            self.toral_binom(nu as i64, 2 * t as i64 - m as i64 - nn as i64, t)
                        })
                        .collect();
                    let got = small
                        .remove(&(a, b))
                        .unwrap_or_else(|| vec![k.zero(); self.n]);
                    if got != expect {
                        return Err(AlgError::Pbw(format!(
                            "E^({m}) F^({nn}) disagrees at t = {t}"
                        )));
                    }
                    checked += 1;
                }
                if small.values().any(|f| f.iter().any(|x| !k.is_zero(x))) {
                    return Err(AlgError::Pbw(format!("E^({m}) F^({nn}) has extra terms")));
                }
            }
        }
        Ok(checked)
    }
}

struct KernelCore<K: Field>(Arc<KernelA1<K>>);

impl<K: Field> AlgebraCore<K> for KernelCore<K> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn label(&self, i: usize) -> String {
        let (a, nu, b) = self.0.split(i);
        match self.0.part {
            KernelPart::U => format!("F({a})"),
            KernelPart::B => format!("F({a})d{nu}"),
            KernelPart::G => format!("F({a})d{nu}E({b})"),
        }
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        let (a, _, b) = self.0.split(i);
        vec![b as i64 - a as i64]
    }
    fn grade(&self, i: usize) -> Option<super::Grade> {
        (self.0.part == KernelPart::U).then(|| super::Grade::from_slice(&[i as u32]))
    }
    fn augmentation(&self, i: usize) -> K::E {
        let (a, nu, b) = self.0.split(i);
        if a == 0 && b == 0 && nu == 0 {
            self.0.field.one()
        } else {
            self.0.field.zero()
        }
    }
    fn unit(&self) -> SparseVec<K::E> {
        let k = &self.0.field;
        self.0.element(0, |_| k.one(), 0)
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        self.0.product(i, j)
    }
}

/// Builds U_ζ(U_r), U_ζ(B_r) or U_ζ(G_r) for sl₂ over a field of characteristic p.
pub fn build_dividedpower_kernel_a1<K: Field>(
    field: &K,
    r: u32,
    part: KernelPart,
) -> Result<BasedAlgebra<K>, AlgError> {
    let ker = Arc::new(KernelA1::new(field, r, part)?);
    ker.closure_check()?;
    let rd = RootDatum::from_type_str("A1")?;
    let q = QuantumData::new(&rd, field, &[0])?;
    ker.verify_against_small(&q)?;
    let ctx = field.ctx();
    let info = AlgInfo {
        kind: "kernel".into(),
        root_type: "A1".into(),
        ell: ctx.ell,
        p: ctx.p,
        r,
        part: part.name().into(),
        kill: vec![],
        w0_word: vec![0],
    };
    let mut alg = BasedAlgebra::new(field.clone(), info, Arc::new(KernelCore(ker.clone())));
    if part == KernelPart::U {
        let mut sizes = vec![1usize];
        for i in 0..r {
            sizes.push(ker.ell * (ker.p as usize).pow(i));
        }
        alg.generators = sizes
            .iter()
            .map(|&m| {
                (
                    if m == 1 {
                        "F".to_string()
                    } else {
                        format!("F({m})")
                    },
                    vec![(m, field.one())],
                )
            })
            .collect();
    } else {
        let (gens, hopf) = ker.hopf();
        alg.generators = gens;
        alg.hopf = Some(hopf);
    }
    alg.kernel = Some(ker);
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_field, Gf};

    fn f3() -> Gf {
        Gf::new(&make_field(3, 5).unwrap()).unwrap()
    }

    #[test]
    fn binomials_periodic_and_overflow() {
        let k = f3();
        let ker = KernelA1::new(&k, 1, KernelPart::U).unwrap();
        assert_eq!(ker.n, 15);
        assert!(k.is_zero(&ker.qbinom(16, 8)));
        assert!(k.is_zero(&ker.qbinom(5, 1)));
        assert_eq!(ker.closure_check().unwrap(), 105);
        for m in 0..15 {
            for t in 0..15 {
                assert_eq!(ker.qbinom(m + 15, t), ker.qbinom(m, t));
            }
        }
    }

    #[test]
    fn kernel_dims_and_identities() {
        let k = f3();
        let u = build_dividedpower_kernel_a1(&k, 1, KernelPart::U).unwrap();
        assert_eq!(u.dim(), 15);
        assert!(u.mul_basis(1, 4).is_empty());
        assert_eq!(u.mul_basis(5, 5), vec![(10, k.from_int(2))]);
        let g = build_dividedpower_kernel_a1(&k, 1, KernelPart::G).unwrap();
        assert_eq!(g.dim(), 3375);
        assert!(g.check_associativity(4000));
        assert!(g.check_weights(20_000));
        assert!(g.check_augmentation(20_000));
        let one = g.one();
        for (_, x) in g.generators.iter() {
            assert_eq!(&g.mul(&one, x), x);
            assert_eq!(&g.mul(x, &one), x);
        }
    }
}
