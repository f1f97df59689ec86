//! Small quantum groups u_ζ(u) ⊂ u_ζ(b) ⊂ u_ζ(g) in rank ≤ 2.
//!
//! Basis F^a K^c E^b with a, b PBW exponent vectors below ℓ and c ∈ (ℤ/ℓ)^n. The generic
//! straightening relations are specialized once; products are then rewritten over the field.
//! A PBW monomial with an exponent ≥ ℓ lies in the ideal generated by the central powers Y_γ^ℓ
//! and is dropped as soon as it appears.

use super::pbw::{GenericPbw, MonoCombo};
use super::{
    sv_add_scaled, sv_from_map, AlgError, AlgInfo, AlgebraCore, BasedAlgebra, Grade, HopfData,
    HopfGenerator, SparseVec,
};
use crate::rootdata::RootDatum;
use crate::scalars::Field;
use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    U,
    B,
    G,
}

impl FromStr for Part {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        match s {
            "u" | "U" => Ok(Part::U),
            "b" | "B" => Ok(Part::B),
            "g" | "G" => Ok(Part::G),
            _ => Err(AlgError::BadParameters(format!("unknown part {s}"))),
        }
    }
}

impl Part {
    pub fn name(&self) -> &'static str {
        match self {
            Part::U => "u",
            Part::B => "b",
            Part::G => "g",
        }
    }
}

/// Specialized PBW data shared by the u, b and g algebras and by the Verma modules.
pub struct QuantumData<K: Field> {
    pub field: K,
    pub rd: RootDatum,
    pub generic: GenericPbw,
    pub word: Vec<usize>,
    pub ell: usize,
    pub n_roots: usize,
    pub n_mono: usize,
    pub n_tor: usize,
    pub exps: Vec<Vec<u32>>,
    /// Σ a_k γ_k for each monomial.
    pub beta: Vec<Vec<i64>>,
    /// (α_i, β(a)) indexed [i][a].
    pub alpha_beta: Vec<Vec<i64>>,
    /// Y_k · F^a indexed [k][a].
    pub lmul: Vec<Vec<SparseVec<K::E>>>,
    /// [E_i, F^a] = plus·K_i + minus·K_i^{−1}, indexed [i][a].
    pub comm_plus: Vec<Vec<SparseVec<K::E>>>,
    pub comm_minus: Vec<Vec<SparseVec<K::E>>>,
    /// Root vectors X_k = ω(Y_k) as words in the E_i with specialized coefficients.
    pub root_words: Vec<Vec<(Vec<u8>, K::E)>>,
    ef_cache: RwLock<HashMap<(usize, usize), HashMap<usize, K::E>>>,
}

fn mono_index(a: &[u32], ell: usize) -> Option<usize> {
    let mut idx = 0usize;
    for &x in a {
        if x as usize >= ell {
            return None;
        }
        idx = idx * ell + x as usize;
    }
    Some(idx)
}

fn specialize_combo<K: Field>(
    k: &K,
    c: &MonoCombo,
    ell: usize,
) -> Result<SparseVec<K::E>, AlgError> {
    let mut m = HashMap::new();
    for (e, s) in c {
        let x = k.specialize(s)?;
        if let Some(i) = mono_index(e, ell) {
            sv_add_scaled(k, &mut m, &vec![(i, k.one())], &x);
        }
    }
    Ok(sv_from_map(k, m))
}

struct LmulBuilder<'a, K: Field> {
    k: &'a K,
    ell: usize,
    exps: &'a [Vec<u32>],
    straight: HashMap<(usize, usize), SparseVec<K::E>>,
    memo: HashMap<(usize, usize), SparseVec<K::E>>,
}

impl<K: Field> LmulBuilder<'_, K> {
    fn lmul(&mut self, k: usize, a: usize) -> SparseVec<K::E> {
        if let Some(v) = self.memo.get(&(k, a)) {
            return v.clone();
        }
        let ex = &self.exps[a];
        let first = ex.iter().position(|&x| x > 0);
        let out = match first {
            Some(j) if j < k => {
                let rel = self.straight[&(k, j)].clone();
                let mut rest = ex.clone();
                rest[j] -= 1;
                let rest = mono_index(&rest, self.ell).unwrap();
                let mut acc = HashMap::new();
                for (m, c) in rel {
                    let mexp = self.exps[m].clone();
                    let v = self.mono_mul(&mexp, vec![(rest, self.k.one())]);
                    sv_add_scaled(self.k, &mut acc, &v, &c);
                }
                sv_from_map(self.k, acc)
            }
            _ => {
                let mut b = ex.clone();
                b[k] += 1;
                match mono_index(&b, self.ell) {
                    Some(i) => vec![(i, self.k.one())],
                    None => vec![],
                }
            }
        };
        self.memo.insert((k, a), out.clone());
        out
    }

    fn lmul_vec(&mut self, k: usize, v: &SparseVec<K::E>) -> SparseVec<K::E> {
        let mut acc = HashMap::new();
        for (i, x) in v {
            let w = self.lmul(k, *i);
            sv_add_scaled(self.k, &mut acc, &w, x);
        }
        sv_from_map(self.k, acc)
    }

    fn mono_mul(&mut self, m: &[u32], mut v: SparseVec<K::E>) -> SparseVec<K::E> {
        for k in (0..m.len()).rev() {
            for _ in 0..m[k] {
                v = self.lmul_vec(k, &v);
            }
        }
        v
    }
}

impl<K: Field> QuantumData<K> {
    pub fn new(rd: &RootDatum, field: &K, word: &[usize]) -> Result<Self, AlgError> {
        let k = field.clone();
        let ell = k.ctx().ell as usize;
        let generic = GenericPbw::build(rd, word)?;
        let nr = generic.num_roots();
        let n = rd.rank;
        let n_mono = ell.pow(nr as u32);
        let n_tor = ell.pow(n as u32);
        let exps: Vec<Vec<u32>> = (0..n_mono)
            .map(|mut i| {
                let mut e = vec![0u32; nr];
                for t in (0..nr).rev() {
                    e[t] = (i % ell) as u32;
                    i /= ell;
                }
                e
            })
            .collect();
        let beta: Vec<Vec<i64>> = exps
            .iter()
            .map(|e| {
                let mut b = vec![0i64; n];
                for (t, &x) in e.iter().enumerate() {
                    for (bj, g) in b.iter_mut().zip(&generic.roots[t]) {
                        *bj += x as i64 * g;
                    }
                }
                b
            })
            .collect();
        let alpha_beta: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                beta.iter()
                    .map(|b| rd.pair_roots(&rd.simple_root(i), b))
                    .collect()
            })
            .collect();

        // the monomial index of e_k + e_i, used to read relations as sparse vectors
        let mut straight = HashMap::new();
        for (key, rel) in &generic.straighten {
            straight.insert(*key, specialize_combo(&k, rel, ell)?);
        }
        let mut b = LmulBuilder {
            k: &k,
            ell,
            exps: &exps,
            straight,
            memo: HashMap::new(),
        };
        let mut lmul = vec![];
        for t in 0..nr {
            lmul.push((0..n_mono).map(|a| b.lmul(t, a)).collect::<Vec<_>>());
        }

        let mut comm_plus = vec![];
        let mut comm_minus = vec![];
        for i in 0..n {
            let gens: Vec<(SparseVec<K::E>, SparseVec<K::E>)> = generic.comm_e[i]
                .iter()
                .map(|(p, m)| Ok((specialize_combo(&k, p, ell)?, specialize_combo(&k, m, ell)?)))
                .collect::<Result<_, AlgError>>()?;
            let mut plus: Vec<SparseVec<K::E>> = vec![vec![]; n_mono];
            let mut minus: Vec<SparseVec<K::E>> = vec![vec![]; n_mono];
            for a in 1..n_mono {
                let t = exps[a].iter().position(|&x| x > 0).unwrap();
                let mut rest = exps[a].clone();
                rest[t] -= 1;
                let ri = mono_index(&rest, ell).unwrap();
                let e = alpha_beta[i][ri];
                let mut pacc = HashMap::new();
                let pv = b.lmul_vec(t, &plus[ri].clone());
                sv_add_scaled(&k, &mut pacc, &pv, &k.one());
                let mut macc = HashMap::new();
                let mv = b.lmul_vec(t, &minus[ri].clone());
                sv_add_scaled(&k, &mut macc, &mv, &k.one());
                let (gp, gm) = &gens[t];
                for (c, x) in gp {
                    let v = b.mono_mul(&exps[*c].clone(), vec![(ri, k.one())]);
                    sv_add_scaled(&k, &mut pacc, &v, &k.mul(x, &k.zeta_pow(-e)));
                }
                for (c, x) in gm {
                    let v = b.mono_mul(&exps[*c].clone(), vec![(ri, k.one())]);
                    sv_add_scaled(&k, &mut macc, &v, &k.mul(x, &k.zeta_pow(e)));
                }
                plus[a] = sv_from_map(&k, pacc);
                minus[a] = sv_from_map(&k, macc);
            }
            comm_plus.push(plus);
            comm_minus.push(minus);
        }

        let mut root_words = vec![];
        for c in &generic.root_words {
            let mut v = vec![];
            for (w, s) in c {
                v.push((w.clone(), k.specialize(s)?));
            }
            root_words.push(v);
        }

        Ok(QuantumData {
            field: k.clone(),
            rd: rd.clone(),
            generic,
            word: word.to_vec(),
            ell,
            n_roots: nr,
            n_mono,
            n_tor,
            exps,
            beta,
            alpha_beta,
            lmul,
            comm_plus,
            comm_minus,
            root_words,
            ef_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn mono_index(&self, a: &[u32]) -> Option<usize> {
        mono_index(a, self.ell)
    }

    pub fn lmul_vec(&self, t: usize, v: &SparseVec<K::E>) -> SparseVec<K::E> {
        let k = &self.field;
        let mut acc = HashMap::new();
        for (i, x) in v {
            sv_add_scaled(k, &mut acc, &self.lmul[t][*i], x);
        }
        sv_from_map(k, acc)
    }

    /// F^a · v for a monomial exponent vector a.
    pub fn mono_mul_vec(&self, a: &[u32], mut v: SparseVec<K::E>) -> SparseVec<K::E> {
        for t in (0..a.len()).rev() {
            for _ in 0..a[t] {
                v = self.lmul_vec(t, &v);
            }
        }
        v
    }

    pub fn mono_mul(&self, a: usize, b: usize) -> SparseVec<K::E> {
        self.mono_mul_vec(&self.exps[a], vec![(b, self.field.one())])
    }

    /// Index of the monomial F_i.
    pub fn simple_mono(&self, i: usize) -> usize {
        let mut e = vec![0; self.n_roots];
        e[self.generic.simple_pos[i]] = 1;
        self.mono_index(&e).unwrap()
    }

    /// F_i acting on the left, i a simple root index.
    pub fn f_simple(&self, i: usize, a: usize) -> &SparseVec<K::E> {
        &self.lmul[self.generic.simple_pos[i]][a]
    }

    pub fn tor_exps(&self, mut c: usize) -> Vec<usize> {
        let n = self.rd.rank;
        let mut e = vec![0; n];
        for t in (0..n).rev() {
            e[t] = c % self.ell;
            c /= self.ell;
        }
        e
    }

    pub fn tor_index(&self, e: &[i64]) -> usize {
        e.iter().fold(0, |acc, &x| {
            acc * self.ell + x.rem_euclid(self.ell as i64) as usize
        })
    }

    /// (Σ c_j α_j, β) for a toral exponent vector c and a root-lattice element β.
    pub fn tor_pair(&self, c: usize, beta: &[i64]) -> i64 {
        let ce: Vec<i64> = self.tor_exps(c).iter().map(|&x| x as i64).collect();
        self.rd.pair_roots(&ce, beta)
    }

    fn g_index(&self, a: usize, c: usize, b: usize) -> usize {
        (a * self.n_tor + c) * self.n_mono + b
    }

    fn g_split(&self, i: usize) -> (usize, usize, usize) {
        let b = i % self.n_mono;
        let r = i / self.n_mono;
        (r / self.n_tor, r % self.n_tor, b)
    }

    fn tor_add(&self, c: usize, d: usize) -> usize {
        let x = self.tor_exps(c);
        let y = self.tor_exps(d);
        let s: Vec<i64> = x.iter().zip(&y).map(|(a, b)| (a + b) as i64).collect();
        self.tor_index(&s)
    }

    fn tor_unit(&self, i: usize, sign: i64) -> usize {
        let mut e = vec![0i64; self.rd.rank];
        e[i] = sign;
        self.tor_index(&e)
    }

    /// E_i · (F^a K^c E^b), in the g basis.
    fn apply_e(&self, i: usize, elem: &HashMap<usize, K::E>) -> HashMap<usize, K::E> {
        let k = &self.field;
        let mut out = HashMap::new();
        let kp = self.tor_unit(i, 1);
        let km = self.tor_unit(i, -1);
        let ai = self.rd.simple_root(i);
        for (&idx, x) in elem {
            let (a, c, b) = self.g_split(idx);
            let cp = self.tor_add(c, kp);
            let cm = self.tor_add(c, km);
            for (a2, y) in &self.comm_plus[i][a] {
                let v = vec![(self.g_index(*a2, cp, b), k.one())];
                sv_add_scaled(k, &mut out, &v, &k.mul(x, y));
            }
            for (a2, y) in &self.comm_minus[i][a] {
                let v = vec![(self.g_index(*a2, cm, b), k.one())];
                sv_add_scaled(k, &mut out, &v, &k.mul(x, y));
            }
            // E_i K^c = ζ^{−(α_i, Σ c_j α_j)} K^c E_i
            let z = k.zeta_pow(-self.tor_pair(c, &ai));
            for (b2, y) in &self.lmul[self.generic.simple_pos[i]][b] {
                let v = vec![(self.g_index(a, c, *b2), k.one())];
                sv_add_scaled(k, &mut out, &v, &k.mul(&k.mul(x, y), &z));
            }
        }
        out.retain(|_, v| !k.is_zero(v));
        out
    }

    /// E^b F^a in the g basis.
    pub fn ef(&self, b: usize, a: usize) -> HashMap<usize, K::E> {
        if let Some(v) = self.ef_cache.read().unwrap().get(&(b, a)) {
            return v.clone();
        }
        let k = &self.field;
        let out = if b == 0 {
            let mut m = HashMap::new();
            m.insert(self.g_index(a, 0, 0), k.one());
            m
        } else {
            let t = self.exps[b].iter().position(|&x| x > 0).unwrap();
            let mut rest = self.exps[b].clone();
            rest[t] -= 1;
            let inner = self.ef(self.mono_index(&rest).unwrap(), a);
            let mut acc: HashMap<usize, K::E> = HashMap::new();
            for (w, c) in &self.root_words[t] {
                let mut cur = inner.clone();
                for &l in w.iter().rev() {
                    cur = self.apply_e(l as usize, &cur);
                }
                for (i, x) in cur {
                    let t = k.mul(&x, c);
                    match acc.get_mut(&i) {
                        Some(e) => *e = k.add(e, &t),
                        None => {
                            acc.insert(i, t);
                        }
                    }
                }
            }
            acc.retain(|_, v| !k.is_zero(v));
            acc
        };
        self.ef_cache.write().unwrap().insert((b, a), out.clone());
        out
    }

    pub fn mono_label(&self, a: usize) -> String {
        let v: Vec<String> = self.exps[a].iter().map(|x| x.to_string()).collect();
        v.join(",")
    }

    pub fn tor_label(&self, c: usize) -> String {
        let v: Vec<String> = self.tor_exps(c).iter().map(|x| x.to_string()).collect();
        v.join(",")
    }
}

struct UCore<K: Field>(Arc<QuantumData<K>>);
struct BCore<K: Field>(Arc<QuantumData<K>>);
struct GCore<K: Field>(Arc<QuantumData<K>>);

impl<K: Field> AlgebraCore<K> for UCore<K> {
    fn dim(&self) -> usize {
        self.0.n_mono
    }
    fn label(&self, i: usize) -> String {
        format!("F[{}]", self.0.mono_label(i))
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        self.0.beta[i].iter().map(|x| -x).collect()
    }
    fn grade(&self, i: usize) -> Option<Grade> {
        Some(Grade::from_slice(
            &self.0.beta[i].iter().map(|&x| x as u32).collect::<Vec<_>>(),
        ))
    }
    fn augmentation(&self, i: usize) -> K::E {
        if i == 0 {
            self.0.field.one()
        } else {
            self.0.field.zero()
        }
    }
    fn unit(&self) -> SparseVec<K::E> {
        vec![(0, self.0.field.one())]
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        self.0.mono_mul(i, j)
    }
}

impl<K: Field> AlgebraCore<K> for BCore<K> {
    fn dim(&self) -> usize {
        self.0.n_mono * self.0.n_tor
    }
    fn label(&self, i: usize) -> String {
        let q = &self.0;
        format!(
            "F[{}]K[{}]",
            q.mono_label(i / q.n_tor),
            q.tor_label(i % q.n_tor)
        )
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        self.0.beta[i / self.0.n_tor].iter().map(|x| -x).collect()
    }
    fn grade(&self, _: usize) -> Option<Grade> {
        None
    }
    fn augmentation(&self, i: usize) -> K::E {
        if i / self.0.n_tor == 0 {
            self.0.field.one()
        } else {
            self.0.field.zero()
        }
    }
    fn unit(&self) -> SparseVec<K::E> {
        vec![(0, self.0.field.one())]
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        let q = &self.0;
        let k = &q.field;
        let (a, c) = (i / q.n_tor, i % q.n_tor);
        let (a2, c2) = (j / q.n_tor, j % q.n_tor);
        let z = k.zeta_pow(-q.tor_pair(c, &q.beta[a2]));
        let c3 = q.tor_add(c, c2);
        q.mono_mul(a, a2)
            .into_iter()
            .map(|(m, x)| (m * q.n_tor + c3, k.mul(&x, &z)))
            .collect()
    }
}

impl<K: Field> AlgebraCore<K> for GCore<K> {
    fn dim(&self) -> usize {
        self.0.n_mono * self.0.n_mono * self.0.n_tor
    }
    fn label(&self, i: usize) -> String {
        let q = &self.0;
        let (a, c, b) = q.g_split(i);
        format!(
            "F[{}]K[{}]E[{}]",
            q.mono_label(a),
            q.tor_label(c),
            q.mono_label(b)
        )
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        let q = &self.0;
        let (a, _, b) = q.g_split(i);
        q.beta[b]
            .iter()
            .zip(&q.beta[a])
            .map(|(x, y)| x - y)
            .collect()
    }
    fn grade(&self, _: usize) -> Option<Grade> {
        None
    }
    fn augmentation(&self, i: usize) -> K::E {
        let (a, _, b) = self.0.g_split(i);
        if a == 0 && b == 0 {
            self.0.field.one()
        } else {
            self.0.field.zero()
        }
    }
    fn unit(&self) -> SparseVec<K::E> {
        vec![(0, self.0.field.one())]
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        let q = &self.0;
        let k = &q.field;
        let (a, c, b) = q.g_split(i);
        let (a2, c2, b2) = q.g_split(j);
        let mut acc = HashMap::new();
        for (idx, x) in q.ef(b, a2) {
            let (a3, c3, b3) = q.g_split(idx);
            let e = -q.tor_pair(c, &q.beta[a3]) - q.tor_pair(c2, &q.beta[b3]);
            let x = k.mul(&x, &k.zeta_pow(e));
            let ct = q.tor_add(q.tor_add(c, c3), c2);
            let fa = q.mono_mul(a, a3);
            let eb = q.mono_mul(b3, b2);
            for (fa_i, y) in &fa {
                for (eb_i, z) in &eb {
                    let v = vec![(q.g_index(*fa_i, ct, *eb_i), k.one())];
                    sv_add_scaled(k, &mut acc, &v, &k.mul(&x, &k.mul(y, z)));
                }
            }
        }
        sv_from_map(k, acc)
    }
}

/// Index of F^a K^c E^b inside the g basis, or inside the b basis when `b = 0` and part is B.
pub fn basis_index<K: Field>(
    q: &QuantumData<K>,
    part: Part,
    a: usize,
    c: usize,
    b: usize,
) -> Option<usize> {
    match part {
        Part::U => (c == 0 && b == 0).then_some(a),
        Part::B => (b == 0).then_some(a * q.n_tor + c),
        Part::G => Some(q.g_index(a, c, b)),
    }
}

fn hopf_data<K: Field>(
    q: &QuantumData<K>,
    part: Part,
) -> (Vec<(String, SparseVec<K::E>)>, HopfData<K::E>) {
    let k = &q.field;
    let n = q.rd.rank;
    let one = k.one();
    let neg = k.neg(&one);
    let el = |a: usize, c: usize, b: usize, x: K::E| -> SparseVec<K::E> {
        vec![(basis_index(q, part, a, c, b).unwrap(), x)]
    };
    let mut gens = vec![];
    let mut hopf = vec![];
    for i in 0..n {
        let fi = q.simple_mono(i);
        let kp = q.tor_unit(i, 1);
        let km = q.tor_unit(i, -1);
        let unit = el(0, 0, 0, one.clone());
        let f = el(fi, 0, 0, one.clone());
        let kk = el(0, kp, 0, one.clone());
        let kinv = el(0, km, 0, one.clone());
        let neg_fk = el(fi, kp, 0, neg.clone());
        gens.push((format!("F{}", i + 1), f.clone()));
        hopf.push(HopfGenerator {
            name: format!("F{}", i + 1),
            element: f.clone(),
            adjoint_terms: vec![(f.clone(), kk.clone()), (unit.clone(), neg_fk.clone())],
            antipode_terms: vec![(neg_fk, kinv.clone()), (unit.clone(), f.clone())],
        });
        gens.push((format!("K{}", i + 1), kk.clone()));
        hopf.push(HopfGenerator {
            name: format!("K{}", i + 1),
            element: kk.clone(),
            adjoint_terms: vec![(kk.clone(), kinv.clone())],
            antipode_terms: vec![(kinv.clone(), kk.clone())],
        });
        if part == Part::G {
            let e = el(0, 0, fi, one.clone());
            // K_i^{-1} E_i is a basis element
            let neg_kinv_e = el(0, km, fi, neg.clone());
            gens.push((format!("E{}", i + 1), e.clone()));
            hopf.push(HopfGenerator {
                name: format!("E{}", i + 1),
                element: e.clone(),
                adjoint_terms: vec![(e.clone(), unit.clone()), (kk.clone(), neg_kinv_e.clone())],
                antipode_terms: vec![(neg_kinv_e, unit.clone()), (kinv.clone(), e.clone())],
            });
        }
    }
    (gens, HopfData { generators: hopf })
}

/// Builds u_ζ(u), u_ζ(b) or u_ζ(g) with the PBW basis of the configured reduced word of w₀.
pub fn build_small_quantum<K: Field>(
    rd: &RootDatum,
    field: &K,
    part: Part,
) -> Result<BasedAlgebra<K>, AlgError> {
    build_small_quantum_with_word(rd, field, part, &rd.w0_word.clone())
}

pub fn build_small_quantum_with_word<K: Field>(
    rd: &RootDatum,
    field: &K,
    part: Part,
    word: &[usize],
) -> Result<BasedAlgebra<K>, AlgError> {
    if rd.rank > 2 {
        return Err(AlgError::UnsupportedType(rd.name()));
    }
    let q = Arc::new(QuantumData::new(rd, field, word)?);
    Ok(assemble(q, part))
}

/// Wraps already specialized data as one of the three algebras.
pub fn assemble<K: Field>(q: Arc<QuantumData<K>>, part: Part) -> BasedAlgebra<K> {
    let ctx = q.field.ctx();
    let info = AlgInfo {
        kind: "small".into(),
        root_type: q.rd.name(),
        ell: ctx.ell,
        p: ctx.p,
        r: 0,
        part: part.name().into(),
        kill: vec![],
        w0_word: q.word.clone(),
    };
    let core: Arc<dyn AlgebraCore<K>> = match part {
        Part::U => Arc::new(UCore(q.clone())),
        Part::B => Arc::new(BCore(q.clone())),
        Part::G => Arc::new(GCore(q.clone())),
    };
    let mut alg = BasedAlgebra::new(q.field.clone(), info, core);
    if (q.ell as i64) <= q.rd.coxeter_number {
        alg.notes.push(format!(
            "ℓ = {} does not exceed the Coxeter number {}",
            q.ell, q.rd.coxeter_number
        ));
    }
    match part {
        Part::U => {
            alg.generators = (0..q.rd.rank)
                .map(|i| {
                    (
                        format!("F{}", i + 1),
                        vec![(q.simple_mono(i), q.field.one())],
                    )
                })
                .collect();
        }
        Part::B | Part::G => {
            let (gens, hopf) = hopf_data(&q, part);
            alg.generators = gens;
            alg.hopf = Some(hopf);
        }
    }
    alg.quantum = Some(q);
    alg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_field, Gf};

    fn gf(p: u64, ell: u64) -> Gf {
        Gf::new(&make_field(p, ell).unwrap()).unwrap()
    }

    #[test]
    fn a1_u_products() {
        let rd = RootDatum::from_type_str("A1").unwrap();
        let k = gf(11, 5);
        let u = build_small_quantum(&rd, &k, Part::U).unwrap();
        assert_eq!(u.dim(), 5);
        assert_eq!(u.mul_basis(2, 2), vec![(4, 1)]);
        assert!(u.mul_basis(2, 3).is_empty());
    }

    #[test]
    fn dimensions_and_associativity() {
        let k = gf(11, 5);
        for (t, nu) in [("A1", 5usize), ("A2", 125), ("B2", 625)] {
            let rd = RootDatum::from_type_str(t).unwrap();
            let u = build_small_quantum(&rd, &k, Part::U).unwrap();
            assert_eq!(u.dim(), nu);
            assert!(u.check_associativity(20_000), "{t}");
            assert!(u.check_weights(20_000));
        }
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        assert_eq!(g.dim(), 125);
        assert!(g.check_associativity(3_000_000));
        assert!(g.check_augmentation(20_000));
    }

    #[test]
    fn a1_commutator_formula() {
        // [E, F^n] = [n] F^{n−1} (ζ^{−(n−1)} K − ζ^{n−1} K^{−1}) / (ζ − ζ^{−1})
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let q = QuantumData::new(&rd, &k, &[0]).unwrap();
        let z = |e: i64| k.zeta_pow(e);
        let inv = k.inv(&k.sub(&z(1), &z(-1))).unwrap();
        for n in 1..5i64 {
            let qn = k.mul(&k.sub(&z(n), &z(-n)), &inv);
            let plus = k.mul(&k.mul(&qn, &z(-(n - 1))), &inv);
            let minus = k.neg(&k.mul(&k.mul(&qn, &z(n - 1)), &inv));
            assert_eq!(q.comm_plus[0][n as usize], vec![(n as usize - 1, plus)]);
            assert_eq!(q.comm_minus[0][n as usize], vec![(n as usize - 1, minus)]);
        }
    }

    #[test]
    fn omega_reproduces_positive_monomials() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A2").unwrap();
        let q = QuantumData::new(&rd, &k, &rd.w0_word).unwrap();
        for b in [1usize, 7, 31, 124] {
            let v = q.ef(b, 0);
            assert_eq!(v.len(), 1);
            assert_eq!(v.get(&q.g_index(0, 0, b)), Some(&1));
        }
    }
}
