//! Root systems of types A1, A2, A3, B2: roots, weights, Weyl group, convex orders.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported type {0}{1}")]
    UnsupportedType(char, usize),
    #[error("word is not reduced")]
    NotReduced,
    #[error("word does not represent the longest element")]
    NotLongestWord,
    #[error("bad word: {0}")]
    BadWord(String),
}

pub type IMat = Vec<Vec<i64>>;

/// Weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
    /// (λ, α_i^∨)
    pub fn coroot_pairing(&self, i: usize) -> i64 {
        self.0[i]
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Action on fundamental-weight coordinates.
    pub weight_matrix: IMat,
    /// Action on simple-root coordinates.
    pub root_matrix: IMat,
    /// A reduced word (indices of simple reflections, applied left to right as a product).
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub series: char,
    pub rank: usize,
    /// a_ij = ⟨α_i^∨, α_j⟩
    pub cartan: IMat,
    /// d_i = (α_i, α_i)/2
    pub d: Vec<i64>,
    /// Positive roots in simple-root coordinates, ordered by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Weight,
    pub highest_short_root: Vec<i64>,
    pub highest_root: Vec<i64>,
    pub coxeter_number: i64,
    pub weyl: Vec<WeylElement>,
    pub w0_word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumRecord {
    pub series: char,
    pub rank: usize,
    pub cartan: IMat,
    pub w0_word: Vec<usize>,
}

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn parse_type(s: &str) -> Result<(char, usize), RootError> {
    let mut it = s.chars();
    let c = it
        .next()
        .ok_or_else(|| RootError::BadWord(s.into()))?
        .to_ascii_uppercase();
    let r: usize = it
        .as_str()
        .parse()
        .map_err(|_| RootError::BadWord(s.into()))?;
    Ok((c, r))
}

impl RootDatum {
    pub fn build(series: char, rank: usize) -> Result<Self, RootError> {
        let cartan: IMat = match (series, rank) {
            ('A', 1) => vec![vec![2]],
            ('A', 2) => vec![vec![2, -1], vec![-1, 2]],
            ('A', 3) => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            // α1 long, α2 short
            ('B', 2) => vec![vec![2, -1], vec![-2, 2]],
            _ => return Err(RootError::UnsupportedType(series, rank)),
        };
        let d: Vec<i64> = match (series, rank) {
            ('B', 2) => vec![2, 1],
            _ => vec![1; rank],
        };
        Ok(Self::from_cartan(series, rank, cartan, d))
    }

    pub fn from_type_str(s: &str) -> Result<Self, RootError> {
        let (c, r) = parse_type(s)?;
        Self::build(c, r)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    fn from_cartan(series: char, rank: usize, cartan: IMat, d: Vec<i64>) -> Self {
        let n = rank;
        // simple reflections on root coordinates: s_i(β) = β − ⟨β, α_i^∨⟩ α_i
        let s_root: Vec<IMat> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for j in 0..n {
                    m[i][j] -= cartan[i][j];
                }
                m
            })
            .collect();
        // on fundamental-weight coordinates: s_i(λ) = λ − λ_i α_i, α_i has coordinates a_ki
        let s_weight: Vec<IMat> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for k in 0..n {
                    m[k][i] -= cartan[k][i];
                }
                m
            })
            .collect();
        // breadth-first enumeration gives reduced words
        let mut weyl = vec![WeylElement {
            weight_matrix: identity(n),
            root_matrix: identity(n),
            word: vec![],
            length: 0,
        }];
        let mut seen: HashMap<IMat, usize> = HashMap::new();
        seen.insert(identity(n), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &idx in &frontier {
                for i in 0..n {
                    let w = &weyl[idx];
                    let wm = mat_mul(&w.weight_matrix, &s_weight[i]);
                    if seen.contains_key(&wm) {
                        continue;
                    }
                    let rm = mat_mul(&w.root_matrix, &s_root[i]);
                    let mut word = w.word.clone();
                    word.push(i);
                    let length = word.len();
                    seen.insert(wm.clone(), weyl.len());
                    next.push(weyl.len());
                    weyl.push(WeylElement {
                        weight_matrix: wm,
                        root_matrix: rm,
                        word,
                        length,
                    });
                }
            }
            frontier = next;
        }
        let mut roots: Vec<Vec<i64>> = Vec::new();
        for w in &weyl {
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                let r = mat_vec(&w.root_matrix, &e);
                if r.iter().all(|&x| x >= 0) && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        let highest_root = roots.last().unwrap().clone();
        let short_len = 2;
        let sym = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += a[i] * d[i] * cartan[i][j] * b[j];
                }
            }
            s
        };
        let highest_short_root = roots
            .iter()
            .rev()
            .find(|r| sym(r, r) == short_len)
            .unwrap()
            .clone();
        let rho = Weight(vec![1; n]);
        let w0 = weyl.iter().max_by_key(|w| w.length).unwrap();
        // rank ≤ 2: the alternating word starting with s_1
        let w0_word = if n <= 2 {
            (0..w0.length).map(|k| k % n).collect()
        } else {
            w0.word.clone()
        };
        let mut rd = RootDatum {
            series,
            rank,
            cartan,
            d,
            positive_roots: roots,
            rho,
            highest_short_root,
            highest_root,
            coxeter_number: 0,
            weyl,
            w0_word,
        };
        rd.coxeter_number =
            rd.coroot_pairing_root(&rd.rho.clone(), &rd.highest_short_root.clone()) + 1;
        rd
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// (α, β) for roots in simple-root coordinates; short roots have (α, α) = 2.
    pub fn pair_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * self.d[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    /// (λ, β) for a weight λ and a root-lattice element β.
    pub fn pair_weight_root(&self, l: &Weight, b: &[i64]) -> i64 {
        (0..self.rank).map(|j| b[j] * self.d[j] * l.0[j]).sum()
    }

    /// ⟨λ, β^∨⟩ = 2(λ, β)/(β, β).
    pub fn coroot_pairing_root(&self, l: &Weight, b: &[i64]) -> i64 {
        2 * self.pair_weight_root(l, b) / self.pair_roots(b, b)
    }

    /// Root-lattice coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, b: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * b[j]).sum())
                .collect(),
        )
    }

    /// Fundamental-weight coordinates to root coordinates, if λ lies in the root lattice.
    pub fn weight_to_root(&self, l: &Weight) -> Option<Vec<i64>> {
        let n = self.rank;
        // solve cartan · b = λ with exact fractions via Cramer over small matrices
        let det = det_i64(&self.cartan);
        let mut b = vec![0; n];
        for (j, bj) in b.iter_mut().enumerate() {
            let mut m = self.cartan.clone();
            for i in 0..n {
                m[i][j] = l.0[i];
            }
            let dj = det_i64(&m);
            if dj % det != 0 {
                return None;
            }
            *bj = dj / det;
        }
        Some(b)
    }

    /// (λ, μ) for weights, doubled-and-scaled to stay integral: returns det·(λ, μ) and det.
    pub fn pair_weights_scaled(&self, l: &Weight, m: &Weight) -> (i64, i64) {
        let n = self.rank;
        let det = det_i64(&self.cartan);
        // b = det · A^{-1} m  via adjugate
        let mut b = vec![0; n];
        for (j, bj) in b.iter_mut().enumerate() {
            let mut mm = self.cartan.clone();
            for i in 0..n {
                mm[i][j] = m.0[i];
            }
            *bj = det_i64(&mm);
        }
        (self.pair_weight_root(l, &b), det)
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        e
    }

    pub fn height(b: &[i64]) -> i64 {
        b.iter().sum()
    }

    pub fn act_weight(&self, w: &WeylElement, l: &Weight) -> Weight {
        Weight(mat_vec(&w.weight_matrix, &l.0))
    }

    pub fn act_root(&self, w: &WeylElement, b: &[i64]) -> Vec<i64> {
        mat_vec(&w.root_matrix, b)
    }

    /// w·λ = w(λ + ρ) − ρ
    pub fn dot_action(&self, w: &WeylElement, l: &Weight) -> Weight {
        self.act_weight(w, &l.add(&self.rho)).sub(&self.rho)
    }

    pub fn weyl_index(&self, weight_matrix: &IMat) -> Option<usize> {
        self.weyl
            .iter()
            .position(|w| &w.weight_matrix == weight_matrix)
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(&self.weyl[a].weight_matrix, &self.weyl[b].weight_matrix);
        self.weyl_index(&m).unwrap()
    }

    fn word_matrix(&self, word: &[usize]) -> Result<IMat, RootError> {
        let mut m = identity(self.rank);
        for &i in word {
            if i >= self.rank {
                return Err(RootError::BadWord(format!("index {i} out of range")));
            }
            let mut e = identity(self.rank);
            for k in 0..self.rank {
                e[k][i] -= self.cartan[k][i];
            }
            m = mat_mul(&m, &e);
        }
        Ok(m)
    }

    /// γ_i = s_{β1} ⋯ s_{β_{i−1}}(β_i) for a reduced word of w₀ (0-based indices).
    pub fn convex_positive_roots(&self, word: &[usize]) -> Result<Vec<Vec<i64>>, RootError> {
        let m = self.word_matrix(word)?;
        let idx = self.weyl_index(&m).unwrap();
        if self.weyl[idx].length < word.len() {
            return Err(RootError::NotReduced);
        }
        if word.len() != self.num_positive() {
            return Err(RootError::NotLongestWord);
        }
        let mut out = Vec::new();
        let mut prefix = identity(self.rank);
        for &i in word {
            let pm = self
                .weyl
                .iter()
                .find(|e| e.weight_matrix == prefix)
                .unwrap();
            out.push(self.act_root(pm, &self.simple_root(i)));
            let mut e = identity(self.rank);
            for k in 0..self.rank {
                e[k][i] -= self.cartan[k][i];
            }
            prefix = mat_mul(&prefix, &e);
        }
        Ok(out)
    }

    /// Weights with 0 ≤ (μ, α^∨) < p^r ℓ for all simple α (p = 0 means modulus ℓ).
    pub fn restricted_weights(&self, p: u64, r: u32, ell: u64) -> Vec<Weight> {
        let m = if p == 0 { ell } else { p.pow(r) * ell } as i64;
        let mut out = vec![Weight(vec![])];
        for _ in 0..self.rank {
            let mut next = Vec::new();
            for w in &out {
                for c in 0..m {
                    let mut v = w.0.clone();
                    v.push(c);
                    next.push(Weight(v));
                }
            }
            out = next;
        }
        out
    }

    /// Checks: ρ − wρ ≥ sν componentwise (root coordinates) implies ℓ(w) ≥ n + s − 1.
    pub fn verify_length_bound(&self, s: i64) -> LengthBoundReport {
        let mut witnesses = Vec::new();
        let mut holds = true;
        for w in &self.weyl {
            let diff = self.rho.sub(&self.act_weight(w, &self.rho));
            let b = self
                .weight_to_root(&diff)
                .expect("ρ − wρ lies in the root lattice");
            let ok = b.iter().zip(&self.highest_root).all(|(x, v)| *x >= s * v);
            if ok {
                let bound = self.rank as i64 + s - 1;
                let good = w.length as i64 >= bound;
                holds &= good;
                witnesses.push((w.word.clone(), w.length, good));
            }
        }
        LengthBoundReport {
            rank: self.rank,
            s,
            holds,
            witnesses,
        }
    }

    pub fn to_record(&self) -> RootDatumRecord {
        RootDatumRecord {
            series: self.series,
            rank: self.rank,
            cartan: self.cartan.clone(),
            w0_word: self.w0_word.clone(),
        }
    }

    pub fn is_short(&self, b: &[i64]) -> bool {
        self.pair_roots(b, b) == 2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthBoundReport {
    pub rank: usize,
    pub s: i64,
    pub holds: bool,
    /// (reduced word, length, bound satisfied) for every w meeting the hypothesis
    pub witnesses: Vec<(Vec<usize>, usize, bool)>,
}

fn det_i64(m: &IMat) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut s = 0;
            for j in 0..n {
                let minor: IMat = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c]).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                s += sign * m[0][j] * det_i64(&minor);
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (c, r, n, w, h) in [
            ('A', 1, 1, 2, 2),
            ('A', 2, 3, 6, 3),
            ('A', 3, 6, 24, 4),
            ('B', 2, 4, 8, 4),
        ] {
            let rd = RootDatum::build(c, r).unwrap();
            assert_eq!(rd.num_positive(), n);
            assert_eq!(rd.weyl.len(), w);
            assert_eq!(rd.coxeter_number, h);
            assert_eq!(rd.w0_word.len(), n);
        }
        assert!(RootDatum::build('G', 2).is_err());
    }

    #[test]
    fn b2_lengths() {
        let rd = RootDatum::build('B', 2).unwrap();
        let mut lens: Vec<i64> = rd
            .positive_roots
            .iter()
            .map(|r| rd.pair_roots(r, r))
            .collect();
        lens.sort();
        assert_eq!(lens, vec![2, 2, 4, 4]);
        assert_eq!(rd.highest_short_root, vec![1, 1]);
        assert_eq!(rd.highest_root, vec![1, 2]);
    }

    #[test]
    fn a2_convex_orders() {
        let rd = RootDatum::build('A', 2).unwrap();
        assert_eq!(
            rd.convex_positive_roots(&[0, 1, 0]).unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![0, 1]]
        );
        assert_eq!(
            rd.convex_positive_roots(&[1, 0, 1]).unwrap(),
            vec![vec![0, 1], vec![1, 1], vec![1, 0]]
        );
        assert_eq!(
            rd.convex_positive_roots(&[0, 0, 1]),
            Err(RootError::NotReduced)
        );
        assert_eq!(
            rd.convex_positive_roots(&[0, 1]),
            Err(RootError::NotLongestWord)
        );
    }

    #[test]
    fn fundamental_weights_dual_to_coroots() {
        for (c, r) in [('A', 2), ('A', 3), ('B', 2)] {
            let rd = RootDatum::build(c, r).unwrap();
            for i in 0..r {
                let mut e = vec![0; r];
                e[i] = 1;
                let w = Weight(e);
                for j in 0..r {
                    assert_eq!(
                        rd.coroot_pairing_root(&w, &rd.simple_root(j)),
                        i64::from(i == j)
                    );
                }
            }
            for b in &rd.positive_roots {
                assert_eq!(rd.weight_to_root(&rd.root_to_weight(b)).unwrap(), *b);
            }
        }
    }
}
