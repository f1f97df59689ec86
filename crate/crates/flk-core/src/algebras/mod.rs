//! Finite-dimensional and graded algebras given by explicit bases.

pub mod adjoint;
pub mod graded;
pub mod kernel_a1;
pub mod pbw;
pub mod small;
pub mod tower;

use crate::rootdata::RootError;
use crate::scalars::{Field, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use thiserror::Error;

pub use adjoint::{adjoint_stability_check, AdjointReport};
pub use graded::{associated_graded, pbw_filtration};
pub use kernel_a1::{build_dividedpower_kernel_a1, KernelA1, KernelPart};
pub use small::{build_small_quantum, Part, QuantumData};
pub use tower::{build_tower_algebra, TowerAlgebra, TowerGen};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("closure violation: {0}")]
    ClosureViolation(String),
    #[error("filtration is not multiplicative: {0}")]
    NotFiltered(String),
    #[error("algebra has no Hopf data")]
    HopfDataMissing,
    #[error("PBW construction failed: {0}")]
    Pbw(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Root(#[from] RootError),
}

pub const MAX_GRADE_LEN: usize = 8;

/// Multidegree in ℕ^g (g ≤ 8), ordered by total degree first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Grade {
    pub c: [u16; MAX_GRADE_LEN],
    pub n: u8,
}

impl Grade {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GRADE_LEN);
        Grade {
            c: [0; MAX_GRADE_LEN],
            n: n as u8,
        }
    }

    pub fn from_slice(v: &[u32]) -> Self {
        let mut g = Self::zero(v.len());
        for (i, &x) in v.iter().enumerate() {
            g.c[i] = u16::try_from(x).expect("grade coordinate overflow");
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn total(&self) -> u32 {
        self.c.iter().map(|&x| x as u32).sum()
    }

    pub fn coords(&self) -> Vec<u32> {
        self.c[..self.len()].iter().map(|&x| x as u32).collect()
    }

    pub fn add(&self, o: &Grade) -> Grade {
        let mut g = *self;
        for i in 0..self.len() {
            g.c[i] = self.c[i].checked_add(o.c[i]).expect("grade overflow");
        }
        g
    }

    pub fn checked_sub(&self, o: &Grade) -> Option<Grade> {
        let mut g = *self;
        for i in 0..self.len() {
            g.c[i] = self.c[i].checked_sub(o.c[i])?;
        }
        Some(g)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Grade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.c).cmp(&(other.total(), other.c))
    }
}

/// Sparse vector sorted by index with nonzero entries.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn sv_add_scaled<K: Field>(
    k: &K,
    acc: &mut HashMap<usize, K::E>,
    v: &SparseVec<K::E>,
    c: &K::E,
) {
    if k.is_zero(c) {
        return;
    }
    for (i, x) in v {
        let t = k.mul(x, c);
        match acc.get_mut(i) {
            Some(e) => *e = k.add(e, &t),
            None => {
                acc.insert(*i, t);
            }
        }
    }
}

pub fn sv_from_map<K: Field>(k: &K, m: HashMap<usize, K::E>) -> SparseVec<K::E> {
    let mut v: SparseVec<K::E> = m.into_iter().filter(|(_, x)| !k.is_zero(x)).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

pub fn sv_scale<K: Field>(k: &K, v: &SparseVec<K::E>, c: &K::E) -> SparseVec<K::E> {
    if k.is_zero(c) {
        return vec![];
    }
    v.iter().map(|(i, x)| (*i, k.mul(x, c))).collect()
}

pub fn sv_add<K: Field>(k: &K, a: &SparseVec<K::E>, b: &SparseVec<K::E>) -> SparseVec<K::E> {
    let mut m: HashMap<usize, K::E> = a.iter().cloned().collect();
    sv_add_scaled(k, &mut m, b, &k.one());
    sv_from_map(k, m)
}

pub fn sv_single<K: Field>(k: &K, i: usize) -> SparseVec<K::E> {
    vec![(i, k.one())]
}

pub fn sv_to_dense<K: Field>(k: &K, v: &SparseVec<K::E>, n: usize) -> Vec<K::E> {
    let mut d = vec![k.zero(); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

pub fn sv_from_dense<K: Field>(k: &K, d: &[K::E]) -> SparseVec<K::E> {
    d.iter()
        .enumerate()
        .filter(|(_, x)| !k.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Basis data and multiplication of an algebra.
pub trait AlgebraCore<K: Field>: Send + Sync {
    fn dim(&self) -> usize;
    fn label(&self, i: usize) -> String;
    /// Weight in root-lattice coordinates.
    fn weight(&self, i: usize) -> Vec<i64>;
    /// Connected multigrading, when the algebra carries one.
    fn grade(&self, i: usize) -> Option<Grade>;
    fn augmentation(&self, i: usize) -> K::E;
    /// The unit as a combination of basis elements.
    fn unit(&self) -> SparseVec<K::E>;
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E>;
}

/// Multiplication stored as a compressed table.
pub struct TableCore<K: Field> {
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    pub grades: Option<Vec<Grade>>,
    pub aug: Vec<K::E>,
    pub unit: SparseVec<K::E>,
    pub offsets: Vec<u32>,
    pub entries: Vec<(u32, K::E)>,
}

impl<K: Field> TableCore<K> {
    pub fn from_core(core: &dyn AlgebraCore<K>) -> Self {
        let n = core.dim();
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for i in 0..n {
            for j in 0..n {
                for (t, c) in core.mul(i, j) {
                    entries.push((t as u32, c));
                }
                offsets.push(entries.len() as u32);
            }
        }
        TableCore {
            labels: (0..n).map(|i| core.label(i)).collect(),
            weights: (0..n).map(|i| core.weight(i)).collect(),
            grades: (0..n).map(|i| core.grade(i)).collect(),
            aug: (0..n).map(|i| core.augmentation(i)).collect(),
            unit: core.unit(),
            offsets,
            entries,
        }
    }

    pub fn from_triples(
        labels: Vec<String>,
        weights: Vec<Vec<i64>>,
        grades: Option<Vec<Grade>>,
        aug: Vec<K::E>,
        unit: SparseVec<K::E>,
        table: &dyn Fn(usize, usize) -> SparseVec<K::E>,
    ) -> Self {
        let n = labels.len();
        let mut offsets = vec![0u32];
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (t, c) in table(i, j) {
                    entries.push((t as u32, c));
                }
                offsets.push(entries.len() as u32);
            }
        }
        TableCore {
            labels,
            weights,
            grades,
            aug,
            unit,
            offsets,
            entries,
        }
    }
}

impl<K: Field> AlgebraCore<K> for TableCore<K> {
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }
    fn weight(&self, i: usize) -> Vec<i64> {
        self.weights[i].clone()
    }
    fn grade(&self, i: usize) -> Option<Grade> {
        self.grades.as_ref().map(|g| g[i])
    }
    fn augmentation(&self, i: usize) -> K::E {
        self.aug[i].clone()
    }
    fn unit(&self) -> SparseVec<K::E> {
        self.unit.clone()
    }
    fn mul(&self, i: usize, j: usize) -> SparseVec<K::E> {
        let n = self.labels.len();
        let s = self.offsets[i * n + j] as usize;
        let e = self.offsets[i * n + j + 1] as usize;
        self.entries[s..e]
            .iter()
            .map(|(t, c)| (*t as usize, c.clone()))
            .collect()
    }
}

/// Parameters describing how an algebra was built; enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgInfo {
    pub kind: String,
    pub root_type: String,
    pub ell: u64,
    pub p: u64,
    pub r: u32,
    pub part: String,
    pub kill: Vec<usize>,
    pub w0_word: Vec<usize>,
}

/// Coproduct data of one algebra generator, stored as the pairs (h₁, S(h₂)).
#[derive(Clone, Debug)]
pub struct HopfGenerator<E> {
    pub name: String,
    pub element: SparseVec<E>,
    /// Σ h₁ ⊗ S(h₂)
    pub adjoint_terms: Vec<(SparseVec<E>, SparseVec<E>)>,
    /// Σ S(h₁) ⊗ h₂
    pub antipode_terms: Vec<(SparseVec<E>, SparseVec<E>)>,
}

#[derive(Clone, Debug)]
pub struct HopfData<E> {
    pub generators: Vec<HopfGenerator<E>>,
}

pub const TABLE_LIMIT: usize = 1000;
const CACHE_LIMIT: usize = 1 << 20;

/// Augmented algebra with a distinguished basis.
pub struct BasedAlgebra<K: Field> {
    pub field: K,
    pub info: AlgInfo,
    core: Arc<dyn AlgebraCore<K>>,
    tabulated: bool,
    cache: RwLock<HashMap<(usize, usize), SparseVec<K::E>>>,
    pub filtration: Option<Vec<u64>>,
    /// Named algebra generators as elements.
    pub generators: Vec<(String, SparseVec<K::E>)>,
    pub hopf: Option<HopfData<K::E>>,
    pub quantum: Option<Arc<QuantumData<K>>>,
    pub kernel: Option<Arc<KernelA1<K>>>,
    /// Warnings raised during construction.
    pub notes: Vec<String>,
}

impl<K: Field> Clone for BasedAlgebra<K> {
    fn clone(&self) -> Self {
        BasedAlgebra {
            field: self.field.clone(),
            info: self.info.clone(),
            core: self.core.clone(),
            tabulated: self.tabulated,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
            filtration: self.filtration.clone(),
            generators: self.generators.clone(),
            hopf: self.hopf.clone(),
            quantum: self.quantum.clone(),
            kernel: self.kernel.clone(),
            notes: self.notes.clone(),
        }
    }
}

impl<K: Field> BasedAlgebra<K> {
    /// Wraps a core; tabulates it when the dimension is at most [`TABLE_LIMIT`].
    pub fn new(field: K, info: AlgInfo, core: Arc<dyn AlgebraCore<K>>) -> Self {
        let (core, tabulated): (Arc<dyn AlgebraCore<K>>, bool) = if core.dim() <= TABLE_LIMIT {
            (Arc::new(TableCore::from_core(core.as_ref())), true)
        } else {
            (core, false)
        };
        BasedAlgebra {
            field,
            info,
            core,
            tabulated,
            cache: RwLock::new(HashMap::new()),
            filtration: None,
            generators: vec![],
            hopf: None,
            quantum: None,
            kernel: None,
            notes: vec![],
        }
    }

    pub fn is_tabulated(&self) -> bool {
        self.tabulated
    }

    pub fn dim(&self) -> usize {
        self.core.dim()
    }

    pub fn label(&self, i: usize) -> String {
        self.core.label(i)
    }

    pub fn weight(&self, i: usize) -> Vec<i64> {
        self.core.weight(i)
    }

    pub fn grade(&self, i: usize) -> Option<Grade> {
        self.core.grade(i)
    }

    pub fn augmentation(&self, i: usize) -> K::E {
        self.core.augmentation(i)
    }

    pub fn unit(&self) -> SparseVec<K::E> {
        self.core.unit()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec<K::E> {
        if self.tabulated {
            return self.core.mul(i, j);
        }
        if let Some(v) = self.cache.read().unwrap().get(&(i, j)) {
            return v.clone();
        }
        let v = self.core.mul(i, j);
        let mut c = self.cache.write().unwrap();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert((i, j), v.clone());
        v
    }

    /// Cached products of a lazily multiplied algebra, sorted.
    pub fn cached_products(&self) -> Vec<((usize, usize), SparseVec<K::E>)> {
        let mut v: Vec<_> = self
            .cache
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn mul(&self, a: &SparseVec<K::E>, b: &SparseVec<K::E>) -> SparseVec<K::E> {
        let k = &self.field;
        let mut acc = HashMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = k.mul(x, y);
                sv_add_scaled(k, &mut acc, &self.mul_basis(*i, *j), &c);
            }
        }
        sv_from_map(k, acc)
    }

    pub fn one(&self) -> SparseVec<K::E> {
        self.unit()
    }

    pub fn augment(&self, a: &SparseVec<K::E>) -> K::E {
        let k = &self.field;
        let mut s = k.zero();
        for (i, x) in a {
            s = k.add(&s, &k.mul(x, &self.augmentation(*i)));
        }
        s
    }

    pub fn generator(&self, name: &str) -> Option<&SparseVec<K::E>> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    pub fn core(&self) -> &Arc<dyn AlgebraCore<K>> {
        &self.core
    }

    /// Exhaustive (or sampled, for large algebras) associativity check.
    pub fn check_associativity(&self, max_triples: usize) -> bool {
        let n = self.dim();
        let k = &self.field;
        let mut count = 0usize;
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let total = (n as u128).pow(3);
        let exhaustive = total <= max_triples as u128;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        loop {
            let (a, b, c) = if exhaustive {
                if count as u128 >= total {
                    break;
                }
                (count / (n * n), (count / n) % n, count % n)
            } else {
                if count >= max_triples {
                    break;
                }
                (next(), next(), next())
            };
            count += 1;
            let ab = self.mul_basis(a, b);
            let left = self.mul(&ab, &sv_single(k, c));
            let bc = self.mul_basis(b, c);
            let right = self.mul(&sv_single(k, a), &bc);
            if left != right {
                return false;
            }
        }
        true
    }

    /// Checks that every product is weight-additive.
    pub fn check_weights(&self, max_pairs: usize) -> bool {
        let n = self.dim();
        let mut seen = 0;
        for i in 0..n {
            for j in 0..n {
                if seen >= max_pairs {
                    return true;
                }
                seen += 1;
                let w: Vec<i64> = self
                    .weight(i)
                    .iter()
                    .zip(self.weight(j))
                    .map(|(a, b)| a + b)
                    .collect();
                if self
                    .mul_basis(i, j)
                    .iter()
                    .any(|(t, _)| self.weight(*t) != w)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that ε is multiplicative on basis pairs.
    pub fn check_augmentation(&self, max_pairs: usize) -> bool {
        let n = self.dim();
        let k = &self.field;
        let mut seen = 0;
        for i in 0..n {
            for j in 0..n {
                if seen >= max_pairs {
                    return true;
                }
                seen += 1;
                let lhs = self.augment(&self.mul_basis(i, j));
                let rhs = k.mul(&self.augmentation(i), &self.augmentation(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
