//! Dense exact linear algebra over a [`Field`].
//!
//! Pivoting is deterministic: the first nonzero entry in column order wins.

use crate::scalars::Field;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<K: Field>(k: &K, rows: usize, cols: usize) -> Mat<K::E> {
    vec![vec![k.zero(); cols]; rows]
}

pub fn identity<K: Field>(k: &K, n: usize) -> Mat<K::E> {
    let mut m = zeros(k, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = k.one();
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(k: &K, m: &mut Mat<K::E>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).unwrap();
        if !k.is_one(&inv) {
            for x in m[r].iter_mut() {
                if !k.is_zero(x) {
                    *x = k.mul(x, &inv);
                }
            }
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = k.neg(&row[c]);
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !k.is_zero(y) {
                    *x = k.add(x, &k.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(k: &K, m: &Mat<K::E>) -> usize {
    let mut c = m.clone();
    rref(k, &mut c).len()
}

/// Basis of {x : m x = 0}.
pub fn kernel<K: Field>(k: &K, m: &Mat<K::E>, cols: usize) -> Vec<Vec<K::E>> {
    let mut a = m.clone();
    let piv = rref(k, &mut a);
    let mut is_piv = vec![false; cols];
    for &p in &piv {
        is_piv[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_piv[c]) {
        let mut v = vec![k.zero(); cols];
        v[f] = k.one();
        for (r, &p) in piv.iter().enumerate() {
            v[p] = k.neg(&a[r][f]);
        }
        out.push(v);
    }
    out
}

/// Some x with m x = b, if one exists.
pub fn solve<K: Field>(k: &K, m: &Mat<K::E>, b: &[K::E]) -> Option<Vec<K::E>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Mat<K::E> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if rows == 0 {
        return Some(vec![]);
    }
    let piv = rref(k, &mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<K: Field>(k: &K, m: &Mat<K::E>) -> Option<Mat<K::E>> {
    let n = m.len();
    let mut a: Mat<K::E> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    let piv = rref(k, &mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<K: Field>(k: &K, a: &Mat<K::E>, b: &Mat<K::E>) -> Mat<K::E> {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = zeros(k, n, m);
    for i in 0..n {
        for (t, x) in a[i].iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for j in 0..m {
                if !k.is_zero(&b[t][j]) {
                    out[i][j] = k.add(&out[i][j], &k.mul(x, &b[t][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<K: Field>(k: &K, a: &Mat<K::E>, v: &[K::E]) -> Vec<K::E> {
    a.iter()
        .map(|row| {
            let mut s = k.zero();
            for (x, y) in row.iter().zip(v) {
                if !k.is_zero(x) && !k.is_zero(y) {
                    s = k.add(&s, &k.mul(x, y));
                }
            }
            s
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat<K: Field>(k: &K, v: &[K::E], a: &Mat<K::E>) -> Vec<K::E> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![k.zero(); m];
    for (x, row) in v.iter().zip(a) {
        if k.is_zero(x) {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !k.is_zero(y) {
                *o = k.add(o, &k.mul(x, y));
            }
        }
    }
    out
}

pub fn transpose<E: Clone>(a: &Mat<E>, cols: usize) -> Mat<E> {
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Subspace kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    pub dim_ambient: usize,
    pub rows: Vec<Vec<K::E>>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn new(n: usize) -> Self {
        Subspace {
            dim_ambient: n,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn spanned_by(k: &K, n: usize, vs: &[Vec<K::E>]) -> Self {
        let mut s = Self::new(n);
        for v in vs {
            s.insert(k, v.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the basis; the result is zero iff v lies in the span.
    pub fn reduce(&self, k: &K, mut v: Vec<K::E>) -> Vec<K::E> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if k.is_zero(&v[p]) {
                continue;
            }
            let f = k.neg(&v[p]);
            for (x, y) in v.iter_mut().zip(row) {
                if !k.is_zero(y) {
                    *x = k.add(x, &k.mul(&f, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, k: &K, v: &[K::E]) -> bool {
        self.reduce(k, v.to_vec()).iter().all(|x| k.is_zero(x))
    }

    /// Adds v; returns false when v was already in the span.
    pub fn insert(&mut self, k: &K, v: Vec<K::E>) -> bool {
        let mut v = self.reduce(k, v);
        let Some(p) = v.iter().position(|x| !k.is_zero(x)) else {
            return false;
        };
        let inv = k.inv(&v[p]).unwrap();
        for x in v.iter_mut() {
            if !k.is_zero(x) {
                *x = k.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if k.is_zero(&row[p]) {
                continue;
            }
            let f = k.neg(&row[p]);
            for (x, y) in row.iter_mut().zip(&v) {
                if !k.is_zero(y) {
                    *x = k.add(x, &k.mul(&f, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn sum(&self, k: &K, o: &Self) -> Self {
        let mut s = self.clone();
        for r in &o.rows {
            s.insert(k, r.clone());
        }
        s
    }

    pub fn intersect(&self, k: &K, o: &Self) -> Self {
        // solve Σ a_i u_i = Σ b_j w_j
        let n = self.dim_ambient;
        let a = self.dim();
        let b = o.dim();
        let mut m = zeros(k, n, a + b);
        for (i, u) in self.rows.iter().enumerate() {
            for t in 0..n {
                m[t][i] = u[t].clone();
            }
        }
        for (j, w) in o.rows.iter().enumerate() {
            for t in 0..n {
                m[t][a + j] = k.neg(&w[t]);
            }
        }
        let ker = kernel(k, &m, a + b);
        let mut s = Self::new(n);
        for v in ker {
            let mut x = vec![k.zero(); n];
            for (i, u) in self.rows.iter().enumerate() {
                if k.is_zero(&v[i]) {
                    continue;
                }
                for t in 0..n {
                    x[t] = k.add(&x[t], &k.mul(&v[i], &u[t]));
                }
            }
            s.insert(k, x);
        }
        s
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.pivots == o.pivots && self.rows == o.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_field, Gf};

    #[test]
    fn kernel_and_solve() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let m: Mat<u32> = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ker = kernel(&k, &m, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mat_vec(&k, &m, v).iter().all(|x| *x == 0));
        }
        let x = solve(&k, &m, &[1, 2]).unwrap();
        assert_eq!(mat_vec(&k, &m, &x), vec![1, 2]);
        assert!(solve(&k, &m, &[1, 1]).is_none());
        let inv = inverse(&k, &vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(inv, vec![vec![1, 10], vec![0, 1]]);
    }

    #[test]
    fn subspace_ops() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let a = Subspace::spanned_by(&k, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::spanned_by(&k, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersect(&k, &b).dim(), 1);
        assert_eq!(a.sum(&k, &b).dim(), 3);
        assert!(a.contains(&k, &[3, 4, 0]));
    }
}
