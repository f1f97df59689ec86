//! Generic PBW data for U_q^- over ℚ(q), computed in the free algebra modulo the quantum Serre relations.
//!
//! Root vectors are iterated q-commutators Y_γ = Y_a Y_b − q^{(γ_a, γ_b)} Y_b Y_a along the convex
//! order (a < γ < b). Every straightening relation is obtained by linear algebra in a single
//! weight space, so no rewriting system has to be trusted.

use super::AlgError;
use crate::rootdata::RootDatum;
use crate::scalars::{quantum_binomial, GenericScalar};
use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<u8>;
pub type Combo = BTreeMap<Word, GenericScalar>;
/// Linear combination of PBW monomials (exponent vectors in convex order).
pub type MonoCombo = Vec<(Vec<u32>, GenericScalar)>;

fn combo_add_scaled(acc: &mut Combo, v: &Combo, c: &GenericScalar) {
    for (w, x) in v {
        let t = x.mul(c);
        let e = acc.entry(w.clone()).or_insert_with(GenericScalar::zero);
        *e = e.add(&t);
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

pub fn combo_mul(a: &Combo, b: &Combo) -> Combo {
    let mut out = Combo::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            let e = out.entry(w.clone()).or_insert_with(GenericScalar::zero);
            *e = e.add(&x.mul(y));
            if e.is_zero() {
                out.remove(&w);
            }
        }
    }
    out
}

fn word_weight(w: &[u8], n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    for &l in w {
        v[l as usize] += 1;
    }
    v
}

/// All words with the given letter multiplicities, in lexicographic order.
pub fn words_of_weight(w: &[i64]) -> Vec<Word> {
    fn rec(rem: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = vec![];
    if w.iter().any(|&x| x < 0) {
        return out;
    }
    rec(&mut w.to_vec(), &mut vec![], &mut out);
    out
}

/// Exponent vectors e with Σ e_k γ_k = w.
pub fn monomials_of_weight(roots: &[Vec<i64>], w: &[i64]) -> Vec<Vec<u32>> {
    fn rec(
        roots: &[Vec<i64>],
        k: usize,
        rem: &mut Vec<i64>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == roots.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        loop {
            cur.push(e);
            rec(roots, k + 1, rem, cur, out);
            cur.pop();
            for (r, g) in rem.iter_mut().zip(&roots[k]) {
                *r -= g;
            }
            e += 1;
            if rem.iter().any(|&x| x < 0) {
                break;
            }
        }
        for (r, g) in rem.iter_mut().zip(&roots[k]) {
            *r += g * e as i64;
        }
    }
    let mut out = vec![];
    rec(roots, 0, &mut w.to_vec(), &mut vec![], &mut out);
    out
}

/// Quantum Serre relators in the F_i, with their weights.
pub fn serre_relators(rd: &RootDatum) -> Result<Vec<(Combo, Vec<i64>)>, AlgError> {
    let n = rd.rank;
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let m = (1 - rd.cartan[i][j]) as u32;
            let mut c = Combo::new();
            for s in 0..=m {
                let b = quantum_binomial(m, s, rd.d[i] as u32)?;
                let b = if s % 2 == 1 { b.neg() } else { b };
                let mut w = vec![i as u8; (m - s) as usize];
                w.push(j as u8);
                w.extend(std::iter::repeat(i as u8).take(s as usize));
                c.insert(w, b);
            }
            let mut wt = vec![0; n];
            wt[i] = m as i64;
            wt[j] = 1;
            out.push((c, wt));
        }
    }
    Ok(out)
}

fn rref_generic(m: &mut [Vec<GenericScalar>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut piv = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

/// Generic structure of U_q^- in a PBW basis attached to a reduced word of w₀.
#[derive(Clone, Debug)]
pub struct GenericPbw {
    pub rank: usize,
    /// γ_1, …, γ_N in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Position of α_i in the convex order.
    pub simple_pos: Vec<usize>,
    /// Y_k as a combination of words in the F_i.
    pub root_words: Vec<Combo>,
    /// Y_k Y_i for k > i, in PBW monomials.
    pub straighten: BTreeMap<(usize, usize), MonoCombo>,
    /// [E_i, Y_k] = A⁺ K_i + A⁻ K_i^{−1}, stored as (A⁺, A⁻) indexed [i][k].
    pub comm_e: Vec<Vec<(MonoCombo, MonoCombo)>>,
}

struct Ctx<'a> {
    rd: &'a RootDatum,
    roots: Vec<Vec<i64>>,
    root_words: Vec<Combo>,
    relators: Vec<(Combo, Vec<i64>)>,
    mono_cache: HashMap<Vec<u32>, Combo>,
}

impl Ctx<'_> {
    fn mono_words(&mut self, e: &[u32]) -> Combo {
        if let Some(c) = self.mono_cache.get(e) {
            return c.clone();
        }
        let mut acc = Combo::new();
        acc.insert(vec![], GenericScalar::one());
        for (k, &x) in e.iter().enumerate() {
            for _ in 0..x {
                acc = combo_mul(&acc, &self.root_words[k]);
            }
        }
        self.mono_cache.insert(e.to_vec(), acc.clone());
        acc
    }

    /// Writes `target` (homogeneous of weight w) in the PBW basis, modulo the Serre ideal.
    fn express(&mut self, target: &Combo, w: &[i64]) -> Result<MonoCombo, AlgError> {
        let n = self.rd.rank;
        let words = words_of_weight(w);
        if words.is_empty() {
            return Ok(vec![]);
        }
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut cols: Vec<Combo> = vec![];
        for (rel, rw) in &self.relators {
            let rest: Vec<i64> = w.iter().zip(rw).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            // split rest into (u, v)
            let mut splits = vec![vec![]];
            for &x in &rest {
                splits = splits
                    .into_iter()
                    .flat_map(|s: Vec<i64>| {
                        (0..=x).map(move |t| {
                            let mut s2 = s.clone();
                            s2.push(t);
                            s2
                        })
                    })
                    .collect();
            }
            for uw in splits {
                let vw: Vec<i64> = rest.iter().zip(&uw).map(|(a, b)| a - b).collect();
                for u in words_of_weight(&uw) {
                    for v in words_of_weight(&vw) {
                        let mut c = Combo::new();
                        for (s, x) in rel {
                            let mut word = u.clone();
                            word.extend_from_slice(s);
                            word.extend_from_slice(&v);
                            c.insert(word, x.clone());
                        }
                        cols.push(c);
                    }
                }
            }
        }
        let n_ideal = cols.len();
        let monos = monomials_of_weight(&self.roots, w);
        for e in &monos {
            let c = self.mono_words(e);
            cols.push(c);
        }
        cols.push(target.clone());
        let mut m = vec![vec![GenericScalar::zero(); cols.len()]; words.len()];
        for (j, c) in cols.iter().enumerate() {
            for (word, x) in c {
                debug_assert_eq!(word_weight(word, n), w);
                m[index[word]][j] = x.clone();
            }
        }
        let piv = rref_generic(&mut m);
        let last = cols.len() - 1;
        if piv.contains(&last) {
            return Err(AlgError::Pbw(format!(
                "element of weight {w:?} not in PBW span"
            )));
        }
        if piv.len() != words.len() {
            return Err(AlgError::Pbw(format!(
                "PBW monomials do not span weight {w:?}"
            )));
        }
        let mut out = vec![];
        for (j, e) in monos.iter().enumerate() {
            let col = n_ideal + j;
            let Some(r) = piv.iter().position(|&c| c == col) else {
                return Err(AlgError::Pbw(format!(
                    "PBW monomials dependent in weight {w:?}"
                )));
            };
            if !m[r][last].is_zero() {
                out.push((e.clone(), m[r][last].clone()));
            }
        }
        Ok(out)
    }
}

impl GenericPbw {
    pub fn build(rd: &RootDatum, word: &[usize]) -> Result<Self, AlgError> {
        let roots = rd.convex_positive_roots(word)?;
        let n = rd.rank;
        let nn = roots.len();
        let simple_pos: Vec<usize> = (0..n)
            .map(|i| roots.iter().position(|g| *g == rd.simple_root(i)).unwrap())
            .collect();
        let mut root_words: Vec<Option<Combo>> = vec![None; nn];
        for i in 0..n {
            let mut c = Combo::new();
            c.insert(vec![i as u8], GenericScalar::one());
            root_words[simple_pos[i]] = Some(c);
        }
        let mut by_height: Vec<usize> = (0..nn).collect();
        by_height.sort_by_key(|&k| (RootDatum::height(&roots[k]), k));
        for &k in &by_height {
            if root_words[k].is_some() {
                continue;
            }
            let mut found = None;
            'search: for a in 0..k {
                for b in k + 1..nn {
                    let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                    if s == roots[k] && root_words[a].is_some() && root_words[b].is_some() {
                        found = Some((a, b));
                        break 'search;
                    }
                }
            }
            let (a, b) = found
                .ok_or_else(|| AlgError::Pbw(format!("no q-commutator for root {:?}", roots[k])))?;
            let ya = root_words[a].as_ref().unwrap();
            let yb = root_words[b].as_ref().unwrap();
            let mut c = combo_mul(ya, yb);
            let t = GenericScalar::q_pow(rd.pair_roots(&roots[a], &roots[b])).neg();
            combo_add_scaled(&mut c, &combo_mul(yb, ya), &t);
            root_words[k] = Some(c);
        }
        let root_words: Vec<Combo> = root_words.into_iter().map(|c| c.unwrap()).collect();
        let mut ctx = Ctx {
            rd,
            roots: roots.clone(),
            root_words: root_words.clone(),
            relators: serre_relators(rd)?,
            mono_cache: HashMap::new(),
        };

        let mut straighten = BTreeMap::new();
        for k in 0..nn {
            for i in 0..k {
                let target = combo_mul(&root_words[k], &root_words[i]);
                let w: Vec<i64> = roots[k].iter().zip(&roots[i]).map(|(x, y)| x + y).collect();
                let rel = ctx.express(&target, &w)?;
                for (e, _) in &rel {
                    let leading = e
                        .iter()
                        .enumerate()
                        .all(|(t, &x)| x == u32::from(t == i || t == k));
                    let between = e
                        .iter()
                        .enumerate()
                        .all(|(t, &x)| x == 0 || (i < t && t < k));
                    if !leading && !between {
                        return Err(AlgError::Pbw(format!(
                            "Y_{k} Y_{i} leaves the convex interval: {e:?}"
                        )));
                    }
                }
                straighten.insert((k, i), rel);
            }
        }

        let mut comm_e = vec![];
        for i in 0..n {
            let di = rd.d[i] as u32;
            let inv_qq = GenericScalar::q_pow(di as i64)
                .sub(&GenericScalar::q_pow(-(di as i64)))
                .inv()
                .unwrap();
            let ai = rd.simple_root(i);
            let mut row = vec![];
            for k in 0..nn {
                let mut plus = Combo::new();
                let mut minus = Combo::new();
                for (w, c) in &root_words[k] {
                    for t in 0..w.len() {
                        if w[t] as usize != i {
                            continue;
                        }
                        let suffix = word_weight(&w[t + 1..], n);
                        let e = rd.pair_roots(&ai, &suffix);
                        let mut rest = w[..t].to_vec();
                        rest.extend_from_slice(&w[t + 1..]);
                        let base = c.mul(&inv_qq);
                        let mut one = Combo::new();
                        one.insert(rest.clone(), base.mul(&GenericScalar::q_pow(-e)));
                        combo_add_scaled(&mut plus, &one, &GenericScalar::one());
                        let mut two = Combo::new();
                        two.insert(rest, base.mul(&GenericScalar::q_pow(e)).neg());
                        combo_add_scaled(&mut minus, &two, &GenericScalar::one());
                    }
                }
                let w: Vec<i64> = roots[k].iter().zip(&ai).map(|(x, y)| x - y).collect();
                if w.iter().any(|&x| x < 0) {
                    if !plus.is_empty() || !minus.is_empty() {
                        return Err(AlgError::Pbw(
                            "nonzero commutator of impossible weight".into(),
                        ));
                    }
                    row.push((vec![], vec![]));
                    continue;
                }
                row.push((ctx.express(&plus, &w)?, ctx.express(&minus, &w)?));
            }
            comm_e.push(row);
        }
        Ok(GenericPbw {
            rank: n,
            roots,
            simple_pos,
            root_words,
            straighten,
            comm_e,
        })
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Every generic structure constant, for integrality checks.
    pub fn all_constants(&self) -> Vec<&GenericScalar> {
        let mut v: Vec<&GenericScalar> =
            self.straighten.values().flatten().map(|(_, c)| c).collect();
        for row in &self.comm_e {
            for (p, m) in row {
                v.extend(p.iter().map(|(_, c)| c));
                v.extend(m.iter().map(|(_, c)| c));
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    #[test]
    fn a2_relations() {
        let rd = RootDatum::from_type_str("A2").unwrap();
        let g = GenericPbw::build(&rd, &[0, 1, 0]).unwrap();
        assert_eq!(g.roots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        // c·a = q^{-1} a c
        assert_eq!(
            g.straighten[&(1, 0)],
            vec![(mono(&[1, 1, 0]), GenericScalar::q_pow(-1))]
        );
        // b·c = q^{-1} c b
        assert_eq!(
            g.straighten[&(2, 1)],
            vec![(mono(&[0, 1, 1]), GenericScalar::q_pow(-1))]
        );
        // b·a = q ab − q c
        let mut ba = g.straighten[&(2, 0)].clone();
        ba.sort_by(|x, y| x.0.cmp(&y.0));
        assert_eq!(
            ba,
            vec![
                (mono(&[0, 1, 0]), GenericScalar::q_pow(1).neg()),
                (mono(&[1, 0, 1]), GenericScalar::q_pow(1))
            ]
        );
    }

    #[test]
    fn b2_builds_with_integral_constants() {
        let rd = RootDatum::from_type_str("B2").unwrap();
        for word in [vec![0, 1, 0, 1], vec![1, 0, 1, 0]] {
            let g = GenericPbw::build(&rd, &word).unwrap();
            assert_eq!(g.num_roots(), 4);
            for c in g.all_constants() {
                // only poles at q = ±1 and q = ±i are allowed from 1/(q^d − q^{−d})
                let d = c.denominator();
                assert!(d.degree() <= Some(4), "{c}");
            }
        }
    }

    #[test]
    fn a1_commutator() {
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = GenericPbw::build(&rd, &[0]).unwrap();
        let (p, m) = &g.comm_e[0][0];
        let inv = GenericScalar::laurent(&[(1, 1), (-1, -1)]).inv().unwrap();
        assert_eq!(p, &vec![(vec![0], inv.clone())]);
        assert_eq!(m, &vec![(vec![0], inv.neg())]);
    }
}
