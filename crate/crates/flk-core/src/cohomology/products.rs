//! Yoneda products and restriction maps through chain-map lifting.

use super::resolution::{add_scaled, finish, mul_left, FreeElem, Resolution};
use super::{graded, minimal_resolution, CohomError, GradedAlgebra};
use crate::algebras::{BasedAlgebra, Grade, SparseVec};
use crate::linalg::{rank, solve, zeros, Mat};
use crate::scalars::Field;
use std::collections::HashMap;

/// An element of H^n(A, k) in the basis dual to the free generators of F_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass<E> {
    pub degree: usize,
    pub coords: Vec<E>,
    /// Dual weight (root coordinates) when the class is weight-homogeneous.
    pub weight: Option<Vec<i64>>,
}

impl<E: Clone + PartialEq> CohomClass<E> {
    /// The class dual to generator t of F_n.
    pub fn basis<K: Field<E = E>>(res: &Resolution<K>, n: usize, t: usize) -> Self {
        let k = res.field();
        let mut coords = vec![k.zero(); res.gens[n].len()];
        coords[t] = k.one();
        CohomClass {
            degree: n,
            coords,
            weight: Some(res.class_weights(n)[t].clone()),
        }
    }

    pub fn unit<K: Field<E = E>>(res: &Resolution<K>) -> Self {
        Self::basis(res, 0, 0)
    }

    pub fn is_zero<K: Field<E = E>>(&self, k: &K) -> bool {
        self.coords.iter().all(|x| k.is_zero(x))
    }
}

fn class_weight<K: Field>(res: &Resolution<K>, n: usize, coords: &[K::E]) -> Option<Vec<i64>> {
    let k = res.field();
    let ws = res.class_weights(n);
    let mut w: Option<&Vec<i64>> = None;
    for (t, c) in coords.iter().enumerate() {
        if k.is_zero(c) {
            continue;
        }
        match w {
            None => w = Some(&ws[t]),
            Some(w0) if *w0 != ws[t] => return None,
            _ => {}
        }
    }
    w.cloned()
        .or_else(|| Some(vec![0; ws.first().map_or(0, |x| x.len())]))
}

/// Solves d_n(x) = y in F_n for a homogeneous boundary y ∈ F_{n−1}.
struct Lifter<'a, K: Field> {
    res: &'a Resolution<K>,
    mats: HashMap<(usize, Grade), (Vec<(usize, usize)>, Vec<(usize, usize)>, Mat<K::E>)>,
}

impl<'a, K: Field> Lifter<'a, K> {
    fn new(res: &'a Resolution<K>) -> Self {
        Lifter {
            res,
            mats: HashMap::new(),
        }
    }

    fn lift(&mut self, n: usize, y: &FreeElem<K::E>) -> FreeElem<K::E> {
        let k = self.res.field().clone();
        let Some(g) = self.res.grade_of(n - 1, y) else {
            return vec![];
        };
        let res = self.res;
        let (cols, rows, m) = self
            .mats
            .entry((n, g))
            .or_insert_with(|| res.d_matrix(n, &g));
        let index: HashMap<(usize, usize), usize> =
            rows.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut rhs = vec![k.zero(); rows.len()];
        for (key, c) in y {
            rhs[*index.get(key).expect("boundary is not homogeneous")] = c.clone();
        }
        let x = solve(&k, m, &rhs).expect("cycle is not a boundary: resolution is not exact");
        x.into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (cols[i], c))
            .collect()
    }
}

/// φ_q for the chain map lifting the class dual to generator s of F_p:
/// images of the generators of F_{p+q} in F_q.
fn lift_generator<K: Field>(
    res: &Resolution<K>,
    p: usize,
    s: usize,
    q: usize,
) -> Vec<FreeElem<K::E>> {
    let k = res.field().clone();
    let alg = res.alg.as_ref();
    let unit = alg.unit_id();
    let mut phi: Vec<FreeElem<K::E>> = (0..res.gens[p].len())
        .map(|t| {
            if t == s {
                vec![((0, unit), k.one())]
            } else {
                vec![]
            }
        })
        .collect();
    let mut lifter = Lifter::new(res);
    for i in 1..=q {
        let mut next = vec![];
        for d in &res.diffs[p + i] {
            let mut acc = HashMap::new();
            for ((t, id), c) in d {
                add_scaled(&k, &mut acc, &mul_left(alg, *id, &phi[*t]), c);
            }
            let y = finish(&k, acc);
            next.push(lifter.lift(i, &y));
        }
        phi = next;
    }
    phi
}

/// Coefficient of e_{q,t} modulo A₊ in x ∈ F_q.
fn eval_at_unit<K: Field>(res: &Resolution<K>, x: &FreeElem<K::E>, t: usize) -> K::E {
    let unit = res.alg.unit_id();
    x.iter()
        .find(|((s, id), _)| *s == t && *id == unit)
        .map_or(res.field().zero(), |(_, c)| c.clone())
}

/// The Yoneda product a·b ∈ H^{p+q}: a composed with the lift of b, i.e. (a·b)(e) = a(φ^b_p(e)).
///
/// With this order the degree-one classes of a tower satisfy x_α x_β + ζ^{−(α,β)} x_β x_α = 0
/// for α before β in the convex order of the PBW word.
pub fn yoneda_product<K: Field>(
    res: &Resolution<K>,
    a: &CohomClass<K::E>,
    b: &CohomClass<K::E>,
) -> Result<CohomClass<K::E>, CohomError> {
    let k = res.field();
    let (p, q) = (a.degree, b.degree);
    let top = res.gens.len() - 1;
    if p + q > top {
        return Err(CohomError::DegreeOutOfRange(p + q, top));
    }
    let mut out = vec![k.zero(); res.gens[p + q].len()];
    for (s, y) in b.coords.iter().enumerate() {
        if k.is_zero(y) {
            continue;
        }
        let phi = lift_generator(res, q, s, p);
        for (e, img) in phi.iter().enumerate() {
            for (t, x) in a.coords.iter().enumerate() {
                if k.is_zero(x) {
                    continue;
                }
                let v = eval_at_unit(res, img, t);
                out[e] = k.add(&out[e], &k.mul(&k.mul(x, y), &v));
            }
        }
    }
    let weight = class_weight(res, p + q, &out);
    Ok(CohomClass {
        degree: p + q,
        coords: out,
        weight,
    })
}

#[derive(Clone, Debug)]
pub struct RestrictionReport<E> {
    pub degree: usize,
    /// rows: classes of the small algebra; columns: classes of the big algebra.
    pub matrix: Mat<E>,
    pub rank: usize,
    pub big_weights: Vec<Vec<i64>>,
    pub small_weights: Vec<Vec<i64>>,
    /// Dual weights of the (invariant, if requested) big classes with nonzero restriction.
    pub surviving: Vec<Vec<i64>>,
    /// Dual weights of the (invariant, if requested) big classes restricting to zero.
    pub dying: Vec<Vec<i64>>,
    /// Rank on the invariant parts when a modulus was given.
    pub invariant_rank: Option<usize>,
}

/// ι(x) for every basis element of `small`: checks ι(1) = 1 and ι(ab) = ι(a)ι(b).
fn check_embedding<K: Field>(
    small: &BasedAlgebra<K>,
    big: &BasedAlgebra<K>,
    emb: &[SparseVec<K::E>],
) -> Result<(), CohomError> {
    let k = &small.field;
    if emb.len() != small.dim() {
        return Err(CohomError::NotASubalgebraMap(format!(
            "{} images for dimension {}",
            emb.len(),
            small.dim()
        )));
    }
    let image = |v: &SparseVec<K::E>| -> SparseVec<K::E> {
        let mut acc = HashMap::new();
        for (i, c) in v {
            crate::algebras::sv_add_scaled(k, &mut acc, &emb[*i], c);
        }
        crate::algebras::sv_from_map(k, acc)
    };
    if image(&small.unit()) != big.unit() {
        return Err(CohomError::NotASubalgebraMap("unit not preserved".into()));
    }
    for i in 0..small.dim() {
        for j in 0..small.dim() {
            let lhs = image(&small.mul_basis(i, j));
            let rhs = big.mul(&emb[i], &emb[j]);
            if lhs != rhs {
                return Err(CohomError::NotASubalgebraMap(format!(
                    "ι(b{i} b{j}) ≠ ι(b{i}) ι(b{j})"
                )));
            }
        }
    }
    Ok(())
}

/// F^a ↦ F_i^a from u_ζ(u) of type A₁ into a larger u_ζ(u) (root index 1-based).
pub fn simple_root_embedding<K: Field>(
    small: &BasedAlgebra<K>,
    big: &BasedAlgebra<K>,
    root: usize,
) -> Result<Vec<SparseVec<K::E>>, CohomError> {
    let k = &small.field;
    let fs = small
        .generators
        .first()
        .map(|(_, v)| v.clone())
        .ok_or_else(|| CohomError::NotASubalgebraMap("no generator".into()))?;
    let fb = big
        .generator(&format!("F{root}"))
        .cloned()
        .ok_or_else(|| CohomError::NotASubalgebraMap(format!("big algebra has no F{root}")))?;
    let mut emb: Vec<Option<SparseVec<K::E>>> = vec![None; small.dim()];
    let (mut xs, mut xb) = (small.unit(), big.unit());
    loop {
        match xs.as_slice() {
            [(i, c)] => {
                let inv = k.inv(c).unwrap();
                emb[*i] = Some(crate::algebras::sv_scale(k, &xb, &inv));
            }
            [] => break,
            _ => {
                return Err(CohomError::NotASubalgebraMap(
                    "powers of F are not basis elements".into(),
                ))
            }
        }
        xs = small.mul(&xs, &fs);
        xb = big.mul(&xb, &fb);
    }
    emb.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
        CohomError::NotASubalgebraMap("small algebra is not generated by one element".into())
    })
}

/// Restriction H^n(big, k) → H^n(small, k) for n ≤ n_max, via a comparison map of resolutions.
///
/// With `modulus`, surviving/dying weights and `invariant_rank` refer to torus-invariant classes.
pub fn restriction_on_cohomology<K: Field>(
    small: &BasedAlgebra<K>,
    big: &BasedAlgebra<K>,
    embedding: &[SparseVec<K::E>],
    n_max: usize,
    modulus: Option<i64>,
) -> Result<Vec<RestrictionReport<K::E>>, CohomError> {
    check_embedding(small, big, embedding)?;
    let k = small.field.clone();
    let rs = minimal_resolution(graded(small)?, n_max, None)?;
    let rb = minimal_resolution(graded(big)?, n_max, None)?;
    let balg: &dyn GradedAlgebra<K> = rb.alg.as_ref();
    let iota_mul = |id: usize, x: &FreeElem<K::E>| -> FreeElem<K::E> {
        let mut acc = HashMap::new();
        for (j, c) in &embedding[id] {
            add_scaled(&k, &mut acc, &mul_left(balg, *j, x), c);
        }
        finish(&k, acc)
    };
    let mut psi: Vec<FreeElem<K::E>> = vec![vec![((0, balg.unit_id()), k.one())]];
    let mut lifter = Lifter::new(&rb);
    let mut reports = vec![];
    for n in 0..=n_max {
        if n > 0 {
            let mut next = vec![];
            for d in &rs.diffs[n] {
                let mut acc = HashMap::new();
                for ((t, id), c) in d {
                    add_scaled(&k, &mut acc, &iota_mul(*id, &psi[*t]), c);
                }
                next.push(lifter.lift(n, &finish(&k, acc)));
            }
            psi = next;
        }
        let (bs, bb) = (rs.gens[n].len(), rb.gens[n].len());
        let mut m = zeros(&k, bs, bb);
        for (e, img) in psi.iter().enumerate() {
            for (t, col) in (0..bb).map(|t| (t, eval_at_unit(&rb, img, t))) {
                m[e][t] = col;
            }
        }
        let big_w = rb.class_weights(n);
        let small_w = rs.class_weights(n);
        let cols: Vec<usize> = match modulus {
            Some(md) => super::resolution::invariant_classes(&rb, n, md)?,
            None => (0..bb).collect(),
        };
        let (mut surviving, mut dying) = (vec![], vec![]);
        for &t in &cols {
            if (0..bs).any(|e| !k.is_zero(&m[e][t])) {
                surviving.push(big_w[t].clone());
            } else {
                dying.push(big_w[t].clone());
            }
        }
        let invariant_rank = match modulus {
            Some(md) => {
                let rows = super::resolution::invariant_classes(&rs, n, md)?;
                let sub: Mat<K::E> = rows
                    .iter()
                    .map(|&e| cols.iter().map(|&t| m[e][t].clone()).collect())
                    .collect();
                Some(rank(&k, &sub))
            }
            None => None,
        };
        reports.push(RestrictionReport {
            degree: n,
            rank: rank(&k, &m),
            matrix: m,
            big_weights: big_w,
            small_weights: small_w,
            surviving,
            dying,
            invariant_rank,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::super::{graded, graded_tower};
    use super::*;
    use crate::algebras::{build_small_quantum, build_tower_algebra, Part};
    use crate::rootdata::RootDatum;
    use crate::scalars::{make_field, Gf};

    fn gf(p: u64, ell: u64) -> Gf {
        Gf::new(&make_field(p, ell).unwrap()).unwrap()
    }

    #[test]
    fn exterior_relations_in_tower() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A2").unwrap();
        let t = build_tower_algebra(&rd, &k, 0, &[]).unwrap();
        let res = minimal_resolution(graded_tower(&t).unwrap(), 3, Some(5)).unwrap();
        let ones = CohomClass::unit(&res);
        // classes x_γ indexed by their dual weights γ
        let w = res.class_weights(1);
        let by_root = |g: &[i64]| w.iter().position(|x| x.as_slice() == g).unwrap();
        let roots = rd.convex_positive_roots(&rd.w0_word.clone()).unwrap();
        for (i, a) in roots.iter().enumerate() {
            let xa = CohomClass::basis(&res, 1, by_root(a));
            assert_eq!(yoneda_product(&res, &ones, &xa).unwrap(), xa);
            assert_eq!(yoneda_product(&res, &xa, &ones).unwrap(), xa);
            assert!(yoneda_product(&res, &xa, &xa).unwrap().is_zero(&k));
            for b in &roots[i + 1..] {
                let xb = CohomClass::basis(&res, 1, by_root(b));
                let ab = yoneda_product(&res, &xa, &xb).unwrap();
                let ba = yoneda_product(&res, &xb, &xa).unwrap();
                assert!(!ab.is_zero(&k));
                // x_α x_β + ζ^{−(α,β)} x_β x_α = 0
                let z = k.zeta_pow(-rd.pair_roots(a, b));
                let s: Vec<u32> = ab
                    .coords
                    .iter()
                    .zip(&ba.coords)
                    .map(|(x, y)| k.add(x, &k.mul(&z, y)))
                    .collect();
                assert!(s.iter().all(|x| k.is_zero(x)), "α = {a:?}, β = {b:?}");
            }
        }
    }

    #[test]
    fn borel_polynomial_generator() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let u = build_small_quantum(&rd, &k, Part::U).unwrap();
        let res = minimal_resolution(graded(&u).unwrap(), 8, None).unwrap();
        let y = CohomClass::basis(&res, 2, 0);
        let mut pw = y.clone();
        for m in 2..=4 {
            pw = yoneda_product(&res, &pw, &y).unwrap();
            assert_eq!(pw.degree, 2 * m);
            assert!(!pw.is_zero(&k), "y^{m}");
            assert_eq!(pw.weight, Some(vec![5 * m as i64]));
        }
        assert!(matches!(
            yoneda_product(&res, &pw, &y),
            Err(CohomError::DegreeOutOfRange(10, 8))
        ));
    }

    #[test]
    fn restriction_a2_to_a1() {
        let k = gf(11, 5);
        let a1 = RootDatum::from_type_str("A1").unwrap();
        let a2 = RootDatum::from_type_str("A2").unwrap();
        let small = build_small_quantum(&a1, &k, Part::U).unwrap();
        let big = build_small_quantum(&a2, &k, Part::U).unwrap();
        for root in [1usize, 2] {
            let emb = simple_root_embedding(&small, &big, root).unwrap();
            let reps = restriction_on_cohomology(&small, &big, &emb, 2, Some(5)).unwrap();
            let r2 = &reps[2];
            assert_eq!(r2.invariant_rank, Some(1));
            let mut expect = vec![0, 0];
            expect[root - 1] = 5;
            assert_eq!(r2.surviving, vec![expect]);
            assert_eq!(r2.dying.len(), 2);
        }
        let id: Vec<SparseVec<u32>> = (0..small.dim()).map(|i| vec![(i, 1)]).collect();
        for r in restriction_on_cohomology(&small, &small, &id, 4, None).unwrap() {
            assert_eq!(r.matrix, crate::linalg::identity(&k, r.matrix.len()));
        }
        let bad: Vec<SparseVec<u32>> = (0..small.dim()).map(|_| vec![(0, 1)]).collect();
        assert!(matches!(
            restriction_on_cohomology(&small, &big, &bad, 1, None),
            Err(CohomError::NotASubalgebraMap(_))
        ));
    }
}
