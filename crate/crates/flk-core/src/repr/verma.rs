//! Baby Verma modules, the contravariant form and simple heads.

use super::{BasisRep, Character, FLModule, ModGen, ReprError};
use crate::algebras::kernel_a1::{KernelA1, KernelPart};
use crate::algebras::small::QuantumData;
use crate::algebras::BasedAlgebra;
use crate::linalg::{identity, kernel, mat_mul, rref, zeros, Mat};
use crate::rootdata::Weight;
use crate::scalars::Field;
use std::sync::Arc;

fn diag<K: Field>(k: &K, d: &[K::E]) -> Mat<K::E> {
    let mut m = zeros(k, d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        m[i][i] = x.clone();
    }
    m
}

fn add_into<K: Field>(k: &K, acc: &mut Mat<K::E>, m: &Mat<K::E>, c: &K::E) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (x, y) in ra.iter_mut().zip(rm) {
            if !k.is_zero(y) {
                *x = k.add(x, &k.mul(c, y));
            }
        }
    }
}

/// Z(λ) = coinduced module of the Borel character λ, realized on the U⁻ monomial basis.
///
/// Supported: u_ζ(g) (part g, rank ≤ 2) and the A₁ kernel U_ζ(G_r).
pub fn baby_verma<K: Field>(
    alg: &BasedAlgebra<K>,
    lambda: &Weight,
) -> Result<FLModule<K>, ReprError> {
    if let Some(q) = &alg.quantum {
        if alg.info.part == "g" {
            return Ok(quantum_verma(q.clone(), lambda));
        }
    }
    if let Some(ker) = &alg.kernel {
        if ker.part == KernelPart::G {
            return Ok(kernel_verma(ker.clone(), lambda));
        }
    }
    Err(ReprError::UnsupportedAlgebra(format!(
        "{} {} {}",
        alg.info.kind, alg.info.root_type, alg.info.part
    )))
}

fn quantum_verma<K: Field>(q: Arc<QuantumData<K>>, lambda: &Weight) -> FLModule<K> {
    let k = q.field.clone();
    let n = q.n_mono;
    let rank = q.rd.rank;
    let weights: Vec<Weight> = (0..n)
        .map(|a| lambda.sub(&q.rd.root_to_weight(&q.beta[a])))
        .collect();
    let mut gens = vec![];
    let mut f_mats = vec![];
    let mut e_mats = vec![];
    let mut k_mats = vec![];
    for i in 0..rank {
        let li = q.rd.pair_weight_root(lambda, &q.rd.simple_root(i));
        let mut f = zeros(&k, n, n);
        let mut e = zeros(&k, n, n);
        for a in 0..n {
            for (b, x) in q.f_simple(i, a) {
                f[*b][a] = x.clone();
            }
            // E_i F^a v = [E_i, F^a] v
            let zp = k.zeta_pow(li);
            let zm = k.zeta_pow(-li);
            for (b, x) in &q.comm_plus[i][a] {
                e[*b][a] = k.add(&e[*b][a], &k.mul(x, &zp));
            }
            for (b, x) in &q.comm_minus[i][a] {
                e[*b][a] = k.add(&e[*b][a], &k.mul(x, &zm));
            }
        }
        let kd: Vec<K::E> = (0..n)
            .map(|a| k.zeta_pow(li - q.alpha_beta[i][a]))
            .collect();
        f_mats.push(f);
        e_mats.push(e);
        k_mats.push(diag(&k, &kd));
    }
    for i in 0..rank {
        gens.push(ModGen {
            name: format!("F{}", i + 1),
            mat: f_mats[i].clone(),
            toral: false,
        });
        gens.push(ModGen {
            name: format!("K{}", i + 1),
            mat: k_mats[i].clone(),
            toral: true,
        });
        gens.push(ModGen {
            name: format!("E{}", i + 1),
            mat: e_mats[i].clone(),
            toral: false,
        });
    }
    // X_k = ω(Y_k) as matrices
    let x_mats: Vec<Mat<K::E>> = q
        .root_words
        .iter()
        .map(|words| {
            let mut acc = zeros(&k, n, n);
            for (w, c) in words {
                let mut m = identity(&k, n);
                for &l in w {
                    m = mat_mul(&k, &m, &e_mats[l as usize]);
                }
                add_into(&k, &mut acc, &m, c);
            }
            acc
        })
        .collect();
    // E-monomial matrices X^b in the same mixed radix as the F monomials
    let mut e_mono: Vec<Mat<K::E>> = Vec::with_capacity(n);
    for b in 0..n {
        let ex = &q.exps[b];
        let m = match ex.iter().rposition(|&x| x > 0) {
            None => identity(&k, n),
            Some(t) => {
                let mut rest = ex.clone();
                rest[t] -= 1;
                let prev = &e_mono[q.mono_index(&rest).unwrap()];
                mat_mul(&k, prev, &x_mats[t])
            }
        };
        e_mono.push(m);
    }
    let contra: Mat<K::E> = e_mono.iter().map(|m| m[0].clone()).collect();
    let e_mono = Arc::new(e_mono);
    let lam = lambda.clone();
    let qq = q.clone();
    let rep = move |idx: usize| -> Mat<K::E> {
        let k = &qq.field;
        let n = qq.n_mono;
        let b = idx % n;
        let r = idx / n;
        let (a, c) = (r / qq.n_tor, r % qq.n_tor);
        let ce: Vec<i64> = qq.tor_exps(c).iter().map(|&x| x as i64).collect();
        // K^c on weight λ − β(a')
        let lc = qq.rd.pair_weight_root(&lam, &ce);
        let kd: Vec<K::E> = (0..n)
            .map(|a2| k.zeta_pow(lc - qq.rd.pair_roots(&ce, &qq.beta[a2])))
            .collect();
        let mut fm = zeros(k, n, n);
        for a2 in 0..n {
            for (t, x) in qq.mono_mul(a, a2) {
                fm[t][a2] = x;
            }
        }
        let kf = mat_mul(k, &fm, &diag(k, &kd));
        mat_mul(k, &kf, &e_mono[b])
    };
    FLModule {
        field: k,
        label: format!("Z({:?})", lambda.0),
        weights,
        gens,
        contra_rows: Some(contra),
        basis_rep: Some(BasisRep(Arc::new(rep))),
    }
}

/// Matrix of F^{(m)} on the kernel Verma basis F^{(a)} v.
fn kernel_f<K: Field>(ker: &KernelA1<K>, m: usize) -> Mat<K::E> {
    let k = &ker.field;
    let n = ker.n;
    let mut f = zeros(k, n, n);
    for a in 0..n {
        if a + m < n {
            f[a + m][a] = ker.qbinom(a + m, m);
        }
    }
    f
}

/// E^{(m)} F^{(a)} v = [λ + m − a choose m] F^{(a−m)} v.
fn kernel_e<K: Field>(ker: &KernelA1<K>, lambda: i64, m: usize) -> Mat<K::E> {
    let k = &ker.field;
    let n = ker.n;
    let mut e = zeros(k, n, n);
    for a in m..n {
        e[a - m][a] = ker.toral_binom(lambda, m as i64 - a as i64, m);
    }
    e
}

fn kernel_verma<K: Field>(ker: Arc<KernelA1<K>>, lambda: &Weight) -> FLModule<K> {
    let k = ker.field.clone();
    let n = ker.n;
    let l = lambda.0[0];
    let weights: Vec<Weight> = (0..n).map(|a| Weight(vec![l - 2 * a as i64])).collect();
    let mut sizes = vec![1usize];
    for i in 0..ker.r {
        sizes.push(ker.ell * (ker.p as usize).pow(i));
    }
    let name = |c: char, m: usize| {
        if m == 1 {
            c.to_string()
        } else {
            format!("{c}({m})")
        }
    };
    let mut gens = vec![];
    for &m in &sizes {
        gens.push(ModGen {
            name: name('F', m),
            mat: kernel_f(&ker, m),
            toral: false,
        });
    }
    let kd: Vec<K::E> = weights.iter().map(|w| k.zeta_pow(w.0[0])).collect();
    gens.push(ModGen {
        name: "K".into(),
        mat: diag(&k, &kd),
        toral: true,
    });
    for &m in &sizes {
        gens.push(ModGen {
            name: name('E', m),
            mat: kernel_e(&ker, l, m),
            toral: false,
        });
    }
    let nn = n as i64;
    for nu in 0..n {
        let d: Vec<K::E> = weights
            .iter()
            .map(|w| {
                if w.0[0].rem_euclid(nn) == nu as i64 {
                    k.one()
                } else {
                    k.zero()
                }
            })
            .collect();
        if d.iter().any(|x| !k.is_zero(x)) {
            gens.push(ModGen {
                name: format!("d{nu}"),
                mat: diag(&k, &d),
                toral: true,
            });
        }
    }
    let mut contra = zeros(&k, n, n);
    for (a, row) in contra.iter_mut().enumerate() {
        row[a] = ker.toral_binom(l, 0, a);
    }
    let kk = ker.clone();
    let rep = move |idx: usize| -> Mat<K::E> {
        let k = &kk.field;
        let n = kk.n;
        let (a, nu, b) = kk.split(idx);
        let d: Vec<K::E> = (0..n)
            .map(|t| {
                if (l - 2 * t as i64).rem_euclid(n as i64) == nu as i64 {
                    k.one()
                } else {
                    k.zero()
                }
            })
            .collect();
        let fd = mat_mul(k, &kernel_f(&kk, a), &diag(k, &d));
        mat_mul(k, &fd, &kernel_e(&kk, l, b))
    };
    FLModule {
        field: k,
        label: format!("Z({l})"),
        weights,
        gens,
        contra_rows: Some(contra),
        basis_rep: Some(BasisRep(Arc::new(rep))),
    }
}

/// Gram matrices ⟨x v_λ, y v_λ⟩ of the contravariant form, one block per weight (ascending).
pub fn contravariant_gram<K: Field>(z: &FLModule<K>) -> Vec<(Weight, Mat<K::E>)> {
    let Some(rows) = &z.contra_rows else {
        return vec![];
    };
    let mut by_weight: std::collections::BTreeMap<&Weight, Vec<usize>> = Default::default();
    for (i, w) in z.weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(i);
    }
    by_weight
        .into_iter()
        .map(|(w, idx)| {
            let g: Mat<K::E> = idx
                .iter()
                .map(|&a| idx.iter().map(|&b| rows[a][b].clone()).collect())
                .collect();
            (w.clone(), g)
        })
        .collect()
}

/// Basis of the radical of the contravariant form (the maximal submodule of Z).
pub fn radical<K: Field>(z: &FLModule<K>) -> Vec<Vec<K::E>> {
    match &z.contra_rows {
        Some(rows) => kernel(&z.field, rows, z.dim()),
        None => vec![],
    }
}

/// L = Z / rad. The returned module uses the images of the pivot basis vectors as its basis.
pub fn simple_head<K: Field>(z: &FLModule<K>) -> (FLModule<K>, Character) {
    let k = &z.field;
    let Some(rows) = &z.contra_rows else {
        let ch = character(z, false);
        return (z.clone(), ch);
    };
    let mut r = rows.clone();
    let piv = rref(k, &mut r);
    r.truncate(piv.len());
    let r = Arc::new(r);
    // R is in reduced echelon form, so R[:, pivots] = I and g' = R · g[:, pivots]
    let project = {
        let r = r.clone();
        let piv = piv.clone();
        let k = k.clone();
        move |g: &Mat<K::E>| -> Mat<K::E> {
            let cols: Mat<K::E> = g
                .iter()
                .map(|row| piv.iter().map(|&c| row[c].clone()).collect())
                .collect();
            mat_mul(&k, &r, &cols)
        }
    };
    let gens = z
        .gens
        .iter()
        .map(|g| ModGen {
            name: g.name.clone(),
            mat: project(&g.mat),
            toral: g.toral,
        })
        .collect();
    let basis_rep = z.basis_rep.as_ref().map(|rep| {
        let inner = rep.0.clone();
        let project = project.clone();
        BasisRep(Arc::new(move |i: usize| project(&inner(i)))
            as Arc<dyn Fn(usize) -> Mat<K::E> + Send + Sync>)
    });
    let l = FLModule {
        field: k.clone(),
        label: z.label.replacen('Z', "L", 1),
        weights: piv.iter().map(|&c| z.weights[c].clone()).collect(),
        gens,
        contra_rows: None,
        basis_rep,
    };
    let ch = character(&l, false);
    (l, ch)
}

/// Weight multiplicities; `dualize` negates every weight.
pub fn character<K: Field>(m: &FLModule<K>, dualize: bool) -> Character {
    let mut ch = Character::new();
    for w in &m.weights {
        let key = if dualize { w.neg().0 } else { w.0.clone() };
        *ch.entry(key).or_insert(0) += 1;
    }
    ch
}

/// Shifts every weight of a character by μ.
pub fn shift_character(ch: &Character, mu: &Weight) -> Character {
    ch.iter()
        .map(|(w, &m)| (w.iter().zip(&mu.0).map(|(a, b)| a + b).collect(), m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_dividedpower_kernel_a1, build_small_quantum, Part};
    use crate::rootdata::RootDatum;
    use crate::scalars::{make_field, Gf};

    fn gf(p: u64, ell: u64) -> Gf {
        Gf::new(&make_field(p, ell).unwrap()).unwrap()
    }

    #[test]
    fn a1_small_heads() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        for l in 0..5 {
            let z = baby_verma(&g, &Weight(vec![l])).unwrap();
            assert_eq!(z.dim(), 5);
            assert!(z.weight_compatible());
            let (head, ch) = simple_head(&z);
            assert_eq!(head.dim(), l as usize + 1);
            assert_eq!(ch.values().sum::<usize>(), head.dim());
            assert_eq!(ch.get(&vec![l]), Some(&1));
        }
        let st = baby_verma(&g, &Weight(vec![4])).unwrap();
        let blocks = contravariant_gram(&st);
        assert_eq!(blocks.len(), 5);
        for (_, b) in &blocks {
            assert_eq!(crate::linalg::rank(&k, b), b.len());
        }
        let z0 = baby_verma(&g, &Weight(vec![0])).unwrap();
        assert_eq!(radical(&z0).len(), 4);
    }

    #[test]
    fn kernel_heads_follow_tensor_product_law() {
        let k = gf(3, 5);
        let g = build_dividedpower_kernel_a1(&k, 1, KernelPart::G).unwrap();
        for l0 in 0..5i64 {
            for l1 in 0..3i64 {
                let z = baby_verma(&g, &Weight(vec![l0 + 5 * l1])).unwrap();
                assert_eq!(z.dim(), 15);
                let (head, _) = simple_head(&z);
                assert_eq!(head.dim() as i64, (l0 + 1) * (l1 + 1), "λ = {l0} + 5·{l1}");
            }
        }
    }

    #[test]
    fn a2_verma_weights() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A2").unwrap();
        let g = build_small_quantum(&rd, &k, Part::G).unwrap();
        let z = baby_verma(&g, &Weight(vec![0, 0])).unwrap();
        assert_eq!(z.dim(), 125);
        assert!(z.weight_compatible());
        let ch = character(&z, false);
        // weight −α1−α2 = (−1,−1) arises from F1F2 and F_{α1+α2}
        assert_eq!(ch.get(&vec![-1, -1]), Some(&2));
    }

    #[test]
    fn unsupported_algebra() {
        let k = gf(11, 5);
        let rd = RootDatum::from_type_str("A1").unwrap();
        let u = build_small_quantum(&rd, &k, Part::U).unwrap();
        assert!(matches!(
            baby_verma(&u, &Weight(vec![0])),
            Err(ReprError::UnsupportedAlgebra(_))
        ));
    }
}
