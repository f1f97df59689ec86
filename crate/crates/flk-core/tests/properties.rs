//! Property suites. Every runner uses a fixed seed, so failures reproduce exactly.

use flk_core::algebras::{
    associated_graded, build_dividedpower_kernel_a1, build_small_quantum, build_tower_algebra,
    pbw_filtration, BasedAlgebra, KernelPart, Part, TowerAlgebra,
};
use flk_core::cohomology::resolution::invariant_classes;
use flk_core::cohomology::{
    b1_oracle, cobar_betti, graded, graded_tower, minimal_resolution, yoneda_product, CohomClass,
    Resolution,
};
use flk_core::persist::{algebra_from_json, algebra_to_json};
use flk_core::rootdata::RootDatum;
use flk_core::scalars::{make_field, Cyclo, Field, Gf};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use std::sync::OnceLock;

const SEED: u64 = 0x5eed_f1c5;

fn cfg(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn gf(p: u64, ell: u64) -> Gf {
    Gf::new(&make_field(p, ell).unwrap()).unwrap()
}

fn rd(t: &str) -> RootDatum {
    RootDatum::from_type_str(t).unwrap()
}

/// Σ c_i ζ^i
fn elem<K: Field>(k: &K, c: &[i64]) -> K::E {
    c.iter().enumerate().fold(k.zero(), |acc, (i, x)| {
        k.add(&acc, &k.mul(&k.from_int(*x), &k.zeta_pow(i as i64)))
    })
}

fn field_axioms<K: Field>(k: &K, a: &[i64], b: &[i64], c: &[i64]) -> Result<(), TestCaseError> {
    let (x, y, z) = (elem(k, a), elem(k, b), elem(k, c));
    prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
    prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
    prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
    prop_assert_eq!(
        k.mul(&x, &k.add(&y, &z)),
        k.add(&k.mul(&x, &y), &k.mul(&x, &z))
    );
    prop_assert!(k.is_zero(&k.sub(&x, &x)));
    if !k.is_zero(&x) {
        let i = k.inv(&x).unwrap();
        prop_assert!(k.is_one(&k.mul(&x, &i)));
    } else {
        prop_assert!(k.inv(&x).is_none());
    }
    let ell = k.ctx().ell as i64;
    prop_assert!(k.is_one(&k.zeta_pow(ell)));
    prop_assert_eq!(k.zeta_pow(a.len() as i64 - ell), k.zeta_pow(a.len() as i64));
    if let Some(q) = k.size() {
        if !k.is_zero(&x) {
            prop_assert!(k.is_one(&k.pow(&x, q - 1)));
        }
    }
    Ok(())
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..30, 4)
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn field_axioms_hold(a in coeffs(), b in coeffs(), c in coeffs()) {
        field_axioms(&gf(11, 5), &a, &b, &c)?;
        field_axioms(&gf(3, 5), &a, &b, &c)?;
        field_axioms(&gf(7, 3), &a, &b, &c)?;
        field_axioms(&Cyclo::new(&make_field(0, 5).unwrap()).unwrap(), &a, &b, &c)?;
    }
}

fn tower_cutoff<K: Field>(t: &TowerAlgebra<K>, n: usize) -> Option<u32> {
    if t.is_finite() {
        None
    } else {
        let max_eps = t.gens.iter().filter_map(|g| g.bound).max().unwrap_or(1);
        Some(n as u32 * max_eps / 2 + t.num_gens() as u32 + 2)
    }
}

fn tower_resolution(t: &TowerAlgebra<Gf>, n: usize) -> Resolution<Gf> {
    minimal_resolution(graded_tower(t).unwrap(), n, tower_cutoff(t, n)).unwrap()
}

fn kill_set(mask: u8, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #![proptest_config(cfg(12))]

    /// Künneth: the Betti series of a tensor product is the product of the series.
    #[test]
    fn tensor_betti_is_convolution(r1 in 0u32..2, r2 in 0u32..2, m1 in 0u8..4, m2 in 0u8..4) {
        let k = gf(3, 5);
        let a1 = rd("A1");
        let t1 = build_tower_algebra(&a1, &k, r1, &kill_set(m1, r1 as usize + 1)).unwrap();
        let t2 = build_tower_algebra(&a1, &k, r2, &kill_set(m2, r2 as usize + 1)).unwrap();
        let n = 4;
        let b1 = tower_resolution(&t1, n).betti();
        let b2 = tower_resolution(&t2, n).betti();
        let b = tower_resolution(&t1.tensor(&t2), n).betti();
        let conv: Vec<usize> = (0..=n).map(|d| (0..=d).map(|i| b1[i] * b2[d - i]).sum()).collect();
        prop_assert_eq!(b, conv);
    }

    /// d∘d = 0 and minimality on random truncations of the A2 tower.
    #[test]
    fn resolutions_verify(mask in 0u8..8) {
        let t = build_tower_algebra(&rd("A2"), &gf(11, 5), 0, &kill_set(mask, 3)).unwrap();
        prop_assert!(tower_resolution(&t, 3).verify());
    }
}

fn u_a1() -> &'static Resolution<Gf> {
    static R: OnceLock<Resolution<Gf>> = OnceLock::new();
    R.get_or_init(|| {
        let u = build_small_quantum(&rd("A1"), &gf(11, 5), Part::U).unwrap();
        minimal_resolution(graded(&u).unwrap(), 6, None).unwrap()
    })
}

fn a2_tower() -> &'static Resolution<Gf> {
    static R: OnceLock<Resolution<Gf>> = OnceLock::new();
    R.get_or_init(|| {
        let t = build_tower_algebra(&rd("A2"), &gf(11, 5), 0, &[]).unwrap();
        tower_resolution(&t, 3)
    })
}

fn u_a2() -> &'static Resolution<Gf> {
    static R: OnceLock<Resolution<Gf>> = OnceLock::new();
    R.get_or_init(|| {
        let u = build_small_quantum(&rd("A2"), &gf(11, 5), Part::U).unwrap();
        minimal_resolution(graded(&u).unwrap(), 4, None).unwrap()
    })
}

fn class(res: &Resolution<Gf>, n: usize, seed: &[u64]) -> CohomClass<u32> {
    let k = res.field();
    let q = k.size().unwrap();
    let coords = (0..res.gens[n].len())
        .map(|i| k.nth(seed[i % seed.len()].wrapping_mul(i as u64 + 1) % q))
        .collect();
    CohomClass {
        degree: n,
        coords,
        weight: None,
    }
}

fn add(k: &Gf, a: &CohomClass<u32>, b: &CohomClass<u32>) -> CohomClass<u32> {
    CohomClass {
        degree: a.degree,
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| k.add(x, y))
            .collect(),
        weight: None,
    }
}

fn seeds() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1000, 3)
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn yoneda_is_associative(p in 0usize..3, q in 0usize..3, s in 0usize..3, sa in seeds(), sb in seeds(), sc in seeds()) {
        for res in [u_a1(), a2_tower()] {
            let top = res.gens.len() - 1;
            if p + q + s > top {
                continue;
            }
            let (a, b, c) = (class(res, p, &sa), class(res, q, &sb), class(res, s, &sc));
            let left = yoneda_product(res, &yoneda_product(res, &a, &b).unwrap(), &c).unwrap();
            let right = yoneda_product(res, &a, &yoneda_product(res, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(left.coords, right.coords);
        }
    }

    #[test]
    fn yoneda_is_bilinear_and_unital(p in 0usize..3, q in 0usize..3, sa in seeds(), sa2 in seeds(), sb in seeds()) {
        for res in [u_a1(), a2_tower()] {
            let k = res.field();
            if p + q > res.gens.len() - 1 {
                continue;
            }
            let (a, a2, b) = (class(res, p, &sa), class(res, p, &sa2), class(res, q, &sb));
            let lhs = yoneda_product(res, &add(k, &a, &a2), &b).unwrap();
            let rhs = add(k, &yoneda_product(res, &a, &b).unwrap(), &yoneda_product(res, &a2, &b).unwrap());
            prop_assert_eq!(&lhs.coords, &rhs.coords);
            let lhs = yoneda_product(res, &b, &add(k, &a, &a2)).unwrap();
            let rhs = add(k, &yoneda_product(res, &b, &a).unwrap(), &yoneda_product(res, &b, &a2).unwrap());
            prop_assert_eq!(&lhs.coords, &rhs.coords);
            let one = CohomClass::unit(res);
            prop_assert_eq!(&yoneda_product(res, &one, &a).unwrap().coords, &a.coords);
            prop_assert_eq!(&yoneda_product(res, &a, &one).unwrap().coords, &a.coords);
        }
    }

    /// Torus-invariant classes of even degree commute.
    #[test]
    fn even_invariant_classes_commute(i in 0usize..8, j in 0usize..8) {
        let res = u_a2();
        let inv = invariant_classes(res, 2, 5).unwrap();
        prop_assume!(!inv.is_empty());
        let a = CohomClass::basis(res, 2, inv[i % inv.len()]);
        let b = CohomClass::basis(res, 2, inv[j % inv.len()]);
        let ab = yoneda_product(res, &a, &b).unwrap();
        let ba = yoneda_product(res, &b, &a).unwrap();
        prop_assert_eq!(ab.coords, ba.coords);
    }
}

fn small_algebras() -> Vec<(&'static str, BasedAlgebra<Gf>)> {
    let k = gf(11, 5);
    let k3 = gf(3, 5);
    vec![
        ("u A1", build_small_quantum(&rd("A1"), &k, Part::U).unwrap()),
        ("u A2", build_small_quantum(&rd("A2"), &k, Part::U).unwrap()),
        (
            "U A1 r=1",
            build_dividedpower_kernel_a1(&k3, 1, KernelPart::U).unwrap(),
        ),
        ("gr U A1 r=1", {
            let u = build_dividedpower_kernel_a1(&k3, 1, KernelPart::U).unwrap();
            associated_graded(&u, &pbw_filtration(&u).unwrap(), 0).unwrap()
        }),
        (
            "tower A2",
            build_tower_algebra(&rd("A2"), &k, 0, &[0, 1, 2])
                .unwrap()
                .to_based()
                .unwrap(),
        ),
    ]
}

#[test]
fn b1_oracle_matches_resolution() {
    for (name, a) in small_algebras() {
        let res = minimal_resolution(graded(&a).unwrap(), 1, None).unwrap();
        assert_eq!(b1_oracle(&a).unwrap(), res.betti()[1], "{name}");
    }
}

#[test]
fn cobar_matches_resolution_in_low_degrees() {
    for (name, a) in small_algebras() {
        let n = match a.dim() {
            0..=5 => 3,
            6..=25 => 2,
            _ => 1,
        };
        let res = minimal_resolution(graded(&a).unwrap(), n, None).unwrap();
        assert_eq!(cobar_betti(&a, n).unwrap(), res.betti(), "{name}");
    }
}

proptest! {
    #![proptest_config(cfg(8))]

    #[test]
    fn dumps_round_trip(which in 0usize..6) {
        let k = gf(3, 5);
        let a = match which {
            0 => build_small_quantum(&rd("A1"), &k, Part::U).unwrap(),
            1 => build_small_quantum(&rd("A1"), &k, Part::B).unwrap(),
            2 => build_dividedpower_kernel_a1(&k, 1, KernelPart::U).unwrap(),
            3 => build_dividedpower_kernel_a1(&k, 1, KernelPart::B).unwrap(),
            4 => build_tower_algebra(&rd("A2"), &k, 0, &[0, 1, 2]).unwrap().to_based().unwrap(),
            _ => build_small_quantum(&rd("A2"), &k, Part::U).unwrap(),
        };
        let s = algebra_to_json(&a).unwrap();
        let back = algebra_from_json(&k, &s).unwrap();
        prop_assert_eq!(back.dim(), a.dim());
        for i in 0..a.dim().min(12) {
            for j in 0..a.dim().min(12) {
                prop_assert_eq!(back.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
        prop_assert_eq!(algebra_to_json(&back).unwrap(), s);
    }
}
