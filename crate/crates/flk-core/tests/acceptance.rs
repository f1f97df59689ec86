//! One pass/fail line per acceptance criterion. Expected values are computed here from
//! closed forms (binomials, series, Lucas' theorem) rather than taken from the library.

use flk_core::algebras::small::basis_index;
use flk_core::algebras::{
    adjoint_stability_check, build_dividedpower_kernel_a1, build_small_quantum,
    build_tower_algebra, KernelPart, Part,
};
use flk_core::cohomology::{
    cobar_f2_check, graded, graded_tower, growth_rate, minimal_resolution,
    restriction_on_cohomology, series_betti, simple_root_embedding, spectral_bound_check,
    torus_invariant_betti, tower_betti, yoneda_product, CohomClass,
};
use flk_core::linalg::Subspace;
use flk_core::repr::{baby_verma, brute_submodules, character, radical, simple_head, Character};
use flk_core::rootdata::{RootDatum, Weight};
use flk_core::scalars::{cyclotomic_power_check, make_field, Cyclo, Field, Gf};
use std::io::Write;
use std::time::Instant;

type Outcome = Result<String, String>;

fn gf(p: u64, ell: u64) -> Gf {
    Gf::new(&make_field(p, ell).unwrap()).unwrap()
}

fn rd(t: &str) -> RootDatum {
    RootDatum::from_type_str(t).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_dimensions() -> Outcome {
    let k = gf(11, 5);
    for t in ["A1", "A2", "B2"] {
        let r = rd(t);
        let (nn, n) = (r.num_positive() as u32, r.rank as u32);
        for (part, e) in [(Part::U, nn), (Part::B, nn + n), (Part::G, 2 * nn + n)] {
            let a = build_small_quantum(&r, &k, part).map_err(|e| e.to_string())?;
            ensure(
                a.dim() == 5usize.pow(e),
                format!("{t} {part:?}: dim {} ≠ 5^{e}", a.dim()),
            )?;
        }
    }
    let u1 =
        build_dividedpower_kernel_a1(&gf(3, 5), 1, KernelPart::U).map_err(|e| e.to_string())?;
    ensure(u1.dim() == 15, format!("dim U(U_1) = {}", u1.dim()))?;
    Ok("u/b/g at A1, A2, B2 and U(U_1) = 15".into())
}

/// [n choose k] at a primitive ℓ-th root of unity in characteristic p, by the q-Lucas theorem:
/// zero exactly when k mod ℓ > n mod ℓ or C(n div ℓ, k div ℓ) ≡ 0 mod p.
fn lucas_vanishes(n: u64, k: u64, ell: u64, p: u64) -> bool {
    if k % ell > n % ell {
        return true;
    }
    let (mut a, mut b) = (n / ell, k / ell);
    while a > 0 || b > 0 {
        if b % p > a % p {
            return true;
        }
        a /= p;
        b /= p;
    }
    false
}

fn c2_closure() -> Outcome {
    let k = gf(3, 5);
    let u1 = build_dividedpower_kernel_a1(&k, 1, KernelPart::U).map_err(|e| e.to_string())?;
    let ker = u1.kernel.clone().unwrap();
    let mut overflow = 0;
    for a in 0..15usize {
        for b in 0..15usize {
            let prod = u1.mul_basis(a, b);
            ensure(prod.iter().all(|(t, _)| *t < 15), "product left the basis")?;
            let c = ker.qbinom(a + b, a);
            ensure(
                k.is_zero(&c) == lucas_vanishes((a + b) as u64, a as u64, 5, 3),
                format!("[{} choose {a}]", a + b),
            )?;
            if a + b >= 15 {
                overflow += 1;
                ensure(
                    k.is_zero(&c) && prod.is_empty(),
                    format!("F({a})F({b}) overflows"),
                )?;
            } else {
                ensure(prod.len() <= 1, "F(a)F(b) is not a multiple of F(a+b)")?;
            }
        }
    }
    Ok(format!(
        "225 products, {overflow} overflow binomials vanish"
    ))
}

fn c3_normality() -> Outcome {
    let k3 = gf(3, 5);
    let g1 = build_dividedpower_kernel_a1(&k3, 1, KernelPart::G).map_err(|e| e.to_string())?;
    let ker = g1.kernel.clone().unwrap();
    let mut sub = vec![];
    for a in 0..5 {
        for c in 0..5 {
            for b in 0..5 {
                sub.push(ker.fke(a, c, b));
            }
        }
    }
    let names: Vec<&str> = g1.generators.iter().map(|(s, _)| s.as_str()).collect();
    let rep = adjoint_stability_check(&sub, &g1, &names).map_err(|e| e.to_string())?;
    ensure(
        rep.stable,
        format!("u ⊂ U(G_1) fails at {:?}", rep.failures.first()),
    )?;
    let k = gf(11, 5);
    let g = build_small_quantum(&rd("A2"), &k, Part::G).map_err(|e| e.to_string())?;
    let q = g.quantum.clone().unwrap();
    let mut sub = vec![];
    for a in 0..q.n_mono {
        for c in 0..q.n_tor {
            sub.push(vec![(basis_index(&q, Part::G, a, c, 0).unwrap(), k.one())]);
        }
    }
    // stability is under the Borel generators; E moves F outside u(b)
    let rep2 =
        adjoint_stability_check(&sub, &g, &["F1", "F2", "K1", "K2"]).map_err(|e| e.to_string())?;
    ensure(
        rep2.stable,
        format!("u(b) ⊂ u(g) A2 fails at {:?}", rep2.failures.first()),
    )?;
    let e1 = adjoint_stability_check(&sub, &g, &["E1"]).map_err(|e| e.to_string())?;
    ensure(!e1.stable, "Ad(E1) unexpectedly preserves u(b)")?;
    Ok(format!(
        "{} + {} adjoint images stay inside; Ad(E1) leaves u(b)",
        rep.checked, rep2.checked
    ))
}

fn certified_head<K: Field>(z: &flk_core::repr::FLModule<K>) -> Result<usize, String> {
    let (l, _) = simple_head(z);
    if z.dim() <= 16 && z.field.size().is_some_and(|q| q <= 10_000) {
        let lat = brute_submodules(z).map_err(|e| e.to_string())?;
        let max = lat
            .unique_maximal(&z.field)
            .ok_or("no unique maximal submodule")?;
        let rad = Subspace::spanned_by(&z.field, z.dim(), &radical(z));
        ensure(
            max.equals(&rad),
            "radical differs from the maximal submodule",
        )?;
    }
    Ok(l.dim())
}

fn c4_verma_simples() -> Outcome {
    let k = gf(11, 5);
    for t in ["A1", "A2", "B2"] {
        let r = rd(t);
        let g = build_small_quantum(&r, &k, Part::G).map_err(|e| e.to_string())?;
        let z = baby_verma(&g, &Weight(vec![1; r.rank])).map_err(|e| e.to_string())?;
        ensure(
            z.dim() == 5usize.pow(r.num_positive() as u32),
            format!("{t}: dim Z = {}", z.dim()),
        )?;
    }
    let g = build_small_quantum(&rd("A1"), &k, Part::G).map_err(|e| e.to_string())?;
    for l in 0..5 {
        let z = baby_verma(&g, &Weight(vec![l])).map_err(|e| e.to_string())?;
        ensure(
            certified_head(&z)? == l as usize + 1,
            format!("A1 r=0 dim L({l})"),
        )?;
    }
    let k3 = gf(3, 5);
    let g1 = build_dividedpower_kernel_a1(&k3, 1, KernelPart::G).map_err(|e| e.to_string())?;
    for l0 in 0..5i64 {
        for l1 in 0..3i64 {
            let z = baby_verma(&g1, &Weight(vec![l0 + 5 * l1])).map_err(|e| e.to_string())?;
            ensure(z.dim() == 15, "dim Z_1")?;
            let d = certified_head(&z)?;
            ensure(
                d == ((l0 + 1) * (l1 + 1)) as usize,
                format!("dim L({}) = {d}", l0 + 5 * l1),
            )?;
        }
    }
    let g2 = build_small_quantum(&rd("A2"), &k, Part::G).map_err(|e| e.to_string())?;
    let st = baby_verma(&g2, &Weight(vec![4, 4])).map_err(|e| e.to_string())?;
    ensure(simple_head(&st).0.dim() == 125, "A2 Steinberg head")?;
    Ok("dim Z = (p^r ℓ)^N; λ+1; (λ₀+1)(λ₁+1) for 15 weights; Steinberg heads full".into())
}

fn dual_matches<K: Field>(
    alg: &flk_core::algebras::BasedAlgebra<K>,
    lam: &Weight,
    top: i64,
) -> Result<(), String> {
    let z = baby_verma(alg, lam).map_err(|e| e.to_string())?;
    let other = Weight(lam.0.iter().map(|x| 2 * (top - 1) - x).collect());
    let zd = baby_verma(alg, &other).map_err(|e| e.to_string())?;
    let a: Character = character(&z, true);
    ensure(
        a == character(&zd, false),
        format!("duality fails at {:?}", lam.0),
    )
}

fn c5_duality() -> Outcome {
    let k = gf(11, 5);
    let g = build_small_quantum(&rd("A1"), &k, Part::G).map_err(|e| e.to_string())?;
    for l in 0..10 {
        dual_matches(&g, &Weight(vec![l]), 5)?;
    }
    let g1 =
        build_dividedpower_kernel_a1(&gf(3, 5), 1, KernelPart::G).map_err(|e| e.to_string())?;
    for l in [0, 1, 4, 5, 7, 9, 10, 13, 14, 20] {
        dual_matches(&g1, &Weight(vec![l]), 15)?;
    }
    let g2 = build_small_quantum(&rd("A2"), &k, Part::G).map_err(|e| e.to_string())?;
    for lam in [
        [0, 0],
        [1, 0],
        [0, 1],
        [2, 3],
        [4, 4],
        [4, 0],
        [3, 1],
        [1, 2],
        [5, 2],
        [7, 6],
    ] {
        dual_matches(&g2, &Weight(lam.to_vec()), 5)?;
    }
    Ok("30 weights at A1 r=0, A1 r=1, A2".into())
}

fn c6_characters() -> Outcome {
    let r = rd("A1");
    let gp = build_small_quantum(&r, &gf(7, 5), Part::G).map_err(|e| e.to_string())?;
    let q = Cyclo::new(&make_field(0, 5).unwrap()).unwrap();
    let gq = build_small_quantum(&r, &q, Part::G).map_err(|e| e.to_string())?;
    let mut dims = vec![];
    for l in 0..5 {
        let (lp, chp) = simple_head(&baby_verma(&gp, &Weight(vec![l])).map_err(|e| e.to_string())?);
        let (lq, chq) = simple_head(&baby_verma(&gq, &Weight(vec![l])).map_err(|e| e.to_string())?);
        ensure(
            lp.dim() == lq.dim() && chp == chq,
            format!("λ = {l}: {} vs {}", lp.dim(), lq.dim()),
        )?;
        dims.push(lp.dim());
    }
    Ok(format!("dims {dims:?} agree over F_7(ζ) and Q(ξ)"))
}

fn c7_towers() -> Outcome {
    let cases: [(&str, u64, u32); 4] = [("A1", 11, 0), ("A1", 3, 1), ("A2", 11, 0), ("B2", 11, 0)];
    let mut n = 0;
    for (t, p, r) in cases {
        let k = gf(p, 5);
        let root = rd(t);
        let m = (r as usize + 1) * root.num_positive();
        for j in 0..=m {
            let b = tower_betti(&root, &k, r, j, 6).map_err(|e| e.to_string())?;
            let s: Vec<usize> = series_betti(m, j, 6)
                .into_iter()
                .map(|x| x as usize)
                .collect();
            ensure(b == s, format!("{t} r={r} j={j}: {b:?} ≠ {s:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} towers match (1+t)^m/(1−t²)^j to degree 6"))
}

fn c8_borel() -> Outcome {
    let k = gf(11, 5);
    for t in ["A1", "A2"] {
        let r = rd(t);
        let nn = r.num_positive() as u64;
        let u = build_small_quantum(&r, &k, Part::U).map_err(|e| e.to_string())?;
        let res = minimal_resolution(graded(&u).map_err(|e| e.to_string())?, 6, None)
            .map_err(|e| e.to_string())?;
        ensure(res.verify(), "resolution fails d∘d = 0 or minimality")?;
        let inv = torus_invariant_betti(&res, 5).map_err(|e| e.to_string())?;
        let want: Vec<usize> = (0..=6u64)
            .map(|n| {
                if n % 2 == 1 {
                    0
                } else {
                    binom(n / 2 + nn - 1, nn - 1) as usize
                }
            })
            .collect();
        ensure(inv == want, format!("{t}: {inv:?} ≠ {want:?}"))?;
    }
    Ok("H^odd = 0, H^{2m} = monomials of degree m, to degree 6".into())
}

fn c9_ring() -> Outcome {
    let k = gf(11, 5);
    let r = rd("A2");
    let t = build_tower_algebra(&r, &k, 0, &[]).map_err(|e| e.to_string())?;
    let res = minimal_resolution(graded_tower(&t).map_err(|e| e.to_string())?, 2, Some(5))
        .map_err(|e| e.to_string())?;
    let w = res.class_weights(1);
    let roots = r
        .convex_positive_roots(&r.w0_word)
        .map_err(|e| e.to_string())?;
    let x = |g: &Vec<i64>| CohomClass::basis(&res, 1, w.iter().position(|v| v == g).unwrap());
    for (i, a) in roots.iter().enumerate() {
        ensure(
            yoneda_product(&res, &x(a), &x(a)).unwrap().is_zero(&k),
            "x_α² ≠ 0",
        )?;
        for b in &roots[i + 1..] {
            let ab = yoneda_product(&res, &x(a), &x(b)).unwrap();
            let ba = yoneda_product(&res, &x(b), &x(a)).unwrap();
            let z = k.zeta_pow(-r.pair_roots(a, b));
            ensure(!ab.is_zero(&k), "x_α x_β = 0")?;
            ensure(
                ab.coords
                    .iter()
                    .zip(&ba.coords)
                    .all(|(p, q)| k.is_zero(&k.add(p, &k.mul(&z, q)))),
                format!("{a:?}, {b:?}"),
            )?;
        }
    }
    let u = build_small_quantum(&rd("A1"), &k, Part::U).map_err(|e| e.to_string())?;
    let res = minimal_resolution(graded(&u).map_err(|e| e.to_string())?, 8, None)
        .map_err(|e| e.to_string())?;
    let y = CohomClass::basis(&res, 2, 0);
    let mut pw = y.clone();
    for m in 2..=4 {
        pw = yoneda_product(&res, &pw, &y).unwrap();
        ensure(!pw.is_zero(&k), format!("y^{m} = 0"))?;
    }
    Ok("quantum exterior relations in H(𝒜) A2; y^4 ≠ 0 at A1".into())
}

fn c10_cocycle() -> Outcome {
    let u1 =
        build_dividedpower_kernel_a1(&gf(3, 5), 1, KernelPart::U).map_err(|e| e.to_string())?;
    for j in 0..2 {
        let rep = cobar_f2_check(&u1, j, false).map_err(|e| e.to_string())?;
        ensure(
            rep.is_cocycle,
            format!("δf₂ ≠ 0 for {} at {:?}", rep.generator, rep.witness),
        )?;
        let m = cobar_f2_check(&u1, j, true).map_err(|e| e.to_string())?;
        ensure(
            !m.is_cocycle,
            format!("mutation of {} not detected", rep.generator),
        )?;
    }
    Ok("δf₂ = 0 for F (ε=5) and F(5) (ε=3); mutations detected".into())
}

fn c11_spectral() -> Outcome {
    let u1 =
        build_dividedpower_kernel_a1(&gf(3, 5), 1, KernelPart::U).map_err(|e| e.to_string())?;
    let a = spectral_bound_check(&u1, 8).map_err(|e| e.to_string())?;
    ensure(
        a.holds,
        format!("U(U_1): {:?} vs {:?}", a.betti, a.betti_gr),
    )?;
    let u = build_small_quantum(&rd("A2"), &gf(11, 5), Part::U).map_err(|e| e.to_string())?;
    let b = spectral_bound_check(&u, 8).map_err(|e| e.to_string())?;
    ensure(b.holds, format!("u A2: {:?} vs {:?}", b.betti, b.betti_gr))?;
    let want: Vec<usize> = (0..=8).map(|n| binom(n + 2, 2) as usize).collect();
    ensure(b.betti_gr == want, format!("gr u A2: {:?}", b.betti_gr))?;
    ensure(b.betti[1] == 2 && b.betti_gr[1] == 3, "b₁ 2 < 3")?;
    Ok(format!(
        "U(U_1) {:?} ≤ {:?}; u A2 {:?} ≤ {:?}",
        a.betti, a.betti_gr, b.betti, b.betti_gr
    ))
}

fn c12_restriction() -> Outcome {
    let k = gf(11, 5);
    let small = build_small_quantum(&rd("A1"), &k, Part::U).map_err(|e| e.to_string())?;
    let big = build_small_quantum(&rd("A2"), &k, Part::U).map_err(|e| e.to_string())?;
    let emb = simple_root_embedding(&small, &big, 1).map_err(|e| e.to_string())?;
    let reps =
        restriction_on_cohomology(&small, &big, &emb, 2, Some(5)).map_err(|e| e.to_string())?;
    let r2 = &reps[2];
    ensure(
        r2.invariant_rank == Some(1),
        format!("rank {:?}", r2.invariant_rank),
    )?;
    ensure(
        r2.surviving == vec![vec![5, 0]],
        format!("survivors {:?}", r2.surviving),
    )?;
    let mut dying = r2.dying.clone();
    dying.sort();
    ensure(
        dying == vec![vec![0, 5], vec![5, 5]],
        format!("dying {dying:?}"),
    )?;
    Ok("H² rank 1, survivor 5α₁, dying 5α₂ and 5(α₁+α₂)".into())
}

fn c13_complexity() -> Outcome {
    let k = gf(3, 5);
    let t = build_tower_algebra(&rd("A1"), &k, 1, &[0, 1]).map_err(|e| e.to_string())?;
    let both = t.tensor(&t.opposite_weights());
    let res = minimal_resolution(graded_tower(&both).map_err(|e| e.to_string())?, 12, None)
        .map_err(|e| e.to_string())?;
    let inv = torus_invariant_betti(&res, 15).map_err(|e| e.to_string())?;
    let g = growth_rate(&inv).map_err(|e| e.to_string())?;
    ensure(g.gamma <= 4, format!("γ = {} for {inv:?}", g.gamma))?;
    let u = build_small_quantum(&rd("A1"), &gf(11, 5), Part::U).map_err(|e| e.to_string())?;
    let res = minimal_resolution(graded(&u).map_err(|e| e.to_string())?, 12, None)
        .map_err(|e| e.to_string())?;
    let inv_b = torus_invariant_betti(&res, 5).map_err(|e| e.to_string())?;
    let gb = growth_rate(&inv_b).map_err(|e| e.to_string())?;
    ensure(gb.gamma == 1, format!("u(b): γ = {}", gb.gamma))?;
    Ok(format!("γ = {} ≤ 4 for {inv:?}; u(b) γ = 1", g.gamma))
}

fn c14_lengths() -> Outcome {
    let mut n = 0;
    for t in ["A1", "A2", "A3", "B2"] {
        let r = rd(t);
        for s in [1, 2] {
            let rep = r.verify_length_bound(s);
            ensure(rep.holds, format!("{t}, s = {s}"))?;
            n += rep.witnesses.len();
        }
    }
    Ok(format!(
        "{n} Weyl elements meet the hypothesis, all satisfy ℓ(w) ≥ n+s−1"
    ))
}

fn c15_arithmetic() -> Outcome {
    for (p, ell, r) in [(3, 5, 1), (3, 5, 2), (5, 3, 1), (7, 3, 1)] {
        ensure(
            cyclotomic_power_check(p, ell, r).map_err(|e| e.to_string())?,
            format!("p={p} ℓ={ell} r={r}"),
        )?;
    }
    Ok("Φ_{p^r ℓ} ≡ Φ_ℓ^{φ(p^r)} mod p for four triples".into())
}

/// Written straight to stderr so the lines show without `--nocapture`.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("1 dimension laws", c1_dimensions),
        ("2 closure/Lucas", c2_closure),
        ("3 normality", c3_normality),
        ("4 Verma/simple dimensions", c4_verma_simples),
        ("5 duality", c5_duality),
        ("6 character coincidence", c6_characters),
        ("7 tower cohomology", c7_towers),
        ("8 Borel cohomology", c8_borel),
        ("9 ring structure", c9_ring),
        ("10 cocycle check", c10_cocycle),
        ("11 spectral bound", c11_spectral),
        ("12 restriction", c12_restriction),
        ("13 complexity bound", c13_complexity),
        ("14 length combinatorics", c14_lengths),
        ("15 cyclotomic arithmetic", c15_arithmetic),
    ];
    let mut failed = vec![];
    for (name, f) in criteria {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => report(&format!("PASS  {name:<28} {secs:7.2}s  {msg}")),
            Err(msg) => {
                report(&format!("FAIL  {name:<28} {secs:7.2}s  {msg}"));
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
