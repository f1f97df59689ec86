//! Growth rates of Betti sequences, tower cohomology and the E₁ bound for filtered algebras.

use super::{graded, graded_tower, minimal_resolution, CohomError};
use crate::algebras::{associated_graded, build_tower_algebra, pbw_filtration, BasedAlgebra};
use crate::rootdata::RootDatum;
use crate::scalars::Field;

/// Allowed increase of max log(b_n / n^{c−1}) from the first half of the range to the second.
pub const GROWTH_MARGIN: f64 = 0.2;
const FIT_START: usize = 4;
const MIN_TERMS: usize = 8;
const CONCLUSIVE_TERMS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// Least c ≥ 0 with b_n ≲ b·n^{c−1} over the range.
    pub gamma: u32,
    /// Least-squares slope of log b_n against log n over the positive terms, n ≥ 4.
    pub slope: f64,
    pub margin: f64,
    /// False when fewer than 12 terms were supplied.
    pub conclusive: bool,
    pub data: Vec<usize>,
}

/// Estimates the rate of growth of b_0, b_1, … (index = homological degree).
///
/// For c = 0, 1, 2, … the ratios b_n / n^{c−1}, n ∈ [4, N], b_n > 0, are split into an earlier
/// and a later half; c is accepted once the later maximum exceeds the earlier maximum by at
/// most [`GROWTH_MARGIN`] in log scale. A vanishing tail gives c = 0.
pub fn growth_rate(betti: &[usize]) -> Result<GrowthReport, CohomError> {
    if betti.len() < MIN_TERMS {
        return Err(CohomError::TooShort(betti.len()));
    }
    let pts: Vec<(f64, f64)> = (FIT_START..betti.len())
        .filter(|&n| betti[n] > 0)
        .map(|n| ((n as f64).ln(), (betti[n] as f64).ln()))
        .collect();
    let report = |gamma, slope| GrowthReport {
        gamma,
        slope,
        margin: GROWTH_MARGIN,
        conclusive: betti.len() >= CONCLUSIVE_TERMS,
        data: betti.to_vec(),
    };
    if pts.is_empty() {
        return Ok(report(0, 0.0));
    }
    let slope = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        num / den
    } else {
        0.0
    };
    let mid = FIT_START + (betti.len() - FIT_START) / 2;
    let split = (mid as f64).ln();
    let mut c = 0u32;
    loop {
        let r = |(x, y): &(f64, f64)| y - (c as f64 - 1.0) * x;
        let early = pts
            .iter()
            .filter(|p| p.0 < split)
            .map(r)
            .fold(f64::NEG_INFINITY, f64::max);
        let late = pts
            .iter()
            .filter(|p| p.0 >= split)
            .map(r)
            .fold(f64::NEG_INFINITY, f64::max);
        if late == f64::NEG_INFINITY || late <= early + GROWTH_MARGIN {
            return Ok(report(c, slope));
        }
        c += 1;
    }
}

/// Coefficients of (1+t)^m / (1−t²)^j up to t^{n_max}.
pub fn series_betti(m: usize, j: usize, n_max: usize) -> Vec<u64> {
    let mut s = vec![0u64; n_max + 1];
    let mut binom = 1u64;
    for (i, x) in s.iter_mut().enumerate().take(m.min(n_max) + 1) {
        *x = binom;
        binom = binom * (m - i) as u64 / (i as u64 + 1);
    }
    for _ in 0..j {
        for n in 2..=n_max {
            s[n] += s[n - 2];
        }
    }
    s
}

/// Betti numbers of the tower with the first j generators truncated, computed by resolution.
pub fn tower_betti<K: Field>(
    rd: &RootDatum,
    field: &K,
    r: u32,
    j: usize,
    n_max: usize,
) -> Result<Vec<usize>, CohomError> {
    let kill: Vec<usize> = (0..j).collect();
    let t = build_tower_algebra(rd, field, r, &kill)?;
    let m = t.num_gens();
    let cutoff = if t.is_finite() {
        None
    } else {
        let max_eps = t.gens.iter().filter_map(|g| g.bound).max().unwrap_or(1);
        Some(n_max as u32 * max_eps / 2 + m as u32 + 2)
    };
    Ok(minimal_resolution(graded_tower(&t)?, n_max, cutoff)?.betti())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralReport {
    pub betti: Vec<usize>,
    pub betti_gr: Vec<usize>,
    /// b_n(A) ≤ b_n(gr A) in every computed degree.
    pub holds: bool,
    /// Degrees with strict inequality.
    pub strict: Vec<usize>,
}

/// Compares dim H^n(A, k) with dim H^n(gr A, k) for the PBW filtration.
pub fn spectral_bound_check<K: Field>(
    alg: &BasedAlgebra<K>,
    n_max: usize,
) -> Result<SpectralReport, CohomError> {
    let deg = pbw_filtration(alg)?;
    let gr = associated_graded(alg, &deg, 4096)?;
    let betti = minimal_resolution(graded(alg)?, n_max, None)?.betti();
    let betti_gr = minimal_resolution(graded(&gr)?, n_max, None)?.betti();
    let holds = betti.iter().zip(&betti_gr).all(|(a, b)| a <= b);
    let strict = (0..betti.len())
        .filter(|&n| betti[n] < betti_gr[n])
        .collect();
    Ok(SpectralReport {
        betti,
        betti_gr,
        holds,
        strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_dividedpower_kernel_a1, build_small_quantum, KernelPart, Part};
    use crate::scalars::{make_field, Gf};

    #[test]
    fn growth_examples() {
        let lin: Vec<usize> = (0..13).map(|n| n + 1).collect();
        assert_eq!(growth_rate(&lin).unwrap().gamma, 2);
        let alt: Vec<usize> = (0..13).map(|n| 1 - n % 2).collect();
        assert_eq!(growth_rate(&alt).unwrap().gamma, 1);
        let quad: Vec<usize> = (0..13).map(|n| (n + 1) * (n + 2) / 2).collect();
        let g = growth_rate(&quad).unwrap();
        assert_eq!(g.gamma, 3);
        assert!((g.slope - 2.0).abs() < 0.5);
        assert_eq!(growth_rate(&[1, 3, 3, 1, 0, 0, 0, 0, 0]).unwrap().gamma, 0);
        assert!(!growth_rate(&[1; 8]).unwrap().conclusive);
        assert!(matches!(growth_rate(&[1; 7]), Err(CohomError::TooShort(7))));
    }

    #[test]
    fn series() {
        assert_eq!(series_betti(2, 2, 5), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(series_betti(3, 1, 3), vec![1, 3, 4, 4]);
        assert_eq!(series_betti(3, 0, 5), vec![1, 3, 3, 1, 0, 0]);
        assert_eq!(series_betti(3, 3, 4), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn tower_small_cases() {
        let k = Gf::new(&make_field(3, 5).unwrap()).unwrap();
        let a1 = RootDatum::from_type_str("A1").unwrap();
        for j in 0..=2 {
            let b = tower_betti(&a1, &k, 1, j, 6).unwrap();
            let s: Vec<usize> = series_betti(2, j, 6)
                .into_iter()
                .map(|x| x as usize)
                .collect();
            assert_eq!(b, s, "j = {j}");
        }
        let k11 = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let a2 = RootDatum::from_type_str("A2").unwrap();
        assert_eq!(tower_betti(&a2, &k11, 0, 1, 4).unwrap()[2], 4);
    }

    #[test]
    fn spectral_bounds() {
        let k = Gf::new(&make_field(11, 5).unwrap()).unwrap();
        let a2 = RootDatum::from_type_str("A2").unwrap();
        let u = build_small_quantum(&a2, &k, Part::U).unwrap();
        let rep = spectral_bound_check(&u, 3).unwrap();
        assert!(rep.holds);
        assert_eq!((rep.betti[1], rep.betti_gr[1]), (2, 3));
        let k3 = Gf::new(&make_field(3, 5).unwrap()).unwrap();
        let u1 = build_dividedpower_kernel_a1(&k3, 1, KernelPart::U).unwrap();
        let rep = spectral_bound_check(&u1, 8).unwrap();
        assert!(rep.holds);
    }
}
