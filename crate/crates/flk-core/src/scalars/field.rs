use super::generic::GenericScalar;
use super::poly::{cyclotomic, mod_inv, FpPoly, QPoly};
use super::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient field context: 𝔽_p(ζ) = 𝔽_p[x]/(m) or ℚ(ξ) = ℚ[x]/(Φ_ℓ).
///
/// `p = 0` selects characteristic zero; then `m` holds Φ_ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCtx {
    pub p: u64,
    pub ell: u64,
    pub m: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Finite(Vec<u64>),
    Rational(Vec<BigRational>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Multiplicative order of p modulo n (gcd(p, n) = 1).
pub fn mult_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = p % n;
    while x != 1 {
        x = (x as u128 * p as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn check_params(p: u64, ell: u64) -> Result<(), ScalarError> {
    if ell < 3 || ell % 2 == 0 {
        return Err(ScalarError::BadParameters(format!(
            "ℓ = {ell} must be odd and at least 3"
        )));
    }
    if p != 0 {
        if !is_prime(p) || p == 2 {
            return Err(ScalarError::BadParameters(format!(
                "p = {p} must be an odd prime"
            )));
        }
        if gcd_u64(p, ell) != 1 {
            return Err(ScalarError::BadParameters(format!(
                "gcd(p, ℓ) must be 1 (p = {p}, ℓ = {ell})"
            )));
        }
    }
    Ok(())
}

/// All monic irreducible factors of Φ_ℓ over 𝔽_p, sorted by coefficient vector.
pub fn cyclotomic_factors_mod_p(p: u64, ell: u64) -> Result<Vec<FpPoly>, ScalarError> {
    check_params(p, ell)?;
    if p == 0 {
        return Err(ScalarError::BadParameters(
            "factorization needs p > 0".into(),
        ));
    }
    let f = FpPoly::from_qpoly(&cyclotomic(ell), p);
    let d = mult_order(p, ell) as usize;
    let mut out = Vec::new();
    equal_degree_split(&f, d, &mut out);
    out.sort_by(|a, b| a.c.cmp(&b.c));
    Ok(out)
}

/// Equal-degree splitting of a squarefree product of degree-d irreducibles.
/// Trial polynomials run through a fixed enumeration, so the result is deterministic.
fn equal_degree_split(f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    let mut k: u64 = 1;
    loop {
        k += 1;
        let mut digits = Vec::new();
        let mut t = k;
        while t > 0 {
            digits.push(t % p);
            t /= p;
        }
        if digits.len() > n {
            panic!("equal-degree splitting exhausted trial polynomials");
        }
        let a = FpPoly::new(p, digits);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.powmod(e, f).sub(&FpPoly::one(p));
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.divrem(&g).0;
            equal_degree_split(&g, d, out);
            equal_degree_split(&h, d, out);
            return;
        }
    }
}

/// Build a coefficient field: `p = 0` gives ℚ(ξ), otherwise 𝔽_p(ζ) using the
/// first irreducible factor of Φ_ℓ mod p.
pub fn make_field(p: u64, ell: u64) -> Result<FieldCtx, ScalarError> {
    make_field_with_factor(p, ell, 0)
}

/// Like [`make_field`] but selects the `index`-th irreducible factor.
pub fn make_field_with_factor(p: u64, ell: u64, index: usize) -> Result<FieldCtx, ScalarError> {
    check_params(p, ell)?;
    if p == 0 {
        let phi = cyclotomic(ell);
        let m = phi
            .0
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect();
        return Ok(FieldCtx { p, ell, m });
    }
    let fs = cyclotomic_factors_mod_p(p, ell)?;
    let f = fs.get(index).ok_or_else(|| {
        ScalarError::BadParameters(format!("Φ_{ell} has only {} factors mod {p}", fs.len()))
    })?;
    Ok(FieldCtx {
        p,
        ell,
        m: f.c.iter().map(|&c| c as i64).collect(),
    })
}

/// Checks Φ_{p^r ℓ} ≡ Φ_ℓ^{φ(p^r)} (mod p).
pub fn cyclotomic_power_check(p: u64, ell: u64, r: u32) -> Result<bool, ScalarError> {
    check_params(p, ell)?;
    if p == 0 {
        return Err(ScalarError::BadParameters("check needs p > 0".into()));
    }
    let pr = p.pow(r);
    let lhs = FpPoly::from_qpoly(&cyclotomic(pr * ell), p);
    let rhs = FpPoly::from_qpoly(&cyclotomic(ell), p).pow(euler_phi(pr));
    Ok(lhs == rhs)
}

impl FieldCtx {
    pub fn is_finite(&self) -> bool {
        self.p != 0
    }

    /// Degree of the field over its prime field.
    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    /// Number of elements (None in characteristic zero or on overflow).
    pub fn order(&self) -> Option<u128> {
        if self.p == 0 {
            None
        } else {
            (self.p as u128).checked_pow(self.degree() as u32)
        }
    }

    fn fp_modulus(&self) -> FpPoly {
        FpPoly::new(self.p, self.m.iter().map(|&c| c as u64).collect())
    }

    fn q_modulus(&self) -> QPoly {
        QPoly::from_ints(&self.m)
    }

    /// Validates the stored data: m | Φ_ℓ, deg m = ord_ℓ(p), ζ of order exactly ℓ.
    pub fn validate(&self) -> Result<(), ScalarError> {
        check_params(self.p, self.ell)?;
        if self.p == 0 {
            if self.q_modulus() != cyclotomic(self.ell) {
                return Err(ScalarError::BadParameters("modulus is not Φ_ℓ".into()));
            }
            return Ok(());
        }
        let m = self.fp_modulus();
        if m.c.last() != Some(&1) {
            return Err(ScalarError::BadParameters("modulus not monic".into()));
        }
        let phi = FpPoly::from_qpoly(&cyclotomic(self.ell), self.p);
        if !phi.rem(&m).is_zero() {
            return Err(ScalarError::BadParameters(
                "modulus does not divide Φ_ℓ".into(),
            ));
        }
        if self.degree() as u64 != mult_order(self.p, self.ell) {
            return Err(ScalarError::BadParameters(
                "modulus degree differs from ord_ℓ(p)".into(),
            ));
        }
        let z = self.zeta();
        if !self.is_one(&self.pow(&z, self.ell as i64)) {
            return Err(ScalarError::BadParameters("ζ^ℓ ≠ 1".into()));
        }
        for j in 1..self.ell {
            if self.is_one(&self.pow(&z, j as i64)) {
                return Err(ScalarError::BadParameters("ζ is not primitive".into()));
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElement {
        if self.p == 0 {
            FieldElement::Rational(vec![BigRational::zero(); self.degree()])
        } else {
            FieldElement::Finite(vec![0; self.degree()])
        }
    }

    pub fn from_rational(&self, c: &BigRational) -> Result<FieldElement, ScalarError> {
        let mut z = self.zero();
        match &mut z {
            FieldElement::Rational(v) => v[0] = c.clone(),
            FieldElement::Finite(v) => v[0] = rational_mod_p(c, self.p)?,
        }
        Ok(z)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .unwrap()
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Residue of x.
    pub fn zeta(&self) -> FieldElement {
        let mut z = self.zero();
        if self.degree() == 1 {
            // x ≡ −m_0
            return match z {
                FieldElement::Finite(_) => FieldElement::Finite(vec![
                    (self.p - self.m[0].rem_euclid(self.p as i64) as u64) % self.p,
                ]),
                FieldElement::Rational(_) => {
                    FieldElement::Rational(vec![BigRational::from_integer(BigInt::from(
                        -self.m[0],
                    ))])
                }
            };
        }
        match &mut z {
            FieldElement::Finite(v) => v[1] = 1,
            FieldElement::Rational(v) => v[1] = BigRational::one(),
        }
        z
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Finite(v) => v.iter().all(|&c| c == 0),
            FieldElement::Rational(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    fn pack_fp(&self, f: FpPoly) -> FieldElement {
        let r = f.rem(&self.fp_modulus());
        let mut v = r.c;
        v.resize(self.degree(), 0);
        FieldElement::Finite(v)
    }

    fn pack_q(&self, f: QPoly) -> FieldElement {
        let r = f.divrem(&self.q_modulus()).1;
        let mut v = r.0;
        v.resize(self.degree(), BigRational::zero());
        FieldElement::Rational(v)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite(x.iter().zip(y).map(|(u, v)| (u + v) % self.p).collect())
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Finite(x) => {
                FieldElement::Finite(x.iter().map(|u| (self.p - u) % self.p).collect())
            }
            FieldElement::Rational(x) => FieldElement::Rational(x.iter().map(|u| -u).collect()),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Finite(x), FieldElement::Finite(y)) => {
                self.pack_fp(FpPoly::new(self.p, x.clone()).mul(&FpPoly::new(self.p, y.clone())))
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => {
                let mut px = QPoly(x.clone());
                px.trim();
                let mut py = QPoly(y.clone());
                py.trim();
                self.pack_q(px.mul(&py))
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            FieldElement::Finite(_) => {
                // a^{q-2}
                let q = self.order().expect("field too large");
                self.pow_u(a, q - 2)
            }
            FieldElement::Rational(x) => {
                let mut px = QPoly(x.clone());
                px.trim();
                let (g, s, _) = QPoly::xgcd(&px, &self.q_modulus());
                debug_assert!(g.is_one());
                Some(self.pack_q(s))
            }
        }
    }

    fn pow_u(&self, a: &FieldElement, mut e: u128) -> Option<FieldElement> {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Some(r)
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow_u(a, e as u128).unwrap()
        } else {
            let i = self.inv(a).expect("inverse of zero");
            self.pow_u(&i, e.unsigned_abs() as u128).unwrap()
        }
    }

    /// ζ^e, using ζ^ℓ = 1.
    pub fn zeta_pow(&self, e: i64) -> FieldElement {
        self.pow(&self.zeta(), e.rem_euclid(self.ell as i64))
    }

    fn eval_qpoly_at_zeta(&self, f: &QPoly) -> Result<FieldElement, ScalarError> {
        let z = self.zeta();
        let mut acc = self.zero();
        for c in f.0.iter().rev() {
            acc = self.add(&self.mul(&acc, &z), &self.from_rational(c)?);
        }
        Ok(acc)
    }

    /// Evaluate a generic scalar at q = ζ.
    pub fn specialize(&self, s: &GenericScalar) -> Result<FieldElement, ScalarError> {
        if s.is_zero() {
            return Ok(self.zero());
        }
        let d = self.eval_qpoly_at_zeta(s.denominator())?;
        if self.is_zero(&d) {
            return Err(ScalarError::PoleAtRootOfUnity(s.to_string()));
        }
        let n = self.eval_qpoly_at_zeta(s.numerator())?;
        let n = self.mul(&n, &self.zeta_pow(s.shift()));
        Ok(self.mul(&n, &self.inv(&d).unwrap()))
    }

    /// Serialized coefficient strings of an element.
    pub fn coeff_strings(&self, a: &FieldElement) -> Vec<String> {
        match a {
            FieldElement::Finite(v) => v.iter().map(|c| c.to_string()).collect(),
            FieldElement::Rational(v) => v.iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub(crate) fn rational_mod_p(c: &BigRational, p: u64) -> Result<u64, ScalarError> {
    let pb = BigInt::from(p);
    let n = ((c.numer() % &pb) + &pb) % &pb;
    let d = ((c.denom() % &pb) + &pb) % &pb;
    let n: u64 = n.try_into().unwrap();
    let d: u64 = d.try_into().unwrap();
    if d == 0 {
        return Err(ScalarError::NotPIntegral(c.to_string()));
    }
    Ok((n as u128 * mod_inv(d, p) as u128 % p as u128) as u64)
}
