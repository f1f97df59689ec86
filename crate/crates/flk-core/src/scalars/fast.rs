//! Field backends used by the linear algebra: table-driven 𝔽_q and exact ℚ(ξ).

use super::field::{FieldCtx, FieldElement};
use super::generic::GenericScalar;
use super::ScalarError;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

pub trait Field: Clone + Debug + Send + Sync + 'static {
    type E: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn ctx(&self) -> &FieldCtx;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn from_int(&self, n: i64) -> Self::E;
    fn zeta_pow(&self, e: i64) -> Self::E;
    fn from_element(&self, x: &FieldElement) -> Self::E;
    fn to_element(&self, a: &Self::E) -> FieldElement;
    /// Number of elements, if finite.
    fn size(&self) -> Option<u64>;
    /// The k-th element in a fixed enumeration (finite fields only).
    fn nth(&self, k: u64) -> Self::E;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    fn specialize(&self, s: &GenericScalar) -> Result<Self::E, ScalarError> {
        Ok(self.from_element(&self.ctx().specialize(s)?))
    }

    fn pow(&self, a: &Self::E, mut e: u64) -> Self::E {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn fmt_elem(&self, a: &Self::E) -> String {
        let v = self.ctx().coeff_strings(&self.to_element(a));
        if v.iter().skip(1).all(|c| c == "0") {
            v[0].clone()
        } else {
            format!("[{}]", v.join(","))
        }
    }
}

struct GfTables {
    ctx: FieldCtx,
    p: u32,
    d: usize,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    pw: Vec<u32>,
    zeta: u32,
    minus_one_log: u32,
}

/// 𝔽_q with q = p^d; elements encoded as Σ c_i p^i over the basis 1, ζ, …, ζ^{d−1}.
#[derive(Clone)]
pub struct Gf(Arc<GfTables>);

impl Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf({}^{}, m={:?})", self.0.p, self.0.d, self.0.ctx.m)
    }
}

/// Largest field handled by the table backend.
pub const GF_MAX_ORDER: u64 = 1 << 22;

impl Gf {
    pub fn new(ctx: &FieldCtx) -> Result<Self, ScalarError> {
        if !ctx.is_finite() {
            return Err(ScalarError::BadParameters("Gf needs p > 0".into()));
        }
        let q = ctx
            .order()
            .filter(|&q| q <= GF_MAX_ORDER as u128)
            .ok_or_else(|| {
                ScalarError::BadParameters(format!(
                    "field of order {}^{} exceeds table limit",
                    ctx.p,
                    ctx.degree()
                ))
            })? as u32;
        let p = ctx.p as u32;
        let d = ctx.degree();
        let mut pw = vec![1u32; d + 1];
        for i in 1..=d {
            pw[i] = pw[i - 1] * p;
        }
        let encode = |x: &FieldElement| -> u32 {
            match x {
                FieldElement::Finite(v) => {
                    v.iter().enumerate().map(|(i, &c)| c as u32 * pw[i]).sum()
                }
                _ => unreachable!(),
            }
        };
        let decode = |k: u32| -> FieldElement {
            FieldElement::Finite((0..d).map(|i| ((k / pw[i]) % p) as u64).collect())
        };
        let n = q - 1;
        let mut primes = Vec::new();
        let mut t = n;
        let mut f = 2;
        while f * f <= t {
            if t % f == 0 {
                primes.push(f);
                while t % f == 0 {
                    t /= f;
                }
            }
            f += 1;
        }
        if t > 1 {
            primes.push(t);
        }
        let one = ctx.one();
        let mut gen = None;
        for k in 2..q {
            let g = decode(k);
            if primes.iter().all(|&r| ctx.pow(&g, (n / r) as i64) != one) {
                gen = Some(g);
                break;
            }
        }
        let g = gen.unwrap_or_else(|| decode(if q == 2 { 1 } else { 2 }));
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = one.clone();
        for i in 0..n {
            let e = encode(&x);
            exp[i as usize] = e;
            log[e as usize] = i;
            x = ctx.mul(&x, &g);
        }
        let zeta = encode(&ctx.zeta());
        let minus_one = encode(&ctx.from_int(-1));
        let minus_one_log = log[minus_one as usize];
        Ok(Gf(Arc::new(GfTables {
            ctx: ctx.clone(),
            p,
            d,
            q,
            exp,
            log,
            pw,
            zeta,
            minus_one_log,
        })))
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }
}

impl Field for Gf {
    type E = u32;

    fn ctx(&self) -> &FieldCtx {
        &self.0.ctx
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let t = &*self.0;
        if t.d == 1 {
            let s = a + b;
            return if s >= t.p { s - t.p } else { s };
        }
        let (mut x, mut y) = (*a, *b);
        let mut r = 0;
        for i in 0..t.d {
            let s = (x % t.p + y % t.p) % t.p;
            r += s * t.pw[i];
            x /= t.p;
            y /= t.p;
        }
        r
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        let t = &*self.0;
        let n = t.q - 1;
        t.exp[((t.log[*a as usize] + t.minus_one_log) % n) as usize]
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let t = &*self.0;
        let s = t.log[*a as usize] + t.log[*b as usize];
        let n = t.q - 1;
        t.exp[(if s >= n { s - n } else { s }) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let t = &*self.0;
        let n = t.q - 1;
        Some(t.exp[((n - t.log[*a as usize]) % n) as usize])
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }
    fn zeta_pow(&self, e: i64) -> u32 {
        let t = &*self.0;
        let n = (t.q - 1) as i64;
        let l = t.log[t.zeta as usize] as i64;
        t.exp[((l * e.rem_euclid(t.ctx.ell as i64)) % n) as usize]
    }
    fn from_element(&self, x: &FieldElement) -> u32 {
        match x {
            FieldElement::Finite(v) => v
                .iter()
                .enumerate()
                .map(|(i, &c)| c as u32 * self.0.pw[i])
                .sum(),
            _ => panic!("rational element in finite field"),
        }
    }
    fn to_element(&self, a: &u32) -> FieldElement {
        let t = &*self.0;
        FieldElement::Finite((0..t.d).map(|i| ((a / t.pw[i]) % t.p) as u64).collect())
    }
    fn size(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }
    fn nth(&self, k: u64) -> u32 {
        (k % self.0.q as u64) as u32
    }
}

/// ℚ(ξ) = ℚ[x]/(Φ_ℓ) with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct Cyclo(Arc<FieldCtx>);

impl Cyclo {
    pub fn new(ctx: &FieldCtx) -> Result<Self, ScalarError> {
        if ctx.is_finite() {
            return Err(ScalarError::BadParameters("Cyclo needs p = 0".into()));
        }
        Ok(Cyclo(Arc::new(ctx.clone())))
    }
}

impl Field for Cyclo {
    type E = Vec<BigRational>;

    fn ctx(&self) -> &FieldCtx {
        &self.0
    }
    fn zero(&self) -> Self::E {
        vec![BigRational::zero(); self.0.degree()]
    }
    fn one(&self) -> Self::E {
        self.from_element(&self.0.one())
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn neg(&self, a: &Self::E) -> Self::E {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        self.from_element(&self.0.mul(
            &FieldElement::Rational(a.clone()),
            &FieldElement::Rational(b.clone()),
        ))
    }
    fn inv(&self, a: &Self::E) -> Option<Self::E> {
        self.0
            .inv(&FieldElement::Rational(a.clone()))
            .map(|x| self.from_element(&x))
    }
    fn from_int(&self, n: i64) -> Self::E {
        self.from_element(&self.0.from_int(n))
    }
    fn zeta_pow(&self, e: i64) -> Self::E {
        self.from_element(&self.0.zeta_pow(e))
    }
    fn from_element(&self, x: &FieldElement) -> Self::E {
        match x {
            FieldElement::Rational(v) => v.clone(),
            _ => panic!("finite element in ℚ(ξ)"),
        }
    }
    fn to_element(&self, a: &Self::E) -> FieldElement {
        FieldElement::Rational(a.clone())
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn nth(&self, k: u64) -> Self::E {
        // small integers combined with powers of ξ; only used for sampling
        let d = self.0.degree() as u64;
        let mut v = self.zero();
        let mut t = k;
        for c in v.iter_mut().take(d as usize) {
            *c = BigRational::from_integer(((t % 7) as i64 - 3).into());
            t /= 7;
        }
        v
    }
}
