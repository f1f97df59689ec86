//! Dense univariate polynomials over ℚ and over 𝔽_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial over ℚ, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = QPoly(vec![c]);
        p.trim();
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        let mut p = QPoly(
            c.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        );
        p.trim();
        p
    }

    /// x^k
    pub fn monomial(k: usize, c: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        let mut p = QPoly(v);
        p.trim();
        p
    }

    pub fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    /// Number of factors of x dividing the polynomial.
    pub fn low_order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Self {
        QPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.0.iter().cloned());
        QPoly(v)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = QPoly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = QPoly(v);
        p.trim();
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().unwrap().clone();
        let mut r = self.clone();
        if r.0.len() <= dd {
            return (QPoly::zero(), r);
        }
        let mut q = vec![BigRational::zero(); r.0.len() - dd];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.0[rd].clone() / &lc;
            let k = rd - dd;
            for (i, x) in d.0.iter().enumerate() {
                r.0[i + k] -= &c * x;
            }
            q[k] = c;
            r.trim();
        }
        let mut q = QPoly(q);
        q.trim();
        (q, r)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn max_abs_height(&self) -> BigInt {
        self.0
            .iter()
            .map(|c| c.numer().abs().max(c.denom().abs()))
            .max()
            .unwrap_or_default()
    }
}

/// Cyclotomic polynomial Φ_n over ℤ (as a QPoly), computed by exact division.
pub fn cyclotomic(n: u64) -> QPoly {
    assert!(n >= 1);
    // x^n - 1 = Π_{d | n} Φ_d
    let mut num = QPoly::monomial(n as usize, BigRational::one()).sub(&QPoly::one());
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = num.divrem(&cyclotomic(d));
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    num
}

/// Polynomial over 𝔽_p with coefficients in [0, p), ascending, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            c: c.into_iter().map(|x| x % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_qpoly(q: &QPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c =
            q.0.iter()
                .map(|r| {
                    let n = ((r.numer() % &pb) + &pb) % &pb;
                    let d = ((r.denom() % &pb) + &pb) % &pb;
                    let n: u64 = n.try_into().unwrap();
                    let d: u64 = d.try_into().unwrap();
                    assert!(d != 0, "denominator divisible by p");
                    ((n as u128 * mod_inv(d, p) as u128) % p as u128) as u64
                })
                .collect();
        FpPoly::new(p, c)
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let v = (0..n)
            .map(|i| {
                (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        FpPoly::new(p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p as u128;
        let mut v = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, v.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let inv = mod_inv(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..r.len() - dd).rev() {
            let c = ((r[k + dd] as u128 * inv as u128) % p as u128) as u64;
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (i, &x) in d.c.iter().enumerate() {
                r[i + k] = (r[i + k] + p - ((c as u128 * x as u128) % p as u128) as u64) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = mod_inv(l, self.p);
                FpPoly::new(
                    self.p,
                    self.c
                        .iter()
                        .map(|&x| ((x as u128 * inv as u128) % self.p as u128) as u64)
                        .collect(),
                )
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = FpPoly::one(self.p);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(3), QPoly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(5), QPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(
            cyclotomic(15),
            QPoly::from_ints(&[1, -1, 0, 1, -1, 1, 0, -1, 1])
        );
    }

    #[test]
    fn qpoly_division_and_gcd() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&QPoly::from_ints(&[2, 2])), QPoly::from_ints(&[1, 1]));
        let (g, s, t) = QPoly::xgcd(&a, &QPoly::from_ints(&[0, 1]));
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&QPoly::from_ints(&[0, 1]))), g);
    }

    #[test]
    fn fppoly_basics() {
        let f = FpPoly::new(3, vec![1, 1, 1, 1, 1]);
        let x = FpPoly::x(3);
        // x^5 ≡ 1 mod Φ_5
        assert_eq!(x.powmod(5, &f), FpPoly::one(3));
        let (q, r) = f.divrem(&FpPoly::new(3, vec![2, 1]));
        assert_eq!(q.mul(&FpPoly::new(3, vec![2, 1])).add(&r), f);
    }
}
