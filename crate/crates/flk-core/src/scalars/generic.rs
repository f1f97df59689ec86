use super::poly::QPoly;
use super::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Element of ℚ(q) kept as `q^shift · num(q) / den(q)`.
///
/// Canonical form: `num(0) ≠ 0` (or `num = 0` with `shift = 0`, `den = 1`),
/// `den` monic with `den(0) ≠ 0`, and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenericScalar {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl GenericScalar {
    pub fn zero() -> Self {
        GenericScalar {
            shift: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GenericScalar {
            shift: 0,
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    /// c · q^e
    pub fn monomial(c: i64, e: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        GenericScalar {
            shift: e,
            num: QPoly::from_ints(&[c]),
            den: QPoly::one(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Build from Laurent coefficients `Σ c_e q^e`.
    pub fn laurent(terms: &[(i64, i64)]) -> Self {
        let mut acc = Self::zero();
        for &(e, c) in terms {
            acc = acc.add(&Self::monomial(c, e));
        }
        acc
    }

    pub fn from_parts(shift: i64, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = GenericScalar { shift, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            *self = Self::zero();
            return;
        }
        let k = self.num.low_order();
        if k > 0 {
            self.num = self.num.shift_down(k);
            self.shift += k as i64;
        }
        let k = self.den.low_order();
        if k > 0 {
            self.den = self.den.shift_down(k);
            self.shift -= k as i64;
        }
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.divrem(&g).0;
                self.den = self.den.divrem(&g).0;
            }
            let lc = self.den.lead().unwrap().clone();
            if !lc.is_one() {
                let inv = lc.recip();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - m) as usize);
        let b = o.num.shift_up((o.shift - m) as usize);
        if self.den == o.den {
            return Self::from_parts(m, a.add(&b), self.den.clone());
        }
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        Self::from_parts(m, num, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        GenericScalar {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return GenericScalar {
                shift: self.shift + o.shift,
                num: self.num.mul(&o.num),
                den: QPoly::one(),
            };
        }
        Self::from_parts(
            self.shift + o.shift,
            self.num.mul(&o.num),
            self.den.mul(&o.den),
        )
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_parts(
            -self.shift,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Substitute q ↦ q^d (d ≥ 1).
    pub fn substitute_power(&self, d: u32) -> Self {
        assert!(d >= 1);
        let spread = |p: &QPoly| {
            if p.is_zero() {
                return QPoly::zero();
            }
            let mut v = vec![BigRational::zero(); (p.0.len() - 1) * d as usize + 1];
            for (i, c) in p.0.iter().enumerate() {
                v[i * d as usize] = c.clone();
            }
            QPoly(v)
        };
        Self::from_parts(self.shift * d as i64, spread(&self.num), spread(&self.den))
    }

    /// Laurent coefficients `exponent → coefficient` of the numerator times q^shift.
    pub fn numerator_terms(&self) -> BTreeMap<i64, BigRational> {
        self.num
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    pub fn denominator_terms(&self) -> BTreeMap<i64, BigRational> {
        self.den
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect()
    }

    /// Serialized form: two maps exponent → rational string.
    pub fn to_serial(&self) -> SerialScalar {
        let f = |m: BTreeMap<i64, BigRational>| {
            m.into_iter().map(|(e, c)| (e, c.to_string())).collect()
        };
        SerialScalar {
            num: f(self.numerator_terms()),
            den: f(self.denominator_terms()),
        }
    }

    pub fn from_serial(s: &SerialScalar) -> Result<Self, ScalarError> {
        let parse = |m: &BTreeMap<i64, String>| -> Result<(i64, QPoly), ScalarError> {
            if m.is_empty() {
                return Ok((0, QPoly::zero()));
            }
            let lo = *m.keys().next().unwrap();
            let hi = *m.keys().last().unwrap();
            let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
            for (e, c) in m {
                v[(e - lo) as usize] = c
                    .parse::<BigRational>()
                    .map_err(|_| ScalarError::Parse(c.clone()))?;
            }
            let mut p = QPoly(v);
            p.trim();
            Ok((lo, p))
        };
        let (ns, n) = parse(&s.num)?;
        let (ds, d) = parse(&s.den)?;
        if d.is_zero() {
            return Err(ScalarError::Parse("zero denominator".into()));
        }
        Ok(Self::from_parts(ns - ds, n, d))
    }

    /// Evaluate at a rational point q = x (x ≠ 0); None at a pole.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(x);
        let mut s = BigRational::one();
        let base = if self.shift >= 0 {
            x.clone()
        } else {
            x.recip()
        };
        for _ in 0..self.shift.unsigned_abs() {
            s *= &base;
        }
        Some(n * s / d)
    }
}

impl fmt::Debug for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &BTreeMap<i64, BigRational>| -> String {
            if m.is_empty() {
                return "0".into();
            }
            m.iter()
                .map(|(e, c)| format!("({})q^{}", c, e))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let n = show(&self.numerator_terms());
        if self.den.is_one() {
            write!(f, "{}", n)
        } else {
            write!(f, "[{}] / [{}]", n, show(&self.denominator_terms()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SerialScalar {
    pub num: BTreeMap<i64, String>,
    pub den: BTreeMap<i64, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_syntactic() {
        // (q^2 - 1)/(q^2 - q) = (q + 1)/q
        let a = GenericScalar::from_parts(
            0,
            QPoly::from_ints(&[-1, 0, 1]),
            QPoly::from_ints(&[0, -1, 1]),
        );
        let b = GenericScalar::laurent(&[(0, 1), (-1, 1)]);
        assert_eq!(a, b);
        assert!(a.is_laurent());
    }

    #[test]
    fn inverse_and_serial_roundtrip() {
        let a = GenericScalar::laurent(&[(1, 1), (-1, -1)]);
        let i = a.inv().unwrap();
        assert!(!i.is_laurent());
        assert!(a.mul(&i).is_one());
        let s = i.to_serial();
        assert_eq!(GenericScalar::from_serial(&s).unwrap(), i);
        assert_eq!(GenericScalar::from_serial(&a.to_serial()).unwrap(), a);
    }

    #[test]
    fn substitution() {
        let a = GenericScalar::laurent(&[(1, 1), (-1, 1)]);
        assert_eq!(
            a.substitute_power(2),
            GenericScalar::laurent(&[(2, 1), (-2, 1)])
        );
    }
}
