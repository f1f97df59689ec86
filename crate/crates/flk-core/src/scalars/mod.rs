//! Exact coefficient arithmetic: ℚ(q), cyclotomic specializations, quantum integers.

pub mod fast;
pub mod field;
pub mod generic;
pub mod poly;

pub use fast::{Cyclo, Field, Gf};
pub use field::{
    cyclotomic_factors_mod_p, cyclotomic_power_check, euler_phi, make_field,
    make_field_with_factor, mult_order, FieldCtx, FieldElement,
};
pub use generic::{GenericScalar, SerialScalar};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("non-integral quantum binomial: {0}")]
    NonIntegral(String),
    #[error("pole at the root of unity: {0}")]
    PoleAtRootOfUnity(String),
    #[error("coefficient {0} has denominator divisible by p")]
    NotPIntegral(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// [a] in the variable q^d: (q^{da} − q^{−da}) / (q^d − q^{−d}).
pub fn quantum_integer(a: i64, d: u32) -> GenericScalar {
    if a == 0 {
        return GenericScalar::zero();
    }
    let sign = if a < 0 { -1 } else { 1 };
    let n = a.abs();
    let d = d as i64;
    let mut acc = GenericScalar::zero();
    for k in 0..n {
        acc = acc.add(&GenericScalar::monomial(sign, d * (n - 1 - 2 * k)));
    }
    acc
}

/// [n]! in the variable q^d.
pub fn quantum_factorial(n: u32, d: u32) -> GenericScalar {
    let mut acc = GenericScalar::one();
    for i in 1..=n as i64 {
        acc = acc.mul(&quantum_integer(i, d));
    }
    acc
}

/// Gaussian binomial [n choose k] for k ≤ n, asserted to be a Laurent polynomial.
pub fn quantum_binomial(n: u32, k: u32, d: u32) -> Result<GenericScalar, ScalarError> {
    if k > n {
        return Err(ScalarError::BadParameters(format!(
            "k = {k} exceeds n = {n}"
        )));
    }
    let num = quantum_factorial(n, d);
    let den = quantum_factorial(k, d).mul(&quantum_factorial(n - k, d));
    let r = num.div(&den).expect("nonzero factorial");
    if !r.is_laurent() {
        return Err(ScalarError::NonIntegral(format!(
            "[{n} choose {k}]_{d} = {r}"
        )));
    }
    Ok(r)
}

/// [n choose k] for any integer n: Π_{s<k} [n − s] / [k]!.
pub fn quantum_binomial_int(n: i64, k: u32, d: u32) -> Result<GenericScalar, ScalarError> {
    let mut num = GenericScalar::one();
    for s in 0..k as i64 {
        num = num.mul(&quantum_integer(n - s, d));
    }
    let r = num
        .div(&quantum_factorial(k, d))
        .expect("nonzero factorial");
    if !r.is_laurent() {
        return Err(ScalarError::NonIntegral(format!(
            "[{n} choose {k}]_{d} = {r}"
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integer_examples() {
        assert!(quantum_integer(0, 1).is_zero());
        assert_eq!(
            quantum_integer(2, 1),
            GenericScalar::laurent(&[(1, 1), (-1, 1)])
        );
        assert_eq!(quantum_integer(-3, 1), quantum_integer(3, 1).neg());
        // [a](q − q^{−1}) = q^a − q^{−a}
        let qq = GenericScalar::laurent(&[(1, 1), (-1, -1)]);
        for a in -6..=6 {
            assert_eq!(
                quantum_integer(a, 1).mul(&qq),
                GenericScalar::laurent(&[(a, 1), (-a, -1)])
            );
        }
        assert_eq!(
            quantum_integer(2, 2),
            GenericScalar::laurent(&[(2, 1), (-2, 1)])
        );
    }

    #[test]
    fn binomial_small() {
        assert_eq!(quantum_binomial(2, 1, 1).unwrap(), quantum_integer(2, 1));
        assert!(quantum_binomial(1, 2, 1).is_err());
        assert_eq!(
            quantum_binomial_int(-1, 1, 1).unwrap(),
            quantum_integer(-1, 1)
        );
        assert_eq!(
            quantum_binomial_int(5, 2, 1).unwrap(),
            quantum_binomial(5, 2, 1).unwrap()
        );
        assert!(quantum_binomial_int(3, 5, 1).unwrap().is_zero());
    }
}
