//! Exact scalars, dense matrices and truncated series in `u^-1`.
//!
//! Two scalar worlds exist side by side: exact rationals (`Q`) for every
//! algebraic construction and complex floats (`C64`) for eigenproblems.
//! They are separated at the type level; [`Mat::to_complex`] is the one
//! lossy conversion point.

pub mod matrix;
pub mod series;

pub use matrix::Mat;
pub use series::Series;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = BigRational;
pub type C64 = Complex64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("depth mismatch: {lhs} vs {rhs}")]
    DepthMismatch { lhs: usize, rhs: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

/// Common scalar interface for the two worlds.
///
/// `Q` is the exact kind, `C64` the float kind. Mixing kinds is a compile
/// error; conversion happens only through [`Scalar::from_q`] and
/// [`Mat::to_complex`].
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;
    fn from_q(q: &Q) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(v)))
    }
}

impl Scalar for Q {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
}

impl Scalar for C64 {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(C64::new(1.0, 0.0) / self)
        }
    }
    fn from_q(q: &Q) -> Self {
        C64::new(q_to_f64(q), 0.0)
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    match (x.numer().to_string().parse::<f64>(), x.denom().to_string().parse::<f64>()) {
        (Ok(a), Ok(b)) => a / b,
        _ => f64::NAN,
    }
}

/// Canonical `"p/q"` rendering; integers render without the slash.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`, with optional sign.
pub fn q_from_str(s: &str) -> Result<Q, ExactError> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| ExactError::ParseRational(s.to_string()))
    };
    if let Some((p, den)) = s.split_once('/') {
        let num = parse_int(p)?;
        let den = parse_int(den)?;
        if den.is_zero() {
            return Err(ExactError::ParseRational(s.to_string()));
        }
        Ok(Q::new(num, den))
    } else {
        Ok(Q::from_integer(parse_int(s)?))
    }
}

/// Elementary symmetric polynomial `e_m` of the given values, `e_0 = 1`.
pub fn elementary_symmetric(vals: &[Q], m: usize) -> Result<Q, ExactError> {
    if m > vals.len() {
        return Err(ExactError::IndexOutOfRange(format!(
            "e_{m} of {} values",
            vals.len()
        )));
    }
    // dp[j] = e_j of the prefix processed so far
    let mut dp: Vec<Q> = vec![Q::zero(); m + 1];
    dp[0] = Q::one();
    for v in vals {
        for j in (1..=m).rev() {
            let add = &dp[j - 1] * v;
            dp[j] = &dp[j] + &add;
        }
    }
    Ok(dp[m].clone())
}

/// Exact binomial coefficient as a rational.
pub fn binom(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut r = Q::one();
    for i in 0..k {
        r = r * Q::new(BigInt::from(n - i), BigInt::from(i + 1));
    }
    r
}

/// Content-normalizes a rational vector in place: clears denominators,
/// divides by the integer gcd and fixes the first nonzero entry positive.
/// Returns false when the vector is zero.
pub fn normalize_primitive(v: &mut [Q]) -> bool {
    use num::Integer;
    let mut lcm = BigInt::one();
    let mut any = false;
    for x in v.iter() {
        if !x.is_zero() {
            any = true;
            lcm = lcm.lcm(x.denom());
        }
    }
    if !any {
        return false;
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    let first = ints.iter().find(|n| !n.is_zero()).unwrap();
    if first.is_negative() {
        gcd = -gcd;
    }
    for (slot, n) in v.iter_mut().zip(ints) {
        *slot = Q::from_integer(n / &gcd);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_roundtrip() {
        for s in ["3/4", "-1/2", "7", "0", "-12/5"] {
            let v = q_from_str(s).unwrap();
            assert_eq!(q_to_string(&v), s);
        }
        assert_eq!(q_from_str("2/4").unwrap(), q(1, 2));
        assert!(q_from_str("1/0").is_err());
        assert!(q_from_str("xy").is_err());
    }

    #[test]
    fn elem_symmetric_basics() {
        // e_0 of anything is 1
        assert_eq!(elementary_symmetric(&[qi(5), qi(7)], 0).unwrap(), qi(1));
        // e_1(4, 9) = 13
        assert_eq!(elementary_symmetric(&[qi(4), qi(9)], 1).unwrap(), qi(13));
        // e_2(1, 4, 9) = 4 + 9 + 36 = 49 (brute-force over pairs)
        let vals = [qi(1), qi(4), qi(9)];
        let mut brute = Q::zero();
        for i in 0..3 {
            for j in (i + 1)..3 {
                brute = brute + &vals[i] * &vals[j];
            }
        }
        assert_eq!(brute, qi(49));
        assert_eq!(elementary_symmetric(&vals, 2).unwrap(), brute);
        assert!(elementary_symmetric(&vals, 4).is_err());
    }

    #[test]
    fn elem_symmetric_newton_recurrence() {
        // e_m(x, rest) = e_m(rest) + x*e_{m-1}(rest)
        let rest = [qi(2), qi(-3), q(1, 2), qi(7)];
        let x = q(-5, 3);
        let mut all = vec![x.clone()];
        all.extend_from_slice(&rest);
        for m in 1..=4 {
            let lhs = elementary_symmetric(&all, m).unwrap();
            let rhs = elementary_symmetric(&rest, m).unwrap()
                + &x * elementary_symmetric(&rest, m - 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn primitive_normalization() {
        let mut v = vec![q(-2, 3), q(4, 3), qi(0)];
        assert!(normalize_primitive(&mut v));
        assert_eq!(v, vec![qi(1), qi(-2), qi(0)]);
        let mut z = vec![Q::zero(); 3];
        assert!(!normalize_primitive(&mut z));
    }
}
