//! Truncated series `sum_{r=0..D} c_r u^-r` with scalar or matrix coefficients.
//!
//! A product of two depth-D series is reported at depth D again; higher
//! terms are dropped, never kept partially.

use super::{binom, ExactError, Mat, Scalar, C64, Q};
use num::{One, Zero};

/// Coefficient space of a truncated series (scalars or fixed-shape matrices).
pub trait SeriesElem: Clone + std::fmt::Debug + Send + Sync {
    fn el_zero_like(&self) -> Self;
    fn el_is_zero(&self) -> bool;
    fn el_add(&self, rhs: &Self) -> Self;
    fn el_sub(&self, rhs: &Self) -> Self;
    fn el_mul(&self, rhs: &Self) -> Self;
    fn el_scale_q(&self, f: &Q) -> Self;
    fn el_same_shape(&self, rhs: &Self) -> bool;
    fn el_mul_compatible(&self, rhs: &Self) -> bool;
}

macro_rules! scalar_series_elem {
    ($t:ty) => {
        impl SeriesElem for $t {
            fn el_zero_like(&self) -> Self {
                <$t as Zero>::zero()
            }
            fn el_is_zero(&self) -> bool {
                self.is_zero()
            }
            fn el_add(&self, rhs: &Self) -> Self {
                self.clone() + rhs
            }
            fn el_sub(&self, rhs: &Self) -> Self {
                self.clone() - rhs
            }
            fn el_mul(&self, rhs: &Self) -> Self {
                self.clone() * rhs
            }
            fn el_scale_q(&self, f: &Q) -> Self {
                self.clone() * &<$t as Scalar>::from_q(f)
            }
            fn el_same_shape(&self, _: &Self) -> bool {
                true
            }
            fn el_mul_compatible(&self, _: &Self) -> bool {
                true
            }
        }
    };
}

scalar_series_elem!(Q);
scalar_series_elem!(C64);

impl<T: Scalar> SeriesElem for Mat<T> {
    fn el_zero_like(&self) -> Self {
        Mat::zeros(self.nrows(), self.ncols())
    }
    fn el_is_zero(&self) -> bool {
        Mat::is_zero(self)
    }
    fn el_add(&self, rhs: &Self) -> Self {
        Mat::add(self, rhs)
    }
    fn el_sub(&self, rhs: &Self) -> Self {
        Mat::sub(self, rhs)
    }
    fn el_mul(&self, rhs: &Self) -> Self {
        self.matmul(rhs)
    }
    fn el_scale_q(&self, f: &Q) -> Self {
        self.scale(&T::from_q(f))
    }
    fn el_same_shape(&self, rhs: &Self) -> bool {
        self.nrows() == rhs.nrows() && self.ncols() == rhs.ncols()
    }
    fn el_mul_compatible(&self, rhs: &Self) -> bool {
        self.ncols() == rhs.nrows()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: SeriesElem> Series<C> {
    /// Builds from `D+1` coefficients; all must share one shape.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        assert!(
            coeffs.windows(2).all(|w| w[0].el_same_shape(&w[1])),
            "series coefficients must share one shape"
        );
        Series { coeffs }
    }

    pub fn constant(c0: C, depth: usize) -> Self {
        let mut coeffs = vec![c0.el_zero_like(); depth + 1];
        coeffs[0] = c0;
        Series { coeffs }
    }

    pub fn zero_like_of(sample: &C, depth: usize) -> Self {
        Series {
            coeffs: vec![sample.el_zero_like(); depth + 1],
        }
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &C {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.el_is_zero())
    }

    pub fn truncate(&self, depth: usize) -> Self {
        assert!(depth <= self.depth());
        Series {
            coeffs: self.coeffs[..=depth].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_depth(rhs)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.el_add(b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_depth(rhs)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.el_sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.el_scale_q(&-Q::one())).collect(),
        }
    }

    /// Cauchy product truncated to the common depth.
    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_depth(rhs)?;
        if !self.coeffs[0].el_mul_compatible(&rhs.coeffs[0]) {
            return Err(ExactError::ShapeMismatch("series_mul".into()));
        }
        let d = self.depth();
        let zero = self.coeffs[0].el_mul(&rhs.coeffs[0]).el_zero_like();
        let mut out = vec![zero; d + 1];
        for r in 0..=d {
            if self.coeffs[r].el_is_zero() {
                continue;
            }
            for s in 0..=(d - r) {
                if rhs.coeffs[s].el_is_zero() {
                    continue;
                }
                let prod = self.coeffs[r].el_mul(&rhs.coeffs[s]);
                out[r + s] = out[r + s].el_add(&prod);
            }
        }
        Ok(Series { coeffs: out })
    }

    /// `s(-u)`: odd coefficients change sign.
    pub fn neg_arg(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(r, c)| {
                    if r % 2 == 1 {
                        c.el_scale_q(&-Q::one())
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        }
    }

    /// Re-expands `s(u + a)` as a series in `u^-1` at the same depth.
    pub fn shift_arg(&self, a: &Q) -> Self {
        let d = self.depth();
        let zero = self.coeffs[0].el_zero_like();
        let mut out = vec![zero; d + 1];
        out[0] = self.coeffs[0].clone();
        // (u+a)^-r = sum_q (-1)^q C(r+q-1, q) a^q u^-(r+q)
        for r in 1..=d {
            if self.coeffs[r].el_is_zero() {
                continue;
            }
            let mut apow = Q::one();
            for qq in 0..=(d - r) {
                let mut w = binom(r + qq - 1, qq) * &apow;
                if qq % 2 == 1 {
                    w = -w;
                }
                out[r + qq] = out[r + qq].el_add(&self.coeffs[r].el_scale_q(&w));
                apow = apow * a;
            }
        }
        Series { coeffs: out }
    }

    /// Multiplies by `u^-k` (coefficients shift toward deeper orders).
    pub fn shift_down(&self, k: usize) -> Self {
        let d = self.depth();
        let zero = self.coeffs[0].el_zero_like();
        let mut out = vec![zero; d + 1];
        for r in k..=d {
            out[r] = self.coeffs[r - k].clone();
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, f: &Q) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.el_scale_q(f)).collect(),
        }
    }

    /// Rescales coefficient `r` by `f^r`, realizing `s(u/f)`-style
    /// substitutions for rational `f`.
    pub fn geometric_rescale(&self, f: &Q) -> Self {
        let mut pow = Q::one();
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let out = c.el_scale_q(&pow);
                    pow = pow.clone() * f;
                    out
                })
                .collect(),
        }
    }

    fn check_depth(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.depth() != rhs.depth() {
            return Err(ExactError::DepthMismatch {
                lhs: self.depth(),
                rhs: rhs.depth(),
            });
        }
        Ok(())
    }
}

impl<T: Scalar> Series<Mat<T>> {
    pub fn identity(n: usize, depth: usize) -> Self {
        Series::constant(Mat::identity(n), depth)
    }

    /// Multiplies an operator series by a scalar series coefficient-wise
    /// (convolution), keeping the operator shape.
    pub fn scale_by(&self, s: &Series<T>) -> Result<Self, ExactError>
    where
        T: SeriesElem,
    {
        if self.depth() != s.depth() {
            return Err(ExactError::DepthMismatch {
                lhs: self.depth(),
                rhs: s.depth(),
            });
        }
        let d = self.depth();
        let mut out = vec![self.coeffs[0].el_zero_like(); d + 1];
        for r in 0..=d {
            if self.coeffs[r].el_is_zero() {
                continue;
            }
            for k in 0..=(d - r) {
                if s.coeffs[k].el_is_zero() {
                    continue;
                }
                let prod = self.coeffs[r].scale(&s.coeffs[k]);
                out[r + k] = out[r + k].el_add(&prod);
            }
        }
        Ok(Series { coeffs: out })
    }
}

impl Series<Mat<Q>> {
    pub fn to_complex(&self) -> Series<Mat<C64>> {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.to_complex()).collect(),
        }
    }
}

/// Inverse of a scalar series with invertible constant term.
pub fn invert_scalar_series<T: Scalar + SeriesElem>(
    s: &Series<T>,
) -> Result<Series<T>, ExactError> {
    let inv0 = s.coeff(0).try_inv().ok_or(ExactError::Singular)?;
    let d = s.depth();
    let mut b = vec![T::zero(); d + 1];
    b[0] = inv0.clone();
    for r in 1..=d {
        let mut acc = T::zero();
        for j in 1..=r {
            acc = acc + &(s.coeff(j).clone() * &b[r - j]);
        }
        b[r] = -acc * &inv0;
    }
    Ok(Series::new(b))
}

/// Expansion of `(1 - A/(u+c))^-1` in powers of `u^-1` to the given depth.
///
/// Coefficient of `u^-r` is `sum_{p=1..r} (-c)^(r-p) C(r-1, r-p) A^p`,
/// with the identity at `r = 0`; in particular the `u^-1` coefficient is `A`.
pub fn geom_inverse_series(a: &Mat<Q>, c: &Q, depth: usize) -> Result<Series<Mat<Q>>, ExactError> {
    if !a.is_square() {
        return Err(ExactError::ShapeMismatch(
            "geometric inverse of non-square matrix".into(),
        ));
    }
    let n = a.nrows();
    let mut powers = Vec::with_capacity(depth + 1);
    powers.push(Mat::<Q>::identity(n));
    for p in 1..=depth {
        powers.push(powers[p - 1].matmul(a));
    }
    let mut coeffs = Vec::with_capacity(depth + 1);
    coeffs.push(Mat::identity(n));
    for r in 1..=depth {
        let mut acc = Mat::zeros(n, n);
        let mut cpow = Q::one(); // (-c)^(r-p), built from p = r downward
        for p in (1..=r).rev() {
            let w = binom(r - 1, r - p) * &cpow;
            acc = acc.add(&powers[p].scale(&w));
            cpow = cpow * -c;
        }
        coeffs.push(acc);
    }
    Ok(Series::new(coeffs))
}

/// Series of `(alpha*u + beta)/(gamma*u + delta)` in `u^-1` (`gamma != 0`),
/// emitted over any scalar kind.
pub fn linear_fraction_series<T: Scalar + SeriesElem>(
    alpha: &Q,
    beta: &Q,
    gamma: &Q,
    delta: &Q,
    depth: usize,
) -> Series<T> {
    assert!(!gamma.is_zero(), "linear fraction needs gamma != 0");
    let mut s: Vec<Q> = Vec::with_capacity(depth + 1);
    let s0 = alpha / gamma;
    s.push(s0.clone());
    if depth >= 1 {
        s.push((beta - delta * &s0) / gamma);
        for r in 1..depth {
            let next = -(delta * &s[r]) / gamma;
            s.push(next);
        }
    }
    Series::new(s.into_iter().map(|c| T::from_q(&c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn sq(vals: &[Q]) -> Series<Q> {
        Series::new(vals.to_vec())
    }

    #[test]
    fn difference_of_squares() {
        // (1 + h u^-1)(1 - h u^-1) = 1 - h^2 u^-2 at depth 2
        let h = q(3, 2);
        let a = sq(&[qi(1), h.clone(), qi(0)]);
        let b = sq(&[qi(1), -h.clone(), qi(0)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeffs(), &[qi(1), qi(0), -(&h * &h)]);
    }

    #[test]
    fn truncation_drops_high_terms() {
        // (1 + u^-1)^2 at depth 1 -> 1 + 2 u^-1
        let a = sq(&[qi(1), qi(1)]);
        let p = a.mul(&a).unwrap();
        assert_eq!(p.coeffs(), &[qi(1), qi(2)]);
    }

    #[test]
    fn identity_series_neutral() {
        let s = sq(&[q(2, 3), qi(-1), q(5, 7), qi(4)]);
        let one = Series::constant(Q::one(), 3);
        assert_eq!(one.mul(&s).unwrap(), s);
        assert_eq!(s.mul(&one).unwrap(), s);
    }

    #[test]
    fn depth_mismatch_is_error() {
        let a = sq(&[qi(1), qi(1)]);
        let b = sq(&[qi(1), qi(1), qi(0)]);
        assert!(matches!(a.mul(&b), Err(ExactError::DepthMismatch { .. })));
    }

    #[test]
    fn geom_inverse_examples() {
        // A = 0 -> identity series
        let z = Mat::<Q>::zeros(2, 2);
        let s = geom_inverse_series(&z, &qi(0), 3).unwrap();
        assert_eq!(s, Series::identity(2, 3));

        // A = [[1]], c = 0 -> geometric series 1 + u^-1 + u^-2 + u^-3
        let a = Mat::from_rows(vec![vec![qi(1)]]);
        let s = geom_inverse_series(&a, &qi(0), 3).unwrap();
        for r in 0..=3 {
            assert_eq!(s.coeff(r)[(0, 0)], qi(1));
        }

        // A = [[1]], c = 1/2 -> 1 + u^-1 + (1/2) u^-2
        let s = geom_inverse_series(&a, &q(1, 2), 2).unwrap();
        assert_eq!(s.coeff(1)[(0, 0)], qi(1));
        assert_eq!(s.coeff(2)[(0, 0)], q(1, 2));
    }

    #[test]
    fn geom_inverse_times_factor_is_identity() {
        // (1 - A/(u+c)) * expansion == 1 to the common depth
        let a = Mat::from_rows(vec![
            vec![qi(1), q(3, 2), qi(0)],
            vec![qi(-2), qi(0), q(1, 3)],
            vec![qi(5), qi(1), qi(-1)],
        ]);
        let c = q(5, 2);
        let d = 6;
        let inv = geom_inverse_series(&a, &c, d).unwrap();
        let one_over = linear_fraction_series::<Q>(&qi(0), &qi(1), &qi(1), &c, d);
        let a_ser = Series::constant(a.clone(), d).scale_by(&one_over).unwrap();
        let factor = Series::identity(3, d).sub(&a_ser).unwrap();
        let prod = factor.mul(&inv).unwrap();
        assert_eq!(prod, Series::identity(3, d));
        assert_eq!(inv.coeff(1), &a);
    }

    #[test]
    fn linear_fraction_matches_hand_expansion() {
        // 1/(u+1/2) = u^-1 - (1/2) u^-2 + (1/4) u^-3 - ...
        let s = linear_fraction_series::<Q>(&qi(0), &qi(1), &qi(1), &q(1, 2), 3);
        assert_eq!(s.coeffs(), &[qi(0), qi(1), q(-1, 2), q(1, 4)]);
        // (u+2)/(u+1/2) = 1 + (3/2)u^-1 - (3/4)u^-2 + ...
        let s = linear_fraction_series::<Q>(&qi(1), &qi(2), &qi(1), &q(1, 2), 2);
        assert_eq!(s.coeffs(), &[qi(1), q(3, 2), q(-3, 4)]);
    }

    #[test]
    fn scalar_series_inverse() {
        let s = sq(&[qi(1), q(-3, 2), q(7, 5), qi(2)]);
        let inv = invert_scalar_series(&s).unwrap();
        let prod = s.mul(&inv).unwrap();
        assert_eq!(prod, Series::constant(Q::one(), 3));
    }

    #[test]
    fn shift_arg_reexpansion() {
        // s(u) = 1/(u-1) shifted by +1 gives 1/u exactly
        let s = linear_fraction_series::<Q>(&qi(0), &qi(1), &qi(1), &qi(-1), 6);
        let shifted = s.shift_arg(&qi(1));
        let expect = linear_fraction_series::<Q>(&qi(0), &qi(1), &qi(1), &qi(0), 6);
        assert_eq!(shifted, expect);
    }
}
