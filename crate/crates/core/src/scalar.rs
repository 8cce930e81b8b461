//! Scalar abstraction shared by the exact and floating-point cone code.
//!
//! Exact arithmetic uses [`Rational`] (arbitrary precision); `f64` and `f32`
//! use an absolute tolerance on unit-scaled quantities.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational numbers.
pub type Rational = BigRational;

/// Field operations plus the zero test used by elimination and the cone algorithms.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `true` for exact fields; tolerances are then zero.
    const EXACT: bool;

    /// Absolute tolerance below which a (unit-scaled) value counts as zero.
    fn tolerance() -> Self;

    fn as_f64(&self) -> f64;

    /// Exact binary expansion for rationals; a plain cast for floats.
    fn of_f64(x: f64) -> Self;

    /// Positive rescaling of a nonzero vector to its canonical representative:
    /// coprime integers for rationals, unit Euclidean length for floats.
    fn canonical_ray(v: &[Self]) -> Vec<Self>;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    /// Total order used for sorting canonical vectors.
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    /// Equality up to tolerance (exact equality for rationals).
    fn approx_eq(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).abs() <= Self::tolerance() * Self::from_i32(16).unwrap()
        }
    }
}

/// Floating-point scalars usable by the numeric convex-analysis code.
pub trait Real: Scalar + num_traits::Float + Copy {}

impl Real for f64 {}
impl Real for f32 {}

fn float_canonical<T: Scalar + num_traits::Float>(v: &[T]) -> Vec<T> {
    let norm = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    if norm <= T::tolerance() {
        return vec![T::zero(); v.len()];
    }
    v.iter()
        .map(|&x| {
            let y = x / norm;
            if y.abs() <= T::tolerance() {
                T::zero()
            } else {
                y
            }
        })
        .collect()
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn of_f64(x: f64) -> Self {
        x
    }

    fn canonical_ray(v: &[Self]) -> Vec<Self> {
        float_canonical(v)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }

    fn of_f64(x: f64) -> Self {
        x as f32
    }

    fn canonical_ray(v: &[Self]) -> Vec<Self> {
        float_canonical(v)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Rational::zero()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn of_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn canonical_ray(v: &[Self]) -> Vec<Self> {
        let lcm = v
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if gcd.is_zero() {
            return vec![Rational::zero(); v.len()];
        }
        ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Parses `"3/2"`, `"-4"` or `"0"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Shorthand for building exact vectors from integers in tests and presets.
pub fn rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

/// Converts any scalar vector to `f64`.
pub fn to_f64_vec<T: Scalar>(v: &[T]) -> Vec<f64> {
    v.iter().map(Scalar::as_f64).collect()
}

/// Converts between scalar types through `f64` (exact when the target is rational).
pub fn convert_vec<S: Scalar, T: Scalar>(v: &[S]) -> Vec<T> {
    v.iter().map(|x| <T as Scalar>::of_f64(Scalar::as_f64(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_ray_is_coprime_and_sign_preserving() {
        let v = vec![parse_rational("-3/2").unwrap(), parse_rational("9/4").unwrap(), Rational::zero()];
        assert_eq!(Rational::canonical_ray(&v), rational_vec(&[-2, 3, 0]));
    }

    #[test]
    fn float_canonical_ray_has_unit_length() {
        let v = f64::canonical_ray(&[3.0, 4.0]);
        assert!((v[0] - 0.6).abs() < 1e-15 && (v[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational(" -7 ").unwrap().to_string(), "-7");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("0.5").is_none());
    }
}
