//! Exact scalar types.
//!
//! Every order decision in this crate mixes strict and non-strict
//! inequalities, so the scalar must be an exact ordered field. The trait is
//! implemented for `num_rational` ratios over `i64`, `i128` and `BigInt`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact ordered field usable as the value type of trace functions,
/// state matrices and step functions.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Send + Sync + 'static + Num + Signed
{
    fn from_int(n: i64) -> Self;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Largest integer not exceeding `self`, as a scalar.
    fn floor(&self) -> Self;

    /// Smallest integer not below `self`, as a scalar.
    fn ceil(&self) -> Self;

    /// Parses `"p/q"` or `"p"`.
    fn parse_rational(s: &str) -> Option<Self>;

    /// Integer value if `self` is an integer fitting in `i64`.
    fn to_i64_exact(&self) -> Option<i64>;

    /// Denominator in lowest terms, if it fits in `i64`.
    fn denom_i64(&self) -> Option<i64>;

    fn pow2(exp: u32) -> Self {
        let two = Self::from_int(2);
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * two.clone();
        }
        acc
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }
}

macro_rules! impl_scalar_prim {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(n as $t)
            }

            fn floor(&self) -> Self {
                Ratio::floor(self)
            }

            fn ceil(&self) -> Self {
                Ratio::ceil(self)
            }

            fn parse_rational(s: &str) -> Option<Self> {
                parse_with(s, |p| p.parse::<$t>().ok())
            }

            fn to_i64_exact(&self) -> Option<i64> {
                if self.is_integer() {
                    i64::try_from(self.to_integer()).ok()
                } else {
                    None
                }
            }

            fn denom_i64(&self) -> Option<i64> {
                i64::try_from(self.denom().clone()).ok()
            }
        }
    };
}

impl_scalar_prim!(i64);
impl_scalar_prim!(i128);

impl Scalar for Ratio<BigInt> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn ceil(&self) -> Self {
        Ratio::ceil(self)
    }

    fn parse_rational(s: &str) -> Option<Self> {
        parse_with(s, |p| p.parse::<BigInt>().ok())
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.to_integer()).ok()
        } else {
            None
        }
    }

    fn denom_i64(&self) -> Option<i64> {
        i64::try_from(self.denom().clone()).ok()
    }
}

fn parse_with<I, F>(s: &str, parse: F) -> Option<Ratio<I>>
where
    I: Clone + num_integer::Integer,
    F: Fn(&str) -> Option<I>,
{
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    // Digits only (with an optional leading minus); rejects "0.5", "1e3".
    let ok = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(p) || !ok(q) {
        return None;
    }
    let numer = parse(p)?;
    let denom = parse(q)?;
    if denom.is_zero() {
        return None;
    }
    Some(Ratio::new(numer, denom))
}

/// Integer scalar converted into `T`.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_int(n)
}

/// `numer/denom` converted into `T`.
pub fn frac<T: Scalar>(numer: i64, denom: i64) -> T {
    T::ratio(numer, denom)
}

/// Minimum of a non-empty slice.
pub fn min_of<T: Scalar>(xs: &[T]) -> Option<T> {
    xs.iter().min().cloned()
}

/// Maximum of a non-empty slice.
pub fn max_of<T: Scalar>(xs: &[T]) -> Option<T> {
    xs.iter().max().cloned()
}

/// Sup norm of a vector; zero for the empty vector.
pub fn sup_norm<T: Scalar>(xs: &[T]) -> T {
    xs.iter().map(|x| x.abs()).max().unwrap_or_else(T::zero)
}

pub fn is_one<T: Scalar>(x: &T) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(
            Rational64::parse_rational("3/4"),
            Some(Rational64::new(3, 4))
        );
        assert_eq!(
            Rational64::parse_rational("-2"),
            Some(Rational64::from_integer(-2))
        );
        assert_eq!(
            BigRational::parse_rational(" 6/8 "),
            Some(BigRational::ratio(3, 4))
        );
    }

    #[test]
    fn parse_rejects_floats_and_zero_denominators() {
        assert_eq!(Rational64::parse_rational("0.5"), None);
        assert_eq!(Rational64::parse_rational("1e3"), None);
        assert_eq!(Rational64::parse_rational("1/0"), None);
        assert_eq!(Rational64::parse_rational(""), None);
        assert_eq!(Rational64::parse_rational("1/-"), None);
    }

    #[test]
    fn floor_ceil_and_pow2() {
        let x: BigRational = frac(8, 3);
        assert_eq!(Scalar::floor(&x), int(2));
        assert_eq!(Scalar::ceil(&x), int(3));
        let y: BigRational = frac(-1, 2);
        assert_eq!(Scalar::floor(&y), int(-1));
        assert_eq!(BigRational::pow2(10), int(1024));
        assert_eq!(Rational64::pow2(0), int(1));
    }

    #[test]
    fn exact_integer_extraction() {
        assert_eq!(BigRational::ratio(6, 3).to_i64_exact(), Some(2));
        assert_eq!(BigRational::ratio(1, 3).to_i64_exact(), None);
    }
}
