//! Numeric contract shared by every geometric routine.
//!
//! Two implementations exist: [`Exact`] (arbitrary precision rationals, the
//! default for structure detection) and [`Approx`] (`f64` compared with a
//! relative tolerance). Generic code is written once against [`Scalar`]; a
//! dataset picks one mode at the type level, so the two can never mix.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Relative tolerance used by [`Approx`] equality.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Grid used to quantize [`Approx`] values into grouping keys.
const APPROX_KEY_QUANTUM: f64 = 1e-7;

/// Exact rational scalar.
pub type Exact = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(ParseScalarError(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse scalar: {0}")]
pub struct ParseScalarError(pub String);

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Hashable, totally ordered grouping key. Equal keys imply mode equality
    /// for exact scalars; approximate keys are a bucketing hint only.
    type Key: Clone + fmt::Debug + Eq + Ord + Hash + Send + Sync;

    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Panics when `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;
    /// `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool;
    /// Equality under the mode's rule.
    fn same(&self, other: &Self) -> bool;
    /// -1, 0 or 1; zero is decided by [`Scalar::is_zero`].
    fn signum(&self) -> i8;
    fn key(&self) -> Self::Key;
    fn parse(s: &str) -> Result<Self, ParseScalarError>;

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigRational {
    type Key = BigRational;

    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Option<Self> {
        <BigRational as FromPrimitive>::from_f64(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn signum(&self) -> i8 {
        if Signed::is_positive(self) {
            1
        } else if Signed::is_negative(self) {
            -1
        } else {
            0
        }
    }

    fn key(&self) -> Self::Key {
        self.clone()
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        let value = BigRational::from_str(s).map_err(|_| ParseScalarError(s.to_string()))?;
        Ok(value)
    }
}

/// `f64` scalar whose equality is `|x - y| <= eps * max(1, |x|, |y|)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Approx(pub f64);

impl Approx {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! approx_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Approx {
            type Output = Approx;

            fn $method(self, rhs: Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
    };
}

approx_binop!(Add, add, +);
approx_binop!(Sub, sub, -);
approx_binop!(Mul, mul, *);
approx_binop!(Div, div, /);

impl Neg for Approx {
    type Output = Approx;

    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    type Key = i64;

    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        Approx(0.0)
    }

    fn one() -> Self {
        Approx(1.0)
    }

    fn from_int(v: i64) -> Self {
        Approx(v as f64)
    }

    fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Approx(num as f64 / den as f64)
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(Approx(v))
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn is_zero(&self) -> bool {
        self.0.abs() <= DEFAULT_TOLERANCE
    }

    fn same(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        (self.0 - other.0).abs() <= DEFAULT_TOLERANCE * scale
    }

    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.0 > 0.0 {
            1
        } else {
            -1
        }
    }

    fn key(&self) -> Self::Key {
        (self.0 / APPROX_KEY_QUANTUM).round() as i64
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        // Accepts decimals and `p/q`, so one command line works in both modes.
        let s = s.trim();
        let bad = || ParseScalarError(s.to_string());
        let v: f64 = match s.split_once('/') {
            Some((n, d)) => Scalar::to_f64(&<Exact as Scalar>::parse(&format!("{n}/{d}"))?),
            None => s.parse().map_err(|_| bad())?,
        };
        Self::from_f64(v).ok_or_else(bad)
    }
}

/// `num / den` as an exact rational; panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Exact {
    Exact::from_frac(num, den)
}

/// Integer as an exact rational.
pub fn qi(v: i64) -> Exact {
    Exact::from_int(v)
}
