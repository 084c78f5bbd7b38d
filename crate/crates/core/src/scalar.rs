//! Scalar abstractions.
//!
//! Everything that only needs field arithmetic (level measures, walk
//! matrices, conductance, the brute-force oracle) is generic over [`Field`],
//! which admits exact rationals. Spectral code additionally needs square
//! roots and is generic over [`Real`].

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, Num, NumAssign, ToPrimitive};

pub trait Field:
    Copy + Num + NumAssign + Neg<Output = Self> + PartialOrd + Debug + Send + Sync + 'static
{
    /// True when arithmetic is exact, in which case tolerances collapse to zero.
    const EXACT: bool;

    fn from_ratio(num: u64, den: u64) -> Self;

    fn from_f64_value(x: f64) -> Option<Self>;

    fn to_f64_value(self) -> f64;

    fn from_count(n: u64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn tolerance(tol: f64) -> Self {
        if Self::EXACT {
            Self::zero()
        } else {
            Self::from_f64_value(tol).unwrap_or_else(Self::zero)
        }
    }

    /// Strictly positive; false for NaN.
    fn is_positive(self) -> bool {
        self.partial_cmp(&Self::zero()) == Some(std::cmp::Ordering::Greater)
    }

    fn magnitude(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

/// Floating-point scalars usable by the eigensolvers.
pub trait Real: Field + Float {
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64_value(x).expect("finite f64 converts to every Real")
    }
}

impl<T: Field + Float> Real for T {}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64_value(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64_value(self) -> f64 {
        self
    }
}

impl Field for f32 {
    const EXACT: bool = false;

    fn from_ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn from_f64_value(x: f64) -> Option<Self> {
        x.is_finite().then_some(x as f32)
    }

    fn to_f64_value(self) -> f64 {
        self as f64
    }
}

macro_rules! impl_ratio_field {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            const EXACT: bool = true;

            fn from_ratio(num: u64, den: u64) -> Self {
                Ratio::new(num as $int, den as $int)
            }

            fn from_f64_value(x: f64) -> Option<Self> {
                Ratio::<$int>::approximate_float(x)
            }

            fn to_f64_value(self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }
        }
    };
}

impl_ratio_field!(i64);
impl_ratio_field!(i128);

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u64 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

pub(crate) fn binom<T: Field>(n: usize, r: usize) -> T {
    T::from_count(binomial(n, r))
}
