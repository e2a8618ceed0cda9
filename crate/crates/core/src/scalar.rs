//! Scalar abstractions shared by the algebraic modules.
//!
//! Coefficient rings of Laurent polynomials and Hecke algebra elements are
//! generic over [`Coeff`]; any exact commutative ring from `num-traits`
//! (machine integers, big integers, rationals) qualifies. Rational vectors in
//! the apartment use [`Rational`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact commutative ring usable as a coefficient ring.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
}

macro_rules! impl_coeff_prim {
    ($($t:ty),*) => {
        $(impl Coeff for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        })*
    };
}

impl_coeff_prim!(i32, i64, i128);

impl Coeff for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Coeff for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Exact rational number over `i64`.
pub type Rational = Ratio<i64>;

/// Formats a rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => s.parse().ok().map(Rational::from_integer),
    }
}
