//! Exact scalar arithmetic: rationals, the radical field ℚ(i, √2, √3) and
//! polynomials in the deformation parameters.

mod param;
mod radical;
mod rational;

use std::fmt;

pub use param::{KappaExp, ParamScalar};
pub use radical::{RadicalComplex, BASIS_NAMES};
pub use rational::{ParseRationalError, Rational};

/// Commutative ring interface shared by the scalar types, so that Clifford
/// elements and matrices can be generic over their entries.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
}

macro_rules! impl_ring {
    ($t:ty, $from:expr) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn one() -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg(&self) -> Self {
                -self
            }
            fn from_rational(r: Rational) -> Self {
                $from(r)
            }
        }
    };
}

impl_ring!(Rational, |r| r);
impl_ring!(RadicalComplex, RadicalComplex::from_rational);
impl_ring!(ParamScalar, ParamScalar::rational);

/// Writes `a + b - c` from signed terms, `0` when empty.
pub(crate) fn write_signed_sum(f: &mut fmt::Formatter<'_>, terms: &[(bool, String)]) -> fmt::Result {
    f.write_str(&render_signed_sum(terms))
}

pub(crate) fn render_signed_sum(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (neg, text)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(text);
    }
    s
}
