//! Exact scalars in ℚ(i, √2, √3).
//!
//! The field is an 8-dimensional ℚ-vector space with basis
//! `1, √2, √3, √6, i, i√2, i√3, i√6`. Basis index bits: bit 0 is √2,
//! bit 1 is √3, bit 2 is i, so the product of two basis elements lands on
//! the XOR of their indices with a rational factor from the squared
//! generators (√2² = 2, √3² = 3, i² = -1).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::Rational;

pub const BASIS_NAMES: [&str; 8] = ["1", "sqrt2", "sqrt3", "sqrt6", "i", "i*sqrt2", "i*sqrt3", "i*sqrt6"];

/// Coefficient of `basis[a] * basis[b]` on `basis[a ^ b]`.
const fn basis_factor(a: usize, b: usize) -> i64 {
    let both = a & b;
    let mut f = 1;
    if both & 1 != 0 {
        f *= 2;
    }
    if both & 2 != 0 {
        f *= 3;
    }
    if both & 4 != 0 {
        f = -f;
    }
    f
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalComplex {
    coords: [Rational; 8],
}

impl RadicalComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut z = Self::zero();
        z.coords[0] = r;
        z
    }

    pub fn from_coords(coords: [Rational; 8]) -> Self {
        Self { coords }
    }

    /// `r` times the basis element at `index`.
    pub fn basis(index: usize, r: Rational) -> Self {
        let mut z = Self::zero();
        z.coords[index] = r;
        z
    }

    pub fn i() -> Self {
        Self::basis(4, Rational::one())
    }

    pub fn sqrt2() -> Self {
        Self::basis(1, Rational::one())
    }

    pub fn sqrt3() -> Self {
        Self::basis(2, Rational::one())
    }

    pub fn sqrt6() -> Self {
        Self::basis(3, Rational::one())
    }

    /// ω = e^{2πi/3} = (-1 + i√3)/2.
    pub fn omega() -> Self {
        let mut z = Self::zero();
        z.coords[0] = Rational::new(-1, 2);
        z.coords[6] = Rational::new(1, 2);
        z
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> &Rational {
        &self.coords[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    /// True when only the rational coordinate is nonzero.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coords[0])
    }

    pub fn is_real(&self) -> bool {
        self.coords[4..].iter().all(Rational::is_zero)
    }

    pub fn real_part(&self) -> Self {
        let mut z = self.clone();
        for c in &mut z.coords[4..] {
            *c = Rational::zero();
        }
        z
    }

    pub fn conjugate(&self) -> Self {
        let mut z = self.clone();
        for c in &mut z.coords[4..] {
            *c = -&*c;
        }
        z
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            coords: std::array::from_fn(|k| &self.coords[k] * r),
        }
    }

    /// Applies the field automorphism that flips the sign of each generator
    /// whose bit is set in `mask` (bit 0: √2, bit 1: √3, bit 2: i).
    pub fn galois(&self, mask: usize) -> Self {
        Self {
            coords: std::array::from_fn(|k| {
                if (k & mask).count_ones() % 2 == 1 {
                    -&self.coords[k]
                } else {
                    self.coords[k].clone()
                }
            }),
        }
    }

    /// Multiplicative inverse via the product of the seven nontrivial
    /// Galois conjugates; their product with `self` is the rational norm.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Self::one();
        for mask in 1..8 {
            others = &others * &self.galois(mask);
        }
        let norm = self * &others;
        let norm = norm.as_rational().expect("norm lies in the rationals");
        Some(others.scale(&norm.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point approximation (re, im), for diagnostics only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let r = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        let re = (0..4).map(|k| self.coords[k].to_f64() * r[k]).sum();
        let im = (0..4).map(|k| self.coords[k + 4].to_f64() * r[k]).sum();
        (re, im)
    }

    /// Writes the nonzero coordinates as signed monomials, e.g.
    /// `-1/2 + 1/2*i*sqrt3`. Each entry is (negative, magnitude text).
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let text = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => BASIS_NAMES[k].to_string(),
                (_, false) => format!("{}*{}", mag, BASIS_NAMES[k]),
            };
            out.push((neg, text));
        }
        out
    }
}

impl<'a> Mul<&'a RadicalComplex> for &'a RadicalComplex {
    type Output = RadicalComplex;
    fn mul(self, rhs: &RadicalComplex) -> RadicalComplex {
        let mut out = RadicalComplex::zero();
        for (a, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let f = basis_factor(a, b);
                let p = x * y;
                let p = if f == 1 { p } else { &p * &Rational::from(f) };
                out.coords[a ^ b] += &p;
            }
        }
        out
    }
}

impl<'a> Add<&'a RadicalComplex> for &'a RadicalComplex {
    type Output = RadicalComplex;
    fn add(self, rhs: &RadicalComplex) -> RadicalComplex {
        RadicalComplex {
            coords: std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]),
        }
    }
}

impl<'a> Sub<&'a RadicalComplex> for &'a RadicalComplex {
    type Output = RadicalComplex;
    fn sub(self, rhs: &RadicalComplex) -> RadicalComplex {
        RadicalComplex {
            coords: std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]),
        }
    }
}

impl Neg for &RadicalComplex {
    type Output = RadicalComplex;
    fn neg(self) -> RadicalComplex {
        RadicalComplex {
            coords: std::array::from_fn(|k| -&self.coords[k]),
        }
    }
}

impl Neg for RadicalComplex {
    type Output = RadicalComplex;
    fn neg(self) -> RadicalComplex {
        -&self
    }
}

impl AddAssign<&RadicalComplex> for RadicalComplex {
    fn add_assign(&mut self, rhs: &RadicalComplex) {
        for (c, r) in self.coords.iter_mut().zip(&rhs.coords) {
            if !r.is_zero() {
                *c += r;
            }
        }
    }
}

impl SubAssign<&RadicalComplex> for RadicalComplex {
    fn sub_assign(&mut self, rhs: &RadicalComplex) {
        for (c, r) in self.coords.iter_mut().zip(&rhs.coords) {
            if !r.is_zero() {
                *c -= r;
            }
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RadicalComplex> for RadicalComplex {
            type Output = RadicalComplex;
            fn $m(self, rhs: RadicalComplex) -> RadicalComplex { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<Rational> for RadicalComplex {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for RadicalComplex {
    fn from(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
}

impl fmt::Display for RadicalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.signed_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, text)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
