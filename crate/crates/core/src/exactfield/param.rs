//! Polynomials in the deformation parameters κ1, κ2 with radical-complex
//! coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{RadicalComplex, Rational};

/// Exponent pair `(a, b)` of κ1^a κ2^b.
pub type KappaExp = (u16, u16);

fn exp_order(a: &KappaExp, b: &KappaExp) -> std::cmp::Ordering {
    (a.0 + a.1, std::cmp::Reverse(a.0)).cmp(&(b.0 + b.1, std::cmp::Reverse(b.0)))
}

/// Sparse polynomial in κ1, κ2. Terms are kept sorted (graded, κ1 first)
/// and never hold a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    terms: Vec<(KappaExp, RadicalComplex)>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RadicalComplex::one())
    }

    pub fn constant(c: RadicalComplex) -> Self {
        Self::monomial((0, 0), c)
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(RadicalComplex::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from(n))
    }

    pub fn monomial(exp: KappaExp, c: RadicalComplex) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    pub fn kappa1() -> Self {
        Self::monomial((1, 0), RadicalComplex::one())
    }

    pub fn kappa2() -> Self {
        Self::monomial((0, 1), RadicalComplex::one())
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (KappaExp, RadicalComplex)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn terms(&self) -> &[(KappaExp, RadicalComplex)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    /// The value if this is κ-free.
    pub fn as_constant(&self) -> Option<RadicalComplex> {
        match self.terms.as_slice() {
            [] => Some(RadicalComplex::zero()),
            [((0, 0), c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, exp: KappaExp) -> RadicalComplex {
        self.terms
            .iter()
            .find(|(e, _)| *e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Total degree in (κ1, κ2); zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| (e.0 + e.1) as u32).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: KappaExp, c: &RadicalComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(e, _)| exp_order(e, &exp)) {
            Ok(k) => {
                self.terms[k].1 += c;
                if self.terms[k].1.is_zero() {
                    self.terms.remove(k);
                }
            }
            Err(k) => self.terms.insert(k, (exp, c.clone())),
        }
    }

    pub fn scale(&self, c: &RadicalComplex) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x.scale(r))).collect(),
        }
    }

    /// `self += a * b`, the hot loop of operator evaluation.
    pub fn add_product(&mut self, a: &ParamScalar, b: &ParamScalar) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term((ea.0 + eb.0, ea.1 + eb.1), &(ca * cb));
            }
        }
    }

    /// Evaluates at κ1 = k1, κ2 = k2.
    pub fn instantiate(&self, k1: &Rational, k2: &Rational) -> RadicalComplex {
        let mut out = RadicalComplex::zero();
        for ((a, b), c) in &self.terms {
            let w = &k1.pow(*a as u32) * &k2.pow(*b as u32);
            out += &c.scale(&w);
        }
        out
    }

    /// Evaluates κ1, κ2 at parameter polynomials (e.g. rescalings).
    pub fn substitute(&self, k1: &ParamScalar, k2: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for ((a, b), c) in &self.terms {
            let mut m = ParamScalar::constant(c.clone());
            for _ in 0..*a {
                m = &m * k1;
            }
            for _ in 0..*b {
                m = &m * k2;
            }
            out += &m;
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conjugate())).collect(),
        }
    }

    /// Expanded signed monomials such as `2*kappa1` or `1/2*i*sqrt3*kappa2^2`.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for ((a, b), c) in &self.terms {
            let mut kappa = Vec::new();
            match a {
                0 => {}
                1 => kappa.push("kappa1".to_string()),
                n => kappa.push(format!("kappa1^{n}")),
            }
            match b {
                0 => {}
                1 => kappa.push("kappa2".to_string()),
                n => kappa.push(format!("kappa2^{n}")),
            }
            for (neg, text) in c.signed_terms() {
                if kappa.is_empty() {
                    out.push((neg, text));
                } else if text == "1" {
                    out.push((neg, kappa.join("*")));
                } else {
                    out.push((neg, format!("{}*{}", text, kappa.join("*"))));
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, rhs: &ParamScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&ParamScalar> for ParamScalar {
    fn sub_assign(&mut self, rhs: &ParamScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<RadicalComplex> for ParamScalar {
    fn from(c: RadicalComplex) -> Self {
        Self::constant(c)
    }
}

impl From<Rational> for ParamScalar {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_signed_sum(f, &self.signed_terms())
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k1() -> ParamScalar {
        ParamScalar::kappa1()
    }
    fn k2() -> ParamScalar {
        ParamScalar::kappa2()
    }
    fn int(n: i64) -> ParamScalar {
        ParamScalar::from_int(n)
    }

    #[test]
    fn ring_examples() {
        let s = &k1() + &k2();
        assert!((&s + &-&s).is_zero());
        let p = &k1() * &k2();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, (1, 1));
        assert!(p.terms()[0].1.is_one());
        let a = &int(1) + &(&int(2) * &k1());
        let b = &int(1) + &(&int(2) * &k2());
        let expect = ParamScalar::from_terms([
            ((0, 0), RadicalComplex::from(1)),
            ((1, 0), RadicalComplex::from(2)),
            ((0, 1), RadicalComplex::from(2)),
            ((1, 1), RadicalComplex::from(4)),
        ]);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn instantiate_examples() {
        let z = Rational::zero();
        let p = &(&int(1) + &(&int(2) * &k1())) + &(&int(2) * &k2());
        assert!(p.instantiate(&z, &z).is_one());
        let q = &k1() * &k2();
        assert_eq!(
            q.instantiate(&Rational::new(1, 2), &Rational::new(1, 3)),
            RadicalComplex::from_rational(Rational::new(1, 6))
        );
        let i_sqrt3 = &RadicalComplex::i() * &RadicalComplex::sqrt3();
        let r = k1().scale(&i_sqrt3);
        assert_eq!(r.instantiate(&Rational::from(2), &z), i_sqrt3.scale(&Rational::from(2)));
    }

    fn random_ps(rng: &mut impl Rng) -> ParamScalar {
        ParamScalar::from_terms((0..rng.gen_range(0..4)).map(|_| {
            let e = (rng.gen_range(0..3), rng.gen_range(0..3));
            let idx = rng.gen_range(0..8);
            (
                e,
                RadicalComplex::basis(idx, Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))),
            )
        }))
    }

    #[test]
    fn instantiate_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let (p, q) = (random_ps(&mut rng), random_ps(&mut rng));
            let a = Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=4));
            let b = Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=4));
            assert_eq!(
                (&p * &q).instantiate(&a, &b),
                &p.instantiate(&a, &b) * &q.instantiate(&a, &b)
            );
            assert_eq!(
                (&p + &q).instantiate(&a, &b),
                &p.instantiate(&a, &b) + &q.instantiate(&a, &b)
            );
        }
    }

    #[test]
    fn no_zero_terms_survive() {
        let p = &k1() - &k1();
        assert!(p.terms().is_empty());
        let s = k1().scale(&RadicalComplex::zero());
        assert!(s.is_zero());
    }

    #[test]
    fn display() {
        let p = &(&int(1) + &(&int(2) * &k1())) + &(&int(2) * &k2());
        assert_eq!(p.to_string(), "1 + 2*kappa1 + 2*kappa2");
        let q = -(&k1() + &k2());
        assert_eq!(q.to_string(), "-kappa1 - kappa2");
        assert_eq!(ParamScalar::zero().to_string(), "0");
    }
}
