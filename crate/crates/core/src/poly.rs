//! Polynomials in x1, x2, x3 over [`ParamScalar`].

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::exactfield::{ParamScalar, RadicalComplex, Rational};
use crate::group::OrthogonalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial is not divisible by the linear form {divisor}; nonzero remainder {remainder}")]
pub struct ExactDivisionError {
    pub divisor: String,
    pub remainder: String,
}

/// Exponent triple of x1^a x2^b x3^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u16, b: u16, c: u16) -> Self {
        Monomial([a, b, c])
    }

    /// The variable x_i, `i` zero-based.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.0[i] += 1;
        m
    }

    /// Divides by x_i; `None` if the exponent is zero.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        let mut m = *self;
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    /// All monomials of total degree `d`, in descending graded-lex order
    /// (x1^d first).
    pub fn of_degree(d: u16) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push(Monomial([a, b, d - a - b]));
            }
        }
        out
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with x1 > x2 > x3.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..3)
            .filter(|&k| self.0[k] > 0)
            .map(|k| match self.0[k] {
                1 => format!("x{}", k + 1),
                e => format!("x{}^{}", k + 1, e),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPolynomial {
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl XPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamScalar::one())
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: ParamScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, ParamScalar::one())
    }

    /// The coordinate x_i, `i` zero-based.
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i))
    }

    /// The linear form Σ a_k x_k.
    pub fn linear_form(a: &[Rational; 3]) -> Self {
        let mut p = Self::zero();
        for (k, c) in a.iter().enumerate() {
            p.add_term(Monomial::var(k), &ParamScalar::rational(c.clone()));
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * x^m`, skipping the clone when the slot is new.
    pub fn add_term_owned(&mut self, m: Monomial, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * p`.
    pub fn add_scaled(&mut self, p: &XPolynomial, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, x) in &p.terms {
            if unit {
                self.add_term(*m, x);
            } else {
                self.add_term_owned(*m, x * c);
            }
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rc(&self, c: &RadicalComplex) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term_owned(*m, x.scale(c));
        }
        out
    }

    /// Multiplication by x_i.
    pub fn times_var(&self, i: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.times_var(i), c.clone())).collect(),
        }
    }

    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(n) = m.div_var(i) {
                out.add_term_owned(n, c.scale_rational(&Rational::from(m.exp(i) as i64)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Linear substitution implementing (g·p)(x) = p(g⁻¹x) for an
    /// orthogonal `g`, i.e. x_i ↦ Σ_j g_{ji} x_j.
    pub fn apply_matrix(&self, g: &OrthogonalMatrix) -> Self {
        let images: [XPolynomial; 3] = std::array::from_fn(|i| {
            let mut p = XPolynomial::zero();
            for j in 0..3 {
                p.add_term(Monomial::var(j), &ParamScalar::constant(g.entry(j, i).clone()));
            }
            p
        });
        let mut powers: [Vec<XPolynomial>; 3] = std::array::from_fn(|_| vec![XPolynomial::one()]);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut img = XPolynomial::constant(c.clone());
            for i in 0..3 {
                let e = m.exp(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    img = &img * &powers[i][e];
                }
            }
            out.add_scaled(&img, &ParamScalar::one());
        }
        out
    }

    /// Exact quotient by the linear form ⟨α, x⟩.
    ///
    /// Eliminates the first variable x_k with α_k ≠ 0: terms are processed
    /// in descending x_k-degree, each cancelled by a multiple of the divisor.
    /// Whatever remains is free of x_k and must vanish.
    pub fn divide_by_linear_form(&self, alpha: &[Rational; 3]) -> Result<Self, ExactDivisionError> {
        let k = alpha
            .iter()
            .position(|a| !a.is_zero())
            .expect("divisor must be a nonzero linear form");
        let lead_inv = alpha[k].recip().unwrap();
        let mut rem = self.clone();
        let mut quot = XPolynomial::zero();
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(m, _)| m.exp(k) > 0)
                .max_by(|(a, _), (b, _)| a.exp(k).cmp(&b.exp(k)).then(a.cmp(b)))
                .map(|(m, c)| (*m, c.clone()));
            let Some((m, c)) = next else { break };
            let qm = m.div_var(k).unwrap();
            let qc = c.scale_rational(&lead_inv);
            for (j, a) in alpha.iter().enumerate() {
                if !a.is_zero() {
                    rem.add_term_owned(qm.times_var(j), -qc.scale_rational(a));
                }
            }
            quot.add_term_owned(qm, qc);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(ExactDivisionError {
                divisor: XPolynomial::linear_form(alpha).to_string(),
                remainder: rem.to_string(),
            })
        }
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational; 3]) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let w = (0..3).fold(Rational::one(), |acc, i| &acc * &point[i].pow(m.exp(i) as u32));
            out += &c.scale_rational(&w);
        }
        out
    }

    /// Expanded signed terms, highest monomial first.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            for (neg, text) in c.signed_terms() {
                let t = match (*m == Monomial::ONE, text.as_str()) {
                    (true, _) => text,
                    (false, "1") => m.to_string(),
                    (false, _) => format!("{text}*{m}"),
                };
                out.push((neg, t));
            }
        }
        out
    }
}

impl<'a> Add<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn add(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &ParamScalar::one());
        out
    }
}

impl<'a> Sub<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn sub(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term_owned(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a XPolynomial> for &'a XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term_owned(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &XPolynomial {
    type Output = XPolynomial;
    fn neg(self) -> XPolynomial {
        XPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::exactfield::write_signed_sum(f, &self.signed_terms())
    }
}

impl fmt::Debug for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{reflection_matrix, RootSystemPreset};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> XPolynomial {
        XPolynomial::var(i - 1)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(v: [i64; 3]) -> [Rational; 3] {
        v.map(Rational::from)
    }

    #[test]
    fn ring_examples() {
        let p = &(&x(2) - &x(3)) * &(&x(2) + &x(3));
        assert_eq!(p, &x(2).pow(2) - &x(3).pow(2));
        assert!((&p + &-&p).is_zero());
        let s = &(&x(1) + &x(2)) + &x(3);
        let two = ParamScalar::from_int(2);
        let mut expect = XPolynomial::zero();
        for i in 1..=3 {
            expect = &expect + &x(i).pow(2);
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            expect = &expect + &(&x(i) * &x(j)).scale(&two);
        }
        assert_eq!(s.pow(2), expect);
        assert_eq!(s.pow(2).degree(), Some(2));
    }

    #[test]
    fn grlex_order() {
        assert!(Monomial::new(0, 0, 2) > Monomial::new(1, 0, 0));
        assert!(Monomial::new(1, 0, 0) > Monomial::new(0, 1, 0));
        assert!(Monomial::new(1, 0, 1) > Monomial::new(0, 2, 0));
        let deg2 = Monomial::of_degree(2);
        assert_eq!(deg2.len(), 6);
        assert!(deg2.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn matrix_action() {
        let g2 = RootSystemPreset::g2();
        let s1 = reflection_matrix(&g2.roots[0].vector);
        let s2 = reflection_matrix(&g2.roots[1].vector);
        assert_eq!(x(2).apply_matrix(&s1), x(3));
        let s = &(&x(1) + &x(2)) + &x(3);
        assert_eq!(s.apply_matrix(&s2), s);
        let p = &(&x(1).pow(3) + &(&x(2) * &x(3))) - &x(1);
        assert_eq!(p.apply_matrix(&OrthogonalMatrix::identity()), p);
        assert_eq!(p.apply_matrix(&s2).apply_matrix(&s2), p);
        // apply(apply(p, A), B) = apply(p, BA)
        let ba = s2.mul(&s1);
        assert_eq!(p.apply_matrix(&s1).apply_matrix(&s2), p.apply_matrix(&ba));
    }

    #[test]
    fn exact_division_examples() {
        let p = &x(2).pow(2) - &x(3).pow(2);
        assert_eq!(p.divide_by_linear_form(&ints([0, 1, -1])).unwrap(), &x(2) + &x(3));
        assert!(x(1).divide_by_linear_form(&ints([0, 1, -1])).is_err());
    }

    /// (1 - σ2) x1² divided by x1 - 2x2 + x3, checked against an evaluation
    /// oracle at random rational points and against the frozen quotient.
    #[test]
    fn sigma2_difference_quotient() {
        let g2 = RootSystemPreset::g2();
        let alpha2 = ints([1, -2, 1]);
        let s2 = reflection_matrix(&alpha2);
        let p = x(1).pow(2);
        let diff = &p - &p.apply_matrix(&s2);
        let quot = diff.divide_by_linear_form(&alpha2).unwrap();
        let divisor = XPolynomial::linear_form(&alpha2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pt = std::array::from_fn(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
            let lhs = &quot.evaluate(&pt) * &divisor.evaluate(&pt);
            assert_eq!(lhs, diff.evaluate(&pt));
        }
        // (1-σ2)x1² = x1² - (2x1+2x2-x3)²/9 = ⟨α2,x⟩ (5x1 + 2x2 - x3)/9
        let expect = XPolynomial::linear_form(&[q(5, 9), q(2, 9), q(-1, 9)]);
        assert_eq!(quot, expect);
        let _ = g2;
    }

    #[test]
    fn reflections_give_exact_difference_quotients() {
        for preset in [RootSystemPreset::g2(), RootSystemPreset::a2()] {
            for root in &preset.roots {
                let s = reflection_matrix(&root.vector);
                for d in 0..=6u16 {
                    for m in Monomial::of_degree(d) {
                        let p = XPolynomial::monomial(m);
                        let diff = &p - &p.apply_matrix(&s);
                        let qt = diff.divide_by_linear_form(&root.vector).unwrap();
                        assert_eq!(&qt * &XPolynomial::linear_form(&root.vector), diff);
                        assert_eq!(p.apply_matrix(&s).apply_matrix(&s), p);
                    }
                }
            }
        }
    }

    #[test]
    fn homogeneous_components() {
        let p = &(&XPolynomial::one() + &x(1)) + &(&x(1) * &x(2));
        assert_eq!(p.homogeneous_component(2), &x(1) * &x(2));
        assert!(p.homogeneous_component(5).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let mut r = XPolynomial::zero();
            for _ in 0..6 {
                let m = Monomial::new(rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
                r.add_term(m, &ParamScalar::from_int(rng.gen_range(-3..=3)));
            }
            let mut sum = XPolynomial::zero();
            for d in 0..=r.degree().unwrap_or(0) {
                let c = r.homogeneous_component(d);
                assert!(c.is_homogeneous());
                sum = &sum + &c;
            }
            assert_eq!(sum, r);
        }
    }

    #[test]
    fn partial_derivative() {
        let p = &x(1).pow(2) * &x(2);
        assert_eq!(p.partial(0), (&x(1) * &x(2)).scale(&ParamScalar::from_int(2)));
        assert_eq!(p.partial(2), XPolynomial::zero());
    }

    #[test]
    fn display() {
        let p = &(&x(1).pow(2) - &x(2)) + &XPolynomial::constant(ParamScalar::kappa1());
        assert_eq!(p.to_string(), "x1^2 - x2 + kappa1");
    }
}
