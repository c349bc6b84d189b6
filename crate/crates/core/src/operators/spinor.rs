use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{blade_product, Blade, CliffordElement, Parity, Signature};
use crate::exactfield::{render_signed_sum, ParamScalar, RadicalComplex};
use crate::poly::{ExactDivisionError, Monomial, XPolynomial};

/// A Clifford-valued polynomial Σ_B p_B(x) e_B.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SpinorPolynomial {
    components: BTreeMap<Blade, XPolynomial>,
}

impl SpinorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_component(b: Blade, p: XPolynomial) -> Self {
        let mut s = Self::zero();
        s.add_component(b, &p);
        s
    }

    /// The basis element x^m e_B.
    pub fn basis(m: Monomial, b: Blade) -> Self {
        Self::from_component(b, XPolynomial::monomial(m))
    }

    /// A polynomial times the scalar blade.
    pub fn scalar(p: XPolynomial) -> Self {
        Self::from_component(Blade::SCALAR, p)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Blade, &XPolynomial)> {
        self.components.iter()
    }

    pub fn component(&self, b: Blade) -> XPolynomial {
        self.components.get(&b).cloned().unwrap_or_default()
    }

    /// Every nonzero coefficient as (monomial, blade, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Blade, &ParamScalar)> {
        self.components
            .iter()
            .flat_map(|(b, p)| p.terms().map(move |(m, c)| (*m, *b, c)))
    }

    pub fn term_count(&self) -> usize {
        self.components.values().map(XPolynomial::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.values().filter_map(XPolynomial::degree).max()
    }

    /// True when every term has polynomial degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms().all(|(m, _, _)| m.degree() == d)
    }

    pub fn parity(&self) -> Parity {
        let even = self.components.keys().all(|b| b.is_even());
        let odd = self.components.keys().all(|b| !b.is_even());
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn add_component(&mut self, b: Blade, p: &XPolynomial) {
        self.add_component_scaled(b, p, &ParamScalar::one());
    }

    pub fn add_component_scaled(&mut self, b: Blade, p: &XPolynomial, c: &ParamScalar) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.components.entry(b).or_default();
        slot.add_scaled(p, c);
        if slot.is_zero() {
            self.components.remove(&b);
        }
    }

    pub fn add_term(&mut self, m: Monomial, b: Blade, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.components.entry(b).or_default();
        slot.add_term(m, c);
        if slot.is_zero() {
            self.components.remove(&b);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SpinorPolynomial, c: &ParamScalar) {
        for (b, p) in &other.components {
            self.add_component_scaled(*b, p, c);
        }
    }

    pub fn add(&self, other: &SpinorPolynomial) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ParamScalar::one());
        out
    }

    pub fn sub(&self, other: &SpinorPolynomial) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &ParamScalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a linear map on polynomials to every component.
    pub fn map_poly(&self, f: impl Fn(&XPolynomial) -> XPolynomial) -> Self {
        let mut out = Self::zero();
        for (b, p) in &self.components {
            out.add_component(*b, &f(p));
        }
        out
    }

    pub fn try_map_poly(
        &self,
        f: impl Fn(&XPolynomial) -> Result<XPolynomial, ExactDivisionError>,
    ) -> Result<Self, ExactDivisionError> {
        let mut out = Self::zero();
        for (b, p) in &self.components {
            out.add_component(*b, &f(p)?);
        }
        Ok(out)
    }

    /// Left multiplication by a Clifford element.
    pub fn clifford_left(&self, a: &CliffordElement<RadicalComplex>, s: Signature) -> Self {
        let mut out = Self::zero();
        for (ba, ca) in a.terms() {
            for (bb, p) in &self.components {
                let (sign, blade) = blade_product(*ba, *bb, s);
                let c = if sign == 1 { ca.clone() } else { -ca };
                out.add_component_scaled(blade, p, &ParamScalar::constant(c));
            }
        }
        out
    }

    /// Product in the tensor algebra; polynomial coefficients commute with blades.
    pub fn mul(&self, other: &Self, s: Signature) -> Self {
        let mut out = Self::zero();
        for (ba, pa) in &self.components {
            for (bb, pb) in &other.components {
                let (sign, blade) = blade_product(*ba, *bb, s);
                let p = pa * pb;
                out.add_component_scaled(blade, &p, &ParamScalar::from_int(sign));
            }
        }
        out
    }

    /// Substitutes κ1 = k1, κ2 = k2 in every coefficient.
    pub fn instantiate(&self, k1: &crate::exactfield::Rational, k2: &crate::exactfield::Rational) -> Self {
        let mut out = Self::zero();
        for (m, b, c) in self.terms() {
            out.add_term(m, b, &ParamScalar::constant(c.instantiate(k1, k2)));
        }
        out
    }

    fn signed_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (b, p) in &self.components {
            for (neg, text) in p.signed_terms() {
                let t = match (*b == Blade::SCALAR, text.as_str()) {
                    (true, _) => text,
                    (false, "1") => b.name(),
                    (false, _) => format!("{text}*{b}"),
                };
                out.push((neg, t));
            }
        }
        out
    }
}

impl fmt::Display for SpinorPolynomial {
    /// Fully expanded, e.g. `1 + 2*kappa1 + 2*kappa2` or `x1*e1 - 1/2*x2*e12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_signed_sum(&self.signed_terms()))
    }
}

impl fmt::Debug for SpinorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
