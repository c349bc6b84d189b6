//! The Clifford algebra on e1, e2, e3 with e_i² = ε.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::Ring;

/// The common square ε ∈ {+1, -1} of the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature(i8);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("epsilon must be +1 or -1, got {0:?}")]
pub struct SignatureError(pub String);

impl Signature {
    pub const PLUS: Signature = Signature(1);
    pub const MINUS: Signature = Signature(-1);
    pub const BOTH: [Signature; 2] = [Signature::PLUS, Signature::MINUS];

    pub fn new(epsilon: i64) -> Result<Self, SignatureError> {
        match epsilon {
            1 => Ok(Self::PLUS),
            -1 => Ok(Self::MINUS),
            e => Err(SignatureError(e.to_string())),
        }
    }

    pub fn epsilon(self) -> i64 {
        self.0 as i64
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 > 0 { "+1" } else { "-1" })
    }
}

impl FromStr for Signature {
    type Err = SignatureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Self::PLUS),
            "-1" | "-" => Ok(Self::MINUS),
            other => Err(SignatureError(other.to_string())),
        }
    }
}

/// A basis blade e_A, A ⊆ {1, 2, 3}, stored as a bitmask (bit k is e_{k+1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b111);

    /// All eight blades ordered by (grade, lex).
    pub const ALL: [Blade; 8] = [
        Blade(0b000),
        Blade(0b001),
        Blade(0b010),
        Blade(0b100),
        Blade(0b011),
        Blade(0b101),
        Blade(0b110),
        Blade(0b111),
    ];

    pub fn from_mask(mask: u8) -> Self {
        assert!(mask < 8, "blade mask out of range");
        Blade(mask)
    }

    /// e_i for i ∈ {1, 2, 3}.
    pub fn generator(i: usize) -> Self {
        assert!((1..=3).contains(&i), "generator index out of range");
        Blade(1 << (i - 1))
    }

    /// Blade from an ascending or unordered list of distinct indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Blade(0), |b, &i| Blade(b.0 | Blade::generator(i).0))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..3).filter(|k| self.0 & (1 << k) != 0).map(|k| k + 1).collect()
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_even(self) -> bool {
        self.grade().is_multiple_of(2)
    }

    /// Position in [`Blade::ALL`].
    pub fn position(self) -> usize {
        Blade::ALL.iter().position(|&b| b == self).unwrap()
    }

    pub fn name(self) -> String {
        if self.0 == 0 {
            "1".to_string()
        } else {
            let digits: String = self.indices().iter().map(|i| i.to_string()).collect();
            format!("e{digits}")
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        if name == "1" {
            return Some(Blade::SCALAR);
        }
        let digits = name.strip_prefix('e')?;
        let idx: Vec<usize> = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?;
        if idx.is_empty() || idx.iter().any(|i| !(1..=3).contains(i)) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Blade::from_indices(&idx))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.position().cmp(&other.position())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// e_A · e_B = sign · e_{A Δ B}. The sign counts the transpositions needed
/// to sort the concatenated index lists, times ε for each contracted index.
pub fn blade_product(a: Blade, b: Blade, s: Signature) -> (i64, Blade) {
    let mut swaps = 0;
    for i in 0..3 {
        if a.0 & (1 << i) != 0 {
            // generators of b with smaller index must pass this one
            swaps += (b.0 & ((1 << i) - 1)).count_ones();
        }
    }
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
    if (a.0 & b.0).count_ones() % 2 == 1 {
        sign *= s.epsilon();
    }
    (sign, Blade(a.0 ^ b.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A linear combination of blades; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct CliffordElement<S: Ring> {
    terms: BTreeMap<Blade, S>,
}

impl<S: Ring> Default for CliffordElement<S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<S: Ring> CliffordElement<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::blade(Blade::SCALAR)
    }

    pub fn blade(b: Blade) -> Self {
        Self::term(b, S::one())
    }

    pub fn term(b: Blade, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(b, c);
        e
    }

    /// Σ v_k e_k.
    pub fn vector(v: [S; 3]) -> Self {
        let mut e = Self::zero();
        for (k, c) in v.into_iter().enumerate() {
            e.add_term(Blade::generator(k + 1), c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(S::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::from_int(-1))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (b, x) in &self.terms {
            out.add_term(*b, x.mul(c));
        }
        out
    }

    /// Bilinear extension of [`blade_product`].
    pub fn mul(&self, other: &Self, s: Signature) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (sign, blade) = blade_product(*a, *b, s);
                let c = x.mul(y);
                out.add_term(blade, if sign == 1 { c } else { c.neg() });
            }
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let even = self.terms.keys().all(|b| b.is_even());
        let odd = self.terms.keys().all(|b| !b.is_even());
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> CliffordElement<T> {
        let mut out = CliffordElement::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }
}

impl<S: Ring> fmt::Display for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                if *b == Blade::SCALAR {
                    format!("({c})")
                } else {
                    format!("({c})*{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Ring> fmt::Debug for CliffordElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
