//! Exact matrices of degree-preserving operators on one homogeneous
//! component, and their characteristic polynomials.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::clifford::{Blade, Signature};
use crate::exactfield::{render_signed_sum, ParamScalar, RadicalComplex, Rational, Ring};
use crate::group::{RootSystemPreset, Weights};
use crate::operators::{basis_of_degree, Catalogue, Evaluator, Operator, SpinorPolynomial};
use crate::poly::{ExactDivisionError, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("operator does not preserve the degree-{degree} component: image of {monomial} {blade} leaves it")]
    NotGraded {
        degree: u32,
        monomial: String,
        blade: String,
    },
    #[error(transparent)]
    Division(#[from] ExactDivisionError),
}

/// The basis x^m e_B of the degree-`d` component.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub degree: u32,
    pub elements: Vec<(Monomial, Blade)>,
    index: HashMap<(Monomial, Blade), usize>,
}

impl GradedBasis {
    pub fn new(degree: u32) -> Self {
        let elements = basis_of_degree(degree);
        let index = elements.iter().enumerate().map(|(k, e)| (*e, k)).collect();
        Self {
            degree,
            elements,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, m: Monomial, b: Blade) -> Option<usize> {
        self.index.get(&(m, b)).copied()
    }

    /// Labels such as `x1^2*e12` or `1`.
    pub fn labels(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|(m, b)| match (*m == Monomial::ONE, *b == Blade::SCALAR) {
                (true, _) => b.name(),
                (false, true) => m.to_string(),
                (false, false) => format!("{m}*{}", b.name()),
            })
            .collect()
    }
}

/// Square matrix over a ring, row-major.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<R> {
    n: usize,
    entries: Vec<R>,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(R::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> ExactMatrix<T> {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Coefficients of det(λI - M), highest power first, by the
    /// division-free Samuelson–Berkowitz recurrence.
    pub fn charpoly(&self) -> CharPoly<R> {
        let mut v = vec![R::one()];
        for k in 0..self.n {
            // leading principal block of size k, its last column c and row r
            let a = self.get(k, k);
            let col: Vec<R> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let row: Vec<R> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut t = Vec::with_capacity(k + 2);
            t.push(R::one());
            t.push(a.neg());
            let mut mc = col;
            for _ in 0..k {
                let rmc = row.iter().zip(&mc).fold(R::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
                t.push(rmc.neg());
                mc = (0..k)
                    .map(|i| (0..k).fold(R::zero(), |acc, j| acc.add(&self.get(i, j).mul(&mc[j]))))
                    .collect();
            }
            // new v = T v with T lower-triangular Toeplitz of first column t
            let new: Vec<R> = (0..k + 2)
                .map(|i| {
                    (0..=i.min(k))
                        .filter(|&j| i - j < t.len())
                        .fold(R::zero(), |acc, j| acc.add(&t[i - j].mul(&v[j])))
                })
                .collect();
            v = new;
        }
        CharPoly { coeffs: v }
    }
}

impl ExactMatrix<ParamScalar> {
    pub fn instantiate(&self, k1: &Rational, k2: &Rational) -> ExactMatrix<RadicalComplex> {
        self.map(|c| c.instantiate(k1, k2))
    }
}

/// Scalars that render as a signed sum of terms.
pub trait SignedTerms {
    fn signed_term_list(&self) -> Vec<(bool, String)>;
}

impl SignedTerms for RadicalComplex {
    fn signed_term_list(&self) -> Vec<(bool, String)> {
        self.signed_terms()
    }
}

impl SignedTerms for ParamScalar {
    fn signed_term_list(&self) -> Vec<(bool, String)> {
        self.signed_terms()
    }
}

impl<R: Ring + fmt::Display> ExactMatrix<R> {
    /// One row per line, entries in the textual scalar syntax.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| csv_field(&self.get(i, j).to_string())).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn rows_text(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl<R: Ring + fmt::Display> fmt::Debug for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_csv())
    }
}

/// A monic polynomial in λ, coefficients highest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly<R> {
    pub coeffs: Vec<R>,
}

impl<R: Ring> CharPoly<R> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at λ = x.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self { coeffs: vec![R::one()] };
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl CharPoly<RadicalComplex> {
    /// Writes self = q^k with k > 1 maximal, when such a monic q exists.
    pub fn as_perfect_power(&self) -> Option<(CharPoly<RadicalComplex>, u32)> {
        let n = self.degree();
        (2..=n as u32)
            .rev()
            .filter(|k| n.is_multiple_of(*k as usize))
            .find_map(|k| {
                let q = self.monic_root(k)?;
                (q.pow(k) == *self).then_some((q, k))
            })
    }

    /// Candidate monic k-th root from the top coefficients:
    /// matching λ^(n-j) in q^k determines q_j from q_0..q_{j-1}.
    fn monic_root(&self, k: u32) -> Option<Self> {
        let m = self.degree() / k as usize;
        let kinv = RadicalComplex::from_rational(Rational::new(1, i64::from(k)));
        let mut q = vec![RadicalComplex::one()];
        for j in 1..=m {
            q.push(RadicalComplex::zero());
            let partial = CharPoly { coeffs: q.clone() }.pow(k);
            let residual = &self.coeffs[j] - &partial.coeffs[j];
            q[j] = &residual * &kinv;
        }
        Some(CharPoly { coeffs: q })
    }
}

impl<R: Ring + SignedTerms> CharPoly<R> {
    fn signed_terms(&self) -> Vec<(bool, String)> {
        let n = self.degree();
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = n - i;
            let power = match p {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{p}"),
            };
            for (neg, text) in c.signed_term_list() {
                let t = match (p, text.as_str()) {
                    (0, _) => text,
                    (_, "1") => power.clone(),
                    _ => format!("{text}*{power}"),
                };
                out.push((neg, t));
            }
        }
        out
    }
}

impl<R: Ring + SignedTerms> fmt::Display for CharPoly<R> {
    /// Expanded form in the variable `l`, e.g. `l^2 - 1/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_signed_sum(&self.signed_terms()))
    }
}

impl CharPoly<RadicalComplex> {
    /// `(q)^k` when the polynomial is a perfect power, else expanded.
    pub fn factored(&self) -> String {
        match self.as_perfect_power() {
            Some((q, k)) => format!("({q})^{k}"),
            None => self.to_string(),
        }
    }
}

/// Matrix of a degree-preserving operator on the degree-`d` component;
/// column j holds the coordinates of the image of basis vector j.
pub fn matrix_of(op: &Operator, d: u32) -> Result<ExactMatrix<ParamScalar>, MatrixError> {
    matrix_of_with(&Evaluator::new(), op, d)
}

pub fn matrix_of_with(eval: &Evaluator, op: &Operator, d: u32) -> Result<ExactMatrix<ParamScalar>, MatrixError> {
    let basis = GradedBasis::new(d);
    let columns: Vec<SpinorPolynomial> = basis
        .elements
        .par_iter()
        .map(|&(m, b)| eval.apply(op, &SpinorPolynomial::basis(m, b)))
        .collect::<Result<_, _>>()?;
    let mut out = ExactMatrix::zero(basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (m, b, c) in col.terms() {
            let i = basis.position(m, b).ok_or_else(|| {
                let (m0, b0) = basis.elements[j];
                MatrixError::NotGraded {
                    degree: d,
                    monomial: m0.to_string(),
                    blade: b0.name(),
                }
            })?;
            out.set(i, j, c.clone());
        }
    }
    Ok(out)
}

/// Result of checking [M(O0), M(K±)] = ±M(K±) on one component.
#[derive(Debug, Clone, Serialize)]
pub struct LadderReport {
    pub degree: u32,
    pub dimension: usize,
    pub epsilon: i64,
    /// `None` for symbolic weights.
    pub kappa: Option<(String, String)>,
    pub plus_holds: bool,
    pub minus_holds: bool,
}

impl LadderReport {
    pub fn holds(&self) -> bool {
        self.plus_holds && self.minus_holds
    }
}

/// Matrix-level ladder relations for G2, symbolic when `kappa` is `None`.
pub fn ladder_matrix_check(
    d: u32,
    kappa: Option<(Rational, Rational)>,
    s: Signature,
) -> Result<LadderReport, MatrixError> {
    let g2 = RootSystemPreset::g2();
    let weights = match &kappa {
        Some((k1, k2)) => Weights::rational(k1.clone(), k2.clone()),
        None => Weights::symbolic(),
    };
    let cat = Catalogue::new(&g2, s, weights);
    let eval = Evaluator::new();
    let m0 = matrix_of_with(&eval, &cat.o_zero(), d)?;
    let kp = matrix_of_with(&eval, &cat.k_plus(), d)?;
    let km = matrix_of_with(&eval, &cat.k_minus(), d)?;
    Ok(LadderReport {
        degree: d,
        dimension: m0.dim(),
        epsilon: s.epsilon(),
        kappa: kappa.map(|(a, b)| (a.to_string(), b.to_string())),
        plus_holds: m0.commutator(&kp) == kp,
        minus_holds: m0.commutator(&km) == km.neg(),
    })
}
