use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::clifford::{CliffordElement, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex, Rational};
use crate::group::{reflection_matrix, OrthogonalMatrix};
use crate::poly::{ExactDivisionError, XPolynomial};

use super::SpinorPolynomial;

/// Expression tree over the primitive linear operators.
///
/// Leaves act on the polynomial factor (derivatives, coordinate
/// multiplication, group action, difference quotients) or on the Clifford
/// factor (left multiplication). `Compose` applies its last factor first.
#[derive(Clone)]
pub enum OperatorExpr {
    Zero,
    Identity,
    /// ∂/∂x_i, zero-based.
    Partial(usize),
    /// Multiplication by x_i, zero-based.
    MultX(usize),
    GroupAction(OrthogonalMatrix),
    CliffordLeft(CliffordElement<RadicalComplex>, Signature),
    /// p ↦ (p - σ_α p) / ⟨divisor, x⟩. The divisor equals the root except in
    /// deliberately corrupted constructions.
    DunklDiff {
        root: [Rational; 3],
        reflection: OrthogonalMatrix,
        divisor: [Rational; 3],
    },
    Sum(Vec<Operator>),
    Compose(Vec<Operator>),
    Scale(ParamScalar, Operator),
    /// A labelled subtree; evaluators may cache its columns.
    Named(Arc<str>, Operator),
}

/// Shared handle to an [`OperatorExpr`].
#[derive(Clone)]
pub struct Operator(Arc<OperatorExpr>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

impl Operator {
    pub fn new(e: OperatorExpr) -> Self {
        Operator(Arc::new(e))
    }

    pub fn expr(&self) -> &OperatorExpr {
        &self.0
    }

    /// Stable identity of this node while it is alive.
    pub fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn zero() -> Self {
        Self::new(OperatorExpr::Zero)
    }

    pub fn identity() -> Self {
        Self::new(OperatorExpr::Identity)
    }

    pub fn partial(i: usize) -> Self {
        Self::new(OperatorExpr::Partial(i))
    }

    pub fn mult_x(i: usize) -> Self {
        Self::new(OperatorExpr::MultX(i))
    }

    pub fn group_action(m: OrthogonalMatrix) -> Self {
        Self::new(OperatorExpr::GroupAction(m))
    }

    pub fn clifford_left(a: CliffordElement<RadicalComplex>, s: Signature) -> Self {
        Self::new(OperatorExpr::CliffordLeft(a, s))
    }

    pub fn dunkl_diff(root: &[Rational; 3]) -> Self {
        Self::dunkl_diff_with_divisor(root, root)
    }

    pub fn dunkl_diff_with_divisor(root: &[Rational; 3], divisor: &[Rational; 3]) -> Self {
        Self::new(OperatorExpr::DunklDiff {
            root: root.clone(),
            reflection: reflection_matrix(root),
            divisor: divisor.clone(),
        })
    }

    pub fn scalar(c: ParamScalar) -> Self {
        Self::identity().scale(c)
    }

    pub fn scale(&self, c: ParamScalar) -> Self {
        Self::new(OperatorExpr::Scale(c, self.clone()))
    }

    pub fn scale_rc(&self, c: RadicalComplex) -> Self {
        self.scale(ParamScalar::constant(c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(ParamScalar::from_int(n))
    }

    pub fn sum(terms: impl IntoIterator<Item = Operator>) -> Self {
        let terms: Vec<Operator> = terms.into_iter().collect();
        match terms.len() {
            0 => Self::zero(),
            1 => terms.into_iter().next().unwrap(),
            _ => Self::new(OperatorExpr::Sum(terms)),
        }
    }

    /// Product `f1 f2 … fn`, applied right to left.
    pub fn compose(factors: impl IntoIterator<Item = Operator>) -> Self {
        let factors: Vec<Operator> = factors.into_iter().collect();
        match factors.len() {
            0 => Self::identity(),
            1 => factors.into_iter().next().unwrap(),
            _ => Self::new(OperatorExpr::Compose(factors)),
        }
    }

    pub fn then(&self, other: &Operator) -> Self {
        Self::compose([other.clone(), self.clone()])
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::compose((0..n).map(|_| self.clone()))
    }

    pub fn named(name: &str, body: Operator) -> Self {
        Self::new(OperatorExpr::Named(Arc::from(name), body))
    }

    pub fn name(&self) -> Option<&str> {
        match self.expr() {
            OperatorExpr::Named(n, _) => Some(n),
            _ => None,
        }
    }

    /// Number of nodes in the tree (shared subtrees counted each time).
    pub fn size(&self) -> usize {
        match self.expr() {
            OperatorExpr::Sum(v) | OperatorExpr::Compose(v) => 1 + v.iter().map(Operator::size).sum::<usize>(),
            OperatorExpr::Scale(_, a) | OperatorExpr::Named(_, a) => 1 + a.size(),
            _ => 1,
        }
    }

    /// Evaluates the operator on `v` without caching.
    pub fn apply(&self, v: &SpinorPolynomial) -> Result<SpinorPolynomial, ExactDivisionError> {
        apply_with(self, v, &mut |op, v| op.apply(v))
    }
}

/// One evaluation step. Composite nodes recurse through `recurse`, so a
/// caching evaluator can intercept them.
pub(crate) fn apply_with(
    op: &Operator,
    v: &SpinorPolynomial,
    recurse: &mut dyn FnMut(&Operator, &SpinorPolynomial) -> Result<SpinorPolynomial, ExactDivisionError>,
) -> Result<SpinorPolynomial, ExactDivisionError> {
    Ok(match op.expr() {
        OperatorExpr::Zero => SpinorPolynomial::zero(),
        OperatorExpr::Identity => v.clone(),
        OperatorExpr::Partial(i) => v.map_poly(|p| p.partial(*i)),
        OperatorExpr::MultX(i) => v.map_poly(|p| p.times_var(*i)),
        OperatorExpr::GroupAction(m) => v.map_poly(|p| p.apply_matrix(m)),
        OperatorExpr::CliffordLeft(a, s) => v.clifford_left(a, *s),
        OperatorExpr::DunklDiff {
            reflection, divisor, ..
        } => v.try_map_poly(|p| difference_quotient(p, reflection, divisor))?,
        OperatorExpr::Sum(terms) => {
            let mut out = SpinorPolynomial::zero();
            for t in terms {
                out.add_scaled(&recurse(t, v)?, &ParamScalar::one());
            }
            out
        }
        OperatorExpr::Compose(factors) => {
            let mut cur = v.clone();
            for f in factors.iter().rev() {
                if cur.is_zero() {
                    break;
                }
                cur = recurse(f, &cur)?;
            }
            cur
        }
        OperatorExpr::Scale(c, a) => recurse(a, v)?.scale(c),
        OperatorExpr::Named(_, a) => recurse(a, v)?,
    })
}

fn difference_quotient(
    p: &XPolynomial,
    reflection: &OrthogonalMatrix,
    divisor: &[Rational; 3],
) -> Result<XPolynomial, ExactDivisionError> {
    let diff = p - &p.apply_matrix(reflection);
    diff.divide_by_linear_form(divisor)
}

/// `ab ∓ ba`, unsimplified.
pub fn bracket(a: &Operator, b: &Operator, kind: BracketKind) -> Operator {
    let ab = Operator::compose([a.clone(), b.clone()]);
    let ba = Operator::compose([b.clone(), a.clone()]);
    match kind {
        BracketKind::Commutator => ab - ba,
        BracketKind::Anticommutator => ab + ba,
    }
}

pub fn commutator(a: &Operator, b: &Operator) -> Operator {
    bracket(a, b, BracketKind::Commutator)
}

pub fn anticommutator(a: &Operator, b: &Operator) -> Operator {
    bracket(a, b, BracketKind::Anticommutator)
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        Operator::sum([self, rhs])
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        Operator::sum([self, rhs.scale_int(-1)])
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_int(-1)
    }
}

impl Mul for Operator {
    type Output = Operator;
    /// Composition: `(a * b)(v) = a(b(v))`.
    fn mul(self, rhs: Operator) -> Operator {
        Operator::compose([self, rhs])
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.clone() + rhs.clone()
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.clone() - rhs.clone()
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr() {
            OperatorExpr::Zero => write!(f, "0"),
            OperatorExpr::Identity => write!(f, "1"),
            OperatorExpr::Partial(i) => write!(f, "d{}", i + 1),
            OperatorExpr::MultX(i) => write!(f, "x{}", i + 1),
            OperatorExpr::GroupAction(m) => write!(f, "G{m}"),
            OperatorExpr::CliffordLeft(a, _) => write!(f, "C[{a}]"),
            OperatorExpr::DunklDiff { root, .. } => write!(f, "Q({},{},{})", root[0], root[1], root[2]),
            OperatorExpr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            OperatorExpr::Compose(v) => {
                let parts: Vec<String> = v.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
            OperatorExpr::Scale(c, a) => write!(f, "({c})*{a}"),
            OperatorExpr::Named(n, _) => write!(f, "{n}"),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
