use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::Blade;
use crate::exactfield::ParamScalar;
use crate::poly::{ExactDivisionError, Monomial};

use super::expr::apply_with;
use super::{Operator, OperatorExpr, SpinorPolynomial};

/// Basis elements x^m e_B of polynomial degree exactly `d`: monomials in
/// descending graded-lex order, blades by (grade, lex) within each monomial.
pub fn basis_of_degree(d: u32) -> Vec<(Monomial, Blade)> {
    Monomial::of_degree(d as u16)
        .into_iter()
        .flat_map(|m| Blade::ALL.into_iter().map(move |b| (m, b)))
        .collect()
}

/// All basis elements with degree ≤ `n`, degree-ascending.
pub fn basis_up_to_degree(n: u32) -> Vec<(Monomial, Blade)> {
    (0..=n).flat_map(basis_of_degree).collect()
}

type ColumnKey = (usize, Monomial, Blade);

/// Evaluates operators with memoized columns for `Named` nodes.
///
/// A named operator applied to `Σ c_j b_j` is assembled from its cached
/// images of the basis elements `b_j`. The evaluator keeps every named node
/// it has seen alive, so node identities stay unique for its lifetime.
#[derive(Default)]
pub struct Evaluator {
    columns: DashMap<ColumnKey, Arc<SpinorPolynomial>>,
    pinned: DashMap<usize, Operator>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, op: &Operator, v: &SpinorPolynomial) -> Result<SpinorPolynomial, ExactDivisionError> {
        if let OperatorExpr::Named(_, body) = op.expr() {
            let id = op.node_id();
            self.pinned.entry(id).or_insert_with(|| op.clone());
            let mut out = SpinorPolynomial::zero();
            for (m, b, c) in v.terms() {
                let col = self.column(id, body, m, b)?;
                out.add_scaled(&col, c);
            }
            return Ok(out);
        }
        apply_with(op, v, &mut |o, w| self.apply(o, w))
    }

    fn column(
        &self,
        id: usize,
        body: &Operator,
        m: Monomial,
        b: Blade,
    ) -> Result<Arc<SpinorPolynomial>, ExactDivisionError> {
        let key = (id, m, b);
        if let Some(c) = self.columns.get(&key) {
            return Ok(c.clone());
        }
        // computed outside the map lock; a concurrent duplicate is harmless
        let col = Arc::new(self.apply(body, &SpinorPolynomial::basis(m, b))?);
        self.columns.insert(key, col.clone());
        Ok(col)
    }
}

/// Failing basis element together with what went wrong there.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub monomial: String,
    pub blade: String,
    /// Nonzero residual (lhs - rhs applied to the basis element).
    pub residual: Option<String>,
    /// Evaluation error, e.g. an inexact difference quotient.
    pub error: Option<String>,
    #[serde(skip)]
    pub residual_value: Option<SpinorPolynomial>,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Result of [`equal_up_to_degree`].
#[derive(Debug, Clone)]
pub struct Comparison {
    pub verdict: Verdict,
    pub basis_size: usize,
}

/// Checks `a = b` on every x^m e_B with |m| ≤ `n`, in parallel; the
/// reported witness is the first failure in basis order.
pub fn equal_up_to_degree(a: &Operator, b: &Operator, n: u32) -> Comparison {
    equal_up_to_degree_with(&Evaluator::new(), a, b, n)
}

pub fn equal_up_to_degree_with(eval: &Evaluator, a: &Operator, b: &Operator, n: u32) -> Comparison {
    equal_on_basis(eval, a, b, &basis_up_to_degree(n))
}

/// Checks `a = b` on the given basis elements only; the witness is the
/// first failure in the order given.
pub fn equal_on_basis(eval: &Evaluator, a: &Operator, b: &Operator, basis: &[(Monomial, Blade)]) -> Comparison {
    let failure = basis
        .par_iter()
        .map(|&(m, bl)| check_basis_element(eval, a, b, m, bl))
        .find_first(Option::is_some)
        .flatten();
    Comparison {
        verdict: failure.map_or(Verdict::Pass, Verdict::Fail),
        basis_size: basis.len(),
    }
}

fn check_basis_element(eval: &Evaluator, a: &Operator, b: &Operator, m: Monomial, bl: Blade) -> Option<Witness> {
    let v = SpinorPolynomial::basis(m, bl);
    let witness = |residual: Option<SpinorPolynomial>, error: Option<String>| Witness {
        monomial: m.to_string(),
        blade: bl.name(),
        residual: residual.as_ref().map(|r| r.to_string()),
        error,
        residual_value: residual,
    };
    let lhs = match eval.apply(a, &v) {
        Ok(x) => x,
        Err(e) => return Some(witness(None, Some(e.to_string()))),
    };
    let rhs = match eval.apply(b, &v) {
        Ok(x) => x,
        Err(e) => return Some(witness(None, Some(e.to_string()))),
    };
    let mut diff = lhs;
    diff.add_scaled(&rhs, &ParamScalar::from_int(-1));
    if diff.is_zero() {
        None
    } else {
        Some(witness(Some(diff), None))
    }
}
