//! Operators on Clifford-valued polynomials: Dunkl and Dirac operators and
//! the symmetries built from them.

mod catalogue;
mod eval;
mod expr;
mod spinor;

pub use catalogue::{
    o_pm_coefficient, o_zero_coefficient, Catalogue, DunklMutation, OneIndexScaling, G2_ONLY_NAMES, OPERATOR_NAMES,
};
pub use eval::{
    basis_of_degree, basis_up_to_degree, equal_on_basis, equal_up_to_degree, equal_up_to_degree_with, Comparison,
    Evaluator, Verdict, Witness,
};
pub use expr::{anticommutator, bracket, commutator, BracketKind, Operator, OperatorExpr};
pub use spinor::SpinorPolynomial;
