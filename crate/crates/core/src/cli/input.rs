//! Spinor-polynomial literals such as `x1^2*e12 - 1/2*x3 + kappa1*e1`.
//!
//! ```text
//! sum    := prod (('+' | '-') prod)*
//! prod   := power (['*'] power)*
//! power  := atom ('^' INT)?
//! atom   := '-' power | INT ['/' INT] | SCALAR | x1 | x2 | x3 | BLADE | '(' sum ')'
//! ```

use crate::clifford::{Blade, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex};
use crate::operators::SpinorPolynomial;
use crate::poly::XPolynomial;

use super::parse::{tokenize, Cursor, ParseError, ScalarName, Tok};

/// Parses a spinor polynomial; blade products use signature `s`.
pub fn parse_spinor(input: &str, s: Signature) -> Result<SpinorPolynomial, ParseError> {
    let mut c = Cursor::new(tokenize(input, "+-*/^()")?);
    let v = sum(&mut c, s)?;
    if *c.peek() != Tok::End {
        return Err(c.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(v)
}

fn sum(c: &mut Cursor, s: Signature) -> Result<SpinorPolynomial, ParseError> {
    let mut acc = prod(c, s)?;
    loop {
        let minus = match c.peek() {
            Tok::Sym('+') => false,
            Tok::Sym('-') => true,
            _ => return Ok(acc),
        };
        c.bump();
        let t = prod(c, s)?;
        acc = if minus { acc.sub(&t) } else { acc.add(&t) };
    }
}

fn starts_atom(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::Sym('('))
}

fn prod(c: &mut Cursor, s: Signature) -> Result<SpinorPolynomial, ParseError> {
    let mut acc = power(c, s)?;
    loop {
        if c.eat('*') || starts_atom(c.peek()) {
            acc = acc.mul(&power(c, s)?, s);
        } else {
            return Ok(acc);
        }
    }
}

fn power(c: &mut Cursor, s: Signature) -> Result<SpinorPolynomial, ParseError> {
    let base = atom(c, s)?;
    if !c.eat('^') {
        return Ok(base);
    }
    let at = c.position();
    let Tok::Int(n) = c.peek().clone() else {
        return Err(c.error(&["an exponent"]));
    };
    c.bump();
    let n: u32 = n.parse().map_err(|_| ParseError {
        position: at,
        expected: vec!["a small exponent".into()],
        found: format!("'{n}'"),
    })?;
    let mut out = constant(ParamScalar::one());
    for _ in 0..n {
        out = out.mul(&base, s);
    }
    Ok(out)
}

fn constant(c: ParamScalar) -> SpinorPolynomial {
    SpinorPolynomial::scalar(XPolynomial::constant(c))
}

fn atom(c: &mut Cursor, s: Signature) -> Result<SpinorPolynomial, ParseError> {
    match c.peek().clone() {
        Tok::Sym('-') => {
            c.bump();
            Ok(power(c, s)?.scale(&ParamScalar::from_int(-1)))
        }
        Tok::Sym('(') => {
            c.bump();
            let v = sum(c, s)?;
            c.expect(')')?;
            Ok(v)
        }
        Tok::Int(_) => Ok(constant(ParamScalar::rational(c.rational()?))),
        Tok::Ident(name) => {
            let at = c.position();
            c.bump();
            if let Some(n) = ScalarName::parse(&name) {
                return Ok(constant(scalar_value(n)));
            }
            if let Some(i) = ["x1", "x2", "x3"].iter().position(|v| *v == name) {
                return Ok(SpinorPolynomial::scalar(XPolynomial::var(i)));
            }
            if let Some(b) = Blade::parse(&name).filter(|b| *b != Blade::SCALAR) {
                return Ok(SpinorPolynomial::from_component(b, XPolynomial::one()));
            }
            Err(ParseError {
                position: at,
                expected: vec!["x1, x2, x3".into(), "a blade e1..e123".into(), "a scalar".into()],
                found: format!("'{name}'"),
            })
        }
        _ => Err(c.error(&["a term"])),
    }
}

/// Symbolic value of a scalar name.
pub(crate) fn scalar_value(n: ScalarName) -> ParamScalar {
    match n {
        ScalarName::I => RadicalComplex::i().into(),
        ScalarName::Sqrt2 => RadicalComplex::sqrt2().into(),
        ScalarName::Sqrt3 => RadicalComplex::sqrt3().into(),
        ScalarName::Sqrt6 => RadicalComplex::sqrt6().into(),
        ScalarName::Kappa1 => ParamScalar::kappa1(),
        ScalarName::Kappa2 => ParamScalar::kappa2(),
    }
}
