//! Cross-module invariants as proptest properties.

use proptest::prelude::*;

use dunkl_sym::cli::parse_spinor;
use dunkl_sym::clifford::{Blade, CliffordElement, Signature};
use dunkl_sym::exactfield::{ParamScalar, RadicalComplex, Rational};
use dunkl_sym::group::{reflection_matrix, RootSystemPreset};
use dunkl_sym::matrixrep::matrix_of;
use dunkl_sym::operators::{Catalogue, Operator, SpinorPolynomial};
use dunkl_sym::poly::{Monomial, XPolynomial};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d))
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn radical() -> impl Strategy<Value = RadicalComplex> {
    proptest::collection::vec(prop_oneof![Just(Rational::zero()), rational()], 8)
        .prop_map(|v| RadicalComplex::from_coords(std::array::from_fn(|k| v[k].clone())))
}

fn param() -> impl Strategy<Value = ParamScalar> {
    proptest::collection::vec(((0u16..3, 0u16..3), radical()), 0..3).prop_map(ParamScalar::from_terms)
}

fn signature() -> impl Strategy<Value = Signature> {
    prop_oneof![Just(Signature::PLUS), Just(Signature::MINUS)]
}

fn clifford() -> impl Strategy<Value = CliffordElement<RadicalComplex>> {
    proptest::collection::vec((0u8..8, radical()), 0..4).prop_map(|terms| {
        let mut c = CliffordElement::zero();
        for (b, v) in terms {
            c.add_term(Blade::from_mask(b), v);
        }
        c
    })
}

fn monomial(max: u16) -> impl Strategy<Value = Monomial> {
    (0..=max, 0..=max, 0..=max).prop_map(|(a, b, c)| Monomial::new(a, b, c))
}

fn polynomial() -> impl Strategy<Value = XPolynomial> {
    proptest::collection::vec((monomial(2), rational()), 0..5).prop_map(|terms| {
        let mut p = XPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &ParamScalar::rational(c));
        }
        p
    })
}

fn spinor() -> impl Strategy<Value = SpinorPolynomial> {
    proptest::collection::vec((monomial(2), 0u8..8, param()), 0..5).prop_map(|terms| {
        let mut v = SpinorPolynomial::zero();
        for (m, b, c) in terms {
            v.add_term(m, Blade::from_mask(b), &c);
        }
        v
    })
}

/// Homogeneous spinor of degree `d` with rational coefficients.
fn homogeneous(d: u16) -> impl Strategy<Value = SpinorPolynomial> {
    let monos = Monomial::of_degree(d);
    proptest::collection::vec((proptest::sample::select(monos), 0u8..8, rational()), 1..4).prop_map(|terms| {
        let mut v = SpinorPolynomial::zero();
        for (m, b, c) in terms {
            v.add_term(m, Blade::from_mask(b), &ParamScalar::rational(c));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in big_rational(), b in big_rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn radical_field_laws(a in radical(), b in radical(), c in radical()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        match a.inverse() {
            None => prop_assert!(a.is_zero()),
            Some(inv) => prop_assert!((&a * &inv).is_one()),
        }
    }

    #[test]
    fn galois_maps_are_automorphisms(a in radical(), b in radical(), mask in 0usize..8) {
        prop_assert_eq!((&a * &b).galois(mask), &a.galois(mask) * &b.galois(mask));
        prop_assert_eq!((&a + &b).galois(mask), &a.galois(mask) + &b.galois(mask));
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn instantiation_is_a_ring_homomorphism(p in param(), q in param(), k1 in rational(), k2 in rational()) {
        prop_assert_eq!((&p * &q).instantiate(&k1, &k2), &p.instantiate(&k1, &k2) * &q.instantiate(&k1, &k2));
        prop_assert_eq!((&p + &q).instantiate(&k1, &k2), &p.instantiate(&k1, &k2) + &q.instantiate(&k1, &k2));
    }

    #[test]
    fn clifford_product_is_associative(a in clifford(), b in clifford(), c in clifford(), s in signature()) {
        prop_assert_eq!(a.mul(&b, s).mul(&c, s), a.mul(&b.mul(&c, s), s));
    }

    #[test]
    fn difference_quotients_are_exact(p in polynomial(), k in 0usize..6, a2 in any::<bool>()) {
        let preset = if a2 { RootSystemPreset::a2() } else { RootSystemPreset::g2() };
        let alpha = &preset.roots[k % preset.roots.len()].vector;
        let s = reflection_matrix(alpha);
        let diff = &p - &p.apply_matrix(&s);
        let q = diff.divide_by_linear_form(alpha).unwrap();
        prop_assert_eq!(&q * &XPolynomial::linear_form(alpha), diff);
        prop_assert_eq!(p.apply_matrix(&s).apply_matrix(&s), p);
    }

    #[test]
    fn operators_are_linear(v in spinor(), w in spinor(), c in param(), s in signature(), which in 0usize..5) {
        let cat = Catalogue::symbolic(&RootSystemPreset::g2(), s);
        let op = [cat.dirac(), cat.o_zero(), cat.two_index(1, 3), cat.k_minus(), cat.lift(4)][which].clone();
        let lhs = op.apply(&v.scale(&c).add(&w)).unwrap();
        let rhs = op.apply(&v).unwrap().scale(&c).add(&op.apply(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dunkl_operators_lower_degree(v in homogeneous(3), i in 1usize..=3, s in signature()) {
        let cat = Catalogue::symbolic(&RootSystemPreset::g2(), s);
        let r = cat.dunkl(i).apply(&v).unwrap();
        prop_assert!(r.is_zero() || r.is_homogeneous_of(2));
    }

    #[test]
    fn symmetries_preserve_degree(v in homogeneous(2), s in signature(), which in 0usize..4) {
        let cat = Catalogue::symbolic(&RootSystemPreset::a2(), s);
        let op = [cat.one_index(2), cat.two_index(2, 3), cat.three_index(), cat.o_plus()][which].clone();
        let r = op.apply(&v).unwrap();
        prop_assert!(r.is_zero() || r.is_homogeneous_of(2));
    }

    #[test]
    fn spinor_display_round_trips(v in spinor(), s in signature()) {
        prop_assert_eq!(parse_spinor(&v.to_string(), s).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn matrices_respect_composition(a in 0usize..5, b in 0usize..5, d in 0u32..2, s in signature()) {
        let cat = Catalogue::symbolic(&RootSystemPreset::g2(), s);
        let ops: [Operator; 5] = [cat.o_zero(), cat.o_plus(), cat.two_index(1, 2), cat.three_index(), cat.lift(2)];
        let (x, y) = (&ops[a], &ops[b]);
        let mx = matrix_of(x, d).unwrap();
        let my = matrix_of(y, d).unwrap();
        prop_assert_eq!(matrix_of(&(x * y), d).unwrap(), mx.mul(&my));
        prop_assert!(mx.commutator(&my).trace().is_zero());
    }
}
