use proptest::prelude::*;

use qmpl_core::arith::{rat, Assignment, Frac, Monomial, SparsePoly, Symbol};
use qmpl_core::ncalg::{CommPoly, NCPoly};
use qmpl_core::qcore::{q_int, QValue};

const CASES: u32 = 256;

fn small_rat() -> impl Strategy<Value = qmpl_core::arith::Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = qmpl_core::arith::Rational> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![Just(Symbol::Q), Just(Symbol::T(1)), Just(Symbol::T(2)), Just(Symbol::A)]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((symbol(), 0u32..=3), 0..=3).prop_map(Monomial::from_pairs)
}

fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((monomial(), small_rat()), 0..=4).prop_map(SparsePoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = SparsePoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Assignment> {
    prop::collection::vec(nonzero_rat(), 4).prop_map(|v| {
        [Symbol::Q, Symbol::T(1), Symbol::T(2), Symbol::A].into_iter().zip(v).collect()
    })
}

/// Fractions whose denominators are products of q-integers, or general polynomials.
fn frac() -> impl Strategy<Value = Frac> {
    let qden = (poly(), prop::collection::vec(1u32..=5, 0..=2)).prop_map(|(n, ks)| {
        let den = ks.iter().fold(SparsePoly::one(), |acc, &k| &acc * &q_int(k));
        Frac::new(n, den).unwrap()
    });
    let general = (poly(), nonzero_poly()).prop_map(|(n, d)| Frac::new(n, d).unwrap());
    prop_oneof![qden, general]
}

fn qint_frac() -> impl Strategy<Value = Frac> {
    let num = prop::collection::vec(((0u32..=3), (0u32..=2), small_rat()), 0..=3).prop_map(|ts| {
        SparsePoly::from_terms(ts.into_iter().map(|(e, f, c)| {
            (Monomial::from_pairs(vec![(Symbol::Q, e), (Symbol::T(1), f)]), c)
        }))
    });
    (num, prop::collection::vec(1u32..=5, 0..=2)).prop_map(|(n, ks)| {
        let den = ks.iter().fold(SparsePoly::one(), |acc, &k| &acc * &q_int(k));
        Frac::new(n, den).unwrap()
    })
}

fn ncpoly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), qint_frac()), 0..=3)
        .prop_map(|ts| NCPoly::from_terms(ts, &QValue::Symbolic))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn addition_is_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn multiplication_commutes(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_is_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn no_zero_coefficients(a in poly(), b in poly()) {
        for p in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(p.terms().all(|(_, c)| *c != rat(0, 1)));
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in point()) {
        let ea = a.eval(&at).unwrap();
        let eb = b.eval(&at).unwrap();
        prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&at).unwrap(), &ea + &eb);
    }

    #[test]
    fn frac_eq_is_reflexive_and_symmetric(a in frac(), b in frac()) {
        prop_assert!(a.frac_eq(&a));
        prop_assert_eq!(a.frac_eq(&b), b.frac_eq(&a));
    }

    #[test]
    fn frac_eq_is_transitive(a in frac(), k in nonzero_poly(), l in nonzero_poly()) {
        // a, a*k/k and a*k*l/(k*l) are three representations of one element.
        let b = Frac::new(a.num() * &k, &a.den() * &k).unwrap();
        let c = Frac::new(b.num() * &l, &b.den() * &l).unwrap();
        prop_assert!(a.frac_eq(&b) && b.frac_eq(&c));
        prop_assert!(a.frac_eq(&c));
    }

    #[test]
    fn frac_equality_matches_cross_multiplication(a in frac(), b in frac()) {
        let cross = a.num() * &b.den() == b.num() * &a.den();
        prop_assert_eq!(a.frac_eq(&b), cross);
    }

    #[test]
    fn frac_field_laws(a in frac(), b in frac(), c in frac()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn frac_evaluation_is_a_homomorphism(a in frac(), b in frac(), at in point()) {
        if let (Ok(ea), Ok(eb)) = (a.eval(&at), b.eval(&at)) {
            prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&at).unwrap(), &ea + &eb);
        }
    }

    #[test]
    fn limit_commutes_with_field_operations(a in qint_frac(), b in qint_frac()) {
        let la = a.limit_q1().unwrap();
        let lb = b.limit_q1().unwrap();
        prop_assert_eq!((&a + &b).limit_q1().unwrap(), &la + &lb);
        prop_assert_eq!((&a - &b).limit_q1().unwrap(), &la - &lb);
        prop_assert_eq!((&a * &b).limit_q1().unwrap(), &la * &lb);
    }

    #[test]
    fn nc_multiplication_is_associative(a in ncpoly(), b in ncpoly(), c in ncpoly()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn nc_multiplication_distributes(a in ncpoly(), b in ncpoly(), c in ncpoly()) {
        prop_assert_eq!(a.mul(&(&b + &c)).unwrap(), &a.mul(&b).unwrap() + &a.mul(&c).unwrap());
        prop_assert_eq!((&a + &b).mul(&c).unwrap(), &a.mul(&c).unwrap() + &b.mul(&c).unwrap());
    }

    #[test]
    fn nc_limit_is_a_homomorphism(a in ncpoly(), b in ncpoly()) {
        let prod = a.mul(&b).unwrap().limit_q1().unwrap();
        let expected: CommPoly = a.limit_q1().unwrap().mul(&b.limit_q1().unwrap()).unwrap();
        prop_assert_eq!(prod, expected);
        prop_assert_eq!((&a + &b).limit_q1().unwrap(), &a.limit_q1().unwrap() + &b.limit_q1().unwrap());
    }
}
