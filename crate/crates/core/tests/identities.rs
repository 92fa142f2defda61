use qmpl_core::arith::{int, rat, with_term_budget, Frac, Symbol};
use qmpl_core::identities::*;
use qmpl_core::multipolylog::{Index, TVector};
use qmpl_core::ncalg::NCPoly;
use qmpl_core::qcore::QValue;

fn idx(p: &[u32]) -> Index {
    Index::new(p.to_vec()).unwrap()
}

#[test]
fn sum_examples() {
    let q = QValue::Symbolic;
    let s = idx(&[1]);
    let t = TVector::symbolic(1);
    assert_eq!(
        m_sum_q(&q, 1, &s, &t).unwrap(),
        NCPoly::monomial(1, 0, Frac::var(Symbol::T(1)), &q)
    );
    assert!(m_sum_q(&q, 0, &s, &t).unwrap().is_zero());
    // x^2 + (1 + q) xy
    let expected = NCPoly::from_terms(
        [((2, 0), Frac::one()), ((1, 1), &Frac::one() + &Frac::var(Symbol::Q))],
        &q,
    );
    assert_eq!(m_sum_q(&q, 2, &Index::empty(), &TVector::default()).unwrap(), expected);
}

#[test]
fn nested_side_examples() {
    let q = QValue::Symbolic;
    for (n, s) in [(2, idx(&[1])), (3, idx(&[2]))] {
        let t = TVector::symbolic(1);
        assert_eq!(m_rhs_main(&q, n, &s, &t).unwrap(), m_sum_q(&q, n, &s, &t).unwrap());
    }
}

#[test]
fn corollary_side_examples() {
    let s = idx(&[2, 1]);
    let t = TVector::symbolic(2);
    let first = m_rhs_cor(1, &s, &t).unwrap();
    assert_eq!(first, qmpl_core::ncalg::CommPoly::monomial(1, 0, Frac::var(Symbol::T(2))));
}

#[test]
fn small_verdicts() {
    let ex = Check::exact();
    assert!(verify_mainthm(1, &idx(&[1]), &ex).passed());
    for n in 1..=4 {
        assert!(verify_mainthm(n, &idx(&[1, 1]), &ex).passed());
    }
    assert!(verify_lemma22(1, &idx(&[1]), &ex).passed());
    assert!(verify_lemma22(2, &idx(&[2]), &ex).passed());
    assert!(verify_lemma22(2, &idx(&[1, 1]), &ex).passed());
    assert!(verify_gencev(1, &idx(&[3]), &rat(2, 1), &rat(1, 3), &ex).passed());
    assert!(verify_mneimneh(1, &rat(1, 3), &ex).passed());
    assert!(verify_boyadzhiev(1, &int(1), &int(1), &ex).passed());
    assert!(verify_ss1(1, &idx(&[1]), &ex).passed());
    assert!(verify_ss2(1, &idx(&[1]), &ex).passed());
    assert!(verify_cauchy_binomial(3, &ex).passed());
    assert!(verify_bradley(3, 2, &ex).passed());
}

#[test]
fn short_sides_are_shown() {
    let v = verify_mainthm(1, &idx(&[1, 2]), &Check::exact());
    assert_eq!(v.equation.as_deref(), Some("(t2)*x = (t2)*x"));
}

#[test]
fn dropped_tail_is_caught() {
    let v = verify_mainthm_without_tail(2, &idx(&[1]), &Check::exact());
    assert!(!v.passed());
    match v.witness.unwrap() {
        Witness::Mismatch { location, .. } => assert_eq!(location, "x^0*y^2"),
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn every_identity_notices_a_mutation() {
    let m = Check::exact().mutated(11);
    let s = idx(&[1, 2]);
    let verdicts = [
        verify_schutzenberger(3, &m),
        verify_lemma21(4, 2, 2, &m),
        verify_lemma22(3, &s, &m),
        verify_mainthm(3, &s, &m),
        verify_corollary(3, &s, &m),
        verify_gencev(3, &s, &rat(1, 2), &rat(1, 3), &m),
        verify_mneimneh(3, &rat(2, 5), &m),
        verify_boyadzhiev(3, &int(2), &int(-1), &m),
        verify_euler(3, &m),
        verify_ss1(3, &s, &m),
        verify_ss2(3, &s, &m),
        verify_inversion(3, &s, &m),
        verify_cauchy_binomial(3, &m),
        verify_lemma41_i(3, &m),
        verify_lemma41_ii(2, 2, &m),
        verify_cauchy_bm(3, &s, &m),
        verify_bradley(3, 2, &m),
    ];
    for v in verdicts {
        assert!(!v.passed(), "{} survived mutation", v.identity);
        assert!(v.witness.is_some());
        assert_eq!(v.param("mutation"), Some("11"));
    }
}

#[test]
fn eval_mode_agrees_with_exact_mode() {
    let plan = EvalPlan::with_defaults(5, 6, 3);
    let ev = Check::eval(plan);
    let s = idx(&[2, 1]);
    for v in [
        verify_mainthm(4, &s, &ev),
        verify_lemma22(3, &s, &ev),
        verify_corollary(3, &s, &ev),
        verify_ss1(3, &s, &ev),
        verify_cauchy_bm(3, &s, &ev),
        verify_lemma41_ii(2, 3, &ev),
    ] {
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.mode, "eval");
        assert_eq!(v.param("seed"), Some("5"));
    }
}

#[test]
fn eval_failures_name_the_point() {
    let plan = EvalPlan::with_defaults(1, 3, 2);
    let first = plan.points[0].to_string();
    let v = verify_mainthm(2, &idx(&[1]), &Check::eval(plan).mutated(0));
    match v.witness.unwrap() {
        Witness::Mismatch { point, .. } => assert_eq!(point, Some(first)),
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn exhausted_budget_becomes_a_failing_verdict() {
    let v = with_term_budget(10, || verify_mainthm(5, &idx(&[1, 1]), &Check::exact()));
    assert!(!v.passed());
    assert!(matches!(v.witness, Some(Witness::Error { .. })));
}
