use proptest::prelude::*;
use urr_poly::{check_certificate, parse_poly, rat, OrderSpec, Point, Poly, RingCtx};

use super::*;

fn ring(names: &[&str]) -> RingCtx {
    RingCtx::new(names).unwrap()
}

fn p(s: &str, r: &RingCtx) -> Poly {
    parse_poly(s, r).unwrap()
}

#[test]
fn lex_basis_by_back_substitution() {
    let r = ring(&["x", "y"]);
    let gb = std_basis(&[p("x - y", &r), p("y - 1", &r)], &OrderSpec::lex(2)).unwrap();
    assert!(gb.is_reduced());
    assert_eq!(gb.generators(), &[p("x - 1", &r), p("y - 1", &r)]);
}

#[test]
fn single_generator_basis() {
    let r = ring(&["x", "y"]);
    for o in [OrderSpec::degrevlex(2), OrderSpec::lex(2), OrderSpec::local_degrevlex(2), OrderSpec::local_lex(2)] {
        let gb = std_basis(&[p("x", &r)], &o).unwrap();
        assert_eq!(gb.generators(), &[p("x", &r)]);
    }
}

#[test]
fn lex_elimination_leaves_pure_power() {
    let r = ring(&["y", "x"]);
    let gb = std_basis(&[p("y - x^2", &r), p("x^3", &r)], &OrderSpec::lex(2)).unwrap();
    let lms = gb.leading_monomials();
    assert!(lms.iter().any(|m| m.exponents() == [0, 3]));
    assert!(lms.iter().any(|m| m.exponents() == [1, 0]));
    assert!(gb.contains(&p("x^3", &r)).unwrap());
}

#[test]
fn local_unit_absorbs_factor() {
    let r = ring(&["x"]);
    let gb = std_basis(&[p("x - x^2", &r)], &OrderSpec::local_degrevlex(1)).unwrap();
    let w = mora_weak_nf(&p("x", &r), &gb).unwrap();
    assert!(w.nf.is_zero());
    assert_eq!(w.unit, p("1 - x", &r));
    // u·f = c·b
    assert_eq!(&w.unit * &p("x", &r), &w.cofactors[0] * &gb.generators()[0]);
}

#[test]
fn local_non_member_keeps_remainder() {
    let r = ring(&["x", "y"]);
    let gb = std_basis(&[p("x^2", &r), p("x*y", &r)], &OrderSpec::local_degrevlex(2)).unwrap();
    let w = mora_weak_nf(&p("x", &r), &gb).unwrap();
    assert_eq!(w.nf, p("x", &r));
    assert_eq!(member(&p("x", &r), &[p("x^2", &r), p("x*y", &r)], &OrderSpec::local_degrevlex(2), Some(&Point::origin(2))).unwrap(), Membership::NotIn);
}

#[test]
fn global_reduction_keeps_unit_one() {
    let r = ring(&["x", "y"]);
    let gb = std_basis(&[p("x", &r), p("y^2", &r)], &OrderSpec::degrevlex(2)).unwrap();
    let w = mora_weak_nf(&p("y^2", &r), &gb).unwrap();
    assert!(w.nf.is_zero());
    assert!(w.unit.is_one());
}

#[test]
fn circle_membership_identity() {
    let r = ring(&["x", "y"]);
    let gens = [p("x^2 + y^2 - 1", &r)];
    let f = p("(1+x)^2 - y^2 - x*((1+x)^2 + y^2)", &r);
    let m = member(&f, &gens, &OrderSpec::degrevlex(2), None).unwrap();
    let cert = m.cert().expect("member");
    assert!(cert.unit.is_one());
    assert!(cert.point.is_none());
    assert_eq!(cert.cofactors, vec![(p("-1 - x", &r), 0)]);
    assert!(check_certificate(cert, &gens));
}

#[test]
fn one_not_in_proper_ideal() {
    let r = ring(&["x"]);
    assert_eq!(member(&Poly::one(1), &[p("x", &r)], &OrderSpec::degrevlex(1), None).unwrap(), Membership::NotIn);
}

#[test]
fn local_membership_at_origin_has_unit() {
    let r = ring(&["x"]);
    let gens = [p("x - x^2", &r)];
    let m = member(&p("x", &r), &gens, &OrderSpec::local_degrevlex(1), Some(&Point::origin(1))).unwrap();
    let cert = m.cert().unwrap();
    assert_eq!(cert.unit, p("1 - x", &r));
    assert!(check_certificate(cert, &gens));
}

#[test]
fn membership_at_translated_point() {
    // Near 1 the ideal (x² - 1) is (x - 1); near -1 it is (x + 1).
    let r = ring(&["x"]);
    let gens = [p("x^2 - 1", &r)];
    let pt = Point::from_ints(&[1]);
    let m = member(&p("x - 1", &r), &gens, &OrderSpec::local_degrevlex(1), Some(&pt)).unwrap();
    let cert = m.cert().unwrap();
    assert_eq!(cert.point.as_ref(), Some(&pt));
    assert!(check_certificate(cert, &gens));
    let m0 = member(&p("x - 1", &r), &gens, &OrderSpec::local_degrevlex(1), Some(&Point::from_ints(&[-1]))).unwrap();
    assert_eq!(m0, Membership::NotIn);
}

#[test]
fn point_with_global_order_is_rejected() {
    let r = ring(&["x"]);
    let e = member(&p("x", &r), &[p("x", &r)], &OrderSpec::degrevlex(1), Some(&Point::origin(1)));
    assert!(matches!(e, Err(crate::Error::PreconditionViolated(_))));
}

#[test]
fn unit_ideal_reduces_everything() {
    let r = ring(&["x", "y"]);
    let gens = [p("x*y - 1", &r), p("x", &r)];
    let gb = std_basis(&gens, &OrderSpec::degrevlex(2)).unwrap();
    assert_eq!(gb.generators(), &[Poly::one(2)]);
    let m = member(&p("y^5 + 3", &r), &gens, &OrderSpec::degrevlex(2), None).unwrap();
    assert!(check_certificate(m.cert().unwrap(), &gens));
}

#[test]
fn truncated_normal_form_is_linear_and_truncated() {
    let r = ring(&["x", "y"]);
    let gb = std_basis(&[p("y - x^2 - y^2", &r)], &OrderSpec::local_degrevlex(2)).unwrap();
    let f = p("y + x + x^3", &r);
    let g = p("x*y - 2*x^2", &r);
    let nf = |h: &Poly| gb.truncated_normal_form(h, 4).unwrap();
    assert_eq!(nf(&(&f + &g)), &nf(&f) + &nf(&g));
    assert_eq!(nf(&f.scale(&rat::frac(3, 2))), nf(&f).scale(&rat::frac(3, 2)));
    assert!(nf(&f).total_degree().unwrap_or(0) < 4);
    // y ≡ x² + y² ≡ x² + x⁴ + ... so y reduces to x² modulo degree 4.
    assert_eq!(nf(&p("y", &r)), p("x^2", &r));
}

#[test]
fn degree_cap_is_enforced() {
    let r = ring(&["x", "y"]);
    let opts = BasisOptions { limits: crate::Limits { degree_cap: 3, ..Default::default() }, ..BasisOptions::reduced() };
    let e = std_basis_with(&[p("x^3 - y^2", &r), p("x^2*y - 1", &r)], &OrderSpec::lex(2), &opts);
    assert!(matches!(e, Err(crate::Error::LimitExceeded(_))));
}

#[test]
fn mixed_order_basis_satisfies_criterion() {
    let r = ring(&["t", "x", "y"]);
    let o = OrderSpec::parse("dp(t),ds(x,y)", r.names()).unwrap();
    let gb = std_basis(&[p("t*x - y", &r), p("x^2 - y^3 + t*y", &r)], &o).unwrap();
    assert!(gb.s_polynomials_reduce().unwrap());
}

fn small_poly(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -3i64..=3), 1..4).prop_map(move |ts| {
        Poly::from_terms(
            n,
            ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 3).map(|(e, c)| (urr_poly::Monomial::from_exponents(e), rat::int(c))),
        )
    })
}

fn orders(n: usize) -> Vec<OrderSpec> {
    vec![OrderSpec::degrevlex(n), OrderSpec::lex(n), OrderSpec::local_degrevlex(n), OrderSpec::local_lex(n)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bases_satisfy_buchberger_criterion(gens in prop::collection::vec(small_poly(3), 1..4), oi in 0usize..4) {
        let o = &orders(3)[oi];
        let gb = std_basis(&gens, o).unwrap();
        prop_assert!(gb.s_polynomials_reduce().unwrap());
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(small_poly(3), 1..4), rot in 0usize..3) {
        let o = OrderSpec::degrevlex(3);
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let a = std_basis(&gens, &o).unwrap();
        let b = std_basis(&shuffled, &o).unwrap();
        prop_assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn tracked_certificates_replay(gens in prop::collection::vec(small_poly(2), 1..3), mult in small_poly(2), oi in 0usize..4) {
        let o = &orders(2)[oi];
        let f = &gens[0] * &mult + gens.last().unwrap().clone();
        let point = if o.is_global() { None } else { Some(Point::origin(2)) };
        let m = member(&f, &gens, o, point.as_ref()).unwrap();
        let cert = m.cert().expect("combination of generators is a member");
        prop_assert!(check_certificate(cert, &gens));
    }

    #[test]
    fn mora_unit_is_nonzero_at_center(gens in prop::collection::vec(small_poly(2), 1..3), f in small_poly(2)) {
        let gb = std_basis(&gens, &OrderSpec::local_degrevlex(2)).unwrap();
        let w = mora_weak_nf(&f, &gb).unwrap();
        prop_assert_eq!(w.unit.constant_term(), rat::one());
        let mut rhs = w.nf.clone();
        for (c, b) in w.cofactors.iter().zip(gb.generators()) {
            rhs = rhs + c * b;
        }
        prop_assert_eq!(&w.unit * &f, rhs);
    }
}
