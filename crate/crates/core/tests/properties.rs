use num_traits::Zero;
use proptest::prelude::*;
use riordan_core::exec::Strategy as Exec;
use riordan_core::gammatool::{b_from_gamma_egf, b_from_gamma_ogf, b_scale, companion_from_gamma, eta_h_laurent, f_scale, GammaSpec};
use riordan_core::pseudo::{b_from_f, b_from_half, b_from_matrix_with, canonical_root, g_family, half_from_b, BSequence, Method};
use riordan_core::ratsolve::{b_equation, b_from_rational_cheb, r_poly, solve_series_root, symmetrize, RationalSpec};
use riordan_core::rational::{frac, q, Q};
use riordan_core::registry::lookup;
use riordan_core::riordan::{Flavor, RiordanArray};
use riordan_core::verify::{arrays_agree, root_reconstructs};
use riordan_core::{BivariatePoly, LaurentPoly, Series};

const PREC: usize = 10;

fn coeffs(len: usize) -> impl proptest::strategy::Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len)
}

fn series() -> impl proptest::strategy::Strategy<Value = Series> {
    coeffs(PREC + 1).prop_map(|c| Series::from_ints(&c))
}

fn unit() -> impl proptest::strategy::Strategy<Value = Series> {
    coeffs(PREC).prop_map(|c| {
        let mut v = vec![1];
        v.extend(c);
        Series::from_ints(&v)
    })
}

fn order_one() -> impl proptest::strategy::Strategy<Value = Series> {
    (prop::bool::ANY, coeffs(PREC - 1)).prop_map(|(neg, c)| {
        let mut v = vec![0, if neg { -1 } else { 1 }];
        v.extend(c);
        Series::from_ints(&v)
    })
}

fn array(flavor: Flavor) -> impl proptest::strategy::Strategy<Value = RiordanArray> {
    (unit(), order_one()).prop_map(move |(g, f)| RiordanArray::new(g, f, flavor).unwrap())
}

fn flavor() -> impl proptest::strategy::Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Ordinary), Just(Flavor::Exponential)]
}

fn any_array() -> impl proptest::strategy::Strategy<Value = RiordanArray> {
    flavor().prop_flat_map(array)
}

fn laurent(lo: i64, hi: i64) -> impl proptest::strategy::Strategy<Value = LaurentPoly> {
    prop::collection::vec(-3i64..=3, (hi - lo + 1) as usize)
        .prop_map(move |c| LaurentPoly::from_terms(c.into_iter().enumerate().map(|(i, x)| (lo + i as i64, q(x)))))
}

fn monic(deg: usize) -> impl proptest::strategy::Strategy<Value = LaurentPoly> {
    prop::collection::vec(-3i64..=3, deg).prop_map(|c| {
        let mut v = vec![q(1)];
        v.extend(c.into_iter().map(q));
        LaurentPoly::from_coeffs(&v)
    })
}

fn nonzero_q() -> impl proptest::strategy::Strategy<Value = Q> {
    (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=2).prop_map(|(a, b)| frac(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.sub(&a), Series::zero(PREC));
    }

    #[test]
    fn reciprocal_and_roots(u in unit()) {
        prop_assert_eq!(u.mul(&u.recip().unwrap()), Series::one(PREC));
        let sq = u.square();
        prop_assert_eq!(sq.sqrt().unwrap().square(), sq);
        let shifted = u.add_constant(&q(-1));
        prop_assert_eq!(shifted.exp().unwrap().log().unwrap(), shifted);
    }

    #[test]
    fn compositional_inverse(f in order_one()) {
        let inv = f.comp_inverse().unwrap();
        prop_assert_eq!(&inv, &f.comp_inverse_lagrange().unwrap());
        prop_assert_eq!(f.compose(&inv).unwrap(), Series::var(PREC));
        prop_assert_eq!(inv.compose(&f).unwrap(), Series::var(PREC));
    }

    #[test]
    fn group_axioms(x in array(Flavor::Ordinary), y in array(Flavor::Ordinary), z in array(Flavor::Ordinary)) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert!(arrays_agree(&left, &right, PREC));
        let id = RiordanArray::identity(PREC, Flavor::Ordinary);
        prop_assert!(arrays_agree(&x.multiply(&x.inverse().unwrap()).unwrap(), &id, PREC));
        prop_assert!(arrays_agree(&x.inverse().unwrap().multiply(&x).unwrap(), &id, PREC));
    }

    #[test]
    fn matrices_multiply_like_arrays(x in any_array(), y in any_array()) {
        prop_assume!(x.flavor() == y.flavor());
        let product = x.entries(PREC).unwrap().product(&y.entries(PREC).unwrap());
        prop_assert_eq!(product, x.multiply(&y).unwrap().entries(PREC).unwrap());
    }

    #[test]
    fn sequence_action(x in any_array(), h in series()) {
        prop_assume!(x.flavor() == Flavor::Ordinary);
        let m = x.entries(PREC).unwrap();
        let applied = x.apply_sequence(&h).unwrap();
        for n in 0..=PREC {
            let dot: Q = (0..=n).map(|k| m.get(n, k) * h.coeff(k)).sum();
            prop_assert_eq!(&dot, applied.coeff(n));
        }
    }

    #[test]
    fn x_times_pseudo_inverse(x in any_array()) {
        let d = x.multiply(&x.pseudo_inverse().unwrap()).unwrap();
        prop_assert!(d.is_pseudo_involution(PREC));
        let hat = d.pseudo_inverse().unwrap();
        prop_assert!(arrays_agree(&hat, &d, PREC));
    }

    #[test]
    fn pseudo_involutions_are_b_definable(x in array(Flavor::Ordinary)) {
        let d = x.multiply(&x.pseudo_inverse().unwrap()).unwrap();
        prop_assume!(d.f().coeff(1) == &q(1));
        let b = b_from_f(d.f(), (PREC - 2) / 2).unwrap();
        let via_matrix = b_from_matrix_with(&d.entries(PREC).unwrap(), Exec::Sequential).unwrap();
        prop_assert_eq!(&via_matrix.b[..b.len()], &b.b[..]);
    }

    #[test]
    fn g_family_is_pseudo_involutory(c in prop::collection::vec(-3i64..=3, 3)) {
        let f = lookup("double-cat").unwrap().recipe.f(PREC).unwrap();
        let phi = Series::from_fn(PREC, |n| match n { 1 => q(c[0]), 3 => q(c[1]), 5 => q(c[2]), _ => q(0) });
        let g = g_family(&f, &phi).unwrap();
        let p = g.prec();
        prop_assert!(RiordanArray::ordinary(g, f.truncate(p)).unwrap().is_pseudo_involution(p));
    }

    #[test]
    fn square_roots_up_to_checkerboard(c in prop::collection::vec(-3i64..=3, 8), name in prop::sample::select(vec!["double-cat", "schroeder-little", "labeled-trees"])) {
        let d = lookup(name).unwrap().recipe.array(12).unwrap();
        let g = Series::from_fn(12, |n| match n { 0 => q(1), 2 => q(c[0]), 4 => q(c[1]), 6 => q(c[2]), 8 => q(c[3]), _ => q(0) });
        let f = Series::from_fn(12, |n| match n { 1 => q(1), 3 => q(c[4]), 5 => q(c[5]), 7 => q(c[6]), 9 => q(c[7]), _ => q(0) });
        let psi = RiordanArray::new(g, f, d.flavor()).unwrap();
        prop_assert!(psi.is_checkerboard());
        prop_assert!(root_reconstructs(&d, Some(&psi), 11).unwrap());
        let x = canonical_root(&d).unwrap();
        prop_assert!(x.g().coeff(0) == &q(1));
    }

    #[test]
    fn darga_is_additive(a in laurent(-2, 2), b in laurent(-1, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(a.mul(&b).darga().unwrap(), a.darga().unwrap() + b.darga().unwrap());
        let pal = |p: &LaurentPoly| p.add(&p.invert_var());
        prop_assert!(pal(&a).is_zero() || pal(&a).mul(&pal(&b)).is_zero() || pal(&a).mul(&pal(&b)).is_generalized_palindrome());
    }

    #[test]
    fn eta_and_h_identities(gamma in laurent(-2, 3)) {
        prop_assume!(!gamma.at_one().is_zero());
        let (eta, h) = eta_h_laurent(&gamma).unwrap();
        let w = LaurentPoly::from_ints(&[(-1, 1), (0, -2), (1, 1)]);
        let inv = gamma.invert_var();
        prop_assert_eq!(eta.compose(&w).unwrap(), gamma.mul(&inv));
        let zm1 = LaurentPoly::from_ints(&[(0, -1), (1, 1)]);
        let rhs = gamma.sub(&inv.shift(1));
        prop_assert_eq!(h.compose(&w).unwrap().mul(&zm1), rhs);
    }

    #[test]
    fn gamma_routes_agree(c in prop::collection::vec(-3i64..=3, 3), lead in prop_oneof![-2i64..=-1, 1i64..=2], egf in prop::bool::ANY) {
        let mut terms = vec![(0, lead)];
        terms.extend(c.iter().enumerate().map(|(i, &x)| (i as i64 + 1, x)));
        let gamma = LaurentPoly::from_ints(&terms);
        prop_assume!(!gamma.at_one().is_zero());
        let n = 4;
        let spec = if egf { GammaSpec::egf(gamma.clone()) } else { GammaSpec::ogf(gamma.clone()) }.unwrap();
        let f = companion_from_gamma(&spec, 2 * n + 2).unwrap().truncate(2 * n + 2);
        let direct = b_from_f(&f, n).unwrap();
        let via = if egf { b_from_gamma_egf(&gamma, n) } else { b_from_gamma_ogf(&gamma, n) }.unwrap();
        prop_assert_eq!(direct.b, via.b);
    }

    #[test]
    fn symmetrize_roundtrip(p in monic(5), qq in monic(5)) {
        prop_assume!(p != qq);
        let spec = RationalSpec::new(p, qq).unwrap();
        let s = symmetrize(&spec).unwrap();
        let sum = BivariatePoly::x().add(&BivariatePoly::y());
        let prod = BivariatePoly::x().mul(&BivariatePoly::y());
        prop_assert_eq!(s.substitute(&sum, &prod), r_poly(&spec));
    }

    #[test]
    fn both_rational_equations_share_the_root(p in monic(3), qq in monic(3)) {
        prop_assume!(p != qq);
        let spec = RationalSpec::new(p, qq).unwrap();
        let phi = b_equation(&spec).unwrap();
        if let Ok(x) = solve_series_root(&phi, 9) {
            let b = BSequence::from_series(&x.shift_down(1).unwrap(), Method::Rational);
            prop_assert_eq!(b_from_rational_cheb(&spec, 8).unwrap().b, b.b);
        }
    }

    #[test]
    fn scaling_law(k in nonzero_q()) {
        let f = lookup("schroeder-little").unwrap().recipe.f(12).unwrap();
        let b = b_from_f(&f, 5).unwrap();
        prop_assert_eq!(b_from_f(&f_scale(&f, &k).unwrap(), 5).unwrap().b, b_scale(&b, &k).unwrap().b);
    }

    #[test]
    fn half_roundtrip(c in coeffs(6)) {
        let b = Series::from_ints(&c);
        let h = half_from_b(&b).unwrap();
        let back = b_from_half(&h).unwrap();
        let len = back.len().min(c.len());
        prop_assert!(len >= 4);
        prop_assert_eq!(&back.b[..len], &b.coeffs()[..len]);
    }

    #[test]
    fn strategies_agree(x in any_array(), y in any_array(), a in series(), b in series()) {
        prop_assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
        let mx = x.entries_with(PREC, Exec::Sequential).unwrap();
        prop_assert_eq!(&mx, &x.entries_with(PREC, Exec::Parallel).unwrap());
        let my = y.entries(PREC).unwrap();
        prop_assert_eq!(mx.product_with(&my, Exec::Sequential), mx.product_with(&my, Exec::Parallel));
    }
}

#[test]
fn zero_constant_term_has_no_reciprocal() {
    assert!(Series::var(4).recip().is_err());
}
