use std::process::ExitCode;

use num_traits::Zero;
use rand::Rng;
use riordan_core::chebfam::{
    closed_form, identity_holds, p_poly, row, triangle, Family, Identity, P_poly, Q_poly,
};
use riordan_core::fps::catalan;
use riordan_core::gammatool::{
    b_from_gamma_egf, b_from_gamma_ogf, b_scale, eps_e_egf, eta_h_laurent, f_scale, quad_a_zero_form,
    quad_closed_form, solve_g, GammaSpec,
};
use riordan_core::pseudo::{b_from_f, companion_of, pseudo_half, g_family, BSequence, Method};
use riordan_core::ratsolve::{
    b_equation, b_equation_cheb, b_equation_in_b, b_from_rational, b_from_rational_cheb, collect_cheb,
    solve_series_root, RationalSpec,
};
use riordan_core::rational::{factorial, frac, q, Q};
use riordan_core::registry::{lookup, registry, Recipe};
use riordan_core::riordan::{Flavor, RiordanArray};
use riordan_core::verify::{random_array, random_checkerboard, random_odd_poly, rng, root_reconstructs};
use riordan_core::{BivariatePoly, Error, LaurentPoly, Result, Series};

type Outcome = Result<Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(ok: bool, what: &str, problems: &mut Vec<String>) {
    if !ok {
        problems.push(what.to_string());
    }
}

fn b_by(name: &str, methods: &[Method], n: usize) -> Result<Vec<BSequence>> {
    let recipe = lookup(name).expect("registered").recipe;
    methods.iter().map(|&m| recipe.b(m, n)).collect()
}

fn all_equal(seqs: &[BSequence], expected: &[Q]) -> bool {
    seqs.iter().all(|s| s.b == expected)
}

fn series_b(s: &Series) -> Vec<Q> {
    s.coeffs().to_vec()
}

fn little_schroeder() -> Outcome {
    let mut p = Vec::new();
    let gamma = LaurentPoly::from_ints(&[(1, -1), (2, 2)]);
    let (eta, h) = eta_h_laurent(&gamma)?;
    require(eta == LaurentPoly::from_ints(&[(0, 1), (1, -2)]), "η = 1 - 2z", &mut p);
    require(h == LaurentPoly::from_ints(&[(0, 5), (1, 2)]), "H = 5 + 2z", &mut p);
    let mut expected = vec![q(5)];
    let mut pow = q(2);
    for n in 1..=24 {
        expected.push(if n % 2 == 1 { pow.clone() } else { -pow.clone() });
        pow *= q(2);
    }
    let seqs = b_by("schroeder-little", &[Method::Definition, Method::Matrix, Method::Half, Method::Gamma], 24)?;
    require(all_equal(&seqs, &expected), "B through n = 24 by every method", &mut p);
    Ok(p)
}

fn motzkin_ext() -> Outcome {
    let mut p = Vec::new();
    let gamma = LaurentPoly::from_terms([(0, frac(3, 2)), (2, frac(1, 2))]);
    let (eta, h) = eta_h_laurent(&gamma)?;
    require(eta == LaurentPoly::from_terms([(0, q(4)), (1, q(3)), (2, frac(3, 4))]), "η = 4 + 3z + 3z^2/4", &mut p);
    require(h == LaurentPoly::from_terms([(1, frac(1, 2))]), "H = z/2", &mut p);
    let n = 24;
    let root = Series::polynomial_ints(&[1, -6, -3], n + 1).sqrt()?;
    let closed = Series::polynomial_ints(&[1, -3], n + 1).sub(&root).shift_down(1)?.scale(&frac(1, 3));
    let via_gamma = b_from_gamma_ogf(&gamma, n)?;
    require(via_gamma.b == series_b(&closed), "B equals the closed form through n = 24", &mut p);
    let spec = GammaSpec::ogf(gamma)?;
    let f = lookup("motzkin-ext").unwrap().recipe.f(2 * n + 2)?;
    require(b_from_f(&f, n)?.b == via_gamma.b, "B equals b_from_f of the companion", &mut p);
    require(solve_g(&spec, 4)? == Series::from_ints(&[1, 2, 2, 4, 8]), "g prefix", &mut p);
    Ok(p)
}

fn fibonacci() -> Outcome {
    let mut p = Vec::new();
    let spec = RationalSpec::from_ints(&[1], &[1, -1, -1])?;
    let phi = b_equation(&spec)?;
    let in_b = b_equation_in_b(&phi)?;
    let expected = BivariatePoly::from_ints(&[((2, 1), 1), ((1, 0), -1), ((1, 1), -1), ((0, 0), 3), ((0, 1), -1)]);
    require(in_b == expected, "zB^2 - (1 + z)B + (3 - z) after x = zB", &mut p);
    let n = 24;
    let root = Series::polynomial_ints(&[1, -10, 5], n + 1).sqrt()?;
    let closed = Series::polynomial_ints(&[1, 1], n + 1).sub(&root).shift_down(1)?.scale(&frac(1, 2));
    let b = b_from_rational(&spec, n)?;
    require(b.origin == Method::Rational && b.b == series_b(&closed), "B equals the closed form through n = 24", &mut p);
    require(b_from_rational_cheb(&spec, n)?.b == b.b, "the Chebyshev-form equation has the same root", &mut p);
    let bs = b.series().unwrap();
    let cheb = collect_cheb(&b_equation_cheb(&spec)?)?;
    require(cheb.eval_at(&bs).order().is_none(), "B annihilates the Chebyshev form", &mut p);
    require(in_b.eval_at(&bs).order().is_none(), "B annihilates the quadratic", &mut p);
    Ok(p)
}

fn doubled_catalan() -> Outcome {
    let mut p = Vec::new();
    let n = 24;
    let two_c: Vec<Q> = catalan(n).coeffs().iter().map(|c| c * q(2)).collect();
    let seqs = b_by("double-cat", &[Method::Definition, Method::Matrix, Method::Half], n)?;
    require(all_equal(&seqs, &two_c), "B = 2C through n = 24 by every method", &mut p);
    let f = lookup("double-cat").unwrap().recipe.f(2 * n + 4)?;
    let h = pseudo_half(&f)?;
    let c2 = catalan(n).stretch(2).truncate(n);
    let expected = c2.sqrt()?.shift_up(1).add(&c2.shift_up(2)).truncate(n);
    require(h.agrees_to(&expected, n), "pseudo-half = z sqrt(C(z^2)) + z^2 C(z^2)", &mut p);
    let (ho, he) = h.parity_parts()?;
    let rhs = he.square().shift_up(1).add_constant(&q(1));
    let depth = ho.prec().min(rhs.prec());
    require(depth >= n / 2 && ho.square().agrees_to(&rhs, depth), "h_o^2 = 1 + z h_e^2", &mut p);
    let he_times_two: Vec<Q> = he.coeffs().iter().map(|c| c * q(2)).collect();
    let len = he_times_two.len().min(two_c.len());
    require(len > n / 2 && he_times_two[..len] == two_c[..len], "B = 2 h_e", &mut p);
    Ok(p)
}

fn labeled_trees() -> Outcome {
    let mut p = Vec::new();
    let n = 16;
    let tree = GammaSpec::egf(LaurentPoly::from_ints(&[(1, 1)]))?;
    let t = Series::from_fn(2 * n + 2, |k| {
        Q::from_integer(num_bigint::BigInt::from(k as u64 + 1).pow(k.saturating_sub(1) as u32))
            / Q::from_integer(factorial(k))
    });
    let zt2 = t.square().shift_up(1).truncate(2 * n + 2);
    let f = lookup("labeled-trees").unwrap().recipe.f(2 * n + 2)?;
    require(f == zt2, "f = zT^2", &mut p);
    let beta_gamma = b_from_gamma_egf(tree.gamma(), 10)?.beta();
    let beta_def = b_from_f(&f, 10)?.beta();
    require(beta_gamma == vec![q(2); 11] && beta_def == beta_gamma, "β_n = 2 for n <= 10", &mut p);
    let two = GammaSpec::egf(LaurentPoly::from_ints(&[(0, 1), (1, 1)]))?;
    let s = solve_g(&two, 2 * n + 2)?;
    let zs = s.shift_up(1).truncate(2 * n + 2);
    let via_gamma = b_from_gamma_egf(two.gamma(), n)?;
    require(via_gamma.b == b_from_f(&zs, n)?.b, "2-colored: b_from_gamma_egf = b_from_f(zS) through n = 16", &mut p);
    let counts: Vec<Q> = s.coeffs()[..7].iter().enumerate().map(|(k, c)| c * Q::from_integer(factorial(k))).collect();
    require(counts == [1, 2, 8, 56, 576, 7872, 134656].map(q), "2-colored: S prefix", &mut p);
    let (eps, _) = eps_e_egf(two.gamma(), 12)?;
    let half = Series::var(12).scale(&frac(1, 2));
    let cosh2 = half.exp()?.add(&half.neg().exp()?);
    require(eps == cosh2, "2-colored: ε = 2 cosh(z/2)", &mut p);
    Ok(p)
}

fn random_q(rng: &mut impl Rng) -> Q {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn quadratic() -> Outcome {
    let mut p = Vec::new();
    let n = 16;
    let mut r = rng();
    let mut tried = 0;
    while tried < 50 {
        let (a, b, c) = (random_q(&mut r), random_q(&mut r), random_q(&mut r));
        if (&a + &b + &c).is_zero() {
            continue;
        }
        tried += 1;
        let gamma = LaurentPoly::from_terms([(0, a.clone()), (1, b.clone()), (2, c.clone())]);
        if quad_closed_form(&a, &b, &c, n)?.b != b_from_gamma_ogf(&gamma, n)?.b {
            p.push(format!("closed form differs for (a, b, c) = ({a}, {b}, {c})"));
        }
        if !(&b + &c).is_zero() {
            let g0 = LaurentPoly::from_terms([(1, b.clone()), (2, c.clone())]);
            if series_b(&quad_a_zero_form(&b, &c, n)?) != b_from_gamma_ogf(&g0, n)?.b {
                p.push(format!("a = 0 form differs for (b, c) = ({b}, {c})"));
            }
        }
        if !(&a + &b).is_zero() {
            let lin = LaurentPoly::from_terms([(0, a.clone()), (1, b.clone())]);
            let mut constant = vec![Q::zero(); n + 1];
            constant[0] = &b - &a;
            if b_from_gamma_ogf(&lin, n)?.b != constant {
                p.push(format!("c = 0 case is not b - a for (a, b) = ({a}, {b})"));
            }
        }
    }
    // with c in place of c^2 the a = 0 form misses little Schröder at b_1
    let (b, c) = (q(-1), q(2));
    let literal = Series::polynomial(&[&b + q(3) * &c, -(&b - &c) * &c], n)
        .div(&Series::polynomial(&[q(1), -(&b * &c)], n))?;
    let sch = b_from_gamma_ogf(&LaurentPoly::from_ints(&[(1, -1), (2, 2)]), n)?;
    require(series_b(&literal) != sch.b, "first-power variant is refuted", &mut p);
    require(series_b(&quad_a_zero_form(&b, &c, n)?) == sch.b, "a = 0 form gives little Schröder", &mut p);
    Ok(p)
}

fn chebyshev() -> Outcome {
    let mut p = Vec::new();
    let block = |fam| triangle(fam, 4);
    let ints = |rows: &[&[i64]]| -> Vec<Vec<Q>> { rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect() };
    require(
        block(Family::LowerP) == ints(&[&[1], &[4, 1], &[9, 6, 1], &[16, 20, 8, 1], &[25, 50, 35, 10, 1]]),
        "p block",
        &mut p,
    );
    require(
        block(Family::UpperP) == ints(&[&[1], &[3, 1], &[5, 5, 1], &[7, 14, 7, 1], &[9, 30, 27, 9, 1]]),
        "P block",
        &mut p,
    );
    require(
        block(Family::Q) == ints(&[&[1], &[2, 1], &[2, 4, 1], &[2, 9, 6, 1], &[2, 16, 20, 8, 1]]),
        "Q block",
        &mut p,
    );
    for fam in [Family::LowerP, Family::UpperP, Family::Q, Family::R] {
        for n in 0..=20i64 {
            let r = row(fam, n);
            if (0..=20i64).any(|k| closed_form(fam, n, k) != Some(r.coeff(k as usize))) {
                p.push(format!("{fam} closed form at n = {n}"));
            }
        }
    }
    for n in 0..=10i64 {
        let (lo, up) = (|k| p_poly(k).poly(), |k| P_poly(k).poly());
        require(up(n) == lo(n).sub(&lo(n - 1)), "P_n = p_n - p_(n-1)", &mut p);
        require(up(n).mul(&up(n)) == lo(2 * n), "P_n^2 = p_2n", &mut p);
        if n >= 1 {
            require(Q_poly(n as u32).poly() == up(n).sub(&up(n - 1)), "Q_n = P_n - P_(n-1)", &mut p);
        }
    }
    for id in Identity::ALL {
        let start = if matches!(id, Identity::Q | Identity::R) { 1 } else { 0 };
        if !(start..=10).all(|n| identity_holds(id, n)) {
            p.push(format!("{id:?} substitution identity"));
        }
    }
    Ok(p)
}

fn structure() -> Outcome {
    let mut p = Vec::new();
    let mut r = rng();
    let prec = 16;
    for i in 0..100 {
        let flavor = if i % 2 == 0 { Flavor::Ordinary } else { Flavor::Exponential };
        let x = random_array(&mut r, prec, flavor);
        if !x.multiply(&x.pseudo_inverse()?)?.is_pseudo_involution(prec) {
            p.push(format!("random sample {i}: X X̂"));
        }
    }
    for e in registry() {
        let d = e.recipe.array(prec)?;
        if !root_reconstructs(&d, None, prec - 1)? {
            p.push(format!("{}: canonical root", e.name));
        }
        let psi = random_checkerboard(&mut r, prec, d.flavor());
        if !root_reconstructs(&d, Some(&psi), prec - 1)? {
            p.push(format!("{}: root times checkerboard", e.name));
        }
        let phi = random_odd_poly(&mut r, 5, prec);
        let g = g_family(d.f(), &phi)?;
        let depth = g.prec().min(prec);
        if !RiordanArray::new(g.truncate(depth), d.f().truncate(depth), d.flavor())?.is_pseudo_involution(depth) {
            p.push(format!("{}: g-family", e.name));
        }
    }
    Ok(p)
}

fn scaling() -> Outcome {
    let mut p = Vec::new();
    let n = 16;
    for name in ["double-cat", "pascal"] {
        let recipe: Recipe = lookup(name).unwrap().recipe;
        let f = recipe.f(2 * n + 2)?;
        let b = b_from_f(&f, n)?;
        for k in [-2, -1, 2, 3] {
            let k = q(k);
            if b_from_f(&f_scale(&f, &k)?, n)?.b != b_scale(&b, &k)?.b {
                p.push(format!("{name} with k = {k}"));
            }
        }
    }
    Ok(p)
}

fn negatives() -> Outcome {
    let mut p = Vec::new();
    let f = Series::polynomial_ints(&[0, 1, 1], 12);
    require(matches!(b_from_f(&f, 4), Err(Error::InconsistentBEquation { .. })), "z + z^2 is rejected", &mut p);
    require(
        matches!(companion_of(&Series::one(8), 8), Err(Error::UnderdeterminedCompanion { .. })),
        "companion_of(1) is underdetermined",
        &mut p,
    );
    let double = BivariatePoly::from_ints(&[((2, 0), 1), ((0, 2), -1)]);
    require(solve_series_root(&double, 8) == Err(Error::NotASimpleRoot), "double root is rejected", &mut p);
    Ok(p)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("little Schröder: η, H and B by four methods, n <= 24", little_schroeder),
        ("extended doubled Motzkin: η, H and closed-form B, n <= 24", motzkin_ext),
        ("Fibonacci: rational pipeline and Chebyshev form, n <= 24", fibonacci),
        ("doubled Catalan: B = 2C and the pseudo-half, n <= 24", doubled_catalan),
        ("labeled trees and 2-colored leaves", labeled_trees),
        ("quadratic closed form on 50 random triples", quadratic),
        ("Chebyshev families: blocks, closed forms, identities", chebyshev),
        ("pseudo-involutions from square roots and g-families", structure),
        ("scaling law for k in {-2, -1, 2, 3}", scaling),
        ("negative cases", negatives),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let problems = match run() {
            Ok(p) => p,
            Err(e) => vec![format!("error: {e}")],
        };
        if problems.is_empty() {
            println!("criterion {:>2}: PASS  {label}", i + 1);
        } else {
            failed += 1;
            println!("criterion {:>2}: FAIL  {label}: {}", i + 1, problems.join("; "));
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
