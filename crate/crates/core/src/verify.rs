//! Fixture and identity suites, plus the seeded generators they share with
//! the property tests.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chebfam::{closed_form, identity_holds, p_poly, row, Family, Identity, P_poly, Q_poly};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::fps::Series;
use crate::pseudo::{canonical_root, Method};
use crate::rational::{q, Q};
use crate::registry::{registry, ExampleEntry};
use crate::riordan::{Flavor, RiordanArray};

pub const SUITES: [&str; 2] = ["examples", "identities"];

/// Seed of the fixed generator behind [`rng`].
pub const SEED: u64 = 0x5eed_b0f5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_result(name: String, anchor: &str, r: Result<Option<String>>) -> Check {
        let (passed, detail) = match r {
            Ok(None) => (true, None),
            Ok(Some(why)) => (false, Some(why)),
            Err(e) => (false, Some(e.to_string())),
        };
        Check { name, anchor: anchor.to_string(), passed, detail }
    }
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn small(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-3..=3))
}

/// `g(0) = 1`, `f'(0) = ±1`, other coefficients in `[-3, 3]`.
pub fn random_array(rng: &mut impl Rng, prec: usize, flavor: Flavor) -> RiordanArray {
    let g = Series::from_fn(prec, |n| if n == 0 { q(1) } else { small(rng) });
    let lead = if rng.gen_bool(0.5) { 1 } else { -1 };
    let f = Series::from_fn(prec, |n| match n {
        0 => q(0),
        1 => q(lead),
        _ => small(rng),
    });
    RiordanArray::new(g, f, flavor).expect("valid random array")
}

/// Even `g` with `g(0) = 1` and odd `f` with `f'(0) = 1`.
pub fn random_checkerboard(rng: &mut impl Rng, prec: usize, flavor: Flavor) -> RiordanArray {
    let g = Series::from_fn(prec, |n| match n {
        0 => q(1),
        n if n % 2 == 0 => small(rng),
        _ => q(0),
    });
    let f = Series::from_fn(prec, |n| match n {
        1 => q(1),
        n if n % 2 == 1 => small(rng),
        _ => q(0),
    });
    RiordanArray::new(g, f, flavor).expect("valid checkerboard")
}

/// An odd polynomial of degree at most `deg`, as a series of precision `prec`.
pub fn random_odd_poly(rng: &mut impl Rng, deg: usize, prec: usize) -> Series {
    Series::from_fn(prec, |n| if n % 2 == 1 && n <= deg { small(rng) } else { q(0) })
}

/// Both generating functions agree through `depth`.
pub fn arrays_agree(a: &RiordanArray, b: &RiordanArray, depth: usize) -> bool {
    a.flavor() == b.flavor() && a.g().agrees_to(b.g(), depth) && a.f().agrees_to(b.f(), depth)
}

/// `X X̂ = D` for the canonical root, optionally right-multiplied by `psi`.
pub fn root_reconstructs(d: &RiordanArray, psi: Option<&RiordanArray>, depth: usize) -> Result<bool> {
    let mut x = canonical_root(d)?;
    if let Some(psi) = psi {
        x = x.multiply(psi)?;
    }
    let xx = x.multiply(&x.pseudo_inverse()?)?;
    Ok(arrays_agree(&xx, d, depth))
}

type Job = Box<dyn Fn() -> Check + Send + Sync>;

fn fixture_jobs(entry: ExampleEntry) -> Vec<Job> {
    let name = entry.name;
    let e1 = entry.clone();
    let e2 = entry.clone();
    let e3 = entry;
    vec![
        Box::new(move || {
            let fails = e1.check();
            let r = if fails.is_empty() { None } else { Some(fails.join("; ")) };
            Check::from_result(format!("{name}: expected prefixes"), "worked example", Ok(r))
        }),
        Box::new(move || {
            let r = (|| {
                let methods = e2.recipe.methods();
                let reference = e2.recipe.b(Method::Definition, 10)?;
                for m in methods {
                    let b = e2.recipe.b(m, 10)?;
                    if let Some(i) = b.first_difference(&reference) {
                        return Ok(Some(format!("{m} differs from definition at index {i}")));
                    }
                }
                Ok(None)
            })();
            Check::from_result(format!("{name}: methods agree"), "B-sequence routes", r)
        }),
        Box::new(move || {
            let r = e3.recipe.array(16).map(|d| {
                let c = d.certify(16);
                (!c.holds()).then(|| format!("first={} second={}", c.first, c.second))
            });
            Check::from_result(format!("{name}: pseudo-involution"), "pseudo-involution conditions", r)
        }),
        Box::new({
            let e4 = registry().into_iter().find(|e| e.name == name).unwrap();
            move || {
                let r = e4
                    .recipe
                    .array(16)
                    .and_then(|d| root_reconstructs(&d, None, 15))
                    .map(|ok| (!ok).then(|| "X X̂ differs from D".to_string()));
                Check::from_result(format!("{name}: canonical root"), "square roots", r)
            }
        }),
    ]
}

fn example_jobs() -> Vec<Job> {
    registry().into_iter().flat_map(fixture_jobs).collect()
}

fn relation(n: i64) -> Option<String> {
    let p = |k| p_poly(k).poly();
    let pp = |k| P_poly(k).poly();
    if pp(n) != p(n).sub(&p(n - 1)) {
        return Some("P_n = p_n - p_(n-1)".into());
    }
    if pp(n).mul(&pp(n)) != p(2 * n) {
        return Some("P_n^2 = p_2n".into());
    }
    if n >= 1 && Q_poly(n as u32).poly() != pp(n).sub(&pp(n - 1)) {
        return Some("Q_n = P_n - P_(n-1)".into());
    }
    None
}

fn identity_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for id in Identity::ALL {
        let start = match id {
            Identity::Q | Identity::R => 1,
            _ => 0,
        };
        jobs.push(Box::new(move || {
            let bad: Vec<u32> = (start..=10).filter(|&n| !identity_holds(id, n)).collect();
            let r = (!bad.is_empty()).then(|| format!("fails for n in {bad:?}"));
            Check::from_result(format!("{id:?} substitution identity, n <= 10"), "two-variable identities", Ok(r))
        }));
    }
    for fam in [Family::LowerP, Family::UpperP, Family::Q, Family::R] {
        jobs.push(Box::new(move || {
            let r = (0..=20i64).find_map(|n| {
                let rw = row(fam, n);
                (0..=20i64)
                    .find(|&k| closed_form(fam, n, k) != Some(rw.coeff(k as usize)))
                    .map(|k| format!("n={n} k={k}"))
            });
            Check::from_result(format!("{fam} closed form, n,k <= 20"), "coefficient formulas", Ok(r))
        }));
    }
    jobs.push(Box::new(|| {
        let r = (0..=10).find_map(|n| relation(n).map(|s| format!("{s} at n={n}")));
        Check::from_result("family relations, n <= 10".into(), "polynomial families", Ok(r))
    }));
    for flavor in [Flavor::Ordinary, Flavor::Exponential] {
        jobs.push(Box::new(move || {
            let r = group_axioms(flavor, 12, 8);
            Check::from_result(format!("group axioms ({flavor})"), "Riordan group", r)
        }));
        jobs.push(Box::new(move || {
            let mut rng = rng();
            let r = (|| {
                for i in 0..20 {
                    let x = random_array(&mut rng, 12, flavor);
                    if !x.multiply(&x.pseudo_inverse()?)?.is_pseudo_involution(12) {
                        return Ok(Some(format!("sample {i}")));
                    }
                }
                Ok(None)
            })();
            Check::from_result(format!("X X̂ is a pseudo-involution ({flavor})"), "square roots", r)
        }));
    }
    jobs
}

fn group_axioms(flavor: Flavor, prec: usize, samples: usize) -> Result<Option<String>> {
    let mut rng = rng();
    let id = RiordanArray::identity(prec, flavor);
    for i in 0..samples {
        let x = random_array(&mut rng, prec, flavor);
        let y = random_array(&mut rng, prec, flavor);
        let z = random_array(&mut rng, prec, flavor);
        let left = x.multiply(&y)?.multiply(&z)?;
        let right = x.multiply(&y.multiply(&z)?)?;
        if !arrays_agree(&left, &right, prec) {
            return Ok(Some(format!("associativity, sample {i}")));
        }
        if !arrays_agree(&x.multiply(&x.inverse()?)?, &id, prec) {
            return Ok(Some(format!("inverse, sample {i}")));
        }
        let product = x.entries(prec)?.product(&y.entries(prec)?);
        if product != x.multiply(&y)?.entries(prec)? {
            return Ok(Some(format!("matrix product, sample {i}")));
        }
    }
    Ok(None)
}

/// Runs a suite; checks execute concurrently and are reported in a fixed order.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    run_suite_with(name, Strategy::default())
}

pub fn run_suite_with(name: &str, strategy: Strategy) -> Result<Vec<Check>> {
    let jobs = match name {
        "examples" => example_jobs(),
        "identities" => identity_jobs(),
        _ => return Err(Error::Parse(format!("unknown suite {name:?}; expected one of {SUITES:?}"))),
    };
    Ok(strategy.map_slice(&jobs, |job| job()))
}
