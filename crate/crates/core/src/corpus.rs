//! Built-in modules, systems and probes used by `verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::control::ControlSystem;
use crate::error::Result;
use crate::functor::FPFunctor;
use crate::module::FPModule;
use crate::poly::{parse_poly, Monomial, Poly, Ring, RingSpec};

pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

fn ring(vars: &[&str]) -> Ring {
    RingSpec::new(vars).expect("valid names")
}

fn poly(r: &Ring, s: &str) -> Poly {
    parse_poly(s, r).expect("corpus polynomial")
}

/// Module with the given relation rows.
pub fn coker(r: &Ring, ngens: usize, rows: &[&[&str]]) -> Result<FPModule> {
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| poly(r, s)).collect()).collect();
    FPModule::from_relation_rows(r, ngens, &rows)
}

/// Random polynomial of total degree at most `max_deg`; zero about a third of
/// the time.
pub fn random_poly(r: &Ring, rng: &mut ChaCha8Rng, max_deg: u32) -> Poly {
    let nterms = match rng.random_range(0..6) {
        0 | 1 => 0,
        2 | 3 => 1,
        _ => 2,
    };
    let terms = (0..nterms)
        .map(|_| {
            let mut e = vec![0u32; r.nvars()];
            let mut budget = rng.random_range(0..=max_deg);
            for slot in e.iter_mut() {
                let take = rng.random_range(0..=budget);
                *slot = take;
                budget -= take;
            }
            let c = loop {
                let c = rng.random_range(-3i64..=3);
                if c != 0 {
                    break c;
                }
            };
            (Rational::from(c), Monomial::from_exponents(&e))
        })
        .collect::<Vec<_>>();
    Poly::from_terms(r, terms)
}

/// Cokernel of a random `ngens × nrels` matrix.
pub fn random_coker(r: &Ring, rng: &mut ChaCha8Rng, ngens: usize, nrels: usize, max_deg: u32) -> Result<FPModule> {
    let rows: Vec<Vec<Poly>> = (0..nrels)
        .map(|_| (0..ngens).map(|_| random_poly(r, rng, max_deg)).collect())
        .collect();
    FPModule::from_relation_rows(r, ngens, &rows)
}

/// Modules over `Q[x]`.
pub fn univariate_modules() -> Result<Vec<Named<FPModule>>> {
    let r = ring(&["x"]);
    Ok(vec![
        named("R", FPModule::regular(&r)),
        named("R^2", FPModule::free(&r, 2)),
        named("R/(x)", coker(&r, 1, &[&["x"]])?),
        named("R/(x^2)", coker(&r, 1, &[&["x^2"]])?),
        named("R+R/(x)", coker(&r, 2, &[&["0", "x"]])?),
        named("diag(x,1)", coker(&r, 2, &[&["x", "0"], &["0", "1"]])?),
        named("diag(x,x^2)", coker(&r, 2, &[&["x", "0"], &["0", "x^2"]])?),
        named("coker[[x,x],[0,x^2-1]]", coker(&r, 2, &[&["x", "x"], &["0", "x^2 - 1"]])?),
        named("coker[[x^2+1,x]]", coker(&r, 2, &[&["x^2 + 1", "x"]])?),
        named("coker[[x,1,0],[0,x,1]]", coker(&r, 3, &[&["x", "1", "0"], &["0", "x", "1"]])?),
    ])
}

/// Modules over `Q[x,y]`, including seeded random cokernels of `2×3` matrices.
pub fn bivariate_modules(seed: u64) -> Result<Vec<Named<FPModule>>> {
    let r = ring(&["x", "y"]);
    let mut out = vec![
        named("R/(x,y)", coker(&r, 1, &[&["x"], &["y"]])?),
        named("(x,y)", coker(&r, 2, &[&["y", "-x"]])?),
        named("R+R/(x)", coker(&r, 2, &[&["0", "x"]])?),
        named("R^2/(x,y)", coker(&r, 2, &[&["x", "y"]])?),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..5 {
        out.push(named(format!("random-{i}"), random_coker(&r, &mut rng, 2, 3, 2)?));
    }
    Ok(out)
}

pub fn all_modules(seed: u64) -> Result<Vec<Named<FPModule>>> {
    let mut m = univariate_modules()?;
    m.extend(bivariate_modules(seed)?);
    Ok(m)
}

/// A system with its expected verdict and autonomy annihilators (one list per
/// generator).
#[derive(Clone, Debug)]
pub struct SystemCase {
    pub system: ControlSystem,
    pub controllable: bool,
    pub witnesses: Vec<Vec<String>>,
}

fn system(vars: &[&str], unknowns: &[&str], rows: &[&[&str]]) -> Result<ControlSystem> {
    let r = ring(vars);
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| poly(&r, s)).collect()).collect();
    let unknowns: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
    ControlSystem::new(&r, &unknowns, &rows)
}

fn case(system: ControlSystem, controllable: bool, witnesses: &[&[&str]]) -> SystemCase {
    SystemCase {
        system,
        controllable,
        witnesses: witnesses.iter().map(|w| w.iter().map(|s| s.to_string()).collect()).collect(),
    }
}

pub fn systems() -> Result<Vec<Named<SystemCase>>> {
    Ok(vec![
        named("x'=u", case(system(&["d"], &["x", "u"], &[&["d", "-1"]])?, true, &[])),
        named("x'=0", case(system(&["d"], &["x"], &[&["d"]])?, false, &[&["d"]])),
        named(
            "divergence",
            case(system(&["d1", "d2"], &["y1", "y2"], &[&["d1", "d2"]])?, true, &[]),
        ),
        named(
            "d1y=d2y=0",
            case(system(&["d1", "d2"], &["y"], &[&["d1"], &["d2"]])?, false, &[&["d2", "d1"]]),
        ),
        named(
            "diag(d,1)",
            case(system(&["d"], &["x", "u"], &[&["d", "0"], &["0", "1"]])?, false, &[&["d"]]),
        ),
        named(
            "oscillator",
            case(system(&["d"], &["x", "u"], &[&["d^2 + 1", "-1"]])?, true, &[]),
        ),
        named(
            "x''=u'",
            case(system(&["d"], &["x", "u"], &[&["d^2", "-d"]])?, false, &[&["d"]]),
        ),
    ])
}

/// Probe modules for the Malgrange check, keyed by the system ring.
pub fn probes(r: &Ring) -> Result<Vec<FPModule>> {
    let vars: Vec<&str> = r.var_names().iter().map(|s| s.as_str()).collect();
    let first = vars[0];
    let mut out = vec![
        FPModule::free(r, 0),
        FPModule::regular(r),
        coker(r, 1, &[&[first]])?,
        coker(r, 1, &[&[&format!("{first}^2")]])?,
        coker(r, 1, &[&[&format!("{first}^2 + 1")]])?,
    ];
    if vars.len() > 1 {
        let second = vars[1];
        out.push(coker(r, 1, &[&[first], &[second]])?);
        out.push(coker(r, 2, &[&[second, &format!("-{first}")]])?);
    }
    Ok(out)
}

/// Functors used for the defect and adjunction suites.
pub fn functors() -> Result<Vec<Named<FPFunctor>>> {
    let rx = ring(&["x"]);
    let rxy = ring(&["x", "y"]);
    let mixed = coker(&rx, 2, &[&["0", "x"]])?;
    let tx = coker(&rx, 1, &[&["x"]])?;
    let tx2 = coker(&rx, 1, &[&["x^2"]])?;
    let ideal = coker(&rxy, 2, &[&["y", "-x"]])?;
    let point = coker(&rxy, 1, &[&["x"], &["y"]])?;
    Ok(vec![
        named("(R/(x),-)", FPFunctor::representable(&tx)),
        named("(R+R/(x),-)", FPFunctor::representable(&mixed)),
        named("R/(x)(x)-", FPFunctor::tensor(&tx)?),
        named("(R+R/(x))(x)-", FPFunctor::tensor(&mixed)?),
        named("R^2(x)-", FPFunctor::tensor(&FPModule::free(&rx, 2))?),
        named("stable(R/(x^2))", FPFunctor::stable_hom(&tx2)?),
        named("stable(R+R/(x))", FPFunctor::stable_hom(&mixed)?),
        named("stable(R^2)", FPFunctor::stable_hom(&FPModule::free(&rx, 2))?),
        named("stable((x,y))", FPFunctor::stable_hom(&ideal)?),
        named("(R/(x,y))(x)-", FPFunctor::tensor(&point)?),
    ])
}

/// `(F, A)` pairs for the adjunction suite.
pub fn adjunction_pairs() -> Result<Vec<Named<(FPFunctor, FPModule)>>> {
    let rx = ring(&["x"]);
    let rxy = ring(&["x", "y"]);
    let mixed = coker(&rx, 2, &[&["0", "x"]])?;
    let tx = coker(&rx, 1, &[&["x"]])?;
    let tx2 = coker(&rx, 1, &[&["x^2"]])?;
    let ideal = coker(&rxy, 2, &[&["y", "-x"]])?;
    let point = coker(&rxy, 1, &[&["x"], &["y"]])?;
    let koszul = coker(&rxy, 2, &[&["x", "y"]])?;
    Ok(vec![
        named("(R/(x^2),-) / R+R/(x)", (FPFunctor::representable(&tx2), mixed.clone())),
        named("(R+R/(x),-) / R/(x)", (FPFunctor::representable(&mixed), tx.clone())),
        named("(R+R/(x))(x)- / R+R/(x)", (FPFunctor::tensor(&mixed)?, mixed.clone())),
        named("R^2(x)- / (x,y)", (FPFunctor::tensor(&FPModule::free(&rxy, 2))?, ideal.clone())),
        named("(R^2/(x,y))(x)- / (x,y)", (FPFunctor::tensor(&koszul)?, ideal.clone())),
        named("stable(R+R/(x)) / R", (FPFunctor::stable_hom(&mixed)?, FPModule::regular(&rx))),
        named("stable(R/(x^2)) / R/(x)", (FPFunctor::stable_hom(&tx2)?, tx.clone())),
        named("stable(R/(x,y)) / (x,y)", (FPFunctor::stable_hom(&point)?, ideal.clone())),
    ])
}
