//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use malgrange_core::control::{autonomy, autonomy_report, malgrange_check, ControlSystem};
use malgrange_core::corpus::{self, random_poly, DEFAULT_SEED};
use malgrange_core::functor::{defect_via_nat, verify_adjunction, ContraFPFunctor, FPFunctor};
use malgrange_core::gb::{groebner, normal_form, s_vector, syzygies, ModuleOrder, Vector};
use malgrange_core::module::{bass_torsion, smith_torsion_oracle, FPModule};
use malgrange_core::poly::{parse_poly, Poly, Ring, RingSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: malgrange_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn nonzero(m: &FPModule, cols: &[Vector]) -> Result<Vec<Vector>, String> {
    let mut out = Vec::new();
    for c in cols {
        let c = e2s(m.reduce(c))?;
        if !c.is_zero() {
            out.push(c);
        }
    }
    Ok(out)
}

fn mutually_contained(m: &FPModule, a: &[Vector], b: &[Vector]) -> Result<bool, String> {
    for v in a {
        if !e2s(m.submodule_contains(b, v))? {
            return Ok(false);
        }
    }
    for v in b {
        if !e2s(m.submodule_contains(a, v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let modules = e2s(corpus::all_modules(DEFAULT_SEED))?;
    for required in ["R", "R^2", "R/(x)", "R/(x^2)", "R/(x,y)", "R+R/(x)", "(x,y)"] {
        ensure(modules.iter().any(|m| m.name == required), || format!("corpus lacks {required}"))?;
    }
    let random = modules.iter().filter(|m| m.name.starts_with("random-")).count();
    ensure(random == 5, || format!("{random} random modules"))?;
    ensure(modules.len() >= 12, || format!("only {} modules", modules.len()))?;
    for m in &modules {
        let a = &m.value;
        let (_, emb) = e2s(e2s(FPFunctor::stable_hom(a))?.defect())?;
        let (_, iota) = e2s(bass_torsion(a))?;
        let k1 = nonzero(a, emb.columns())?;
        let k2 = nonzero(a, iota.columns())?;
        ensure(mutually_contained(a, &k1, &k2)?, || format!("{}: defect {:?} vs torsion {:?}", m.name, k1, k2))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{} modules in {:.2}s", modules.len(), took.as_secs_f64()))
}

fn smith_agreement() -> Outcome {
    let modules = e2s(corpus::univariate_modules())?;
    ensure(modules.len() >= 8, || format!("only {} modules", modules.len()))?;
    for m in &modules {
        let (t, _) = e2s(bass_torsion(&m.value))?;
        let oracle = e2s(smith_torsion_oracle(&m.value))?;
        let of_t = e2s(smith_torsion_oracle(&t))?;
        ensure(t.qdim() == Some(oracle.qdim()), || {
            format!("{}: dim {:?} vs {}", m.name, t.qdim(), oracle.qdim())
        })?;
        ensure(of_t.free_rank == 0 && of_t.invariant_factors == oracle.invariant_factors, || {
            format!("{}: factors {:?} vs {:?}", m.name, of_t.invariant_factors, oracle.invariant_factors)
        })?;
    }
    Ok(format!("{} Q[x]-modules", modules.len()))
}

fn ring(vars: &[&str]) -> Ring {
    RingSpec::new(vars).unwrap()
}

fn p(r: &Ring, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

fn system(r: &Ring, unknowns: &[&str], rows: &[&[&str]]) -> ControlSystem {
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| p(r, s)).collect()).collect();
    let unknowns: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
    ControlSystem::new(r, &unknowns, &rows).unwrap()
}

fn malgrange_isomorphism() -> Outcome {
    let rx = ring(&["x"]);
    let a_is_x = system(&rx, &["v"], &[&["x"]]);
    let n = FPModule::cyclic(&rx, &[p(&rx, "x^2")]).unwrap();
    let mut pairs = vec![(a_is_x, n)];
    for case in e2s(corpus::systems())? {
        for v in e2s(corpus::probes(case.value.system.ring()))? {
            pairs.push((case.value.system.clone(), v));
        }
    }
    ensure(pairs.len() >= 10, || format!("only {} pairs", pairs.len()))?;
    let first = e2s(malgrange_check(&pairs[0].0, &pairs[0].1))?;
    ensure(first.hom_generators == 1 && first.solution_generators == 1, || format!("{first:?}"))?;
    for (sys, v) in &pairs {
        let c = e2s(malgrange_check(sys, v))?;
        ensure(c.injective && c.surjective, || format!("{sys} @ {v}: {c:?}"))?;
    }
    Ok(format!("{} (system, probe) pairs", pairs.len()))
}

fn control_verdicts() -> Outcome {
    let rd = ring(&["d"]);
    let r2 = ring(&["d1", "d2"]);

    let s = system(&rd, &["x", "u"], &[&["d", "-1"]]);
    ensure(e2s(autonomy_report(&s))?.controllable, || "x' = u not controllable".into())?;

    let s = system(&rd, &["x"], &[&["d"]]);
    let rep = e2s(autonomy_report(&s))?;
    let (_, iota) = e2s(autonomy(&s))?;
    ensure(!rep.controllable && e2s(iota.is_surjective())?, || "x' = 0 not fully autonomous".into())?;
    ensure(rep.autonomy.len() == 1 && rep.autonomy[0].annihilators == ["d"], || format!("{:?}", rep.autonomy))?;

    let s = system(&r2, &["y1", "y2"], &[&["d1", "d2"]]);
    ensure(e2s(autonomy_report(&s))?.controllable, || "divergence not controllable".into())?;

    let s = system(&r2, &["y"], &[&["d1"], &["d2"]]);
    let rep = e2s(autonomy_report(&s))?;
    let (_, iota) = e2s(autonomy(&s))?;
    ensure(!rep.controllable && e2s(iota.is_surjective())?, || "{d1 y, d2 y} not fully autonomous".into())?;
    let mut w = rep.autonomy[0].annihilators.clone();
    w.sort();
    ensure(rep.autonomy.len() == 1 && w == ["d1", "d2"], || format!("{:?}", rep.autonomy))?;
    Ok("4 systems".into())
}

fn radical_law() -> Outcome {
    let modules = e2s(corpus::all_modules(DEFAULT_SEED))?;
    for m in &modules {
        let (_, iota) = e2s(bass_torsion(&m.value))?;
        let (q, _) = e2s(iota.cokernel())?;
        let (t, _) = e2s(bass_torsion(&q))?;
        ensure(t.is_zero(), || format!("{}: torsion of the quotient is {t}", m.name))?;
    }
    Ok(format!("{} modules", modules.len()))
}

fn adjunction() -> Outcome {
    let pairs = e2s(corpus::adjunction_pairs())?;
    ensure(pairs.len() >= 6, || format!("only {} pairs", pairs.len()))?;
    let mut nontrivial = 0;
    for pr in &pairs {
        let rep = e2s(verify_adjunction(&pr.value.0, &pr.value.1))?;
        ensure(rep.injective && rep.surjective, || format!("{}: {rep:?}", pr.name))?;
        if rep.hom_generators > 0 {
            nontrivial += 1;
        }
    }
    Ok(format!("{} pairs, {} with nonzero Hom", pairs.len(), nontrivial))
}

fn defect_coherence() -> Outcome {
    let mut functors: Vec<(String, FPFunctor)> =
        e2s(corpus::functors())?.into_iter().map(|f| (f.name, f.value)).collect();
    let modules = e2s(corpus::all_modules(DEFAULT_SEED))?;
    for m in &modules {
        functors.push((format!("stable({})", m.name), e2s(FPFunctor::stable_hom(&m.value))?));
    }
    for (name, f) in &functors {
        let d = e2s(defect_via_nat(f))?;
        ensure(e2s(d.comparison.is_iso())?, || format!("{name}: comparison not bijective"))?;
    }
    for m in &modules {
        let (w, emb) = e2s(FPFunctor::representable(&m.value).defect())?;
        ensure(e2s(emb.is_iso())? && w.qdim() == m.value.qdim(), || format!("w(({},-)) != A", m.name))?;
        let v = e2s(ContraFPFunctor::stable_hom(&m.value).defect())?;
        ensure(v.is_zero(), || format!("v(stable(-,{})) = {v}", m.name))?;
    }
    Ok(format!("{} functors, {} modules", functors.len(), modules.len()))
}

fn random_vector(r: &Ring, rng: &mut ChaCha8Rng, rank: usize) -> Vector {
    Vector::new(r, (0..rank).map(|_| random_poly(r, rng, 2)).collect()).unwrap()
}

fn engine_soundness() -> Outcome {
    let rings = [ring(&["x"]), ring(&["x", "y"]), ring(&["x", "y", "z"])];
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut s_checked = 0;
    for case in 0..100 {
        let r = &rings[case % rings.len()];
        let rank = rng.random_range(1..=2);
        let ngens = rng.random_range(1..=3);
        let gens: Vec<Vector> = (0..ngens).map(|_| random_vector(r, &mut rng, rank)).collect();
        let g = e2s(groebner(r, rank, &gens))?;
        let v = random_vector(r, &mut rng, rank);
        let (rem, quots) = e2s(normal_form(&v, &g))?;
        let basis = g.gens();
        let back = basis
            .iter()
            .zip(&quots)
            .fold(rem.clone(), |acc, (b, q)| acc.add(&b.scale(q)));
        ensure(back == v, || format!("case {case}: division identity fails"))?;
        ensure(e2s(g.reduce(&rem))? == rem, || format!("case {case}: remainder not reduced"))?;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if let Some(s) = s_vector(&basis[i], &basis[j], ModuleOrder::POT_GREVLEX) {
                    ensure(e2s(g.reduce(&s))?.is_zero(), || format!("case {case}: S({i},{j}) != 0"))?;
                    s_checked += 1;
                }
            }
        }
        let syz = e2s(syzygies(r, rank, &gens))?;
        for col in syz.cols() {
            let combo = gens
                .iter()
                .zip(col.entries())
                .fold(Vector::zero(r, rank), |acc, (g, c)| acc.add(&g.scale(c)));
            ensure(combo.is_zero(), || format!("case {case}: gens * syz != 0"))?;
        }
    }
    for case in 0..20 {
        let r = &rings[1 + case % 2];
        let rank = rng.random_range(1..=2);
        let mut gens: Vec<Vector> = (0..4).map(|_| random_vector(r, &mut rng, rank)).collect();
        let g1 = e2s(groebner(r, rank, &gens))?.gens();
        for k in (1..gens.len()).rev() {
            let j = rng.random_range(0..=k);
            gens.swap(k, j);
        }
        let g2 = e2s(groebner(r, rank, &gens))?.gens();
        ensure(g1 == g2, || format!("permutation case {case}: {g1:?} vs {g2:?}"))?;
    }
    Ok(format!("100 divisions, {s_checked} S-vectors, 20 permutations"))
}

fn cli_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_malgrange"))
            .args(["verify", "--all", "--json"])
            .env("MALGRANGE_COLOR", "never")
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
    ensure(b.status.code() == Some(0), || format!("exit {:?}", b.status.code()))?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure(doc["format"] == 1 && doc["passed"] == true, || "bad report".into())?;
    Ok(format!("{} bytes, identical", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("main theorem on the module corpus", main_theorem),
        ("univariate torsion matches Smith form", smith_agreement),
        ("Malgrange isomorphism", malgrange_isomorphism),
        ("control verdicts", control_verdicts),
        ("radical law", radical_law),
        ("adjunction", adjunction),
        ("defect coherence", defect_coherence),
        ("engine soundness", engine_soundness),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
