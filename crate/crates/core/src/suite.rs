//! Verification checks shared by the `verify` command and the C interface.

use serde::Serialize;

use crate::control::{autonomy_report, malgrange_check, ControlSystem};
use crate::corpus::{self, Named, SystemCase};
use crate::error::Result;
use crate::functor::{defect_via_nat, verify_adjunction, verify_main_theorem, ContraFPFunctor, FPFunctor};
use crate::module::{bass_torsion, smith_torsion_oracle, FPModule};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: &str, subject: &str, outcome: Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        suite: suite.into(),
        subject: subject.into(),
        passed,
        detail,
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }
}

pub fn main_theorem_check(name: &str, m: &FPModule) -> Check {
    check(
        "main-theorem",
        name,
        verify_main_theorem(m).map(|r| {
            let detail = match &r.witness {
                None => format!("torsion = defect = <{}>", r.torsion_generators.join(", ")),
                Some(w) => format!("{} only in {}", w.element, w.side),
            };
            (r.equal, detail)
        }),
    )
}

/// Bass torsion against the Smith form, over `Q[x]` only.
pub fn smith_check(name: &str, m: &FPModule) -> Check {
    check(
        "smith",
        name,
        (|| {
            let (t, _) = bass_torsion(m)?;
            let oracle = smith_torsion_oracle(m)?;
            let of_t = smith_torsion_oracle(&t)?;
            let ok = t.qdim() == Some(oracle.qdim())
                && of_t.free_rank == 0
                && of_t.invariant_factors == oracle.invariant_factors;
            let factors: Vec<String> = oracle.invariant_factors.iter().map(|p| p.to_string()).collect();
            Ok((ok, format!("invariant factors [{}], dim {}", factors.join(", "), oracle.qdim())))
        })(),
    )
}

/// `t(M / t(M)) = 0`.
pub fn radical_check(name: &str, m: &FPModule) -> Check {
    check(
        "radical",
        name,
        (|| {
            let (_, iota) = bass_torsion(m)?;
            let (q, _) = iota.cokernel()?;
            let (t, _) = bass_torsion(&q)?;
            Ok((t.is_zero(), format!("quotient {q}")))
        })(),
    )
}

pub fn malgrange_checks(name: &str, sys: &ControlSystem, probes: &[FPModule]) -> Vec<Check> {
    probes
        .iter()
        .map(|v| {
            check(
                "malgrange",
                &format!("{name} @ {v}"),
                malgrange_check(sys, v).map(|c| {
                    let detail = c
                        .witness
                        .clone()
                        .unwrap_or_else(|| format!("{} hom generators, {} solution generators", c.hom_generators, c.solution_generators));
                    (c.bijective(), detail)
                }),
            )
        })
        .collect()
}

pub fn control_check(name: &str, case: &SystemCase) -> Check {
    check(
        "control",
        name,
        autonomy_report(&case.system).map(|r| {
            let found: Vec<Vec<String>> = r.autonomy.iter().map(|g| g.annihilators.clone()).collect();
            let ok = r.controllable == case.controllable && found == case.witnesses && r.theorem_check;
            let detail = if r.controllable {
                "controllable".to_string()
            } else {
                let parts: Vec<String> = r
                    .autonomy
                    .iter()
                    .map(|g| format!("{} by {}", g.quantity, g.annihilators.join(", ")))
                    .collect();
                format!("autonomous: {}", parts.join("; "))
            };
            (ok, detail)
        }),
    )
}

/// Session systems carry no expected verdict; only the two autonomy
/// computations are compared.
pub fn system_check(name: &str, sys: &ControlSystem) -> Check {
    check(
        "control",
        name,
        autonomy_report(sys).map(|r| {
            let verdict = if r.controllable { "controllable" } else { "autonomous" };
            (r.theorem_check, format!("{verdict}, {} autonomy generator(s)", r.autonomy.len()))
        }),
    )
}

pub fn adjunction_check(name: &str, f: &FPFunctor, a: &FPModule) -> Check {
    check(
        "adjunction",
        name,
        verify_adjunction(f, a).map(|r| {
            (
                r.bijective(),
                format!("{} nat generators, {} hom generators", r.nat_generators, r.hom_generators),
            )
        }),
    )
}

pub fn defect_check(name: &str, f: &FPFunctor) -> Check {
    check(
        "defect",
        name,
        (|| {
            let d = defect_via_nat(f)?;
            Ok((d.comparison.is_iso()?, format!("defect {}", d.defect)))
        })(),
    )
}

/// `w((A,−)) = A` and `v` of the stable contravariant functor vanishes.
pub fn representable_defect_checks(name: &str, a: &FPModule) -> Vec<Check> {
    let w = check(
        "defect",
        &format!("w(({name},-))"),
        (|| {
            let (_, emb) = FPFunctor::representable(a).defect()?;
            Ok((emb.is_iso()?, "inclusion is an isomorphism".to_string()))
        })(),
    );
    let v = check(
        "defect",
        &format!("v(stable(-,{name}))"),
        (|| {
            let f = ContraFPFunctor::stable_hom(a);
            let v = f.defect()?;
            Ok((v.is_zero() && f.defect_comparison()?.is_iso()?, format!("{v}")))
        })(),
    );
    vec![w, v]
}

/// Everything in the built-in corpus. Without `all`, the functor suites
/// (defect and adjunction) are skipped.
pub fn builtin_suite(seed: u64, all: bool) -> Result<SuiteReport> {
    let mut rep = SuiteReport::default();
    let modules = corpus::all_modules(seed)?;
    for Named { name, value } in &modules {
        rep.extend([main_theorem_check(name, value)]);
    }
    for Named { name, value } in &corpus::univariate_modules()? {
        rep.extend([smith_check(name, value)]);
    }
    for Named { name, value } in &modules {
        rep.extend([radical_check(name, value)]);
    }
    for Named { name, value } in &corpus::systems()? {
        rep.extend([control_check(name, value)]);
        let probes = corpus::probes(value.system.ring())?;
        rep.extend(malgrange_checks(name, &value.system, &probes));
    }
    if all {
        for Named { name, value } in &corpus::functors()? {
            rep.extend([defect_check(name, value)]);
        }
        for Named { name, value } in &modules {
            rep.extend([defect_check(&format!("stable({name})"), &FPFunctor::stable_hom(value)?)]);
            rep.extend(representable_defect_checks(name, value));
        }
        for Named { name, value } in &corpus::adjunction_pairs()? {
            rep.extend([adjunction_check(name, &value.0, &value.1)]);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_passes() {
        let rep = builtin_suite(corpus::DEFAULT_SEED, true).unwrap();
        for c in rep.checks.iter().filter(|c| !c.passed) {
            eprintln!("{} {}: {}", c.suite, c.subject, c.detail);
        }
        assert!(rep.passed());
    }
}
