//! Command execution behind the `malgrange` binary.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::control::autonomy_report;
use crate::corpus;
use crate::error::{Error, Result};
use crate::functor::{verify_main_theorem, FPFunctor};
use crate::module::{annihilator, bass_torsion, hom_module, FPModule};
use crate::session::{Binding, CommandKind, Session};
use crate::suite::{self, Check, SuiteReport};

pub const JSON_FORMAT: u32 = 1;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub json: bool,
    pub seed: u64,
    /// Include the functor suites in `verify`.
    pub all: bool,
    pub color: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            json: false,
            seed: corpus::DEFAULT_SEED,
            all: false,
            color: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// `false` when a verification failed.
    pub success: bool,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

/// Resolves what a command acts on: explicit names first, then the
/// session's own statements of that kind, then every applicable binding.
fn targets(session: &Session, kind: CommandKind, names: &[String]) -> Result<Vec<Vec<String>>> {
    for n in names {
        if session.get(n).is_none() {
            return Err(Error::Usage(format!("unknown name `{n}`")));
        }
    }
    if !names.is_empty() {
        return Ok(match kind {
            CommandKind::Hom if names.len() != 2 => {
                return Err(Error::Usage("hom takes exactly two names".into()))
            }
            CommandKind::Hom | CommandKind::Verify => vec![names.to_vec()],
            _ => names.iter().map(|n| vec![n.clone()]).collect(),
        });
    }
    let stmts: Vec<Vec<String>> = session
        .commands()
        .iter()
        .filter(|c| c.kind == kind)
        .map(|c| c.args.clone())
        .collect();
    if !stmts.is_empty() {
        return Ok(stmts);
    }
    let all = session.bindings().iter().map(|(n, _)| n.clone());
    Ok(match kind {
        CommandKind::Analyze => session
            .bindings()
            .iter()
            .filter(|(_, b)| matches!(b, Binding::System(_)))
            .map(|(n, _)| vec![n.clone()])
            .collect(),
        CommandKind::Hom => return Err(Error::Usage("hom needs two names".into())),
        CommandKind::Verify => vec![Vec::new()],
        _ => all.map(|n| vec![n]).collect(),
    })
}

fn binding<'a>(session: &'a Session, name: &str) -> Result<&'a Binding> {
    session
        .get(name)
        .ok_or_else(|| Error::Usage(format!("unknown name `{name}`")))
}

pub fn run(session: Option<&Session>, kind: CommandKind, names: &[String], opts: &RunOptions) -> Result<Output> {
    let Some(session) = session else {
        return match kind {
            CommandKind::Verify if names.is_empty() => {
                let rep = suite::builtin_suite(opts.seed, opts.all)?;
                Ok(render_checks(&rep, opts, Some(opts.seed)))
            }
            _ => Err(Error::Usage(format!("`{kind}` needs a session file"))),
        };
    };
    let targets = targets(session, kind, names)?;
    if kind == CommandKind::Verify {
        let mut rep = SuiteReport::default();
        for t in &targets {
            let names: Vec<String> = if t.is_empty() {
                session.bindings().iter().map(|(n, _)| n.clone()).collect()
            } else {
                t.clone()
            };
            for n in &names {
                rep.extend(verify_binding(n, binding(session, n)?, opts)?);
            }
        }
        return Ok(render_checks(&rep, opts, None));
    }
    let mut results = Vec::new();
    let mut text = String::new();
    let mut success = true;
    for t in &targets {
        let (t_text, value, ok) = match kind {
            CommandKind::Analyze => analyze(session, &t[0])?,
            CommandKind::Torsion => torsion(session, &t[0])?,
            CommandKind::Defect => defect(session, &t[0])?,
            CommandKind::Hom => hom(session, &t[0], &t[1])?,
            CommandKind::Gb => gb(session, &t[0])?,
            CommandKind::Verify => unreachable!(),
        };
        text.push_str(&t_text);
        results.push(value);
        success &= ok;
    }
    if opts.json {
        let doc = json!({
            "format": JSON_FORMAT,
            "command": kind.name(),
            "results": results,
        });
        text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    }
    Ok(Output { text, success })
}

fn analyze(session: &Session, name: &str) -> Result<(String, Value, bool)> {
    let Binding::System(sys) = binding(session, name)? else {
        return Err(Error::Usage(format!("`{name}` is not a system")));
    };
    let rep = autonomy_report(sys)?;
    let text = format!("analyze {name}\n{rep}\n");
    let mut value = serde_json::to_value(&rep).expect("serializable");
    value["name"] = json!(name);
    Ok((text, value, rep.theorem_check))
}

fn torsion(session: &Session, name: &str) -> Result<(String, Value, bool)> {
    let b = binding(session, name)?;
    let m = b.module()?;
    let (_, iota) = bass_torsion(&m)?;
    let mut gens = Vec::new();
    let mut seen = Vec::new();
    for c in iota.columns() {
        let c = m.reduce(c)?;
        if c.is_zero() || seen.contains(&c) {
            continue;
        }
        let ann = annihilator(&m.elem(c.clone())?)?;
        let element = match b {
            Binding::System(s) => s.combination(&c),
            Binding::Module(_) => c.to_string(),
        };
        let ann: Vec<String> = ann.gens.iter().map(|p| p.to_string()).collect();
        gens.push((element, ann));
        seen.push(c);
    }
    let mut text = format!("torsion {name}: {} generator(s)\n", gens.len());
    for (e, a) in &gens {
        let _ = writeln!(text, "  {e}  annihilator: {}", a.join(", "));
    }
    let value = json!({
        "name": name,
        "module": m.to_string(),
        "generators": gens
            .iter()
            .map(|(e, a)| json!({"element": e, "annihilator": a}))
            .collect::<Vec<_>>(),
    });
    Ok((text, value, true))
}

fn defect(session: &Session, name: &str) -> Result<(String, Value, bool)> {
    let m = binding(session, name)?.module()?;
    let rep = verify_main_theorem(&m)?;
    let text = format!(
        "defect {name}: w(stable) = <{}>, torsion = <{}>, equal: {}\n",
        rep.defect_generators.join(", "),
        rep.torsion_generators.join(", "),
        if rep.equal { "yes" } else { "no" }
    );
    let mut value = serde_json::to_value(&rep).expect("serializable");
    value["name"] = json!(name);
    Ok((text, value, rep.equal))
}

fn hom(session: &Session, a: &str, b: &str) -> Result<(String, Value, bool)> {
    let (m, n) = (binding(session, a)?.module()?, binding(session, b)?.module()?);
    let h = hom_module(&m, &n)?;
    let gens: Vec<String> = h
        .generator_morphisms()?
        .iter()
        .map(|g| g.matrix().to_string())
        .collect();
    let mut text = format!("hom({a}, {b}) = {}\n", h.module());
    for (i, g) in gens.iter().enumerate() {
        let _ = writeln!(text, "  h{}: {g}", i + 1);
    }
    let value = json!({
        "src": a,
        "dst": b,
        "module": h.module().to_string(),
        "generators": gens,
    });
    Ok((text, value, true))
}

fn gb(session: &Session, name: &str) -> Result<(String, Value, bool)> {
    let m = binding(session, name)?.module()?;
    let gens: Vec<String> = m.gb().gens().iter().map(|g| g.to_string()).collect();
    let mut text = format!("gb {name}: {} element(s)\n", gens.len());
    for g in &gens {
        let _ = writeln!(text, "  {g}");
    }
    let value = json!({ "name": name, "module": m.to_string(), "basis": gens });
    Ok((text, value, true))
}

fn verify_binding(name: &str, b: &Binding, opts: &RunOptions) -> Result<Vec<Check>> {
    let m = b.module()?;
    let mut checks = Vec::new();
    if let Binding::System(sys) = b {
        checks.push(suite::system_check(name, sys));
        checks.extend(suite::malgrange_checks(name, sys, &corpus::probes(sys.ring())?));
    }
    checks.push(suite::main_theorem_check(name, &m));
    checks.push(suite::radical_check(name, &m));
    if m.ring().nvars() == 1 {
        checks.push(suite::smith_check(name, &m));
    }
    if opts.all {
        let stable = FPFunctor::stable_hom(&m)?;
        checks.push(suite::defect_check(&format!("stable({name})"), &stable));
        checks.extend(suite::representable_defect_checks(name, &m));
        let lam = FPModule::regular(m.ring());
        checks.push(suite::adjunction_check(&format!("stable({name}) / R"), &stable, &lam));
    }
    Ok(checks)
}

fn render_checks(rep: &SuiteReport, opts: &RunOptions, seed: Option<u64>) -> Output {
    let success = rep.passed();
    let text = if opts.json {
        let mut doc = json!({
            "format": JSON_FORMAT,
            "command": "verify",
            "passed": success,
            "checks": rep.checks,
        });
        if let Some(s) = seed {
            doc["seed"] = json!(s);
        }
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else {
        let mut t = String::new();
        for c in &rep.checks {
            let tag = match (c.passed, opts.color) {
                (true, true) => "\x1b[32mPASS\x1b[0m",
                (false, true) => "\x1b[31mFAIL\x1b[0m",
                (true, false) => "PASS",
                (false, false) => "FAIL",
            };
            let _ = writeln!(t, "{tag} {} {}: {}", c.suite, c.subject, c.detail);
        }
        let _ = writeln!(t, "{} checks, {} failed", rep.checks.len(), rep.failures());
        t
    };
    Output { text, success }
}
