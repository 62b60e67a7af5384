//! Linear constant-coefficient systems `A·X = 0`, their Malgrange modules,
//! autonomy and controllability.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::verify_main_theorem;
use crate::gb::{Matrix, Vector};
use crate::module::{annihilator, bass_torsion, hom_module, FPModule, Morphism};
use crate::poly::{is_identifier, Poly, Ring};

/// System with equations as rows of `A` and one column per unknown.
#[derive(Clone, PartialEq)]
pub struct ControlSystem {
    ring: Ring,
    unknowns: Vec<String>,
    a: Matrix,
}

impl ControlSystem {
    pub fn new(ring: &Ring, unknowns: &[String], rows: &[Vec<Poly>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch("a system needs at least one equation".into()));
        }
        if unknowns.is_empty() {
            return Err(Error::DimensionMismatch("a system needs at least one unknown".into()));
        }
        for (i, u) in unknowns.iter().enumerate() {
            if !is_identifier(u) || unknowns[..i].contains(u) {
                return Err(Error::DimensionMismatch(format!("bad unknown name '{u}'")));
            }
        }
        let a = Matrix::from_rows(ring, unknowns.len(), rows)?;
        Ok(ControlSystem {
            ring: ring.clone(),
            unknowns: unknowns.to_vec(),
            a,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn nequations(&self) -> usize {
        self.a.nrows()
    }

    /// Adds an equation at the end.
    pub fn with_equation(&self, row: Vec<Poly>) -> Result<Self> {
        let mut rows = self.a.rows();
        rows.push(row);
        ControlSystem::new(&self.ring, &self.unknowns, &rows)
    }

    /// `Σ c_j·u_j` in terms of the unknowns.
    pub fn combination(&self, v: &Vector) -> String {
        let parts: Vec<String> = v
            .entries()
            .iter()
            .zip(&self.unknowns)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, u)| {
                if c.is_one() {
                    u.clone()
                } else if (-c).is_one() {
                    format!("-{u}")
                } else if c.terms().len() == 1 {
                    format!("{c}*{u}")
                } else {
                    format!("({c})*{u}")
                }
            })
            .collect();
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for ControlSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vars {}", self.a, self.unknowns.join(", "))
    }
}

impl fmt::Debug for ControlSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ControlSystem({self})")
    }
}

/// `M = R^q / (rows of A)`.
pub fn malgrange_module(sys: &ControlSystem) -> Result<FPModule> {
    FPModule::from_relation_rows(&sys.ring, sys.unknowns.len(), &sys.a.rows())
}

/// Solutions of the system in `V`: the kernel of `V^q → V^p` given by `A`.
pub fn solutions(sys: &ControlSystem, v: &FPModule) -> Result<(FPModule, Morphism)> {
    let r = &sys.ring;
    let (p, q, n) = (sys.a.nrows(), sys.a.ncols(), v.ngens());
    let vq = v.power(q)?;
    let vp = v.power(p)?;
    let mut cols = Vec::with_capacity(q * n);
    for j in 0..q {
        for k in 0..n {
            let mut e = vec![Poly::zero(r); p * n];
            for i in 0..p {
                e[i * n + k] = sys.a.entry(i, j).clone();
            }
            cols.push(Vector::new(r, e)?);
        }
    }
    Morphism::new(&vq, &vp, &Matrix::from_cols(r, vp.ngens(), cols)?)?.kernel()
}

#[derive(Debug, Clone, Serialize)]
pub struct MalgrangeCheck {
    pub probe: String,
    pub hom_generators: usize,
    pub solution_generators: usize,
    pub injective: bool,
    pub surjective: bool,
    /// A solution without a preimage, or a nonzero map sent to zero.
    pub witness: Option<String>,
}

impl MalgrangeCheck {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Checks that `h ↦ (h(e_1), …, h(e_q))` is an isomorphism `Hom(M,V) → Sol(V)`.
pub fn malgrange_check(sys: &ControlSystem, v: &FPModule) -> Result<MalgrangeCheck> {
    let r = &sys.ring;
    let m = malgrange_module(sys)?;
    let h = hom_module(&m, v)?;
    let (sol, incl) = solutions(sys, v)?;
    let cols = h
        .generator_morphisms()?
        .iter()
        .map(|psi| {
            let flat: Vec<Poly> = psi.matrix().cols().iter().flat_map(|c| c.entries().to_vec()).collect();
            incl.lift(&Vector::new(r, flat)?)?
                .ok_or_else(|| Error::NotWellDefined("a homomorphism is not a solution".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = Morphism::new(h.module(), &sol, &Matrix::from_cols(r, sol.ngens(), cols)?)?;
    let (_, kernel) = map.kernel()?;
    let injective = kernel.columns().iter().all(|c| c.is_zero());
    let missing = (0..sol.ngens())
        .map(|i| sol.gen(i))
        .find(|g| map.lift(g.rep()).map(|l| l.is_none()).unwrap_or(true));
    let witness = match (&missing, kernel.columns().iter().find(|c| !c.is_zero())) {
        (Some(g), _) => Some(format!("solution {} has no preimage", incl.apply_vector(g.rep())?)),
        (None, Some(k)) => Some(format!("homomorphism {k} maps to zero")),
        _ => None,
    };
    Ok(MalgrangeCheck {
        probe: v.to_string(),
        hom_generators: h.module().ngens(),
        solution_generators: sol.ngens(),
        injective,
        surjective: missing.is_none(),
        witness,
    })
}

/// The autonomy: Bass torsion of the Malgrange module.
pub fn autonomy(sys: &ControlSystem) -> Result<(FPModule, Morphism)> {
    bass_torsion(&malgrange_module(sys)?)
}

pub fn is_controllable(sys: &ControlSystem) -> Result<bool> {
    Ok(autonomy(sys)?.0.is_zero())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutonomyGenerator {
    /// The observable quantity as a combination of the unknowns.
    pub quantity: String,
    /// Generators of its annihilator; each is an autonomous equation.
    pub annihilators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub system: String,
    pub malgrange: String,
    pub autonomy: Vec<AutonomyGenerator>,
    pub controllable: bool,
    /// Autonomy recomputed as the defect of the stabilized Malgrange functor.
    pub theorem_check: bool,
}

pub fn autonomy_report(sys: &ControlSystem) -> Result<AnalysisReport> {
    let m = malgrange_module(sys)?;
    let (_, iota) = bass_torsion(&m)?;
    let mut gens = Vec::new();
    let mut seen: Vec<Vector> = Vec::new();
    for c in iota.columns() {
        let c = m.reduce(c)?;
        if c.is_zero() || seen.contains(&c) {
            continue;
        }
        let ann = annihilator(&m.elem(c.clone())?)?;
        gens.push(AutonomyGenerator {
            quantity: sys.combination(&c),
            annihilators: ann.gens.iter().map(|p| p.to_string()).collect(),
        });
        seen.push(c);
    }
    let theorem_check = verify_main_theorem(&m)?.equal;
    Ok(AnalysisReport {
        system: sys.to_string(),
        malgrange: m.to_string(),
        controllable: gens.is_empty(),
        autonomy: gens,
        theorem_check,
    })
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        writeln!(f, "malgrange module: {}", self.malgrange)?;
        if self.controllable {
            writeln!(f, "controllable: yes, autonomy: 0")?;
        } else {
            writeln!(f, "controllable: no, autonomy: {} generator(s)", self.autonomy.len())?;
            for g in &self.autonomy {
                writeln!(f, "  {}  annihilated by {}", g.quantity, g.annihilators.join(", "))?;
            }
        }
        write!(f, "defect check: {}", if self.theorem_check { "ok" } else { "FAILED" })
    }
}
