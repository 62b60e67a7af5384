use serde::Serialize;

use crate::error::{Error, Result};
use crate::gb::{Matrix, Vector};
use crate::module::{bass_torsion, hom_module, FPModule, Morphism, SubmoduleComparison};

use super::{nat_hom, FPFunctor};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremWitness {
    /// `"defect"` or `"torsion"`: the side containing the element.
    pub side: String,
    pub element: String,
}

/// Comparison of `w(stable_hom(A))` and the Bass torsion inside `A`.
#[derive(Debug, Clone, Serialize)]
pub struct MainTheoremReport {
    pub module: String,
    pub defect_generators: Vec<String>,
    pub torsion_generators: Vec<String>,
    pub equal: bool,
    pub witness: Option<TheoremWitness>,
}

fn nonzero_images(m: &FPModule, cols: &[Vector]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::new();
    for c in cols {
        let c = m.reduce(c)?;
        if !c.is_zero() && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Generators of the defect of the stabilized Hom functor, as elements of `A`.
pub(crate) fn stable_defect_generators(a: &FPModule) -> Result<Vec<Vector>> {
    let (_, emb) = FPFunctor::stable_hom(a)?.defect()?;
    nonzero_images(a, emb.columns())
}

pub(crate) fn torsion_generators(a: &FPModule) -> Result<Vec<Vector>> {
    let (_, iota) = bass_torsion(a)?;
    nonzero_images(a, iota.columns())
}

fn show(v: &[Vector]) -> Vec<String> {
    v.iter().map(|g| g.to_string()).collect()
}

pub fn verify_main_theorem(a: &FPModule) -> Result<MainTheoremReport> {
    let k1 = stable_defect_generators(a)?;
    let k2 = torsion_generators(a)?;
    let cmp = a.compare_submodules(&k1, &k2)?;
    let witness = match &cmp {
        SubmoduleComparison::Equal => None,
        SubmoduleComparison::OnlyInFirst(v) => Some(TheoremWitness {
            side: "defect".into(),
            element: v.to_string(),
        }),
        SubmoduleComparison::OnlyInSecond(v) => Some(TheoremWitness {
            side: "torsion".into(),
            element: v.to_string(),
        }),
    };
    Ok(MainTheoremReport {
        module: a.to_string(),
        defect_generators: show(&k1),
        torsion_generators: show(&k2),
        equal: cmp.is_equal(),
        witness,
    })
}

/// `φ: A → B` maps `w(stable_hom(A))` into `w(stable_hom(B))`.
pub fn check_theorem_functoriality(phi: &Morphism) -> Result<bool> {
    let ka = stable_defect_generators(phi.src())?;
    let kb = stable_defect_generators(phi.dst())?;
    for k in &ka {
        if !phi.dst().submodule_contains(&kb, &phi.apply_vector(k)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical map `Nat(F, (A,−)) → Hom(A, w(F))`.
#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionReport {
    pub functor: String,
    pub module: String,
    pub nat_generators: usize,
    pub hom_generators: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl AdjunctionReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn verify_adjunction(f: &FPFunctor, a: &FPModule) -> Result<AdjunctionReport> {
    let nat = nat_hom(f, &FPFunctor::representable(a))?;
    let (w, emb) = f.defect()?;
    let h = hom_module(a, &w)?;
    let cols = nat
        .generator_transformations()?
        .iter()
        .map(|t| {
            // X of (A,−) is 0, so f_F∘b = 0 and b lands in Ker f_F
            let c = emb
                .factor_through(t.b())?
                .ok_or_else(|| Error::NotWellDefined("transformation leaves the defect".into()))?;
            Ok(h.encode(&c)?.rep().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let map = Morphism::new(
        &nat.module,
        h.module(),
        &Matrix::from_cols(a.ring(), h.module().ngens(), cols)?,
    )?;
    Ok(AdjunctionReport {
        functor: format!("{:?}", f),
        module: a.to_string(),
        nat_generators: nat.module.ngens(),
        hom_generators: h.module().ngens(),
        injective: map.is_injective()?,
        surjective: map.is_surjective()?,
    })
}
