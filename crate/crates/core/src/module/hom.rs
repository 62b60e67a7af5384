//! Hom modules, tensor products, duals, the evaluation map into the double
//! dual, and the Bass torsion.

use crate::error::{Error, Result};
use crate::gb::{groebner, Lifter, Matrix, Vector};
use crate::poly::{check_ring, Poly};

use super::{Element, FPModule, Morphism};

/// `Hom_R(M, N)` as a finitely presented module, with the translation
/// between its elements and actual morphisms.
///
/// A morphism is an `n × m` matrix; it is stored flattened column by column
/// as an element of `N^m`. The Hom module is the kernel of
/// `N^m → N^a, (v_1..v_m) ↦ (Σ_i r_j[i] v_i)_j` over the relations `r_j` of `M`.
#[derive(Clone)]
pub struct HomModule {
    module: FPModule,
    src: FPModule,
    dst: FPModule,
    /// Flattened matrices of the generators, in `R^(n·m)`.
    gens: Vec<Vector>,
    /// Lifts flattened matrices back to generator coordinates.
    lifter: Lifter,
}

impl HomModule {
    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn src(&self) -> &FPModule {
        &self.src
    }

    pub fn dst(&self) -> &FPModule {
        &self.dst
    }

    /// The morphism represented by an element of the Hom module.
    pub fn decode(&self, h: &Element) -> Result<Morphism> {
        if h.module() != &self.module {
            return Err(Error::NotComposable);
        }
        self.decode_vector(h.rep())
    }

    pub(crate) fn decode_vector(&self, coords: &Vector) -> Result<Morphism> {
        let r = self.src.ring();
        let flat = self
            .gens
            .iter()
            .zip(coords.entries())
            .fold(Vector::zero(r, self.flat_len()), |acc, (g, c)| acc.add(&g.scale(c)));
        Ok(Morphism::new_unchecked(&self.src, &self.dst, &self.unflatten(&flat)))
    }

    /// Decoded generators of the Hom module.
    pub fn generator_morphisms(&self) -> Result<Vec<Morphism>> {
        (0..self.module.ngens())
            .map(|i| self.decode(&self.module.gen(i)))
            .collect()
    }

    pub fn encode(&self, phi: &Morphism) -> Result<Element> {
        if phi.src() != &self.src || phi.dst() != &self.dst {
            return Err(Error::NotComposable);
        }
        self.encode_matrix(phi.matrix())
    }

    /// Fails with `NotWellDefined` when the matrix is not a morphism.
    pub fn encode_matrix(&self, mat: &Matrix) -> Result<Element> {
        check_ring(self.src.ring(), mat.ring())?;
        if mat.nrows() != self.dst.ngens() || mat.ncols() != self.src.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for Hom from {} to {} generators",
                mat.nrows(),
                mat.ncols(),
                self.src.ngens(),
                self.dst.ngens()
            )));
        }
        let flat = self.flatten(mat);
        let s = self.module.ngens();
        match self.lifter.lift(&flat)? {
            Some(c) => self.module.elem(Vector::new(self.src.ring(), c[..s].to_vec())?),
            None => Err(Error::NotWellDefined(
                "matrix does not respect the source relations".into(),
            )),
        }
    }

    fn flat_len(&self) -> usize {
        self.src.ngens() * self.dst.ngens()
    }

    fn flatten(&self, mat: &Matrix) -> Vector {
        let entries = mat.cols().iter().flat_map(|c| c.entries().iter().cloned()).collect();
        Vector::new(mat.ring(), entries).expect("same ring")
    }

    fn unflatten(&self, v: &Vector) -> Matrix {
        let n = self.dst.ngens();
        let cols = (0..self.src.ngens()).map(|i| v.slice(i * n..(i + 1) * n)).collect();
        Matrix::from_cols(self.src.ring(), n, cols).expect("consistent")
    }
}

pub fn hom_module(m: &FPModule, n: &FPModule) -> Result<HomModule> {
    check_ring(m.ring(), n.ring())?;
    let r = m.ring();
    let (mg, ng) = (m.ngens(), n.ngens());
    let nm = n.power(mg)?;
    let na = n.power(m.relations().len())?;
    // column block i of N^m maps to block j of N^a by r_j[i]·Id_n
    let mut cols = Vec::with_capacity(ng * mg);
    for i in 0..mg {
        for k in 0..ng {
            let mut e = vec![Poly::zero(r); ng * m.relations().len()];
            for (j, rel) in m.relations().iter().enumerate() {
                e[j * ng + k] = rel.get(i).clone();
            }
            cols.push(Vector::new(r, e)?);
        }
    }
    let t = Morphism::new_unchecked(&nm, &na, &Matrix::from_cols(r, na.ngens(), cols)?);
    let (h, iota) = t.kernel()?;
    let gens = iota.columns().to_vec();
    let mut lift_gens = gens.clone();
    lift_gens.extend_from_slice(nm.relations());
    let lifter = Lifter::new(r, nm.ngens(), &lift_gens)?;
    Ok(HomModule {
        module: h,
        src: m.clone(),
        dst: n.clone(),
        gens,
        lifter,
    })
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &FPModule) -> Result<HomModule> {
    hom_module(m, &FPModule::regular(m.ring()))
}

/// `B ⊗ V`, generated by the pairs `b_i ⊗ v_j` (index `i·|V| + j`).
pub fn tensor_modules(b: &FPModule, v: &FPModule) -> Result<FPModule> {
    check_ring(b.ring(), v.ring())?;
    let r = b.ring();
    let (bg, vg) = (b.ngens(), v.ngens());
    let mut rels = Vec::new();
    for rel in b.relations() {
        for j in 0..vg {
            let mut e = vec![Poly::zero(r); bg * vg];
            for i in 0..bg {
                e[i * vg + j] = rel.get(i).clone();
            }
            rels.push(Vector::new(r, e)?);
        }
    }
    for i in 0..bg {
        for rel in v.relations() {
            let mut e = vec![Poly::zero(r); bg * vg];
            for j in 0..vg {
                e[i * vg + j] = rel.get(j).clone();
            }
            rels.push(Vector::new(r, e)?);
        }
    }
    FPModule::new(r, bg * vg, rels)
}

/// The canonical map `M → M**` together with the dual and double dual.
#[derive(Clone)]
pub struct EvalMap {
    pub dual: HomModule,
    pub bidual: HomModule,
    pub map: Morphism,
}

/// Builds `ev: M → M**`. For each generator `g_j` of `M`, the functional
/// `λ ↦ λ(g_j)` on the generators `λ_i` of `M*` is encoded into `M**`.
pub fn eval_map(m: &FPModule) -> Result<EvalMap> {
    let r = m.ring();
    let d = dual(m)?;
    let forms = d.generator_morphisms()?;
    let bd = dual(d.module())?;
    let t = forms.len();
    let mut cols = Vec::with_capacity(m.ngens());
    for j in 0..m.ngens() {
        let row: Vec<Poly> = forms.iter().map(|l| l.matrix().entry(0, j).clone()).collect();
        let mu = Matrix::from_rows(r, t, &[row])?;
        cols.push(bd.encode_matrix(&mu)?.rep().clone());
    }
    let map = Morphism::new_unchecked(m, bd.module(), &Matrix::from_cols(r, bd.module().ngens(), cols)?);
    Ok(EvalMap {
        dual: d,
        bidual: bd,
        map,
    })
}

/// Bass torsion: the kernel of the evaluation map `M → M**`.
pub fn bass_torsion(m: &FPModule) -> Result<(FPModule, Morphism)> {
    eval_map(m)?.map.kernel()
}

/// Annihilator ideal of an element, as a reduced GB.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator {
    pub gens: Vec<Poly>,
}

impl Annihilator {
    /// A nonzero annihilating polynomial, if any.
    pub fn witness(&self) -> Option<&Poly> {
        self.gens.first()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The ideal as a submodule of R (rank-1 vectors).
    pub fn as_module(&self) -> Result<FPModule> {
        let r = match self.gens.first() {
            Some(p) => p.ring().clone(),
            None => return Err(Error::DimensionMismatch("empty annihilator has no ring".into())),
        };
        let cols = self.gens.iter().map(|p| Vector::new(&r, vec![p.clone()])).collect::<Result<Vec<_>>>()?;
        FPModule::free(&r, 1).submodule_presentation(&cols)
    }
}

/// Kernel of `R → M, r ↦ r·e`.
pub fn annihilator(e: &Element) -> Result<Annihilator> {
    let m = e.module();
    let r = m.ring();
    let mut gens = vec![e.rep().clone()];
    gens.extend_from_slice(m.relations());
    let syz = Lifter::new(r, m.ngens(), &gens)?.syzygies();
    let firsts: Vec<Vector> = syz.cols().iter().map(|c| c.slice(0..1)).collect();
    let gb = groebner(r, 1, &firsts)?;
    Ok(Annihilator {
        gens: gb.gens().into_iter().map(|v| v.get(0).clone()).collect(),
    })
}
