//! Finitely presented R-modules and their morphisms.
//!
//! A module is `R^n / span(relations)`. Elements are column vectors of
//! generator coordinates, stored as normal forms against the relation GB;
//! morphisms act by left multiplication on those columns.

mod hom;
mod smith;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::{groebner, GrobnerBasis, Lifter, Matrix, Vector};
use crate::poly::{check_ring, Monomial, Poly, Ring};

pub use hom::{
    annihilator, bass_torsion, dual, eval_map, hom_module, tensor_modules, Annihilator, EvalMap,
    HomModule,
};
pub use smith::{smith_torsion_oracle, univariate_div_rem, SmithTorsion};

struct ModuleData {
    ring: Ring,
    ngens: usize,
    relations: Vec<Vector>,
    gb: GrobnerBasis,
}

/// `R^ngens` modulo the span of the relation columns.
#[derive(Clone)]
pub struct FPModule(Arc<ModuleData>);

impl FPModule {
    /// Zero relation columns are dropped.
    pub fn new(ring: &Ring, ngens: usize, relations: Vec<Vector>) -> Result<Self> {
        for r in &relations {
            check_ring(ring, r.ring())?;
            if r.rank() != ngens {
                return Err(Error::DimensionMismatch(format!(
                    "relation of length {} on {ngens} generators",
                    r.rank()
                )));
            }
        }
        let relations: Vec<Vector> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let gb = groebner(ring, ngens, &relations)?;
        Ok(FPModule(Arc::new(ModuleData {
            ring: ring.clone(),
            ngens,
            relations,
            gb,
        })))
    }

    /// Module whose relations are the columns of `rel`.
    pub fn from_relation_matrix(rel: &Matrix) -> Result<Self> {
        FPModule::new(rel.ring(), rel.nrows(), rel.cols().to_vec())
    }

    /// Module whose relations are the rows of `rows` (each of length `ngens`).
    pub fn from_relation_rows(ring: &Ring, ngens: usize, rows: &[Vec<Poly>]) -> Result<Self> {
        let rels = rows
            .iter()
            .map(|r| {
                if r.len() != ngens {
                    return Err(Error::DimensionMismatch(format!(
                        "relation row of length {} on {ngens} generators",
                        r.len()
                    )));
                }
                Vector::new(ring, r.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        FPModule::new(ring, ngens, rels)
    }

    pub fn free(ring: &Ring, n: usize) -> Self {
        FPModule::new(ring, n, Vec::new()).expect("free module")
    }

    /// The regular module R.
    pub fn regular(ring: &Ring) -> Self {
        FPModule::free(ring, 1)
    }

    /// R/I for the ideal generated by `ideal`.
    pub fn cyclic(ring: &Ring, ideal: &[Poly]) -> Result<Self> {
        let rels = ideal
            .iter()
            .map(|p| Vector::new(ring, vec![p.clone()]))
            .collect::<Result<Vec<_>>>()?;
        FPModule::new(ring, 1, rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn relations(&self) -> &[Vector] {
        &self.0.relations
    }

    pub fn relation_matrix(&self) -> Matrix {
        Matrix::from_cols(&self.0.ring, self.0.ngens, self.0.relations.clone()).expect("consistent")
    }

    pub fn gb(&self) -> &GrobnerBasis {
        &self.0.gb
    }

    pub fn is_free_presentation(&self) -> bool {
        self.0.relations.is_empty()
    }

    /// True when every generator vanishes.
    pub fn is_zero(&self) -> bool {
        self.0.gb.is_everything()
    }

    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &Vector) -> Result<Vector> {
        self.0.gb.reduce(v)
    }

    pub fn is_zero_vector(&self, v: &Vector) -> Result<bool> {
        self.0.gb.contains(v)
    }

    pub fn elem(&self, rep: Vector) -> Result<Element> {
        check_ring(self.ring(), rep.ring())?;
        let rep = self.reduce(&rep)?;
        Ok(Element {
            module: self.clone(),
            rep,
        })
    }

    pub fn gen(&self, i: usize) -> Element {
        self.elem(Vector::unit(self.ring(), self.ngens(), i)).expect("generator")
    }

    pub fn zero_elem(&self) -> Element {
        self.elem(Vector::zero(self.ring(), self.ngens())).expect("zero")
    }

    /// Dimension over Q, or `None` when infinite.
    pub fn qdim(&self) -> Option<u64> {
        let n = self.ring().nvars();
        let leads = self.0.gb.leading_positions();
        let mut total = 0u64;
        for p in 0..self.ngens() {
            let lp: Vec<&Monomial> = leads.iter().filter(|(q, _)| *q == p).map(|(_, m)| m).collect();
            let mut bounds = vec![0u32; n];
            for (i, b) in bounds.iter_mut().enumerate() {
                let pure = lp
                    .iter()
                    .filter(|m| m.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|m| m.exponents()[i])
                    .min()?;
                *b = pure;
            }
            if bounds.contains(&0) {
                // the unit monomial is a leading term: this position contributes nothing
                continue;
            }
            let mut exps = vec![0u32; n];
            loop {
                let m = Monomial::from_exponents(&exps);
                if !lp.iter().any(|l| l.divides(&m)) {
                    total += 1;
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    exps[k] += 1;
                    if exps[k] < bounds[k] {
                        break;
                    }
                    exps[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        Some(total)
    }

    /// Whether `v` lies in span(gens) + relations.
    pub fn submodule_contains(&self, gens: &[Vector], v: &Vector) -> Result<bool> {
        let mut all = gens.to_vec();
        all.extend_from_slice(self.relations());
        groebner(self.ring(), self.ngens(), &all)?.contains(v)
    }

    /// Compares the submodules generated by `a` and `b` (mutual membership
    /// modulo relations). Returns a witness when they differ: an element of
    /// one side that is missing from the other.
    pub fn compare_submodules(&self, a: &[Vector], b: &[Vector]) -> Result<SubmoduleComparison> {
        let with_rels = |g: &[Vector]| {
            let mut all = g.to_vec();
            all.extend_from_slice(self.relations());
            groebner(self.ring(), self.ngens(), &all)
        };
        let (ga, gb) = (with_rels(a)?, with_rels(b)?);
        for v in a {
            if !gb.contains(v)? {
                return Ok(SubmoduleComparison::OnlyInFirst(self.reduce(v)?));
            }
        }
        for v in b {
            if !ga.contains(v)? {
                return Ok(SubmoduleComparison::OnlyInSecond(self.reduce(v)?));
            }
        }
        Ok(SubmoduleComparison::Equal)
    }

    /// Presentation of the submodule generated by `gens`: one generator per
    /// vector, relations = syzygies of `[gens | relations]` on the first block.
    pub fn submodule_presentation(&self, gens: &[Vector]) -> Result<FPModule> {
        let s = gens.len();
        let mut all = gens.to_vec();
        all.extend_from_slice(self.relations());
        let syz = Lifter::new(self.ring(), self.ngens(), &all)?.syzygies();
        let rels: Vec<Vector> = syz.cols().iter().map(|c| c.slice(0..s)).collect();
        let rels = groebner(self.ring(), s, &rels)?.gens();
        FPModule::new(self.ring(), s, rels)
    }

    /// `M ⊕ N` with its canonical injections and projections.
    pub fn direct_sum(&self, other: &FPModule) -> Result<DirectSum> {
        check_ring(self.ring(), other.ring())?;
        let r = self.ring();
        let (m, n) = (self.ngens(), other.ngens());
        let mut rels: Vec<Vector> = self
            .relations()
            .iter()
            .map(|v| v.concat(&Vector::zero(r, n)))
            .collect();
        rels.extend(other.relations().iter().map(|v| Vector::zero(r, m).concat(v)));
        let sum = FPModule::new(r, m + n, rels)?;
        let id_m = Matrix::identity(r, m);
        let id_n = Matrix::identity(r, n);
        let inj1 = Morphism::new(self, &sum, &id_m.vstack(&Matrix::zero(r, n, m)))?;
        let inj2 = Morphism::new(other, &sum, &Matrix::zero(r, m, n).vstack(&id_n))?;
        let proj1 = Morphism::new(&sum, self, &id_m.hstack(&Matrix::zero(r, m, n)))?;
        let proj2 = Morphism::new(&sum, other, &Matrix::zero(r, n, m).hstack(&id_n))?;
        Ok(DirectSum {
            module: sum,
            inj: [inj1, inj2],
            proj: [proj1, proj2],
        })
    }

    /// `M^k` (block-diagonal relations).
    pub fn power(&self, k: usize) -> Result<FPModule> {
        let r = self.ring();
        let n = self.ngens();
        let mut rels = Vec::with_capacity(k * self.relations().len());
        for b in 0..k {
            for v in self.relations() {
                let mut e = vec![Poly::zero(r); n * k];
                e[b * n..(b + 1) * n].clone_from_slice(v.entries());
                rels.push(Vector::from_entries(r, e));
            }
        }
        FPModule::new(r, n * k, rels)
    }

    /// Same generators and relation list.
    pub fn same_presentation(&self, other: &FPModule) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.ngens() == other.ngens() && self.relations() == other.relations())
    }
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl fmt::Display for FPModule {
    /// `coker [[...], ...]` with one row per relation; a module without
    /// relations prints a single zero row so the generator count survives.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("coker ")?;
        if self.ngens() == 0 {
            return f.write_str("[]");
        }
        if self.relations().is_empty() {
            return write!(f, "[[{}]]", vec!["0"; self.ngens()].join(", "));
        }
        write!(f, "{}", self.relation_matrix().transpose())
    }
}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPModule({} gens, {})", self.ngens(), self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubmoduleComparison {
    Equal,
    OnlyInFirst(Vector),
    OnlyInSecond(Vector),
}

impl SubmoduleComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, SubmoduleComparison::Equal)
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FPModule,
    pub inj: [Morphism; 2],
    pub proj: [Morphism; 2],
}

/// Element of a finitely presented module, held as its canonical representative.
#[derive(Clone)]
pub struct Element {
    module: FPModule,
    rep: Vector,
}

impl Element {
    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn rep(&self) -> &Vector {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &Element) -> Element {
        self.module.elem(self.rep.add(&other.rep)).expect("same module")
    }

    pub fn scale(&self, c: &Poly) -> Element {
        self.module.elem(self.rep.scale(c)).expect("same module")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.rep == other.rep
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Module homomorphism given by a `dst.ngens × src.ngens` matrix.
#[derive(Clone)]
pub struct Morphism {
    src: FPModule,
    dst: FPModule,
    mat: Matrix,
}

impl Morphism {
    /// Checks dimensions and well-definedness (every source relation maps
    /// into the target's relation span). Columns are normalized.
    pub fn new(src: &FPModule, dst: &FPModule, mat: &Matrix) -> Result<Self> {
        check_ring(src.ring(), dst.ring())?;
        if mat.nrows() != dst.ngens() || mat.ncols() != src.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map from {} to {} generators",
                mat.nrows(),
                mat.ncols(),
                src.ngens(),
                dst.ngens()
            )));
        }
        for (k, r) in src.relations().iter().enumerate() {
            if !dst.is_zero_vector(&mat.apply(r))? {
                return Err(Error::NotWellDefined(format!("relation {k} does not map to zero")));
            }
        }
        Ok(Morphism::new_unchecked(src, dst, mat))
    }

    /// For matrices already known to be well defined.
    pub(crate) fn new_unchecked(src: &FPModule, dst: &FPModule, mat: &Matrix) -> Self {
        let cols = mat.cols().iter().map(|c| dst.reduce(c).expect("rank")).collect();
        Morphism {
            src: src.clone(),
            dst: dst.clone(),
            mat: Matrix::from_cols(dst.ring(), dst.ngens(), cols).expect("rank"),
        }
    }

    pub fn identity(m: &FPModule) -> Self {
        Morphism::new_unchecked(m, m, &Matrix::identity(m.ring(), m.ngens()))
    }

    pub fn zero(src: &FPModule, dst: &FPModule) -> Self {
        Morphism::new_unchecked(src, dst, &Matrix::zero(src.ring(), dst.ngens(), src.ngens()))
    }

    /// Multiplication by `c` on `m`.
    pub fn scalar(m: &FPModule, c: &Poly) -> Self {
        Morphism::new_unchecked(m, m, &Matrix::identity(m.ring(), m.ngens()).scale(c))
    }

    pub fn src(&self) -> &FPModule {
        &self.src
    }

    pub fn dst(&self) -> &FPModule {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.dst != self.src {
            return Err(Error::NotComposable);
        }
        Ok(Morphism::new_unchecked(&inner.src, &self.dst, &self.mat.mul(&inner.mat)))
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::NotComposable);
        }
        Ok(Morphism::new_unchecked(&self.src, &self.dst, &self.mat.add(&other.mat)))
    }

    pub fn neg(&self) -> Morphism {
        Morphism::new_unchecked(&self.src, &self.dst, &self.mat.scale(&Poly::from_i64(self.src.ring(), -1)))
    }

    pub fn scale(&self, c: &Poly) -> Morphism {
        Morphism::new_unchecked(&self.src, &self.dst, &self.mat.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        if e.module != self.src {
            return Err(Error::NotComposable);
        }
        self.dst.elem(self.mat.apply(&e.rep))
    }

    pub fn apply_vector(&self, v: &Vector) -> Result<Vector> {
        if v.rank() != self.src.ngens() {
            return Err(Error::RankMismatch {
                expected: self.src.ngens(),
                found: v.rank(),
            });
        }
        self.dst.reduce(&self.mat.apply(v))
    }

    /// Some `x` with `self(x) = y`, or `None` when `y` is not in the image.
    pub fn lift(&self, y: &Vector) -> Result<Option<Vector>> {
        let m = self.src.ngens();
        let mut gens = self.mat.cols().to_vec();
        gens.extend_from_slice(self.dst.relations());
        let lifter = Lifter::new(self.src.ring(), self.dst.ngens(), &gens)?;
        lifter
            .lift(y)?
            .map(|c| Vector::new(self.src.ring(), c[..m].to_vec()).and_then(|v| self.src.reduce(&v)))
            .transpose()
    }

    /// Factors `psi: L → dst` through `self` when `self` is injective or `L`
    /// is free: returns `chi` with `self ∘ chi = psi`.
    pub fn factor_through(&self, psi: &Morphism) -> Result<Option<Morphism>> {
        if psi.dst != self.dst {
            return Err(Error::NotComposable);
        }
        let m = self.src.ngens();
        let mut gens = self.mat.cols().to_vec();
        gens.extend_from_slice(self.dst.relations());
        let lifter = Lifter::new(self.src.ring(), self.dst.ngens(), &gens)?;
        let mut cols = Vec::with_capacity(psi.src.ngens());
        for c in psi.mat.cols() {
            match lifter.lift(c)? {
                Some(coef) => cols.push(Vector::new(self.src.ring(), coef[..m].to_vec())?),
                None => return Ok(None),
            }
        }
        let mat = Matrix::from_cols(self.src.ring(), m, cols)?;
        Morphism::new(&psi.src, &self.src, &mat).map(Some)
    }

    /// Kernel with its inclusion.
    ///
    /// The preimage of the target relations is read off the syzygies of
    /// `[mat | dst relations]`; its reduced GB, normalized modulo the source
    /// relations, gives the kernel generators.
    pub fn kernel(&self) -> Result<(FPModule, Morphism)> {
        let r = self.src.ring();
        let m = self.src.ngens();
        let mut gens = self.mat.cols().to_vec();
        gens.extend_from_slice(self.dst.relations());
        let syz = Lifter::new(r, self.dst.ngens(), &gens)?.syzygies();
        let pre: Vec<Vector> = syz.cols().iter().map(|c| c.slice(0..m)).collect();
        let mut kgens: Vec<Vector> = Vec::new();
        for g in groebner(r, m, &pre)?.gens() {
            let g = self.src.reduce(&g)?;
            if !g.is_zero() && !kgens.contains(&g) {
                kgens.push(g);
            }
        }
        let k = self.src.submodule_presentation(&kgens)?;
        let incl = Matrix::from_cols(r, m, kgens)?;
        let iota = Morphism::new_unchecked(&k, &self.src, &incl);
        Ok((k, iota))
    }

    /// Cokernel `dst / image` with the projection (identity matrix).
    pub fn cokernel(&self) -> Result<(FPModule, Morphism)> {
        let mut rels = self.dst.relations().to_vec();
        rels.extend(self.mat.cols().iter().cloned());
        let c = FPModule::new(self.dst.ring(), self.dst.ngens(), rels)?;
        let pi = Morphism::new_unchecked(&self.dst, &c, &Matrix::identity(c.ring(), c.ngens()));
        Ok((c, pi))
    }

    /// Image presented on the columns of the matrix, with the inclusion into
    /// `dst` and the surjection from `src`.
    pub fn image(&self) -> Result<(FPModule, Morphism, Morphism)> {
        let i = self.dst.submodule_presentation(self.mat.cols())?;
        let incl = Morphism::new_unchecked(&i, &self.dst, &self.mat);
        let onto = Morphism::new_unchecked(
            &self.src,
            &i,
            &Matrix::identity(self.src.ring(), self.src.ngens()),
        );
        Ok((i, incl, onto))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.0.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.0.is_zero())
    }

    pub fn is_iso(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// Generator images, already normalized.
    pub fn columns(&self) -> &[Vector] {
        self.mat.cols()
    }
}

impl PartialEq for Morphism {
    /// Columns are canonical, so equality of maps is equality of matrices.
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.dst == other.dst && self.mat == other.mat
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}: {})", self.src.ngens(), self.dst.ngens(), self.mat)
    }
}
