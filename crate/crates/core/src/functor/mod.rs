//! Finitely presented functors on R-modules.
//!
//! A covariant functor `F` is stored as one presentation arrow `f: Y → X`,
//! meaning `F = coker((X,−) → (Y,−))`. A natural transformation `F → G` is a
//! module map `b: Y_G → Y_F` together with a witness `a: X_G → X_F` making
//! `f_F ∘ b = a ∘ f_G` commute. Functors are never compared for equality;
//! isomorphism claims are checked through explicit transformations.

mod verify;

use std::fmt;

use crate::error::{Error, Result};
use crate::gb::Matrix;
use crate::module::{dual, hom_module, FPModule, HomModule, Morphism};
use crate::poly::Ring;

pub use verify::{
    check_theorem_functoriality, verify_adjunction, verify_main_theorem, AdjunctionReport,
    MainTheoremReport, TheoremWitness,
};

/// Morphism `from.module → to.module` induced by a map on actual morphisms.
/// `op` must be R-linear (pre- and post-composition are).
pub(crate) fn induced_hom_map(
    from: &HomModule,
    to: &HomModule,
    op: impl Fn(&Morphism) -> Result<Morphism>,
) -> Result<Morphism> {
    let r = from.module().ring();
    let cols = from
        .generator_morphisms()?
        .iter()
        .map(|g| Ok(to.encode(&op(g)?)?.rep().clone()))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(
        from.module(),
        to.module(),
        &Matrix::from_cols(r, to.module().ngens(), cols)?,
    )
}

/// Covariant finitely presented functor `coker((X,−) --(f,−)--> (Y,−))`.
#[derive(Clone)]
pub struct FPFunctor {
    f: Morphism,
}

/// Value of a functor at a module, with the data needed to push
/// transformations through it.
#[derive(Clone)]
pub struct FunctorValue {
    pub module: FPModule,
    /// `Hom(Y, V)`; `module` is a quotient of it with the same generators.
    pub hom_y: HomModule,
}

impl FPFunctor {
    pub fn new(f: Morphism) -> Self {
        FPFunctor { f }
    }

    pub fn presentation(&self) -> &Morphism {
        &self.f
    }

    pub fn y(&self) -> &FPModule {
        self.f.src()
    }

    pub fn x(&self) -> &FPModule {
        self.f.dst()
    }

    pub fn ring(&self) -> &Ring {
        self.f.src().ring()
    }

    /// `(A, −)`, presented by `A → 0`.
    pub fn representable(a: &FPModule) -> Self {
        FPFunctor::new(Morphism::zero(a, &FPModule::free(a.ring(), 0)))
    }

    /// `(Λ, −)`, the forgetful functor.
    pub fn forgetful(ring: &Ring) -> Self {
        FPFunctor::representable(&FPModule::regular(ring))
    }

    pub fn zero(ring: &Ring) -> Self {
        FPFunctor::representable(&FPModule::free(ring, 0))
    }

    /// `B ⊗ −`: if the relations of `B` form `d: R^m → R^n`, the functor is
    /// presented by the transpose `R^n → R^m`.
    pub fn tensor(b: &FPModule) -> Result<Self> {
        let r = b.ring();
        let d = b.relation_matrix();
        let f = Morphism::new(&FPModule::free(r, b.ngens()), &FPModule::free(r, d.ncols()), &d.transpose())?;
        Ok(FPFunctor::new(f))
    }

    /// `(A, −)` modulo maps factoring through projectives, presented by
    /// `(λ_1; …; λ_t): A → R^t` over the generators of `A*`.
    pub fn stable_hom(a: &FPModule) -> Result<Self> {
        let r = a.ring();
        let forms = dual(a)?.generator_morphisms()?;
        let rows: Vec<_> = forms.iter().map(|l| l.matrix().row(0)).collect();
        let mat = Matrix::from_rows(r, a.ngens(), &rows)?;
        Ok(FPFunctor::new(Morphism::new(a, &FPModule::free(r, rows.len()), &mat)?))
    }

    /// `F(V) = Hom(Y,V) / (Hom(X,V) ∘ f)`.
    pub fn eval(&self, v: &FPModule) -> Result<FunctorValue> {
        let hx = hom_module(self.x(), v)?;
        let hy = hom_module(self.y(), v)?;
        let pre = induced_hom_map(&hx, &hy, |psi| psi.compose(&self.f))?;
        let (module, _) = pre.cokernel()?;
        Ok(FunctorValue { module, hom_y: hy })
    }

    /// `F(g): F(V) → F(W)`, `[ψ] ↦ [g ∘ ψ]`.
    pub fn eval_morphism(&self, g: &Morphism) -> Result<Morphism> {
        let fv = self.eval(g.src())?;
        let fw = self.eval(g.dst())?;
        let cols = fv
            .hom_y
            .generator_morphisms()?
            .iter()
            .map(|psi| Ok(fw.hom_y.encode(&g.compose(psi)?)?.rep().clone()))
            .collect::<Result<Vec<_>>>()?;
        let mat = Matrix::from_cols(self.ring(), fw.module.ngens(), cols)?;
        Morphism::new(&fv.module, &fw.module, &mat)
    }

    /// Auslander's defect `Ker f` with its inclusion into `Y`.
    pub fn defect(&self) -> Result<(FPModule, Morphism)> {
        self.f.kernel()
    }

    /// Zero iff `f` is a split monomorphism (test at `V = Y` with `id_Y`).
    pub fn is_zero(&self) -> Result<bool> {
        let hx = hom_module(self.x(), self.y())?;
        let hy = hom_module(self.y(), self.y())?;
        let pre = induced_hom_map(&hx, &hy, |psi| psi.compose(&self.f))?;
        let id = hy.encode(&Morphism::identity(self.y()))?;
        Ok(pre.lift(id.rep())?.is_some())
    }
}

impl fmt::Debug for FPFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPFunctor({} -> {}: {})", self.y(), self.x(), self.f.matrix())
    }
}

/// Natural transformation `src → tgt`.
#[derive(Clone)]
pub struct FunMorphism {
    src: FPFunctor,
    tgt: FPFunctor,
    /// `Y_tgt → Y_src`
    b: Morphism,
    /// `X_tgt → X_src`
    a: Morphism,
}

impl FunMorphism {
    /// Checks `f_src ∘ b = a ∘ f_tgt`.
    pub fn new(src: &FPFunctor, tgt: &FPFunctor, b: Morphism, a: Morphism) -> Result<Self> {
        if b.src() != tgt.y() || b.dst() != src.y() || a.src() != tgt.x() || a.dst() != src.x() {
            return Err(Error::NotComposable);
        }
        if src.f.compose(&b)? != a.compose(&tgt.f)? {
            return Err(Error::NotWellDefined("transformation square does not commute".into()));
        }
        Ok(FunMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            b,
            a,
        })
    }

    /// Finds the witness `a` for a given `b`; fails if none exists.
    pub fn from_b(src: &FPFunctor, tgt: &FPFunctor, b: Morphism) -> Result<Self> {
        let h_yx = hom_module(tgt.y(), src.x())?;
        let h_xx = hom_module(tgt.x(), src.x())?;
        let beta = induced_hom_map(&h_xx, &h_yx, |a| a.compose(&tgt.f))?;
        let target = h_yx.encode(&src.f.compose(&b)?)?;
        let coords = beta.lift(target.rep())?.ok_or_else(|| {
            Error::NotWellDefined("no compatible map on the X-side".into())
        })?;
        let a = h_xx.decode(&h_xx.module().elem(coords)?)?;
        FunMorphism::new(src, tgt, b, a)
    }

    pub fn identity(f: &FPFunctor) -> Self {
        FunMorphism {
            src: f.clone(),
            tgt: f.clone(),
            b: Morphism::identity(f.y()),
            a: Morphism::identity(f.x()),
        }
    }

    pub fn zero(src: &FPFunctor, tgt: &FPFunctor) -> Self {
        FunMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            b: Morphism::zero(tgt.y(), src.y()),
            a: Morphism::zero(tgt.x(), src.x()),
        }
    }

    pub fn src(&self) -> &FPFunctor {
        &self.src
    }

    pub fn tgt(&self) -> &FPFunctor {
        &self.tgt
    }

    pub fn b(&self) -> &Morphism {
        &self.b
    }

    pub fn a(&self) -> &Morphism {
        &self.a
    }

    /// `self ∘ first` where `first: E → src`.
    pub fn compose(&self, first: &FunMorphism) -> Result<FunMorphism> {
        Ok(FunMorphism {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            b: first.b.compose(&self.b)?,
            a: first.a.compose(&self.a)?,
        })
    }

    /// Zero iff `b = t ∘ f_tgt` for some `t: X_tgt → Y_src`.
    pub fn is_zero(&self) -> Result<bool> {
        let h_xy = hom_module(self.tgt.x(), self.src.y())?;
        let h_yy = hom_module(self.tgt.y(), self.src.y())?;
        let gamma = induced_hom_map(&h_xy, &h_yy, |t| t.compose(&self.tgt.f))?;
        let b = h_yy.encode(&self.b)?;
        Ok(gamma.lift(b.rep())?.is_some())
    }

    /// Component `F(V) → G(V)`, `[ψ] ↦ [ψ ∘ b]`.
    pub fn eval(&self, v: &FPModule) -> Result<(FunctorValue, FunctorValue, Morphism)> {
        let fv = self.src.eval(v)?;
        let gv = self.tgt.eval(v)?;
        let r = v.ring();
        let cols = fv
            .hom_y
            .generator_morphisms()?
            .iter()
            .map(|psi| Ok(gv.hom_y.encode(&psi.compose(&self.b)?)?.rep().clone()))
            .collect::<Result<Vec<_>>>()?;
        let mat = Matrix::from_cols(r, gv.module.ngens(), cols)?;
        let m = Morphism::new(&fv.module, &gv.module, &mat)?;
        Ok((fv, gv, m))
    }

    /// Iso iff kernel and cokernel are zero functors.
    pub fn is_iso(&self) -> Result<bool> {
        Ok(cokernel_fun(self)?.0.is_zero()? && kernel_fun(self)?.0.is_zero()?)
    }
}

impl fmt::Debug for FunMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunMorphism(b = {}, a = {})", self.b.matrix(), self.a.matrix())
    }
}

/// `Nat(F, G)` as a module.
///
/// `N = {b : f_F∘b ∈ Hom(X_G,X_F)∘f_G} / {t∘f_G}`: the compatible `b` form the
/// kernel `K` of `Hom(Y_G,Y_F) → Hom(Y_G,X_F)/(−∘f_G)`, and `N` is `K` modulo
/// the image of `Hom(X_G,Y_F)`.
#[derive(Clone)]
pub struct NatModule {
    pub module: FPModule,
    src: FPFunctor,
    tgt: FPFunctor,
    h_b: HomModule,
    h_a: HomModule,
    h_fb: HomModule,
    /// `K → Hom(Y_G, Y_F)`
    k_incl: Morphism,
    /// `Hom(X_G, X_F) → Hom(Y_G, X_F)`, `a ↦ a ∘ f_G`
    beta: Morphism,
}

impl NatModule {
    pub fn decode(&self, n: &crate::module::Element) -> Result<FunMorphism> {
        if n.module() != &self.module {
            return Err(Error::NotComposable);
        }
        let h = self.k_incl.apply_vector(n.rep())?;
        let b = self.h_b.decode(&self.h_b.module().elem(h)?)?;
        let target = self.h_fb.encode(&self.src.f.compose(&b)?)?;
        let coords = self
            .beta
            .lift(target.rep())?
            .ok_or_else(|| Error::NotWellDefined("incompatible transformation".into()))?;
        let a = self.h_a.decode(&self.h_a.module().elem(coords)?)?;
        FunMorphism::new(&self.src, &self.tgt, b, a)
    }

    pub fn generator_transformations(&self) -> Result<Vec<FunMorphism>> {
        (0..self.module.ngens())
            .map(|i| self.decode(&self.module.gen(i)))
            .collect()
    }

    /// Class of a transformation in `N`; `None` if `b` is not compatible.
    pub fn encode(&self, phi: &FunMorphism) -> Result<Option<crate::module::Element>> {
        let h = self.h_b.encode(&phi.b)?;
        match self.k_incl.lift(h.rep())? {
            Some(k) => Ok(Some(self.module.elem(k)?)),
            None => Ok(None),
        }
    }
}

pub fn nat_hom(f: &FPFunctor, g: &FPFunctor) -> Result<NatModule> {
    let h1 = hom_module(g.y(), f.y())?;
    let h2 = hom_module(g.y(), f.x())?;
    let h3 = hom_module(g.x(), f.x())?;
    let h4 = hom_module(g.x(), f.y())?;
    let alpha = induced_hom_map(&h1, &h2, |b| f.f.compose(b))?;
    let beta = induced_hom_map(&h3, &h2, |a| a.compose(&g.f))?;
    let gamma = induced_hom_map(&h4, &h1, |t| t.compose(&g.f))?;
    let (_, pi) = beta.cokernel()?;
    let (_, k_incl) = pi.compose(&alpha)?.kernel()?;
    let gamma_k = k_incl
        .factor_through(&gamma)?
        .ok_or_else(|| Error::NotWellDefined("null-homotopic maps must be compatible".into()))?;
    let (module, _) = gamma_k.cokernel()?;
    Ok(NatModule {
        module,
        src: f.clone(),
        tgt: g.clone(),
        h_b: h1,
        h_a: h3,
        h_fb: h2,
        k_incl,
        beta,
    })
}

/// `Coker φ`, presented by `(b; f_G): Y_G → Y_F ⊕ X_G`, with the canonical
/// transformation `G → Coker φ`.
pub fn cokernel_fun(phi: &FunMorphism) -> Result<(FPFunctor, FunMorphism)> {
    let g = &phi.tgt;
    let f = &phi.src;
    let sum = f.y().direct_sum(g.x())?;
    let mat = phi.b.matrix().vstack(g.f.matrix());
    let pres = Morphism::new(g.y(), &sum.module, &mat)?;
    let c = FPFunctor::new(pres);
    let to_c = FunMorphism::new(g, &c, Morphism::identity(g.y()), sum.proj[1].clone())?;
    Ok((c, to_c))
}

/// `Ker φ` with its inclusion into `F`.
///
/// With `C = coker((b; −f_G): Y_G → Y_F ⊕ X_G)`, `q: Y_F → C` the induced
/// map, and `D = coker((q; −f_F): Y_F → C ⊕ X_F)`, the kernel is presented by
/// the canonical map `C → D`.
pub fn kernel_fun(phi: &FunMorphism) -> Result<(FPFunctor, FunMorphism)> {
    let f = &phi.src;
    let g = &phi.tgt;
    let s1 = f.y().direct_sum(g.x())?;
    let m1 = Morphism::new(g.y(), &s1.module, &phi.b.matrix().vstack(g.f.neg().matrix()))?;
    let (c, pi_c) = m1.cokernel()?;
    let q = pi_c.compose(&s1.inj[0])?;
    let s2 = c.direct_sum(f.x())?;
    let m2 = Morphism::new(f.y(), &s2.module, &q.matrix().vstack(f.f.neg().matrix()))?;
    let (_, pi_d) = m2.cokernel()?;
    let pres = pi_d.compose(&s2.inj[0])?;
    let k = FPFunctor::new(pres);
    let a = pi_d.compose(&s2.inj[1])?;
    let iota = FunMorphism::new(&k, f, q, a)?;
    Ok((k, iota))
}

/// Canonical `μ_A: A*⊗− → (A,−)`, sending `λ⊗v` to `x ↦ λ(x)v`.
pub fn mu_transformation(a: &FPModule) -> Result<FunMorphism> {
    let r = a.ring();
    let d = dual(a)?;
    let src = FPFunctor::tensor(d.module())?;
    let tgt = FPFunctor::representable(a);
    let rows: Vec<_> = d.generator_morphisms()?.iter().map(|l| l.matrix().row(0)).collect();
    let b = Morphism::new(a, src.y(), &Matrix::from_rows(r, a.ngens(), &rows)?)?;
    let zero = Morphism::zero(tgt.x(), src.x());
    FunMorphism::new(&src, &tgt, b, zero)
}

/// Defect computed as `Nat(F, (Λ,−))`, with the canonical comparison map
/// `N → Ker f`, `b ↦ b(1)`.
pub struct DefectViaNat {
    pub nat: NatModule,
    pub defect: FPModule,
    pub comparison: Morphism,
}

pub fn defect_via_nat(f: &FPFunctor) -> Result<DefectViaNat> {
    let r = f.ring();
    let nat = nat_hom(f, &FPFunctor::forgetful(r))?;
    let (w, emb) = f.defect()?;
    let cols = nat
        .generator_transformations()?
        .iter()
        .map(|t| {
            emb.lift(t.b().matrix().col(0))?
                .ok_or_else(|| Error::NotWellDefined("b(1) outside the defect".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = Morphism::new(&nat.module, &w, &Matrix::from_cols(r, w.ngens(), cols)?)?;
    Ok(DefectViaNat {
        nat,
        defect: w,
        comparison,
    })
}

/// Contravariant functor `coker((−,Y) --(−,g)--> (−,X))`.
#[derive(Clone)]
pub struct ContraFPFunctor {
    g: Morphism,
}

impl ContraFPFunctor {
    pub fn new(g: Morphism) -> Self {
        ContraFPFunctor { g }
    }

    pub fn presentation(&self) -> &Morphism {
        &self.g
    }

    /// `(−, X)`, presented by `0 → X`.
    pub fn representable(x: &FPModule) -> Self {
        ContraFPFunctor::new(Morphism::zero(&FPModule::free(x.ring(), 0), x))
    }

    /// `(−, A)` modulo maps factoring through projectives, presented by the
    /// canonical surjection `R^n → A`.
    pub fn stable_hom(a: &FPModule) -> Self {
        let free = FPModule::free(a.ring(), a.ngens());
        ContraFPFunctor::new(Morphism::new_unchecked(&free, a, &Matrix::identity(a.ring(), a.ngens())))
    }

    /// `v(F) = Coker g`.
    pub fn defect(&self) -> Result<FPModule> {
        Ok(self.g.cokernel()?.0)
    }

    /// `F(V) = coker(Hom(V,Y) → Hom(V,X))`.
    pub fn eval(&self, v: &FPModule) -> Result<FPModule> {
        let hy = hom_module(v, self.g.src())?;
        let hx = hom_module(v, self.g.dst())?;
        let post = induced_hom_map(&hy, &hx, |psi| self.g.compose(psi))?;
        Ok(post.cokernel()?.0)
    }

    /// Canonical map `F(Λ) → Coker g`, `[ψ] ↦ [ψ(1)]`; an isomorphism.
    pub fn defect_comparison(&self) -> Result<Morphism> {
        let r = self.g.src().ring();
        let lam = FPModule::regular(r);
        let hx = hom_module(&lam, self.g.dst())?;
        let hy = hom_module(&lam, self.g.src())?;
        let post = induced_hom_map(&hy, &hx, |psi| self.g.compose(psi))?;
        let (at_lambda, _) = post.cokernel()?;
        let v = self.defect()?;
        let cols = hx
            .generator_morphisms()?
            .iter()
            .map(|psi| psi.matrix().col(0).clone())
            .collect();
        Morphism::new(&at_lambda, &v, &Matrix::from_cols(r, v.ngens(), cols)?)
    }
}

#[cfg(test)]
mod tests;
