use super::*;
use crate::gb::Vector;
use crate::module::{bass_torsion, tensor_modules};
use crate::poly::{parse_poly, Poly, RingSpec};

fn ring(names: &[&str]) -> Ring {
    RingSpec::new(names).unwrap()
}

fn p(r: &Ring, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

fn coker(r: &Ring, ngens: usize, rows: &[&[&str]]) -> FPModule {
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| p(r, s)).collect()).collect();
    FPModule::from_relation_rows(r, ngens, &rows).unwrap()
}

fn mat(r: &Ring, ncols: usize, rows: &[&[&str]]) -> Matrix {
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| p(r, s)).collect()).collect();
    Matrix::from_rows(r, ncols, &rows).unwrap()
}

fn cyc(r: &Ring, g: &[&str]) -> FPModule {
    FPModule::cyclic(r, &g.iter().map(|s| p(r, s)).collect::<Vec<_>>()).unwrap()
}

fn univariate_modules(r: &Ring) -> Vec<FPModule> {
    vec![
        FPModule::regular(r),
        cyc(r, &["x"]),
        cyc(r, &["x^2"]),
        coker(r, 2, &[&["0", "x"]]),
        coker(r, 2, &[&["x", "x"]]),
    ]
}

/// Identity-on-generators map between two presentations of the same quotient.
fn same_generators_iso(a: &FPModule, b: &FPModule) -> bool {
    a.ngens() == b.ngens()
        && Morphism::new(a, b, &Matrix::identity(a.ring(), a.ngens()))
            .and_then(|m| m.is_iso())
            .unwrap_or(false)
}

/// Canonical `F(V) → B ⊗ V` for `F = B ⊗ −`.
fn tensor_comparison(b: &FPModule, v: &FPModule) -> Morphism {
    let r = b.ring();
    let f = FPFunctor::tensor(b).unwrap();
    let fv = f.eval(v).unwrap();
    let t = tensor_modules(b, v).unwrap();
    let cols = fv
        .hom_y
        .generator_morphisms()
        .unwrap()
        .iter()
        .map(|psi| {
            let mut e = vec![Poly::zero(r); t.ngens()];
            for i in 0..b.ngens() {
                for j in 0..v.ngens() {
                    e[i * v.ngens() + j] = psi.matrix().entry(j, i).clone();
                }
            }
            Vector::new(r, e).unwrap()
        })
        .collect();
    Morphism::new(&fv.module, &t, &Matrix::from_cols(r, t.ngens(), cols).unwrap()).unwrap()
}

#[test]
fn representable_basics() {
    let r = ring(&["x"]);
    for a in univariate_modules(&r) {
        let f = FPFunctor::representable(&a);
        let (w, emb) = f.defect().unwrap();
        assert!(emb.is_iso().unwrap());
        assert_eq!(w.qdim(), a.qdim());
        for v in univariate_modules(&r) {
            let fv = f.eval(&v).unwrap();
            assert!(same_generators_iso(&fv.module, fv.hom_y.module()));
        }
    }
    let lam = FPFunctor::forgetful(&r);
    let v = cyc(&r, &["x^3"]);
    assert_eq!(lam.eval(&v).unwrap().module.qdim(), Some(3));
}

#[test]
fn stable_hom_examples() {
    let r = ring(&["x"]);
    for k in 1..=2 {
        let f = FPFunctor::stable_hom(&FPModule::free(&r, k)).unwrap();
        assert!(f.is_zero().unwrap());
        assert!(f.eval(&cyc(&r, &["x"])).unwrap().module.is_zero());
    }
    let a = cyc(&r, &["x"]);
    let f = FPFunctor::stable_hom(&a).unwrap();
    assert_eq!(f.x().ngens(), 0);
    assert!(!f.is_zero().unwrap());
    assert_eq!(f.eval(&a).unwrap().module.qdim(), Some(1));
    let (w, emb) = f.defect().unwrap();
    assert!(emb.is_iso().unwrap());
    assert_eq!(w.qdim(), Some(1));

    let mixed = coker(&r, 2, &[&["0", "x"]]);
    let f = FPFunctor::stable_hom(&mixed).unwrap();
    assert!(f.eval(&FPModule::regular(&r)).unwrap().module.is_zero());
}

#[test]
fn stable_hom_presentation_law() {
    let r = ring(&["x", "y"]);
    let modules = vec![
        coker(&r, 2, &[&["0", "x"]]),
        coker(&r, 2, &[&["x", "y"]]),
        coker(&r, 1, &[&["x"], &["y"]]),
        coker(&r, 3, &[&["x", "y", "0"], &["0", "x", "y"]]),
    ];
    for a in modules {
        let f = FPFunctor::stable_hom(&a).unwrap();
        let forms = dual(&a).unwrap().generator_morphisms().unwrap();
        let (_, emb) = f.defect().unwrap();
        for k in emb.columns() {
            for l in &forms {
                assert!(l.apply_vector(k).unwrap().is_zero());
            }
        }
        for i in 0..a.ngens() {
            let e = a.gen(i);
            let killed = forms.iter().all(|l| l.apply(&e).unwrap().is_zero());
            let inside = a.submodule_contains(emb.columns(), e.rep()).unwrap();
            assert_eq!(killed, inside);
        }
    }
}

#[test]
fn tensor_functor_examples() {
    let r = ring(&["x"]);
    let rx = cyc(&r, &["x"]);
    let f = FPFunctor::tensor(&rx).unwrap();
    assert_eq!(f.eval(&cyc(&r, &["x^2"])).unwrap().module.qdim(), Some(1));
    let (w, _) = f.defect().unwrap();
    assert!(w.is_zero());
    let free = FPModule::free(&r, 2);
    let (w, emb) = FPFunctor::tensor(&free).unwrap().defect().unwrap();
    assert_eq!(w.ngens(), 2);
    assert!(emb.is_iso().unwrap());
    let id = FunMorphism::identity(&FPFunctor::tensor(&FPModule::regular(&r)).unwrap());
    assert!(!id.is_zero().unwrap());
    for b in univariate_modules(&r) {
        for v in univariate_modules(&r) {
            assert!(tensor_comparison(&b, &v).is_iso().unwrap());
        }
        let at_r = FPFunctor::tensor(&b).unwrap().eval(&FPModule::regular(&r)).unwrap();
        assert_eq!(at_r.module.qdim(), b.qdim());
    }
}

#[test]
fn evaluation_is_natural() {
    let r = ring(&["x"]);
    let targets = [cyc(&r, &["x^2"]), cyc(&r, &["x^3"]), coker(&r, 2, &[&["x", "0"]])];
    let entries = ["1", "x", "x + 1", "2*x^2 - 1", "0"];
    let b = coker(&r, 2, &[&["x", "x^2"]]);
    let f = FPFunctor::tensor(&b).unwrap();
    let v = FPModule::free(&r, 1);
    let mut checked = 0;
    for (k, w) in targets.iter().cycle().take(10).enumerate() {
        let col: Vec<&str> = (0..w.ngens()).map(|i| entries[(k + 2 * i) % entries.len()]).collect();
        let g = Morphism::new(&v, w, &mat(&r, 1, &col.iter().map(std::slice::from_ref).collect::<Vec<_>>())).unwrap();
        let fg = f.eval_morphism(&g).unwrap();
        let cv = tensor_comparison(&b, &v);
        let cw = tensor_comparison(&b, w);
        // id_B ⊗ g on the generators b_i ⊗ v_j
        let t_v = tensor_modules(&b, &v).unwrap();
        let t_w = tensor_modules(&b, w).unwrap();
        let mut cols = Vec::new();
        for i in 0..b.ngens() {
            for j in 0..v.ngens() {
                let mut e = vec![Poly::zero(&r); t_w.ngens()];
                for l in 0..w.ngens() {
                    e[i * w.ngens() + l] = g.matrix().entry(l, j).clone();
                }
                cols.push(Vector::new(&r, e).unwrap());
            }
        }
        let tg = Morphism::new(&t_v, &t_w, &Matrix::from_cols(&r, t_w.ngens(), cols).unwrap()).unwrap();
        assert_eq!(cw.compose(&fg).unwrap(), tg.compose(&cv).unwrap());
        checked += 1;
    }
    assert_eq!(checked, 10);
}

#[test]
fn yoneda() {
    let r = ring(&["x"]);
    let ms = univariate_modules(&r);
    for a in &ms {
        for b in &ms {
            let fa = FPFunctor::representable(a);
            let fb = FPFunctor::representable(b);
            let nat = nat_hom(&fa, &fb).unwrap();
            let h = hom_module(b, a).unwrap();
            let cols = nat
                .generator_transformations()
                .unwrap()
                .iter()
                .map(|t| h.encode(t.b()).unwrap().rep().clone())
                .collect();
            let m = Morphism::new(&nat.module, h.module(), &Matrix::from_cols(&r, h.module().ngens(), cols).unwrap())
                .unwrap();
            assert!(m.is_iso().unwrap(), "{a} {b}");
        }
    }
}

#[test]
fn nat_contains_identity_and_zero() {
    let r = ring(&["x"]);
    let a = coker(&r, 2, &[&["0", "x"]]);
    let functors = vec![
        FPFunctor::representable(&a),
        FPFunctor::tensor(&a).unwrap(),
        FPFunctor::stable_hom(&a).unwrap(),
    ];
    for f in &functors {
        let nat = nat_hom(f, f).unwrap();
        let id = nat.encode(&FunMorphism::identity(f)).unwrap().unwrap();
        assert!(!id.is_zero());
        let z = nat.decode(&nat.module.zero_elem()).unwrap();
        assert!(z.is_zero().unwrap());
    }
}

#[test]
fn cokernel_examples() {
    let r = ring(&["x"]);
    let a = coker(&r, 2, &[&["0", "x"]]);
    let f = FPFunctor::tensor(&a).unwrap();
    let g = FPFunctor::representable(&a);

    let (c, to_c) = cokernel_fun(&FunMorphism::zero(&f, &g)).unwrap();
    assert!(to_c.is_iso().unwrap());
    assert!(!c.is_zero().unwrap());

    let (c, _) = cokernel_fun(&FunMorphism::identity(&g)).unwrap();
    assert!(c.is_zero().unwrap());
    for v in univariate_modules(&r) {
        assert!(c.eval(&v).unwrap().module.is_zero());
    }

    for a in univariate_modules(&r) {
        let mu = mu_transformation(&a).unwrap();
        let (c, _) = cokernel_fun(&mu).unwrap();
        let st = FPFunctor::stable_hom(&a).unwrap();
        assert_eq!(c.presentation().matrix(), st.presentation().matrix());
        assert_eq!(c.y(), st.y());
    }
}

#[test]
fn kernel_examples() {
    let r = ring(&["x"]);
    let a = coker(&r, 2, &[&["0", "x"]]);
    let f = FPFunctor::stable_hom(&a).unwrap();
    let (k, _) = kernel_fun(&FunMorphism::identity(&f)).unwrap();
    assert!(k.is_zero().unwrap());
    let g = FPFunctor::tensor(&cyc(&r, &["x"])).unwrap();
    let (_, iota) = kernel_fun(&FunMorphism::zero(&f, &g)).unwrap();
    assert!(iota.is_iso().unwrap());
}

#[test]
fn kernel_of_stabilization_is_projective_part() {
    let r = ring(&["x"]);
    let probes = univariate_modules(&r);
    for a in univariate_modules(&r) {
        let rep = FPFunctor::representable(&a);
        let st = FPFunctor::stable_hom(&a).unwrap();
        let zero = Morphism::zero(st.x(), rep.x());
        let to_stable = FunMorphism::new(&rep, &st, Morphism::identity(&a), zero).unwrap();
        let (_, iota) = kernel_fun(&to_stable).unwrap();
        let mu = mu_transformation(&a).unwrap();
        for v in &probes {
            let (_, hv, iv) = iota.eval(v).unwrap();
            let (_, _, mv) = mu.eval(v).unwrap();
            assert!(iv.is_injective().unwrap());
            let cmp = hv.module.compare_submodules(iv.columns(), mv.columns()).unwrap();
            assert!(cmp.is_equal(), "{a} at {v}");
        }
    }
}

#[test]
fn kernels_and_cokernels_commute_with_evaluation() {
    let r = ring(&["x"]);
    let probes = univariate_modules(&r);
    let a = coker(&r, 2, &[&["0", "x"]]);
    let b = cyc(&r, &["x^2"]);
    let f = FPFunctor::representable(&b);
    let g = FPFunctor::representable(&a);
    // (B,−) → (A,−) induced by A → B, e1 ↦ 1, e2 ↦ x
    let phi = Morphism::new(&a, &b, &mat(&r, 2, &[&["1", "x"]])).unwrap();
    let t = FunMorphism::new(&f, &g, phi, Morphism::zero(g.x(), f.x())).unwrap();
    let (_, iota) = kernel_fun(&t).unwrap();
    let (_, to_c) = cokernel_fun(&t).unwrap();
    for v in &probes {
        let (_, gv, tv) = t.eval(v).unwrap();
        let (kv, fv, iv) = iota.eval(v).unwrap();
        assert!(iv.is_injective().unwrap());
        let (_, kincl) = tv.kernel().unwrap();
        assert!(fv.module.compare_submodules(iv.columns(), kincl.columns()).unwrap().is_equal());
        let _ = kv;
        let (_, _, cv) = to_c.eval(v).unwrap();
        assert!(cv.is_surjective().unwrap());
        let (_, ck) = cv.kernel().unwrap();
        assert!(gv.module.compare_submodules(ck.columns(), tv.columns()).unwrap().is_equal());
    }
}

#[test]
fn defect_examples() {
    let r = ring(&["x"]);
    let functors = vec![
        FPFunctor::representable(&cyc(&r, &["x"])),
        FPFunctor::tensor(&coker(&r, 2, &[&["0", "x"]])).unwrap(),
        FPFunctor::stable_hom(&coker(&r, 2, &[&["0", "x"]])).unwrap(),
        FPFunctor::stable_hom(&cyc(&r, &["x^2"])).unwrap(),
    ];
    for f in &functors {
        let d = defect_via_nat(f).unwrap();
        assert!(d.comparison.is_iso().unwrap(), "{f:?}");
    }
    let rx = cyc(&r, &["x"]);
    let (w, _) = FPFunctor::stable_hom(&rx).unwrap().defect().unwrap();
    assert_eq!(w.qdim(), Some(1));
}

#[test]
fn contravariant_defect() {
    let r = ring(&["x"]);
    let x = coker(&r, 2, &[&["0", "x"]]);
    let rep = ContraFPFunctor::representable(&x);
    assert!(same_generators_iso(&rep.defect().unwrap(), &x));
    assert!(rep.defect_comparison().unwrap().is_iso().unwrap());

    for a in univariate_modules(&r) {
        let st = ContraFPFunctor::stable_hom(&a);
        assert!(st.defect().unwrap().is_zero());
        assert!(st.eval(&FPModule::regular(&r)).unwrap().is_zero());
    }

    let rr = FPModule::regular(&r);
    let g = ContraFPFunctor::new(Morphism::scalar(&rr, &p(&r, "x")));
    assert_eq!(g.defect().unwrap(), rx_module(&r));
    assert!(g.defect_comparison().unwrap().is_iso().unwrap());
}

fn rx_module(r: &Ring) -> FPModule {
    cyc(r, &["x"])
}

#[test]
fn main_theorem_examples() {
    let r = ring(&["x"]);
    let rep = verify_main_theorem(&FPModule::regular(&r)).unwrap();
    assert!(rep.equal);
    assert!(rep.defect_generators.is_empty() && rep.torsion_generators.is_empty());

    let rx = cyc(&r, &["x"]);
    let rep = verify_main_theorem(&rx).unwrap();
    assert!(rep.equal);
    assert_eq!(rep.defect_generators, vec!["(1)".to_string()]);

    let mixed = coker(&r, 2, &[&["0", "x"]]);
    let rep = verify_main_theorem(&mixed).unwrap();
    assert!(rep.equal && rep.witness.is_none());
    let (t, _) = bass_torsion(&mixed).unwrap();
    assert_eq!(t.qdim(), Some(1));
    assert_eq!(rep.torsion_generators, vec!["(0, 1)".to_string()]);

    let r2 = ring(&["x", "y"]);
    let ideal = coker(&r2, 2, &[&["y", "-x"]]);
    assert!(verify_main_theorem(&ideal).unwrap().equal);
    assert!(verify_main_theorem(&cyc(&r2, &["x", "y"])).unwrap().equal);
}

#[test]
fn theorem_functoriality() {
    let r = ring(&["x"]);
    let a = cyc(&r, &["x"]);
    let b = coker(&r, 2, &[&["0", "x^2"]]);
    let phi = Morphism::new(&a, &b, &mat(&r, 1, &[&["0"], &["x"]])).unwrap();
    assert!(check_theorem_functoriality(&phi).unwrap());
    let psi = Morphism::new(&b, &cyc(&r, &["x"]), &mat(&r, 2, &[&["x", "1"]])).unwrap();
    assert!(check_theorem_functoriality(&psi).unwrap());
}

#[test]
fn adjunction_examples() {
    let r = ring(&["x"]);
    let lam = FPModule::regular(&r);
    let a = coker(&r, 2, &[&["0", "x"]]);
    let cases = vec![
        (FPFunctor::representable(&cyc(&r, &["x^2"])), a.clone()),
        (FPFunctor::stable_hom(&a).unwrap(), lam.clone()),
        (FPFunctor::tensor(&cyc(&r, &["x"])).unwrap(), a.clone()),
        (FPFunctor::tensor(&a).unwrap(), cyc(&r, &["x^2"])),
    ];
    for (f, m) in cases {
        let rep = verify_adjunction(&f, &m).unwrap();
        assert!(rep.bijective(), "{rep:?}");
    }
}

#[test]
fn transformation_square_is_checked() {
    let r = ring(&["x"]);
    let rr = FPModule::regular(&r);
    let f = FPFunctor::tensor(&cyc(&r, &["x"])).unwrap();
    let g = FPFunctor::forgetful(&r);
    // the reverse direction would need x = a ∘ 0
    assert!(FunMorphism::from_b(&g, &f, Morphism::identity(&rr)).is_ok());
    assert!(FunMorphism::from_b(&f, &g, Morphism::identity(&rr)).is_err());
}
