use super::*;
use crate::mf::{compose, is_contractible, is_homotopy_equivalence, null_homotopy};
use crate::ring::{MonomialOrder, Ring};

fn context(vars: &[&str], w: &str) -> Arc<RingContext> {
    let r = Ring::new(32003, vars, MonomialOrder::Grevlex).unwrap();
    let w = r.parse(w).unwrap();
    RingContext::new(r, w, 0).unwrap()
}

fn mat(ctx: &RingContext, rows: &[&str]) -> RingMatrix {
    RingMatrix::parse_rows(ctx.ring(), rows).unwrap()
}

fn mf(ctx: &Arc<RingContext>, e1: &[&str], e0: &[&str]) -> MatrixFactorization {
    MatrixFactorization::new(ctx, mat(ctx, e1), mat(ctx, e0)).unwrap()
}

fn module(ctx: &Arc<RingContext>, rows: &[&str]) -> FPModule {
    FPModule::new(ctx, mat(ctx, rows), Over::R).unwrap()
}

fn node() -> Arc<RingContext> {
    context(&["x", "y"], "x*y")
}

fn cusp_pair(ctx: &Arc<RingContext>) -> MatrixFactorization {
    mf(ctx, &["x, y", "y, x^2"], &["x^2, -y", "-y, x"])
}

#[test]
fn cokernels() {
    let ctx = node();
    let e = mf(&ctx, &["x"], &["y"]);
    assert!(cok(&e).unwrap().same_presentation(&module(&ctx, &["x"])).unwrap());
    let t = MatrixFactorization::trivial(&ctx, 2, Orientation::IdFirst).unwrap();
    assert_eq!(crate::module::k_dimension(&cok(&t).unwrap()).unwrap(), Dim::Finite(0));
    let shifted = cok(&e.shift()).unwrap();
    assert!(shifted.same_presentation(&module(&ctx, &["y"])).unwrap());
}

#[test]
fn cok_is_functorial() {
    let ctx = context(&["x", "y"], "x^3 - y^2");
    let e = cusp_pair(&ctx);
    let p = MfMorphism::new(&e, &e, mat(&ctx, &["x, 0", "0, x"]), mat(&ctx, &["x, 0", "0, x"])).unwrap();
    let q = MfMorphism::identity(&e).scale(&ctx.ring().parse("y + 2").unwrap());
    let pq = compose(&p, &q).unwrap();
    assert_eq!(cok_morphism(&pq), cok_morphism(&q).checked_mul(&cok_morphism(&p)).unwrap());
}

#[test]
fn syzygies() {
    let ctx = node();
    let omega = syzygy_r(&module(&ctx, &["x"])).unwrap();
    assert!(omega.same_presentation(&module(&ctx, &["y"])).unwrap());
    assert_eq!(syzygy_r(&FPModule::free(&ctx, 2, Over::R)).unwrap().gens(), 0);
    let cusp = context(&["x", "y"], "x^3 - y^2");
    let e = cusp_pair(&cusp);
    let omega = syzygy_r(&cok(&e).unwrap()).unwrap();
    assert!(omega.same_presentation(&cok(&e.shift()).unwrap()).unwrap());
}

#[test]
fn resolution_of_factorization_cokernel() {
    let ctx = node();
    let res = free_resolution_r(&cok(&mf(&ctx, &["x"], &["y"])).unwrap(), 6).unwrap();
    assert_eq!(res.ranks, vec![1; 7]);
    assert_eq!(res.periodic_from, Some(0));
    for (i, d) in res.mats.iter().enumerate() {
        let expected = if i % 2 == 0 { "x" } else { "y" };
        assert_eq!(*d, mat(&ctx, &[expected]));
    }
    assert!(res.verify().unwrap());
}

#[test]
fn resolution_of_residue_field_on_node() {
    let ctx = node();
    let res = free_resolution_r(&module(&ctx, &["x, y"]), 8).unwrap();
    assert!(res.verify().unwrap());
    let s = res.periodic_from.unwrap();
    assert!(s <= 3, "periodic from {s}");
    assert!(res.ranks[s..].iter().all(|&b| b == res.ranks[s]));
}

#[test]
fn resolution_of_free_module_is_empty() {
    let ctx = node();
    let res = free_resolution_r(&FPModule::free(&ctx, 1, Over::R), 5).unwrap();
    assert!(res.mats.is_empty());
    assert_eq!(res.periodic_from, None);
}

#[test]
fn mcm_detection() {
    let ctx = node();
    assert!(mcm_check(&cok(&mf(&ctx, &["x"], &["y"])).unwrap()).unwrap());
    assert!(mcm_check(&FPModule::free(&ctx, 2, Over::R)).unwrap());
    assert!(!mcm_check(&module(&ctx, &["x, y"])).unwrap());
}

#[test]
fn stabilize_mcm_module() {
    let ctx = node();
    let m = module(&ctx, &["x"]);
    let e = stabilize(&m).unwrap();
    let target = mf(&ctx, &["x"], &["y"]);
    let a = RingMatrix::identity(ctx.ring(), 1);
    let t = transport_morphism(&a, &e, &target).unwrap();
    assert!(is_homotopy_equivalence(&t.p).unwrap());
    assert!(is_homotopy_equivalence(&t.s).unwrap());
}

#[test]
fn stabilize_free_module_is_contractible() {
    let ctx = node();
    let e = stabilize(&FPModule::free(&ctx, 2, Over::R)).unwrap();
    assert!(is_contractible(&e).unwrap().is_null());
}

#[test]
fn stabilize_residue_field_of_node() {
    let ctx = node();
    let e = stabilize(&module(&ctx, &["x, y"])).unwrap();
    assert_eq!(e.rank(), 2);
    assert!(!is_contractible(&e).unwrap().is_null());
    assert_eq!(hom_space_dimension(&e, &e).unwrap(), Dim::Finite(2));
}

#[test]
fn transport_examples() {
    let ctx = node();
    let e = mf(&ctx, &["x"], &["y"]);
    let one = RingMatrix::identity(ctx.ring(), 1);
    let t = transport_morphism(&one, &e, &e).unwrap();
    assert!(is_homotopy_equivalence(&t.p).unwrap());
    assert!(is_homotopy_equivalence(&t.s).unwrap());

    let zero = RingMatrix::zeros(ctx.ring(), 1, 1);
    let t = transport_morphism(&zero, &e, &e).unwrap();
    assert!(null_homotopy(&t.p).unwrap().is_null());

    let y = mat(&ctx, &["y"]);
    let t = transport_morphism(&y, &e, &e).unwrap();
    let h = null_homotopy(&t.p).unwrap();
    let w = h.witness().unwrap();
    assert!(free_factorization(&t.p, w).is_ok());

    let f = mf(&ctx, &["y"], &["x"]);
    let err = transport_morphism(&one, &e, &f).unwrap_err();
    assert_eq!(err, Error::IncompatibleMorphism { column: 0 });
}

#[test]
fn stable_hom_examples() {
    let ctx = node();
    let m = module(&ctx, &["x"]);
    let r = stable_hom_dimension(&m, &m).unwrap();
    assert_eq!(r.dimension, Dim::Finite(1));
    assert_eq!(r.generators.len(), 1);
    let free = FPModule::free(&ctx, 1, Over::R);
    assert_eq!(stable_hom_dimension(&free, &m).unwrap().dimension, Dim::Finite(0));
    assert_eq!(stable_hom_dimension(&m, &free).unwrap().dimension, Dim::Finite(0));
    let other = module(&ctx, &["y"]);
    assert_eq!(stable_hom_dimension(&m, &other).unwrap().dimension, Dim::Finite(0));
}

#[test]
fn stable_hom_generators_are_module_maps() {
    let ctx = context(&["x", "y"], "x^3 - y^2");
    let e = cusp_pair(&ctx);
    let m = cok(&e).unwrap();
    let r = stable_hom_dimension(&m, &m).unwrap();
    assert_eq!(r.dimension.finite().unwrap() as usize, r.generators.len());
    let rel = m.gb().unwrap();
    for g in &r.generators {
        let image = g.checked_mul(e.e1()).unwrap();
        assert!(rel.contains_all(&image.columns()));
    }
}

#[test]
fn fully_faithful_examples() {
    let ctx = context(&["x"], "x^2");
    let e = mf(&ctx, &["x"], &["x"]);
    let rep = verify_fully_faithful(&e, &e).unwrap();
    assert_eq!(rep.direct.to_string(), "PASS 1 = 1");
    assert_eq!(rep.verdict(), Verdict::Pass);
    let t = MatrixFactorization::trivial(&ctx, 1, Orientation::WFirst).unwrap();
    let rep = verify_fully_faithful(&e, &t).unwrap();
    assert_eq!(rep.direct.mf_side, Dim::Finite(0));
    assert_eq!(rep.verdict(), Verdict::Pass);
}

#[test]
fn a3_both_sides() {
    let ctx = context(&["x"], "x^4");
    let objs: Vec<_> = (1..=3)
        .map(|a| mf(&ctx, &[&format!("x^{a}")], &[&format!("x^{}", 4 - a)]))
        .collect();
    let expected = [[1, 1, 1], [1, 2, 1], [1, 1, 1]];
    for (i, e) in objs.iter().enumerate() {
        for (j, f) in objs.iter().enumerate() {
            let rep = verify_fully_faithful(e, f).unwrap();
            assert_eq!(rep.direct.module_side, Dim::Finite(expected[i][j]));
            assert_eq!(rep.verdict(), Verdict::Pass, "{i} {j}");
        }
    }
}
