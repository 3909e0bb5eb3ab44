use super::*;
use crate::builtin;
use crate::ncpoly::Tensor;

type P = NcPoly<builtin::Coeff>;

#[test]
fn axes_covering_certificates() {
    let cov = axes_covering().unwrap();
    let rep = cov.check(3);
    assert!(rep.ok(), "{:?}", rep.failures);
    let base = &cov.kernel_data().unwrap().base;
    let p = base.algebra().parse("x + 2*y*y - z").unwrap();
    assert!(cov.multipullback_membership(&cov.chi(&p).unwrap()).unwrap());
    let zero = vec![P::zero(); 3];
    assert!(cov.multipullback_membership(&zero).unwrap());
}

#[test]
fn non_distributive_kernels_are_caught() {
    let text = r#"{"base": "axes", "pieces": [{"kernel": ["x"]}, {"kernel": ["y"]}, {"kernel": ["x + y"]}]}"#;
    let (cov, triv) = covering_from_json(text, None).unwrap();
    assert!(triv.is_none());
    let ((i, j, k), w) = cov.distributivity_witness(2).unwrap().unwrap();
    assert_eq!((i, j, k), (0, 1, 2));
    let a = cov.kernel_data().unwrap().base.algebra();
    assert_eq!(w, a.parse("x + y").unwrap().scale(&w.coeff(&a.parse("x").unwrap().leading().unwrap().0.clone())));
    assert!(!cov.check(2).ok());
}

#[test]
fn cross_covering_has_sign_transition() {
    let (_, triv) = covering_from_json(SHIPPED_COVERINGS[1].1, None).unwrap();
    let triv = triv.unwrap();
    let rep = triv.check(3);
    assert!(rep.ok(), "{:?}", rep.failures);
    let u = triv.hopf().algebra().gen("u").unwrap();
    assert_eq!(triv.transition(0, 1, &u).unwrap(), P::one().neg());
}

#[test]
fn sphere_trivialisation_and_gluing() {
    let triv = sphere_trivialisation().unwrap();
    let rep = triv.check(2);
    assert!(rep.ok(), "{:?}", rep.failures);
    let u = triv.hopf().algebra().gen("u").unwrap();
    let o = triv.covering.overlap(0, 1).algebra();
    assert_eq!(triv.transition(0, 1, &u).unwrap(), o.parse("h*k").unwrap());

    let one = vec![P::one(); 3];
    assert_eq!(triv.piece_glue(&one, &P::one()).unwrap(), one);
    match triv.piece_glue(&one, &u) {
        Err(Error::Incompatible { i, j, difference }) => {
            assert_eq!((i, j), (0, 1));
            assert!(difference.contains('h') && difference.contains('k'), "{difference}");
        }
        other => panic!("expected INCOMPATIBLE, got {other:?}"),
    }
    let p = triv.covering.piece(0).algebra();
    let compact = p.parse("1 - s*s_star").unwrap();
    let glued = triv.piece_glue(&vec![compact.clone(); 3], &u).unwrap();
    assert!(triv.covering.multipullback_membership(&glued).unwrap());

    let mismatched = vec![P::one(), P::zero(), P::zero()];
    assert!(!triv.covering.multipullback_membership(&mismatched).unwrap());
}

#[test]
fn cotensor_membership_over_z2() {
    let t = builtin::toeplitz_z2(None).unwrap();
    let (z2, pi) = builtin::u1_to_z2().unwrap();
    let u1 = builtin::o_u1(None).unwrap();
    let lgens = (0..2u16)
        .map(|g| pi.apply_leg(&u1.delta_word(&Word::single(g)).unwrap(), 0).unwrap())
        .collect();
    let left = LinearMap::hom("left", u1.algebra_arc().clone(), vec![z2.algebra_arc().clone(), u1.algebra_arc().clone()], lgens).unwrap();
    let s = t.algebra().gen("s").unwrap();
    let u = u1.algebra().gen("u").unwrap();
    let one = P::one();
    assert!(cotensor_membership(&Tensor::pure(&[&s, &u]), t.coaction_map(), &left).unwrap());
    assert!(!cotensor_membership(&Tensor::pure(&[&s, &one]), t.coaction_map(), &left).unwrap());
    assert!(cotensor_membership(&Tensor::pure(&[&one, &one]), t.coaction_map(), &left).unwrap());
}

#[test]
fn prolonged_sphere_reduces_along_the_kernel() {
    let bar = sphere_trivialisation().unwrap();
    let (_, pi) = builtin::u1_to_z2().unwrap();
    let u1 = builtin::o_u1(None).unwrap();
    let pro = prolong(&bar, &pi, &u1, 2).unwrap();
    assert!(pro.report.ok(), "{:?}", pro.report.failures);
    assert!(!pro.kernel.is_empty());
    let g = u1.algebra().parse("u*u - 1").unwrap();
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(pro.triv.transition(i, j, &g).unwrap().is_zero());
        }
    }
    let red = pro.triv.reducibility_check(&[g], 2).unwrap();
    assert_eq!(red.verdict, Verdict::Reducible, "{:?}", red.report.failures);
    assert!(red.reduced.is_some());
}

#[test]
fn prolongation_must_be_surjective() {
    let bar = sphere_trivialisation().unwrap();
    let u1 = builtin::o_u1(None).unwrap();
    let z2 = builtin::c_z2(None).unwrap();
    let one = P::one();
    let pi = LinearMap::algebra_map("trivial", u1.algebra_arc().clone(), z2.algebra_arc().clone(), vec![one.clone(), one]).unwrap();
    assert!(matches!(prolong(&bar, &pi, &u1, 1), Err(Error::NotSurjective(_))));
}

#[test]
fn frame_bundle_smash_is_obstructed() {
    let sm = builtin::plane_gl_smash(None).unwrap();
    let cov = Covering::single(sm.comodule().clone());
    let b = sm.base();
    let gens = vec![sm.embed_base(&b.gen("x").unwrap()), sm.embed_base(&b.gen("y").unwrap())];
    let triv = Trivialisation::new(cov, vec![sm.cleaving().unwrap()]).unwrap().with_base_gens(vec![gens]).unwrap();
    let h = sm.hopf().algebra();
    let j = h.parse("D - 1").unwrap();
    let red = triv.reducibility_check(&[j], 1).unwrap();
    match red.verdict {
        Verdict::Obstructed(w) => assert!(w.contains("▷") && w.contains('x'), "{w}"),
        v => panic!("expected an obstruction, got {v:?}"),
    }
    let zero = triv.reducibility_check(&[P::zero()], 1).unwrap();
    assert_eq!(zero.verdict, Verdict::Reducible);
}

#[test]
fn ideal_correspondence_in_the_z2_smash() {
    let sm = builtin::toeplitz_z2_smash(None).unwrap();
    let p = sm.comodule();
    let ell = crate::comodule::StrongConnection::from_cleaving(&sm.cleaving().unwrap(), sm.hopf(), 2).unwrap();
    let a = sm.algebra();
    let l = a.parse("1 - s*s_star").unwrap();
    let rep = ideal_base_correspondence(p, &ell, std::slice::from_ref(&l), std::slice::from_ref(&l), 2);
    assert!(rep.ok(), "{:?}", rep.failures);
    let u = a.gen("u").unwrap();
    let bad = ideal_base_correspondence(p, &ell, &[u], &[l], 2);
    assert!(bad.failures.iter().any(|f| f.check == "B ∩ K ⊆ L" || f.check == "K ⊆ LP"), "{:?}", bad.failures);
    let none = ideal_base_correspondence(p, &ell, &[], &[], 2);
    assert!(none.ok());
}
