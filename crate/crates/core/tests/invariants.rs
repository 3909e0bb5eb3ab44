use comodcheck::builtin::{self, Coeff};
use comodcheck::ncpoly::{Algebra, NcPoly, Tensor, Word};
use comodcheck::{Field, QI, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn random_poly(a: &Algebra<Coeff>, d: usize, picks: &[(usize, i64)]) -> NcPoly<Coeff> {
    let basis: Vec<Word> = a.basis(d);
    NcPoly::from_terms(picks.iter().map(|&(i, c)| (basis[i % basis.len()].clone(), Coeff::from_i64(c))))
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..500, -3i64..=3), 1..4)
}

fn mul2(a: &Algebra<Coeff>, x: &Tensor<Coeff>, y: &Tensor<Coeff>) -> Tensor<Coeff> {
    x.mul(y).normalize(&[a, a]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(x in picks(), y in picks(), z in picks()) {
        let h = builtin::su_q2(None).unwrap();
        let a = h.algebra();
        let (x, y, z) = (random_poly(a, 2, &x), random_poly(a, 2, &y), random_poly(a, 2, &z));
        let left = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
        let right = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_idempotent(x in picks(), y in picks()) {
        let h = builtin::gl_q2(None).unwrap();
        let a = h.algebra();
        let p = random_poly(a, 2, &x).free_mul(&random_poly(a, 2, &y));
        let n = a.normal_form(&p).unwrap();
        prop_assert!(a.is_normal(&n));
        prop_assert_eq!(a.normal_form(&n).unwrap(), n);
    }

    #[test]
    fn star_is_an_antilinear_antimultiplicative_involution(x in picks(), y in picks()) {
        let h = builtin::su_q2(None).unwrap();
        let a = h.algebra();
        let (x, y) = (random_poly(a, 2, &x), random_poly(a, 2, &y));
        prop_assert_eq!(a.star(&a.star(&x).unwrap()).unwrap(), x.clone());
        let xy = a.mul(&x, &y).unwrap();
        prop_assert_eq!(a.star(&xy).unwrap(), a.mul(&a.star(&y).unwrap(), &a.star(&x).unwrap()).unwrap());
        let i = Coeff::imag_unit().unwrap();
        prop_assert_eq!(a.star(&x.scale(&i)).unwrap(), a.star(&x).unwrap().scale(&i.conj()));
    }

    #[test]
    fn coproduct_and_counit_are_multiplicative(x in picks(), y in picks()) {
        let h = builtin::su_q2(None).unwrap();
        let a = h.algebra();
        let (x, y) = (random_poly(a, 2, &x), random_poly(a, 2, &y));
        let xy = a.mul(&x, &y).unwrap();
        prop_assert_eq!(h.delta(&xy).unwrap(), mul2(a, &h.delta(&x).unwrap(), &h.delta(&y).unwrap()));
        prop_assert_eq!(h.counit(&xy).unwrap(), h.counit(&x).unwrap() * h.counit(&y).unwrap());
    }

    #[test]
    fn antipode_reverses_products_and_inverts(x in picks(), y in picks()) {
        let h = builtin::gl_q2(None).unwrap();
        let a = h.algebra();
        let (x, y) = (random_poly(a, 2, &x), random_poly(a, 2, &y));
        let xy = a.mul(&x, &y).unwrap();
        let sxy = h.antipode(&xy).unwrap();
        prop_assert_eq!(sxy, a.mul(&h.antipode(&y).unwrap(), &h.antipode(&x).unwrap()).unwrap());
        prop_assert_eq!(h.antipode_inv(&h.antipode(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn coaction_is_multiplicative(x in picks(), y in picks()) {
        let (p, _) = builtin::comodule("toeplitz_u1", None).unwrap();
        let a = p.algebra();
        let hopf = p.hopf().algebra();
        let (x, y) = (random_poly(a, 2, &x), random_poly(a, 2, &y));
        let xy = a.mul(&x, &y).unwrap();
        let prod = p.coact(&x).unwrap().mul(&p.coact(&y).unwrap()).normalize(&[a, hopf]).unwrap();
        prop_assert_eq!(p.coact(&xy).unwrap(), prod);
    }

    #[test]
    fn shown_polynomials_parse_back(x in picks()) {
        let h = builtin::su_q2(None).unwrap();
        let a = h.algebra();
        let x = random_poly(a, 3, &x);
        prop_assert_eq!(a.parse(&a.show(&x)).unwrap(), x);
    }

    #[test]
    fn gaussian_rationals_form_a_field(a in -20i64..=20, b in 1i64..=9, c in -20i64..=20, d in 1i64..=9) {
        let x = QI::new(Q::new(a.into(), b.into()), Q::new(c.into(), d.into()));
        let y = QI::new(Q::new(c.into(), b.into()), Q::new((-a).into(), d.into()));
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!(x.clone().conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.clone().conj() * y.clone().conj());
        if let Some(inv) = Field::inv(&x) {
            prop_assert!((x.clone() * inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }
}
