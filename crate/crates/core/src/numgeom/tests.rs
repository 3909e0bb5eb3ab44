use std::collections::BTreeMap;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spaces::{gauge, phi, phi_tilde, rp2_measure, sigma_tensor};
use super::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[test]
fn chebyshev_grid_is_symmetric_with_exact_ends() {
    let g = chebyshev_grid::<f64>(257);
    assert_eq!(g[0], -1.0);
    assert_eq!(g[256], 1.0);
    assert_eq!(g[128], 0.0);
    for m in 0..257 {
        assert_eq!(g[m], -g[256 - m]);
    }
    assert!(g.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn circle_maps_at_the_corners() {
    use std::f64::consts::{FRAC_PI_4, PI};
    assert!((phi_hat::<f64>(1, FRAC_PI_4) - 1.0).abs() < 1e-15);
    assert!((phi_hat::<f64>(2, FRAC_PI_4) - 1.0).abs() < 1e-15);
    assert!((phi_hat::<f64>(1, PI) + 1.0).abs() < 1e-15);
    assert!(phi_hat::<f64>(2, PI).abs() < 1e-15);
    assert!((phi_hat::<f64>(2, 1.5 * PI) + 1.0).abs() < 1e-15);
    assert!((phi_hat::<f64>(2, PI / 2.0) - 1.0).abs() < 1e-15);
}

#[test]
fn delta_maps_at_the_corners() {
    use std::f64::consts::PI;
    assert!((delta_angle::<f64>(1, 1, 1.0) - 9.0 * PI / 4.0).abs() < 1e-15);
    assert!((delta_angle::<f64>(1, -1, -1.0) - 5.0 * PI / 4.0).abs() < 1e-15);
    assert!((delta_angle::<f64>(2, 1, 1.0) - PI / 4.0).abs() < 1e-15);
    assert!((delta_map::<f64>(1, 1, 1.0) - C64::from_polar(1.0, PI / 4.0)).norm() < 1e-15);
}

proptest! {
    #[test]
    fn delta_maps_invert_the_circle_maps(t in -1.0f64..=1.0, k in prop::sample::select(vec![1i8, -1])) {
        let kf = f64::from(k);
        let a = delta_angle::<f64>(1, k, t);
        prop_assert!((phi_hat(1, a) - kf).abs() < 1e-12);
        prop_assert!((phi_hat(2, a) - t).abs() < 1e-12);
        let b = delta_angle::<f64>(2, k, t);
        prop_assert!((phi_hat(1, b) - t).abs() < 1e-12);
        prop_assert!((phi_hat(2, b) - kf).abs() < 1e-12);
    }

    #[test]
    fn omega_splits_the_pullback(seed in any::<u64>(), i in 1u8..=2) {
        let mut r = rng(seed);
        let q: Vec<f64> = (0..6).map(|_| r.gen_range(-1.0..1.0)).collect();
        let grid = chebyshev_grid::<f64>(65);
        let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
        let f = Strip::from_fn(order, grid.clone(), |k, t| {
            let o = if k > 0 { 0 } else { 3 };
            c(q[o] + q[o + 1] * t + q[o + 2] * t * t)
        });
        let w = Omega::new(i, &f).unwrap();
        let back = pullback_delta(i, grid, |th| w.eval(th));
        prop_assert!(back.sup_diff(&f) < 1e-12);
    }

    #[test]
    fn symbol_is_multiplicative(seed in any::<u64>()) {
        let m = symbol_product_check(&mut rng(seed), 4);
        prop_assert!(m.max_residual < 1e-12, "{m:?}");
    }

    #[test]
    fn winding_is_additive_and_rotation_invariant(a in -4i64..=4, b in -4i64..=4, shift in 0usize..720) {
        let mono = |n: i64| FourierPoly { coeffs: BTreeMap::from([(n, c(1.0)), (0, c(0.25))]) };
        let (fa, fb) = (mono(a), mono(b));
        let grid = circle_grid::<f64>(720);
        let va: Vec<C64> = grid.iter().map(|&t| fa.eval(t)).collect();
        let vb: Vec<C64> = grid.iter().map(|&t| fb.eval(t)).collect();
        let prod: Vec<C64> = va.iter().zip(&vb).map(|(x, y)| x * y).collect();
        let wa = winding_number(&va).unwrap();
        let wb = winding_number(&vb).unwrap();
        prop_assert_eq!(winding_number(&prod).unwrap(), wa + wb);
        let mut rot = va.clone();
        rot.rotate_left(shift);
        prop_assert_eq!(winding_number(&rot).unwrap(), wa);
    }

    #[test]
    fn random_sphere_elements_are_members(seed in any::<u64>()) {
        let mut r = rng(seed);
        let grid = chebyshev_grid::<f64>(65);
        let x = random_sphere_element::<f64, _>(&mut r, None);
        prop_assert!(sphere_membership(&x, &grid).unwrap().max_residual < 1e-12);
        let ax = sphere_z2_action(&x);
        prop_assert!(sphere_membership(&ax, &grid).unwrap().max_residual < 1e-12);
        prop_assert!(sphere_z2_action(&ax).dist(&x) < 1e-15);
    }
}

/// Oracle for the Toeplitz product: compressions of the shift operators on
/// a space larger than any word reaches.
#[test]
fn toeplitz_product_matches_operator_matrices() {
    let mut r = rng(7);
    let n = 40;
    let big = |p: &ToeplitzPoly<f64>| {
        let s = DMatrix::<C64>::from_fn(n, n, |j, k| if j == k + 1 { c(1.0) } else { c(0.0) });
        let st = s.adjoint();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for (&(a, b), &v) in &p.terms {
            m += s.pow(a) * st.pow(b) * v;
        }
        m
    };
    for _ in 0..20 {
        let p = ToeplitzPoly::<f64>::random(&mut r, 3);
        let q = ToeplitzPoly::<f64>::random(&mut r, 3);
        let lhs = big(&p.mul(&q));
        let rhs = big(&p) * big(&q);
        let keep = n - 8;
        for j in 0..keep {
            for k in 0..keep {
                assert!((lhs[(j, k)] - rhs[(j, k)]).norm() < 1e-12);
            }
        }
        let mp = p.matrix(n);
        let bp = big(&p);
        for j in 0..keep {
            for k in 0..keep {
                assert!((mp[(j, k)] - bp[(j, k)]).norm() < 1e-14);
            }
        }
    }
    assert_eq!(ToeplitzPoly::<f64>::s_star().mul(&ToeplitzPoly::s()), ToeplitzPoly::one());
    assert!(ToeplitzPoly::<f64>::compact(2, 1).symbol().coeffs.values().all(|v| v.norm() == 0.0));
}

#[test]
fn toeplitz_spot_numerics_pass() {
    let cfg = NumConfig { trunc: 32, ..Default::default() };
    let rep = toeplitz_spot_check(&cfg, &mut rng(3), 10);
    assert!(rep.passes(1e-12), "{rep:?}");
}

#[test]
fn projective_plane_membership() {
    let grid = chebyshev_grid::<f64>(65);
    let k = C64::new(0.5, -2.0);
    let consts = [ToeplitzPoly::scalar(k), ToeplitzPoly::scalar(k), ToeplitzPoly::scalar(k)];
    assert!(rp2_measure(&consts, &grid).max_residual < 1e-15);
    let compacts = [ToeplitzPoly::compact(0, 0), ToeplitzPoly::compact(1, 2), ToeplitzPoly::zero()];
    assert!(rp2_measure(&compacts, &grid).max_residual < 1e-12);
    let s = [ToeplitzPoly::s(), ToeplitzPoly::zero(), ToeplitzPoly::zero()];
    let m = rp2_measure(&s, &grid);
    assert!((m.max_residual - 1.0).abs() < 1e-12, "{m:?}");
    let cfg = NumConfig::default();
    let r = quantum_space_membership(Space::Rp2, TupleRef::Plain(&s), &cfg).unwrap();
    assert!(!r.member);
    assert!(quantum_space_membership(Space::Sphere, TupleRef::Plain(&s), &cfg).is_err());
}

#[test]
fn sphere_needs_the_swap_gluing() {
    let grid = chebyshev_grid::<f64>(33);
    let one = ToeplitzPoly::<f64>::one();
    let sign = SphereElem { pieces: std::array::from_fn(|_| [one.clone(), one.scale(c(-1.0))]) };
    let m = sphere_membership(&sign, &grid).unwrap();
    assert!((m.max_residual - 2.0).abs() < 1e-12, "{m:?}");
    assert!(m.at.starts_with("condition 01"));
    assert!(sphere_membership(&SphereElem::constant(c(3.0)), &grid).unwrap().max_residual == 0.0);
}

#[test]
fn sphere_reads_central_involution() {
    let inst = crate::builtin::build("sphere_piece", None).unwrap();
    let alg = inst.algebra();
    let tuple: Vec<_> = ["u", "1", "s*s_star"].iter().map(|e| alg.parse(e).unwrap()).collect();
    let x = SphereElem::<f64>::from_nc(alg, &tuple).unwrap();
    assert_eq!(x.pieces[0][0], ToeplitzPoly::one());
    assert_eq!(x.pieces[0][1], ToeplitzPoly::one().scale(c(-1.0)));
    assert_eq!(x.pieces[2][1], ToeplitzPoly::monomial(1, 1, c(1.0)));
}

#[test]
fn gluing_maps_are_gauge_conjugates() {
    let grid = chebyshev_grid::<f64>(17);
    let mut r = rng(11);
    let x = [ToeplitzPoly::<f64>::random(&mut r, 3), ToeplitzPoly::random(&mut r, 3)];
    let f = sigma_tensor(1, &x, &grid);
    let g = sigma_tensor(2, &x, &grid);
    for (ij, t) in [((0, 1), &f), ((0, 2), &f), ((1, 2), &g)] {
        let (d, ..) = gauge(&phi_tilde(ij, &gauge(t)).unwrap()).sup_diff(&phi(ij, t).unwrap());
        assert!(d < 1e-15);
    }
    assert!(phi((1, 2), &f).is_err());
    let rep = gauge_conjugation_check(&NumConfig { interval: 33, ..Default::default() }, &mut r, 5).unwrap();
    assert!(rep.passes(1e-12), "{rep:?}");
}

#[test]
fn decomposition_round_trips() {
    let cfg = NumConfig { interval: 33, ..Default::default() };
    let rep = round_trip_check(&cfg, &mut rng(5), 16);
    assert!(rep.passes(1e-12), "{rep:?}");
    assert_eq!(rep.measures.len(), 5);
}

#[test]
fn pi_maps_pick_the_expected_faces() {
    let mut r = rng(9);
    let grid = chebyshev_grid::<f64>(33);
    let x = random_sphere_element::<f64, _>(&mut r, Some(false));
    assert!(sphere_z2_action(&x).dist(&x.scale(c(-1.0))) < 1e-15);
    let p1 = pi_n(1, &x);
    let p2 = pi_n(2, &x);
    assert_eq!(p1[0], x.pieces[0][0].alpha());
    assert_eq!(p2[2], x.pieces[2][1]);
    let (plus, minus) = disc_parity(&p1, &grid);
    assert!(minus < 1e-12 && plus > 1e-3);
    assert_eq!(sigma_circ(2, &p1, &grid)[0], sigma_circ(1, &p1, &grid)[3]);
    assert!(disc_membership(&p2, &grid).max_residual < 1e-12);
}

#[test]
fn face_atlas_of_a_member() {
    let grid = chebyshev_grid::<f64>(33);
    let x = random_sphere_element::<f64, _>(&mut rng(1), None);
    let atlas = face_atlas(&x, &grid);
    assert_eq!(atlas.faces.len(), 6);
    assert_eq!(atlas.edges.len(), 12);
    assert!(atlas.max_residual() < 1e-12);
    let mut y = x.clone();
    y.pieces[1][0] = y.pieces[1][0].add(&ToeplitzPoly::s());
    let bad = face_atlas(&y, &grid);
    assert!(!bad.mismatches(1e-9).is_empty());
    assert!(bad.mismatches(1e-9).iter().all(|e| e.0.contains("T_{1,1}")));
}

#[test]
fn surjectivity_conditions_hold() {
    let cfg = NumConfig { interval: 65, ..Default::default() };
    let rep = surjectivity_conditions(&cfg, &mut rng(2), 10).unwrap();
    assert!(rep.passes(1e-9), "{rep:?}");
    assert!(rep.measure("corner identity").unwrap().max_residual < 1e-15);
}

/// Oracle: the winding of a Laurent polynomial `p` with lowest degree `-N`
/// is the number of roots of `z^N p(z)` inside the unit disc minus `N`.
fn winding_by_roots(p: &FourierPoly<f64>) -> i64 {
    let lo = *p.coeffs.keys().next().unwrap();
    let hi = *p.coeffs.keys().last().unwrap();
    let deg = (hi - lo) as usize;
    if deg == 0 {
        return lo;
    }
    let lead = p.coeffs[&hi];
    let comp = DMatrix::<C64>::from_fn(deg, deg, |i, j| {
        if i == 0 {
            -p.coeffs.get(&(hi - 1 - j as i64)).copied().unwrap_or(c(0.0)) / lead
        } else if i == j + 1 {
            c(1.0)
        } else {
            c(0.0)
        }
    });
    let inside = comp.schur().eigenvalues().unwrap().iter().filter(|z| z.norm() < 1.0).count() as i64;
    inside + lo
}

#[test]
fn winding_agrees_with_root_count() {
    let mut r = rng(4);
    for kind in [LoopKind::Equivariant, LoopKind::EvenFirstRow] {
        for _ in 0..20 {
            let l = MatrixLoop::random(&mut r, 2, kind);
            let e = &l.entries;
            let mut det = e[0].mul(&e[3]);
            for (k, v) in e[1].mul(&e[2]).coeffs {
                *det.coeffs.entry(k).or_insert(c(0.0)) -= v;
            }
            det.coeffs.retain(|_, v| v.norm() > 1e-14);
            let samples = l.det_samples(720);
            if samples.iter().any(|z| z.norm() < 1e-3) {
                continue;
            }
            if let Ok(w) = det_winding(&l, 720) {
                assert_eq!(w, winding_by_roots(&det));
            }
        }
    }
}

#[test]
fn winding_of_simple_loops() {
    let z = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(1, c(1.0))]) });
    assert_eq!(det_winding(&z, 720).unwrap(), 1);
    let zz = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(-2, c(1.0))]) });
    assert_eq!(det_winding(&zz, 720).unwrap(), -2);
    let zero = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(1, c(1.0)), (0, c(-1.0))]) });
    assert!(matches!(det_winding(&zero, 720), Err(crate::Error::Singular { index: 0 })));
    let fast = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(400, c(1.0))]) });
    assert!(matches!(det_winding(&fast, 720), Err(crate::Error::Density { .. })));
}

/// Oracle: summed principal phase steps over a grid ten times denser.
fn winding_by_phase(f: impl Fn(C64) -> C64, n: usize) -> i64 {
    let tau = 2.0 * std::f64::consts::PI;
    let vals: Vec<C64> = (0..n).map(|k| f(C64::from_polar(1.0, tau * k as f64 / n as f64))).collect();
    let total: f64 = (0..n).map(|k| (vals[(k + 1) % n] / vals[k]).arg()).sum();
    (total / tau).round() as i64
}

#[test]
fn winding_of_cube_and_constant() {
    let cube = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(3, c(1.0))]) });
    assert_eq!(det_winding(&cube, 720).unwrap(), 3);
    assert_eq!(winding_by_phase(|z| z.powi(3), 7200), 3);
    let constant = MatrixLoop::scalar(FourierPoly { coeffs: BTreeMap::from([(0, C64::new(2.0, -1.0))]) });
    assert_eq!(det_winding(&constant, 720).unwrap(), 0);
    assert_eq!(winding_number(&circle_grid::<f64>(720).iter().map(|&t| C64::from_polar(1.0, t)).collect::<Vec<_>>()).unwrap(), 1);
}

#[test]
fn parity_probe_and_controls() {
    let mut r = rng(6);
    let eq = equivariant_parity_probe(&mut r, 2, 100, LoopKind::Equivariant, 720);
    assert!(eq.all_odd(), "{eq:?}");
    // det(-z) = det(z) for an all-even loop, so every winding is even
    let even = equivariant_parity_probe(&mut r, 2, 100, LoopKind::AllEven, 720);
    assert_eq!(even.even, 100);
    let free = equivariant_parity_probe(&mut r, 2, 100, LoopKind::EvenFirstRow, 720);
    assert!(free.both_parities(), "{free:?}");
}

#[test]
fn peter_weyl_identities() {
    let p = S3Point { a: C64::from_polar(0.5f64.sqrt(), 0.3), c: C64::from_polar(0.5f64.sqrt(), -1.1) };
    let pole = S3Point { a: C64::new(0.0, 1.0), c: c(0.0) };
    assert_eq!(omega_s3(&pole), 1.0);
    assert_eq!(1.0 - omega_s3(&pole).powi(2) * pole.a.norm_sqr(), 0.0);
    let w2 = omega_s3(&p).powi(2);
    assert!((w2 - 2.0).abs() < 1e-12);
    assert!((1.0 - w2 * p.a.norm_sqr()).abs() < 1e-12);
    assert!((1.0 - w2 * p.c.norm_sqr()).abs() < 1e-12);
    let rep = peter_weyl_checks(&mut rng(8), 2000);
    assert!(rep.passes(1e-9), "{rep:?}");
    assert_eq!(rep.get_count("a-patch points").unwrap() + rep.get_count("c-patch points").unwrap(), 2000);
}

#[test]
fn config_validation_and_seeds() {
    assert!(NumConfig::default().validate().is_ok());
    assert!(NumConfig { circle: 100, ..Default::default() }.validate().is_err());
    assert!(NumConfig { interval: 256, ..Default::default() }.validate().is_err());
    assert!(NumConfig { tol: 0.0, ..Default::default() }.validate().is_err());
    assert_eq!(NumConfig::default().edge_mask(), 8);
    assert_eq!(derive_seed(1, "a"), derive_seed(1, "a"));
    assert_ne!(derive_seed(1, "a"), derive_seed(1, "b"));
    assert_ne!(derive_seed(1, "a"), derive_seed(2, "a"));
}
