use serde_json::json;

use super::{caught_num, Check, Ctx, Outcome};
use crate::error::Result;
use crate::numgeom::{
    chebyshev_grid, circle_grid, circle_map_checks, equivariant_parity_probe, face_atlas, gauge_conjugation_check, gauge_conjugation_check_with,
    cocycle_residual, kernel_image_residual, surjectivity_conditions, surjectivity_conditions_with, peter_weyl_checks,
    peter_weyl_checks_with, phi_tilde, quantum_space_membership, random_sphere_element, round_trip_check, round_trip_check_with,
    sphere_membership, splitting_checks, symbol_product_check, toeplitz_spot_check, winding_number, Disc,
    LoopKind, SurjectivityMutation, Measure, NumReport, PiMutation, PwMutation, Space, SphereElem, ToeplitzPoly, TupleRef, C64,
};
use crate::pullback::sphere_trivialisation;

const RP2: &str = "quantum real projective plane";
const SPHERE: &str = "gluing of the Toeplitz quantum sphere";
const SURJECTIVITY: &str = "surjectivity conditions of the sphere pullback";
const DISC: &str = "Z2 decomposition of the sphere";
const PARITY: &str = "winding parity of equivariant loops";
const PW: &str = "Peter-Weyl decomposition over the three-sphere";

/// Tolerance for identities that hold exactly up to rounding.
pub const EXACT_TOL: f64 = 1e-12;
/// Matrix size of the parity probe.
pub const PROBE_SIZE: usize = 2;
/// Points per trial of the Peter-Weyl suite.
pub const PW_POINTS_PER_TRIAL: usize = 10;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `r₀ + r₁(s⁴ + s*⁴)` plus a compact part: a face of an RP² member.
fn rp2_face(r0: f64, r1: f64, compact: u32) -> ToeplitzPoly<f64> {
    ToeplitzPoly::scalar(c(r0))
        .add(&ToeplitzPoly::monomial(4, 0, c(r1)))
        .add(&ToeplitzPoly::monomial(0, 4, c(r1)))
        .add(&ToeplitzPoly::compact(compact, compact + 1))
}

fn rp2_member() -> Disc<f64> {
    [rp2_face(0.5, 1.0, 0), rp2_face(0.5, 1.0, 1), rp2_face(0.5, 1.0, 2)]
}

fn membership_witness(space: Space, t: TupleRef<'_, f64>, ctx: &Ctx) -> Result<Option<String>> {
    let m = quantum_space_membership(space, t, &ctx.num)?;
    Ok((!m.member).then(|| format!("residual {:.3e} at {}", m.max_residual, m.at)))
}

pub(super) fn quantum_rp2(ctx: &Ctx) -> Vec<Check> {
    let n = ctx.num.circle;
    let trials = ctx.num.trials;
    let mut out = vec![
        Check::new("quantum-rp2/circle-maps", RP2, json!({"grid_circle": n, "tol": EXACT_TOL}), move |ctx, _| {
            Ok(Outcome::from_num(&circle_map_checks(ctx.num.circle), EXACT_TOL))
        }),
        Check::new("quantum-rp2/splittings", RP2, json!({"grid_circle": n, "grid_interval": ctx.num.interval, "strips": trials}), move |ctx, rng| {
            Ok(Outcome::from_num(&splitting_checks(&ctx.num, rng, ctx.num.trials)?, ctx.num.tol))
        }),
        Check::new("quantum-rp2/symbols", RP2, json!({"pairs": trials, "trunc": ctx.num.trunc}), move |ctx, rng| {
            let mut rep = NumReport::new("Toeplitz symbols");
            rep.add(symbol_product_check(rng, ctx.num.trials));
            rep.absorb(toeplitz_spot_check(&ctx.num, rng, 20));
            Ok(Outcome::from_num(&rep, ctx.num.tol))
        }),
        Check::new("quantum-rp2/members", RP2, json!({"grid_interval": ctx.num.interval}), |ctx, _| {
            let mut rep = NumReport::new("RP² members");
            let one = [ToeplitzPoly::one(), ToeplitzPoly::one(), ToeplitzPoly::one()];
            for (label, t) in [("(1, 1, 1)", one), ("r₀ + r₁(s⁴ + s*⁴) + compacts", rp2_member())] {
                let m = quantum_space_membership(Space::Rp2, TupleRef::Plain(&t), &ctx.num)?;
                let mut meas = Measure::new(format!("{label} is a member"));
                meas.push(m.max_residual, || m.at.clone());
                rep.add(meas);
            }
            Ok(Outcome::from_num(&rep, ctx.num.tol))
        }),
    ];
    let mutants: [(&str, fn() -> Disc<f64>); 3] = [
        ("sign-flip", || {
            let [a, b, c2] = rp2_member();
            [a.scale(c(-1.0)), b, c2]
        }),
        ("odd-generator", || [ToeplitzPoly::s(), ToeplitzPoly::zero(), ToeplitzPoly::zero()]),
        ("changed-symbol", || {
            let [a, b, _] = rp2_member();
            let t = ToeplitzPoly::scalar(c(0.5)).add(&ToeplitzPoly::monomial(2, 0, c(1.0))).add(&ToeplitzPoly::monomial(0, 2, c(1.0)));
            [a, b, t]
        }),
    ];
    for (label, make) in mutants {
        out.push(Check::new(format!("quantum-rp2/mutant/{label}"), RP2, json!({"tuple": label}), move |ctx, _| {
            Ok(Outcome::mutant(membership_witness(Space::Rp2, TupleRef::Plain(&make()), ctx)))
        }));
    }
    out
}

/// Symbolically glued compact tuple, read as a numerical sphere element.
fn glued_compact() -> Result<SphereElem<f64>> {
    let triv = sphere_trivialisation()?;
    let p = triv.covering.piece(0).algebra();
    let compact = p.parse("1 - s*s_star")?;
    let u = triv.hopf().algebra().gen("u")?;
    let glued = triv.piece_glue(&[compact.clone(), compact.clone(), compact], &u)?;
    SphereElem::from_nc(p, &glued)
}

pub(super) fn sphere_gluing(ctx: &Ctx) -> Vec<Check> {
    let trials = ctx.num.trials;
    let members = (trials / 10).max(1);
    let mut out = vec![
        Check::new("sphere-gluing/gauge", SPHERE, json!({"samples": trials}), |ctx, rng| {
            Ok(Outcome::from_num(&gauge_conjugation_check(&ctx.num, rng, ctx.num.trials)?, ctx.num.tol))
        }),
        Check::new("sphere-gluing/members", SPHERE, json!({"samples": members, "grid_interval": ctx.num.interval}), move |ctx, rng| {
            let grid = chebyshev_grid::<f64>(ctx.num.interval);
            let mut rep = NumReport::new("sphere members");
            let mut cond = Measure::new("sphere conditions");
            let mut edges = Measure::new("face atlas edges match");
            let mut elems: Vec<(String, SphereElem<f64>)> = vec![("constant".into(), SphereElem::constant(c(1.0)))];
            elems.push(("glued compact tuple".into(), glued_compact()?));
            for k in 0..members {
                elems.push((format!("random element {k}"), random_sphere_element(rng, None)));
            }
            for (label, x) in &elems {
                let m = sphere_membership(x, &grid)?;
                cond.push(m.max_residual, || format!("{label}: {}", m.at));
                let atlas = face_atlas(x, &grid);
                let worst = atlas.edges.iter().max_by(|a, b| a.1.total_cmp(&b.1)).cloned().unwrap_or_default();
                edges.push(worst.1, || format!("{label}: {}", worst.0));
            }
            rep.add(cond);
            rep.add(edges);
            Ok(Outcome::from_num(&rep, ctx.num.tol))
        }),
    ];
    out.push(Check::new("sphere-gluing/mutant/corrupted-face", SPHERE, json!({"face": "T_{1,1}", "corruption": "sign flip"}), |ctx, rng| {
        let grid = chebyshev_grid::<f64>(ctx.num.interval);
        let mut x: SphereElem<f64> = random_sphere_element(rng, None);
        x.pieces[1][0] = x.pieces[1][0].scale(c(-1.0));
        let atlas = face_atlas(&x, &grid);
        let bad = atlas.mismatches(ctx.num.tol);
        Ok(Outcome::mutant(Ok((!bad.is_empty()).then(|| bad.iter().map(|(l, r)| format!("{l} ({r:.3e})")).collect::<Vec<_>>().join("; ")))))
    }));
    out.push(Check::new("sphere-gluing/mutant/ungauged", SPHERE, json!({"gluing": "Φ̃_ij", "samples": 4}), |ctx, rng| {
        let r = gauge_conjugation_check_with(&ctx.num, rng, 4, phi_tilde);
        Ok(Outcome::mutant(r.map(|r| caught_num(&r, ctx.num.tol))))
    }));
    out.push(Check::new("sphere-gluing/mutant/unswapped", SPHERE, json!({"gluing": "identity", "samples": 4}), |ctx, rng| {
        let r = gauge_conjugation_check_with(&ctx.num, rng, 4, |_, f| Ok(f.clone()));
        Ok(Outcome::mutant(r.map(|r| caught_num(&r, ctx.num.tol))))
    }));
    out
}

pub(super) fn mattprop(ctx: &Ctx) -> Vec<Check> {
    let trials = ctx.num.trials;
    let mut out = vec![
        Check::new("mattprop/conditions", SURJECTIVITY, json!({"samples": trials, "degree": 3}), |ctx, rng| {
            Ok(Outcome::from_num(&surjectivity_conditions(&ctx.num, rng, ctx.num.trials)?, ctx.num.tol))
        }),
        Check::new("mattprop/zero-input", SURJECTIVITY, json!({}), |ctx, rng| {
            let grid = chebyshev_grid::<f64>(ctx.num.interval);
            let zero = ToeplitzPoly::zero();
            let mut rep = NumReport::new("zero input");
            let mut m = Measure::new("residuals vanish at 0");
            m.push(kernel_image_residual(&zero, &grid, rng)?, || "kernel images".into());
            m.push(cocycle_residual(&zero, [c(1.0), c(-1.0)], &grid)?, || "cocycle".into());
            rep.add(m);
            Ok(Outcome::from_num(&rep, ctx.num.tol))
        }),
    ];
    let mutants = [
        ("ungauged", SurjectivityMutation { ungauged: true, ..Default::default() }),
        ("unprojected", SurjectivityMutation { unprojected: true, ..Default::default() }),
        ("unswapped-corner", SurjectivityMutation { unswapped_corner: true, ..Default::default() }),
    ];
    for (label, m) in mutants {
        out.push(Check::new(format!("mattprop/mutant/{label}"), SURJECTIVITY, json!({"mutation": label, "samples": 20}), move |ctx, rng| {
            Ok(Outcome::mutant(surjectivity_conditions_with(&ctx.num, rng, 20, m).map(|r| caught_num(&r, ctx.num.tol))))
        }));
    }
    out
}

pub(super) fn disc_decomposition(ctx: &Ctx) -> Vec<Check> {
    let trials = ctx.num.trials;
    let mut out = vec![Check::new("disc-decomposition/round-trips", DISC, json!({"samples": trials}), |ctx, rng| {
        Ok(Outcome::from_num(&round_trip_check(&ctx.num, rng, ctx.num.trials), ctx.num.tol))
    })];
    for (label, m) in [
        ("inverse-without-alpha", PiMutation::InverseWithoutAlpha),
        ("inverse-wrong-sign", PiMutation::InverseWrongSign),
        ("forward-without-alpha", PiMutation::ForwardWithoutAlpha),
    ] {
        out.push(Check::new(format!("disc-decomposition/mutant/{label}"), DISC, json!({"mutation": label, "samples": 8}), move |ctx, rng| {
            Ok(Outcome::mutant(Ok(caught_num(&round_trip_check_with(&ctx.num, rng, 8, Some(m)), ctx.num.tol))))
        }));
    }
    out
}

pub(super) fn parity_probe(ctx: &Ctx) -> Vec<Check> {
    let n = ctx.num.circle;
    let trials = ctx.num.trials;
    let params = |kind: &str| json!({"kind": kind, "size": PROBE_SIZE, "trials": trials, "grid_circle": n});
    let mut out = vec![
        Check::new("parity-probe/equivariant", PARITY, params("equivariant"), |ctx, rng| {
            let r = equivariant_parity_probe(rng, PROBE_SIZE, ctx.num.trials, LoopKind::Equivariant, ctx.num.circle);
            let summary = format!("{}/{} odd, {} rejected", r.odd, r.trials, r.rejected);
            Ok(if r.all_odd() {
                Outcome::pass().with_witness(summary)
            } else {
                let k = r.windings.iter().position(|w| w.rem_euclid(2) == 0).unwrap_or(0);
                Outcome::fail(format!("{summary}; trial {k} winds {}", r.windings[k]))
            })
        }),
        Check::new("parity-probe/even-first-row-control", PARITY, params("even-first-row"), |ctx, rng| {
            let r = equivariant_parity_probe(rng, PROBE_SIZE, ctx.num.trials, LoopKind::EvenFirstRow, ctx.num.circle);
            let summary = format!("{} odd, {} even", r.odd, r.even);
            Ok(if r.both_parities() { Outcome::pass().with_witness(summary) } else { Outcome::fail(summary) })
        }),
        Check::new("parity-probe/all-even-control", PARITY, params("all-even"), |ctx, rng| {
            let r = equivariant_parity_probe(rng, PROBE_SIZE, ctx.num.trials, LoopKind::AllEven, ctx.num.circle);
            let summary = format!("{} odd, {} even; det(-z) = det(z) forces even winding", r.odd, r.even);
            Ok(if r.odd == 0 { Outcome::pass().with_witness(summary) } else { Outcome::fail(summary) })
        }),
    ];
    out.push(Check::new("parity-probe/mutant/mislabelled-family", PARITY, params("even-first-row as equivariant"), |ctx, rng| {
        let r = equivariant_parity_probe(rng, PROBE_SIZE, ctx.num.trials.min(100), LoopKind::EvenFirstRow, ctx.num.circle);
        let k = r.windings.iter().position(|w| w.rem_euclid(2) == 0);
        Ok(Outcome::mutant(Ok(k.map(|k| format!("trial {k} winds {}", r.windings[k])))))
    }));
    out.push(Check::new("parity-probe/mutant/coarse-grid", PARITY, json!({"loop": "z^5", "samples": 8}), |_, _| {
        let vals: Vec<C64> = circle_grid::<f64>(8).into_iter().map(|t| C64::from_polar(1.0, 5.0 * t)).collect();
        Ok(Outcome::mutant(winding_number(&vals).map(|_| None)))
    }));
    out.push(Check::new("parity-probe/mutant/singular-loop", PARITY, json!({"loop": "z - 1"}), |ctx, _| {
        let vals: Vec<C64> = circle_grid::<f64>(ctx.num.circle).into_iter().map(|t| C64::from_polar(1.0, t) - 1.0).collect();
        Ok(Outcome::mutant(winding_number(&vals).map(|_| None)))
    }));
    out
}

pub(super) fn peter_weyl(ctx: &Ctx) -> Vec<Check> {
    let points = ctx.num.trials * PW_POINTS_PER_TRIAL;
    let mut out = vec![Check::new("peter-weyl/identities", PW, json!({"points": points, "charges": [-2, 2]}), move |ctx, rng| {
        Ok(Outcome::from_num(&peter_weyl_checks(rng, points), ctx.num.tol))
    })];
    for (label, m) in [
        ("omega-squared", PwMutation::OmegaSquared),
        ("adjoint-without-omega", PwMutation::AdjointWithoutOmega),
        ("conjugated-section", PwMutation::ConjugatedSection),
    ] {
        out.push(Check::new(format!("peter-weyl/mutant/{label}"), PW, json!({"mutation": label, "points": 100}), move |ctx, rng| {
            Ok(Outcome::mutant(Ok(caught_num(&peter_weyl_checks_with(rng, 100, Some(m)), ctx.num.tol))))
        }));
    }
    out
}
