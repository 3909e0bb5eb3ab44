use serde_json::json;

use super::{caught, Check, Ctx, Outcome};
use crate::builtin::{self, Coeff, FrameVerdict};
use crate::comodule::{graded_basis_check, reduction_ideal, CleavingMap, ComoduleAlgebra, StrongConnection};
use crate::error::{Error, Result};
use crate::hopf::LinearMap;
use crate::ncpoly::NcPoly;
use crate::present::Instance;
use crate::pullback::{
    covering_from_json, hopf_fibration_patches, ideal_base_correspondence, prolong as prolong_along, sphere_trivialisation,
    PresentationRef, Prolongation, Trivialisation, Verdict, SHIPPED_COVERINGS,
};
use crate::report::CheckReport;
use crate::scalar::Field;

type P = NcPoly<Coeff>;

const HOPF_BUILTINS: [&str; 5] = ["c_z2", "o_u1", "su_q2", "gl_q2", "sl_q2"];
const SMASH_BUILTINS: [&str; 3] = ["toeplitz_z2_smash", "toeplitz_u1_smash", "plane_gl_smash"];

const HOPF: &str = "Hopf algebra axioms";
const COMODULE: &str = "comodule algebra axioms";
const STRONG: &str = "strong connections";
const SMASH: &str = "smash products";
const COVERING: &str = "distributive coverings";
const TRANSITION: &str = "transition functions";
const REDUCTION: &str = "reduction of the structure Hopf algebra";
const PROLONG: &str = "prolongation along Hopf surjections";
const FRAME: &str = "frame bundle reduction to SL_q(2)";

fn instance(ctx: &Ctx, name: &str) -> Result<Instance<Coeff>> {
    if builtin::NAMES.contains(&name) {
        return builtin::build(name, ctx.q());
    }
    let q = ctx.q().map(|q| q.to_expr());
    PresentationRef::Name(name.into()).resolve()?.with_q(q.as_deref()).import()
}

fn q_param(ctx: &Ctx) -> String {
    builtin::describe_q(ctx.q())
}

fn targets(ctx: &Ctx, default: &[&str]) -> Vec<String> {
    match &ctx.algebra {
        Some(a) => vec![a.clone()],
        None => default.iter().map(|s| s.to_string()).collect(),
    }
}

fn flat(r: Result<Option<(String, String)>>) -> Result<Option<String>> {
    r.map(|v| v.map(|(a, w)| format!("{a}: {w}")))
}

pub(super) fn hopf_axioms(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(4);
    let mut out = Vec::new();
    for name in targets(ctx, &HOPF_BUILTINS) {
        let params = json!({"algebra": name, "degree": d, "q": q_param(ctx)});
        out.push(Check::new(format!("hopf-axioms/{name}"), HOPF, params, move |ctx, _| {
            let inst = instance(ctx, &name)?;
            if matches!(inst, Instance::Algebra(_)) {
                return Ok(Outcome::fail(format!("{name} carries no Hopf structure")));
            }
            Ok(Outcome::from_report(&builtin::verify_instance(&name, &inst, d)?))
        }));
    }
    if ctx.algebra.is_none() {
        let q = q_param(ctx);
        out.push(Check::new("hopf-axioms/surjection/su_q2-o_u1", HOPF, json!({"q": q}), |ctx, _| {
            Ok(Outcome::from_report(&builtin::su_q2_to_u1_checks(ctx.q())?))
        }));
        out.push(Check::new("hopf-axioms/surjection/o_u1-c_z2", HOPF, json!({}), |_, _| {
            let u1 = builtin::o_u1(None)?;
            let (z2, pi) = builtin::u1_to_z2()?;
            Ok(Outcome::from_report(&builtin::surjection_checks(&u1, &z2, &pi, &[])))
        }));
        out.push(Check::new("hopf-axioms/surjection/gl_q2-sl_q2", HOPF, json!({"q": q}), |ctx, _| {
            let (gl, sl, pi) = builtin::gl_to_sl(ctx.q())?;
            Ok(Outcome::from_report(&builtin::surjection_checks(&gl, &sl, &pi, &[])))
        }));
    }
    for (table, gen, expr) in [("delta", "alpha", "alpha # alpha"), ("counit", "gamma", "1"), ("antipode", "alpha", "alpha")] {
        let params = json!({"base": "su_q2", "table": table, "generator": gen, "entry": expr});
        out.push(Check::new(format!("hopf-axioms/mutant/{table}-{gen}"), HOPF, params, move |ctx, _| {
            let h = builtin::su_q2(ctx.q())?;
            Ok(Outcome::mutant(h.with_entry(table, gen, expr).map(|m| caught(&m.check_hopf_axioms(2)))))
        }));
    }
    out
}

pub(super) fn comodule_axioms(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(4);
    let names: Vec<&str> = builtin::NAMES.iter().copied().filter(|n| !HOPF_BUILTINS.contains(n)).collect();
    let mut out = Vec::new();
    for name in targets(ctx, &names) {
        let params = json!({"algebra": name, "degree": d, "q": q_param(ctx)});
        out.push(Check::new(format!("comodule-axioms/{name}"), COMODULE, params, move |ctx, _| {
            let inst = instance(ctx, &name)?;
            Ok(Outcome::from_report(&builtin::verify_instance(&name, &inst, d)?))
        }));
    }
    for (base, gen, expr) in [("toeplitz_z2", "s", "s # 1"), ("toeplitz_u1", "s_star", "s_star # u"), ("su_q2_u1", "alpha", "alpha # 1")] {
        let params = json!({"base": base, "generator": gen, "coaction": expr});
        out.push(Check::new(format!("comodule-axioms/mutant/{base}-{gen}"), COMODULE, params, move |ctx, _| {
            let (p, _) = builtin::comodule(base, ctx.q())?;
            Ok(Outcome::mutant(p.with_coaction_entry(gen, expr).map(|m| caught(&m.check_axioms(2)))))
        }));
    }
    out
}

/// The comodule algebra and cleaving of a smash product, or of a comodule
/// instance that declares a cleaving.
fn cleft(inst: Instance<Coeff>, name: &str) -> Result<(ComoduleAlgebra<Coeff>, CleavingMap<Coeff>)> {
    match inst {
        Instance::Smash(s) => Ok((s.comodule().clone(), s.cleaving()?)),
        Instance::Comodule { comodule, cleaving: Some(c) } => Ok((comodule, c)),
        _ => Err(Error::Config(format!("{name} is neither a smash product nor a cleft comodule algebra"))),
    }
}

pub(super) fn strong_connection(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(4);
    let mut out = Vec::new();
    for name in targets(ctx, &["toeplitz_z2_smash", "toeplitz_u1_smash", "sphere_piece"]) {
        let params = json!({"algebra": name, "degree": d, "q": q_param(ctx)});
        out.push(Check::new(format!("strong-connection/{name}"), STRONG, params, move |ctx, _| {
            let (p, c) = cleft(instance(ctx, &name)?, &name)?;
            let ell = StrongConnection::from_cleaving(&c, p.hopf(), d)?;
            Ok(Outcome::from_report(&ell.verify(&p)))
        }));
    }
    for (base, word, value) in [("toeplitz_z2_smash", "u", "1 # u"), ("toeplitz_u1_smash", "u", "u # u"), ("toeplitz_u1_smash", "u_inv", "u_inv # u_inv")] {
        let params = json!({"base": base, "word": word, "value": value});
        out.push(Check::new(format!("strong-connection/mutant/{base}-{word}"), STRONG, params, move |ctx, _| {
            let (p, c) = cleft(builtin::build(base, ctx.q())?, base)?;
            let ell = StrongConnection::from_cleaving(&c, p.hopf(), 2)?;
            Ok(Outcome::mutant(ell.with_entry(word, value).map(|m| caught(&m.verify(&p)))))
        }));
    }
    out
}

pub(super) fn smash(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(3);
    let mut out = Vec::new();
    for name in targets(ctx, &SMASH_BUILTINS) {
        let params = json!({"algebra": name, "degree": d, "q": q_param(ctx)});
        out.push(Check::new(format!("smash/{name}"), SMASH, params, move |ctx, _| {
            let sm = instance(ctx, &name)?.into_smash()?;
            let mut rep = CheckReport::new(format!("smash product {name}"));
            match sm.module_algebra_violation(d, d)? {
                None => rep.record("module algebra", format!("degree {d}"), true, String::new),
                Some((axiom, w)) => rep.fail("module algebra", axiom, w),
            }
            rep.absorb(sm.cleaving()?.check(sm.comodule(), d));
            for (i, g) in sm.hopf().algebra().alphabet().declared().iter().enumerate().take(4) {
                let h = NcPoly::gen(*g);
                let back = sm.split(&sm.embed_hopf(&h))?;
                let want = crate::ncpoly::Tensor::pure(&[&P::one(), &h]);
                rep.record("split inverts the embedding", format!("generator {i}"), back == want, || format!("{back:?}"));
            }
            Ok(Outcome::from_report(&rep))
        }));
    }
    if ctx.algebra.is_none() {
        out.push(Check::new("smash/graded-basis/toeplitz_u1_smash", SMASH, json!({"degree": d}), move |ctx, _| {
            let sm = builtin::toeplitz_u1_smash(ctx.q())?;
            let h = sm.hopf().algebra();
            let (u, ui) = (h.gen("u")?, h.gen("u_inv")?);
            let rep = graded_basis_check(sm.comodule(), &u, &[sm.embed_hopf(&u)], &[sm.embed_hopf(&ui)], d);
            Ok(Outcome::from_report(&rep))
        }));
    }
    for (base, hgen, bgen, expr) in [
        ("toeplitz_z2_smash", "u", "s", "s"),
        ("toeplitz_u1_smash", "u", "s", "s"),
        ("toeplitz_u1_smash", "u_inv", "s", "I*s"),
    ] {
        let params = json!({"base": base, "action": format!("{hgen} ▷ {bgen} = {expr}")});
        out.push(Check::new(format!("smash/mutant/{base}-{hgen}-{bgen}"), SMASH, params, move |ctx, _| {
            let sm = builtin::build(base, ctx.q())?.into_smash()?;
            Ok(Outcome::mutant(sm.with_action_entry(hgen, bgen, expr).and_then(|m| flat(m.module_algebra_violation(2, 2)))))
        }));
    }
    out
}

fn covering_report(text: &str, ctx: &Ctx, d: usize) -> Result<CheckReport> {
    let (cov, triv) = covering_from_json(text, ctx.q())?;
    let mut rep = cov.check(d);
    if let Some(t) = triv {
        rep.absorb(t.check(d));
    }
    Ok(rep)
}

const NON_DISTRIBUTIVE: &str = r#"{"base": "axes", "pieces": [{"kernel": ["x"]}, {"kernel": ["y"]}, {"kernel": ["x + y"]}]}"#;
const OVERLAPPING: &str = r#"{"base": "axes", "pieces": [{"kernel": ["x", "y"]}, {"kernel": ["x", "z"]}]}"#;

pub(super) fn covering(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(3);
    let mut out = Vec::new();
    let files: Vec<(String, String)> = match &ctx.covering {
        Some(c) => vec![c.clone()],
        None => SHIPPED_COVERINGS.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect(),
    };
    for (name, text) in files {
        out.push(Check::new(format!("covering/{name}"), COVERING, json!({"covering": name, "degree": d}), move |ctx, _| {
            Ok(Outcome::from_report(&covering_report(&text, ctx, d)?))
        }));
    }
    let bad_cleaving = SHIPPED_COVERINGS[1].1.replace(r#""cleaving": { "u": "-u" }"#, r#""cleaving": { "u": "x*u" }"#);
    let mutants = [
        ("non-distributive", NON_DISTRIBUTIVE.to_string()),
        ("overlapping-kernels", OVERLAPPING.to_string()),
        ("cleaving-not-invertible", bad_cleaving),
    ];
    for (label, text) in mutants {
        out.push(Check::new(format!("covering/mutant/{label}"), COVERING, json!({"covering": label}), move |ctx, _| {
            Ok(Outcome::mutant(covering_report(&text, ctx, 2).map(|r| caught(&r))))
        }));
    }
    out
}

pub(super) fn transition(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(2);
    let mut out = vec![
        Check::new("transition/sphere", TRANSITION, json!({"degree": d}), move |_, _| {
            Ok(Outcome::from_report(&sphere_trivialisation()?.check(d)))
        }),
        Check::new("transition/cross_z2", TRANSITION, json!({"degree": d}), move |ctx, _| {
            let (_, triv) = covering_from_json(SHIPPED_COVERINGS[1].1, ctx.q())?;
            let triv = triv.ok_or_else(|| Error::Config("cross_z2 declares no cleavings".into()))?;
            Ok(Outcome::from_report(&triv.check(d)))
        }),
        Check::new("transition/hopf-fibration", TRANSITION, json!({"degree": d}), move |_, _| {
            Ok(Outcome::from_report(&hopf_fibration_patches()?.check(d)))
        }),
    ];
    out.push(Check::new("transition/mutant/glue-incompatible", TRANSITION, json!({"base": "(1, 1, 1)", "fiber": "u"}), |_, _| {
        let triv = sphere_trivialisation()?;
        let u = triv.hopf().algebra().gen("u")?;
        Ok(Outcome::mutant(triv.piece_glue(&[P::one(), P::one(), P::one()], &u).map(|_| None)))
    }));
    out.push(Check::new("transition/mutant/sphere-cleaving", TRANSITION, json!({"piece": 1, "cleaving": "u ↦ s*u"}), |_, _| {
        let triv = sphere_trivialisation()?;
        Ok(Outcome::mutant(recleave(&triv, 1, &[("u", "s*u")]).map(|t| caught(&t.check(2)))))
    }));
    out.push(Check::new("transition/mutant/fibration-cleaving", TRANSITION, json!({"piece": 0, "cleaving": "u ↦ u_inv"}), |_, _| {
        let triv = hopf_fibration_patches()?;
        Ok(Outcome::mutant(recleave(&triv, 0, &[("u", "u_inv"), ("u_inv", "u")]).map(|t| caught(&t.check(2)))))
    }));
    out
}

/// The trivialisation with the cleaving of piece `i` replaced.
fn recleave(triv: &Trivialisation<Coeff>, i: usize, images: &[(&str, &str)]) -> Result<Trivialisation<Coeff>> {
    let pairs: Vec<(String, String)> = images.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let mut cleavings: Vec<CleavingMap<Coeff>> = (0..triv.covering.len()).map(|k| triv.cleaving(k).clone()).collect();
    cleavings[i] = CleavingMap::from_exprs(triv.covering.piece(i), &pairs)?;
    Trivialisation::new(triv.covering.clone(), cleavings)
}

fn prolonged_sphere(pi: &LinearMap<Coeff>, d: usize) -> Result<Prolongation<Coeff>> {
    let u1 = builtin::o_u1(None)?;
    prolong_along(&sphere_trivialisation()?, pi, &u1, d)
}

/// `T_ij(g) = 0` for all overlaps, as a report.
fn transitions_vanish(triv: &Trivialisation<Coeff>, g: &P) -> Result<CheckReport> {
    let mut rep = CheckReport::new("transitions vanish on the ideal");
    let n = triv.covering.len();
    for i in 0..n {
        for j in i + 1..n {
            let t = triv.transition(i, j, g)?;
            let o = triv.transition_target(i, j).algebra();
            rep.record("T_ij(g) = 0", format!("({i}, {j})"), t.is_zero(), || o.show(&t));
        }
    }
    Ok(rep)
}

pub(super) fn reduction_theorem(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(2);
    let mut out = vec![
        Check::new("reduction-theorem/coinvariants/o_u1-c_z2", REDUCTION, json!({"degree": 4}), |_, _| {
            let h = builtin::o_u1(None)?;
            let (_, pi) = builtin::u1_to_z2()?;
            let red = reduction_ideal(&h, &pi, |x| Ok(x.clone()), h.algebra(), 4, 6)?;
            let q = &red.quotient;
            let sq = q.pow(&q.gen("u")?, 2)?;
            let mut rep = CheckReport::new("reduction ideal of the regular comodule");
            rep.record("u² = 1 in the quotient", "u*u", sq.is_one(), || q.show(&sq));
            rep.record("coinvariants are even", "degree 4", red.coinvariants.len() == 5, || format!("{} coinvariants", red.coinvariants.len()));
            Ok(Outcome::from_report(&rep))
        }),
        Check::new("reduction-theorem/graded-basis/o_u1", REDUCTION, json!({"degree": 4}), |_, _| {
            let h = builtin::o_u1(None)?;
            let p = ComoduleAlgebra::regular(&h)?;
            let (u, ui) = (h.algebra().gen("u")?, h.algebra().gen("u_inv")?);
            Ok(Outcome::from_report(&graded_basis_check(&p, &u, std::slice::from_ref(&u), &[ui], 4)))
        }),
        Check::new("reduction-theorem/ideal-correspondence/toeplitz_z2_smash", REDUCTION, json!({"degree": d, "ideal": "1 - s*s_star"}), move |_, _| {
            let sm = builtin::toeplitz_z2_smash(None)?;
            let ell = StrongConnection::from_cleaving(&sm.cleaving()?, sm.hopf(), 2)?;
            let l = sm.algebra().parse("1 - s*s_star")?;
            Ok(Outcome::from_report(&ideal_base_correspondence(sm.comodule(), &ell, &[l.clone()], &[l], d)))
        }),
        Check::new("reduction-theorem/prolonged-sphere", REDUCTION, json!({"degree": d, "ideal": "u*u - 1"}), move |_, _| {
            let (_, pi) = builtin::u1_to_z2()?;
            let pro = prolonged_sphere(&pi, d)?;
            let g = pro.triv.hopf().algebra().parse("u*u - 1")?;
            let mut rep = transitions_vanish(&pro.triv, &g)?;
            let red = pro.triv.reducibility_check(&[g], d)?;
            match &red.verdict {
                Verdict::Reducible => rep.record("reducible", "u*u - 1", true, String::new),
                Verdict::Obstructed(w) => rep.fail("reducible", "u*u - 1", w.clone()),
            }
            rep.absorb(red.report);
            Ok(Outcome::from_report(&rep))
        }),
    ];
    out.push(Check::new("reduction-theorem/mutant/ideal-u-minus-1", REDUCTION, json!({"ideal": "u - 1"}), move |_, _| {
        let (_, pi) = builtin::u1_to_z2()?;
        let pro = prolonged_sphere(&pi, d)?;
        let g = pro.triv.hopf().algebra().parse("u - 1")?;
        Ok(Outcome::mutant(pro.triv.reducibility_check(&[g], d).map(|r| match r.verdict {
            Verdict::Obstructed(w) => Some(w),
            Verdict::Reducible => None,
        })))
    }));
    out.push(Check::new("reduction-theorem/mutant/ideal-correspondence", REDUCTION, json!({"K": "u", "L": "1 - s*s_star"}), move |_, _| {
        let sm = builtin::toeplitz_z2_smash(None)?;
        let ell = StrongConnection::from_cleaving(&sm.cleaving()?, sm.hopf(), 2)?;
        let l = sm.algebra().parse("1 - s*s_star")?;
        let u = sm.algebra().gen("u")?;
        Ok(Outcome::mutant(Ok(caught(&ideal_base_correspondence(sm.comodule(), &ell, &[u], &[l], d)))))
    }));
    out.push(Check::new("reduction-theorem/mutant/graded-basis", REDUCTION, json!({"e": "u", "f": "u"}), |_, _| {
        let h = builtin::o_u1(None)?;
        let p = ComoduleAlgebra::regular(&h)?;
        let u = h.algebra().gen("u")?;
        Ok(Outcome::mutant(Ok(caught(&graded_basis_check(&p, &u, std::slice::from_ref(&u), std::slice::from_ref(&u), 2)))))
    }));
    out
}

pub(super) fn prolong(ctx: &Ctx) -> Vec<Check> {
    let d = ctx.degree_or(2);
    let mut out = vec![
        Check::new("prolong/sphere/o_u1-c_z2", PROLONG, json!({"degree": d}), move |_, _| {
            let (_, pi) = builtin::u1_to_z2()?;
            let pro = prolonged_sphere(&pi, d)?;
            let mut rep = pro.report.clone();
            rep.record("kernel is nonzero", "ker π", !pro.kernel.is_empty(), || "empty kernel".into());
            rep.absorb(pro.triv.check(d.min(2)));
            Ok(Outcome::from_report(&rep))
        }),
        Check::new("prolong/sphere/transitions", PROLONG, json!({"degree": d, "ideal": "u*u - 1"}), move |_, _| {
            let (_, pi) = builtin::u1_to_z2()?;
            let pro = prolonged_sphere(&pi, d)?;
            let g = pro.triv.hopf().algebra().parse("u*u - 1")?;
            Ok(Outcome::from_report(&transitions_vanish(&pro.triv, &g)?))
        }),
    ];
    let maps: [(&str, [&str; 2]); 3] = [("trivial", ["1", "1"]), ("sign", ["-u", "-u"]), ("unbalanced", ["u", "1"])];
    for (label, images) in maps {
        let params = json!({"pi": {"u": images[0], "u_inv": images[1]}});
        out.push(Check::new(format!("prolong/mutant/{label}"), PROLONG, params, move |_, _| {
            let u1 = builtin::o_u1(None)?;
            let z2 = builtin::c_z2(None)?;
            let za = z2.algebra();
            let imgs = images.iter().map(|e| za.parse(e)).collect::<Result<Vec<_>>>()?;
            let r = LinearMap::algebra_map(label, u1.algebra_arc().clone(), z2.algebra_arc().clone(), imgs).and_then(|pi| {
                if let Some(w) = caught(&pi.check_well_defined()) {
                    return Ok(Some(w));
                }
                Ok(caught(&prolonged_sphere(&pi, 1)?.report))
            });
            Ok(Outcome::mutant(r))
        }));
    }
    out
}

pub(super) fn frame_obstruction(ctx: &Ctx) -> Vec<Check> {
    let q = q_param(ctx);
    let mut out = vec![Check::new("frame-obstruction/verdict", FRAME, json!({"q": q}), |ctx, _| {
        let fo = builtin::frame_bundle_obstruction(ctx.q())?;
        if !fo.report.ok() {
            return Ok(Outcome::from_report(&fo.report));
        }
        Ok(match fo.verdict {
            FrameVerdict::Consistent => Outcome::pass().with_witness("twisted-centrality factor vanishes"),
            FrameVerdict::Obstructed(w) => Outcome::fail(w),
            FrameVerdict::Conditional => Outcome::pass().with_witness(format!("consistent exactly where {} = 0", fo.factor)),
        })
    })];
    if ctx.q.is_none() {
        out.push(Check::new("frame-obstruction/cube-roots", FRAME, json!({"q": "formal", "modulus": "q^2 + q + 1"}), |_, _| {
            let fo = builtin::frame_bundle_obstruction(None)?;
            let zero = fo.cube_root_remainder.iter().all(num_traits::Zero::is_zero);
            Ok(if zero {
                Outcome::pass().with_witness(format!("factor {} vanishes modulo q^2 + q + 1", fo.factor))
            } else {
                Outcome::fail(format!("remainder {:?}", fo.cube_root_remainder.iter().map(|c| c.to_expr()).collect::<Vec<_>>()))
            })
        }));
        out.push(Check::new("frame-obstruction/q-1", FRAME, json!({"q": "1"}), |_, _| {
            let one = <crate::scalar::QI as num_traits::One>::one();
            let fo = builtin::frame_bundle_obstruction(Some(&one))?;
            Ok(match fo.verdict {
                FrameVerdict::Consistent if fo.report.ok() => Outcome::pass(),
                FrameVerdict::Obstructed(w) => Outcome::fail(w),
                _ => Outcome::from_report(&fo.report).with_witness(format!("verdict {:?}", fo.verdict)),
            })
        }));
    }
    for (hgen, bgen, expr) in [("Dinv", "x", "Q^2*x"), ("a", "x", "x"), ("Dinv", "x", "x + y")] {
        let params = json!({"base": "plane_gl_smash", "action": format!("{hgen} ▷ {bgen} = {expr}"), "q": q});
        out.push(Check::new(format!("frame-obstruction/mutant/{hgen}-{bgen}={expr}"), FRAME, params, move |ctx, _| {
            let sm = builtin::plane_gl_smash(ctx.q())?;
            let r = sm.with_action_entry(hgen, bgen, expr).and_then(|m| builtin::frame_bundle_obstruction_for(&m, ctx.q()));
            Ok(Outcome::mutant(r.map(|fo| caught(&fo.report))))
        }));
    }
    out
}
