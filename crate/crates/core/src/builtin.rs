//! Ready-made instances: the Hopf algebras, comodule algebras and smash
//! products used by the verification suites, and the frame-bundle
//! obstruction computation for the quantum plane.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::comodule::{CleavingMap, ComoduleAlgebra, SmashProduct};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, LinearMap};
use crate::ncpoly::{Algebra, NcPoly, Tensor};
use crate::present::{HopfJson, Instance, Presentation};
use crate::report::CheckReport;
use crate::scalar::{Field, RatFunc, QI};

/// Scalars of every builtin: rational functions in `q` over `Q(i)`.
pub type Coeff = RatFunc;

pub const NAMES: [&str; 16] = [
    "c_z2",
    "o_u1",
    "su_q2",
    "gl_q2",
    "sl_q2",
    "quantum_plane",
    "toeplitz",
    "toeplitz_z2",
    "toeplitz_u1",
    "toeplitz_z2_smash",
    "toeplitz_u1_smash",
    "plane_gl_smash",
    "sphere_piece",
    "sphere_overlap",
    "axes",
    "su_q2_u1",
];

fn table(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
    entries.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn pres(name: &str, gens: &[&str], prec: &[&str], tower: &str, rels: &[&str], star: Option<&[(&str, &str)]>) -> Presentation {
    Presentation {
        name: name.into(),
        generators: strings(gens),
        precedence: strings(prec),
        scalar_tower: tower.into(),
        relations: strings(rels),
        star: star.map(table),
        ..Default::default()
    }
}

fn hopf_json(delta: &[(&str, &str)], counit: &[(&str, &str)], s: &[(&str, &str)], si: &[(&str, &str)]) -> HopfJson {
    HopfJson { delta: table(delta), counit: table(counit), antipode: table(s), antipode_inv: table(si) }
}

/// Commutation rules `x*y = y*x` for every pair.
fn commuting(gens: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(format!("{a}*{b} = {b}*{a}"));
        }
    }
    out
}

fn c_z2_pres() -> Presentation {
    let mut p = pres("c_z2", &["u"], &["u"], "Q", &["u*u = 1"], Some(&[("u", "u")]));
    p.hopf = Some(hopf_json(&[("u", "u # u")], &[("u", "1")], &[("u", "u")], &[("u", "u")]));
    p
}

fn o_u1_pres() -> Presentation {
    let mut p = pres(
        "o_u1",
        &["u", "u_inv"],
        &["u_inv", "u"],
        "Q",
        &["u*u_inv = 1", "u_inv*u = 1"],
        Some(&[("u", "u_inv"), ("u_inv", "u")]),
    );
    p.hopf = Some(hopf_json(
        &[("u", "u # u"), ("u_inv", "u_inv # u_inv")],
        &[("u", "1"), ("u_inv", "1")],
        &[("u", "u_inv"), ("u_inv", "u")],
        &[("u", "u_inv"), ("u_inv", "u")],
    ));
    p
}

fn su_q2_pres() -> Presentation {
    let mut p = pres(
        "su_q2",
        &["alpha", "alpha_star", "gamma", "gamma_star"],
        &["alpha_star", "alpha", "gamma_star", "gamma"],
        "Q(i)(q)",
        &[
            "alpha*gamma = Q*gamma*alpha",
            "alpha*gamma_star = Q*gamma_star*alpha",
            "gamma*gamma_star = gamma_star*gamma",
            "alpha_star*alpha + gamma_star*gamma = 1",
            "alpha*alpha_star + Q^2*gamma*gamma_star = 1",
            "alpha_star*gamma = Q^-1*gamma*alpha_star",
            "alpha_star*gamma_star = Q^-1*gamma_star*alpha_star",
        ],
        Some(&[("alpha", "alpha_star"), ("alpha_star", "alpha"), ("gamma", "gamma_star"), ("gamma_star", "gamma")]),
    );
    p.hopf = Some(hopf_json(
        &[
            ("alpha", "alpha # alpha - Q*gamma_star # gamma"),
            ("alpha_star", "alpha_star # alpha_star - Q*gamma # gamma_star"),
            ("gamma", "gamma # alpha + alpha_star # gamma"),
            ("gamma_star", "gamma_star # alpha_star + alpha # gamma_star"),
        ],
        &[("alpha", "1"), ("alpha_star", "1"), ("gamma", "0"), ("gamma_star", "0")],
        &[("alpha", "alpha_star"), ("alpha_star", "alpha"), ("gamma", "-Q*gamma"), ("gamma_star", "-Q^-1*gamma_star")],
        &[("alpha", "alpha_star"), ("alpha_star", "alpha"), ("gamma", "-Q^-1*gamma"), ("gamma_star", "-Q*gamma_star")],
    ));
    p
}

const GL_RELATIONS: [&str; 18] = [
    "a*b = Q*b*a",
    "a*c = Q*c*a",
    "b*d = Q*d*b",
    "c*d = Q*d*c",
    "b*c = c*b",
    "a*d - d*a = (Q - Q^-1)*b*c",
    "a*d - Q*b*c = D",
    "D*Dinv = 1",
    "Dinv*D = 1",
    "D*a = a*D",
    "D*b = b*D",
    "D*c = c*D",
    "D*d = d*D",
    "Dinv*a = a*Dinv",
    "Dinv*b = b*Dinv",
    "Dinv*c = c*Dinv",
    "Dinv*d = d*Dinv",
    "Dinv*D = D*Dinv",
];

fn gl_hopf() -> HopfJson {
    hopf_json(
        &[
            ("a", "a # a + b # c"),
            ("b", "a # b + b # d"),
            ("c", "c # a + d # c"),
            ("d", "c # b + d # d"),
            ("D", "D # D"),
            ("Dinv", "Dinv # Dinv"),
        ],
        &[("a", "1"), ("b", "0"), ("c", "0"), ("d", "1"), ("D", "1"), ("Dinv", "1")],
        &[
            ("a", "Dinv*d"),
            ("b", "-Q^-1*Dinv*b"),
            ("c", "-Q*Dinv*c"),
            ("d", "Dinv*a"),
            ("D", "Dinv"),
            ("Dinv", "D"),
        ],
        &[
            ("a", "Dinv*d"),
            ("b", "-Q*Dinv*b"),
            ("c", "-Q^-1*Dinv*c"),
            ("d", "Dinv*a"),
            ("D", "Dinv"),
            ("Dinv", "D"),
        ],
    )
}

/// The quantum determinant `D` is carried as a generator next to its
/// inverse, which keeps the rewriting system finite.
fn gl_q2_pres() -> Presentation {
    let mut p = pres(
        "gl_q2",
        &["a", "b", "c", "d", "D", "Dinv"],
        &["Dinv", "D", "d", "a", "c", "b"],
        "Q(i)(q)",
        &GL_RELATIONS,
        None,
    );
    p.hopf = Some(gl_hopf());
    p
}

fn sl_q2_pres() -> Presentation {
    let mut p = gl_q2_pres();
    p.name = "sl_q2".into();
    p.relations.push("Dinv = 1".into());
    p
}

fn quantum_plane_pres() -> Presentation {
    pres("quantum_plane", &["x", "y"], &["y", "x"], "Q(i)(q)", &["x*y = Q*y*x"], None)
}

fn toeplitz_pres() -> Presentation {
    pres("toeplitz", &["s", "s_star"], &["s_star", "s"], "Q(i)", &["s_star*s = 1"], Some(&[("s", "s_star"), ("s_star", "s")]))
}

fn with_coaction(mut p: Presentation, name: &str, over: Presentation, co: &[(&str, &str)]) -> Presentation {
    p.name = name.into();
    p.over = Some(Box::new(over));
    p.coaction = Some(table(co));
    p
}

fn with_action(mut p: Presentation, name: &str, over: Presentation, act: &[(&str, &str)]) -> Presentation {
    p.name = name.into();
    p.over = Some(Box::new(over));
    p.action = Some(table(act));
    p
}

fn sphere_piece_pres() -> Presentation {
    let mut p = pres(
        "sphere_piece",
        &["s", "s_star", "u"],
        &["u", "s_star", "s"],
        "Q(i)",
        &["s_star*s = 1", "u*u = 1", "u*s = s*u", "u*s_star = s_star*u"],
        Some(&[("s", "s_star"), ("s_star", "s"), ("u", "u")]),
    );
    p.over = Some(Box::new(c_z2_pres()));
    p.coaction = Some(table(&[("s", "s # u"), ("s_star", "s_star # u"), ("u", "u # u")]));
    p.cleaving = Some(table(&[("u", "u")]));
    p
}

fn sphere_overlap_pres() -> Presentation {
    let mut rels = vec!["h*h = 1".to_string(), "k*k = 1".to_string(), "n*n = 1 - c*c".to_string()];
    rels.extend(commuting(&["k", "n", "h", "c"]));
    let mut p = Presentation {
        name: "sphere_overlap".into(),
        generators: strings(&["h", "c", "n", "k"]),
        precedence: strings(&["k", "n", "h", "c"]),
        scalar_tower: "Q(i)".into(),
        relations: rels,
        star: Some(table(&[("h", "h"), ("c", "c"), ("n", "n"), ("k", "k")])),
        ..Default::default()
    };
    p.over = Some(Box::new(c_z2_pres()));
    p.coaction = Some(table(&[("h", "h # u"), ("c", "c # 1"), ("n", "n # u"), ("k", "k # u")]));
    p
}

fn axes_pres() -> Presentation {
    let mut p = pres("axes", &["x", "y", "z"], &["z", "y", "x"], "Q", &[], None);
    for (a, b) in [("x", "y"), ("y", "x"), ("y", "z"), ("z", "y"), ("x", "z"), ("z", "x")] {
        p.relations.push(format!("{a}*{b} = 0"));
    }
    p
}

/// Registered presentation, formal in `q`.
pub fn presentation(name: &str) -> Result<Presentation> {
    Ok(match name {
        "c_z2" => c_z2_pres(),
        "o_u1" => o_u1_pres(),
        "su_q2" => su_q2_pres(),
        "gl_q2" => gl_q2_pres(),
        "sl_q2" => sl_q2_pres(),
        "quantum_plane" => quantum_plane_pres(),
        "toeplitz" => toeplitz_pres(),
        "toeplitz_z2" => with_coaction(toeplitz_pres(), name, c_z2_pres(), &[("s", "s # u"), ("s_star", "s_star # u")]),
        "toeplitz_u1" => with_coaction(toeplitz_pres(), name, o_u1_pres(), &[("s", "s # u"), ("s_star", "s_star # u_inv")]),
        "toeplitz_z2_smash" => with_action(toeplitz_pres(), name, c_z2_pres(), &[("u,s", "-s"), ("u,s_star", "-s_star")]),
        "toeplitz_u1_smash" => with_action(
            toeplitz_pres(),
            name,
            o_u1_pres(),
            &[("u,s", "I*s"), ("u,s_star", "-I*s_star"), ("u_inv,s", "-I*s"), ("u_inv,s_star", "I*s_star")],
        ),
        "plane_gl_smash" => with_action(
            quantum_plane_pres(),
            name,
            gl_q2_pres(),
            &[
                ("a,x", "Q^-2*x"),
                ("b,x", "0"),
                ("c,x", "(Q^-2 - 1)*y"),
                ("d,x", "Q^-1*x"),
                ("D,x", "Q^-3*x"),
                ("Dinv,x", "Q^3*x"),
                ("a,y", "Q^-1*y"),
                ("b,y", "0"),
                ("c,y", "0"),
                ("d,y", "Q^-2*y"),
                ("D,y", "Q^-3*y"),
                ("Dinv,y", "Q^3*y"),
            ],
        ),
        "sphere_piece" => sphere_piece_pres(),
        "sphere_overlap" => sphere_overlap_pres(),
        "axes" => axes_pres(),
        "su_q2_u1" => with_coaction(
            su_q2_pres(),
            name,
            o_u1_pres(),
            &[("alpha", "alpha # u"), ("gamma", "gamma # u"), ("alpha_star", "alpha_star # u_inv"), ("gamma_star", "gamma_star # u_inv")],
        ),
        _ => {
            let near = crate::nearest(name, &NAMES).map(|n| format!(" (did you mean {n}?)")).unwrap_or_default();
            return Err(Error::UnknownName(format!("{name}{near}")));
        }
    })
}

/// Build a registered instance; `q = None` keeps the parameter formal.
pub fn build(name: &str, q: Option<&QI>) -> Result<Instance<Coeff>> {
    let p = presentation(name)?;
    if let Some(q) = q {
        if q.is_zero() {
            return Err(Error::QZero);
        }
    }
    let qs = q.map(|q| q.to_expr());
    p.with_q(qs.as_deref()).import()
}

/// Registry invariants for one builtin: Hopf axioms, coaction axioms and
/// cleaving checks at degree `d`, plus local confluence.
pub fn verify(name: &str, q: Option<&QI>, d: usize) -> Result<CheckReport> {
    verify_instance(&format!("builtin {name}"), &build(name, q)?, d)
}

/// The checks of [`verify`] for any imported instance.
pub fn verify_instance(label: &str, inst: &Instance<Coeff>, d: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new(label);
    let conf = inst.algebra().check_local_confluence(d + 2);
    for c in &conf.conflicts {
        rep.fail("confluence", c.word.clone(), format!("{} vs {}", c.first, c.second));
    }
    rep.checked += 1;
    match inst {
        Instance::Algebra(_) => {}
        Instance::Hopf(h) => rep.absorb(h.check_hopf_axioms(d)),
        Instance::Comodule { comodule, cleaving } => {
            rep.absorb(comodule.hopf().check_hopf_axioms(d));
            rep.absorb(comodule.check_axioms(d));
            if let Some(c) = cleaving {
                rep.absorb(c.check(comodule, d));
            }
        }
        Instance::Smash(s) => {
            rep.absorb(s.hopf().check_hopf_axioms(d));
            rep.absorb(s.comodule().check_axioms(d));
            rep.absorb(s.cleaving()?.check(s.comodule(), d));
        }
    }
    Ok(rep)
}

fn q_expr(q: Option<&QI>) -> Option<String> {
    q.map(|q| q.to_expr())
}

pub fn c_z2(q: Option<&QI>) -> Result<HopfAlgebra<Coeff>> {
    build("c_z2", q)?.into_hopf()
}
pub fn o_u1(q: Option<&QI>) -> Result<HopfAlgebra<Coeff>> {
    build("o_u1", q)?.into_hopf()
}
pub fn su_q2(q: Option<&QI>) -> Result<HopfAlgebra<Coeff>> {
    build("su_q2", q)?.into_hopf()
}
pub fn gl_q2(q: Option<&QI>) -> Result<HopfAlgebra<Coeff>> {
    build("gl_q2", q)?.into_hopf()
}
pub fn sl_q2(q: Option<&QI>) -> Result<HopfAlgebra<Coeff>> {
    build("sl_q2", q)?.into_hopf()
}
pub fn toeplitz() -> Result<Arc<Algebra<Coeff>>> {
    match build("toeplitz", None)? {
        Instance::Algebra(a) => Ok(a),
        _ => unreachable!("toeplitz is a plain algebra"),
    }
}
pub fn toeplitz_z2(q: Option<&QI>) -> Result<ComoduleAlgebra<Coeff>> {
    Ok(build("toeplitz_z2", q)?.into_comodule()?.0)
}
pub fn toeplitz_z2_smash(q: Option<&QI>) -> Result<SmashProduct<Coeff>> {
    build("toeplitz_z2_smash", q)?.into_smash()
}
pub fn toeplitz_u1_smash(q: Option<&QI>) -> Result<SmashProduct<Coeff>> {
    build("toeplitz_u1_smash", q)?.into_smash()
}
pub fn plane_gl_smash(q: Option<&QI>) -> Result<SmashProduct<Coeff>> {
    build("plane_gl_smash", q)?.into_smash()
}
pub fn comodule(name: &str, q: Option<&QI>) -> Result<(ComoduleAlgebra<Coeff>, Option<CleavingMap<Coeff>>)> {
    build(name, q)?.into_comodule()
}

/// The surjection `O(SU_q(2)) → O(U(1))`: `α ↦ u`, `α* ↦ u⁻¹`, `γ, γ* ↦ 0`.
pub fn su_q2_to_u1(q: Option<&QI>) -> Result<(HopfAlgebra<Coeff>, HopfAlgebra<Coeff>, LinearMap<Coeff>)> {
    let su = su_q2(q)?;
    let u1 = o_u1(q)?;
    let pi = LinearMap::from_exprs(
        "pi[su_q2->o_u1]",
        su.algebra_arc().clone(),
        vec![u1.algebra_arc().clone()],
        crate::hopf::Extension::Hom,
        &[
            ("alpha".into(), "u".into()),
            ("alpha_star".into(), "u_inv".into()),
            ("gamma".into(), "0".into()),
            ("gamma_star".into(), "0".into()),
        ],
    )?;
    Ok((su, u1, pi))
}

/// The surjection `O(U(1)) → C(Z₂)`, `u, u⁻¹ ↦ u`.
pub fn u1_to_z2() -> Result<(HopfAlgebra<Coeff>, LinearMap<Coeff>)> {
    let u1 = o_u1(None)?;
    let z2 = c_z2(None)?;
    let u = z2.algebra().gen("u")?;
    let pi = LinearMap::algebra_map("pi[o_u1->c_z2]", u1.algebra_arc().clone(), z2.algebra_arc().clone(), vec![u.clone(), u])?;
    Ok((z2, pi))
}

/// The Hopf quotient `O(GL_q(2)) → O(SL_q(2))` by `D⁻¹ - 1`.
pub fn gl_to_sl(q: Option<&QI>) -> Result<(HopfAlgebra<Coeff>, HopfAlgebra<Coeff>, LinearMap<Coeff>)> {
    let gl = gl_q2(q)?;
    let one = NcPoly::one();
    let g = gl.algebra().gen("Dinv")?.sub(&one);
    let (sl, pi) = gl.quotient("sl_q2", &[g], 6)?;
    Ok((gl, sl, pi))
}

/// Homomorphism checks for a Hopf surjection `π: H → K` given on generators:
/// relations of `H` map to zero, `Δπ = (π⊗π)Δ`, `επ = ε`, `π(1) = 1`, and
/// the listed elements are annihilated.
pub fn surjection_checks(
    h: &HopfAlgebra<Coeff>,
    k: &HopfAlgebra<Coeff>,
    pi: &LinearMap<Coeff>,
    killed: &[&str],
) -> CheckReport {
    let mut rep = CheckReport::new(format!("{} is a Hopf surjection", pi.name));
    rep.absorb(pi.check_well_defined());
    let ka = k.algebra();
    let r: Result<()> = (|| {
        let one = pi.apply_poly(&NcPoly::one())?;
        rep.record("unital", "1", one.is_one(), || ka.show(&one));
        for &g in h.algebra().alphabet().declared() {
            let name = h.algebra().alphabet().name(g).to_string();
            let x = NcPoly::gen(g);
            let lhs = k.delta(&pi.apply_poly(&x)?)?;
            let rhs = h.delta(&x)?.expand(|_, w| pi.apply_word(w))?.normalize(&[ka, ka])?;
            rep.record("coproduct", name.clone(), lhs == rhs, || {
                format!("Δπ = {} but (π⊗π)Δ = {}", k.show2(&lhs), k.show2(&rhs))
            });
            let e1 = k.counit(&pi.apply_poly(&x)?)?;
            let e2 = h.counit(&x)?;
            rep.record("counit", name.clone(), e1 == e2, || format!("επ = {e1}, ε = {e2}"));
            let s1 = k.antipode(&pi.apply_poly(&x)?)?;
            let s2 = pi.apply_poly(&h.antipode(&x)?)?;
            rep.record("antipode", name, s1 == s2, || format!("Sπ = {}, πS = {}", ka.show(&s1), ka.show(&s2)));
        }
        for g in killed {
            let v = pi.apply_poly(&h.algebra().gen(g)?)?;
            rep.record("kills the ideal", *g, v.is_zero(), || ka.show(&v));
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("evaluation", "", e.to_string());
    }
    rep
}

/// Surjection checks for `O(SU_q(2)) → O(U(1))`, including the image of the
/// unitarity relation and of `Δα`.
pub fn su_q2_to_u1_checks(q: Option<&QI>) -> Result<CheckReport> {
    let (su, u1, pi) = su_q2_to_u1(q)?;
    let mut rep = surjection_checks(&su, &u1, &pi, &["gamma", "gamma_star"]);
    let sa = su.algebra();
    let ua = u1.algebra();
    let rel = sa.parse("alpha_star*alpha + gamma_star*gamma")?;
    let img = pi.apply_poly(&rel)?;
    let want = ua.parse("u_inv*u")?;
    rep.record("unitarity maps to u*u = 1", "alpha_star*alpha + gamma_star*gamma", img == want && img.is_one(), || ua.show(&img));
    let alpha = sa.gen("alpha")?;
    let d = su.delta(&alpha)?.expand(|_, w| pi.apply_word(w))?.normalize(&[ua, ua])?;
    let u = ua.gen("u")?;
    rep.record("π(Δα) = u⊗u", "alpha", d == Tensor::pure(&[&u, &u]), || u1.show2(&d));
    Ok(rep)
}

/// Zero-divisor and unit certificate: for all normal words `v, w` with
/// `|v| + |w| ≤ d`, the product `vw` is a nonzero multiple of a single
/// normal word of length `|v| + |w|`, and distinct pairs of a fixed total
/// length give distinct words only through the product. Then leading words
/// multiply, so the algebra has no zero divisors and only scalar units.
pub fn units_certificate(a: &Algebra<Coeff>, d: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("units of {} (degree {d})", a.name));
    let basis = a.basis(d);
    for v in &basis {
        for w in &basis {
            if v.len() + w.len() > d {
                continue;
            }
            let at = format!("{} · {}", a.show_word(v), a.show_word(w));
            match a.normal_form(&NcPoly::word(v.concat(w))) {
                Ok(p) => {
                    let single = p.len() == 1 && p.leading().is_some_and(|(u, c)| u.len() == v.len() + w.len() && !c.is_zero());
                    rep.record("monomial product", at, single, || a.show(&p));
                }
                Err(e) => rep.fail("evaluation", at, e.to_string()),
            }
        }
    }
    rep
}

/// Outcome of the frame-bundle reduction test.
#[derive(Clone, Debug, PartialEq)]
pub enum FrameVerdict {
    /// The twisted-centrality factor vanishes: a reduction is consistent.
    Consistent,
    /// The factor is a nonzero constant; the witness is `factor*μ*x`.
    Obstructed(String),
    /// Formal `q`: consistent exactly on the zeros of the factor.
    Conditional,
}

#[derive(Clone, Debug)]
pub struct FrameObstruction {
    /// `c` with `D⁻¹ ▷ x = (1 + c) x`; a reduction forces `c μ x = 0` for the
    /// scalar `μ = ϑ(D⁻¹)`.
    pub factor: RatFunc,
    /// Remainder of the factor's numerator modulo `q² + q + 1`.
    pub cube_root_remainder: Vec<QI>,
    pub verdict: FrameVerdict,
    pub report: CheckReport,
}

/// Degree bound for the module-algebra check of the plane action.
pub const FRAME_ACTION_DEGREE: usize = 4;
/// Degree bound for the units certificate of the plane.
pub const FRAME_UNITS_DEGREE: usize = 6;

/// Whether the `O(GL_q(2))` smash product over the quantum plane reduces to
/// `O(SL_q(2))`. A reduction needs `ϑ(D⁻¹)` to be a unit of the plane, so a
/// scalar `μ`, and twisted centrality `x μ = μ (D⁻¹ ▷ x)` then forces
/// `(q³ - 1) μ x = 0`.
pub fn frame_bundle_obstruction(q: Option<&QI>) -> Result<FrameObstruction> {
    frame_bundle_obstruction_for(&plane_gl_smash(q)?, q)
}

pub fn frame_bundle_obstruction_for(sm: &SmashProduct<Coeff>, q: Option<&QI>) -> Result<FrameObstruction> {
    let mut report = CheckReport::new(match q {
        Some(q) => format!("frame obstruction at q = {}", q.to_expr()),
        None => "frame obstruction, formal q".to_string(),
    });
    match sm.module_algebra_violation(FRAME_ACTION_DEGREE, FRAME_ACTION_DEGREE)? {
        None => report.record("action well defined", format!("degree {FRAME_ACTION_DEGREE}"), true, String::new),
        Some((axiom, witness)) => report.fail("action well defined", axiom, witness),
    }
    let (gl, _sl, pi) = gl_to_sl(q)?;
    let ga = gl.algebra();
    let det = ga.gen("D")?;
    let dinv = ga.gen("Dinv")?;
    for (nm, x) in [("D", &det), ("Dinv", &dinv)] {
        let ok = gl.left_coinvariant_test(&pi, x)?;
        report.record("coinvariant under GL to SL", nm, ok, || format!("(π⊗id)Δ({nm}) ≠ 1⊗{nm}"));
    }
    let inv = ga.mul(&det, &dinv)?;
    report.record("D D⁻¹ = 1", "", inv.is_one(), || ga.show(&inv));
    report.absorb(units_certificate(sm.base(), FRAME_UNITS_DEGREE));

    let b = sm.base();
    let x = b.gen("x")?;
    let image = sm.act(&dinv, &x)?;
    let back = sm.act(&det, &image)?;
    report.record("D ▷ D⁻¹ ▷ x = x", "x", back == x, || b.show(&back));
    let coeff = image.coeff(x.leading().expect("generator").0);
    let rest = image.sub(&x.scale(&coeff));
    if !rest.is_zero() {
        report.fail("D⁻¹ acts diagonally", "x", b.show(&image));
    }
    let factor = coeff - RatFunc::one();
    let cube_root_remainder = factor.numerator_mod(&[QI::one(), QI::one(), QI::one()]);
    let verdict = match factor.as_constant() {
        Some(c) if c.is_zero() => FrameVerdict::Consistent,
        Some(c) => FrameVerdict::Obstructed(format!("{}*μ*x", QI::to_expr(&c))),
        None => FrameVerdict::Conditional,
    };
    if let FrameVerdict::Obstructed(w) = &verdict {
        report.note(format!("twisted centrality fails: x μ - μ (D⁻¹▷x) = -{w}"));
    }
    Ok(FrameObstruction { factor, cube_root_remainder, verdict, report })
}

/// Value of `q` in the builtin's parameter, for reports.
pub fn describe_q(q: Option<&QI>) -> String {
    q_expr(q).unwrap_or_else(|| "formal".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn qi(n: i64) -> QI {
        QI::new(Q::from_integer(n.into()), Q::zero())
    }

    #[test]
    fn su_q2_coproduct_of_gamma() {
        let h = su_q2(None).unwrap();
        let g = h.algebra().gen("gamma").unwrap();
        let a = h.algebra();
        let want = crate::ncpoly::parse_expr("gamma # alpha + alpha_star # gamma")
            .unwrap()
            .eval_tensor(&[a.alphabet(), a.alphabet()], a.tower(), a.param().cloned())
            .unwrap();
        assert_eq!(h.delta(&g).unwrap(), want);
    }

    #[test]
    fn antipode_of_z2_is_identity() {
        let h = c_z2(None).unwrap();
        let u = h.algebra().gen("u").unwrap();
        assert_eq!(h.antipode(&u).unwrap(), u);
    }

    #[test]
    fn gl_at_one_is_commutative() {
        let h = gl_q2(Some(&qi(1))).unwrap();
        let a = h.algebra();
        for x in a.names() {
            for y in a.names() {
                let c = a.commutator(&a.gen(x).unwrap(), &a.gen(y).unwrap()).unwrap();
                assert!(c.is_zero(), "[{x},{y}] = {}", a.show(&c));
            }
        }
    }

    #[test]
    fn unknown_name_and_zero_q() {
        assert!(matches!(build("su_q3", None), Err(Error::UnknownName(m)) if m.contains("su_q2")));
        assert_eq!(build("gl_q2", Some(&qi(0))).unwrap_err(), Error::QZero);
    }

    #[test]
    fn toeplitz_has_only_the_isometry_rule() {
        let t = toeplitz().unwrap();
        assert_eq!(t.rules().len(), 1);
        assert_eq!(t.show_word(&t.rules()[0].lhs), "s_star*s");
        assert!(t.rules()[0].rhs.is_one());
    }

    #[test]
    fn dinv_is_a_generator_with_det_relation() {
        let h = gl_q2(None).unwrap();
        let a = h.algebra();
        let det = a.parse("a*d - Q*b*c").unwrap();
        let di = a.gen("Dinv").unwrap();
        assert_eq!(det, a.gen("D").unwrap());
        assert!(a.mul(&det, &di).unwrap().is_one());
        assert!(a.mul(&di, &det).unwrap().is_one());
    }

    #[test]
    fn su_q2_projection() {
        let rep = su_q2_to_u1_checks(None).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn frame_obstruction_formal_and_special() {
        let f = frame_bundle_obstruction(None).unwrap();
        assert!(f.report.ok(), "{:?}", f.report.failures);
        assert_eq!(f.factor.to_string(), "Q^3 - 1");
        assert!(f.cube_root_remainder.iter().all(|c| c.is_zero()));
        assert_eq!(f.verdict, FrameVerdict::Conditional);
        let one = frame_bundle_obstruction(Some(&qi(1))).unwrap();
        assert_eq!(one.verdict, FrameVerdict::Consistent);
        let two = frame_bundle_obstruction(Some(&qi(2))).unwrap();
        assert_eq!(two.verdict, FrameVerdict::Obstructed("7*μ*x".into()));
    }

    #[test]
    fn every_builtin_passes_its_invariants() {
        for name in NAMES {
            let rep = verify(name, None, 4).unwrap();
            assert!(rep.ok(), "{name}: {:?}", rep.failures.iter().take(3).collect::<Vec<_>>());
        }
    }

    #[test]
    fn export_round_trips() {
        for name in NAMES {
            let inst = build(name, None).unwrap();
            let json = inst.export().to_json();
            let back = Presentation::from_json(&json).unwrap().import::<Coeff>().unwrap();
            assert_eq!(inst, back, "{name}");
        }
    }
}
