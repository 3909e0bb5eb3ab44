use rand::Rng;

use super::{Measure, NumReport, C64};

/// A point `(a, c)` of the three-sphere `|a|² + |c|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S3Point {
    pub a: C64,
    pub c: C64,
}

impl S3Point {
    pub fn rotate(&self, phi: f64) -> Self {
        let e = C64::from_polar(1.0, phi);
        S3Point { a: e * self.a, c: e * self.c }
    }

    pub fn coord(&self, z: char) -> C64 {
        if z == 'a' {
            self.a
        } else {
            self.c
        }
    }
}

/// Uniform point on the three-sphere, by rejection from the unit ball.
pub fn random_s3<R: Rng>(rng: &mut R) -> S3Point {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            return S3Point { a: C64::new(v[0] / r, v[1] / r), c: C64::new(v[2] / r, v[3] / r) };
        }
    }
}

/// `ω = (2 / (1 + ||a|² - |c|²|))^{1/2}`.
pub fn omega_s3(p: &S3Point) -> f64 {
    (2.0 / (1.0 + (p.a.norm_sqr() - p.c.norm_sqr()).abs())).sqrt()
}

/// `z^n` for `n ≥ 0` and `z̄^{-n}` otherwise.
fn signed_pow(z: C64, n: i32) -> C64 {
    if n >= 0 {
        z.powi(n)
    } else {
        z.conj().powi(-n)
    }
}

/// Cleaving on the `z`-patch: `u^n ↦ (ωz)^n`, with negative powers through
/// the adjoint.
pub fn cleaving(p: &S3Point, z: char, n: i32) -> C64 {
    signed_pow(p.coord(z) * omega_s3(p), n)
}

/// The section `ω^{|n|} z^n` of the line bundle of charge `n`.
pub fn section(p: &S3Point, z: char, n: i32) -> C64 {
    signed_pow(p.coord(z), n) * omega_s3(p).powi(n.abs())
}

/// Deliberate corruptions of the three-sphere formulas, for negative
/// controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwMutation {
    /// `ω²` used in place of `ω`.
    OmegaSquared,
    /// Negative powers of the cleaving drop the factor `ω`.
    AdjointWithoutOmega,
    /// Sections use `z̄^n` for positive `n`.
    ConjugatedSection,
}

/// Monte-Carlo identities on the three-sphere: the patch identity
/// `(1 - ω²|a|²)(1 - ω²|c|²) = 0`, multiplicativity of the cleavings on
/// their patches, and equivariance of the sections for `n ∈ -2..=2`.
pub fn peter_weyl_checks<R: Rng>(rng: &mut R, samples: usize) -> NumReport {
    peter_weyl_checks_with(rng, samples, None)
}

pub fn peter_weyl_checks_with<R: Rng>(rng: &mut R, samples: usize, mutation: Option<PwMutation>) -> NumReport {
    let omega = |p: &S3Point| match mutation {
        Some(PwMutation::OmegaSquared) => omega_s3(p).powi(2),
        _ => omega_s3(p),
    };
    let cleave = |p: &S3Point, z: char, n: i32| match mutation {
        Some(PwMutation::AdjointWithoutOmega) if n < 0 => p.coord(z).conj().powi(-n),
        _ => cleaving(p, z, n),
    };
    let sect = |p: &S3Point, z: char, n: i32| match mutation {
        Some(PwMutation::ConjugatedSection) if n > 0 => section(p, z, -n),
        _ => section(p, z, n),
    };
    let mut rep = NumReport::new(format!("Peter-Weyl identities over {samples} points"));
    let mut zer = Measure::new("(1 - ω²|a|²)(1 - ω²|c|²) = 0");
    let mut patch = Measure::new("ω²|z|² = 1 on the z-patch");
    let mut mult = Measure::new("cleaving multiplicativity");
    let mut equi = Measure::new("Γ(L_n) equivariance");
    let (mut on_a, mut on_c) = (0, 0);
    for k in 0..samples {
        let p = random_s3(rng);
        let w2 = omega(&p).powi(2);
        let at = || format!("point {k}: a = {:.6}, c = {:.6}", p.a, p.c);
        zer.push(((1.0 - w2 * p.a.norm_sqr()) * (1.0 - w2 * p.c.norm_sqr())).abs(), at);
        let z = if p.a.norm_sqr() >= 0.5 {
            on_a += 1;
            'a'
        } else {
            on_c += 1;
            'c'
        };
        patch.push((1.0 - w2 * p.coord(z).norm_sqr()).abs(), at);
        for n in -3..=3 {
            for m in -3..=3 {
                let d = (cleave(&p, z, n + m) - cleave(&p, z, n) * cleave(&p, z, m)).norm();
                mult.push(d, || format!("point {k}, {z}-patch, n = {n}, m = {m}"));
            }
        }
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let q = p.rotate(phi);
        for n in -2..=2 {
            for z in ['a', 'c'] {
                let d = (sect(&q, z, n) - sect(&p, z, n) * C64::from_polar(1.0, f64::from(n) * phi)).norm();
                equi.push(d, || format!("point {k}, z = {z}, n = {n}, φ = {phi:.6}"));
            }
        }
    }
    for m in [zer, patch, mult, equi] {
        rep.add(m);
    }
    rep.count("a-patch points", on_a);
    rep.count("c-patch points", on_c);
    rep
}
