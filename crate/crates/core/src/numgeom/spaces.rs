use std::sync::Arc;

use rand::Rng;

use super::circle::{delta_angle, pullback_delta, sign, Omega, Strip, StripOrder, Z2};
use super::toeplitz::{FourierPoly, ToeplitzPoly};
use super::{chebyshev_grid, Measure, NumConfig, NumReport, Real, C};
use crate::error::{Error, Result};
use crate::ncpoly::{Algebra, NcPoly, Word};
use crate::scalar::Field;

/// A triple `(p₀, p₁, p₂)` of Toeplitz elements (projective plane or disc).
pub type Disc<T> = [ToeplitzPoly<T>; 3];

/// A triple of elements of `T ⊗ C(Z₂)`, each stored by its values
/// `[x(1), x(-1)]` at the two points of `Z₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereElem<T: Real> {
    pub pieces: [[ToeplitzPoly<T>; 2]; 3],
}

fn zi(k: i8) -> usize {
    usize::from(k < 0)
}

impl<T: Real> SphereElem<T> {
    pub fn constant(c: C<T>) -> Self {
        let p = ToeplitzPoly::scalar(c);
        SphereElem { pieces: std::array::from_fn(|_| [p.clone(), p.clone()]) }
    }

    pub fn component(&self, i: usize, c: i8) -> &ToeplitzPoly<T> {
        &self.pieces[i][zi(c)]
    }

    /// Read a triple of elements of an algebra on `s`, `s_star` and a
    /// central involution `u`, evaluating `u` at both points of `Z₂`.
    pub fn from_nc<K: Field>(alg: &Algebra<K>, tuple: &[NcPoly<K>]) -> Result<Self> {
        if tuple.len() != 3 {
            return Err(Error::SizeMismatch(format!("sphere tuples have 3 components, got {}", tuple.len())));
        }
        let u = alg.rank("u")?;
        let at = |p: &NcPoly<K>, c: i8| -> Result<ToeplitzPoly<T>> {
            let mut out = NcPoly::zero();
            for (w, k) in p.terms() {
                let n = w.0.iter().filter(|&&g| g == u).count();
                let rest = Word(w.0.iter().copied().filter(|&g| g != u).collect());
                let k = if c < 0 && n % 2 == 1 { -k.clone() } else { k.clone() };
                out.add_term(rest, k);
            }
            ToeplitzPoly::from_nc(alg, &out)
        };
        let mut pieces: [[ToeplitzPoly<T>; 2]; 3] = std::array::from_fn(|_| [ToeplitzPoly::zero(), ToeplitzPoly::zero()]);
        for (i, p) in tuple.iter().enumerate() {
            pieces[i] = [at(p, 1)?, at(p, -1)?];
        }
        Ok(SphereElem { pieces })
    }

    pub fn dist(&self, o: &Self) -> T {
        let mut r = T::zero();
        for (a, b) in self.pieces.iter().zip(&o.pieces) {
            for (x, y) in a.iter().zip(b) {
                r = r.max(x.dist(y));
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        SphereElem { pieces: std::array::from_fn(|i| std::array::from_fn(|c| self.pieces[i][c].add(&o.pieces[i][c]))) }
    }

    pub fn scale(&self, k: C<T>) -> Self {
        SphereElem { pieces: std::array::from_fn(|i| std::array::from_fn(|c| self.pieces[i][c].scale(k))) }
    }
}

/// The diagonal `Z₂`-action: `(αx)_i(c) = α(x_i(-c))`.
pub fn sphere_z2_action<T: Real>(x: &SphereElem<T>) -> SphereElem<T> {
    SphereElem { pieces: std::array::from_fn(|i| [x.pieces[i][1].alpha(), x.pieces[i][0].alpha()]) }
}

/// A function on `Z₂ × I × Z₂` (order `Z2I`) or `I × Z₂ × Z₂` (order
/// `IZ2`) sampled on an interval grid; indexed by the sign on the first
/// two legs, the interval sample, and the sign on the last leg.
#[derive(Clone, Debug)]
pub struct Triple<T: Real> {
    pub order: StripOrder,
    pub grid: Arc<[T]>,
    v: Vec<C<T>>,
}

impl<T: Real> Triple<T> {
    pub fn from_fn(order: StripOrder, grid: Arc<[T]>, f: impl Fn(i8, usize, i8) -> C<T>) -> Self {
        let m = grid.len();
        let mut v = Vec::with_capacity(4 * m);
        for p in Z2 {
            for j in 0..m {
                for c in Z2 {
                    v.push(f(p, j, c));
                }
            }
        }
        Triple { order, grid, v }
    }

    pub fn at(&self, p: i8, m: usize, c: i8) -> C<T> {
        self.v[(zi(p) * self.grid.len() + m) * 2 + zi(c)]
    }

    /// Grid index of `k t` for `t = grid[m]`.
    pub fn scaled(&self, k: i8, m: usize) -> usize {
        if k > 0 {
            m
        } else {
            self.grid.len() - 1 - m
        }
    }

    /// Sup-distance and the point where it is attained.
    pub fn sup_diff(&self, o: &Self) -> (T, i8, usize, i8) {
        let mut best = (T::zero(), 1, 0, 1);
        for p in Z2 {
            for m in 0..self.grid.len() {
                for c in Z2 {
                    let d = (self.at(p, m, c) - o.at(p, m, c)).norm();
                    if d > best.0 {
                        best = (d, p, m, c);
                    }
                }
            }
        }
        best
    }

    fn point(&self, p: i8, m: usize, c: i8) -> String {
        let t = self.grid[m].f64();
        match self.order {
            StripOrder::Z2I => format!("({p}, {t:.6}, {c})"),
            StripOrder::IZ2 => format!("({t:.6}, {p}, {c})"),
        }
    }
}

fn expect_order<T: Real>(f: &Triple<T>, want: StripOrder, what: &str) -> Result<()> {
    if f.order != want {
        return Err(Error::SizeMismatch(format!("{what} expects {want:?}, got {:?}", f.order)));
    }
    Ok(())
}

/// `(σ_i ⊗ id)(x)` for `x = [x(1), x(-1)] ∈ T ⊗ C(Z₂)`.
pub fn sigma_tensor<T: Real>(i: u8, x: &[ToeplitzPoly<T>; 2], grid: &Arc<[T]>) -> Triple<T> {
    let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
    let sym = [x[0].symbol(), x[1].symbol()];
    Triple::from_fn(order, grid.clone(), |p, m, c| sym[zi(c)].eval(delta_angle(i, p, grid[m])))
}

/// The gluing isomorphisms with `f_ij = id`:
/// `Φ₀₁(h⊗p⊗k) = k⊗p⊗h`, `Φ₀₂(h⊗p⊗k) = p⊗k⊗h`, `Φ₁₂(p⊗h⊗k) = p⊗k⊗h`.
pub fn phi<T: Real>(ij: (usize, usize), f: &Triple<T>) -> Result<Triple<T>> {
    let g = f.grid.clone();
    match ij {
        // G(a, t, c) = F(c, t, a)
        (0, 1) => {
            expect_order(f, StripOrder::Z2I, "Φ01")?;
            Ok(Triple::from_fn(StripOrder::Z2I, g, |a, m, c| f.at(c, m, a)))
        }
        // G(t, b, c) = F(c, t, b)
        (0, 2) => {
            expect_order(f, StripOrder::Z2I, "Φ02")?;
            Ok(Triple::from_fn(StripOrder::IZ2, g, |b, m, c| f.at(c, m, b)))
        }
        // G(t, b, c) = F(t, c, b)
        (1, 2) => {
            expect_order(f, StripOrder::IZ2, "Φ12")?;
            Ok(Triple::from_fn(StripOrder::IZ2, g, |b, m, c| f.at(c, m, b)))
        }
        _ => Err(Error::SizeMismatch(format!("no gluing map for pieces {ij:?}"))),
    }
}

/// The ungauged gluings `Φ̃_ij(a⊗b⊗h) = Ψ_ij(a⊗b) T_ij(h₍₁₎) ⊗ h₍₂₎` with
/// transition functions pulled back from `f_ij = id`.
pub fn phi_tilde<T: Real>(ij: (usize, usize), f: &Triple<T>) -> Result<Triple<T>> {
    let g = f.grid.clone();
    match ij {
        // G(a, t, c) = F(a, a t, a c)
        (0, 1) => {
            expect_order(f, StripOrder::Z2I, "Φ̃01")?;
            Ok(Triple::from_fn(StripOrder::Z2I, g, |a, m, c| f.at(a, f.scaled(a, m), a * c)))
        }
        // G(t, b, c) = F(b, b t, b c)
        (0, 2) => {
            expect_order(f, StripOrder::Z2I, "Φ̃02")?;
            Ok(Triple::from_fn(StripOrder::IZ2, g, |b, m, c| f.at(b, f.scaled(b, m), b * c)))
        }
        // G(t, b, c) = F(b t, b, b c)
        (1, 2) => {
            expect_order(f, StripOrder::IZ2, "Φ̃12")?;
            Ok(Triple::from_fn(StripOrder::IZ2, g, |b, m, c| f.at(b, f.scaled(b, m), b * c)))
        }
        _ => Err(Error::SizeMismatch(format!("no gluing map for pieces {ij:?}"))),
    }
}

/// The gauge `g(b ⊗ h) = b₍₀₎ ⊗ b₍₁₎ h` for the diagonal action on the
/// first two legs: `g(F)(x, c) = F(c·x, c)`.
pub fn gauge<T: Real>(f: &Triple<T>) -> Triple<T> {
    Triple::from_fn(f.order, f.grid.clone(), |p, m, c| f.at(c * p, f.scaled(c, m), c))
}

/// The gauge on `T ⊗ C(Z₂)`: `g(x)(c) = α_c(x(c))`.
pub fn gauge_toeplitz<T: Real>(x: &[ToeplitzPoly<T>; 2]) -> [ToeplitzPoly<T>; 2] {
    [x[0].clone(), x[1].alpha()]
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub max_residual: f64,
    pub at: String,
}

impl Membership {
    fn from_measure(m: &Measure, tol: f64) -> Self {
        Membership { member: m.passes(tol), max_residual: m.max_residual, at: m.at.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Rp2,
    Sphere,
    Disc,
}

pub enum TupleRef<'a, T: Real> {
    Plain(&'a Disc<T>),
    Sphere(&'a SphereElem<T>),
}

/// The defining compatibility conditions of the chosen pullback, on the
/// interval grid of `cfg`, with exact symbols.
pub fn quantum_space_membership<T: Real>(space: Space, tuple: TupleRef<'_, T>, cfg: &NumConfig) -> Result<Membership> {
    let grid = chebyshev_grid::<T>(cfg.interval);
    let m = match (space, tuple) {
        (Space::Rp2, TupleRef::Plain(t)) => rp2_measure(t, &grid),
        (Space::Disc, TupleRef::Plain(t)) => disc_membership(t, &grid),
        (Space::Sphere, TupleRef::Sphere(x)) => sphere_membership(x, &grid)?,
        (s, _) => return Err(Error::SizeMismatch(format!("{s:?} membership needs a tuple of the matching kind"))),
    };
    Ok(Membership::from_measure(&m, cfg.tol))
}

fn sigma_strip<T: Real>(i: u8, p: &ToeplitzPoly<T>, grid: &Arc<[T]>) -> Strip<T> {
    let sym = p.symbol();
    pullback_delta(i, grid.clone(), |th| sym.eval(th))
}

fn mirror(k: i8, m: usize, len: usize) -> usize {
    if k > 0 {
        m
    } else {
        len - 1 - m
    }
}

/// Residual of the three conditions `σ₁(t₀) = Ψ₀₁σ₁(t₁)`,
/// `σ₂(t₀) = Ψ₀₂σ₁(t₂)`, `σ₂(t₁) = Ψ₁₂σ₂(t₂)`, where `Ψ₀₁`, `Ψ₀₂`, `Ψ₁₂`
/// are pulled back from `(k,t) ↦ (k,kt)`, `(t,k) ↦ (k,kt)`, `(t,k) ↦ (kt,k)`.
pub fn rp2_measure<T: Real>(t: &Disc<T>, grid: &Arc<[T]>) -> Measure {
    let n = grid.len();
    let s10 = sigma_strip(1, &t[0], grid);
    let s20 = sigma_strip(2, &t[0], grid);
    let s11 = sigma_strip(1, &t[1], grid);
    let s21 = sigma_strip(2, &t[1], grid);
    let s12 = sigma_strip(1, &t[2], grid);
    let s22 = sigma_strip(2, &t[2], grid);
    let mut r = Measure::new("projective plane conditions");
    for k in Z2 {
        for m in 0..n {
            let mk = mirror(k, m, n);
            let tt = grid[m].f64();
            r.push((s10.at(k, m) - s11.at(k, mk)).norm().f64(), || format!("condition 01 at ({k}, {tt:.6})"));
            r.push((s20.at(k, m) - s12.at(k, mk)).norm().f64(), || format!("condition 02 at ({tt:.6}, {k})"));
            r.push((s21.at(k, m) - s22.at(k, mk)).norm().f64(), || format!("condition 12 at ({tt:.6}, {k})"));
        }
    }
    r
}

/// Residual of the three gluing conditions of the sphere.
pub fn sphere_membership<T: Real>(x: &SphereElem<T>, grid: &Arc<[T]>) -> Result<Measure> {
    sphere_membership_with(x, grid, phi)
}

/// Sphere conditions with the gluing maps supplied by `glue`.
pub fn sphere_membership_with<T: Real>(
    x: &SphereElem<T>,
    grid: &Arc<[T]>,
    glue: impl Fn((usize, usize), &Triple<T>) -> Result<Triple<T>>,
) -> Result<Measure> {
    let mut r = Measure::new("sphere conditions");
    let conds: [((usize, usize), u8, u8); 3] = [((0, 1), 1, 1), ((0, 2), 2, 1), ((1, 2), 2, 2)];
    for ((i, j), si, sj) in conds {
        let lhs = sigma_tensor(si, &x.pieces[i], grid);
        let rhs = glue((i, j), &sigma_tensor(sj, &x.pieces[j], grid))?;
        let (d, p, m, c) = lhs.sup_diff(&rhs);
        r.push(d.f64(), || format!("condition {i}{j} at {}", lhs.point(p, m, c)));
    }
    Ok(r)
}

/// Residual of the disc conditions
/// `σ₁(p₀)(-1,x) = σ₁(p₁)(-1,x)`, `σ₂(p₀)(x,-1) = σ₁(p₂)(-1,x)`,
/// `σ₂(p₁)(x,-1) = σ₂(p₂)(x,-1)`.
pub fn disc_membership<T: Real>(p: &Disc<T>, grid: &Arc<[T]>) -> Measure {
    let sym = [p[0].symbol(), p[1].symbol(), p[2].symbol()];
    let mut r = Measure::new("disc conditions");
    for &x in grid.iter() {
        let e1 = |i: usize| sym[i].eval(delta_angle(1, -1, x));
        let e2 = |i: usize| sym[i].eval(delta_angle(2, -1, x));
        let xs = x.f64();
        r.push((e1(0) - e1(1)).norm().f64(), || format!("condition 01 at x = {xs:.6}"));
        r.push((e2(0) - e1(2)).norm().f64(), || format!("condition 02 at x = {xs:.6}"));
        r.push((e2(1) - e2(2)).norm().f64(), || format!("condition 12 at x = {xs:.6}"));
    }
    r
}

/// The six boundary arcs `(f₁, …, f₆)` of `σ°_n(p)`; `σ°₂` is `σ°₁`
/// followed by the antipodal rotation `(f₁..f₆) ↦ (f₄, f₅, f₆, f₁, f₂, f₃)`.
pub fn sigma_circ<T: Real>(n: u8, p: &Disc<T>, grid: &Arc<[T]>) -> [Vec<C<T>>; 6] {
    let sym = [p[0].symbol(), p[1].symbol(), p[2].symbol()];
    let arc = |i: usize, f: &dyn Fn(T) -> T| grid.iter().map(|&t| sym[i].eval(f(t))).collect::<Vec<_>>();
    let f1 = arc(0, &|t| delta_angle(1, 1, t));
    let f2 = arc(0, &|t| delta_angle(2, 1, -t));
    let f3 = arc(1, &|t| delta_angle(2, 1, t));
    let f4 = arc(1, &|t| delta_angle(1, 1, -t));
    let f5 = arc(2, &|t| delta_angle(1, 1, t));
    let f6 = arc(2, &|t| delta_angle(2, 1, -t));
    if n == 1 {
        [f1, f2, f3, f4, f5, f6]
    } else {
        [f4, f5, f6, f1, f2, f3]
    }
}

/// Residuals of `σ°₂(p) = σ°₁(p)` and `σ°₂(p) = -σ°₁(p)`.
pub fn disc_parity<T: Real>(p: &Disc<T>, grid: &Arc<[T]>) -> (f64, f64) {
    let a = sigma_circ(1, p, grid);
    let b = sigma_circ(2, p, grid);
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for (x, y) in a.iter().zip(&b) {
        for (u, v) in x.iter().zip(y) {
            plus = plus.max((v - u).norm().f64());
            minus = minus.max((v + u).norm().f64());
        }
    }
    (plus, minus)
}

/// `π_n(x)_i = α_{(-1)^n}(x_i((-1)^{n+1}))`.
pub fn pi_n<T: Real>(n: u8, x: &SphereElem<T>) -> Disc<T> {
    std::array::from_fn(|i| if n == 1 { x.pieces[i][0].alpha() } else { x.pieces[i][1].clone() })
}

/// Inverse of `π_n` on the `±` part: for `n = 1`, `p ↦ α(p) ⊗ 1₁ ± p ⊗ 1₋₁`;
/// for `n = 2`, `p ↦ ±α(p) ⊗ 1₁ + p ⊗ 1₋₁`.
pub fn pi_n_inverse<T: Real>(n: u8, plus: bool, p: &Disc<T>) -> SphereElem<T> {
    let s = |q: &ToeplitzPoly<T>| if plus { q.clone() } else { q.scale(C::new(-T::one(), T::zero())) };
    let pieces = std::array::from_fn(|i| if n == 1 { [p[i].alpha(), s(&p[i])] } else { [s(&p[i].alpha()), p[i].clone()] });
    SphereElem { pieces }
}

fn random_c<T: Real, R: Rng>(rng: &mut R) -> C<T> {
    C::new(T::of(rng.gen_range(-1.0..1.0)), T::of(rng.gen_range(-1.0..1.0)))
}

/// A random element of `C(D_T)^±`: every face carries the symbol
/// `r₀ + r₁(z⁴ + z⁻⁴)` (for `+`) or `r₁(z² - z⁻²) + r₂(z⁶ - z⁻⁶)` (for `-`)
/// plus independent random compact parts of degree at most `2·3`.
pub fn random_disc_element<T: Real, R: Rng>(rng: &mut R, plus: bool) -> Disc<T> {
    let mut common = if plus { ToeplitzPoly::scalar(random_c(rng)) } else { ToeplitzPoly::zero() };
    let (ks, sgn): (&[u32], T) = if plus { (&[4], T::one()) } else { (&[2, 6], -T::one()) };
    for &k in ks {
        let r = random_c(rng);
        common = common.add(&ToeplitzPoly::monomial(k, 0, r)).add(&ToeplitzPoly::monomial(0, k, r * sgn));
    }
    std::array::from_fn(|_| {
        let mut x = common.clone();
        for _ in 0..3 {
            let (a, b) = (rng.gen_range(0..4), rng.gen_range(0..4));
            x = x.add(&ToeplitzPoly::compact(a, b).scale(random_c(rng)));
        }
        x
    })
}

/// A random sphere element of the given parity, lifted from a random disc
/// element; the sum of independent lifts of both parities when `parity` is
/// `None`.
pub fn random_sphere_element<T: Real, R: Rng>(rng: &mut R, parity: Option<bool>) -> SphereElem<T> {
    match parity {
        Some(plus) => pi_n_inverse(1, plus, &random_disc_element(rng, plus)),
        None => random_sphere_element(rng, Some(true)).add(&random_sphere_element(rng, Some(false))),
    }
}

/// Deliberate corruptions of the decomposition maps, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiMutation {
    /// The inverse omits the `Z₂`-action on the `1` leg.
    InverseWithoutAlpha,
    /// The inverse uses the sign of the other parity.
    InverseWrongSign,
    /// `π₁` omits the `Z₂`-action.
    ForwardWithoutAlpha,
}

/// Round trips of `π_n^±` and their inverses on random sphere elements,
/// with membership of both sides.
pub fn round_trip_check<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize) -> NumReport {
    round_trip_check_with(cfg, rng, samples, None)
}

pub fn round_trip_check_with<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize, mutation: Option<PiMutation>) -> NumReport {
    let grid = chebyshev_grid::<f64>(cfg.interval);
    let mut rep = NumReport::new(format!("Z2 decomposition over {samples} sphere elements"));
    let mut fwd = Measure::new("π_n± ∘ (π_n±)⁻¹ = id");
    let mut back = Measure::new("(π_n±)⁻¹ ∘ π_n± = id");
    let mut member = Measure::new("sphere element is a member");
    let mut disc = Measure::new("π_n± lands in C(D_T)±");
    let mut lift = Measure::new("(π_n±)⁻¹ lands in the sphere");
    let forward = |n: u8, x: &SphereElem<f64>| -> Disc<f64> {
        match mutation {
            Some(PiMutation::ForwardWithoutAlpha) if n == 1 => std::array::from_fn(|i| x.pieces[i][0].clone()),
            _ => pi_n(n, x),
        }
    };
    let inverse = |n: u8, plus: bool, p: &Disc<f64>| -> SphereElem<f64> {
        match mutation {
            Some(PiMutation::InverseWrongSign) => pi_n_inverse(n, !plus, p),
            Some(PiMutation::InverseWithoutAlpha) => {
                let y = pi_n_inverse(n, plus, p);
                let k = if n == 1 { 0 } else { 1 };
                let mut pieces = y.pieces;
                for (i, q) in pieces.iter_mut().enumerate() {
                    q[k] = if n == 1 { p[i].clone() } else { q[k].alpha() };
                }
                SphereElem { pieces }
            }
            _ => pi_n_inverse(n, plus, p),
        }
    };
    for k in 0..samples {
        let plus = k % 2 == 0;
        let n = if k % 4 < 2 { 1 } else { 2 };
        let tag = || format!("sample {k} (n = {n}, {})", if plus { "+" } else { "-" });
        let x = random_sphere_element::<f64, _>(rng, Some(plus));
        if let Ok(m) = sphere_membership(&x, &grid) {
            member.push(m.max_residual, tag);
        }
        let p = forward(n, &x);
        let mut d = disc_membership(&p, &grid).max_residual;
        let (rp, rm) = disc_parity(&p, &grid);
        d = d.max(if plus { rp } else { rm });
        disc.push(d, tag);
        let y = inverse(n, plus, &p);
        back.push(y.dist(&x), tag);
        let q = forward(n, &y);
        let f = (0..3).map(|i| q[i].dist(&p[i])).fold(0.0, f64::max);
        fwd.push(f, tag);
        if let Ok(m) = sphere_membership(&y, &grid) {
            lift.push(m.max_residual, tag);
        }
    }
    for m in [fwd, back, member, disc, lift] {
        rep.add(m);
    }
    rep
}

/// Faces `T_{i,±1}` of a sphere tuple and the twelve edge identifications
/// between the edge maps `E_{1,k} = (ev_k ⊗ id)∘σ₁`, `E_{2,k} = (id ⊗ ev_k)∘σ₂`.
#[derive(Clone, Debug)]
pub struct FaceAtlas {
    pub faces: Vec<String>,
    pub edges: Vec<(String, f64)>,
}

impl FaceAtlas {
    pub fn max_residual(&self) -> f64 {
        self.edges.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn mismatches(&self, tol: f64) -> Vec<&(String, f64)> {
        self.edges.iter().filter(|e| !(e.1 <= tol)).collect()
    }
}

pub fn face_atlas<T: Real>(x: &SphereElem<T>, grid: &Arc<[T]>) -> FaceAtlas {
    let mut faces = Vec::with_capacity(6);
    for i in 0..3 {
        for c in Z2 {
            faces.push(format!("T_{{{i},{c}}}"));
        }
    }
    let sym: Vec<[FourierPoly<T>; 2]> = x.pieces.iter().map(|p| [p[0].symbol(), p[1].symbol()]).collect();
    let edge = |face: usize, c: i8, e: u8, k: i8, t: T| sym[face][zi(c)].eval(delta_angle(e, k, t));
    let mut edges = Vec::with_capacity(12);
    let mut glue = |label: String, f: &dyn Fn(T) -> (C<T>, C<T>)| {
        let r = grid.iter().map(|&t| f(t)).map(|(a, b)| (a - b).norm().f64()).fold(0.0, f64::max);
        edges.push((label, r));
    };
    for a in Z2 {
        for c in Z2 {
            glue(format!("E_{{1,{a}}}(T_{{0,{c}}}) = E_{{1,{c}}}(T_{{1,{a}}})"), &|t| (edge(0, c, 1, a, t), edge(1, a, 1, c, t)));
        }
    }
    for b in Z2 {
        for c in Z2 {
            glue(format!("E_{{2,{b}}}(T_{{0,{c}}}) = E_{{1,{c}}}(T_{{2,{b}}})"), &|t| (edge(0, c, 2, b, t), edge(2, b, 1, c, t)));
        }
    }
    for b in Z2 {
        for c in Z2 {
            glue(format!("E_{{2,{b}}}(T_{{1,{c}}}) = E_{{2,{c}}}(T_{{2,{b}}})"), &|t| (edge(1, c, 2, b, t), edge(2, b, 2, c, t)));
        }
    }
    FaceAtlas { faces, edges }
}

/// Gauge conjugation: `g` is an involution, commutes with `σ_i ⊗ id`, and
/// conjugates `Φ̃_ij` into the closed forms `Φ_ij`, also at homogeneous
/// samples evaluated through the coaction legs.
pub fn gauge_conjugation_check<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize) -> Result<NumReport> {
    gauge_conjugation_check_with(cfg, rng, samples, phi)
}

/// [`gauge_conjugation_check`] with `glue` standing in for the closed-form
/// gluings `Φ_ij`.
pub fn gauge_conjugation_check_with<R: Rng>(
    cfg: &NumConfig,
    rng: &mut R,
    samples: usize,
    glue: impl Fn((usize, usize), &Triple<f64>) -> Result<Triple<f64>>,
) -> Result<NumReport> {
    let grid = chebyshev_grid::<f64>(cfg.interval);
    let mut rep = NumReport::new(format!("gauge conjugation over {samples} samples"));
    let mut inv = Measure::new("g ∘ g = id");
    let mut sig = Measure::new("g ∘ (σ_i ⊗ id) ∘ g = σ_i ⊗ id");
    let mut conj = Measure::new("g ∘ Φ̃_ij ∘ g = Φ_ij");
    let mut homog = Measure::new("Φ_01 at homogeneous samples");
    for k in 0..samples {
        for order in [StripOrder::Z2I, StripOrder::IZ2] {
            let vals: Vec<C<f64>> = (0..4 * grid.len()).map(|_| random_c(rng)).collect();
            let f = Triple { order, grid: grid.clone(), v: vals };
            let (d, ..) = gauge(&gauge(&f)).sup_diff(&f);
            inv.push(d, || format!("sample {k} {order:?}"));
        }
        let x = [ToeplitzPoly::<f64>::random(rng, 3), ToeplitzPoly::<f64>::random(rng, 3)];
        let gx = gauge_toeplitz(&x);
        inv.push(gauge_toeplitz(&gx)[1].dist(&x[1]), || format!("sample {k} on T ⊗ C(Z2)"));
        for i in [1u8, 2] {
            let lhs = gauge(&sigma_tensor(i, &gx, &grid));
            let (d, ..) = lhs.sup_diff(&sigma_tensor(i, &x, &grid));
            sig.push(d, || format!("sample {k}, σ_{i}"));
        }
        for (ij, order) in [((0, 1), StripOrder::Z2I), ((0, 2), StripOrder::Z2I), ((1, 2), StripOrder::IZ2)] {
            let vals: Vec<C<f64>> = (0..4 * grid.len()).map(|_| random_c(rng)).collect();
            let f = Triple { order, grid: grid.clone(), v: vals };
            let (d, ..) = gauge(&phi_tilde(ij, &gauge(&f))?).sup_diff(&glue(ij, &f)?);
            conj.push(d, || format!("sample {k}, Φ_{}{}", ij.0, ij.1));
        }
        let (eh, ep, ek) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8), rng.gen_range(0..2u8));
        let coeffs: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = |t: f64| {
            let even = coeffs[0] + coeffs[1] * t * t + coeffs[2] * t.powi(4);
            C::new(if ep == 1 { t * even } else { even }, 0.0)
        };
        let pw = |s: i8, e: u8| if e == 1 { f64::from(s) } else { 1.0 };
        let f = Triple::from_fn(StripOrder::Z2I, grid.clone(), |a, m, c| p(grid[m]) * pw(a, eh) * pw(c, ek));
        let via_gauge = gauge(&phi_tilde((0, 1), &gauge(&f))?);
        // (h₁p₁ ⊗ p₀) T(h₂p₃k₁)₍₀₎ ⊗ T(h₂p₃k₁)₍₁₎ p₂ k₂ with group-like legs
        let et = (eh + ep + ek) % 2;
        let first = (eh + ep + et) % 2;
        let last = (et + ep + ek) % 2;
        let closed = Triple::from_fn(StripOrder::Z2I, grid.clone(), |a, m, c| p(grid[m]) * pw(a, first) * pw(c, last));
        let (d, ..) = via_gauge.sup_diff(&closed);
        homog.push(d, || format!("sample {k}: h = u^{eh}, p of parity {ep}, k = u^{ek}"));
    }
    for m in [inv, sig, conj, homog] {
        rep.add(m);
    }
    Ok(rep)
}

/// Deliberate corruptions of the surjectivity conditions, for negative
/// controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SurjectivityMutation {
    /// Use the ungauged gluings `Φ̃_ij` in place of `Φ_ij`.
    pub ungauged: bool,
    /// Skip the projection of `σ(b)` onto `ker δ_j*`.
    pub unprojected: bool,
    /// Compare `δ₁(y, x)` with `δ₂(y, x)` instead of `δ₂(x, y)`.
    pub unswapped_corner: bool,
}

/// Kernel-image conditions for one random symbol: the part of `σ(b)` in
/// `ker δ₂*` (resp. `ker δ₁*`) pulls back along `δ₁` (resp. `δ₂`) to a
/// function vanishing at `t = ±1`, the gluings preserve that pattern, and
/// every pattern element is hit through `ω̂`.
pub fn kernel_image_residual<R: Rng>(b: &ToeplitzPoly<f64>, grid: &Arc<[f64]>, rng: &mut R) -> Result<f64> {
    kernel_image_residual_with(b, grid, rng, SurjectivityMutation::default())
}

pub fn kernel_image_residual_with<R: Rng>(b: &ToeplitzPoly<f64>, grid: &Arc<[f64]>, rng: &mut R, mutation: SurjectivityMutation) -> Result<f64> {
    let sym = b.symbol();
    let n = grid.len();
    let mut r = 0.0f64;
    for (i, j) in [(1u8, 2u8), (2, 1)] {
        // f' = f - ω̂_j(δ_j^* f) lies in ker δ_j^*
        let dj = pullback_delta(j, grid.clone(), |th| sym.eval(th));
        let wj = Omega::new(j, &dj)?;
        let fk = |th: f64| if mutation.unprojected { sym.eval(th) } else { sym.eval(th) - wj.eval(th) };
        let back = pullback_delta(j, grid.clone(), fk);
        r = r.max(back.parts.iter().flat_map(|p| p.values.iter()).map(|v| v.norm()).fold(0.0, f64::max));
        let di = pullback_delta(i, grid.clone(), fk);
        for k in Z2 {
            r = r.max(di.at(k, 0).norm()).max(di.at(k, n - 1).norm());
        }
        // the gluings act on the remaining legs only, so t = ±1 stays zero
        let h = [random_c::<f64, _>(rng), random_c(rng)];
        let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
        let f = Triple::from_fn(order, grid.clone(), |p, m, c| di.at(p, m) * h[zi(c)]);
        let ij = if i == 1 { (0, 1) } else { (1, 2) };
        let glued = if mutation.ungauged { phi_tilde(ij, &f)? } else { phi(ij, &f)? };
        for p in Z2 {
            for c in Z2 {
                r = r.max(glued.at(p, 0, c).norm()).max(glued.at(p, n - 1, c).norm());
            }
        }
        // (1 - t²) q(k, t) is δ_i^* of ω̂_i of itself and lies in δ_i^*(ker δ_j^*)
        let q: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let pat = Strip::from_fn(order, grid.clone(), |k, t| {
            let o = if k > 0 { 0 } else { 4 };
            C::new((1.0 - t * t) * (q[o] + q[o + 1] * t + q[o + 2] * t * t + q[o + 3] * t * t * t), 0.0)
        });
        let wi = Omega::new(i, &pat)?;
        let again = pullback_delta(i, grid.clone(), |th| wi.eval(th));
        r = r.max(again.sup_diff(&pat));
        let off = pullback_delta(j, grid.clone(), |th| wi.eval(th));
        r = r.max(off.parts.iter().flat_map(|p| p.values.iter()).map(|v| v.norm()).fold(0.0, f64::max));
    }
    Ok(r)
}

/// Both composites `π⁰¹₂ ∘ (π⁰²₁)⁻¹ ∘ π²⁰₁` and `π¹⁰₂ ∘ (π¹²₀)⁻¹ ∘ π²¹₀` on
/// `b ⊗ g`, compared in the quotient by `C(Z₂) ⊗ ker ι* ⊗ C(Z₂)`, i.e. at
/// `t = ±1`.
pub fn cocycle_residual(b: &ToeplitzPoly<f64>, g: [C<f64>; 2], grid: &Arc<[f64]>) -> Result<f64> {
    cocycle_residual_with(b, g, grid, SurjectivityMutation::default())
}

pub fn cocycle_residual_with(b: &ToeplitzPoly<f64>, g: [C<f64>; 2], grid: &Arc<[f64]>, mutation: SurjectivityMutation) -> Result<f64> {
    let x = [b.scale(g[0]), b.scale(g[1])];
    let n = grid.len();
    let glue = |ij, f: &Triple<f64>| if mutation.ungauged { phi_tilde(ij, f) } else { phi(ij, f) };
    let lhs_in = glue((0, 2), &sigma_tensor(1, &x, grid))?;
    let rhs_in = glue((1, 2), &sigma_tensor(2, &x, grid))?;
    let omega_leg = |f: &Triple<f64>, c: i8| -> Result<Omega<f64>> {
        let strip = Strip::from_fn(StripOrder::IZ2, grid.clone(), |p, t| {
            let m = grid.partition_point(|&y| y < t).min(n - 1);
            f.at(p, m, c)
        });
        Omega::new(2, &strip)
    };
    let mut r = 0.0f64;
    let ends = [(0usize, -1i8), (n - 1, 1)];
    let lw = [omega_leg(&lhs_in, 1)?, omega_leg(&lhs_in, -1)?];
    let rw = [omega_leg(&rhs_in, 1)?, omega_leg(&rhs_in, -1)?];
    for a in Z2 {
        for c in Z2 {
            for &(_, t) in &ends {
                let tt = f64::from(t);
                let lhs = lw[zi(c)].eval(delta_angle(1, a, tt));
                // Φ₀₁ swaps the outer legs: H(c, t, a)
                let rhs = rw[zi(a)].eval(delta_angle(1, c, tt));
                r = r.max((lhs - rhs).norm());
            }
        }
    }
    Ok(r)
}

/// The corner identity `(id ⊗ ι*)∘δ₁* = (ι* ⊗ id)∘δ₂*`: `δ₁` and `δ₂`
/// agree on `{±1} × {±1}`.
pub fn corner_residual(mutation: SurjectivityMutation) -> f64 {
    let mut r = 0.0f64;
    for y in Z2 {
        for x in Z2 {
            let a = super::delta_map::<f64>(1, y, sign(x));
            let b = if mutation.unswapped_corner {
                super::delta_map::<f64>(2, y, sign(x))
            } else {
                super::delta_map::<f64>(2, x, sign(y))
            };
            r = r.max((a - b).norm());
        }
    }
    r
}

/// Both conditions of the surjectivity criterion on random degree-≤3
/// Toeplitz elements, plus the corner identity.
pub fn surjectivity_conditions<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize) -> Result<NumReport> {
    surjectivity_conditions_with(cfg, rng, samples, SurjectivityMutation::default())
}

pub fn surjectivity_conditions_with<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize, mutation: SurjectivityMutation) -> Result<NumReport> {
    let grid = chebyshev_grid::<f64>(cfg.interval);
    let mut rep = NumReport::new(format!("surjectivity conditions over {samples} elements"));
    let mut jed = Measure::new("kernel images agree");
    let mut last = Measure::new("cocycle of partial inverses");
    for k in 0..samples {
        let b = ToeplitzPoly::<f64>::random(rng, 3);
        let g = [random_c(rng), random_c(rng)];
        jed.push(kernel_image_residual_with(&b, &grid, rng, mutation)?, || format!("sample {k}"));
        last.push(cocycle_residual_with(&b, g, &grid, mutation)?, || format!("sample {k}"));
    }
    let mut corner = Measure::new("corner identity");
    corner.push(corner_residual(mutation), || "{±1} × {±1}".into());
    rep.add(jed);
    rep.add(last);
    rep.add(corner);
    Ok(rep)
}
