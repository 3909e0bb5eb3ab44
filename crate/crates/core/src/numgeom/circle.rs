use std::sync::Arc;

use super::{Real, C};
use crate::error::{Error, Result};

/// The two points of `Z₂`, as signs.
pub const Z2: [i8; 2] = [1, -1];

pub fn sign<T: Real>(k: i8) -> T {
    if k > 0 {
        T::one()
    } else {
        -T::one()
    }
}

fn z2_index(k: i8) -> usize {
    usize::from(k < 0)
}

/// `2πk/n` for `k < n`.
pub fn circle_grid<T: Real>(n: usize) -> Vec<T> {
    let step = (T::PI() + T::PI()) / T::of(n as f64);
    (0..n).map(|k| step * T::of(k as f64)).collect()
}

/// `m` Chebyshev points of `[-1, 1]`, ascending, symmetric under `t ↦ -t`
/// and containing both endpoints.
pub fn chebyshev_grid<T: Real>(m: usize) -> Arc<[T]> {
    let mut g = vec![T::zero(); m];
    let last = m - 1;
    for j in 0..m.div_ceil(2) {
        let t = if 2 * j == last {
            T::zero()
        } else {
            -(T::PI() * T::of(j as f64) / T::of(last as f64)).cos()
        };
        g[j] = t;
        g[last - j] = -t;
    }
    g[0] = -T::one();
    g[last] = T::one();
    g.into()
}

/// Angle in `[π/4, 9π/4)`.
fn reduce<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let lo = T::FRAC_PI_4();
    let mut r = (theta - lo) % two_pi;
    if r < T::zero() {
        r = r + two_pi;
    }
    r + lo
}

/// The piecewise-linear maps `φ̂₁, φ̂₂: S¹ → [-1, 1]` at `e^{iθ}`.
pub fn phi_hat<T: Real>(i: u8, theta: T) -> T {
    let x = reduce(theta) / T::FRAC_PI_4();
    let (three, five, seven) = (T::of(3.0), T::of(5.0), T::of(7.0));
    match i {
        1 => {
            if x <= three {
                T::of(2.0) - x
            } else if x <= five {
                -T::one()
            } else if x <= seven {
                x - T::of(6.0)
            } else {
                T::one()
            }
        }
        _ => {
            if x <= three {
                T::one()
            } else if x <= five {
                T::of(4.0) - x
            } else if x <= seven {
                -T::one()
            } else {
                x - T::of(8.0)
            }
        }
    }
}

pub fn phi_hat_at<T: Real>(i: u8, z: C<T>) -> T {
    phi_hat(i, z.arg())
}

/// Angle of `δ₁(k, t)` (for `i = 1`) or `δ₂(t, k)` (for `i = 2`).
pub fn delta_angle<T: Real>(i: u8, k: i8, t: T) -> T {
    let k = sign::<T>(k);
    let (four, two) = (T::of(4.0), T::of(2.0));
    if i == 1 {
        T::PI() * (k * t / four + k / two + T::of(1.5))
    } else {
        T::PI() * (-k * t / four - k / two + T::one())
    }
}

pub fn delta_map<T: Real>(i: u8, k: i8, t: T) -> C<T> {
    C::from_polar(T::one(), delta_angle(i, k, t))
}

/// A function on `[-1, 1]` sampled on a grid, evaluated by piecewise-linear
/// interpolation.
#[derive(Clone, Debug)]
pub struct IntervalFn<T: Real> {
    pub grid: Arc<[T]>,
    pub values: Vec<C<T>>,
}

impl<T: Real> IntervalFn<T> {
    pub fn from_fn(grid: Arc<[T]>, f: impl Fn(T) -> C<T>) -> Self {
        let values = grid.iter().map(|&t| f(t)).collect();
        IntervalFn { grid, values }
    }

    pub fn eval(&self, t: T) -> C<T> {
        let g = &self.grid;
        let t = t.max(-T::one()).min(T::one());
        let j = g.partition_point(|&x| x < t);
        if j == 0 {
            return self.values[0];
        }
        if j == g.len() {
            return self.values[g.len() - 1];
        }
        if g[j] == t {
            return self.values[j];
        }
        let w = (t - g[j - 1]) / (g[j] - g[j - 1]);
        self.values[j - 1] * (T::one() - w) + self.values[j] * w
    }
}

/// Which leg of a two-leg product carries `Z₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripOrder {
    /// `C(Z₂) ⊗ C(I)`, points `(k, t)`.
    Z2I,
    /// `C(I) ⊗ C(Z₂)`, points `(t, k)`.
    IZ2,
}

/// A function on `Z₂ × I` or `I × Z₂`, one interval function per sign.
#[derive(Clone, Debug)]
pub struct Strip<T: Real> {
    pub order: StripOrder,
    pub parts: [IntervalFn<T>; 2],
}

impl<T: Real> Strip<T> {
    pub fn from_fn(order: StripOrder, grid: Arc<[T]>, f: impl Fn(i8, T) -> C<T>) -> Self {
        let parts = Z2.map(|k| IntervalFn::from_fn(grid.clone(), |t| f(k, t)));
        Strip { order, parts }
    }

    pub fn grid(&self) -> &Arc<[T]> {
        &self.parts[0].grid
    }

    pub fn eval(&self, k: i8, t: T) -> C<T> {
        self.parts[z2_index(k)].eval(t)
    }

    pub fn at(&self, k: i8, m: usize) -> C<T> {
        self.parts[z2_index(k)].values[m]
    }

    /// `(h₀, h₁)` with `f = 1 ⊗ h₀ + u ⊗ h₁` (or `h₀ ⊗ 1 + h₁ ⊗ u`).
    pub fn split(&self) -> (IntervalFn<T>, IntervalFn<T>) {
        let half = T::of(0.5);
        let [p, m] = &self.parts;
        let even = p.values.iter().zip(&m.values).map(|(a, b)| (a + b) * half).collect();
        let odd = p.values.iter().zip(&m.values).map(|(a, b)| (a - b) * half).collect();
        (IntervalFn { grid: p.grid.clone(), values: even }, IntervalFn { grid: p.grid.clone(), values: odd })
    }

    /// Sup-distance over the grid.
    pub fn sup_diff(&self, o: &Strip<T>) -> T {
        let mut r = T::zero();
        for (a, b) in self.parts.iter().zip(&o.parts) {
            for (x, y) in a.values.iter().zip(&b.values) {
                r = r.max((x - y).norm());
            }
        }
        r
    }
}

/// `δ_i^*(f)` for `f` given by its value at angle `θ`.
pub fn pullback_delta<T: Real>(i: u8, grid: Arc<[T]>, f: impl Fn(T) -> C<T>) -> Strip<T> {
    let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
    Strip::from_fn(order, grid, |k, t| f(delta_angle(i, k, t)))
}

/// The colinear splitting `ω̂_i` of `δ_i^*` applied to one strip:
/// `ω̂_i(f)(z) = h₀(φ̂_j(z)) + φ̂_i(z) h₁(φ̂_j(z))`, `j ≠ i`.
#[derive(Clone, Debug)]
pub struct Omega<T: Real> {
    i: u8,
    even: IntervalFn<T>,
    odd: IntervalFn<T>,
}

impl<T: Real> Omega<T> {
    pub fn new(i: u8, f: &Strip<T>) -> Result<Self> {
        let want = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
        if !(i == 1 || i == 2) || f.order != want {
            return Err(Error::SizeMismatch(format!("ω̂_{i} needs a {want:?} strip, got {:?}", f.order)));
        }
        let (even, odd) = f.split();
        Ok(Omega { i, even, odd })
    }

    pub fn eval(&self, theta: T) -> C<T> {
        let x = phi_hat(3 - self.i, theta);
        self.even.eval(x) + self.odd.eval(x) * phi_hat(self.i, theta)
    }
}

/// `ω̂_i(f)` sampled on the `n`-point circle grid.
pub fn splitting_omega<T: Real>(i: u8, f: &Strip<T>, n: usize) -> Result<Vec<C<T>>> {
    let w = Omega::new(i, f)?;
    Ok(circle_grid::<T>(n).into_iter().map(|th| w.eval(th)).collect())
}

/// Oddness of `φ̂_i` on the `n`-point circle grid, the four composites of
/// `φ̂_i` with `δ_j`, and `Z₂`-equivariance of `δ_i`. The interval side
/// uses the `n/4 + 1` parameters whose images are circle-grid points.
pub fn circle_map_checks(n: usize) -> super::NumReport {
    use super::{Measure, NumReport};
    let mut rep = NumReport::new(format!("circle maps on the {n}-point grid"));
    let grid = circle_grid::<f64>(n);
    let mut odd = Measure::new("φ̂_i(-z) = -φ̂_i(z)");
    for i in [1u8, 2] {
        for k in 0..n {
            let d = phi_hat(i, grid[(k + n / 2) % n]) + phi_hat(i, grid[k]);
            odd.push(d.abs(), || format!("φ̂_{i} at 2π·{k}/{n}"));
        }
    }
    let steps = n / 4;
    let ts: Vec<f64> = (0..=steps).map(|j| -1.0 + 2.0 * j as f64 / steps as f64).collect();
    let mut comps = [
        Measure::new("φ̂₁∘δ₁ = u⊗1"),
        Measure::new("φ̂₂∘δ₂ = 1⊗u"),
        Measure::new("φ̂₁∘δ₂ = ι_I⊗1"),
        Measure::new("φ̂₂∘δ₁ = 1⊗ι_I"),
    ];
    let mut equi = Measure::new("δ_i(-k, -t) = -δ_i(k, t)");
    for k in Z2 {
        let kf = sign::<f64>(k);
        for &t in &ts {
            let a1 = delta_angle(1, k, t);
            let a2 = delta_angle(2, k, t);
            let at = || format!("k = {k}, t = {t}");
            comps[0].push((phi_hat(1, a1) - kf).abs(), at);
            comps[1].push((phi_hat(2, a2) - kf).abs(), at);
            comps[2].push((phi_hat(1, a2) - t).abs(), at);
            comps[3].push((phi_hat(2, a1) - t).abs(), at);
            for i in [1u8, 2] {
                equi.push((delta_map::<f64>(i, -k, -t) + delta_map::<f64>(i, k, t)).norm(), || format!("δ_{i} at k = {k}, t = {t}"));
            }
        }
    }
    rep.add(odd);
    for m in comps {
        rep.add(m);
    }
    rep.add(equi);
    rep
}

/// `δ_i*∘ω̂_i = id`, `δ_j*∘ω̂_i = ι_*⊗ι*` (and its mirror) and unitality
/// of `ω̂_i`, on random strips `1⊗h₀ + u⊗h₁` with cubic `h₀, h₁`.
pub fn splitting_checks<R: rand::Rng>(cfg: &super::NumConfig, rng: &mut R, samples: usize) -> Result<super::NumReport> {
    use super::{Measure, NumReport, C64};
    let grid = chebyshev_grid::<f64>(cfg.interval);
    let mut rep = NumReport::new(format!("splittings over {samples} strips"));
    let mut split = Measure::new("δ_i*∘ω̂_i = id");
    let mut cross = Measure::new("δ_j*∘ω̂_i = ι_*⊗ι*");
    let mut unit = Measure::new("ω̂_i(1) = 1");
    let thetas = circle_grid::<f64>(cfg.circle);
    for i in [1u8, 2] {
        let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
        let one = Omega::new(i, &Strip::from_fn(order, grid.clone(), |_, _| C64::new(1.0, 0.0)))?;
        for &th in &thetas {
            unit.push((one.eval(th) - 1.0).norm(), || format!("ω̂_{i} at θ = {th:.6}"));
        }
    }
    for n in 0..samples {
        let cubic = |rng: &mut R| -> [C64; 4] { std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))) };
        let (c0, c1) = (cubic(rng), cubic(rng));
        let ev = |c: &[C64; 4], t: f64| c[0] + c[1] * t + c[2] * t * t + c[3] * t * t * t;
        let f = |k: i8, t: f64| ev(&c0, t) + ev(&c1, t) * sign::<f64>(k);
        for i in [1u8, 2] {
            let order = if i == 1 { StripOrder::Z2I } else { StripOrder::IZ2 };
            let w = Omega::new(i, &Strip::from_fn(order, grid.clone(), f))?;
            let j = 3 - i;
            for k in Z2 {
                let kf = sign::<f64>(k);
                for &t in grid.iter() {
                    let d = (w.eval(delta_angle(i, k, t)) - f(k, t)).norm();
                    split.push(d, || format!("strip {n}, ω̂_{i} at k = {k}, t = {t}"));
                    let want = ev(&c0, kf) + ev(&c1, kf) * t;
                    let d = (w.eval(delta_angle(j, k, t)) - want).norm();
                    cross.push(d, || format!("strip {n}, δ_{j}*∘ω̂_{i} at k = {k}, t = {t}"));
                }
            }
        }
    }
    rep.add(split);
    rep.add(cross);
    rep.add(unit);
    Ok(rep)
}
