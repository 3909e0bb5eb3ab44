use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::Rng;

use super::{Measure, NumConfig, NumReport, Real, C, C64};
use crate::error::{Error, Result};
use crate::ncpoly::{Algebra, NcPoly};
use crate::scalar::Field;

/// Laurent polynomial `Σ c_n zⁿ` on the circle.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierPoly<T: Real> {
    pub coeffs: BTreeMap<i64, C<T>>,
}

impl<T: Real> FourierPoly<T> {
    pub fn zero() -> Self {
        FourierPoly { coeffs: BTreeMap::new() }
    }

    pub fn eval(&self, theta: T) -> C<T> {
        self.coeffs.iter().fold(C::zero(), |acc, (&n, c)| acc + c * C::from_polar(T::one(), theta * T::of(n as f64)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &o.coeffs {
                *out.entry(a + b).or_insert_with(C::zero) += x * y;
            }
        }
        FourierPoly { coeffs: out }
    }

    /// Largest coefficient difference.
    pub fn dist(&self, o: &Self) -> T {
        let keys = self.coeffs.keys().chain(o.coeffs.keys());
        keys.map(|k| (self.coeffs.get(k).copied().unwrap_or_else(C::zero) - o.coeffs.get(k).copied().unwrap_or_else(C::zero)).norm())
            .fold(T::zero(), T::max)
    }
}

/// Element of the polynomial Toeplitz algebra in the normal basis
/// `s^a (s*)^b`, with `s* s = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzPoly<T: Real> {
    pub terms: BTreeMap<(u32, u32), C<T>>,
}

impl<T: Real> ToeplitzPoly<T> {
    pub fn zero() -> Self {
        ToeplitzPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(a: u32, b: u32, c: C<T>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((a, b), c);
        ToeplitzPoly { terms }
    }

    pub fn scalar(c: C<T>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::scalar(C::new(T::one(), T::zero()))
    }

    pub fn s() -> Self {
        Self::monomial(1, 0, C::new(T::one(), T::zero()))
    }

    pub fn s_star() -> Self {
        Self::monomial(0, 1, C::new(T::one(), T::zero()))
    }

    /// `s^a (1 - s s*) (s*)^b`, a rank-one compact element.
    pub fn compact(a: u32, b: u32) -> Self {
        let one = C::new(T::one(), T::zero());
        let mut terms = BTreeMap::new();
        terms.insert((a, b), one);
        terms.insert((a + 1, b + 1), -one);
        ToeplitzPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    fn add_term(&mut self, k: (u32, u32), c: C<T>) {
        *self.terms.entry(k).or_insert_with(C::zero) += c;
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&k, &c) in &o.terms {
            r.add_term(k, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(C::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, c: C<T>) -> Self {
        ToeplitzPoly { terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                let k = if b <= c { (a + c - b, d) } else { (a, b - c + d) };
                r.add_term(k, x * y);
            }
        }
        r
    }

    pub fn star(&self) -> Self {
        ToeplitzPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.conj())).collect() }
    }

    /// The `Z₂`-action `s ↦ -s`.
    pub fn alpha(&self) -> Self {
        ToeplitzPoly {
            terms: self.terms.iter().map(|(&(a, b), &c)| ((a, b), if (a + b) % 2 == 1 { -c } else { c })).collect(),
        }
    }

    /// The symbol `s ↦ z`, computed from the polynomial.
    pub fn symbol(&self) -> FourierPoly<T> {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            *out.entry(i64::from(a) - i64::from(b)).or_insert_with(C::zero) += c;
        }
        FourierPoly { coeffs: out }
    }

    /// Largest coefficient difference.
    pub fn dist(&self, o: &Self) -> T {
        self.sub(o).terms.values().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// Uniformly random coefficients in the unit square on every normal
    /// word of degree at most `d`.
    pub fn random<R: Rng>(rng: &mut R, d: u32) -> Self {
        let mut terms = BTreeMap::new();
        for a in 0..=d {
            for b in 0..=d - a {
                terms.insert((a, b), C::new(T::of(rng.gen_range(-1.0..1.0)), T::of(rng.gen_range(-1.0..1.0))));
            }
        }
        ToeplitzPoly { terms }
    }

    /// Read an element of an algebra on `s`, `s_star` (and scalars).
    pub fn from_nc<K: Field>(alg: &Algebra<K>, p: &NcPoly<K>) -> Result<Self> {
        let s = alg.rank("s").ok();
        let st = alg.rank("s_star").ok();
        let mut out = Self::zero();
        for (w, c) in p.terms() {
            let c = c.to_c64().ok_or_else(|| Error::Tower(format!("coefficient {c} is not a complex number")))?;
            let mut m = Self::scalar(C::new(T::of(c.re), T::of(c.im)));
            for &g in &w.0 {
                let f = if Some(g) == s {
                    Self::s()
                } else if Some(g) == st {
                    Self::s_star()
                } else {
                    return Err(Error::UnknownGenerator(format!("{} is not a Toeplitz generator", alg.alphabet().name(g))));
                };
                m = m.mul(&f);
            }
            out = out.add(&m);
        }
        Ok(out)
    }
}

impl ToeplitzPoly<f64> {
    /// Compression of the operator to the first `n` basis vectors, with `s`
    /// the forward shift.
    pub fn matrix(&self, n: usize) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(n, n, C64::zero());
        for (&(a, b), &c) in &self.terms {
            let (a, b) = (a as usize, b as usize);
            for k in b..n {
                let j = k - b + a;
                if j < n {
                    m[(j, k)] += c;
                }
            }
        }
        m
    }
}

/// `σ(p r) = σ(p) σ(r)` on random pairs of degree at most three.
pub fn symbol_product_check<R: Rng>(rng: &mut R, samples: usize) -> Measure {
    let mut m = Measure::new("symbol is multiplicative");
    for n in 0..samples {
        let p = ToeplitzPoly::<f64>::random(rng, 3);
        let r = ToeplitzPoly::<f64>::random(rng, 3);
        let d = p.mul(&r).symbol().dist(&p.symbol().mul(&r.symbol()));
        m.push(d, || format!("pair {n}"));
    }
    m
}

/// Spot numerics on the truncated matrices: products agree away from the
/// truncation edge, and the band below the top corner reproduces the symbol
/// coefficients.
pub fn toeplitz_spot_check<R: Rng>(cfg: &NumConfig, rng: &mut R, samples: usize) -> NumReport {
    let n = cfg.trunc;
    let keep = n - cfg.edge_mask();
    let mut rep = NumReport::new(format!("Toeplitz truncation n={n}"));
    let mut prod = Measure::new("truncated product");
    let mut band = Measure::new("band matches symbol");
    for t in 0..samples {
        let p = ToeplitzPoly::<f64>::random(rng, 3);
        let r = ToeplitzPoly::<f64>::random(rng, 3);
        let diff = p.matrix(n) * r.matrix(n) - p.mul(&r).matrix(n);
        let mut worst = (0.0, 0, 0);
        for j in 0..keep {
            for k in 0..keep {
                let v = diff[(j, k)].norm();
                if v > worst.0 {
                    worst = (v, j, k);
                }
            }
        }
        prod.push(worst.0, || format!("sample {t} entry ({}, {})", worst.1, worst.2));
        let mp = p.matrix(n);
        let sym = p.symbol();
        let d = p.degree() as usize;
        let mut bw = (0.0, 0, 0);
        for k in d..keep {
            for j in 0..keep {
                let want = sym.coeffs.get(&(j as i64 - k as i64)).copied().unwrap_or_else(C64::zero);
                let v = (mp[(j, k)] - want).norm();
                if v > bw.0 {
                    bw = (v, j, k);
                }
            }
        }
        band.push(bw.0, || format!("sample {t} entry ({}, {})", bw.1, bw.2));
    }
    rep.add(prod);
    rep.add(band);
    rep
}
