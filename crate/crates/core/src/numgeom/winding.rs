use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::toeplitz::FourierPoly;
use super::{circle_grid, C64};
use crate::error::{Error, Result};

/// Samples with `|z|` below this are treated as zeros of the loop.
pub const SINGULAR_TOL: f64 = 1e-9;
/// Largest phase step the winding count accepts.
pub const WINDING_GUARD: f64 = FRAC_PI_2;
/// Rejection threshold on `min |det|` for random probe loops.
pub const PROBE_MIN_DET: f64 = 1e-3;

/// Winding number of a closed loop sampled at equally spaced angles.
pub fn winding_number(values: &[C64]) -> Result<i64> {
    let n = values.len();
    if n == 0 {
        return Err(Error::SizeMismatch("empty loop".into()));
    }
    if let Some(index) = values.iter().position(|z| !(z.norm() >= SINGULAR_TOL)) {
        return Err(Error::Singular { index });
    }
    let mut total = 0.0;
    for k in 0..n {
        let step = (values[(k + 1) % n] / values[k]).arg();
        if step.abs() >= WINDING_GUARD {
            return Err(Error::Density { index: k, jump: format!("{step:.3}") });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Parity pattern of the random entries of a probe loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    /// First row odd, other rows even: `L(-z) = diag(-1, 1, …) L(z)`.
    Equivariant,
    /// Every entry even.
    AllEven,
    /// First row even, other rows unconstrained.
    EvenFirstRow,
}

/// Square matrix of Laurent polynomials on the circle, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLoop {
    pub size: usize,
    pub entries: Vec<FourierPoly<f64>>,
}

impl MatrixLoop {
    pub fn scalar(f: FourierPoly<f64>) -> Self {
        MatrixLoop { size: 1, entries: vec![f] }
    }

    pub fn eval(&self, theta: f64) -> DMatrix<C64> {
        DMatrix::from_fn(self.size, self.size, |i, j| self.entries[i * self.size + j].eval(theta))
    }

    pub fn det_samples(&self, n: usize) -> Vec<C64> {
        circle_grid::<f64>(n).into_iter().map(|th| self.eval(th).determinant()).collect()
    }

    /// Random entries of Fourier degree at most three; parities imposed by
    /// zeroing the wrong-parity coefficients.
    pub fn random<R: Rng>(rng: &mut R, size: usize, kind: LoopKind) -> Self {
        let entries = (0..size * size)
            .map(|idx| {
                let first = idx < size;
                let parity = match kind {
                    LoopKind::Equivariant => Some(if first { 1 } else { 0 }),
                    LoopKind::AllEven => Some(0),
                    LoopKind::EvenFirstRow => first.then_some(0),
                };
                let coeffs: BTreeMap<i64, C64> = (-3i64..=3)
                    .filter(|k| parity.is_none_or(|p| k.rem_euclid(2) == p))
                    .map(|k| (k, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
                    .collect();
                FourierPoly { coeffs }
            })
            .collect();
        MatrixLoop { size, entries }
    }
}

/// Winding number of `det L` on the `n`-point circle grid.
pub fn det_winding(l: &MatrixLoop, n: usize) -> Result<i64> {
    winding_number(&l.det_samples(n))
}

/// Windings of random loops of one kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub kind: LoopKind,
    pub size: usize,
    pub trials: usize,
    pub odd: usize,
    pub even: usize,
    pub rejected: usize,
    pub windings: Vec<i64>,
}

impl ProbeReport {
    pub fn all_odd(&self) -> bool {
        self.odd == self.trials
    }

    pub fn both_parities(&self) -> bool {
        self.odd > 0 && self.even > 0
    }
}

/// Draw `trials` loops of the given kind, rejecting those with
/// `min |det| ≤ 10⁻³` or too coarse a sampling, and count winding parities.
pub fn equivariant_parity_probe<R: Rng>(rng: &mut R, size: usize, trials: usize, kind: LoopKind, circle: usize) -> ProbeReport {
    let mut rep = ProbeReport { kind, size, trials, odd: 0, even: 0, rejected: 0, windings: Vec::with_capacity(trials) };
    while rep.windings.len() < trials {
        let l = MatrixLoop::random(rng, size, kind);
        let dets = l.det_samples(circle);
        let min = dets.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        let w = if min > PROBE_MIN_DET { winding_number(&dets).ok() } else { None };
        match w {
            Some(w) => {
                if w.rem_euclid(2) == 1 {
                    rep.odd += 1;
                } else {
                    rep.even += 1;
                }
                rep.windings.push(w);
            }
            None => rep.rejected += 1,
        }
    }
    rep
}
