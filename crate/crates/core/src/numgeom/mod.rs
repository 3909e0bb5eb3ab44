//! Numerical side of the Toeplitz-square constructions: circle and interval
//! grids, the piecewise-linear circle maps and their splittings, Toeplitz
//! polynomials with exact symbols, membership in the quantum projective
//! plane, the sphere and the disc, determinant winding probes, and
//! Monte-Carlo identities on the three-sphere.

mod circle;
mod peter_weyl;
mod spaces;
mod toeplitz;
mod winding;

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use circle::{
    chebyshev_grid, circle_grid, circle_map_checks, delta_angle, delta_map, phi_hat, phi_hat_at, pullback_delta, sign, splitting_checks, splitting_omega, IntervalFn, Omega,
    Strip, StripOrder, Z2,
};
pub use peter_weyl::{cleaving, omega_s3, peter_weyl_checks, peter_weyl_checks_with, random_s3, section, PwMutation, S3Point};
pub use spaces::{
    corner_residual, disc_membership, disc_parity, face_atlas, gauge, gauge_conjugation_check, gauge_conjugation_check_with, cocycle_residual,
    cocycle_residual_with, kernel_image_residual, kernel_image_residual_with, surjectivity_conditions, surjectivity_conditions_with, phi, phi_tilde,
    pi_n, pi_n_inverse, quantum_space_membership, random_disc_element, random_sphere_element, round_trip_check,
    round_trip_check_with, rp2_measure, sigma_circ, sigma_tensor, sphere_membership, sphere_membership_with, sphere_z2_action, Disc,
    FaceAtlas, SurjectivityMutation, Membership, PiMutation, Space, SphereElem, Triple, TupleRef,
};
pub use toeplitz::{symbol_product_check, toeplitz_spot_check, FourierPoly, ToeplitzPoly};
pub use winding::{det_winding, equivariant_parity_probe, winding_number, LoopKind, MatrixLoop, ProbeReport};

/// Real scalars for the numerical routines.
pub trait Real: Float + FloatConst + NumAssign + Debug + Send + Sync + 'static {
    fn of(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 is representable")
    }
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T: Float + FloatConst + NumAssign + Debug + Send + Sync + 'static> Real for T {}

pub type C<T> = Complex<T>;
pub type C64 = Complex<f64>;

pub const DEFAULT_CIRCLE: usize = 720;
pub const DEFAULT_INTERVAL: usize = 257;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_TRUNC: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TRIALS: usize = 1000;

/// Grid sizes, tolerance, truncation, seed and trial count shared by the
/// numerical checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumConfig {
    pub circle: usize,
    pub interval: usize,
    pub tol: f64,
    pub trunc: usize,
    pub seed: u64,
    pub trials: usize,
}

impl Default for NumConfig {
    fn default() -> Self {
        NumConfig {
            circle: DEFAULT_CIRCLE,
            interval: DEFAULT_INTERVAL,
            tol: DEFAULT_TOL,
            trunc: DEFAULT_TRUNC,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
        }
    }
}

impl NumConfig {
    pub fn validate(&self) -> Result<()> {
        if self.circle < 8 || !self.circle.is_multiple_of(8) {
            return Err(Error::Config(format!("circle grid {} must be a positive multiple of 8", self.circle)));
        }
        if self.interval < 3 || self.interval.is_multiple_of(2) {
            return Err(Error::Config(format!("interval grid {} must be odd and at least 3", self.interval)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tolerance {} must be positive", self.tol)));
        }
        if self.trunc < 8 {
            return Err(Error::Config(format!("truncation {} must be at least 8", self.trunc)));
        }
        Ok(())
    }

    /// Rows and columns ignored at the truncation edge.
    pub fn edge_mask(&self) -> usize {
        self.trunc.div_ceil(8)
    }

    /// Generator for the check `id`, derived from the master seed.
    pub fn rng(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, id))
    }
}

/// FNV-1a of `id` mixed into `seed`; stable across builds and platforms.
pub fn derive_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Largest residual of one identity over its samples, with the sample at
/// which it occurred.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    pub identity: String,
    pub max_residual: f64,
    pub at: String,
    pub samples: usize,
}

impl Measure {
    pub fn new(identity: impl Into<String>) -> Self {
        Measure { identity: identity.into(), max_residual: 0.0, at: String::new(), samples: 0 }
    }

    /// Record one residual; NaN counts as infinitely bad.
    pub fn push(&mut self, r: f64, at: impl FnOnce() -> String) {
        self.samples += 1;
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if self.samples == 1 || r > self.max_residual {
            self.max_residual = self.max_residual.max(r);
            self.at = at();
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

/// Measures of a numerical check plus named counters and notes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NumReport {
    pub name: String,
    pub measures: Vec<Measure>,
    pub counts: Vec<(String, usize)>,
    pub notes: Vec<String>,
}

impl NumReport {
    pub fn new(name: impl Into<String>) -> Self {
        NumReport { name: name.into(), ..Default::default() }
    }

    pub fn add(&mut self, m: Measure) {
        self.measures.push(m);
    }

    pub fn count(&mut self, key: &str, n: usize) {
        self.counts.push((key.into(), n));
    }

    pub fn get_count(&self, key: &str) -> Option<usize> {
        self.counts.iter().find(|(k, _)| k == key).map(|(_, n)| *n)
    }

    pub fn measure(&self, identity: &str) -> Option<&Measure> {
        self.measures.iter().find(|m| m.identity == identity)
    }

    pub fn max_residual(&self) -> f64 {
        self.measures.iter().map(|m| m.max_residual).fold(0.0, f64::max)
    }

    /// The measure with the largest residual.
    pub fn worst(&self) -> Option<&Measure> {
        self.measures.iter().max_by(|a, b| a.max_residual.total_cmp(&b.max_residual))
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.measures.iter().all(|m| m.passes(tol))
    }

    pub fn absorb(&mut self, o: NumReport) {
        self.measures.extend(o.measures);
        self.counts.extend(o.counts);
        self.notes.extend(o.notes);
    }
}

#[cfg(test)]
mod tests;
