//! Exact symbolic engine for Hopf algebras and principal comodule algebras,
//! with a numerical verifier for the Toeplitz-pullback constructions.

pub mod builtin;
pub mod comodule;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod ncpoly;
pub mod numgeom;
pub mod present;
pub mod pullback;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{Field, RatFunc, Tower, Q, QI};

pub type QAlgebra = ncpoly::Algebra<Q>;
pub type GaussAlgebra = ncpoly::Algebra<QI>;
pub type QqAlgebra = ncpoly::Algebra<RatFunc>;

/// Closest candidate by edit distance, if within a third of its length.
pub fn nearest<'a>(name: &str, candidates: &[&'a str]) -> Option<&'a str> {
    fn dist(a: &str, b: &str) -> usize {
        let b: Vec<char> = b.chars().collect();
        let mut row: Vec<usize> = (0..=b.len()).collect();
        for (i, ca) in a.chars().enumerate() {
            let mut prev = row[0];
            row[0] = i + 1;
            for (j, &cb) in b.iter().enumerate() {
                let cur = row[j + 1];
                row[j + 1] = (prev + usize::from(ca != cb)).min(row[j] + 1).min(cur + 1);
                prev = cur;
            }
        }
        row[b.len()]
    }
    candidates
        .iter()
        .map(|c| (dist(name, c), *c))
        .min()
        .filter(|(d, c)| *d <= c.len().div_ceil(3).max(2))
        .map(|(_, c)| c)
}
