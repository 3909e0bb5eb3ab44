//! Noncommutative polynomials over an exact field, oriented rewriting and
//! presented algebras.
//!
//! Generators are stored by precedence rank, so the derived order on
//! [`Word`] (length first, then lexicographic on ranks) is exactly the
//! degree-lexicographic monomial order of the presentation.

mod algebra;
mod parse;
mod rewrite;
mod tensor;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

pub use algebra::{reindex, reindex_word, wider, Algebra, Alphabet, ConfluenceReport, Conflict};
pub use parse::{parse_expr, Expr};
pub use rewrite::{RewriteSystem, Rule, DEFAULT_SIZE_LIMIT};
pub use tensor::Tensor;

pub type Gen = u16;

/// A word in generator ranks; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }
    pub fn single(g: Gen) -> Self {
        Word(vec![g])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
    pub fn find(&self, pat: &[Gen]) -> Option<usize> {
        if pat.is_empty() || pat.len() > self.0.len() {
            return None;
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finite map from words to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<K> {
    terms: BTreeMap<Word, K>,
}

impl<K: Field> Default for NcPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> NcPoly<K> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(K::one())
    }

    pub fn scalar(c: K) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(Word::single(g), K::one())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, K::one())
    }

    pub fn monomial(w: Word, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, K)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let s = e.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &K)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, K> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> K {
        self.terms.get(w).cloned().unwrap_or_else(K::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar value when the polynomial is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    /// Leading word and coefficient under the monomial order.
    pub fn leading(&self) -> Option<(&Word, &K)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * k.clone())).collect() }
    }

    /// Concatenation product in the free algebra (no reduction).
    pub fn free_mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.concat(b), x.clone() * y.clone());
            }
        }
        r
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> NcPoly<L> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Render with generator names; `names[g]` is the name of rank `g`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let word: Vec<&str> = w.0.iter().map(|&g| names[g as usize].as_str()).collect();
            let (neg, mag) = split_sign(c.to_expr());
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let unit = mag == "1";
            if word.is_empty() {
                out.push_str(&mag);
            } else if unit {
                out.push_str(&word.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, word.join("*")));
            }
        }
        out
    }
}

/// Split a rendered coefficient into sign and magnitude when the sign can
/// be pulled out as a binary minus.
pub(crate) fn split_sign(cs: String) -> (bool, String) {
    if let Some(r) = cs.strip_prefix("(-").and_then(|r| r.strip_suffix(')')) {
        if !r.contains(' ') && !r.contains('(') {
            return (true, r.to_string());
        }
    }
    match cs.strip_prefix('-') {
        Some(r) if !r.contains(' ') => (true, r.to_string()),
        _ => (false, cs),
    }
}

impl<K: Field> fmt::Display for NcPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.terms.keys().flat_map(|w| w.0.iter()).copied().max().unwrap_or(0))
            .map(|g| format!("g{g}"))
            .collect();
        write!(f, "{}", self.display(&names))
    }
}

impl<K: Field> NcPoly<K> {
    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn deglex_order() {
        let a = Word(vec![0, 1]);
        let b = Word(vec![1, 0]);
        let c = Word(vec![0]);
        assert!(a < b);
        assert!(c < a);
        assert!(Word::empty() < c);
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let mut p: NcPoly<Q> = NcPoly::gen(0);
        p.add_term(Word::single(0), Q::from_i64(-1));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }
}
