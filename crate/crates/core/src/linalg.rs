//! Exact sparse linear algebra over a [`Field`]: incremental echelon forms
//! used for rank, span membership and coefficient recovery.

use std::collections::BTreeMap;

use crate::ncpoly::{NcPoly, Word};
use crate::scalar::Field;

pub type SparseVec<Key, K> = BTreeMap<Key, K>;

struct Row<Key, K> {
    vec: SparseVec<Key, K>,
    combo: Vec<K>,
}

/// Span of pushed vectors, kept in echelon form (each row's pivot is its
/// largest key with coefficient one).
pub struct Span<Key, K> {
    rows: BTreeMap<Key, Row<Key, K>>,
    inputs: usize,
}

impl<Key: Ord + Clone, K: Field> Default for Span<Key, K> {
    fn default() -> Self {
        Self::new()
    }
}

fn axpy<Key: Ord + Clone, K: Field>(y: &mut SparseVec<Key, K>, a: &K, x: &SparseVec<Key, K>) {
    for (k, v) in x {
        let add = a.clone() * v.clone();
        match y.get_mut(k) {
            Some(e) => {
                let s = e.clone() + add;
                if s.is_zero() {
                    y.remove(k);
                } else {
                    *e = s;
                }
            }
            None => {
                if !add.is_zero() {
                    y.insert(k.clone(), add);
                }
            }
        }
    }
}

fn combo_axpy<K: Field>(y: &mut Vec<K>, a: &K, x: &[K]) {
    if y.len() < x.len() {
        y.resize(x.len(), K::zero());
    }
    for (i, v) in x.iter().enumerate() {
        y[i] = y[i].clone() + a.clone() * v.clone();
    }
}

impl<Key: Ord + Clone, K: Field> Span<Key, K> {
    pub fn new() -> Self {
        Span { rows: BTreeMap::new(), inputs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce against the current rows; returns the residual and the
    /// combination of inputs that was subtracted.
    fn reduce_full(&self, v: &SparseVec<Key, K>) -> (SparseVec<Key, K>, Vec<K>) {
        let mut r = v.clone();
        let mut combo = vec![K::zero(); self.inputs];
        loop {
            let piv = r.keys().rev().find(|k| self.rows.contains_key(*k)).cloned();
            let Some(k) = piv else { break };
            let row = &self.rows[&k];
            let c = r[&k].clone();
            axpy(&mut r, &(-c.clone()), &row.vec);
            combo_axpy(&mut combo, &c, &row.combo);
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &SparseVec<Key, K>) -> SparseVec<Key, K> {
        self.reduce_full(v).0
    }

    pub fn contains(&self, v: &SparseVec<Key, K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Push a vector; returns whether it was independent of the span.
    pub fn push(&mut self, v: SparseVec<Key, K>) -> bool {
        let idx = self.inputs;
        self.inputs += 1;
        let (mut r, combo) = self.reduce_full(&v);
        let mut own = vec![K::zero(); self.inputs];
        combo_axpy(&mut own, &(-K::one()), &combo);
        own[idx] = K::one();
        let Some((k, lead)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = K::one() / lead;
        for c in r.values_mut() {
            *c = c.clone() * inv.clone();
        }
        let own: Vec<K> = own.into_iter().map(|c| c * inv.clone()).collect();
        self.rows.insert(k, Row { vec: std::mem::take(&mut r), combo: own });
        true
    }

    /// Coefficients `x` with `Σ x_i · input_i = v`, if `v` lies in the span.
    pub fn express(&self, v: &SparseVec<Key, K>) -> Option<Vec<K>> {
        let (r, mut combo) = self.reduce_full(v);
        if !r.is_empty() {
            return None;
        }
        combo.resize(self.inputs, K::zero());
        Some(combo)
    }
}

/// Null space of a family of vectors: coefficient vectors `x` with
/// `Σ x_i · v_i = 0`, one per dependent input.
pub fn kernel<Key: Ord + Clone, K: Field>(vectors: &[SparseVec<Key, K>]) -> Vec<Vec<K>> {
    let mut span = Span::new();
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(x) = span.express(v) {
            let mut k: Vec<K> = x.into_iter().map(|c| -c).collect();
            k.resize(vectors.len(), K::zero());
            k[i] = K::one();
            out.push(k);
        }
        span.push(v.clone());
    }
    out
}

/// Basis of the intersection of the spans of `a` and `b`, each vector
/// scaled to have coefficient one at its largest key.
pub fn intersection<Key: Ord + Clone, K: Field>(a: &[SparseVec<Key, K>], b: &[SparseVec<Key, K>]) -> Vec<SparseVec<Key, K>> {
    let mut joint: Vec<SparseVec<Key, K>> = a.to_vec();
    joint.extend(b.iter().cloned());
    let mut out: Vec<SparseVec<Key, K>> = Vec::new();
    let mut seen = Span::new();
    for x in kernel(&joint) {
        let mut v = SparseVec::new();
        for (i, c) in x.iter().take(a.len()).enumerate() {
            axpy(&mut v, c, &a[i]);
        }
        if let Some(lead) = v.values().next_back().cloned() {
            let inv = K::one() / lead;
            for c in v.values_mut() {
                *c = c.clone() * inv.clone();
            }
        }
        if !v.is_empty() && seen.push(v.clone()) {
            out.push(v);
        }
    }
    out
}

pub fn poly_vec<K: Field>(p: &NcPoly<K>) -> SparseVec<Word, K> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Rank of a family of polynomials as vectors over words.
pub fn rank_of_polys<K: Field>(polys: &[NcPoly<K>]) -> usize {
    let mut s = Span::new();
    for p in polys {
        s.push(poly_vec(p));
    }
    s.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32, Q> {
        entries.iter().map(|&(k, c)| (k, Q::from_integer(c.into()))).collect()
    }

    #[test]
    fn rank_and_expression() {
        let mut s = Span::new();
        assert!(s.push(v(&[(0, 1), (1, 1)])));
        assert!(s.push(v(&[(1, 1), (2, 1)])));
        assert!(!s.push(v(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(s.rank(), 2);
        let x = s.express(&v(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        assert_eq!(x[0], Q::from_integer(2.into()));
        assert_eq!(x[1], Q::from_integer(1.into()));
        assert!(s.express(&v(&[(0, 1)])).is_none());
    }

    #[test]
    fn kernel_and_intersection() {
        let vs = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)])];
        assert_eq!(kernel(&vs).len(), 1);
        let a = vec![v(&[(0, 1)]), v(&[(1, 1)])];
        let b = vec![v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 1)])];
        let i = intersection(&a, &b);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], v(&[(0, 1), (1, 1)]));
    }
}
