use std::collections::BTreeMap;

use super::algebra::Algebra;
use super::{split_sign, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Element of an n-fold tensor product of presented algebras, stored as a
/// map from word tuples to nonzero coefficients. Arity 0 is the ground field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<K> {
    arity: usize,
    terms: BTreeMap<Vec<Word>, K>,
}

impl<K: Field> Tensor<K> {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(c: K, arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(vec![Word::empty(); arity], c);
        t
    }

    pub fn unit(arity: usize) -> Self {
        Self::scalar(K::one(), arity)
    }

    pub fn from_poly(p: &NcPoly<K>) -> Self {
        let mut t = Self::zero(1);
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// `p_0 ⊗ p_1 ⊗ … ⊗ p_{n-1}`.
    pub fn pure(legs: &[&NcPoly<K>]) -> Self {
        let mut acc = Self::unit(0);
        for p in legs {
            acc = acc.outer(&Self::from_poly(p));
        }
        acc
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &K)> {
        self.terms.iter()
    }
    pub fn into_terms(self) -> BTreeMap<Vec<Word>, K> {
        self.terms
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: K) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(e) => {
                let s = e.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn as_scalar(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                if k.iter().all(|w| w.is_empty()) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The single leg of an arity-1 tensor (or the scalar of arity 0).
    pub fn to_poly(&self) -> NcPoly<K> {
        assert!(self.arity <= 1);
        NcPoly::from_terms(self.terms.iter().map(|(k, c)| (k.first().cloned().unwrap_or_default(), c.clone())))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Tensor { arity: self.arity, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &K) -> Self {
        let mut r = Self::zero(self.arity);
        for (k, c) in &self.terms {
            r.add_term(k.clone(), c.clone() * s.clone());
        }
        r
    }

    /// Legwise concatenation product (free; call [`Tensor::normalize`]).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut r = Self::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let k = a.iter().zip(b).map(|(u, v)| u.concat(v)).collect();
                r.add_term(k, x.clone() * y.clone());
            }
        }
        r
    }

    /// Outer product: legs of `self` followed by legs of `o`.
    pub fn outer(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.arity + o.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut k = a.clone();
                k.extend(b.iter().cloned());
                r.add_term(k, x.clone() * y.clone());
            }
        }
        r
    }

    /// Reduce every leg to normal form in its algebra.
    pub fn normalize(&self, algs: &[&Algebra<K>]) -> Result<Self> {
        if algs.len() != self.arity {
            return Err(Error::SizeMismatch(format!("{} algebras for a {}-fold tensor", algs.len(), self.arity)));
        }
        let mut cache: Vec<BTreeMap<Word, NcPoly<K>>> = vec![BTreeMap::new(); self.arity];
        let mut out = Self::zero(self.arity);
        for (key, c) in &self.terms {
            let mut partial: Vec<(Vec<Word>, K)> = vec![(Vec::with_capacity(self.arity), c.clone())];
            for (i, w) in key.iter().enumerate() {
                let nf = match cache[i].get(w) {
                    Some(p) => p.clone(),
                    None => {
                        let p = algs[i].normal_form(&NcPoly::word(w.clone()))?;
                        cache[i].insert(w.clone(), p.clone());
                        p
                    }
                };
                let mut next = Vec::with_capacity(partial.len() * nf.len());
                for (k, x) in &partial {
                    for (v, y) in nf.terms() {
                        let mut kk = k.clone();
                        kk.push(v.clone());
                        next.push((kk, x.clone() * y.clone()));
                    }
                }
                partial = next;
            }
            for (k, x) in partial {
                out.add_term(k, x);
            }
        }
        Ok(out)
    }

    /// Apply a per-leg linear map given on words; leg `i` of arity one is
    /// replaced by the tensor `f(i, word)`, whose arity may be anything.
    pub fn expand(&self, mut f: impl FnMut(usize, &Word) -> Result<Tensor<K>>) -> Result<Self> {
        let mut out: Option<Self> = None;
        for (key, c) in &self.terms {
            let mut acc = Self::scalar(c.clone(), 0);
            for (i, w) in key.iter().enumerate() {
                acc = acc.outer(&f(i, w)?);
            }
            match &mut out {
                None => out = Some(acc),
                Some(o) => *o = o.add(&acc),
            }
        }
        Ok(out.unwrap_or_else(|| {
            // arity of an empty image is found by mapping unit words
            let ar = (0..self.arity).map(|i| f(i, &Word::empty()).map(|t| t.arity()).unwrap_or(1)).sum();
            Self::zero(ar)
        }))
    }

    /// Multiply adjacent legs together: `groups` gives how many consecutive
    /// legs collapse into each output leg.
    pub fn merge(&self, groups: &[usize]) -> Self {
        assert_eq!(groups.iter().sum::<usize>(), self.arity, "merge groups must cover every leg");
        let mut r = Self::zero(groups.len());
        for (key, c) in &self.terms {
            let mut k = Vec::with_capacity(groups.len());
            let mut i = 0;
            for &g in groups {
                let mut w = Word::empty();
                for v in &key[i..i + g] {
                    w = w.concat(v);
                }
                k.push(w);
                i += g;
            }
            r.add_term(k, c.clone());
        }
        r
    }

    /// Reorder legs: output leg `j` is input leg `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut r = Self::zero(self.arity);
        for (key, c) in &self.terms {
            r.add_term(perm.iter().map(|&p| key[p].clone()).collect(), c.clone());
        }
        r
    }

    pub fn display(&self, names: &[&[String]]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c.to_expr());
            if i > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let legs: Vec<String> = k
                .iter()
                .enumerate()
                .map(|(j, w)| {
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.0.iter().map(|&g| names[j][g as usize].as_str()).collect::<Vec<_>>().join("*")
                    }
                })
                .collect();
            if mag == "1" {
                out.push_str(&legs.join(" # "));
            } else {
                out.push_str(&format!("{}*{}", mag, legs.join(" # ")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn outer_and_merge() {
        let x = NcPoly::<Q>::gen(0);
        let y = NcPoly::<Q>::gen(1);
        let t = Tensor::pure(&[&x, &y]);
        assert_eq!(t.arity(), 2);
        let m = t.merge(&[2]);
        assert_eq!(m.to_poly(), x.free_mul(&y));
        let f = t.permute(&[1, 0]);
        assert_eq!(f, Tensor::pure(&[&y, &x]));
    }
}
