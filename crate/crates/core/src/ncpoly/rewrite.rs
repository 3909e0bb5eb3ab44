use std::collections::BTreeMap;


use super::{Gen, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::Field;

pub const DEFAULT_SIZE_LIMIT: usize = 100_000;

/// Oriented rule `lhs -> rhs` with every word of `rhs` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<K> {
    pub lhs: Word,
    pub rhs: NcPoly<K>,
}

impl<K: Field> Rule<K> {
    /// The rule as the relation `lhs - rhs`.
    pub fn relation(&self) -> NcPoly<K> {
        NcPoly::word(self.lhs.clone()).sub(&self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<K> {
    rules: Vec<Rule<K>>,
    by_first: Vec<Vec<usize>>,
    pub size_limit: usize,
}

impl<K: Field> PartialEq for RewriteSystem<K> {
    fn eq(&self, o: &Self) -> bool {
        self.rules == o.rules
    }
}

impl<K: Field> RewriteSystem<K> {
    /// Build from explicitly oriented rules, rejecting any rule whose right
    /// side is not smaller than its leading word.
    pub fn from_rules(ngens: usize, rules: Vec<Rule<K>>, names: &[String]) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for r in &rules {
            if r.lhs.is_empty() {
                return Err(Error::Inconsistent(r.rhs.display(names)));
            }
            if let Some((top, _)) = r.rhs.leading() {
                if *top >= r.lhs {
                    return Err(Error::OrderViolation {
                        lhs: NcPoly::<K>::word(r.lhs.clone()).display(names),
                        rhs: r.rhs.display(names),
                    });
                }
            }
            if seen.insert(r.lhs.clone(), ()).is_some() {
                return Err(Error::DuplicateLeading(NcPoly::<K>::word(r.lhs.clone()).display(names)));
            }
        }
        let mut by_first = vec![Vec::new(); ngens];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs.0[0] as usize].push(i);
        }
        for v in &mut by_first {
            v.sort_by_key(|&i| rules[i].lhs.len());
        }
        Ok(RewriteSystem { rules, by_first, size_limit: DEFAULT_SIZE_LIMIT })
    }

    pub fn rules(&self) -> &[Rule<K>] {
        &self.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// Leftmost position with a matching rule; among rules matching there,
    /// the shortest (innermost) one.
    pub fn find_match(&self, w: &[Gen]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &ri in &self.by_first[w[pos] as usize] {
                let l = &self.rules[ri].lhs.0;
                if w.len() - pos >= l.len() && &w[pos..pos + l.len()] == l.as_slice() {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, w: &[Gen]) -> bool {
        self.find_match(w).is_none()
    }

    /// Apply rule `ri` at `pos` to the word `w` with coefficient `c`.
    pub fn apply_at(&self, w: &Word, c: &K, pos: usize, ri: usize) -> NcPoly<K> {
        let r = &self.rules[ri];
        let pre = &w.0[..pos];
        let post = &w.0[pos + r.lhs.len()..];
        let mut out = NcPoly::zero();
        for (v, d) in r.rhs.terms() {
            let mut nw = Vec::with_capacity(pre.len() + v.len() + post.len());
            nw.extend_from_slice(pre);
            nw.extend_from_slice(&v.0);
            nw.extend_from_slice(post);
            out.add_term(Word(nw), c.clone() * d.clone());
        }
        out
    }

    /// Exhaustive leftmost-innermost reduction. Terms are processed from the
    /// largest word down; every rewrite produces strictly smaller words, so
    /// each word is visited at most once.
    pub fn normal_form(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        let mut pending: BTreeMap<Word, K> = BTreeMap::new();
        for (w, c) in p.terms() {
            pending.insert(w.clone(), c.clone());
        }
        let mut done: Vec<(Word, K)> = Vec::new();
        while let Some((w, c)) = pending.pop_last() {
            match self.find_match(&w.0) {
                None => done.push((w, c)),
                Some((pos, ri)) => {
                    let r = &self.rules[ri];
                    let pre = &w.0[..pos];
                    let post = &w.0[pos + r.lhs.len()..];
                    for (v, d) in r.rhs.terms() {
                        let mut nw = Vec::with_capacity(pre.len() + v.len() + post.len());
                        nw.extend_from_slice(pre);
                        nw.extend_from_slice(&v.0);
                        nw.extend_from_slice(post);
                        let k = Word(nw);
                        let add = c.clone() * d.clone();
                        match pending.get_mut(&k) {
                            Some(e) => {
                                let s = e.clone() + add;
                                if s.is_zero() {
                                    pending.remove(&k);
                                } else {
                                    *e = s;
                                }
                            }
                            None => {
                                pending.insert(k, add);
                            }
                        }
                    }
                    if pending.len() + done.len() > self.size_limit {
                        return Err(Error::SizeLimit { terms: pending.len() + done.len(), cap: self.size_limit });
                    }
                }
            }
        }
        Ok(NcPoly::from_terms(done))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn misoriented_rules_rejected() {
        // a < b, so ab -> ba increases the order
        let rules = vec![
            Rule { lhs: Word(vec![0, 1]), rhs: NcPoly::<Q>::word(Word(vec![1, 0])) },
            Rule { lhs: Word(vec![1, 0]), rhs: NcPoly::word(Word(vec![0, 1])).add(&NcPoly::one()) },
        ];
        let err = RewriteSystem::from_rules(2, rules, &names()).unwrap_err();
        assert!(matches!(err, Error::OrderViolation { .. }));
    }

    #[test]
    fn size_limit_trips() {
        // c -> a + b expands c^k into 2^k distinct words
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let rules = vec![Rule { lhs: Word(vec![2]), rhs: NcPoly::<Q>::gen(0).add(&NcPoly::gen(1)) }];
        let mut rs = RewriteSystem::from_rules(3, rules, &names).unwrap();
        rs.size_limit = 64;
        let p = NcPoly::word(Word(vec![2; 12]));
        assert!(matches!(rs.normal_form(&p), Err(Error::SizeLimit { .. })));
    }
}
