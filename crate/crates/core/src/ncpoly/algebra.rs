use std::collections::{BTreeSet, VecDeque};


use super::parse::{parse_expr, Expr};
use super::rewrite::{RewriteSystem, Rule};
use super::{Gen, NcPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::{Field, Tower};

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    match ch.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    ch.all(|c| c.is_ascii_alphanumeric() || c == '_') && s != "I" && s != "Q"
}

/// Generator names indexed by precedence rank (rank 0 is the smallest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    declared: Vec<Gen>,
}

impl Alphabet {
    /// `precedence` lists generators from highest to lowest; when empty the
    /// declaration order is used.
    pub fn new<S: AsRef<str>>(generators: &[S], precedence: &[S]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
        for g in &gens {
            if !valid_ident(g) {
                return Err(Error::Config(format!("invalid generator name {g:?}")));
            }
        }
        let uniq: BTreeSet<&String> = gens.iter().collect();
        if uniq.len() != gens.len() {
            return Err(Error::Config("duplicate generator names".into()));
        }
        let prec: Vec<String> = if precedence.is_empty() {
            gens.clone()
        } else {
            precedence.iter().map(|s| s.as_ref().to_string()).collect()
        };
        let pset: BTreeSet<&String> = prec.iter().collect();
        if pset != uniq || prec.len() != gens.len() {
            return Err(Error::Config("precedence must list every generator exactly once".into()));
        }
        let names: Vec<String> = prec.into_iter().rev().collect();
        let declared = gens.iter().map(|g| names.iter().position(|n| n == g).unwrap() as Gen).collect();
        Ok(Alphabet { names, declared })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn rank(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| i as Gen)
    }
    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }
    pub fn declared_names(&self) -> Vec<String> {
        self.declared.iter().map(|&g| self.names[g as usize].clone()).collect()
    }
    pub fn precedence_names(&self) -> Vec<String> {
        self.names.iter().rev().cloned().collect()
    }
    /// Ranks in declaration order.
    pub fn declared(&self) -> &[Gen] {
        &self.declared
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub word: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub degree_bound: usize,
    /// True when the bound reaches every overlap of leading words.
    pub exhaustive: bool,
    pub ambiguities: usize,
    pub conflicts: Vec<Conflict>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// A finitely presented algebra: alphabet, oriented rewrite system and an
/// optional star table.
#[derive(Clone, Debug)]
pub struct Algebra<K> {
    pub name: String,
    alphabet: Alphabet,
    rs: RewriteSystem<K>,
    relations: Vec<NcPoly<K>>,
    star: Option<Vec<NcPoly<K>>>,
    tower: Tower,
    param: Option<K>,
}

impl<K: Field> PartialEq for Algebra<K> {
    fn eq(&self, o: &Self) -> bool {
        self.alphabet == o.alphabet && self.rs == o.rs && self.star == o.star
    }
}

struct Ambiguity<K> {
    word: Word,
    first: NcPoly<K>,
    second: NcPoly<K>,
}

impl<K: Field> Algebra<K> {
    /// Orient relations by their leading words, inter-reducing as rules are
    /// added.
    pub fn from_relations(
        name: &str,
        alphabet: Alphabet,
        relations: Vec<NcPoly<K>>,
        star: Option<Vec<NcPoly<K>>>,
    ) -> Result<Self> {
        let rules = orient(&alphabet, &relations)?;
        let rs = RewriteSystem::from_rules(alphabet.len(), rules, alphabet.names())?;
        Ok(Algebra {
            name: name.to_string(),
            alphabet,
            rs,
            relations,
            star,
            tower: K::TOWER,
            param: K::param(),
        })
    }

    /// Build from explicitly oriented rules; rejects rules that do not
    /// decrease the monomial order.
    pub fn from_rules(name: &str, alphabet: Alphabet, rules: Vec<Rule<K>>, star: Option<Vec<NcPoly<K>>>) -> Result<Self> {
        let relations = rules.iter().map(|r| r.relation()).collect();
        let rs = RewriteSystem::from_rules(alphabet.len(), rules, alphabet.names())?;
        Ok(Algebra { name: name.to_string(), alphabet, rs, relations, star, tower: K::TOWER, param: K::param() })
    }

    /// Declared scalar tower and value of the `Q` atom (a specialised `q`).
    pub fn with_scalars(mut self, tower: Tower, param: Option<K>) -> Self {
        self.tower = tower;
        self.param = param;
        self
    }

    pub fn with_size_limit(mut self, cap: usize) -> Self {
        self.rs.size_limit = cap;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn names(&self) -> &[String] {
        self.alphabet.names()
    }
    pub fn ngens(&self) -> usize {
        self.alphabet.len()
    }
    pub fn rules(&self) -> &[Rule<K>] {
        self.rs.rules()
    }
    pub fn relations(&self) -> &[NcPoly<K>] {
        &self.relations
    }
    pub fn star_table(&self) -> Option<&[NcPoly<K>]> {
        self.star.as_deref()
    }
    pub fn tower(&self) -> Tower {
        self.tower
    }
    pub fn param(&self) -> Option<&K> {
        self.param.as_ref()
    }
    pub fn rewrite_system(&self) -> &RewriteSystem<K> {
        &self.rs
    }

    pub fn gen(&self, name: &str) -> Result<NcPoly<K>> {
        let g = self.alphabet.rank(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(NcPoly::gen(g))
    }

    pub fn rank(&self, name: &str) -> Result<Gen> {
        self.alphabet.rank(name).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// Parse an expression over this alphabet and reduce it.
    pub fn parse(&self, s: &str) -> Result<NcPoly<K>> {
        let e = parse_expr(s)?;
        self.eval(&e)
    }

    pub fn eval(&self, e: &Expr) -> Result<NcPoly<K>> {
        let p = e.eval_poly(&self.alphabet, self.tower, self.param.clone())?;
        self.normal_form(&p)
    }

    pub fn show(&self, p: &NcPoly<K>) -> String {
        p.display(self.alphabet.names())
    }

    pub fn show_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            w.0.iter().map(|&g| self.alphabet.name(g)).collect::<Vec<_>>().join("*")
        }
    }

    pub fn normal_form(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.rs.normal_form(p)
    }

    pub fn mul(&self, p: &NcPoly<K>, r: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.normal_form(&p.free_mul(r))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a NcPoly<K>>>(&self, factors: I) -> Result<NcPoly<K>> {
        let mut acc = NcPoly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, p: &NcPoly<K>, n: usize) -> Result<NcPoly<K>> {
        let mut acc = NcPoly::one();
        for _ in 0..n {
            acc = self.mul(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, p: &NcPoly<K>, r: &NcPoly<K>) -> Result<NcPoly<K>> {
        Ok(self.mul(p, r)?.sub(&self.mul(r, p)?))
    }

    pub fn is_normal(&self, p: &NcPoly<K>) -> bool {
        p.terms().all(|(w, _)| self.rs.is_normal_word(&w.0))
    }

    /// Anti-linear, anti-multiplicative involution from the star table.
    pub fn star(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        let table = self.star.as_ref().ok_or_else(|| Error::NoStar(self.name.clone()))?;
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::scalar(c.conj());
            for &g in w.0.iter().rev() {
                acc = acc.free_mul(&table[g as usize]);
            }
            out = out.add(&acc);
        }
        self.normal_form(&out)
    }

    /// Failures of `star∘star = id` on generators and of star compatibility
    /// with the relations.
    pub fn check_star(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for g in 0..self.ngens() as Gen {
            let x = NcPoly::gen(g);
            if self.star(&self.star(&x)?)? != x {
                bad.push(format!("star(star({})) != {}", self.alphabet.name(g), self.alphabet.name(g)));
            }
        }
        for r in self.rules() {
            let img = self.star(&r.relation())?;
            if !img.is_zero() {
                bad.push(format!("star({} - ({})) = {}", self.show_word(&r.lhs), self.show(&r.rhs), self.show(&img)));
            }
        }
        Ok(bad)
    }

    /// Normal words of length at most `d`, in increasing order.
    pub fn basis(&self, d: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &level {
                for g in 0..self.ngens() as Gen {
                    let mut v = w.0.clone();
                    v.push(g);
                    if self.suffix_normal(&v) {
                        next.push(Word(v));
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    fn suffix_normal(&self, v: &[Gen]) -> bool {
        for r in self.rs.rules() {
            let l = &r.lhs.0;
            if l.len() <= v.len() && &v[v.len() - l.len()..] == l.as_slice() {
                return false;
            }
        }
        true
    }

    fn ambiguities(&self, bound: usize) -> Vec<Ambiguity<K>> {
        let rules = self.rs.rules();
        let mut out = Vec::new();
        for (i, ri) in rules.iter().enumerate() {
            let li = &ri.lhs.0;
            for (j, rj) in rules.iter().enumerate() {
                let lj = &rj.lhs.0;
                for k in 1..li.len().min(lj.len()) {
                    if li[li.len() - k..] == lj[..k] {
                        let mut w = li.clone();
                        w.extend_from_slice(&lj[k..]);
                        if w.len() > bound {
                            continue;
                        }
                        let w = Word(w);
                        let one = K::one();
                        out.push(Ambiguity {
                            first: self.rs.apply_at(&w, &one, 0, i),
                            second: self.rs.apply_at(&w, &one, li.len() - k, j),
                            word: w,
                        });
                    }
                }
                if i != j && lj.len() <= li.len() && li.len() <= bound {
                    for p in 0..=(li.len() - lj.len()) {
                        if li[p..p + lj.len()] == lj[..] {
                            let one = K::one();
                            out.push(Ambiguity {
                                first: self.rs.apply_at(&ri.lhs, &one, 0, i),
                                second: self.rs.apply_at(&ri.lhs, &one, p, j),
                                word: ri.lhs.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Enumerate every overlap and inclusion ambiguity of leading words up
    /// to `bound` and compare both reductions.
    pub fn check_local_confluence(&self, bound: usize) -> ConfluenceReport {
        let amb = self.ambiguities(bound);
        let mut conflicts = Vec::new();
        for a in &amb {
            let r1 = self.normal_form(&a.first);
            let r2 = self.normal_form(&a.second);
            match (r1, r2) {
                (Ok(x), Ok(y)) if x == y => {}
                (Ok(x), Ok(y)) => conflicts.push(Conflict {
                    word: self.show_word(&a.word),
                    first: self.show(&x),
                    second: self.show(&y),
                }),
                (x, y) => conflicts.push(Conflict {
                    word: self.show_word(&a.word),
                    first: x.map(|p| self.show(&p)).unwrap_or_else(|e| e.to_string()),
                    second: y.map(|p| self.show(&p)).unwrap_or_else(|e| e.to_string()),
                }),
            }
        }
        ConfluenceReport {
            degree_bound: bound,
            exhaustive: bound + 1 >= 2 * self.rs.max_lhs_len(),
            ambiguities: amb.len(),
            conflicts,
        }
    }

    /// Degree-bounded completion: resolve every conflicting ambiguity up to
    /// `bound` by adjoining the difference as a new relation.
    pub fn complete(&self, bound: usize, max_rounds: usize) -> Result<Self> {
        let mut rels: Vec<NcPoly<K>> = self.relations.clone();
        let mut cur = self.clone();
        for _ in 0..max_rounds {
            let amb = cur.ambiguities(bound);
            let mut added = false;
            for a in amb {
                let d = cur.normal_form(&a.first.sub(&a.second))?;
                if !d.is_zero() {
                    rels.push(d);
                    added = true;
                }
            }
            if !added {
                return Ok(cur);
            }
            let rules = orient(&self.alphabet, &rels)?;
            cur.rs = RewriteSystem::from_rules(self.alphabet.len(), rules, self.alphabet.names())?
                .with_limit(self.rs.size_limit);
            cur.relations = rels.clone();
        }
        Err(Error::Completion(format!("{} did not stabilise within {} rounds", self.name, max_rounds)))
    }

    /// Quotient by the two-sided ideal generated by `extra`, completed up to
    /// `bound`.
    pub fn quotient(&self, name: &str, extra: &[NcPoly<K>], bound: usize) -> Result<Self> {
        let mut rels: Vec<NcPoly<K>> = self.rules().iter().map(|r| r.relation()).collect();
        rels.extend(extra.iter().cloned());
        let base = Algebra::from_relations(name, self.alphabet.clone(), rels, self.star.clone())?
            .with_scalars(self.tower, self.param.clone())
            .with_size_limit(self.rs.size_limit);
        base.complete(bound, 64)
    }

    /// Tensor product algebra: generators of `self` below those of `o`, with
    /// every right generator commuting past every left one.
    pub fn tensor(&self, o: &Algebra<K>, name: &str) -> Result<(Self, Vec<Gen>, Vec<Gen>)> {
        let n = self.ngens();
        let mut right_names = Vec::new();
        for g in o.names() {
            let mut nm = g.clone();
            while self.names().contains(&nm) || right_names.contains(&nm) {
                nm.push_str("_h");
            }
            right_names.push(nm);
        }
        let mut prec: Vec<String> = right_names.iter().rev().cloned().collect();
        prec.extend(self.names().iter().rev().cloned());
        let mut decl: Vec<String> = self.names().to_vec();
        decl.extend(right_names.iter().cloned());
        let alphabet = Alphabet::new(&decl, &prec)?;
        let left: Vec<Gen> = (0..n as Gen).collect();
        let right: Vec<Gen> = (0..o.ngens() as Gen).map(|g| g + n as Gen).collect();
        let mut rules = Vec::new();
        for r in self.rules() {
            rules.push(r.clone());
        }
        for r in o.rules() {
            rules.push(Rule { lhs: reindex_word(&r.lhs, &right), rhs: reindex(&r.rhs, &right) });
        }
        for &b in &right {
            for &a in &left {
                rules.push(Rule { lhs: Word(vec![b, a]), rhs: NcPoly::word(Word(vec![a, b])) });
            }
        }
        let star = match (&self.star, &o.star) {
            (Some(x), Some(y)) => {
                let mut t: Vec<NcPoly<K>> = x.clone();
                t.extend(y.iter().map(|p| reindex(p, &right)));
                Some(t)
            }
            _ => None,
        };
        let alg = Algebra::from_rules(name, alphabet, rules, star)?
            .with_scalars(wider(self.tower, o.tower), self.param.clone().or_else(|| o.param.clone()));
        Ok((alg, left, right))
    }

    /// Rename into a copy with a new name.
    pub fn renamed(&self, name: &str) -> Self {
        let mut a = self.clone();
        a.name = name.to_string();
        a
    }
}

pub fn wider(a: Tower, b: Tower) -> Tower {
    use Tower::*;
    match (a, b) {
        (RationalFunction, _) | (_, RationalFunction) => RationalFunction,
        (Gaussian, _) | (_, Gaussian) => Gaussian,
        _ => Rational,
    }
}

impl<K: Field> RewriteSystem<K> {
    fn with_limit(mut self, cap: usize) -> Self {
        self.size_limit = cap;
        self
    }
}

pub fn reindex_word(w: &Word, map: &[Gen]) -> Word {
    Word(w.0.iter().map(|&g| map[g as usize]).collect())
}

pub fn reindex<K: Field>(p: &NcPoly<K>, map: &[Gen]) -> NcPoly<K> {
    p.map_words(|w| reindex_word(w, map))
}

fn orient<K: Field>(alphabet: &Alphabet, relations: &[NcPoly<K>]) -> Result<Vec<Rule<K>>> {
    let names = alphabet.names();
    let mut rules: Vec<Rule<K>> = Vec::new();
    let mut queue: VecDeque<NcPoly<K>> = relations.iter().cloned().collect();
    let mut steps = 0usize;
    while let Some(p) = queue.pop_front() {
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Completion("rule orientation did not terminate".into()));
        }
        let rs = RewriteSystem::from_rules(alphabet.len(), rules.clone(), names)?;
        let r = rs.normal_form(&p)?;
        let (lw, lc) = match r.leading() {
            None => continue,
            Some((w, c)) => (w.clone(), c.clone()),
        };
        if lw.is_empty() {
            return Err(Error::Inconsistent(r.display(names)));
        }
        let inv = K::one() / lc.clone();
        let mut rhs = r.neg().scale(&inv);
        rhs.add_term(lw.clone(), K::one());
        let mut keep = Vec::with_capacity(rules.len());
        for rule in rules.drain(..) {
            if rule.lhs.find(&lw.0).is_some() {
                queue.push_back(rule.relation());
            } else {
                keep.push(rule);
            }
        }
        rules = keep;
        rules.push(Rule { lhs: lw, rhs });
    }
    // right sides in normal form
    let rs = RewriteSystem::from_rules(alphabet.len(), rules.clone(), names)?;
    let mut out = Vec::with_capacity(rules.len());
    for r in rules {
        let rhs = rs.normal_form(&r.rhs)?;
        out.push(Rule { lhs: r.lhs, rhs });
    }
    out.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn z2() -> Algebra<Q> {
        let al = Alphabet::new(&["u"], &[]).unwrap();
        let u = NcPoly::<Q>::gen(0);
        let rel = u.free_mul(&u).sub(&NcPoly::one());
        Algebra::from_relations("c_z2", al, vec![rel], None).unwrap()
    }

    #[test]
    fn unit_is_reduced() {
        let a = z2();
        assert_eq!(a.normal_form(&NcPoly::one()).unwrap(), NcPoly::one());
    }

    #[test]
    fn z2_square_is_one() {
        let a = z2();
        let u = a.gen("u").unwrap();
        assert_eq!(a.mul(&u, &u).unwrap(), NcPoly::one());
        let rep = a.check_local_confluence(4);
        assert!(rep.confluent());
        assert!(rep.exhaustive);
    }

    #[test]
    fn basis_enumeration() {
        let a = z2();
        assert_eq!(a.basis(5).len(), 2);
    }

    #[test]
    fn completion_finds_collapse() {
        // u u_inv = u_inv u = 1 together with u^2 = 1 forces u_inv = u
        let al = Alphabet::new(&["u", "u_inv"], &["u_inv", "u"]).unwrap();
        let u = NcPoly::<Q>::gen(al.rank("u").unwrap());
        let v = NcPoly::<Q>::gen(al.rank("u_inv").unwrap());
        let one = NcPoly::one();
        let rels = vec![u.free_mul(&v).sub(&one), v.free_mul(&u).sub(&one)];
        let a = Algebra::from_relations("u1", al, rels, None).unwrap();
        let extra = u.free_mul(&u).sub(&one);
        let quo = a.quotient("z2", &[extra], 4).unwrap();
        assert_eq!(quo.normal_form(&v).unwrap(), u);
        assert!(quo.check_local_confluence(4).confluent());
    }
}
