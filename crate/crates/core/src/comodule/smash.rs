use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{CleavingMap, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, LinearMap};
use crate::ncpoly::{parse_expr, reindex, reindex_word, wider, Algebra, Alphabet, Gen, NcPoly, Rule, Tensor, Word};
use crate::scalar::Field;

/// Left `H`-module algebra action on generators, extended through the
/// coproduct and memoized per (H word, B word).
pub(crate) struct Action<K: Field> {
    base: Arc<Algebra<K>>,
    hopf: HopfAlgebra<K>,
    table: Vec<Vec<NcPoly<K>>>,
    cache: Mutex<HashMap<(Word, Word), NcPoly<K>>>,
}

impl<K: Field> Clone for Action<K> {
    fn clone(&self) -> Self {
        Action { base: self.base.clone(), hopf: self.hopf.clone(), table: self.table.clone(), cache: Mutex::new(HashMap::new()) }
    }
}

impl<K: Field> Action<K> {
    pub(crate) fn from_exprs(base: Arc<Algebra<K>>, hopf: HopfAlgebra<K>, entries: &[(String, String)]) -> Result<Self> {
        let h = hopf.algebra();
        let mut table: Vec<Vec<Option<NcPoly<K>>>> = vec![vec![None; base.ngens()]; h.ngens()];
        let tower = wider(base.tower(), h.tower());
        let param = base.param().cloned().or_else(|| h.param().cloned());
        for (key, e) in entries {
            let (hg, bg) = key
                .split_once(',')
                .ok_or_else(|| Error::Config(format!("action key {key:?} must read \"Hgen,Bgen\"")))?;
            let hr = h.rank(hg.trim())? as usize;
            let br = base.rank(bg.trim())? as usize;
            let p = parse_expr(e)?.eval_poly(base.alphabet(), tower, param.clone())?;
            table[hr][br] = Some(base.normal_form(&p)?);
        }
        let mut out = Vec::with_capacity(table.len());
        for (hr, row) in table.into_iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (br, p) in row.into_iter().enumerate() {
                r.push(p.ok_or_else(|| {
                    Error::Config(format!(
                        "action table has no entry for {},{}",
                        h.alphabet().name(hr as Gen),
                        base.alphabet().name(br as Gen)
                    ))
                })?);
            }
            out.push(r);
        }
        Ok(Action { base, hopf, table: out, cache: Mutex::new(HashMap::new()) })
    }

    pub(crate) fn with_entry(&self, hgen: &str, bgen: &str, expr: &str) -> Result<Self> {
        let mut a = self.clone();
        let h = self.hopf.algebra();
        let tower = wider(self.base.tower(), h.tower());
        let param = self.base.param().cloned().or_else(|| h.param().cloned());
        let p = parse_expr(expr)?.eval_poly(self.base.alphabet(), tower, param)?;
        a.table[h.rank(hgen)? as usize][self.base.rank(bgen)? as usize] = self.base.normal_form(&p)?;
        Ok(a)
    }

    pub(crate) fn entries(&self) -> Vec<(String, String)> {
        let h = self.hopf.algebra();
        let mut out = Vec::new();
        for &hg in h.alphabet().declared() {
            for &bg in self.base.alphabet().declared() {
                out.push((
                    format!("{},{}", h.alphabet().name(hg), self.base.alphabet().name(bg)),
                    self.base.show(&self.table[hg as usize][bg as usize]),
                ));
            }
        }
        out
    }

    /// `h ▷ b` for words; `h` is read left to right as successive actions.
    pub(crate) fn act_word(&self, h: &Word, b: &Word) -> Result<NcPoly<K>> {
        if h.is_empty() {
            return self.base.normal_form(&NcPoly::word(b.clone()));
        }
        if b.is_empty() {
            let e = self.hopf.counit_map().apply_word(h)?.as_scalar().unwrap_or_else(K::zero);
            return Ok(NcPoly::scalar(e));
        }
        let key = (h.clone(), b.clone());
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let r = if h.len() > 1 {
            let inner = self.act_word(&Word(h.0[1..].to_vec()), b)?;
            self.act_on(&Word::single(h.0[0]), &inner)?
        } else if b.len() == 1 {
            self.table[h.0[0] as usize][b.0[0] as usize].clone()
        } else {
            let first = Word::single(b.0[0]);
            let rest = Word(b.0[1..].to_vec());
            let mut acc = NcPoly::zero();
            for (k, c) in self.hopf.delta_word(h)?.terms() {
                let x = self.act_word(&k[0], &first)?;
                let y = self.act_word(&k[1], &rest)?;
                acc = acc.add(&self.base.mul(&x, &y)?.scale(c));
            }
            acc
        };
        self.cache.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    fn act_on(&self, h: &Word, b: &NcPoly<K>) -> Result<NcPoly<K>> {
        let mut acc = NcPoly::zero();
        for (w, c) in b.terms() {
            acc = acc.add(&self.act_word(h, w)?.scale(c));
        }
        Ok(acc)
    }

    pub(crate) fn act(&self, h: &NcPoly<K>, b: &NcPoly<K>) -> Result<NcPoly<K>> {
        let mut acc = NcPoly::zero();
        for (w, c) in h.terms() {
            acc = acc.add(&self.act_on(w, b)?.scale(c));
        }
        Ok(acc)
    }

    /// First violation of the module-algebra axioms: relations of `B` must
    /// be annihilated by every word of `H` up to degree `dh`, and relations
    /// of `H` must act identically on every word of `B` up to degree `db`.
    pub(crate) fn module_algebra_violation(&self, dh: usize, db: usize) -> Result<Option<(String, String)>> {
        let h = self.hopf.algebra();
        let b = self.base.as_ref();
        for r in b.rules() {
            for hw in h.basis(dh) {
                let lhs = self.act_word(&hw, &r.lhs)?;
                let rhs = self.act_on(&hw, &r.rhs)?;
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    return Ok(Some((
                        format!("relation {} = {} of {} is preserved", b.show_word(&r.lhs), b.show(&r.rhs), b.name),
                        format!("{}▷({} - ({})) = {}", h.show_word(&hw), b.show_word(&r.lhs), b.show(&r.rhs), b.show(&d)),
                    )));
                }
            }
        }
        for r in h.rules() {
            for bw in b.basis(db) {
                let lhs = self.act_word(&r.lhs, &bw)?;
                let mut rhs = NcPoly::zero();
                for (w, c) in r.rhs.terms() {
                    rhs = rhs.add(&self.act_word(w, &bw)?.scale(c));
                }
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    return Ok(Some((
                        format!("relation {} = {} of {} acts consistently", h.show_word(&r.lhs), h.show(&r.rhs), h.name),
                        format!("({} - ({}))▷{} = {}", h.show_word(&r.lhs), h.show(&r.rhs), b.show_word(&bw), b.show(&d)),
                    )));
                }
            }
        }
        Ok(None)
    }
}

/// The smash product `B ⋊ H` with multiplication
/// `(b ⊗ h)(b' ⊗ h') = b (h₁ ▷ b') ⊗ h₂ h'`, presented on the union of the
/// generators with `B` below `H`, so that normal words read `B`-word then
/// `H`-word. It is an `H`-comodule algebra through `id ⊗ Δ`.
#[derive(Clone, Debug)]
pub struct SmashProduct<K: Field> {
    comodule: ComoduleAlgebra<K>,
    base: Arc<Algebra<K>>,
    action: Arc<ActionHandle<K>>,
    b_embed: Vec<Gen>,
    h_embed: Vec<Gen>,
}

pub(crate) struct ActionHandle<K: Field>(pub(crate) Action<K>);

impl<K: Field> std::fmt::Debug for ActionHandle<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Action({} on {})", self.0.hopf.name(), self.0.base.name)
    }
}

pub(crate) const MODULE_CHECK_DEGREE: usize = 2;

impl<K: Field> PartialEq for SmashProduct<K> {
    fn eq(&self, o: &Self) -> bool {
        self.comodule == o.comodule && self.base == o.base && self.action_entries() == o.action_entries()
    }
}

impl<K: Field> SmashProduct<K> {
    /// Build `B ⋊ H` from an action table keyed `"Hgen,Bgen"`. Fails with
    /// NOT_MODULE_ALGEBRA when the table does not define a module algebra.
    pub fn new(name: &str, base: Arc<Algebra<K>>, hopf: HopfAlgebra<K>, action: &[(String, String)]) -> Result<Self> {
        let act = Action::from_exprs(base.clone(), hopf.clone(), action)?;
        Self::from_action(name, act)
    }

    pub(crate) fn from_action(name: &str, act: Action<K>) -> Result<Self> {
        if let Some((axiom, witness)) = act.module_algebra_violation(MODULE_CHECK_DEGREE, MODULE_CHECK_DEGREE)? {
            return Err(Error::NotModuleAlgebra { axiom, witness });
        }
        let base = act.base.clone();
        let hopf = act.hopf.clone();
        let h = hopf.algebra();
        let nb = base.ngens();
        let mut hnames = Vec::new();
        for g in h.names() {
            let mut nm = g.clone();
            while base.names().contains(&nm) || hnames.contains(&nm) {
                nm.push_str("_h");
            }
            hnames.push(nm);
        }
        let mut decl: Vec<String> = base.alphabet().declared().iter().map(|&g| base.names()[g as usize].clone()).collect();
        decl.extend(h.alphabet().declared().iter().map(|&g| hnames[g as usize].clone()));
        let mut prec: Vec<String> = hnames.iter().rev().cloned().collect();
        prec.extend(base.names().iter().rev().cloned());
        let alphabet = Alphabet::new(&decl, &prec)?;
        let b_embed: Vec<Gen> = (0..nb as Gen).collect();
        let h_embed: Vec<Gen> = (0..h.ngens() as Gen).map(|g| g + nb as Gen).collect();

        let mut rules: Vec<Rule<K>> = base.rules().to_vec();
        for r in h.rules() {
            rules.push(Rule { lhs: reindex_word(&r.lhs, &h_embed), rhs: reindex(&r.rhs, &h_embed) });
        }
        for hg in 0..h.ngens() as Gen {
            let dg = hopf.delta_word(&Word::single(hg))?;
            for bg in 0..nb as Gen {
                let mut rhs = NcPoly::zero();
                for (k, c) in dg.terms() {
                    let x = act.act_word(&k[0], &Word::single(bg))?;
                    let tail = NcPoly::word(reindex_word(&k[1], &h_embed));
                    rhs = rhs.add(&x.free_mul(&tail).scale(c));
                }
                rules.push(Rule { lhs: Word(vec![h_embed[hg as usize], bg]), rhs });
            }
        }
        let alg = Arc::new(
            Algebra::from_rules(name, alphabet, rules, None)?
                .with_scalars(wider(base.tower(), h.tower()), base.param().cloned().or_else(|| h.param().cloned())),
        );
        let mut co = Vec::with_capacity(alg.ngens());
        for bg in 0..nb as Gen {
            co.push(Tensor::pure(&[&NcPoly::gen(bg), &NcPoly::one()]));
        }
        for hg in 0..h.ngens() as Gen {
            let d = hopf.delta_word(&Word::single(hg))?;
            co.push(d.expand(|i, w| {
                let w = if i == 0 { reindex_word(w, &h_embed) } else { w.clone() };
                Ok(Tensor::from_poly(&NcPoly::word(w)))
            })?);
        }
        let coaction = LinearMap::hom(&format!("coaction[{name}]"), alg.clone(), vec![alg.clone(), hopf.algebra_arc().clone()], co)?;
        let comodule = ComoduleAlgebra::new(alg, hopf, coaction)?;
        Ok(SmashProduct { comodule, base, action: Arc::new(ActionHandle(act)), b_embed, h_embed })
    }

    /// Copy with one action entry replaced; the module-algebra axioms are
    /// re-checked.
    pub fn with_action_entry(&self, hgen: &str, bgen: &str, expr: &str) -> Result<Self> {
        let act = self.action.0.with_entry(hgen, bgen, expr)?;
        Self::from_action(&self.comodule.algebra().name, act)
    }

    /// First violation of the module-algebra axioms with `H` words up to
    /// degree `dh` and `B` words up to degree `db`, as (axiom, witness).
    pub fn module_algebra_violation(&self, dh: usize, db: usize) -> Result<Option<(String, String)>> {
        self.action.0.module_algebra_violation(dh, db)
    }

    pub fn comodule(&self) -> &ComoduleAlgebra<K> {
        &self.comodule
    }
    pub fn algebra(&self) -> &Algebra<K> {
        self.comodule.algebra()
    }
    pub fn algebra_arc(&self) -> &Arc<Algebra<K>> {
        self.comodule.algebra_arc()
    }
    pub fn base(&self) -> &Arc<Algebra<K>> {
        &self.base
    }
    pub fn hopf(&self) -> &HopfAlgebra<K> {
        self.comodule.hopf()
    }
    pub fn action_entries(&self) -> Vec<(String, String)> {
        self.action.0.entries()
    }

    /// `h ▷ b` inside `B`.
    pub fn act(&self, h: &NcPoly<K>, b: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.action.0.act(h, b)
    }

    pub fn embed_base(&self, b: &NcPoly<K>) -> NcPoly<K> {
        reindex(b, &self.b_embed)
    }
    pub fn embed_hopf(&self, h: &NcPoly<K>) -> NcPoly<K> {
        reindex(h, &self.h_embed)
    }

    /// The canonical cleaving `h ↦ 1 ⊗ h`.
    pub fn cleaving(&self) -> Result<CleavingMap<K>> {
        let h = self.hopf();
        let gens = (0..h.algebra().ngens() as Gen).map(|g| self.embed_hopf(&NcPoly::gen(g))).collect();
        let j = LinearMap::algebra_map(&format!("j[{}]", self.algebra().name), h.algebra_arc().clone(), self.algebra_arc().clone(), gens)?;
        CleavingMap::from_algebra_map(j, h)
    }

    /// Split a smash element into `Σ b ⊗ h` over `B ⊗ H`.
    pub fn split(&self, p: &NcPoly<K>) -> Result<Tensor<K>> {
        let p = self.algebra().normal_form(p)?;
        let nb = self.b_embed.len() as Gen;
        let mut t = Tensor::zero(2);
        for (w, c) in p.terms() {
            let cut = w.0.iter().position(|&g| g >= nb).unwrap_or(w.len());
            if w.0[cut..].iter().any(|&g| g < nb) {
                return Err(Error::Config(format!("{} is not a B-word followed by an H-word", self.algebra().show_word(w))));
            }
            let bw = Word(w.0[..cut].to_vec());
            let hw = Word(w.0[cut..].iter().map(|&g| g - nb).collect());
            t.add_term(vec![bw, hw], c.clone());
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use crate::builtin;
    use crate::error::Error;
    use crate::ncpoly::NcPoly;

    #[test]
    fn plane_gl_smash_builds_and_is_confluent() {
        let sm = builtin::plane_gl_smash(None).unwrap();
        let rep = sm.algebra().check_local_confluence(3);
        assert!(rep.confluent(), "{:?}", rep);
        let a = sm.algebra();
        let x = a.gen("x").unwrap();
        let dinv = a.gen("Dinv").unwrap();
        // Dinv x = q^3 x Dinv
        let p = a.mul(&dinv, &x).unwrap();
        assert_eq!(a.show(&p), "Q^3*x*Dinv");
    }

    #[test]
    fn corrupted_action_is_not_a_module_algebra() {
        let sm = builtin::plane_gl_smash(None).unwrap();
        match sm.with_action_entry("a", "x", "Q^-1*x") {
            Err(Error::NotModuleAlgebra { axiom, witness }) => {
                assert!(axiom.contains("acts consistently"), "{axiom}");
                assert!(witness.contains('x'), "{witness}");
            }
            other => panic!("expected NOT_MODULE_ALGEBRA, got {other:?}"),
        }
    }

    #[test]
    fn split_separates_legs() {
        let sm = builtin::toeplitz_z2_smash(None).unwrap();
        let a = sm.algebra();
        let p = a.parse("u*s").unwrap();
        let t = sm.split(&p).unwrap();
        assert_eq!(t.len(), 1);
        let b = sm.base().gen("s").unwrap();
        assert_eq!(sm.act(&sm.hopf().algebra().gen("u").unwrap(), &b).unwrap(), b.neg());
        let _ = NcPoly::<crate::RatFunc>::one();
    }
}
