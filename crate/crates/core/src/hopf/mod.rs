//! Hopf structure on presented algebras: coproduct, counit and antipode
//! given on generators, convolution, Hopf ideals and quotients.

mod map;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncpoly::{Algebra, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

pub use map::{convolution, render, Extension, LinearMap};

#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra<K: Field> {
    alg: Arc<Algebra<K>>,
    delta: LinearMap<K>,
    counit: LinearMap<K>,
    antipode: LinearMap<K>,
    antipode_inv: LinearMap<K>,
}

/// Generator tables in the expression grammar, keyed by generator name.
#[derive(Clone, Debug, Default)]
pub struct HopfTables {
    pub delta: Vec<(String, String)>,
    pub counit: Vec<(String, String)>,
    pub antipode: Vec<(String, String)>,
    pub antipode_inv: Vec<(String, String)>,
}

impl HopfTables {
    pub fn new(
        delta: &[(&str, &str)],
        counit: &[(&str, &str)],
        antipode: &[(&str, &str)],
        antipode_inv: &[(&str, &str)],
    ) -> Self {
        let own = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        HopfTables { delta: own(delta), counit: own(counit), antipode: own(antipode), antipode_inv: own(antipode_inv) }
    }
}

impl<K: Field> HopfAlgebra<K> {
    pub fn new(
        alg: Arc<Algebra<K>>,
        delta: LinearMap<K>,
        counit: LinearMap<K>,
        antipode: LinearMap<K>,
        antipode_inv: LinearMap<K>,
    ) -> Result<Self> {
        let shape = |m: &LinearMap<K>, n: usize| m.arity() == n && m.domain().as_ref() == alg.as_ref();
        if !shape(&delta, 2) || !shape(&counit, 0) || !shape(&antipode, 1) || !shape(&antipode_inv, 1) {
            return Err(Error::Config(format!("structure maps of {} have the wrong shape", alg.name)));
        }
        Ok(HopfAlgebra { alg, delta, counit, antipode, antipode_inv })
    }

    pub fn from_tables(alg: Algebra<K>, t: &HopfTables) -> Result<Self> {
        let a = Arc::new(alg);
        let n = &a.name;
        let delta = LinearMap::from_exprs(&format!("delta[{n}]"), a.clone(), vec![a.clone(), a.clone()], Extension::Hom, &t.delta)?;
        let counit = LinearMap::from_exprs(&format!("counit[{n}]"), a.clone(), vec![], Extension::Hom, &t.counit)?;
        let s = LinearMap::from_exprs(&format!("antipode[{n}]"), a.clone(), vec![a.clone()], Extension::AntiHom, &t.antipode)?;
        let si = LinearMap::from_exprs(
            &format!("antipode_inv[{n}]"),
            a.clone(),
            vec![a.clone()],
            Extension::AntiHom,
            &t.antipode_inv,
        )?;
        Self::new(a, delta, counit, s, si)
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.alg
    }
    pub fn algebra_arc(&self) -> &Arc<Algebra<K>> {
        &self.alg
    }
    pub fn name(&self) -> &str {
        &self.alg.name
    }
    pub fn delta_map(&self) -> &LinearMap<K> {
        &self.delta
    }
    pub fn counit_map(&self) -> &LinearMap<K> {
        &self.counit
    }
    pub fn antipode_map(&self) -> &LinearMap<K> {
        &self.antipode
    }
    pub fn antipode_inv_map(&self) -> &LinearMap<K> {
        &self.antipode_inv
    }

    /// Replace one generator entry of a structure table.
    pub fn with_entry(&self, table: &str, gen: &str, expr: &str) -> Result<Self> {
        let mut h = self.clone();
        let a = self.alg.clone();
        let (tower, param) = (a.tower(), a.param().cloned());
        let e = crate::ncpoly::parse_expr(expr)?;
        match table {
            "delta" => h.delta = h.delta.with_gen_image(gen, e.eval_tensor(&[a.alphabet(), a.alphabet()], tower, param)?)?,
            "counit" => h.counit = h.counit.with_gen_image(gen, e.eval_tensor(&[], tower, param)?)?,
            "antipode" => h.antipode = h.antipode.with_gen_image(gen, e.eval_tensor(&[a.alphabet()], tower, param)?)?,
            "antipode_inv" => {
                h.antipode_inv = h.antipode_inv.with_gen_image(gen, e.eval_tensor(&[a.alphabet()], tower, param)?)?
            }
            _ => return Err(Error::Config(format!("unknown structure table {table}"))),
        }
        Ok(h)
    }

    pub fn delta_word(&self, w: &Word) -> Result<Tensor<K>> {
        self.delta.apply_word(w)
    }
    pub fn delta(&self, p: &NcPoly<K>) -> Result<Tensor<K>> {
        self.delta.apply(p)
    }
    pub fn counit(&self, p: &NcPoly<K>) -> Result<K> {
        self.counit.apply_scalar(p)
    }
    pub fn antipode(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.antipode.apply_poly(p)
    }
    pub fn antipode_inv(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.antipode_inv.apply_poly(p)
    }

    pub fn show(&self, p: &NcPoly<K>) -> String {
        self.alg.show(p)
    }
    pub fn show2(&self, t: &Tensor<K>) -> String {
        t.display(&[self.alg.names(), self.alg.names()])
    }

    /// `η∘ε` into an algebra: the convolution unit.
    pub fn unit_counit(&self, codomain: Arc<Algebra<K>>) -> Result<LinearMap<K>> {
        let gens = self
            .counit
            .gen_images()
            .iter()
            .map(|t| Tensor::from_poly(&NcPoly::scalar(t.as_scalar().unwrap_or_else(K::zero))))
            .collect();
        LinearMap::hom("unit_counit", self.alg.clone(), vec![codomain], gens)
    }

    pub fn identity(&self) -> Result<LinearMap<K>> {
        let gens = (0..self.alg.ngens() as u16).map(|g| Tensor::from_poly(&NcPoly::gen(g))).collect();
        LinearMap::hom("id", self.alg.clone(), vec![self.alg.clone()], gens)
    }

    pub fn is_group_like(&self, p: &NcPoly<K>) -> Result<bool> {
        let d = self.delta(p)?;
        Ok(d == Tensor::pure(&[p, p]) && self.counit(p)?.is_one())
    }

    /// Coassociativity, counit and antipode laws, `S∘S⁻¹ = S⁻¹∘S = id`,
    /// the anti-coalgebra property of `S` and well-definedness of all
    /// tables, on every normal word up to degree `d`.
    pub fn check_hopf_axioms(&self, d: usize) -> CheckReport {
        let mut rep = CheckReport::new(format!("hopf axioms {} (degree {d})", self.name()));
        for m in [&self.delta, &self.counit, &self.antipode, &self.antipode_inv] {
            rep.absorb(m.check_well_defined());
        }
        let h = self.alg.as_ref();
        let hh = [h, h];
        let mut s_is_id = true;
        let mut s2_is_id = true;
        for w in h.basis(d) {
            let at = h.show_word(&w);
            if let Err(e) = self.axioms_at(&w, &at, &hh, &mut rep, &mut s_is_id, &mut s2_is_id) {
                rep.fail("evaluation", at, e.to_string());
            }
        }
        for g in 0..h.ngens() as u16 {
            let x = NcPoly::gen(g);
            if let Ok(true) = self.is_group_like(&x) {
                let at = h.alphabet().name(g).to_string();
                match self.antipode(&x).and_then(|s| h.mul(&s, &x)) {
                    Ok(p) => rep.record("group-like S(g)g = 1", at, p.is_one(), || h.show(&p)),
                    Err(e) => rep.fail("group-like S(g)g = 1", at, e.to_string()),
                }
            }
        }
        if s_is_id {
            rep.note("antipode is the identity on the checked basis");
        } else if s2_is_id {
            rep.note("antipode is involutive on the checked basis");
        }
        rep
    }

    fn axioms_at(
        &self,
        w: &Word,
        at: &str,
        hh: &[&Algebra<K>; 2],
        rep: &mut CheckReport,
        s_is_id: &mut bool,
        s2_is_id: &mut bool,
    ) -> Result<()> {
        let h = hh[0];
        let x = NcPoly::word(w.clone());
        let dw = self.delta_word(w)?;
        let names = [h.names(), h.names(), h.names()];

        let left = self.delta.apply_leg(&dw, 0)?;
        let right = self.delta.apply_leg(&dw, 1)?;
        rep.record("coassociativity", at, left == right, || {
            format!("(D⊗id)D = {} but (id⊗D)D = {}", left.display(&names), right.display(&names))
        });

        let xt = Tensor::from_poly(&x);
        let l = self.counit.apply_leg(&dw, 0)?;
        let r = self.counit.apply_leg(&dw, 1)?;
        rep.record("counit law", at, l == xt && r == xt, || {
            format!("(e⊗id)D = {}, (id⊗e)D = {}", l.display(&names), r.display(&names))
        });

        let eps = self.counit_word(w)?;
        let unit = Tensor::from_poly(&NcPoly::scalar(eps));
        let sl = self.antipode.apply_leg(&dw, 0)?.merge(&[2]).normalize(&[h])?;
        let sr = self.antipode.apply_leg(&dw, 1)?.merge(&[2]).normalize(&[h])?;
        rep.record("antipode law", at, sl == unit && sr == unit, || {
            format!("m(S⊗id)D = {}, m(id⊗S)D = {}", sl.display(&names), sr.display(&names))
        });

        let s = self.antipode.apply_word(w)?.to_poly();
        let si = self.antipode_inv.apply_word(w)?.to_poly();
        let ssi = self.antipode.apply_poly(&si)?;
        let sis = self.antipode_inv.apply_poly(&s)?;
        rep.record("antipode invertible", at, ssi == x && sis == x, || {
            format!("S(S^-1(w)) = {}, S^-1(S(w)) = {}", h.show(&ssi), h.show(&sis))
        });
        if s != x {
            *s_is_id = false;
        }
        if self.antipode.apply_poly(&s)? != x {
            *s2_is_id = false;
        }

        let ss = self.antipode.apply_leg(&self.antipode.apply_leg(&dw, 0)?, 1)?;
        let flip = self.delta(&s)?.permute(&[1, 0]);
        rep.record("anti-coalgebra", at, ss == flip, || {
            format!("(S⊗S)D = {} but flip D S = {}", ss.display(&names), flip.display(&names))
        });
        Ok(())
    }

    fn counit_word(&self, w: &Word) -> Result<K> {
        self.counit.apply_word(w)?.as_scalar().ok_or_else(|| Error::SizeMismatch("counit not scalar".into()))
    }

    /// Checks that `ideal` generates a Hopf ideal, using the already formed
    /// quotient algebra `q` (same alphabet) for membership.
    pub fn check_hopf_ideal(&self, ideal: &[NcPoly<K>], q: &Algebra<K>) -> CheckReport {
        let mut rep = CheckReport::new(format!("hopf ideal in {}", self.name()));
        for g in ideal {
            let at = self.show(g);
            let r: Result<()> = (|| {
                let e = self.counit(g)?;
                rep.record("counit vanishes", at.clone(), e.is_zero(), || format!("e = {}", e.to_expr()));
                let d = self.delta(g)?.normalize(&[q, q])?;
                rep.record("coideal", at.clone(), d.is_zero(), || {
                    format!("D(g) = {} in the quotient square", d.display(&[q.names(), q.names()]))
                });
                let s = q.normal_form(&self.antipode(g)?)?;
                rep.record("antipode-stable", at.clone(), s.is_zero(), || format!("S(g) = {}", q.show(&s)));
                let si = q.normal_form(&self.antipode_inv(g)?)?;
                rep.record("inverse-antipode-stable", at.clone(), si.is_zero(), || format!("S^-1(g) = {}", q.show(&si)));
                Ok(())
            })();
            if let Err(e) = r {
                rep.fail("evaluation", at, e.to_string());
            }
        }
        rep
    }

    /// Quotient Hopf algebra by the ideal generated by `ideal`, together
    /// with the canonical surjection.
    pub fn quotient(&self, name: &str, ideal: &[NcPoly<K>], bound: usize) -> Result<(HopfAlgebra<K>, LinearMap<K>)> {
        let q = Arc::new(self.alg.quotient(name, ideal, bound)?);
        let rep = self.check_hopf_ideal(ideal, &q);
        if let Some(f) = rep.first_failure() {
            return Err(Error::NotHopfIdeal { generator: f.at.clone(), axiom: f.check.clone() });
        }
        let qq = [q.as_ref(), q.as_ref()];
        let delta_gens = self.delta.gen_images().iter().map(|t| t.normalize(&qq)).collect::<Result<Vec<_>>>()?;
        let s_gens = self.antipode.gen_images().iter().map(|t| t.normalize(&[q.as_ref()])).collect::<Result<Vec<_>>>()?;
        let si_gens =
            self.antipode_inv.gen_images().iter().map(|t| t.normalize(&[q.as_ref()])).collect::<Result<Vec<_>>>()?;
        let n = name;
        let delta = LinearMap::hom(&format!("delta[{n}]"), q.clone(), vec![q.clone(), q.clone()], delta_gens)?;
        let counit = LinearMap::hom(&format!("counit[{n}]"), q.clone(), vec![], self.counit.gen_images().to_vec())?;
        let s = LinearMap::anti_hom(&format!("antipode[{n}]"), q.clone(), vec![q.clone()], s_gens)?;
        let si = LinearMap::anti_hom(&format!("antipode_inv[{n}]"), q.clone(), vec![q.clone()], si_gens)?;
        let quo = HopfAlgebra::new(q.clone(), delta, counit, s, si)?;
        let pi_gens = (0..self.alg.ngens() as u16).map(|g| Tensor::from_poly(&NcPoly::gen(g))).collect();
        let pi = LinearMap::hom(&format!("pi[{}->{n}]", self.name()), self.alg.clone(), vec![q], pi_gens)?;
        Ok((quo, pi))
    }

    /// Membership of `h` in the left coinvariants for the coaction
    /// `(π⊗id)∘Δ` of the quotient `π: H → H/J`.
    pub fn left_coinvariant_test(&self, pi: &LinearMap<K>, h: &NcPoly<K>) -> Result<bool> {
        let d = self.delta(h)?;
        let lhs = pi.apply_leg(&d, 0)?;
        let rhs = Tensor::pure(&[&NcPoly::one(), h]);
        Ok(lhs == rhs)
    }
}

/// Compare two Hopf algebras through an algebra map given on generators:
/// the map must be well defined, bijective on the normal bases up to `d`,
/// and intertwine coproducts, counits and antipodes.
pub fn hopf_iso_check<K: Field>(a: &HopfAlgebra<K>, b: &HopfAlgebra<K>, phi: &LinearMap<K>, d: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("{} ≅ {}", a.name(), b.name()));
    rep.absorb(phi.check_well_defined());
    let ba = a.algebra().basis(d);
    let bb = b.algebra().basis(d);
    let r: Result<()> = (|| {
        let images: Vec<NcPoly<K>> = ba.iter().map(|w| phi.apply_poly(&NcPoly::word(w.clone()))).collect::<Result<_>>()?;
        let rank = crate::linalg::rank_of_polys(&images);
        rep.record("basis bijection", format!("degree ≤ {d}"), rank == ba.len() && ba.len() == bb.len(), || {
            format!("{} source words, {} target words, image rank {rank}", ba.len(), bb.len())
        });
        let bh = b.algebra();
        for w in &ba {
            let at = a.algebra().show_word(w);
            let x = NcPoly::word(w.clone());
            let lhs = phi.apply_leg(&phi.apply_leg(&a.delta_word(w)?, 0)?, 1)?;
            let rhs = b.delta(&phi.apply_poly(&x)?)?;
            rep.record("coproduct intertwined", at.clone(), lhs == rhs, || {
                format!("{} vs {}", lhs.display(&[bh.names(), bh.names()]), rhs.display(&[bh.names(), bh.names()]))
            });
            let e1 = a.counit(&x)?;
            let e2 = b.counit(&phi.apply_poly(&x)?)?;
            rep.record("counit intertwined", at.clone(), e1 == e2, || format!("{} vs {}", e1.to_expr(), e2.to_expr()));
            let s1 = phi.apply_poly(&a.antipode(&x)?)?;
            let s2 = b.antipode(&phi.apply_poly(&x)?)?;
            rep.record("antipode intertwined", at, s1 == s2, || format!("{} vs {}", bh.show(&s1), bh.show(&s2)));
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("evaluation", "", e.to_string());
    }
    rep
}
