//! Comodule algebras over Hopf algebras: coaction axioms, cleavings, strong
//! connections, smash products and the translation map.

mod galois;
mod smash;
mod theta;

use std::sync::Arc;

pub use galois::{balanced_equal, graded_basis_check, miyashita_ulbrich_check, reduction_ideal, Balanced, ReductionIdeal};
pub use smash::SmashProduct;
pub use theta::{check_theta_properties, map_from_theta, theta_from_map, ThetaTable};

use crate::error::{Error, Result};
use crate::hopf::{convolution, Extension, HopfAlgebra, LinearMap};
use crate::linalg::{kernel, SparseVec};
use crate::ncpoly::{Algebra, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

/// A right `H`-comodule algebra `P` with coaction `δ: P → P ⊗ H`, extended
/// multiplicatively from generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct ComoduleAlgebra<K: Field> {
    alg: Arc<Algebra<K>>,
    hopf: HopfAlgebra<K>,
    coaction: LinearMap<K>,
}

impl<K: Field> ComoduleAlgebra<K> {
    pub fn new(alg: Arc<Algebra<K>>, hopf: HopfAlgebra<K>, coaction: LinearMap<K>) -> Result<Self> {
        let cod = coaction.codomain();
        if coaction.domain().as_ref() != alg.as_ref()
            || cod.len() != 2
            || cod[0].as_ref() != alg.as_ref()
            || cod[1].as_ref() != hopf.algebra()
        {
            return Err(Error::Config(format!("coaction {} does not map {} into {} ⊗ {}", coaction.name, alg.name, alg.name, hopf.name())));
        }
        Ok(ComoduleAlgebra { alg, hopf, coaction })
    }

    /// `H` coacting on itself through `Δ`.
    pub fn regular(h: &HopfAlgebra<K>) -> Result<Self> {
        let c = h.delta_map().clone().renamed(&format!("coaction[{}]", h.name()));
        Self::new(h.algebra_arc().clone(), h.clone(), c)
    }

    /// Trivial coaction `p ↦ p ⊗ 1`.
    pub fn trivial(alg: Arc<Algebra<K>>, hopf: HopfAlgebra<K>) -> Result<Self> {
        let gens = (0..alg.ngens() as u16)
            .map(|g| Tensor::pure(&[&NcPoly::gen(g), &NcPoly::one()]))
            .collect();
        let c = LinearMap::hom(&format!("coaction[{}]", alg.name), alg.clone(), vec![alg.clone(), hopf.algebra_arc().clone()], gens)?;
        Self::new(alg, hopf, c)
    }

    /// Quotient by the ideal generated by `extra`, coacted on by `hopf`
    /// (the same Hopf algebra or a quotient of it on the same alphabet).
    /// The generators must span a subcomodule modulo the ideal.
    pub fn quotient_over(&self, name: &str, extra: &[NcPoly<K>], hopf: &HopfAlgebra<K>, bound: usize) -> Result<Self> {
        if hopf.algebra().names() != self.hopf.algebra().names() {
            return Err(Error::Config(format!("{} is not a quotient of {}", hopf.name(), self.hopf.name())));
        }
        let q = Arc::new(self.alg.quotient(name, extra, bound)?);
        let qh = [q.as_ref(), hopf.algebra()];
        for g in extra {
            let d = self.coact(g)?.normalize(&qh)?;
            if !d.is_zero() {
                return Err(Error::PreconditionFail(format!(
                    "{} does not generate a subcomodule: coaction leaves {}",
                    self.alg.show(g),
                    d.display(&[q.names(), hopf.algebra().names()])
                )));
            }
        }
        let gens = self.coaction.gen_images().iter().map(|t| t.normalize(&qh)).collect::<Result<Vec<_>>>()?;
        let c = LinearMap::hom(&format!("coaction[{name}]"), q.clone(), vec![q.clone(), hopf.algebra_arc().clone()], gens)?;
        Self::new(q, hopf.clone(), c)
    }

    /// Quotient by a subcomodule ideal, keeping the Hopf algebra.
    pub fn quotient(&self, name: &str, extra: &[NcPoly<K>], bound: usize) -> Result<Self> {
        let h = self.hopf.clone();
        self.quotient_over(name, extra, &h, bound)
    }

    /// Copy with the underlying algebra renamed.
    pub fn renamed(&self, name: &str) -> Result<Self> {
        let alg = Arc::new(self.alg.renamed(name));
        let gens = self.coaction.gen_images().to_vec();
        let c = LinearMap::hom(&format!("coaction[{name}]"), alg.clone(), vec![alg.clone(), self.hopf.algebra_arc().clone()], gens)?;
        Self::new(alg, self.hopf.clone(), c)
    }

    /// Coaction from generator images in the tensor grammar (`p # h`).
    pub fn from_exprs(alg: Arc<Algebra<K>>, hopf: HopfAlgebra<K>, images: &[(String, String)]) -> Result<Self> {
        let c = LinearMap::from_exprs(
            &format!("coaction[{}]", alg.name),
            alg.clone(),
            vec![alg.clone(), hopf.algebra_arc().clone()],
            Extension::Hom,
            images,
        )?;
        Self::new(alg, hopf, c)
    }

    /// Replace the coaction image of one generator.
    pub fn with_coaction_entry(&self, gen: &str, expr: &str) -> Result<Self> {
        let alphs = [self.alg.alphabet(), self.hopf.algebra().alphabet()];
        let (tower, param) = (crate::ncpoly::wider(self.alg.tower(), self.hopf.algebra().tower()), self.alg.param().cloned());
        let t = crate::ncpoly::parse_expr(expr)?.eval_tensor(&alphs, tower, param)?;
        let mut c = self.clone();
        c.coaction = self.coaction.with_gen_image(gen, t)?;
        Ok(c)
    }

    pub fn algebra(&self) -> &Algebra<K> {
        &self.alg
    }
    pub fn algebra_arc(&self) -> &Arc<Algebra<K>> {
        &self.alg
    }
    pub fn hopf(&self) -> &HopfAlgebra<K> {
        &self.hopf
    }
    pub fn coaction_map(&self) -> &LinearMap<K> {
        &self.coaction
    }
    pub fn name(&self) -> &str {
        &self.alg.name
    }

    pub fn coact(&self, p: &NcPoly<K>) -> Result<Tensor<K>> {
        self.coaction.apply(p)
    }

    pub fn is_coinvariant(&self, p: &NcPoly<K>) -> Result<bool> {
        let p = self.alg.normal_form(p)?;
        Ok(self.coact(&p)? == Tensor::pure(&[&p, &NcPoly::one()]))
    }

    /// Basis of the degree-`d` truncation of `{p : δ(p) = p ⊗ g}`; `g = 1`
    /// gives the coinvariant subalgebra.
    pub fn isotypic(&self, g: &NcPoly<K>, d: usize) -> Result<Vec<NcPoly<K>>> {
        let words = self.alg.basis(d);
        let mut vecs: Vec<SparseVec<Vec<Word>, K>> = Vec::with_capacity(words.len());
        for w in &words {
            let x = NcPoly::word(w.clone());
            let t = self.coaction.apply_word(w)?.sub(&Tensor::pure(&[&x, g]));
            vecs.push(t.into_terms().into_iter().collect());
        }
        Ok(kernel(&vecs)
            .into_iter()
            .map(|k| NcPoly::from_terms(words.iter().cloned().zip(k)))
            .filter(|p| !p.is_zero())
            .collect())
    }

    pub fn coinvariants(&self, d: usize) -> Result<Vec<NcPoly<K>>> {
        self.isotypic(&NcPoly::one(), d)
    }

    /// `can(x ⊗ y) = x y₀ ⊗ y₁`.
    pub fn canonical_map(&self, t: &Tensor<K>) -> Result<Tensor<K>> {
        if t.arity() != 2 {
            return Err(Error::SizeMismatch(format!("canonical map needs a 2-tensor, got arity {}", t.arity())));
        }
        self.coaction.apply_leg(t, 1)?.merge(&[2, 1]).normalize(&[self.alg.as_ref(), self.hopf.algebra()])
    }

    fn names2(&self) -> [&[String]; 2] {
        [self.alg.names(), self.hopf.algebra().names()]
    }

    /// Coassociativity and counitality of the coaction on every normal word
    /// up to degree `d`, plus well-definedness on the relations.
    pub fn check_axioms(&self, d: usize) -> CheckReport {
        let mut rep = CheckReport::new(format!("coaction axioms {} over {} (degree {d})", self.name(), self.hopf.name()));
        rep.absorb(self.coaction.check_well_defined());
        let h = self.hopf.algebra();
        let names3 = [self.alg.names(), h.names(), h.names()];
        for w in self.alg.basis(d) {
            let at = self.alg.show_word(&w);
            let r: Result<()> = (|| {
                let dw = self.coaction.apply_word(&w)?;
                let left = self.coaction.apply_leg(&dw, 0)?;
                let right = self.hopf.delta_map().apply_leg(&dw, 1)?;
                rep.record("coassociativity", at.clone(), left == right, || {
                    format!("(δ⊗id)δ = {} but (id⊗Δ)δ = {}", left.display(&names3), right.display(&names3))
                });
                let c = self.hopf.counit_map().apply_leg(&dw, 1)?;
                let x = Tensor::from_poly(&NcPoly::word(w.clone()));
                rep.record("counit law", at.clone(), c == x, || {
                    format!("(id⊗ε)δ = {}", c.display(&[self.alg.names()]))
                });
                Ok(())
            })();
            if let Err(e) = r {
                rep.fail("evaluation", at, e.to_string());
            }
        }
        rep
    }

    /// Colinearity of an algebra map `f: self → other` on generators.
    pub fn check_colinear(&self, f: &LinearMap<K>, other: &ComoduleAlgebra<K>) -> CheckReport {
        let mut rep = CheckReport::new(format!("{} colinear", f.name));
        for g in 0..self.alg.ngens() as u16 {
            let at = self.alg.alphabet().name(g).to_string();
            let r: Result<()> = (|| {
                let x = NcPoly::gen(g);
                let lhs = other.coact(&f.apply_poly(&x)?)?;
                let rhs = f.apply_leg(&self.coact(&x)?, 0)?;
                rep.record("colinear", at.clone(), lhs == rhs, || {
                    let n = other.names2();
                    format!("δ(f(x)) = {} but (f⊗id)δ(x) = {}", lhs.display(&n), rhs.display(&n))
                });
                Ok(())
            })();
            if let Err(e) = r {
                rep.fail("evaluation", at, e.to_string());
            }
        }
        rep
    }
}

/// A cleaving `j: H → P` given as an algebra map on generators, with its
/// convolution inverse `j ∘ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct CleavingMap<K: Field> {
    pub j: LinearMap<K>,
    pub inverse: LinearMap<K>,
}

impl<K: Field> CleavingMap<K> {
    pub fn from_algebra_map(j: LinearMap<K>, h: &HopfAlgebra<K>) -> Result<Self> {
        if j.extension() != Extension::Hom || j.arity() != 1 {
            return Err(Error::PreconditionFail(format!("cleaving {} must be an algebra map into one algebra", j.name)));
        }
        let inverse = j.compose(h.antipode_map(), &format!("{}^-1", j.name))?;
        Ok(CleavingMap { j, inverse })
    }

    pub fn from_exprs(p: &ComoduleAlgebra<K>, images: &[(String, String)]) -> Result<Self> {
        let j = LinearMap::from_exprs(
            &format!("cleaving[{}]", p.name()),
            p.hopf().algebra_arc().clone(),
            vec![p.algebra_arc().clone()],
            Extension::Hom,
            images,
        )?;
        Self::from_algebra_map(j, p.hopf())
    }

    pub fn apply(&self, h: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.j.apply_poly(h)
    }
    pub fn apply_inverse(&self, h: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.inverse.apply_poly(h)
    }

    /// `h ▷ b = j(h₁) b j⁻¹(h₂)`.
    pub fn act(&self, hopf: &HopfAlgebra<K>, h: &NcPoly<K>, b: &NcPoly<K>) -> Result<NcPoly<K>> {
        let p = self.j.codomain()[0].clone();
        let mut acc = NcPoly::zero();
        for (key, c) in hopf.delta(h)?.terms() {
            let l = self.j.apply_word(&key[0])?.to_poly();
            let r = self.inverse.apply_word(&key[1])?.to_poly();
            acc = acc.add(&p.product([&l, b, &r])?.scale(c));
        }
        Ok(acc)
    }

    /// Unitality, colinearity and convolution invertibility on the normal
    /// basis of `H` up to degree `d`.
    pub fn check(&self, p: &ComoduleAlgebra<K>, d: usize) -> CheckReport {
        let mut rep = CheckReport::new(format!("cleaving {} (degree {d})", self.j.name));
        rep.absorb(self.j.check_well_defined());
        let h = p.hopf();
        let pa = p.algebra();
        let names = p.names2();
        let r: Result<()> = (|| {
            let one = self.apply(&NcPoly::one())?;
            rep.record("unital", "1", one.is_one(), || pa.show(&one));
            let unit = h.unit_counit(p.algebra_arc().clone())?;
            let right = convolution(&self.j, &self.inverse, h, d, "j*j^-1")?;
            let left = convolution(&self.inverse, &self.j, h, d, "j^-1*j")?;
            for w in h.algebra().basis(d) {
                let at = h.algebra().show_word(&w);
                let lhs = p.coaction.apply_leg(&self.j.apply_word(&w)?, 0)?;
                let rhs = self.j.apply_leg(&h.delta_word(&w)?, 0)?;
                rep.record("colinear", at.clone(), lhs == rhs, || {
                    format!("δ(j(h)) = {} but (j⊗id)Δ(h) = {}", lhs.display(&names), rhs.display(&names))
                });
                let e = unit.apply_word(&w)?;
                let a = right.apply_word(&w)?;
                let b = left.apply_word(&w)?;
                rep.record("convolution inverse", at, a == e && b == e, || {
                    format!("j*j^-1 = {}, j^-1*j = {}", a.display(&[pa.names()]), b.display(&[pa.names()]))
                });
            }
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail("evaluation", "", e.to_string());
        }
        rep
    }
}

/// A strong connection `ℓ: H → P ⊗ P`, tabulated on the normal basis of `H`
/// up to a degree bound.
#[derive(Clone, Debug)]
pub struct StrongConnection<K: Field> {
    pub ell: LinearMap<K>,
    pub degree: usize,
}

impl<K: Field> StrongConnection<K> {
    /// `ℓ(h) = j⁻¹(h₁) ⊗ j(h₂)`.
    pub fn from_cleaving(c: &CleavingMap<K>, h: &HopfAlgebra<K>, d: usize) -> Result<Self> {
        let p = c.j.codomain()[0].clone();
        let mut table = std::collections::BTreeMap::new();
        for w in h.algebra().basis(d) {
            let t = h
                .delta_word(&w)?
                .expand(|i, v| if i == 0 { c.inverse.apply_word(v) } else { c.j.apply_word(v) })?
                .normalize(&[p.as_ref(), p.as_ref()])?;
            table.insert(w, t);
        }
        let ell = LinearMap::table(&format!("ell[{}]", p.name), h.algebra_arc().clone(), vec![p.clone(), p], table)?;
        Ok(StrongConnection { ell, degree: d })
    }

    /// Replace the value on one basis word, both given in the grammar.
    pub fn with_entry(&self, word: &str, value: &str) -> Result<Self> {
        let h = self.ell.domain().clone();
        let p = self.ell.codomain()[0].clone();
        let w = h.parse(word)?;
        let (key, _) = w.leading().ok_or_else(|| Error::Config("empty word".into()))?;
        let t = crate::ncpoly::parse_expr(value)?.eval_tensor(&[p.alphabet(), p.alphabet()], p.tower(), p.param().cloned())?;
        Ok(StrongConnection { ell: self.ell.with_table_entry(key.clone(), t)?, degree: self.degree })
    }

    pub fn apply(&self, h: &NcPoly<K>) -> Result<Tensor<K>> {
        self.ell.apply(h)
    }

    /// The three strong-connection identities, unitality and the
    /// translation identity `ℓ⟨1⟩ℓ⟨2⟩ = ε(h)` on the tabulated basis.
    pub fn verify(&self, p: &ComoduleAlgebra<K>) -> CheckReport {
        let mut rep = CheckReport::new(format!("strong connection {} (degree {})", self.ell.name, self.degree));
        let h = p.hopf();
        let pa = p.algebra();
        let ha = h.algebra();
        let pp = [pa, pa];
        let r: Result<()> = (|| {
            let one = self.ell.apply_word(&Word::empty())?;
            rep.record("unital", "1", one == Tensor::unit(2), || one.display(&[pa.names(), pa.names()]));
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail("unital", "1", e.to_string());
        }
        for w in ha.basis(self.degree) {
            let at = ha.show_word(&w);
            let r: Result<()> = (|| {
                let x = NcPoly::word(w.clone());
                let l = self.ell.apply_word(&w)?;

                let can = p.coaction.apply_leg(&l, 1)?.merge(&[2, 1]).normalize(&[pa, ha])?;
                let want = Tensor::pure(&[&NcPoly::one(), &x]);
                rep.record("canonical map inverts 1⊗h", at.clone(), can == want, || {
                    format!("ℓ⟨1⟩ℓ⟨2⟩₀⊗ℓ⟨2⟩₁ = {}", can.display(&p.names2()))
                });

                let dw = h.delta_word(&w)?;
                let names3 = [ha.names(), pa.names(), pa.names()];
                let lhs = dw.expand(|i, v| if i == 0 { h.antipode_map().apply_word(v) } else { self.ell.apply_word(v) })?;
                let rhs = p.coaction.apply_leg(&l, 0)?.permute(&[1, 0, 2]);
                rep.record("left leg colinearity", at.clone(), lhs == rhs, || {
                    format!("S(h₁)⊗ℓ(h₂) = {} but ℓ⟨1⟩₁⊗ℓ⟨1⟩₀⊗ℓ⟨2⟩ = {}", lhs.display(&names3), rhs.display(&names3))
                });

                let names3 = [pa.names(), pa.names(), ha.names()];
                let lhs = self.ell.apply_leg(&dw, 0)?;
                let rhs = p.coaction.apply_leg(&l, 1)?;
                rep.record("right leg colinearity", at.clone(), lhs == rhs, || {
                    format!("ℓ(h₁)⊗h₂ = {} but ℓ⟨1⟩⊗ℓ⟨2⟩₀⊗ℓ⟨2⟩₁ = {}", lhs.display(&names3), rhs.display(&names3))
                });

                let m = l.merge(&[2]).normalize(&pp[..1])?;
                let e = h.counit(&x)?;
                let want = Tensor::from_poly(&NcPoly::scalar(e));
                rep.record("translation", at.clone(), m == want, || format!("ℓ⟨1⟩ℓ⟨2⟩ = {}", m.display(&[pa.names()])));
                Ok(())
            })();
            if let Err(e) = r {
                rep.fail("evaluation", at, e.to_string());
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::scalar::RatFunc;

    #[test]
    fn toeplitz_coaction_passes_and_mutant_fails() {
        let t = builtin::toeplitz_z2(None).unwrap();
        assert!(t.check_axioms(4).ok());
        let bad = t.with_coaction_entry("s", "2*s # u").unwrap();
        let rep = bad.check_axioms(3);
        assert!(rep.failures.iter().any(|f| f.check == "counit law" && f.at == "s"));
    }

    #[test]
    fn coinvariants_of_toeplitz_are_even() {
        let t = builtin::toeplitz_z2(None).unwrap();
        let co = t.coinvariants(2).unwrap();
        for p in &co {
            assert!(t.is_coinvariant(p).unwrap());
        }
        let s = t.algebra().gen("s").unwrap();
        assert!(!t.is_coinvariant(&s).unwrap());
        // 1, s s, s s_star, s_star s_star
        assert_eq!(co.len(), 4);
    }

    #[test]
    fn smash_strong_connection_verifies() {
        let sm = builtin::toeplitz_z2_smash(None).unwrap();
        let c = sm.cleaving().unwrap();
        assert!(c.check(sm.comodule(), 4).ok());
        let ell = StrongConnection::from_cleaving(&c, sm.hopf(), 4).unwrap();
        let rep = ell.verify(sm.comodule());
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn corrupted_connection_is_localized() {
        let sm = builtin::toeplitz_z2_smash(None).unwrap();
        let c = sm.cleaving().unwrap();
        let ell = StrongConnection::from_cleaving(&c, sm.hopf(), 2).unwrap();
        let bad = ell.with_entry("u", "u # 1").unwrap();
        let rep = bad.verify(sm.comodule());
        assert!(rep.failures.iter().any(|f| f.check == "canonical map inverts 1⊗h" && f.at == "u"));
        assert!(rep.failures.iter().all(|f| f.at == "u"));
    }

    #[test]
    fn canonical_map_of_unit() {
        let t = builtin::toeplitz_z2(None).unwrap();
        let one = NcPoly::<RatFunc>::one();
        let c = t.canonical_map(&Tensor::pure(&[&one, &one])).unwrap();
        assert_eq!(c, Tensor::unit(2));
    }
}
