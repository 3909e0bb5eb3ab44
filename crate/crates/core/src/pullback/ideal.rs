use std::collections::BTreeMap;

use crate::comodule::{ComoduleAlgebra, StrongConnection};
use crate::error::{Error, Result};
use crate::linalg::{kernel, poly_vec};
use crate::ncpoly::{Algebra, NcPoly, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

use super::COVERING_COMPLETION_BOUND;

/// `x ∈ ⟨gens⟩`, certified by reduction to zero in the completed quotient.
/// A nonzero normal form is conclusive only when the completion closed
/// within the bound.
pub fn in_ideal<K: Field>(a: &Algebra<K>, gens: &[NcPoly<K>], x: &NcPoly<K>) -> Result<bool> {
    let gens: Vec<NcPoly<K>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(a.normal_form(x)?.is_zero());
    }
    match a.quotient(&format!("{}/I", a.name), &gens, COVERING_COMPLETION_BOUND) {
        Ok(q) => Ok(q.normal_form(x)?.is_zero()),
        Err(Error::Inconsistent(_)) => Ok(true),
        Err(e) => Err(e),
    }
}

/// `K = LP` for a subcomodule ideal `K` and an ideal `L` of the
/// coinvariants: `K` is a subcomodule, each `K` generator splits through
/// `s(p) = p₀ℓ(p₁)⟨1⟩ ⊗ ℓ(p₁)⟨2⟩` with left legs in `L`, `L ⊆ K`, and the
/// coinvariants of `K` up to degree `d` lie in `L`.
pub fn ideal_base_correspondence<K: Field>(
    p: &ComoduleAlgebra<K>,
    ell: &StrongConnection<K>,
    k_gens: &[NcPoly<K>],
    l_gens: &[NcPoly<K>],
    d: usize,
) -> CheckReport {
    let pa = p.algebra();
    let h = p.hopf();
    let mut rep = CheckReport::new(format!("ideal correspondence in {} (degree {d})", p.name()));
    let r: Result<()> = (|| {
        let quotient = match pa.quotient(&format!("{}/K", pa.name), k_gens, COVERING_COMPLETION_BOUND) {
            Ok(q) => Some(q),
            Err(Error::Inconsistent(_)) => None,
            Err(e) => return Err(e),
        };
        for g in k_gens {
            let at = pa.show(g);
            if let Some(q) = &quotient {
                let t = p.coact(g)?.normalize(&[q, h.algebra()])?;
                rep.record("K is a subcomodule", at.clone(), t.is_zero(), || {
                    format!("δ(g) leaves {} modulo K", t.display(&[q.names(), h.algebra().names()]))
                });
            }
            let mut legs: BTreeMap<Word, NcPoly<K>> = BTreeMap::new();
            let mut back = NcPoly::zero();
            for (key, c) in p.coact(g)?.terms() {
                let x0 = NcPoly::word(key[0].clone());
                for (lk, lc) in ell.apply(&NcPoly::word(key[1].clone()))?.terms() {
                    let b = pa.mul(&x0, &NcPoly::word(lk[0].clone()))?.scale(&(c.clone() * lc.clone()));
                    let e = legs.entry(lk[1].clone()).or_default();
                    *e = e.add(&b);
                    back = back.add(&pa.mul(&b, &NcPoly::word(lk[1].clone()))?);
                }
            }
            let diff = back.sub(g);
            rep.record("splitting reassembles", at.clone(), diff.is_zero(), || format!("difference {}", pa.show(&diff)));
            for (w, b) in legs {
                if b.is_zero() {
                    continue;
                }
                let loc = format!("{at} at leg {}", pa.show_word(&w));
                let inv = p.is_coinvariant(&b)?;
                rep.record("splitting lands in B", loc.clone(), inv, || pa.show(&b));
                let inl = in_ideal(pa, l_gens, &b)?;
                rep.record("K ⊆ LP", loc, inl, || format!("{} is not in L P", pa.show(&b)));
            }
        }
        for l in l_gens {
            let ok = in_ideal(pa, k_gens, l)?;
            rep.record("L ⊆ K", pa.show(l), ok, || format!("{} is not in K", pa.show(l)));
        }
        let co = p.coinvariants(d)?;
        let inside: Vec<NcPoly<K>> = match &quotient {
            None => co,
            Some(q) => {
                let cols = co.iter().map(|b| Ok(poly_vec(&q.normal_form(b)?))).collect::<Result<Vec<_>>>()?;
                kernel(&cols)
                    .into_iter()
                    .map(|k| {
                        let mut acc = NcPoly::zero();
                        for (c, b) in k.iter().zip(&co) {
                            acc = acc.add(&b.scale(c));
                        }
                        acc
                    })
                    .filter(|x| !x.is_zero())
                    .collect()
            }
        };
        for b in inside {
            let ok = in_ideal(pa, l_gens, &b)?;
            rep.record("B ∩ K ⊆ L", pa.show(&b), ok, || format!("coinvariant {} lies in K but not in L", pa.show(&b)));
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("evaluation", "", e.to_string());
    }
    rep
}
