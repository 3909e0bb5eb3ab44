use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Covering, Trivialisation};
use crate::comodule::{CleavingMap, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, LinearMap};
use crate::linalg::{kernel, poly_vec, Span};
use crate::ncpoly::{reindex, reindex_word, Algebra, Gen, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

/// `t ∈ M □_C N`: `(δ_M ⊗ id)(t) = (id ⊗ λ_N)(t)` for a right coaction
/// `δ_M: M → M ⊗ C` and a left coaction `λ_N: N → C ⊗ N`.
pub fn cotensor_membership<K: Field>(t: &Tensor<K>, right: &LinearMap<K>, left: &LinearMap<K>) -> Result<bool> {
    if t.arity() != 2 || right.arity() != 2 || left.arity() != 2 {
        return Err(Error::SizeMismatch("cotensor membership needs a 2-tensor and two 2-leg coactions".into()));
    }
    let m = right.domain().clone();
    let n = left.domain().clone();
    let t = t.normalize(&[m.as_ref(), n.as_ref()])?;
    Ok(right.apply_leg(&t, 0)? == left.apply_leg(&t, 1)?)
}

/// The prolonged trivialisation, the declared generators of each cotensor
/// piece inside `P̄_i ⊗ H`, and `ker π` in degree at most two.
#[derive(Clone, Debug)]
pub struct Prolongation<K: Field> {
    pub triv: Trivialisation<K>,
    pub declared: Vec<Vec<NcPoly<K>>>,
    pub kernel: Vec<NcPoly<K>>,
    pub report: CheckReport,
}

pub const KERNEL_DEGREE: usize = 2;

/// `A ⊗ H` with coaction `id ⊗ Δ`, plus the embeddings of both factors.
fn ambient<K: Field>(a: &Algebra<K>, h: &HopfAlgebra<K>, name: &str) -> Result<(ComoduleAlgebra<K>, Vec<Gen>, Vec<Gen>)> {
    let (alg, left, right) = a.tensor(h.algebra(), name)?;
    let alg = Arc::new(alg);
    let mut gens = Vec::with_capacity(alg.ngens());
    for &g in &left {
        gens.push(Tensor::pure(&[&NcPoly::gen(g), &NcPoly::one()]));
    }
    for g in 0..h.algebra().ngens() as Gen {
        gens.push(h.delta_word(&Word::single(g))?.expand(|i, w| {
            let w = if i == 0 { reindex_word(w, &right) } else { w.clone() };
            Ok(Tensor::from_poly(&NcPoly::word(w)))
        })?);
    }
    let c = LinearMap::hom(&format!("coaction[{name}]"), alg.clone(), vec![alg.clone(), h.algebra_arc().clone()], gens)?;
    Ok((ComoduleAlgebra::new(alg, h.clone(), c)?, left, right))
}

/// Read an element of `A ⊗ H` (normal words are an `A` word followed by
/// an `H` word) as a 2-tensor.
fn split_ambient<K: Field>(p: &NcPoly<K>, nleft: usize) -> Tensor<K> {
    let mut t = Tensor::zero(2);
    for (w, c) in p.terms() {
        let cut = w.0.iter().position(|&g| g as usize >= nleft).unwrap_or(w.len());
        let a = Word(w.0[..cut].to_vec());
        let b = Word(w.0[cut..].iter().map(|&g| g - nleft as Gen).collect());
        t.add_term(vec![a, b], c.clone());
    }
    t
}

/// Prolong a trivialisation over `H̄` along a Hopf surjection `π: H → H̄`:
/// pieces `P̄_i □ H` inside `P̄_i ⊗ H`, overlaps `Ō_ij ⊗ H`, maps
/// `π̄^i_j ⊗ id`, cleavings `γ_i(k) = γ̄_i(π(k₁)) ⊗ k₂`. Certifies the
/// declared cotensor generators, `ker π ▷ B_i = 0` and `T_ij(ker π) = 0`,
/// and checks the prolonged trivialisation in degree `d`.
pub fn prolong<K: Field>(bar: &Trivialisation<K>, pi: &LinearMap<K>, h: &HopfAlgebra<K>, d: usize) -> Result<Prolongation<K>> {
    let hbar = bar.hopf();
    if pi.domain().as_ref() != h.algebra() || pi.arity() != 1 || pi.codomain()[0].as_ref() != hbar.algebra() {
        return Err(Error::Config(format!("{} does not map {} onto {}", pi.name, h.name(), hbar.name())));
    }
    let ha = h.algebra();
    let hba = hbar.algebra();
    let words = ha.basis(KERNEL_DEGREE);
    let mut image = Span::new();
    let mut cols = Vec::with_capacity(words.len());
    for w in &words {
        let v = poly_vec(&pi.apply_word(w)?.to_poly());
        image.push(v.clone());
        cols.push(v);
    }
    for g in 0..hba.ngens() as Gen {
        if !image.contains(&poly_vec(&NcPoly::gen(g))) {
            return Err(Error::NotSurjective(format!(
                "{} misses {} in degree at most {KERNEL_DEGREE}",
                pi.name,
                hba.alphabet().name(g)
            )));
        }
    }
    let mut rep = CheckReport::new(format!("prolongation of {} along {}", bar.covering.name, pi.name));
    rep.absorb(pi.check_well_defined());
    for g in 0..ha.ngens() as Gen {
        let x = NcPoly::gen(g);
        let at = ha.alphabet().name(g).to_string();
        let lhs = pi.apply_leg(&pi.apply_leg(&h.delta(&x)?, 0)?, 1)?;
        let rhs = hbar.delta(&pi.apply_poly(&x)?)?;
        rep.record("π is a coalgebra map", at.clone(), lhs == rhs, || {
            format!("(π⊗π)Δ = {} but Δπ = {}", lhs.display(&[hba.names(), hba.names()]), rhs.display(&[hba.names(), hba.names()]))
        });
        let e = hbar.counit(&pi.apply_poly(&x)?)? == h.counit(&x)?;
        rep.record("π preserves the counit", at, e, || "ε̄∘π ≠ ε".into());
    }
    let kern: Vec<NcPoly<K>> = kernel(&cols)
        .into_iter()
        .map(|k| NcPoly::from_terms(words.iter().cloned().zip(k)))
        .filter(|p| !p.is_zero())
        .collect();

    let lgens = (0..ha.ngens() as Gen)
        .map(|g| pi.apply_leg(&h.delta_word(&Word::single(g))?, 0))
        .collect::<Result<Vec<_>>>()?;
    let left_coaction = LinearMap::hom("(π⊗id)Δ", h.algebra_arc().clone(), vec![hbar.algebra_arc().clone(), h.algebra_arc().clone()], lgens)?;

    let n = bar.covering.len();
    let mut pieces = Vec::with_capacity(n);
    let mut cleavings = Vec::with_capacity(n);
    let mut declared = Vec::with_capacity(n);
    let mut base_gens = Vec::with_capacity(n);
    let mut lefts = Vec::with_capacity(n);
    for i in 0..n {
        let pb = bar.covering.piece(i);
        let name = format!("{}□{}", pb.name(), h.name());
        let (amb, left, right) = ambient(pb.algebra(), h, &name)?;
        let a = amb.algebra();
        let gb = bar.cleaving(i);
        let mut imgs = Vec::with_capacity(ha.ngens());
        for g in 0..ha.ngens() as Gen {
            let mut acc = NcPoly::zero();
            for (key, c) in h.delta_word(&Word::single(g))?.terms() {
                let x = gb.apply(&pi.apply_word(&key[0])?.to_poly())?;
                acc = acc.add(&a.mul(&reindex(&x, &left), &NcPoly::word(reindex_word(&key[1], &right)))?.scale(c));
            }
            imgs.push(acc);
        }
        let j = LinearMap::algebra_map(&format!("gamma_{i}"), h.algebra_arc().clone(), amb.algebra_arc().clone(), imgs.clone())?;
        let bgens: Vec<NcPoly<K>> = bar.base_gens(i).iter().map(|b| reindex(b, &left)).collect();
        let mut decl = bgens.clone();
        decl.extend(imgs);
        for x in &decl {
            let t = split_ambient(x, left.len());
            let ok = cotensor_membership(&t, pb.coaction_map(), &left_coaction)?;
            rep.record("declared generator in the cotensor product", format!("piece {i}: {}", a.show(x)), ok, || {
                "(δ⊗id)(t) ≠ (id⊗(π⊗id)Δ)(t)".into()
            });
        }
        cleavings.push(CleavingMap::from_algebra_map(j, h)?);
        declared.push(decl);
        base_gens.push(bgens);
        lefts.push(left);
        pieces.push(amb);
    }
    let mut overlaps = BTreeMap::new();
    let mut olefts = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let ob = bar.covering.overlap(i, j);
            let (amb, left, _) = ambient(ob.algebra(), h, &format!("{}□{}", ob.name(), h.name()))?;
            overlaps.insert((i, j), amb);
            olefts.insert((i, j), left);
        }
    }
    let mut maps = BTreeMap::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let key = (i.min(j), i.max(j));
            let m = bar.covering.map(i, j);
            let nl = lefts[i].len();
            let ol = &olefts[&key];
            let mut gens = Vec::with_capacity(pieces[i].algebra().ngens());
            for g in 0..nl as Gen {
                gens.push(Tensor::from_poly(&reindex(&m.apply_word(&Word::single(g))?.to_poly(), ol)));
            }
            for g in 0..ha.ngens() as Gen {
                gens.push(Tensor::from_poly(&NcPoly::gen(g + ol.len() as Gen)));
            }
            let o: &ComoduleAlgebra<K> = &overlaps[&key];
            maps.insert(
                (i, j),
                LinearMap::hom(&format!("{}⊗id", m.name), pieces[i].algebra_arc().clone(), vec![o.algebra_arc().clone()], gens)?,
            );
        }
    }
    let covering = Covering::from_pieces(&format!("{}□{}", bar.covering.name, h.name()), pieces, overlaps, maps)?;
    let triv = Trivialisation::new(covering, cleavings)?.with_base_gens(base_gens)?;

    for g in &kern {
        let gs = ha.show(g);
        for i in 0..n {
            let p = triv.covering.piece(i).algebra();
            for b in triv.base_gens(i) {
                let v = triv.cleaving(i).act(h, g, b)?;
                rep.record("ker π ▷ B = 0", format!("({gs}) ▷_{i} {}", p.show(b)), v.is_zero(), || p.show(&v));
            }
            for j in i + 1..n {
                let t = triv.transition(i, j, g)?;
                rep.record("T_ij(ker π) = 0", format!("T_{i}{j}({gs})"), t.is_zero(), || triv.covering.overlap(i, j).algebra().show(&t));
            }
        }
    }
    rep.absorb(triv.check(d));
    Ok(Prolongation { triv, declared, kernel: kern, report: rep })
}
