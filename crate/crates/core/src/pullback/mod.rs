//! Finite coverings by quotient maps, multipullbacks, piecewise
//! trivialisations, transition functions, cotensor prolongations and the
//! reducibility criterion.

mod ideal;
mod instances;
mod prolong;

use std::collections::BTreeMap;

pub use ideal::{ideal_base_correspondence, in_ideal};
pub use instances::{
    axes_covering, covering_from_json, hopf_fibration_patches, sphere_trivialisation, CoveringFile, CoveringPiece, PresentationRef,
    SHIPPED_COVERINGS,
};
pub use prolong::{cotensor_membership, prolong, Prolongation};

use crate::comodule::{CleavingMap, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{convolution, HopfAlgebra, LinearMap};
use crate::linalg::{intersection, kernel, poly_vec, Span, SparseVec};
use crate::ncpoly::{Algebra, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

pub const MAX_PIECES: usize = 8;
pub const COVERING_COMPLETION_BOUND: usize = 6;

/// Base algebra and kernel generators of a covering given by ideals.
#[derive(Clone, Debug)]
pub struct KernelData<K: Field> {
    pub base: ComoduleAlgebra<K>,
    pub kernels: Vec<Vec<NcPoly<K>>>,
    pub projections: Vec<LinearMap<K>>,
}

/// Pieces `P_i`, overlaps `O_ij = P/(ker π_i + ker π_j)` for `i < j`, and
/// the double-quotient maps `π^i_j: P_i → O_ij` for every ordered pair.
#[derive(Clone, Debug)]
pub struct Covering<K: Field> {
    pub name: String,
    pieces: Vec<ComoduleAlgebra<K>>,
    overlaps: BTreeMap<(usize, usize), ComoduleAlgebra<K>>,
    maps: BTreeMap<(usize, usize), LinearMap<K>>,
    kernels: Option<KernelData<K>>,
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn identity_images<K: Field>(n: usize) -> Vec<Tensor<K>> {
    (0..n as u16).map(|g| Tensor::from_poly(&NcPoly::gen(g))).collect()
}

/// Degree-`d` part of the kernel of the quotient map onto `target` (same
/// alphabet as the words), as vectors over the words.
fn kernel_in_degree<K: Field>(target: &Algebra<K>, words: &[Word]) -> Result<Vec<SparseVec<Word, K>>> {
    let mut cols = Vec::with_capacity(words.len());
    for w in words {
        cols.push(poly_vec(&target.normal_form(&NcPoly::word(w.clone()))?));
    }
    Ok(kernel(&cols)
        .into_iter()
        .map(|k| words.iter().cloned().zip(k).filter(|(_, c)| !c.is_zero()).collect::<SparseVec<Word, K>>())
        .filter(|v| !v.is_empty())
        .collect())
}

fn vec_poly<K: Field>(v: &SparseVec<Word, K>) -> NcPoly<K> {
    NcPoly::from_terms(v.iter().map(|(w, c)| (w.clone(), c.clone())))
}

impl<K: Field> Covering<K> {
    /// Covering of `base` by the quotients `base / K_i`.
    pub fn from_kernels(name: &str, base: ComoduleAlgebra<K>, kernels: Vec<Vec<NcPoly<K>>>, bound: usize) -> Result<Self> {
        if kernels.is_empty() || kernels.len() > MAX_PIECES {
            return Err(Error::Config(format!("covering {name} has {} pieces, expected 1..={MAX_PIECES}", kernels.len())));
        }
        let n = kernels.len();
        let mut pieces = Vec::with_capacity(n);
        let mut projections = Vec::with_capacity(n);
        for (i, k) in kernels.iter().enumerate() {
            let p = base.quotient(&format!("{name}_{i}"), k, bound)?;
            let ngens = p.algebra().ngens();
            projections.push(LinearMap::hom(
                &format!("pi_{i}"),
                base.algebra_arc().clone(),
                vec![p.algebra_arc().clone()],
                identity_images(ngens),
            )?);
            pieces.push(p);
        }
        let mut overlaps = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut both = kernels[i].clone();
                both.extend(kernels[j].iter().cloned());
                let o = base.quotient(&format!("{name}_{i}{j}"), &both, bound)?;
                for (a, b) in [(i, j), (j, i)] {
                    let ngens = pieces[a].algebra().ngens();
                    maps.insert(
                        (a, b),
                        LinearMap::hom(
                            &format!("pi^{a}_{b}"),
                            pieces[a].algebra_arc().clone(),
                            vec![o.algebra_arc().clone()],
                            identity_images(ngens),
                        )?,
                    );
                }
                overlaps.insert((i, j), o);
            }
        }
        Ok(Covering { name: name.into(), pieces, overlaps, maps, kernels: Some(KernelData { base, kernels, projections }) })
    }

    /// Covering given directly by pieces, overlaps and double-quotient
    /// maps; `maps[(i, j)]` sends `P_i` into `overlaps[(min, max)]`.
    pub fn from_pieces(
        name: &str,
        pieces: Vec<ComoduleAlgebra<K>>,
        overlaps: BTreeMap<(usize, usize), ComoduleAlgebra<K>>,
        maps: BTreeMap<(usize, usize), LinearMap<K>>,
    ) -> Result<Self> {
        let n = pieces.len();
        if n == 0 || n > MAX_PIECES {
            return Err(Error::Config(format!("covering {name} has {n} pieces, expected 1..={MAX_PIECES}")));
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let o = overlaps
                    .get(&pair(i, j))
                    .ok_or_else(|| Error::Config(format!("covering {name}: no overlap for pieces {i},{j}")))?;
                let m = maps.get(&(i, j)).ok_or_else(|| Error::Config(format!("covering {name}: no map pi^{i}_{j}")))?;
                if m.domain().as_ref() != pieces[i].algebra() || m.arity() != 1 || m.codomain()[0].as_ref() != o.algebra() {
                    return Err(Error::Config(format!("covering {name}: pi^{i}_{j} does not map piece {i} into overlap {i},{j}")));
                }
            }
        }
        Ok(Covering { name: name.into(), pieces, overlaps, maps, kernels: None })
    }

    /// The one-piece covering.
    pub fn single(piece: ComoduleAlgebra<K>) -> Self {
        Covering {
            name: piece.name().to_string(),
            pieces: vec![piece],
            overlaps: BTreeMap::new(),
            maps: BTreeMap::new(),
            kernels: None,
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
    pub fn piece(&self, i: usize) -> &ComoduleAlgebra<K> {
        &self.pieces[i]
    }
    pub fn pieces(&self) -> &[ComoduleAlgebra<K>] {
        &self.pieces
    }
    pub fn overlap(&self, i: usize, j: usize) -> &ComoduleAlgebra<K> {
        &self.overlaps[&pair(i, j)]
    }
    pub fn map(&self, i: usize, j: usize) -> &LinearMap<K> {
        &self.maps[&(i, j)]
    }
    pub fn kernel_data(&self) -> Option<&KernelData<K>> {
        self.kernels.as_ref()
    }
    pub fn hopf(&self) -> &HopfAlgebra<K> {
        self.pieces[0].hopf()
    }

    /// `π^i_j(p)` in the overlap.
    pub fn double_quotient(&self, i: usize, j: usize, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        self.maps[&(i, j)].apply_poly(p)
    }

    /// `χ(p) = (π_i(p))_i` for a covering given by kernels.
    pub fn chi(&self, p: &NcPoly<K>) -> Result<Vec<NcPoly<K>>> {
        let kd = self.kernels.as_ref().ok_or_else(|| Error::Config(format!("covering {} has no base algebra", self.name)))?;
        kd.projections.iter().map(|f| f.apply_poly(p)).collect()
    }

    /// First pair whose double-quotient images disagree, with the
    /// difference `π^i_j(p_i) - π^j_i(p_j)`.
    pub fn pullback_defect(&self, tuple: &[NcPoly<K>]) -> Result<Option<(usize, usize, NcPoly<K>)>> {
        if tuple.len() != self.len() {
            return Err(Error::SizeMismatch(format!("tuple of length {} for {} pieces", tuple.len(), self.len())));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let d = self.double_quotient(i, j, &tuple[i])?.sub(&self.double_quotient(j, i, &tuple[j])?);
                if !d.is_zero() {
                    return Ok(Some((i, j, d)));
                }
            }
        }
        Ok(None)
    }

    pub fn multipullback_membership(&self, tuple: &[NcPoly<K>]) -> Result<bool> {
        Ok(self.pullback_defect(tuple)?.is_none())
    }

    /// A nonzero element of `∩_i ker π_i` of degree at most `d`, if any.
    pub fn intersection_witness(&self, d: usize) -> Result<Option<NcPoly<K>>> {
        let kd = self.kernels.as_ref().ok_or_else(|| Error::Config(format!("covering {} has no base algebra", self.name)))?;
        let words = kd.base.algebra().basis(d);
        let mut cols: Vec<SparseVec<(usize, Word), K>> = vec![SparseVec::new(); words.len()];
        for (i, p) in self.pieces.iter().enumerate() {
            for (col, w) in cols.iter_mut().zip(&words) {
                for (v, c) in p.algebra().normal_form(&NcPoly::word(w.clone()))?.terms() {
                    col.insert((i, v.clone()), c.clone());
                }
            }
        }
        Ok(kernel(&cols).into_iter().map(|k| NcPoly::from_terms(words.iter().cloned().zip(k))).find(|p| !p.is_zero()))
    }

    /// A witness against `(K_i + K_j) ∩ K_k = K_i ∩ K_k + K_j ∩ K_k` in
    /// degree at most `d`, over all triples of distinct pieces.
    pub fn distributivity_witness(&self, d: usize) -> Result<Option<((usize, usize, usize), NcPoly<K>)>> {
        let kd = self.kernels.as_ref().ok_or_else(|| Error::Config(format!("covering {} has no base algebra", self.name)))?;
        let words = kd.base.algebra().basis(d);
        let n = self.len();
        let ker: Vec<_> = self.pieces.iter().map(|p| kernel_in_degree(p.algebra(), &words)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let sum = kernel_in_degree(self.overlap(i, j).algebra(), &words)?;
                for k in (0..n).filter(|&k| k != i && k != j) {
                    let lhs = intersection(&sum, &ker[k]);
                    let mut rhs = Span::new();
                    for v in intersection(&ker[i], &ker[k]).into_iter().chain(intersection(&ker[j], &ker[k])) {
                        rhs.push(v);
                    }
                    if let Some(v) = lhs.iter().find(|v| !rhs.contains(v)) {
                        return Ok(Some(((i, j, k), vec_poly(v))));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Double-quotient maps well defined and colinear; for a covering
    /// given by kernels also the projections, the kernel-intersection
    /// certificate and the distributivity surrogate in degree `d`.
    pub fn check(&self, d: usize) -> CheckReport {
        let mut rep = CheckReport::new(format!("covering {} (degree {d})", self.name));
        for ((i, j), m) in &self.maps {
            rep.absorb(m.check_well_defined());
            rep.absorb(self.pieces[*i].check_colinear(m, self.overlap(*i, *j)));
        }
        let Some(kd) = &self.kernels else {
            rep.note("covering given by pieces: kernel certificates do not apply");
            return rep;
        };
        for (f, p) in kd.projections.iter().zip(&self.pieces) {
            rep.absorb(kd.base.check_colinear(f, p));
        }
        let base = kd.base.algebra();
        match self.intersection_witness(d) {
            Ok(w) => rep.record("kernels intersect trivially", format!("degree {d}"), w.is_none(), || {
                format!("{} lies in every kernel", base.show(w.as_ref().unwrap()))
            }),
            Err(e) => rep.fail("kernels intersect trivially", format!("degree {d}"), e.to_string()),
        }
        match self.distributivity_witness(d) {
            Ok(w) => rep.record("kernel lattice distributive", format!("degree {d}"), w.is_none(), || {
                let ((i, j, k), p) = w.as_ref().unwrap();
                format!("{} lies in (K{i}+K{j})∩K{k} but not in K{i}∩K{k}+K{j}∩K{k}", base.show(p))
            }),
            Err(e) => rep.fail("kernel lattice distributive", format!("degree {d}"), e.to_string()),
        }
        rep
    }
}

/// Verdict of the reducibility criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Reducible,
    Obstructed(String),
}

#[derive(Clone, Debug)]
pub struct Reducibility<K: Field> {
    pub verdict: Verdict,
    pub report: CheckReport,
    /// Reduced pieces over `H/J` with the descended cleavings.
    pub reduced: Option<Trivialisation<K>>,
}

/// A covering with a cleaving `γ_i: H → P_i` on every piece and declared
/// generators of each piece's coinvariants.
#[derive(Clone, Debug)]
pub struct Trivialisation<K: Field> {
    pub covering: Covering<K>,
    cleavings: Vec<CleavingMap<K>>,
    base_gens: Vec<Vec<NcPoly<K>>>,
}

pub const BASE_GENERATOR_DEGREE: usize = 2;

impl<K: Field> Trivialisation<K> {
    /// Base generators default to the nonscalar coinvariants of degree at
    /// most two.
    pub fn new(covering: Covering<K>, cleavings: Vec<CleavingMap<K>>) -> Result<Self> {
        if cleavings.len() != covering.len() {
            return Err(Error::SizeMismatch(format!("{} cleavings for {} pieces", cleavings.len(), covering.len())));
        }
        for (i, c) in cleavings.iter().enumerate() {
            let p = covering.piece(i);
            if c.j.domain().as_ref() != p.hopf().algebra() || c.j.codomain()[0].as_ref() != p.algebra() {
                return Err(Error::Config(format!("cleaving {} does not map into piece {i}", c.j.name)));
            }
        }
        let mut base_gens = Vec::with_capacity(covering.len());
        for p in covering.pieces() {
            let mut gens = Vec::new();
            for x in p.coinvariants(BASE_GENERATOR_DEGREE)? {
                let x = x.sub(&NcPoly::scalar(x.coeff(&Word::empty())));
                if !x.is_zero() {
                    gens.push(x);
                }
            }
            base_gens.push(gens);
        }
        Ok(Trivialisation { covering, cleavings, base_gens })
    }

    pub fn with_base_gens(mut self, gens: Vec<Vec<NcPoly<K>>>) -> Result<Self> {
        if gens.len() != self.covering.len() {
            return Err(Error::SizeMismatch(format!("{} base generator lists for {} pieces", gens.len(), self.covering.len())));
        }
        self.base_gens = gens;
        Ok(self)
    }

    pub fn hopf(&self) -> &HopfAlgebra<K> {
        self.covering.hopf()
    }
    pub fn cleaving(&self, i: usize) -> &CleavingMap<K> {
        &self.cleavings[i]
    }
    pub fn base_gens(&self, i: usize) -> &[NcPoly<K>] {
        &self.base_gens[i]
    }

    /// Target algebra of `T_ij`: the overlap, or the piece when `i = j`.
    pub fn transition_target(&self, i: usize, j: usize) -> &ComoduleAlgebra<K> {
        if i == j {
            self.covering.piece(i)
        } else {
            self.covering.overlap(i, j)
        }
    }

    /// `T_ij(h) = π^i_j(γ_i(h₁)) π^j_i(γ_j(S(h₂)))`.
    pub fn transition(&self, i: usize, j: usize, h: &NcPoly<K>) -> Result<NcPoly<K>> {
        let target = self.transition_target(i, j).algebra();
        let mut acc = NcPoly::zero();
        for (key, c) in self.hopf().delta(h)?.terms() {
            let mut a = self.cleavings[i].j.apply_word(&key[0])?.to_poly();
            let mut b = self.cleavings[j].inverse.apply_word(&key[1])?.to_poly();
            if i != j {
                a = self.covering.double_quotient(i, j, &a)?;
                b = self.covering.double_quotient(j, i, &b)?;
            }
            acc = acc.add(&target.mul(&a, &b)?.scale(c));
        }
        Ok(acc)
    }

    /// `T_ij` tabulated on the normal basis of `H` up to degree `d`.
    pub fn transition_table(&self, i: usize, j: usize, d: usize) -> Result<LinearMap<K>> {
        let h = self.hopf();
        let mut table = BTreeMap::new();
        for w in h.algebra().basis(d) {
            table.insert(w.clone(), Tensor::from_poly(&self.transition(i, j, &NcPoly::word(w))?));
        }
        LinearMap::table(&format!("T_{i}{j}"), h.algebra_arc().clone(), vec![self.transition_target(i, j).algebra_arc().clone()], table)
    }

    /// Covering and cleaving checks plus `T_ii = ε`, `T_ij * T_ji = ε` and
    /// coinvariance of every tabulated `T_ij(h)`.
    pub fn check(&self, d: usize) -> CheckReport {
        let mut rep = CheckReport::new(format!("trivialisation of {} (degree {d})", self.covering.name));
        rep.absorb(self.covering.check(d));
        for (i, c) in self.cleavings.iter().enumerate() {
            rep.absorb(c.check(self.covering.piece(i), d));
        }
        let h = self.hopf();
        let n = self.covering.len();
        let r: Result<()> = (|| {
            let mut tables = BTreeMap::new();
            for i in 0..n {
                for j in 0..n {
                    tables.insert((i, j), self.transition_table(i, j, d)?);
                }
            }
            for w in h.algebra().basis(d) {
                let hw = h.algebra().show_word(&w);
                let e = NcPoly::scalar(h.counit(&NcPoly::word(w.clone()))?);
                for i in 0..n {
                    let t = tables[&(i, i)].apply_word(&w)?.to_poly();
                    rep.record("T_ii = ε", format!("T_{i}{i}({hw})"), t == e, || self.covering.piece(i).algebra().show(&t));
                }
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        let o = self.covering.overlap(i, j);
                        let t = tables[&(i, j)].apply_word(&w)?.to_poly();
                        let inv = o.is_coinvariant(&t)?;
                        rep.record("transition coinvariant", format!("T_{i}{j}({hw})"), inv, || {
                            format!("δ(T) = {}", o.coact(&t).map(|x| x.display(&[o.algebra().names(), h.algebra().names()])).unwrap_or_default())
                        });
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let conv = convolution(&tables[&(i, j)], &tables[&(j, i)], h, d, &format!("T_{i}{j}*T_{j}{i}"))?;
                    let o = self.covering.overlap(i, j).algebra();
                    for w in h.algebra().basis(d) {
                        let v = conv.apply_word(&w)?.to_poly();
                        let e = NcPoly::scalar(h.counit(&NcPoly::word(w.clone()))?);
                        rep.record("T_ij * T_ji = ε", format!("({i},{j}) at {}", h.algebra().show_word(&w)), v == e, || o.show(&v));
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail("evaluation", "transition functions", e.to_string());
        }
        rep
    }

    /// `(b_i γ_i(f))_i`, failing with INCOMPATIBLE when two entries have
    /// different double-quotient images.
    pub fn piece_glue(&self, base_tuple: &[NcPoly<K>], fiber: &NcPoly<K>) -> Result<Vec<NcPoly<K>>> {
        if base_tuple.len() != self.covering.len() {
            return Err(Error::SizeMismatch(format!("base tuple of length {} for {} pieces", base_tuple.len(), self.covering.len())));
        }
        let mut out = Vec::with_capacity(base_tuple.len());
        for (i, b) in base_tuple.iter().enumerate() {
            let p = self.covering.piece(i).algebra();
            out.push(p.mul(b, &self.cleavings[i].apply(fiber)?)?);
        }
        if let Some((i, j, d)) = self.covering.pullback_defect(&out)? {
            return Err(Error::Incompatible { i, j, difference: self.covering.overlap(i, j).algebra().show(&d) });
        }
        Ok(out)
    }

    /// Reducibility along the Hopf ideal generated by `ideal`: every
    /// `T_ij(g)` vanishes and every `g ▷_i b` vanishes on the base
    /// generators. On success the pieces, overlaps and cleavings descend
    /// to `H/J`, and the descended trivialisation is checked in degree `d`.
    pub fn reducibility_check(&self, ideal: &[NcPoly<K>], d: usize) -> Result<Reducibility<K>> {
        let h = self.hopf();
        let ha = h.algebra();
        let ideal: Vec<NcPoly<K>> =
            ideal.iter().map(|g| ha.normal_form(g)).collect::<Result<Vec<_>>>()?.into_iter().filter(|g| !g.is_zero()).collect();
        let mut rep = CheckReport::new(format!("reducibility of {} along ⟨{}⟩", self.covering.name, show_list(ha, &ideal)));
        let n = self.covering.len();
        for g in &ideal {
            let gs = ha.show(g);
            for i in 0..n {
                for j in i + 1..n {
                    let t = self.transition(i, j, g)?;
                    rep.record("T_ij(J) = 0", format!("T_{i}{j}({gs})"), t.is_zero(), || {
                        self.covering.overlap(i, j).algebra().show(&t)
                    });
                }
                let p = self.covering.piece(i).algebra();
                for b in &self.base_gens[i] {
                    let v = self.cleavings[i].act(h, g, b)?;
                    rep.record("J ▷ B = 0", format!("({gs}) ▷_{i} {}", p.show(b)), v.is_zero(), || p.show(&v));
                }
            }
        }
        if let Some(f) = rep.first_failure() {
            let w = format!("{} at {}: {}", f.check, f.at, f.detail);
            return Ok(Reducibility { verdict: Verdict::Obstructed(w), report: rep, reduced: None });
        }
        if ideal.is_empty() {
            rep.note("J = 0: the trivialisation is its own reduction");
            return Ok(Reducibility { verdict: Verdict::Reducible, report: rep, reduced: Some(self.clone()) });
        }
        let bound = COVERING_COMPLETION_BOUND;
        let (hq, _) = h.quotient(&format!("{}/J", h.name()), &ideal, bound)?;
        let mut pieces = Vec::with_capacity(n);
        let mut cleavings = Vec::with_capacity(n);
        for i in 0..n {
            let p = self.covering.piece(i);
            let gens: Vec<NcPoly<K>> = ideal.iter().map(|g| self.cleavings[i].apply(g)).collect::<Result<_>>()?;
            let q = p.quotient_over(&format!("{}/J", p.name()), &gens, &hq, bound)?;
            let imgs = self.cleavings[i].j.gen_images().iter().map(|t| t.to_poly()).collect();
            let j = LinearMap::algebra_map(&format!("{}/J", self.cleavings[i].j.name), hq.algebra_arc().clone(), q.algebra_arc().clone(), imgs)?;
            cleavings.push(CleavingMap::from_algebra_map(j, &hq)?);
            pieces.push(q);
        }
        let mut overlaps = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for ((i, j), o) in &self.covering.overlaps {
            let mut gens = Vec::new();
            for (a, b) in [(*i, *j), (*j, *i)] {
                for g in &ideal {
                    gens.push(self.covering.double_quotient(a, b, &self.cleavings[a].apply(g)?)?);
                }
            }
            overlaps.insert((*i, *j), o.quotient_over(&format!("{}/J", o.name()), &gens, &hq, bound)?);
        }
        for ((i, j), m) in &self.covering.maps {
            let o: &ComoduleAlgebra<K> = &overlaps[&pair(*i, *j)];
            let gens = m.gen_images().to_vec();
            maps.insert((*i, *j), LinearMap::hom(&format!("{}/J", m.name), pieces[*i].algebra_arc().clone(), vec![o.algebra_arc().clone()], gens)?);
        }
        let covering = Covering { name: format!("{}/J", self.covering.name), pieces, overlaps, maps, kernels: None };
        let base_gens = self
            .base_gens
            .iter()
            .zip(covering.pieces())
            .map(|(gs, p)| gs.iter().map(|g| p.algebra().normal_form(g)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let reduced = Trivialisation { covering, cleavings, base_gens };
        let sub = reduced.check(d);
        let verdict = match sub.first_failure() {
            None => Verdict::Reducible,
            Some(f) => Verdict::Obstructed(format!("descended data fails {} at {}: {}", f.check, f.at, f.detail)),
        };
        rep.absorb(sub);
        Ok(Reducibility { verdict, report: rep, reduced: Some(reduced) })
    }
}

fn show_list<K: Field>(a: &Algebra<K>, v: &[NcPoly<K>]) -> String {
    v.iter().map(|p| a.show(p)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests;
