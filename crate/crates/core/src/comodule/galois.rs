use super::{ComoduleAlgebra, StrongConnection};
use crate::error::Result;
use crate::hopf::{HopfAlgebra, LinearMap};
use crate::linalg::{kernel, poly_vec, Span, SparseVec};
use crate::ncpoly::{Algebra, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

/// Outcome of comparing two elements of `P ⊗_B P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balanced {
    Equal,
    /// Separated by an invariant that is well defined on `P ⊗_B P`.
    Unequal(String),
    /// Not separated, and no balancing certificate within the move cap.
    Undecided,
}

pub const BALANCE_RELATOR_CAP: usize = 20_000;

/// Equality in `P ⊗_B P` for `B` generated by `base_gens`. Equality is
/// certified by writing the difference as a combination of balancing
/// relators `xb ⊗ y - x ⊗ by`, searched with a degree slack of at most
/// `max_moves`; inequality by the multiplication map or the canonical map.
pub fn balanced_equal<K: Field>(
    p: &ComoduleAlgebra<K>,
    t1: &Tensor<K>,
    t2: &Tensor<K>,
    base_gens: &[NcPoly<K>],
    max_moves: usize,
) -> Result<Balanced> {
    let pa = p.algebra();
    let d = t1.sub(t2).normalize(&[pa, pa])?;
    if d.is_zero() {
        return Ok(Balanced::Equal);
    }
    let m = d.merge(&[2]).normalize(&[pa])?;
    if !m.is_zero() {
        return Ok(Balanced::Unequal(format!("products differ by {}", m.display(&[pa.names()]))));
    }
    let c = p.canonical_map(&d)?;
    if !c.is_zero() {
        return Ok(Balanced::Unequal(format!(
            "canonical images differ by {}",
            c.display(&[pa.names(), p.hopf().algebra().names()])
        )));
    }
    let deg = d.terms().map(|(k, _)| k[0].len() + k[1].len()).max().unwrap_or(0);
    let target: SparseVec<Vec<Word>, K> = d.into_terms().into_iter().collect();
    let mut span: Span<Vec<Word>, K> = Span::new();
    let mut used = 0usize;
    for slack in 0..=max_moves {
        let basis = pa.basis(deg + slack);
        for x in &basis {
            for y in &basis {
                if x.len() + y.len() != deg + slack && slack > 0 {
                    continue;
                }
                if x.len() + y.len() > deg + slack {
                    continue;
                }
                for b in base_gens {
                    let xp = NcPoly::word(x.clone());
                    let yp = NcPoly::word(y.clone());
                    let r = Tensor::pure(&[&pa.mul(&xp, b)?, &yp]).sub(&Tensor::pure(&[&xp, &pa.mul(b, &yp)?]));
                    span.push(r.into_terms().into_iter().collect());
                    used += 1;
                    if used > BALANCE_RELATOR_CAP {
                        return Ok(if span.contains(&target) { Balanced::Equal } else { Balanced::Undecided });
                    }
                }
            }
        }
        if span.contains(&target) {
            return Ok(Balanced::Equal);
        }
    }
    Ok(Balanced::Undecided)
}

/// Graded-basis criterion for the isotypic component `A_g` of a group-like
/// `g`: `e_i ∈ A_g`, `f_i ∈ A_{g⁻¹}`, `e_j f_i = δ_ij`, `Σ f_i e_i = 1`, and
/// every element of `A_g` up to degree `d` equals `Σ (x f_i) e_i` with
/// coinvariant coefficients.
pub fn graded_basis_check<K: Field>(
    p: &ComoduleAlgebra<K>,
    g: &NcPoly<K>,
    e: &[NcPoly<K>],
    f: &[NcPoly<K>],
    d: usize,
) -> CheckReport {
    let mut rep = CheckReport::new(format!("graded basis of {} in degree {}", p.hopf().show(g), p.name()));
    let pa = p.algebra();
    let r: Result<()> = (|| {
        let ginv = p.hopf().antipode(g)?;
        for x in e {
            let ok = p.coact(x)? == Tensor::pure(&[x, g]);
            rep.record("e_i homogeneous", pa.show(x), ok, || "coaction is not x ⊗ g".into());
        }
        for x in f {
            let ok = p.coact(x)? == Tensor::pure(&[x, &ginv]);
            rep.record("f_i homogeneous", pa.show(x), ok, || "coaction is not x ⊗ g^-1".into());
        }
        for (j, ej) in e.iter().enumerate() {
            for (i, fi) in f.iter().enumerate() {
                let v = pa.mul(ej, fi)?;
                let want = if i == j { NcPoly::one() } else { NcPoly::zero() };
                rep.record("e_j f_i = δ_ij", format!("({j},{i})"), v == want, || pa.show(&v));
            }
        }
        let mut sum = NcPoly::zero();
        for (x, y) in f.iter().zip(e) {
            sum = sum.add(&pa.mul(x, y)?);
        }
        rep.record("Σ f_i e_i = 1", "", sum.is_one(), || pa.show(&sum));
        for x in p.isotypic(g, d)? {
            let mut back = NcPoly::zero();
            let mut coinv = true;
            for (fi, ei) in f.iter().zip(e) {
                let c = pa.mul(&x, fi)?;
                coinv &= p.is_coinvariant(&c)?;
                back = back.add(&pa.mul(&c, ei)?);
            }
            rep.record("spans the component", pa.show(&x), coinv && back == x, || {
                format!("Σ (x f_i) e_i = {}", pa.show(&back))
            });
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("evaluation", "", e.to_string());
    }
    rep
}

/// `f(S(h₁) k h₂) = ℓ(h)⟨1⟩ f(k) ℓ(h)⟨2⟩` on sample pairs `(k, h)`, with
/// `f` defined on a subspace of `H` and valued in `P`.
pub fn miyashita_ulbrich_check<K: Field>(
    p: &ComoduleAlgebra<K>,
    ell: &StrongConnection<K>,
    f: impl Fn(&NcPoly<K>) -> Result<NcPoly<K>>,
    samples: &[(NcPoly<K>, NcPoly<K>)],
) -> CheckReport {
    let mut rep = CheckReport::new("Miyashita-Ulbrich equivariance");
    let h = p.hopf();
    let ha = h.algebra();
    let pa = p.algebra();
    for (k, x) in samples {
        let at = format!("k = {}, h = {}", ha.show(k), ha.show(x));
        let r: Result<()> = (|| {
            let mut conj = NcPoly::zero();
            for (key, c) in h.delta(x)?.terms() {
                let s = h.antipode_map().apply_word(&key[0])?.to_poly();
                conj = conj.add(&ha.product([&s, k, &NcPoly::word(key[1].clone())])?.scale(c));
            }
            let lhs = f(&conj)?;
            let fk = f(k)?;
            let mut rhs = NcPoly::zero();
            for (key, c) in ell.apply(x)?.terms() {
                let a = NcPoly::word(key[0].clone());
                let b = NcPoly::word(key[1].clone());
                rhs = rhs.add(&pa.product([&a, &fk, &b])?.scale(c));
            }
            let d = lhs.sub(&rhs);
            rep.record("f(S(h₁)kh₂) = h^[1] f(k) h^[2]", at.clone(), d.is_zero(), || {
                format!("difference {}", pa.show(&d))
            });
            Ok(())
        })();
        if let Err(e) = r {
            rep.fail("evaluation", at, e.to_string());
        }
    }
    rep
}

/// Generators of the ideal `I_f = P f(D ∩ ker ε)` and the quotient `P/I_f`.
#[derive(Clone, Debug)]
pub struct ReductionIdeal<K: Field> {
    /// Basis of the degree-bounded left coinvariants `D` of `π`.
    pub coinvariants: Vec<NcPoly<K>>,
    pub generators: Vec<NcPoly<K>>,
    pub quotient: Algebra<K>,
}

/// Left coinvariants `D = {h : (π⊗id)Δh = 1⊗h}` up to degree `d`, the
/// images `f(d - ε(d))` and the completed quotient of `P` by them.
pub fn reduction_ideal<K: Field>(
    h: &HopfAlgebra<K>,
    pi: &LinearMap<K>,
    f: impl Fn(&NcPoly<K>) -> Result<NcPoly<K>>,
    p: &Algebra<K>,
    d: usize,
    bound: usize,
) -> Result<ReductionIdeal<K>> {
    let ha = h.algebra();
    let words = ha.basis(d);
    let mut vecs: Vec<SparseVec<Vec<Word>, K>> = Vec::with_capacity(words.len());
    for w in &words {
        let lhs = pi.apply_leg(&h.delta_word(w)?, 0)?;
        let rhs = Tensor::pure(&[&NcPoly::one(), &NcPoly::word(w.clone())]);
        vecs.push(lhs.sub(&rhs).into_terms().into_iter().collect());
    }
    let coinvariants: Vec<NcPoly<K>> = kernel(&vecs)
        .into_iter()
        .map(|k| NcPoly::from_terms(words.iter().cloned().zip(k)))
        .filter(|x| !x.is_zero())
        .collect();
    let mut seen = Span::new();
    let mut generators = Vec::new();
    for x in &coinvariants {
        let plus = x.sub(&NcPoly::scalar(h.counit(x)?));
        if plus.is_zero() {
            continue;
        }
        let g = p.normal_form(&f(&plus)?)?;
        if !g.is_zero() && seen.push(poly_vec(&g)) {
            generators.push(g);
        }
    }
    let quotient = p.quotient(&format!("{}/I", p.name), &generators, bound)?;
    Ok(ReductionIdeal { coinvariants, generators, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn balanced_tensor_moves_base_elements() {
        let sm = builtin::toeplitz_z2_smash(None).unwrap();
        let p = sm.comodule();
        let a = sm.algebra();
        let s = a.gen("s").unwrap();
        let st = a.gen("s_star").unwrap();
        let base = vec![a.mul(&s, &s).unwrap(), a.mul(&s, &st).unwrap(), a.mul(&st, &st).unwrap()];
        let one = NcPoly::one();
        let u = a.gen("u").unwrap();
        let ss = base[0].clone();
        let t1 = Tensor::pure(&[&ss, &u]);
        let t2 = Tensor::pure(&[&one, &a.mul(&ss, &u).unwrap()]);
        assert_eq!(balanced_equal(p, &t1, &t2, &base, 2).unwrap(), Balanced::Equal);
        let t3 = Tensor::pure(&[&u, &one]);
        let t4 = Tensor::pure(&[&one, &u]);
        assert!(matches!(balanced_equal(p, &t3, &t4, &base, 2).unwrap(), Balanced::Unequal(_)));
    }

    #[test]
    fn graded_basis_of_laurent_polynomials() {
        let h = builtin::o_u1(None).unwrap();
        let p = ComoduleAlgebra::regular(&h).unwrap();
        let u = h.algebra().gen("u").unwrap();
        let ui = h.algebra().gen("u_inv").unwrap();
        let rep = graded_basis_check(&p, &u, std::slice::from_ref(&u), std::slice::from_ref(&ui), 4);
        assert!(rep.ok(), "{:?}", rep.failures);
        let bad = graded_basis_check(&p, &u, std::slice::from_ref(&u), std::slice::from_ref(&u), 2);
        assert!(!bad.ok());
    }

    #[test]
    fn coinvariants_of_the_square_map() {
        let h = builtin::o_u1(None).unwrap();
        let (_, pi) = builtin::u1_to_z2().unwrap();
        let red = reduction_ideal(&h, &pi, |x| Ok(x.clone()), h.algebra(), 4, 6).unwrap();
        // 1, u^2, u^4, u_inv^2, u_inv^4
        assert_eq!(red.coinvariants.len(), 5);
        assert_eq!(red.generators.len(), 4);
        let q = &red.quotient;
        let u = q.gen("u").unwrap();
        assert!(q.pow(&u, 2).unwrap().is_one());
    }
}
