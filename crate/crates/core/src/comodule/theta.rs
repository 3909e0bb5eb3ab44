use super::SmashProduct;
use crate::error::{Error, Result};
use crate::linalg::{poly_vec, Span};
use crate::ncpoly::{NcPoly, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

/// Values `ϑ(k) ∈ B` on a finite list of keys `k ∈ H`, extended linearly
/// over their span.
#[derive(Clone, Debug)]
pub struct ThetaTable<K: Field> {
    pub entries: Vec<(NcPoly<K>, NcPoly<K>)>,
}

impl<K: Field> ThetaTable<K> {
    pub fn new(entries: Vec<(NcPoly<K>, NcPoly<K>)>) -> Self {
        ThetaTable { entries }
    }

    /// `ϑ(x)` for `x` in the span of the keys.
    pub fn eval(&self, x: &NcPoly<K>) -> Result<Option<NcPoly<K>>> {
        if x.is_zero() {
            return Ok(Some(NcPoly::zero()));
        }
        let mut span = Span::new();
        for (k, _) in &self.entries {
            span.push(poly_vec(k));
        }
        let Some(coeffs) = span.express(&poly_vec(x)) else { return Ok(None) };
        let mut acc = NcPoly::zero();
        for (c, (_, v)) in coeffs.iter().zip(&self.entries) {
            acc = acc.add(&v.scale(c));
        }
        Ok(Some(acc))
    }
}

/// `ϑ_f = (id ⊗ ε) ∘ f` for `f` with values in the smash product.
pub fn theta_from_map<K: Field>(
    sm: &SmashProduct<K>,
    f: impl Fn(&NcPoly<K>) -> Result<NcPoly<K>>,
    keys: &[NcPoly<K>],
) -> Result<ThetaTable<K>> {
    let mut entries = Vec::with_capacity(keys.len());
    for k in keys {
        let t = sm.split(&f(k)?)?;
        let v = sm.hopf().counit_map().apply_leg(&t, 1)?.to_poly();
        entries.push((k.clone(), v));
    }
    Ok(ThetaTable::new(entries))
}

/// Group `Δk` by its right leg: `Σ_w L_w ⊗ w`.
fn by_right_leg<K: Field>(sm: &SmashProduct<K>, k: &NcPoly<K>) -> Result<Vec<(NcPoly<K>, Word)>> {
    let mut groups: std::collections::BTreeMap<Word, NcPoly<K>> = std::collections::BTreeMap::new();
    for (key, c) in sm.hopf().delta(k)?.terms() {
        let e = groups.entry(key[1].clone()).or_default();
        e.add_term(key[0].clone(), c.clone());
    }
    Ok(groups.into_iter().map(|(w, l)| (l, w)).collect())
}

/// `f_ϑ(k) = ϑ(k₁) k₂` in the smash product.
pub fn map_from_theta<K: Field>(sm: &SmashProduct<K>, theta: &ThetaTable<K>, k: &NcPoly<K>) -> Result<NcPoly<K>> {
    let mut acc = NcPoly::zero();
    for (l, w) in by_right_leg(sm, k)? {
        let v = theta.eval(&l)?.ok_or_else(|| {
            Error::DegreeExceeded(format!("ϑ is not tabulated on {}", sm.hopf().show(&l)))
        })?;
        let x = sm.embed_base(&v);
        let y = sm.embed_hopf(&NcPoly::word(w));
        acc = acc.add(&sm.algebra().mul(&x, &y)?);
    }
    Ok(acc)
}

/// The three defining properties of `ϑ` on the tabulated keys:
/// anti-multiplicativity, the twisted centrality `b ϑ(k) = ϑ(k₁)(k₂ ▷ b)`
/// for the sample elements of `B`, and equivariance
/// `ϑ(S(h₁) k h₂) = S(h) ▷ ϑ(k)` for the sample elements of `H`.
pub fn check_theta_properties<K: Field>(
    sm: &SmashProduct<K>,
    theta: &ThetaTable<K>,
    b_samples: &[NcPoly<K>],
    h_samples: &[NcPoly<K>],
) -> CheckReport {
    let mut rep = CheckReport::new("theta properties");
    let h = sm.hopf();
    let ha = h.algebra();
    let b = sm.base();
    let r: Result<()> = (|| {
        for (k, vk) in &theta.entries {
            for (l, vl) in &theta.entries {
                let at = format!("{} , {}", ha.show(k), ha.show(l));
                let kl = ha.mul(k, l)?;
                match theta.eval(&kl)? {
                    Some(v) => {
                        let want = b.mul(vl, vk)?;
                        rep.record("anti-multiplicative", at, v == want, || {
                            format!("ϑ(kl) = {} but ϑ(l)ϑ(k) = {}", b.show(&v), b.show(&want))
                        });
                    }
                    None => rep.note(format!("product {} lies outside the tabulated span", ha.show(&kl))),
                }
            }
        }
        for (k, vk) in &theta.entries {
            for x in b_samples {
                let at = format!("k = {}, b = {}", ha.show(k), b.show(x));
                let lhs = b.mul(x, vk)?;
                let mut rhs = NcPoly::zero();
                let mut tabulated = true;
                for (l, w) in by_right_leg(sm, k)? {
                    match theta.eval(&l)? {
                        Some(v) => rhs = rhs.add(&b.mul(&v, &sm.act(&NcPoly::word(w), x)?)?),
                        None => tabulated = false,
                    }
                }
                if !tabulated {
                    rep.undecided("twisted centrality", at, "left legs of the coproduct lie outside the tabulated span");
                    continue;
                }
                let d = rhs.sub(&lhs);
                rep.record("twisted centrality", at, d.is_zero(), || {
                    format!("ϑ(k₁)(k₂▷b) - bϑ(k) = {}", b.show(&d))
                });
            }
            for y in h_samples {
                let at = format!("k = {}, h = {}", ha.show(k), ha.show(y));
                let mut conj = NcPoly::zero();
                for (key, c) in h.delta(y)?.terms() {
                    let s = h.antipode_map().apply_word(&key[0])?.to_poly();
                    let t = NcPoly::word(key[1].clone());
                    conj = conj.add(&ha.product([&s, k, &t])?.scale(c));
                }
                match theta.eval(&conj)? {
                    Some(v) => {
                        let want = sm.act(&h.antipode(y)?, vk)?;
                        rep.record("equivariant", at, v == want, || {
                            format!("ϑ(S(h₁)kh₂) = {} but S(h)▷ϑ(k) = {}", b.show(&v), b.show(&want))
                        });
                    }
                    None => rep.undecided("equivariant", at, format!("{} lies outside the tabulated span", ha.show(&conj))),
                }
            }
        }
        Ok(())
    })();
    if let Err(e) = r {
        rep.fail("evaluation", "", e.to_string());
    }
    rep
}
