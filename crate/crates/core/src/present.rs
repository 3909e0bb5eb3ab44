//! Presentation JSON: import into algebras, Hopf algebras, comodule
//! algebras and smash products, and export back.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comodule::{CleavingMap, ComoduleAlgebra, SmashProduct};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, HopfTables};
use crate::ncpoly::{parse_expr, Algebra, Alphabet};
use crate::scalar::{Field, Tower};

/// Degree bound for the completion run on import.
pub const IMPORT_COMPLETION_BOUND: usize = 6;

type Table = BTreeMap<String, String>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HopfJson {
    pub delta: Table,
    pub counit: Table,
    pub antipode: Table,
    pub antipode_inv: Table,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub precedence: Vec<String>,
    pub scalar_tower: String,
    /// Specialised value of the parameter; absent means formal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfJson>,
    /// The Hopf algebra coacting or acting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<Box<Presentation>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cleaving: Option<Table>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance<K: Field> {
    Algebra(Arc<Algebra<K>>),
    Hopf(HopfAlgebra<K>),
    Comodule { comodule: ComoduleAlgebra<K>, cleaving: Option<CleavingMap<K>> },
    Smash(SmashProduct<K>),
}

impl<K: Field> Instance<K> {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Algebra(_) => "algebra",
            Instance::Hopf(_) => "hopf",
            Instance::Comodule { .. } => "comodule",
            Instance::Smash(_) => "smash",
        }
    }

    pub fn algebra(&self) -> &Algebra<K> {
        match self {
            Instance::Algebra(a) => a,
            Instance::Hopf(h) => h.algebra(),
            Instance::Comodule { comodule, .. } => comodule.algebra(),
            Instance::Smash(s) => s.algebra(),
        }
    }

    pub fn into_hopf(self) -> Result<HopfAlgebra<K>> {
        match self {
            Instance::Hopf(h) => Ok(h),
            other => Err(Error::Config(format!("{} is a {}, not a Hopf algebra", other.algebra().name, other.kind()))),
        }
    }

    pub fn into_comodule(self) -> Result<(ComoduleAlgebra<K>, Option<CleavingMap<K>>)> {
        match self {
            Instance::Comodule { comodule, cleaving } => Ok((comodule, cleaving)),
            Instance::Smash(s) => {
                let c = s.cleaving()?;
                Ok((s.comodule().clone(), Some(c)))
            }
            other => Err(Error::Config(format!("{} is a {}, not a comodule algebra", other.algebra().name, other.kind()))),
        }
    }

    pub fn into_smash(self) -> Result<SmashProduct<K>> {
        match self {
            Instance::Smash(s) => Ok(s),
            other => Err(Error::Config(format!("{} is a {}, not a smash product", other.algebra().name, other.kind()))),
        }
    }

    pub fn export(&self) -> Presentation {
        match self {
            Instance::Algebra(a) => export_algebra(a),
            Instance::Hopf(h) => export_hopf(h),
            Instance::Comodule { comodule, cleaving } => {
                let mut p = export_algebra(comodule.algebra());
                p.over = Some(Box::new(export_hopf(comodule.hopf())));
                p.coaction = Some(comodule.coaction_map().describe().into_iter().collect());
                p.cleaving = cleaving.as_ref().map(|c| c.j.describe().into_iter().collect());
                p
            }
            Instance::Smash(s) => {
                let mut p = export_algebra(s.base());
                p.name = s.algebra().name.clone();
                p.over = Some(Box::new(export_hopf(s.hopf())));
                p.action = Some(s.action_entries().into_iter().collect());
                p
            }
        }
    }
}

fn pairs(t: &Table) -> Vec<(String, String)> {
    t.iter().map(|(a, b)| (a.clone(), b.clone())).collect()
}

impl Presentation {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("presentation JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    /// Copy with the parameter specialised here and in the nested Hopf
    /// presentation.
    pub fn with_q(mut self, q: Option<&str>) -> Self {
        if let Some(q) = q {
            if Tower::parse(&self.scalar_tower).is_some_and(|t| t.allows_parameter()) {
                self.q = Some(q.to_string());
            }
            if let Some(o) = self.over.take() {
                self.over = Some(Box::new(o.with_q(Some(q))));
            }
        }
        self
    }

    fn tower(&self) -> Result<Tower> {
        Tower::parse(&self.scalar_tower).ok_or_else(|| Error::Tower(format!("unknown scalar tower {:?}", self.scalar_tower)))
    }

    fn param<K: Field>(&self, tower: Tower) -> Result<Option<K>> {
        match &self.q {
            Some(q) => {
                if !tower.allows_parameter() {
                    return Err(Error::Tower(format!("{} fixes q but its tower {} has no parameter", self.name, tower.as_str())));
                }
                let v: K = parse_expr(q)?.eval_scalar(Tower::Gaussian, None)?;
                if v.is_zero() {
                    return Err(Error::QZero);
                }
                Ok(Some(v))
            }
            None if tower.allows_parameter() => Ok(K::param()),
            None => Ok(None),
        }
    }

    /// The underlying algebra, completed up to `IMPORT_COMPLETION_BOUND`
    /// when the oriented relations are not locally confluent.
    pub fn algebra<K: Field>(&self) -> Result<Algebra<K>> {
        let tower = self.tower()?;
        let param = self.param::<K>(tower)?;
        let alphabet = Alphabet::new(&self.generators, &self.precedence)?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let (l, rhs) = r
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("relation {r:?} must read \"lhs = rhs\"")))?;
            let lp = parse_expr(l)?.eval_poly::<K>(&alphabet, tower, param.clone())?;
            let rp = parse_expr(rhs)?.eval_poly::<K>(&alphabet, tower, param.clone())?;
            rels.push(lp.sub(&rp));
        }
        let star = match &self.star {
            None => None,
            Some(t) => {
                let mut v = vec![None; alphabet.len()];
                for (g, e) in t {
                    let r = alphabet.rank(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))? as usize;
                    v[r] = Some(parse_expr(e)?.eval_poly::<K>(&alphabet, tower, param.clone())?);
                }
                let mut out = Vec::with_capacity(v.len());
                for (r, p) in v.into_iter().enumerate() {
                    out.push(p.ok_or_else(|| Error::NoStar(format!("{}: no star image for {}", self.name, alphabet.name(r as u16))))?);
                }
                Some(out)
            }
        };
        let a = Algebra::from_relations(&self.name, alphabet, rels, star)?.with_scalars(tower, param);
        if a.check_local_confluence(IMPORT_COMPLETION_BOUND).conflicts.is_empty() {
            Ok(a)
        } else {
            a.complete(IMPORT_COMPLETION_BOUND, 16)
        }
    }

    fn hopf_of<K: Field>(&self) -> Result<HopfAlgebra<K>> {
        let h = self.hopf.as_ref().ok_or_else(|| Error::Config(format!("{} carries no Hopf structure", self.name)))?;
        let t = HopfTables {
            delta: pairs(&h.delta),
            counit: pairs(&h.counit),
            antipode: pairs(&h.antipode),
            antipode_inv: pairs(&h.antipode_inv),
        };
        HopfAlgebra::from_tables(self.algebra()?, &t)
    }

    pub fn import<K: Field>(&self) -> Result<Instance<K>> {
        if self.hopf.is_some() && self.action.is_none() && self.coaction.is_none() {
            return Ok(Instance::Hopf(self.hopf_of()?));
        }
        let over = || -> Result<HopfAlgebra<K>> {
            self.over
                .as_ref()
                .ok_or_else(|| Error::Config(format!("{} needs an \"over\" Hopf presentation", self.name)))?
                .hopf_of()
        };
        if let Some(act) = &self.action {
            let base = Arc::new(self.algebra::<K>()?);
            return Ok(Instance::Smash(SmashProduct::new(&self.name, base, over()?, &pairs(act))?));
        }
        if let Some(co) = &self.coaction {
            let alg = Arc::new(self.algebra::<K>()?);
            let comodule = ComoduleAlgebra::from_exprs(alg, over()?, &pairs(co))?;
            let cleaving = match &self.cleaving {
                Some(c) => Some(CleavingMap::from_exprs(&comodule, &pairs(c))?),
                None => None,
            };
            return Ok(Instance::Comodule { comodule, cleaving });
        }
        Ok(Instance::Algebra(Arc::new(self.algebra()?)))
    }
}

pub fn export_algebra<K: Field>(a: &Algebra<K>) -> Presentation {
    let names = a.names();
    let relations = a.rules().iter().map(|r| format!("{} = {}", a.show_word(&r.lhs), r.rhs.display(names))).collect();
    let star = a.star_table().map(|t| {
        a.alphabet().declared().iter().map(|&g| (names[g as usize].clone(), t[g as usize].display(names))).collect()
    });
    let q = match (a.param(), K::param()) {
        (Some(p), Some(formal)) if *p != formal => Some(p.to_expr()),
        (Some(p), None) if a.tower().allows_parameter() => Some(p.to_expr()),
        _ => None,
    };
    Presentation {
        name: a.name.clone(),
        generators: a.alphabet().declared_names(),
        precedence: a.alphabet().precedence_names(),
        scalar_tower: a.tower().as_str().to_string(),
        q,
        relations,
        star,
        ..Default::default()
    }
}

pub fn export_hopf<K: Field>(h: &HopfAlgebra<K>) -> Presentation {
    let mut p = export_algebra(h.algebra());
    let t = |m: &crate::hopf::LinearMap<K>| m.describe().into_iter().collect();
    p.hopf = Some(HopfJson {
        delta: t(h.delta_map()),
        counit: t(h.counit_map()),
        antipode: t(h.antipode_map()),
        antipode_inv: t(h.antipode_inv_map()),
    });
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFunc;

    const Z2: &str = r#"{
        "name": "c_z2", "generators": ["u"], "precedence": ["u"], "scalar_tower": "Q",
        "relations": ["u*u = 1"], "star": {"u": "u"},
        "hopf": {"delta": {"u": "u # u"}, "counit": {"u": "1"}, "antipode": {"u": "u"}, "antipode_inv": {"u": "u"}}
    }"#;

    #[test]
    fn hopf_presentation_round_trip() {
        let p = Presentation::from_json(Z2).unwrap();
        let h = p.import::<RatFunc>().unwrap();
        assert_eq!(h.kind(), "hopf");
        let back = h.export();
        let again = Presentation::from_json(&back.to_json()).unwrap().import::<RatFunc>().unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn missing_equals_is_a_config_error() {
        let mut p = Presentation::from_json(Z2).unwrap();
        p.relations = vec!["u*u".into()];
        assert!(matches!(p.algebra::<RatFunc>(), Err(Error::Config(_))));
    }

    #[test]
    fn zero_parameter_is_rejected() {
        let p = Presentation {
            name: "plane".into(),
            generators: vec!["x".into(), "y".into()],
            precedence: vec!["y".into(), "x".into()],
            scalar_tower: "Q(i)(q)".into(),
            relations: vec!["x*y = Q*y*x".into()],
            ..Default::default()
        }
        .with_q(Some("0"));
        assert_eq!(p.algebra::<RatFunc>().unwrap_err(), Error::QZero);
    }
}
