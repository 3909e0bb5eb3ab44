use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ncpoly::{parse_expr, Algebra, NcPoly, Tensor, Word};
use crate::report::CheckReport;
use crate::scalar::Field;

/// How a map is extended from its stored data to all words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Multiplicative on generator images.
    Hom,
    /// Anti-multiplicative on generator images.
    AntiHom,
    /// Explicit table on basis words up to a degree bound.
    Table,
}

/// Linear map from a presented algebra into an n-fold tensor product of
/// presented algebras (n = 0 is the ground field, n = 1 an algebra).
pub struct LinearMap<K: Field> {
    pub name: String,
    domain: Arc<Algebra<K>>,
    codomain: Vec<Arc<Algebra<K>>>,
    ext: Extension,
    gens: Vec<Tensor<K>>,
    table: BTreeMap<Word, Tensor<K>>,
    cache: Mutex<HashMap<Word, Tensor<K>>>,
}

impl<K: Field> Clone for LinearMap<K> {
    fn clone(&self) -> Self {
        LinearMap {
            name: self.name.clone(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            ext: self.ext,
            gens: self.gens.clone(),
            table: self.table.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl<K: Field> PartialEq for LinearMap<K> {
    fn eq(&self, o: &Self) -> bool {
        self.domain == o.domain && self.codomain == o.codomain && self.ext == o.ext && self.gens == o.gens && self.table == o.table
    }
}

impl<K: Field> std::fmt::Debug for LinearMap<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearMap({}: {} -> {} legs, {:?})", self.name, self.domain.name, self.codomain.len(), self.ext)
    }
}

impl<K: Field> LinearMap<K> {
    fn build(
        name: &str,
        domain: Arc<Algebra<K>>,
        codomain: Vec<Arc<Algebra<K>>>,
        ext: Extension,
        gens: Vec<Tensor<K>>,
        table: BTreeMap<Word, Tensor<K>>,
    ) -> Result<Self> {
        let ar = codomain.len();
        if ext != Extension::Table && gens.len() != domain.ngens() {
            return Err(Error::Config(format!("map {name}: {} generator images for {} generators", gens.len(), domain.ngens())));
        }
        let cods: Vec<&Algebra<K>> = codomain.iter().map(|a| a.as_ref()).collect();
        let mut ng = Vec::with_capacity(gens.len());
        for t in gens {
            if t.arity() != ar {
                return Err(Error::SizeMismatch(format!("map {name}: image of arity {} for {ar} legs", t.arity())));
            }
            ng.push(t.normalize(&cods)?);
        }
        let mut nt = BTreeMap::new();
        for (w, t) in table {
            if t.arity() != ar {
                return Err(Error::SizeMismatch(format!("map {name}: image of arity {} for {ar} legs", t.arity())));
            }
            nt.insert(w, t.normalize(&cods)?);
        }
        Ok(LinearMap { name: name.into(), domain, codomain, ext, gens: ng, table: nt, cache: Mutex::new(HashMap::new()) })
    }

    pub fn hom(name: &str, domain: Arc<Algebra<K>>, codomain: Vec<Arc<Algebra<K>>>, gens: Vec<Tensor<K>>) -> Result<Self> {
        Self::build(name, domain, codomain, Extension::Hom, gens, BTreeMap::new())
    }

    pub fn anti_hom(name: &str, domain: Arc<Algebra<K>>, codomain: Vec<Arc<Algebra<K>>>, gens: Vec<Tensor<K>>) -> Result<Self> {
        Self::build(name, domain, codomain, Extension::AntiHom, gens, BTreeMap::new())
    }

    pub fn table(
        name: &str,
        domain: Arc<Algebra<K>>,
        codomain: Vec<Arc<Algebra<K>>>,
        table: BTreeMap<Word, Tensor<K>>,
    ) -> Result<Self> {
        Self::build(name, domain, codomain, Extension::Table, Vec::new(), table)
    }

    /// Algebra map into a single algebra from polynomial generator images.
    pub fn algebra_map(name: &str, domain: Arc<Algebra<K>>, codomain: Arc<Algebra<K>>, images: Vec<NcPoly<K>>) -> Result<Self> {
        let gens = images.iter().map(Tensor::from_poly).collect();
        Self::hom(name, domain, vec![codomain], gens)
    }

    /// Map given by expressions per domain generator name, in the tensor
    /// grammar over the codomain legs. Missing generators are an error.
    pub fn from_exprs(
        name: &str,
        domain: Arc<Algebra<K>>,
        codomain: Vec<Arc<Algebra<K>>>,
        ext: Extension,
        images: &[(String, String)],
    ) -> Result<Self> {
        let mut gens: Vec<Option<Tensor<K>>> = vec![None; domain.ngens()];
        let alphs: Vec<&crate::ncpoly::Alphabet> = codomain.iter().map(|a| a.alphabet()).collect();
        let (tower, param) = scalars_of(&domain, &codomain);
        for (g, e) in images {
            let r = domain.rank(g)? as usize;
            let t = parse_expr(e)?.eval_tensor(&alphs, tower, param.clone())?;
            gens[r] = Some(t);
        }
        let mut out = Vec::with_capacity(gens.len());
        for (r, t) in gens.into_iter().enumerate() {
            match t {
                Some(t) => out.push(t),
                None => {
                    return Err(Error::Config(format!(
                        "map {name}: no image for generator {}",
                        domain.alphabet().name(r as u16)
                    )))
                }
            }
        }
        Self::build(name, domain, codomain, ext, out, BTreeMap::new())
    }

    pub fn domain(&self) -> &Arc<Algebra<K>> {
        &self.domain
    }
    pub fn codomain(&self) -> &[Arc<Algebra<K>>] {
        &self.codomain
    }
    pub fn extension(&self) -> Extension {
        self.ext
    }
    pub fn arity(&self) -> usize {
        self.codomain.len()
    }
    pub fn gen_images(&self) -> &[Tensor<K>] {
        &self.gens
    }
    pub fn table_entries(&self) -> &BTreeMap<Word, Tensor<K>> {
        &self.table
    }

    fn cods(&self) -> Vec<&Algebra<K>> {
        self.codomain.iter().map(|a| a.as_ref()).collect()
    }

    /// Replace one generator image (used to build corrupted variants).
    pub fn with_gen_image(&self, gen: &str, image: Tensor<K>) -> Result<Self> {
        let r = self.domain.rank(gen)? as usize;
        let mut gens = self.gens.clone();
        gens[r] = image;
        Self::build(&self.name, self.domain.clone(), self.codomain.clone(), self.ext, gens, self.table.clone())
    }

    pub fn with_table_entry(&self, w: Word, image: Tensor<K>) -> Result<Self> {
        let mut table = self.table.clone();
        table.insert(w, image);
        Self::build(&self.name, self.domain.clone(), self.codomain.clone(), self.ext, self.gens.clone(), table)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    /// Image of a (not necessarily normal) word.
    pub fn apply_word(&self, w: &Word) -> Result<Tensor<K>> {
        match self.ext {
            Extension::Table => self.table.get(w).cloned().ok_or_else(|| {
                Error::DegreeExceeded(format!("map {} has no table entry for {}", self.name, self.domain.show_word(w)))
            }),
            _ => {
                if w.is_empty() {
                    return Ok(Tensor::unit(self.arity()));
                }
                if w.len() == 1 {
                    return Ok(self.gens[w.0[0] as usize].clone());
                }
                if let Some(t) = self.cache.lock().unwrap().get(w) {
                    return Ok(t.clone());
                }
                let n = w.len();
                let prefix = Word(w.0[..n - 1].to_vec());
                let last = &self.gens[w.0[n - 1] as usize];
                let head = self.apply_word(&prefix)?;
                let prod = match self.ext {
                    Extension::Hom => head.mul(last),
                    _ => last.mul(&head),
                };
                let r = prod.normalize(&self.cods())?;
                self.cache.lock().unwrap().insert(w.clone(), r.clone());
                Ok(r)
            }
        }
    }

    pub fn apply(&self, p: &NcPoly<K>) -> Result<Tensor<K>> {
        let mut acc = Tensor::zero(self.arity());
        for (w, c) in p.terms() {
            acc = acc.add(&self.apply_word(w)?.scale(c));
        }
        Ok(acc)
    }

    /// Image as a polynomial; the codomain must be a single algebra.
    pub fn apply_poly(&self, p: &NcPoly<K>) -> Result<NcPoly<K>> {
        if self.arity() != 1 {
            return Err(Error::SizeMismatch(format!("map {} lands in {} legs", self.name, self.arity())));
        }
        Ok(self.apply(p)?.to_poly())
    }

    /// Image as a scalar; the codomain must be the ground field.
    pub fn apply_scalar(&self, p: &NcPoly<K>) -> Result<K> {
        let t = self.apply(p)?;
        t.as_scalar().ok_or_else(|| Error::SizeMismatch(format!("map {} is not scalar valued", self.name)))
    }

    /// Apply to leg `leg` of a tensor, splicing the image legs in place.
    pub fn apply_leg(&self, t: &Tensor<K>, leg: usize) -> Result<Tensor<K>> {
        t.expand(|i, w| if i == leg { self.apply_word(w) } else { Ok(Tensor::from_poly(&NcPoly::word(w.clone()))) })
    }

    /// Check that generator-extended maps respect every rewrite rule of the
    /// domain, i.e. that the map descends to the presented algebra.
    pub fn check_well_defined(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("{} well-defined", self.name));
        if self.ext == Extension::Table {
            rep.note("tabulated map: well-definedness is by construction on normal words");
            return rep;
        }
        let names: Vec<&[String]> = self.codomain.iter().map(|a| a.names()).collect();
        for r in self.domain.rules() {
            let at = format!("{} -> {}", self.domain.show_word(&r.lhs), self.domain.show(&r.rhs));
            match (self.apply_word(&r.lhs), self.apply(&r.rhs)) {
                (Ok(a), Ok(b)) => {
                    let d = a.sub(&b);
                    rep.record("relation respected", at, d.is_zero(), || format!("difference {}", d.display(&names)));
                }
                (Err(e), _) | (_, Err(e)) => rep.fail("relation respected", at, e.to_string()),
            }
        }
        rep
    }

    /// Tabulate on the normal basis up to degree `d`.
    pub fn tabulate(&self, d: usize) -> Result<Self> {
        let mut table = BTreeMap::new();
        for w in self.domain.basis(d) {
            table.insert(w.clone(), self.apply_word(&w)?);
        }
        Self::table(&self.name, self.domain.clone(), self.codomain.clone(), table)
    }

    /// `self ∘ inner`, where `inner` lands in a single algebra equal to the
    /// domain of `self`.
    pub fn compose(&self, inner: &LinearMap<K>, name: &str) -> Result<Self> {
        if inner.arity() != 1 {
            return Err(Error::SizeMismatch(format!("cannot compose after {} ({} legs)", inner.name, inner.arity())));
        }
        let ext = match (self.ext, inner.ext) {
            (Extension::Hom, Extension::Hom) | (Extension::AntiHom, Extension::AntiHom) => Extension::Hom,
            (Extension::Hom, Extension::AntiHom) | (Extension::AntiHom, Extension::Hom) => Extension::AntiHom,
            _ => Extension::Table,
        };
        if ext == Extension::Table {
            let mut table = BTreeMap::new();
            let words: Vec<Word> = if inner.ext == Extension::Table {
                inner.table.keys().cloned().collect()
            } else {
                return Err(Error::DegreeExceeded(format!("{name}: tabulate {} before composing", self.name)));
            };
            for w in words {
                table.insert(w.clone(), self.apply(&inner.apply_word(&w)?.to_poly())?);
            }
            return Self::table(name, inner.domain.clone(), self.codomain.clone(), table);
        }
        let gens = inner.gens.iter().map(|t| self.apply(&t.to_poly())).collect::<Result<Vec<_>>>()?;
        Self::build(name, inner.domain.clone(), self.codomain.clone(), ext, gens, BTreeMap::new())
    }

    /// Render a generator table (for export and reports).
    pub fn describe(&self) -> Vec<(String, String)> {
        let names: Vec<&[String]> = self.codomain.iter().map(|a| a.names()).collect();
        match self.ext {
            Extension::Table => self
                .table
                .iter()
                .map(|(w, t)| (self.domain.show_word(w), render(t, &names)))
                .collect(),
            _ => self
                .domain
                .alphabet()
                .declared()
                .iter()
                .map(|&g| (self.domain.alphabet().name(g).to_string(), render(&self.gens[g as usize], &names)))
                .collect(),
        }
    }
}

/// Render a tensor in the grammar; scalars of arity 0 as plain values.
pub fn render<K: Field>(t: &Tensor<K>, names: &[&[String]]) -> String {
    if t.arity() == 0 {
        let c = t.as_scalar().unwrap_or_else(K::zero);
        return NcPoly::scalar(c).display(&[]);
    }
    t.display(names)
}

pub(crate) fn scalars_of<K: Field>(domain: &Algebra<K>, codomain: &[Arc<Algebra<K>>]) -> (crate::scalar::Tower, Option<K>) {
    let mut tower = domain.tower();
    let mut param = domain.param().cloned();
    for a in codomain {
        tower = crate::ncpoly::wider(tower, a.tower());
        if param.is_none() {
            param = a.param().cloned();
        }
    }
    (tower, param)
}

/// Convolution `(f * g)(h) = f(h₁) g(h₂)` tabulated on the normal basis of
/// the Hopf algebra up to degree `d`. Both maps land in the same algebra.
pub fn convolution<K: Field>(
    f: &LinearMap<K>,
    g: &LinearMap<K>,
    h: &super::HopfAlgebra<K>,
    d: usize,
    name: &str,
) -> Result<LinearMap<K>> {
    if f.arity() != g.arity() {
        return Err(Error::SizeMismatch(format!("convolution of {} and {}: leg counts differ", f.name, g.name)));
    }
    let cods = f.cods();
    let mut table = BTreeMap::new();
    for w in h.algebra().basis(d) {
        let dw = h.delta_word(&w)?;
        let mut acc = Tensor::zero(f.arity());
        for (key, c) in dw.terms() {
            let a = f.apply_word(&key[0])?;
            let b = g.apply_word(&key[1])?;
            acc = acc.add(&a.mul(&b).scale(c));
        }
        table.insert(w, acc.normalize(&cods)?);
    }
    LinearMap::table(name, h.algebra_arc().clone(), f.codomain.clone(), table)
}
