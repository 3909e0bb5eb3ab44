use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Covering, Trivialisation, COVERING_COMPLETION_BOUND};
use crate::builtin::{self, Coeff};
use crate::comodule::{CleavingMap, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{Extension, LinearMap};
use crate::present::{Instance, Presentation};
use crate::scalar::{Field, QI};

/// Shipped covering files, by name.
pub const SHIPPED_COVERINGS: [(&str, &str); 2] = [
    ("axes", include_str!("../../data/coverings/axes.json")),
    ("cross_z2", include_str!("../../data/coverings/cross_z2.json")),
];

/// A builtin name, a path to a presentation file, or an inline
/// presentation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationRef {
    Name(String),
    Inline(Box<Presentation>),
}

impl PresentationRef {
    pub fn resolve(&self) -> Result<Presentation> {
        match self {
            PresentationRef::Inline(p) => Ok((**p).clone()),
            PresentationRef::Name(n) => {
                if builtin::NAMES.contains(&n.as_str()) {
                    return builtin::presentation(n);
                }
                let path = std::path::Path::new(n);
                if path.exists() {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{n}: {e}")))?;
                    return Presentation::from_json(&text);
                }
                builtin::presentation(n)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringPiece {
    pub kernel: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cleaving: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringFile {
    pub base: PresentationRef,
    pub pieces: Vec<CoveringPiece>,
}

/// Load a covering file. A base without a coaction is coacted on
/// trivially by `C(Z₂)`; a Hopf algebra base coacts on itself. When every
/// piece declares a cleaving the trivialisation is returned as well.
pub fn covering_from_json(text: &str, q: Option<&QI>) -> Result<(Covering<Coeff>, Option<Trivialisation<Coeff>>)> {
    let file: CoveringFile = serde_json::from_str(text).map_err(|e| Error::Config(format!("covering file: {e}")))?;
    let pres = file.base.resolve()?;
    let qs = q.map(|q| q.to_expr());
    let base = match pres.with_q(qs.as_deref()).import::<Coeff>()? {
        Instance::Algebra(a) => ComoduleAlgebra::trivial(a, builtin::c_z2(None)?)?,
        Instance::Hopf(h) => ComoduleAlgebra::regular(&h)?,
        other => other.into_comodule()?.0,
    };
    let mut kernels = Vec::with_capacity(file.pieces.len());
    for p in &file.pieces {
        kernels.push(p.kernel.iter().map(|e| base.algebra().parse(e)).collect::<Result<Vec<_>>>()?);
    }
    let cov = Covering::from_kernels(&base.name().to_string(), base, kernels, COVERING_COMPLETION_BOUND)?;
    let declared = file.pieces.iter().filter(|p| p.cleaving.is_some()).count();
    if declared == 0 {
        return Ok((cov, None));
    }
    if declared != file.pieces.len() {
        return Err(Error::Config(format!("{declared} of {} pieces declare a cleaving", file.pieces.len())));
    }
    let mut cleavings = Vec::with_capacity(declared);
    for (i, p) in file.pieces.iter().enumerate() {
        let pairs: Vec<(String, String)> = p.cleaving.as_ref().unwrap().iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        cleavings.push(CleavingMap::from_exprs(cov.piece(i), &pairs)?);
    }
    let triv = Trivialisation::new(cov.clone(), cleavings)?;
    Ok((cov, Some(triv)))
}

/// The coordinate-axes algebra covered by the three coordinate planes.
pub fn axes_covering() -> Result<Covering<Coeff>> {
    Ok(covering_from_json(SHIPPED_COVERINGS[0].1, None)?.0)
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn map(name: &str, dom: &ComoduleAlgebra<Coeff>, cod: &ComoduleAlgebra<Coeff>, v: &[(&str, &str)]) -> Result<LinearMap<Coeff>> {
    LinearMap::from_exprs(name, dom.algebra_arc().clone(), vec![cod.algebra_arc().clone()], Extension::Hom, &pairs(v))
}

/// Three `Z₂`-graded Toeplitz pieces glued over `Z₂ × I × Z₂` overlaps
/// with the swap gluing, trivialised by `u ↦ u` on each piece.
pub fn sphere_trivialisation() -> Result<Trivialisation<Coeff>> {
    let (piece, _) = builtin::comodule("sphere_piece", None)?;
    let (overlap, _) = builtin::comodule("sphere_overlap", None)?;
    let pieces: Vec<ComoduleAlgebra<Coeff>> = (0..3).map(|i| piece.renamed(&format!("P{i}"))).collect::<Result<_>>()?;
    let mut overlaps = BTreeMap::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        overlaps.insert((i, j), overlap.renamed(&format!("O{i}{j}"))?);
    }
    let table: [((usize, usize), [&str; 3]); 6] = [
        ((0, 1), ["h*c + I*n", "h*c - I*n", "k"]),
        ((1, 0), ["k*c + I*n", "k*c - I*n", "h"]),
        ((0, 2), ["n + I*h*c", "n - I*h*c", "k"]),
        ((2, 0), ["k*c + I*n", "k*c - I*n", "h"]),
        ((1, 2), ["n + I*h*c", "n - I*h*c", "k"]),
        ((2, 1), ["n + I*k*c", "n - I*k*c", "h"]),
    ];
    let mut maps = BTreeMap::new();
    for ((i, j), [s, st, u]) in table {
        let o = &overlaps[&(i.min(j), i.max(j))];
        maps.insert((i, j), map(&format!("pi^{i}_{j}"), &pieces[i], o, &[("s", s), ("s_star", st), ("u", u)])?);
    }
    let cleavings = pieces.iter().map(|p| CleavingMap::from_exprs(p, &pairs(&[("u", "u")]))).collect::<Result<Vec<_>>>()?;
    Trivialisation::new(Covering::from_pieces("sphere", pieces, overlaps, maps)?, cleavings)
}

fn patch_pres(name: &str, gens: &[&str], prec: &[&str], rels: &[&str], coaction: &[(&str, &str)]) -> Result<Presentation> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(Presentation {
        name: name.into(),
        generators: s(gens),
        precedence: s(prec),
        scalar_tower: "Q(i)".into(),
        relations: s(rels),
        over: Some(Box::new(builtin::presentation("o_u1")?)),
        coaction: Some(coaction.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
        ..Default::default()
    })
}

/// Two disc patches `T ⊗ O(U(1))` glued over a circle with clutching
/// `u ↦ z u`, trivialised by `u ↦ u` (transition function `z⁻¹`).
pub fn hopf_fibration_patches() -> Result<Trivialisation<Coeff>> {
    let disc = patch_pres(
        "disc_patch",
        &["s", "s_star", "u", "u_inv"],
        &["u_inv", "u", "s_star", "s"],
        &["s_star*s = 1", "u*u_inv = 1", "u_inv*u = 1", "u*s = s*u", "u*s_star = s_star*u", "u_inv*s = s*u_inv", "u_inv*s_star = s_star*u_inv"],
        &[("s", "s # 1"), ("s_star", "s_star # 1"), ("u", "u # u"), ("u_inv", "u_inv # u_inv")],
    )?;
    let mut circle_rels = vec!["z*z_inv = 1", "z_inv*z = 1", "u*u_inv = 1", "u_inv*u = 1"];
    circle_rels.extend(["u*z = z*u", "u*z_inv = z_inv*u", "u_inv*z = z*u_inv", "u_inv*z_inv = z_inv*u_inv"]);
    let circle = patch_pres(
        "circle_patch",
        &["z", "z_inv", "u", "u_inv"],
        &["u_inv", "u", "z_inv", "z"],
        &circle_rels,
        &[("z", "z # 1"), ("z_inv", "z_inv # 1"), ("u", "u # u"), ("u_inv", "u_inv # u_inv")],
    )?;
    let piece = disc.import::<Coeff>()?.into_comodule()?.0;
    let pieces = vec![piece.renamed("D0")?, piece.renamed("D1")?];
    let o = circle.import::<Coeff>()?.into_comodule()?.0.renamed("S01")?;
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), map("pi^0_1", &pieces[0], &o, &[("s", "z"), ("s_star", "z_inv"), ("u", "u"), ("u_inv", "u_inv")])?);
    maps.insert(
        (1, 0),
        map("pi^1_0", &pieces[1], &o, &[("s", "z_inv"), ("s_star", "z"), ("u", "z*u"), ("u_inv", "z_inv*u_inv")])?,
    );
    let mut overlaps = BTreeMap::new();
    overlaps.insert((0, 1), o);
    let cleavings = pieces
        .iter()
        .map(|p| CleavingMap::from_exprs(p, &pairs(&[("u", "u"), ("u_inv", "u_inv")])))
        .collect::<Result<Vec<_>>>()?;
    Trivialisation::new(Covering::from_pieces("hopf_fibration", pieces, overlaps, maps)?, cleavings)
}
