//! Poincaré polynomials of faces, torus E-polynomials, and Chen-Ruan
//! Poincaré polynomials assembled three ways, plus the stratification
//! identities relating them.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exact::{Int, Poly};
use crate::model::{Face, Model};
use crate::sectors::{
    all_boxes, box_interior, quasi_sl_report, sectors, w_of_box, w_tilde_of_box, BoxElement,
    SectorError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("model is not quasi-SL: face {face:?} has an element of age {age}")]
    NotQuasiSl {
        face: Vec<usize>,
        age: crate::exact::Rat,
    },
    #[error(transparent)]
    Sector(#[from] SectorError),
}

/// `Σ h_i(F) s^i`: the ordinary Poincaré polynomial of `X(F)`.
pub fn pp_ordinary(face: &Face, model: &Model) -> Poly {
    Poly::new(model.h_vector(face))
}

/// `(s − 1)^k`, the E-polynomial of a `k`-dimensional complex torus.
pub fn e_torus(k: usize) -> Poly {
    Poly::s_minus_one().pow(k as u32)
}

fn require_quasi_sl(model: &Model) -> Result<(), CohomologyError> {
    match quasi_sl_report(model).witness {
        None => Ok(()),
        Some((face, g)) => Err(CohomologyError::NotQuasiSl { face, age: g.age }),
    }
}

/// Sector by sector: `Σ_F Σ_{g ∈ Box_F°} s^{age g} · PP(X(F))`.
pub fn pp_cr_direct(model: &Model) -> Result<Poly, CohomologyError> {
    require_quasi_sl(model)?;
    Ok(sector_contributions(model)?
        .into_iter()
        .map(|c| c.contribution)
        .sum())
}

/// Over closures of strata: `Σ_F PP(X̄_F) · W̃(Δ_F)`, with `W̃(P) = 1`.
pub fn pp_cr_via_closures(model: &Model) -> Result<Poly, CohomologyError> {
    require_quasi_sl(model)?;
    let boxes = all_boxes(model);
    let mut total = Poly::zero();
    for (face, b) in model.faces().iter().zip(&boxes) {
        let wt = w_tilde_of_box(b, &face.facet_set)?;
        total += &(&pp_ordinary(face, model) * &wt);
    }
    Ok(total)
}

/// Over open strata: `Σ_F (s − 1)^{dim F} · W(Δ_F)`, with `W(P) = 1`.
pub fn pp_cr_via_strata(model: &Model) -> Result<Poly, CohomologyError> {
    require_quasi_sl(model)?;
    let boxes = all_boxes(model);
    let mut total = Poly::zero();
    for (face, b) in model.faces().iter().zip(&boxes) {
        let w = w_of_box(b, &face.facet_set)?;
        total += &(&e_torus(face.dim) * &w);
    }
    Ok(total)
}

/// Contribution of one sector to the Chen-Ruan Poincaré polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorContribution {
    pub face: Vec<usize>,
    pub element: BoxElement,
    pub age: usize,
    pub contribution: Poly,
}

pub fn sector_contributions(model: &Model) -> Result<Vec<SectorContribution>, CohomologyError> {
    let mut out = Vec::new();
    for s in sectors(model) {
        let face = model.face(&s.face).expect("sector face exists");
        let age = s
            .element
            .integral_age()
            .ok_or_else(|| SectorError::NonIntegralAge {
                face: s.face.clone(),
                coeffs: s.element.coeffs.clone(),
                age: s.element.age.clone(),
            })?;
        let contribution = &Poly::monomial(Int::from(1), age) * &pp_ordinary(face, model);
        out.push(SectorContribution {
            face: s.face,
            element: s.element,
            age,
            contribution,
        });
    }
    Ok(out)
}

/// An exact polynomial identity with both sides kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub face: Option<Vec<usize>>,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl IdentityCheck {
    pub fn new(name: &str, face: Option<Vec<usize>>, lhs: Poly, rhs: Poly) -> Self {
        IdentityCheck {
            name: name.into(),
            face,
            lhs,
            rhs,
        }
    }

    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `W(F_i) = Σ_{F_j ⊇ F_i} W̃(F_j)` for every face.
pub fn check_morestrat(model: &Model) -> Result<Vec<IdentityCheck>, CohomologyError> {
    let boxes = all_boxes(model);
    let faces = model.faces();
    let mut w_tilde = Vec::with_capacity(faces.len());
    for (f, b) in faces.iter().zip(&boxes) {
        w_tilde.push(w_tilde_of_box(b, &f.facet_set)?);
    }
    let mut out = Vec::with_capacity(faces.len());
    for (f, b) in faces.iter().zip(&boxes) {
        let lhs = w_of_box(b, &f.facet_set)?;
        let rhs = faces
            .iter()
            .zip(&w_tilde)
            .filter(|(g, _)| f.is_subface_of(g))
            .map(|(_, wt)| wt.clone())
            .sum();
        out.push(IdentityCheck::new(
            "morestrat",
            Some(f.facet_set.clone()),
            lhs,
            rhs,
        ));
    }
    Ok(out)
}

/// `PP(X) = Σ_F (s − 1)^{dim F}`: Betti numbers from the torus stratification.
pub fn check_h_identity(model: &Model) -> IdentityCheck {
    let lhs = pp_ordinary(model.polytope(), model);
    let rhs = model.faces().iter().map(|f| e_torus(f.dim)).sum();
    IdentityCheck::new("h_identity", None, lhs, rhs)
}

/// For every vertex `v`, `Box_v` is the disjoint union of `Box_F°` over
/// faces `F ≥ v`, matched as lattice points.
pub fn check_gdecom(model: &Model) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    for v in model.faces().iter().filter(|f| f.dim == 0) {
        let mut full: Vec<_> = crate::sectors::enumerate_box(v, model)
            .into_iter()
            .map(|g| g.point)
            .collect();
        let mut parts: Vec<_> = model
            .superfaces(v)
            .flat_map(|f| box_interior(f, model))
            .map(|g| g.point)
            .collect();
        full.sort();
        parts.sort();
        out.push((v.facet_set.clone(), full == parts));
    }
    out
}

/// Everything the `cr` report needs for one quasi-SL model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrReport {
    pub pp: Poly,
    pub pp_cr_direct: Poly,
    pub pp_cr_closures: Poly,
    pub pp_cr_strata: Poly,
    pub per_sector: Vec<SectorContribution>,
    pub identities: Vec<IdentityCheck>,
    /// Faces where the `Box_v = ⊔ Box_F°` partition fails.
    pub gdecom_failures: Vec<Vec<usize>>,
}

impl CrReport {
    pub fn routes_agree(&self) -> bool {
        self.pp_cr_direct == self.pp_cr_closures && self.pp_cr_direct == self.pp_cr_strata
    }

    pub fn identity_passed(&self, name: &str) -> bool {
        self.identities
            .iter()
            .filter(|c| c.name == name)
            .all(IdentityCheck::passed)
    }

    pub fn all_passed(&self) -> bool {
        self.routes_agree()
            && self.identities.iter().all(IdentityCheck::passed)
            && self.gdecom_failures.is_empty()
    }

    pub fn pp_cr(&self) -> &Poly {
        &self.pp_cr_direct
    }
}

pub fn cr_report(model: &Model) -> Result<CrReport, CohomologyError> {
    let pp = pp_ordinary(model.polytope(), model);
    let pp_cr_direct = pp_cr_direct(model)?;
    let pp_cr_closures = pp_cr_via_closures(model)?;
    let pp_cr_strata = pp_cr_via_strata(model)?;
    let per_sector = sector_contributions(model)?;

    let mut identities = check_morestrat(model)?;
    identities.push(check_h_identity(model));
    identities.push(IdentityCheck::new(
        "newpon_-1",
        None,
        pp_cr_direct.clone(),
        pp_cr_closures.clone(),
    ));
    identities.push(IdentityCheck::new(
        "newpon",
        None,
        pp_cr_direct.clone(),
        pp_cr_strata.clone(),
    ));
    let gdecom_failures = check_gdecom(model)
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(f, _)| f)
        .collect();
    Ok(CrReport {
        pp,
        pp_cr_direct,
        pp_cr_closures,
        pp_cr_strata,
        per_sector,
        identities,
        gdecom_failures,
    })
}
