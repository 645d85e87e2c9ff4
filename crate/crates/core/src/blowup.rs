//! Combinatorial blowups: face truncation with an extended characteristic
//! function, the star subdivisions they induce on `Δ`-simplices, and the
//! end-to-end check that Chen-Ruan Betti numbers survive a crepant blowup.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cohomology::{cr_report, CohomologyError, CrReport, IdentityCheck};
use crate::ehrhart::{EhrhartError, LatticeSimplex};
use crate::exact::{Int, Poly, Rat};
use crate::intlat::{coords_in_basis, det_rat, is_primitive, IntMat, IntVec};
use crate::model::{is_subset, Face, Model, ModelError};
use crate::sectors::{box_interior, is_quasi_sl, w_of_vectors, w_polynomial, SectorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("facet set {0:?} is not a face of the model")]
    NotAFace(Vec<usize>),
    #[error("cannot blow up a face of codimension {0}; need at least 2")]
    CodimTooSmall(usize),
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight {0} is not positive")]
    NonPositiveWeight(Rat),
    #[error("new characteristic vector {0:?} is not integral")]
    NonIntegral(Vec<Rat>),
    #[error("new characteristic vector {0:?} is not primitive")]
    NonPrimitive(IntVec),
    #[error("new characteristic vector coincides with ±λ_{0}")]
    Degenerate(usize),
    #[error("blown-up model is invalid: {0}")]
    Invalid(ModelError),
    #[error("point {0:?} is not in the relative interior of Δ")]
    NotInterior(IntVec),
    #[error("point {0:?} does not lie on Δ")]
    NotOnDelta(IntVec),
    #[error("face {sub:?} is not a subface of {face:?}")]
    NotASubface { sub: Vec<usize>, face: Vec<usize> },
    #[error("blowup is not crepant (weights sum to {0})")]
    NotCrepant(Rat),
    #[error(transparent)]
    Simplex(#[from] EhrhartError),
    #[error(transparent)]
    Sector(#[from] SectorError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Truncation of the face `∩_{j∈S} F_j` with new vector `Σ b_j λ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec {
    pub face: Vec<usize>,
    pub weights: Vec<Rat>,
}

impl BlowupSpec {
    pub fn new(face: Vec<usize>, weights: Vec<Rat>) -> Self {
        BlowupSpec { face, weights }
    }

    pub fn weight_sum(&self) -> Rat {
        self.weights.iter().fold(Rat::zero(), |a, b| a + b)
    }

    /// Checks the spec against `model` and returns `λ_0`.
    pub fn lambda0(&self, model: &Model) -> Result<IntVec, BlowupError> {
        let face = model
            .face(&self.face)
            .ok_or_else(|| BlowupError::NotAFace(self.face.clone()))?;
        if face.codim() < 2 {
            return Err(BlowupError::CodimTooSmall(face.codim()));
        }
        if self.weights.len() != self.face.len() {
            return Err(BlowupError::WeightCount {
                expected: self.face.len(),
                found: self.weights.len(),
            });
        }
        if let Some(b) = self.weights.iter().find(|b| !b.is_positive()) {
            return Err(BlowupError::NonPositiveWeight(b.clone()));
        }
        let n = model.n();
        let lambda = model.lambda();
        let rational: Vec<Rat> = (0..n)
            .map(|r| {
                self.face
                    .iter()
                    .zip(&self.weights)
                    .fold(Rat::zero(), |acc, (&j, b)| acc + b * &lambda[j][r])
            })
            .collect();
        if !rational.iter().all(Rat::is_integer) {
            return Err(BlowupError::NonIntegral(rational));
        }
        let l0: IntVec = rational.iter().map(Rat::to_integer).collect();
        if !is_primitive(&l0).unwrap_or(false) {
            return Err(BlowupError::NonPrimitive(l0));
        }
        for &j in &self.face {
            let neg: IntVec = lambda[j].iter().map(|x| -x).collect();
            if l0 == lambda[j] || l0 == neg {
                return Err(BlowupError::Degenerate(j));
            }
        }
        Ok(l0)
    }
}

/// Weights summing to one.
pub fn is_crepant(spec: &BlowupSpec) -> bool {
    spec.weight_sum().is_one()
}

/// The blown-up model: facet `m` is new with vector `λ_0`; every vertex
/// `v ⊇ S` is replaced by the `|S|` vertices `{m} ∪ I(v) ∖ {j}`, `j ∈ S`.
pub fn blow_up(model: &Model, spec: &BlowupSpec) -> Result<Model, BlowupError> {
    let l0 = spec.lambda0(model)?;
    let m = model.m();
    let mut vertices = Vec::new();
    let mut cut = Vec::new();
    for v in model.vertices() {
        if is_subset(&spec.face, v) {
            cut.push(v);
        } else {
            vertices.push(v.clone());
        }
    }
    for v in cut {
        for &j in &spec.face {
            let mut nv: Vec<usize> = v.iter().copied().filter(|&i| i != j).collect();
            nv.push(m);
            vertices.push(nv);
        }
    }
    let mut lambda = model.lambda().to_vec();
    lambda.push(l0);
    Model::new(
        model.name().map(Into::into),
        model.n(),
        m + 1,
        vertices,
        lambda,
    )
    .map_err(BlowupError::Invalid)
}

/// Crepant blowups available at every face: one per interior Box element
/// of age one, which is exactly a lattice point in the relative interior
/// of `Δ_F`.
pub fn crepant_candidates(model: &Model) -> Vec<BlowupSpec> {
    let mut out = Vec::new();
    for face in model.faces().iter().filter(|f| f.codim() >= 2) {
        for g in box_interior(face, model) {
            if g.age.is_one() {
                out.push(BlowupSpec::new(face.facet_set.clone(), g.coeffs));
            }
        }
    }
    out
}

/// A triangulation of `Δ_F` for some face `F` of the original model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub ambient: Vec<usize>,
    pub simplices: Vec<LatticeSimplex>,
    /// The simplices meeting the relative interior of `Δ_F`.
    pub interior_simplices: Vec<LatticeSimplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error("subset of a simplex missing from the triangulation")]
    NotFaceClosed,
    #[error("maximal simplex volumes sum to {0}, expected 1")]
    Volume(Rat),
    #[error("ridge shared by {count} maximal simplices (boundary: {boundary})")]
    Ridge { count: usize, boundary: bool },
    #[error("maximal simplices on the same side of an interior ridge")]
    Overlap,
}

impl Subdivision {
    fn from_simplices(ambient: Vec<usize>, simplices: Vec<LatticeSimplex>) -> Self {
        let interior_simplices = simplices
            .iter()
            .filter(|s| s.meets_interior())
            .cloned()
            .collect();
        Subdivision {
            ambient,
            simplices,
            interior_simplices,
        }
    }

    pub fn maximal(&self) -> impl Iterator<Item = &LatticeSimplex> {
        let k = self.ambient.len();
        self.simplices.iter().filter(move |s| s.dim + 1 == k)
    }

    /// Checks the triangulation axioms with exact arithmetic: closure under
    /// faces, normalized volumes of maximal simplices summing to `Δ_F`'s,
    /// and every interior ridge shared by exactly two maximal simplices
    /// lying on opposite sides of it (boundary ridges by exactly one).
    pub fn validate(&self) -> Result<(), SubdivisionError> {
        let key = |s: &LatticeSimplex| -> BTreeSet<IntVec> { s.verts.iter().cloned().collect() };
        let present: BTreeSet<BTreeSet<IntVec>> = self.simplices.iter().map(key).collect();
        for s in &self.simplices {
            let verts: Vec<&IntVec> = s.verts.iter().collect();
            for mask in 1u32..(1 << verts.len()) {
                let sub: BTreeSet<IntVec> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| (*v).clone())
                    .collect();
                if !present.contains(&sub) {
                    return Err(SubdivisionError::NotFaceClosed);
                }
            }
        }

        let volume = self
            .maximal()
            .map(|s| det_rat(&s.coords).abs())
            .fold(Rat::zero(), |a, b| a + b);
        if !volume.is_one() {
            return Err(SubdivisionError::Volume(volume));
        }

        let k = self.ambient.len();
        // ridge -> signed volumes of the maximal simplices containing it
        let mut ridges: BTreeMap<Vec<Vec<Rat>>, Vec<Rat>> = BTreeMap::new();
        for s in self.maximal() {
            for drop in 0..s.coords.len() {
                let mut ridge: Vec<Vec<Rat>> = s
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, c)| c.clone())
                    .collect();
                ridge.sort();
                let mut m = ridge.clone();
                m.push(s.coords[drop].clone());
                ridges.entry(ridge).or_default().push(det_rat(&m));
            }
        }
        for (ridge, sides) in &ridges {
            let boundary = (0..k).any(|j| ridge.iter().all(|c| c[j].is_zero()));
            match (boundary, sides.len()) {
                (true, 1) => {}
                (false, 2) => {
                    if sides[0].is_positive() == sides[1].is_positive() {
                        return Err(SubdivisionError::Overlap);
                    }
                }
                (boundary, count) => return Err(SubdivisionError::Ridge { count, boundary }),
            }
        }
        Ok(())
    }
}

/// Star subdivision of `Δ_F` at the interior lattice point `λ_0`.
///
/// Maximal simplices are `{λ_0} ∪ λ_F ∖ {λ_j}`; the triangulation is every
/// nonempty vertex subset of those.
pub fn star_subdivide(
    face: &Face,
    lambda0: &[Int],
    model: &Model,
) -> Result<Subdivision, BlowupError> {
    let k = face.codim();
    let chars = model.characteristic_set(face);
    if k == 0 {
        return Err(EhrhartError::NoDelta.into());
    }
    let basis = IntMat::from_columns(model.n(), &chars);
    let b =
        coords_in_basis(&basis, lambda0).map_err(|_| BlowupError::NotOnDelta(lambda0.to_vec()))?;
    if b.iter().fold(Rat::zero(), |a, x| a + x) != Rat::one() {
        return Err(BlowupError::NotOnDelta(lambda0.to_vec()));
    }
    if b.iter().any(|x| !x.is_positive()) {
        return Err(BlowupError::NotInterior(lambda0.to_vec()));
    }
    // labels 0..k are λ_F, label k is λ_0
    let mut label_sets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << (k + 1)) {
        let labels: Vec<usize> = (0..=k).filter(|i| mask & (1 << i) != 0).collect();
        let has_all_of_face = (0..k).all(|i| labels.contains(&i));
        if !has_all_of_face {
            label_sets.push(labels);
        }
    }
    label_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut simplices = Vec::with_capacity(label_sets.len());
    for labels in label_sets {
        let verts = labels
            .iter()
            .map(|&i| {
                if i == k {
                    lambda0.to_vec()
                } else {
                    chars[i].clone()
                }
            })
            .collect();
        simplices.push(LatticeSimplex::new(face, model, verts)?);
    }
    Ok(Subdivision::from_simplices(
        face.facet_set.clone(),
        simplices,
    ))
}

/// Triangulation of `Δ_{F'}` for `F' ≤ F` induced by `τ_F`: simplices
/// `θ ∪ β` with `θ ∈ τ_F ∪ {∅}` and `β ⊆ K = λ_{F'} ∖ λ_F`.
pub fn induced_triangulation(
    subface: &Face,
    tau: &Subdivision,
    model: &Model,
) -> Result<Subdivision, BlowupError> {
    if !is_subset(&tau.ambient, &subface.facet_set) {
        return Err(BlowupError::NotASubface {
            sub: subface.facet_set.clone(),
            face: tau.ambient.clone(),
        });
    }
    let extra: Vec<IntVec> = subface
        .facet_set
        .iter()
        .filter(|j| tau.ambient.binary_search(j).is_err())
        .map(|&j| model.lambda()[j].clone())
        .collect();
    let mut simplices = Vec::new();
    let thetas = core::iter::once(None).chain(tau.simplices.iter().map(Some));
    for theta in thetas {
        for mask in 0u32..(1 << extra.len()) {
            if theta.is_none() && mask == 0 {
                continue;
            }
            let mut verts: Vec<IntVec> = theta.map(|t| t.verts.clone()).unwrap_or_default();
            verts.extend(
                extra
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| v.clone()),
            );
            simplices.push(LatticeSimplex::new(subface, model, verts)?);
        }
    }
    simplices.sort_by_key(|s| s.dim);
    Ok(Subdivision::from_simplices(
        subface.facet_set.clone(),
        simplices,
    ))
}

/// `W(Δ_F) = Σ_{θ meeting the interior} (s − 1)^{codim θ} · W(θ)`.
pub fn check_wdelta(
    face: &Face,
    sub: &Subdivision,
    model: &Model,
) -> Result<IdentityCheck, BlowupError> {
    let lhs = w_polynomial(face, model)?;
    let mut rhs = Poly::zero();
    for theta in &sub.interior_simplices {
        let w = w_of_vectors(model.n(), &theta.verts)?;
        rhs += &(&Poly::s_minus_one().pow(theta.codim as u32) * &w);
    }
    Ok(IdentityCheck::new(
        "wdelta",
        Some(face.facet_set.clone()),
        lhs,
        rhs,
    ))
}

/// Outcome of the McKay check for one crepant blowup.
#[derive(Debug, Clone)]
pub struct McKayReport {
    pub spec: BlowupSpec,
    pub lambda0: IntVec,
    pub blown: Model,
    pub before: CrReport,
    /// `None` when the blown-up model fails to be quasi-SL.
    pub after: Option<CrReport>,
    pub quasi_sl_after: bool,
    pub wdelta: Vec<IdentityCheck>,
    /// Faces whose induced subdivision failed validation.
    pub invalid_subdivisions: Vec<Vec<usize>>,
    /// Vertex-sign positivity before and after, under the fixed column
    /// convention. Informational only.
    pub positive_before: bool,
    pub positive_after: bool,
}

impl McKayReport {
    pub fn pp_cr_equal(&self) -> bool {
        self.after
            .as_ref()
            .is_some_and(|a| a.pp_cr() == self.before.pp_cr())
    }

    pub fn verdict(&self) -> bool {
        self.quasi_sl_after
            && self.before.all_passed()
            && self.after.as_ref().is_some_and(CrReport::all_passed)
            && self.pp_cr_equal()
            && self.wdelta.iter().all(IdentityCheck::passed)
            && self.invalid_subdivisions.is_empty()
    }
}

/// Blows up, checks quasi-SL is preserved, compares `PP_CR` on both sides
/// (each by all three routes) and checks the subdivision identity on
/// `Δ_F` and every `Δ_{F'}` with `F' ≤ F`.
pub fn mckay_check(model: &Model, spec: &BlowupSpec) -> Result<McKayReport, BlowupError> {
    if !is_crepant(spec) {
        return Err(BlowupError::NotCrepant(spec.weight_sum()));
    }
    let before = cr_report(model)?;
    let lambda0 = spec.lambda0(model)?;
    let blown = blow_up(model, spec)?;
    let quasi_sl_after = is_quasi_sl(&blown);
    let after = if quasi_sl_after {
        Some(cr_report(&blown)?)
    } else {
        None
    };

    let face = model.face(&spec.face).expect("validated by lambda0");
    let tau = star_subdivide(face, &lambda0, model)?;
    let mut wdelta = Vec::new();
    let mut invalid_subdivisions = Vec::new();
    for sub in model.subfaces(face) {
        let s = if sub == face {
            tau.clone()
        } else {
            induced_triangulation(sub, &tau, model)?
        };
        if s.validate().is_err() {
            invalid_subdivisions.push(sub.facet_set.clone());
        }
        wdelta.push(check_wdelta(sub, &s, model)?);
    }

    Ok(McKayReport {
        spec: spec.clone(),
        lambda0,
        positive_before: model.positively_omnioriented(),
        positive_after: blown.positively_omnioriented(),
        blown,
        before,
        after,
        quasi_sl_after,
        wdelta,
        invalid_subdivisions,
    })
}

/// Weights `(1/k, …, 1/k)`.
pub fn uniform_weights(k: usize) -> Vec<Rat> {
    vec![Rat::new(Int::one(), Int::from(k)); k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::model::library::*;
    use crate::model::model_from_i64;

    fn ints(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn spec(face: &[usize], w: &[(i64, i64)]) -> BlowupSpec {
        BlowupSpec::new(face.to_vec(), w.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn blow_up_wp112() {
        let w = wp112();
        let s = spec(&[0, 2], &[(1, 2), (1, 2)]);
        assert_eq!(s.lambda0(&w).unwrap(), ints(&[0, -1]));
        let b = blow_up(&w, &s).unwrap();
        assert_eq!(b.m(), 4);
        assert_eq!(b.lambda()[3], ints(&[0, -1]));
        let mut vs: Vec<Vec<usize>> = b.vertices().to_vec();
        vs.sort();
        assert_eq!(vs, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        assert!(b.is_smooth());
    }

    #[test]
    fn blow_up_z3() {
        let z = z3_tetrahedron();
        let s = BlowupSpec::new(vec![0, 1, 2], uniform_weights(3));
        assert_eq!(s.lambda0(&z).unwrap(), ints(&[0, 0, 1]));
        let b = blow_up(&z, &s).unwrap();
        assert_eq!(b.m(), 5);
        assert_eq!(b.vertices().len(), 6);
        for v in 0..6 {
            assert_eq!(b.vertex_det(v).abs(), int(1));
        }
    }

    #[test]
    fn blow_up_errors() {
        let w = wp112();
        assert_eq!(
            blow_up(&w, &spec(&[0, 1], &[(1, 3), (1, 3)])),
            Err(BlowupError::NonIntegral(vec![rat(1, 3), rat(1, 3)]))
        );
        assert_eq!(
            blow_up(&w, &spec(&[0], &[(1, 1)])),
            Err(BlowupError::CodimTooSmall(1))
        );
        assert!(matches!(
            blow_up(&w, &spec(&[0, 3], &[(1, 1), (1, 1)])),
            Err(BlowupError::NotAFace(_))
        ));
        assert!(matches!(
            blow_up(&w, &spec(&[0, 2], &[(1, 1), (0, 1)])),
            Err(BlowupError::NonPositiveWeight(_))
        ));
        // λ0 + λ2 = (0,-2)
        assert_eq!(
            blow_up(&w, &spec(&[0, 2], &[(1, 1), (1, 1)])),
            Err(BlowupError::NonPrimitive(ints(&[0, -2])))
        );
        assert!(matches!(
            blow_up(&w, &spec(&[0, 2], &[(1, 1)])),
            Err(BlowupError::WeightCount { .. })
        ));
    }

    #[test]
    fn crepancy() {
        assert!(is_crepant(&spec(&[0, 1], &[(1, 2), (1, 2)])));
        assert!(!is_crepant(&spec(&[0, 1], &[(1, 1), (1, 1)])));
        assert!(is_crepant(&BlowupSpec::new(
            vec![0, 1, 2],
            uniform_weights(3)
        )));
    }

    #[test]
    fn star_subdivisions() {
        let w = wp112();
        let f = w.face(&[0, 2]).unwrap();
        let tau = star_subdivide(f, &ints(&[0, -1]), &w).unwrap();
        assert_eq!(tau.maximal().count(), 2);
        assert_eq!(tau.interior_simplices.len(), 3);
        tau.validate().unwrap();

        let z = z3_tetrahedron();
        let f = z.face(&[0, 1, 2]).unwrap();
        let tau = star_subdivide(f, &ints(&[0, 0, 1]), &z).unwrap();
        assert_eq!(tau.maximal().count(), 3);
        assert_eq!(tau.interior_simplices.len(), 7);
        assert!(tau
            .interior_simplices
            .iter()
            .all(|s| s.verts.contains(&ints(&[0, 0, 1]))));
        tau.validate().unwrap();

        assert!(matches!(
            star_subdivide(f, &ints(&[1, 0, 0]), &z),
            Err(BlowupError::NotInterior(_))
        ));
    }

    #[test]
    fn broken_subdivisions_are_caught() {
        let z = z3_tetrahedron();
        let f = z.face(&[0, 1, 2]).unwrap();
        let mut tau = star_subdivide(f, &ints(&[0, 0, 1]), &z).unwrap();
        let last = tau.simplices.pop().unwrap();
        assert!(tau.validate().is_err());
        tau.simplices.push(last.clone());
        tau.simplices.push(last);
        assert!(matches!(tau.validate(), Err(SubdivisionError::Volume(_))));
    }

    #[test]
    fn wdelta_examples() {
        let w = wp112();
        let f = w.face(&[0, 2]).unwrap();
        let trivial = Subdivision::from_simplices(
            f.facet_set.clone(),
            vec![crate::ehrhart::delta_of_face(f, &w).unwrap()],
        );
        let c = check_wdelta(f, &trivial, &w).unwrap();
        assert!(c.passed());
        let tau = star_subdivide(f, &ints(&[0, -1]), &w).unwrap();
        let c = check_wdelta(f, &tau, &w).unwrap();
        assert!(c.passed());
        assert_eq!(c.rhs, Poly::from_i64(&[1, 1]));

        let z = z3_tetrahedron();
        let f = z.face(&[0, 1, 2]).unwrap();
        let tau = star_subdivide(f, &ints(&[0, 0, 1]), &z).unwrap();
        let c = check_wdelta(f, &tau, &z).unwrap();
        assert_eq!(c.lhs, Poly::from_i64(&[1, 1, 1]));
        assert!(c.passed());
    }

    #[test]
    fn induced_on_identical_face() {
        let z = z3_tetrahedron();
        let f = z.face(&[0, 1, 2]).unwrap();
        let tau = star_subdivide(f, &ints(&[0, 0, 1]), &z).unwrap();
        let same = induced_triangulation(f, &tau, &z).unwrap();
        assert_eq!(same.simplices.len(), tau.simplices.len());
        assert_eq!(same.interior_simplices.len(), tau.interior_simplices.len());
        let other = z.face(&[0, 1, 3]).unwrap();
        assert!(matches!(
            induced_triangulation(other, &tau, &z),
            Err(BlowupError::NotASubface { .. })
        ));
    }

    /// Edge `{0,1}` of a 3-dimensional model with a `Z₂` transversal
    /// singularity; blown up at `(λ0 + λ1)/2`.
    fn edge_model() -> Model {
        model_from_i64(
            "edge",
            3,
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            &[&[1, 0, 0], &[1, 2, 0], &[0, 0, 1], &[-1, -1, -1]],
        )
    }

    #[test]
    fn induced_on_vertex_of_blown_edge() {
        let m = edge_model();
        let edge = m.face(&[0, 1]).unwrap();
        let tau = star_subdivide(edge, &ints(&[1, 1, 0]), &m).unwrap();
        assert_eq!(tau.interior_simplices.len(), 3);
        let vtx = m.face(&[0, 1, 2]).unwrap();
        let ind = induced_triangulation(vtx, &tau, &m).unwrap();
        ind.validate().unwrap();
        assert_eq!(ind.interior_simplices.len(), tau.interior_simplices.len());
        // barycenter oracle: the mean of the vertex coordinates is strictly
        // positive exactly for simplices meeting the interior
        for s in &ind.simplices {
            let k = s.coords[0].len();
            let bary: Vec<Rat> = (0..k)
                .map(|j| s.coords.iter().fold(rat(0, 1), |a, c| a + &c[j]))
                .collect();
            let inside = bary.iter().all(|x| x.is_positive());
            assert_eq!(inside, s.meets_interior());
            assert_eq!(
                inside,
                s.verts.contains(&ints(&[1, 1, 0])) && s.verts.contains(&ints(&[0, 0, 1]))
            );
        }
        assert!(check_wdelta(vtx, &ind, &m).unwrap().passed());
    }

    #[test]
    fn mckay_golden() {
        let r = mckay_check(&wp112(), &spec(&[0, 2], &[(1, 2), (1, 2)])).unwrap();
        assert!(r.verdict(), "{r:?}");
        assert_eq!(r.before.pp_cr(), &Poly::from_i64(&[1, 2, 1]));
        assert_eq!(
            r.after.as_ref().unwrap().pp_cr(),
            &Poly::from_i64(&[1, 2, 1])
        );

        let z = z3_tetrahedron();
        let r = mckay_check(&z, &BlowupSpec::new(vec![0, 1, 2], uniform_weights(3))).unwrap();
        assert!(r.verdict());
        let after = r.after.unwrap();
        assert_eq!(after.pp_cr(), &Poly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(after.pp, Poly::from_i64(&[1, 2, 2, 1]));
        assert_eq!(r.blown.f_vector(r.blown.polytope()), ints(&[6, 9, 5, 1]));
    }

    #[test]
    fn mckay_rejects_bad_specs() {
        let w = wp112();
        assert!(matches!(
            mckay_check(&w, &spec(&[0, 2], &[(1, 1), (1, 1)])),
            Err(BlowupError::NotCrepant(_))
        ));
        let bad = model_from_i64(
            "k3",
            2,
            &[&[0, 1], &[1, 2], &[0, 2]],
            &[&[1, 0], &[0, 1], &[-1, -3]],
        );
        assert!(matches!(
            mckay_check(&bad, &spec(&[0, 2], &[(1, 2), (1, 2)])),
            Err(BlowupError::Cohomology(CohomologyError::NotQuasiSl { .. }))
        ));
    }

    #[test]
    fn candidates() {
        let c = crepant_candidates(&wp112());
        assert_eq!(c, vec![spec(&[0, 2], &[(1, 2), (1, 2)])]);
        let c = crepant_candidates(&z3_tetrahedron());
        assert_eq!(c, vec![BlowupSpec::new(vec![0, 1, 2], uniform_weights(3))]);
        assert!(crepant_candidates(&cp2()).is_empty());
    }
}
