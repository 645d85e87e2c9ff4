//! Local groups `G_F` as Box elements: enumeration, ages, heights, the
//! `W`/`W̃` age polynomials and the quasi-SL test.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{frac, is_integral, Int, Poly, Rat};
use crate::intlat::{coords_in_basis, saturate, smith_normal_form, IntMat, IntVec, LatticeError};
use crate::model::{Face, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectorError {
    #[error("non-integral age {age} at face {face:?} (coefficients {coeffs:?})")]
    NonIntegralAge {
        face: Vec<usize>,
        coeffs: Vec<Rat>,
        age: Rat,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The unique representative `g = Σ a_j λ_j` with every `a_j ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxElement {
    pub coeffs: Vec<Rat>,
    pub point: IntVec,
    pub age: Rat,
    /// Number of nonzero coefficients, i.e. `rank(g − I)`.
    pub height: usize,
}

impl BoxElement {
    fn new(coeffs: Vec<Rat>, point: IntVec) -> Self {
        let age = coeffs.iter().fold(Rat::zero(), |acc, a| acc + a);
        let height = coeffs.iter().filter(|a| !a.is_zero()).count();
        BoxElement {
            coeffs,
            point,
            age,
            height,
        }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        BoxElement::new(vec![Rat::zero(); k], vec![Int::zero(); n])
    }

    pub fn is_identity(&self) -> bool {
        self.height == 0
    }

    /// All coefficients strictly positive.
    pub fn is_interior(&self) -> bool {
        self.height == self.coeffs.len()
    }

    pub fn integral_age(&self) -> Option<usize> {
        if is_integral(&self.age) {
            self.age.to_integer().to_usize()
        } else {
            None
        }
    }
}

/// Order of `((span L) ∩ Z^n) / L` for the lattice spanned by `vectors`.
pub fn cone_group_order(n: usize, vectors: &[IntVec]) -> Result<Int, LatticeError> {
    if vectors.is_empty() {
        return Ok(Int::one());
    }
    Ok(saturate(&IntMat::from_columns(n, vectors))?.index)
}

/// Box elements of the simplicial cone spanned by linearly independent
/// `vectors`, sorted lexicographically by coefficient vector.
///
/// With `L = B·M` for a saturated basis `B`, the group is `Z^k / M Z^k`.
/// Coset representatives come from the Smith form `U M V = D` as `U⁻¹ y`
/// with `0 ≤ y_i < d_i`, and each is mapped to `frac(M⁻¹ x)`.
pub fn cone_box(n: usize, vectors: &[IntVec]) -> Result<Vec<BoxElement>, LatticeError> {
    let k = vectors.len();
    if k == 0 {
        return Ok(vec![BoxElement::identity(n, 0)]);
    }
    let l = IntMat::from_columns(n, vectors);
    let sat = saturate(&l)?;
    let snf = smith_normal_form(&sat.coords);
    let moduli: Vec<Int> = snf.diagonal();

    let mut out = Vec::new();
    let mut y = vec![Int::zero(); k];
    loop {
        let x = snf.u_inv.mul_vec(&y);
        let a = coords_in_basis(&sat.coords, &x)?;
        let coeffs: Vec<Rat> = a.iter().map(frac).collect();
        let point = lattice_point(n, vectors, &coeffs);
        out.push(BoxElement::new(coeffs, point));

        // odometer over the product of Z/d_i
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return Ok(out);
            }
            y[i] += 1;
            if y[i] < moduli[i] {
                break;
            }
            y[i] = Int::zero();
            i += 1;
        }
    }
}

/// `Σ a_j v_j`, asserted integral.
fn lattice_point(n: usize, vectors: &[IntVec], coeffs: &[Rat]) -> IntVec {
    (0..n)
        .map(|r| {
            let s = vectors
                .iter()
                .zip(coeffs)
                .fold(Rat::zero(), |acc, (v, a)| acc + a * &v[r]);
            assert!(s.is_integer(), "Box element must be a lattice point");
            s.to_integer()
        })
        .collect()
}

/// `|G_F|`; one for `F = P`.
pub fn local_group_order(face: &Face, model: &Model) -> Int {
    cone_group_order(model.n(), &model.characteristic_set(face)).expect("λ_F is independent")
}

/// `Box_F`, the full local group.
pub fn enumerate_box(face: &Face, model: &Model) -> Vec<BoxElement> {
    cone_box(model.n(), &model.characteristic_set(face)).expect("λ_F is independent")
}

/// `Box_F°`: elements with every coefficient in `(0, 1)`. For `F = P` this
/// is the identity alone.
pub fn box_interior(face: &Face, model: &Model) -> Vec<BoxElement> {
    enumerate_box(face, model)
        .into_iter()
        .filter(BoxElement::is_interior)
        .collect()
}

/// `Σ s^{age}` over the given elements; every age must be an integer.
pub fn age_polynomial<'a>(
    elements: impl IntoIterator<Item = &'a BoxElement>,
    face: &[usize],
) -> Result<Poly, SectorError> {
    let mut p = Poly::zero();
    for g in elements {
        let Some(age) = g.integral_age() else {
            return Err(SectorError::NonIntegralAge {
                face: face.to_vec(),
                coeffs: g.coeffs.clone(),
                age: g.age.clone(),
            });
        };
        p += &Poly::monomial(Int::one(), age);
    }
    Ok(p)
}

/// `W`: age generating polynomial of the whole Box.
pub fn w_of_box(elements: &[BoxElement], face: &[usize]) -> Result<Poly, SectorError> {
    age_polynomial(elements, face)
}

/// `W̃`: the same restricted to full height.
pub fn w_tilde_of_box(elements: &[BoxElement], face: &[usize]) -> Result<Poly, SectorError> {
    age_polynomial(elements.iter().filter(|g| g.is_interior()), face)
}

pub fn w_polynomial(face: &Face, model: &Model) -> Result<Poly, SectorError> {
    w_of_box(&enumerate_box(face, model), &face.facet_set)
}

pub fn w_tilde_polynomial(face: &Face, model: &Model) -> Result<Poly, SectorError> {
    w_tilde_of_box(&enumerate_box(face, model), &face.facet_set)
}

/// `W` of the cone over arbitrary independent lattice vectors.
pub fn w_of_vectors(n: usize, vectors: &[IntVec]) -> Result<Poly, SectorError> {
    let b = cone_box(n, vectors)?;
    w_of_box(&b, &[])
}

/// Outcome of the quasi-SL test, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiSl {
    pub witness: Option<(Vec<usize>, BoxElement)>,
}

impl QuasiSl {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Every Box element at every vertex has integral age. Vertices suffice
/// because `Box_v` is the disjoint union of `Box_F°` over `F ≥ v`.
pub fn quasi_sl_report(model: &Model) -> QuasiSl {
    for face in model.faces().iter().filter(|f| f.dim == 0) {
        if let Some(g) = enumerate_box(face, model)
            .into_iter()
            .find(|g| !is_integral(&g.age))
        {
            return QuasiSl {
                witness: Some((face.facet_set.clone(), g)),
            };
        }
    }
    QuasiSl { witness: None }
}

pub fn is_quasi_sl(model: &Model) -> bool {
    quasi_sl_report(model).holds()
}

/// A twisted sector `(X(F), g)`, or the untwisted sector `(P, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub face: Vec<usize>,
    pub element: BoxElement,
}

impl Sector {
    pub fn is_untwisted(&self) -> bool {
        self.face.is_empty()
    }
}

/// The untwisted sector followed by all twisted sectors, in canonical face
/// order and lexicographic coefficient order within a face.
pub fn sectors(model: &Model) -> Vec<Sector> {
    let mut out = Vec::new();
    for face in model.faces() {
        for g in box_interior(face, model) {
            if face.is_polytope() || !g.is_identity() {
                out.push(Sector {
                    face: face.facet_set.clone(),
                    element: g,
                });
            }
        }
    }
    out
}

/// Box elements of every face, indexed like `model.faces()`.
pub fn all_boxes(model: &Model) -> Vec<Vec<BoxElement>> {
    model
        .faces()
        .iter()
        .map(|f| enumerate_box(f, model))
        .collect()
}
