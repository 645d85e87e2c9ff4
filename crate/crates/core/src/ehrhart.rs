//! Lattice simplices `Δ_F`, their dilates and Ehrhart numerators.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{binom, Int, Rat};
use crate::intlat::{coords_in_basis, det, saturate, IntMat, IntVec, LatticeError};
use crate::model::{Face, Model};
use crate::sectors::cone_box;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("the whole polytope has no simplex Δ")]
    NoDelta,
    #[error("vertex {0} does not lie on Δ of the ambient face")]
    NotOnDelta(usize),
    #[error("simplex vertices are linearly dependent")]
    Dependent,
    #[error("cone over the simplex has non-integral ages")]
    NonIntegralAges,
    #[error("negative Ehrhart numerator coefficient {value} at degree {degree}")]
    NegativeCoefficient { degree: usize, value: Int },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A simplex with lattice vertices inside some `Δ_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeSimplex {
    /// Facet set of the ambient face `F`.
    pub ambient: Vec<usize>,
    pub verts: Vec<IntVec>,
    /// Per vertex, its coefficients over `λ_F` (nonnegative, summing to one).
    pub coords: Vec<Vec<Rat>>,
    pub dim: usize,
    /// Codimension inside `Δ_F`.
    pub codim: usize,
}

impl LatticeSimplex {
    pub fn new(ambient: &Face, model: &Model, verts: Vec<IntVec>) -> Result<Self, EhrhartError> {
        if ambient.is_polytope() {
            return Err(EhrhartError::NoDelta);
        }
        if verts.is_empty() {
            return Err(EhrhartError::Dependent);
        }
        let n = model.n();
        let basis = IntMat::from_columns(n, &model.characteristic_set(ambient));
        let mut coords = Vec::with_capacity(verts.len());
        for (i, v) in verts.iter().enumerate() {
            let c = coords_in_basis(&basis, v).map_err(|_| EhrhartError::NotOnDelta(i))?;
            let sum = c.iter().fold(Rat::zero(), |a, x| a + x);
            if c.iter().any(Signed::is_negative) || !sum.is_one() {
                return Err(EhrhartError::NotOnDelta(i));
            }
            coords.push(c);
        }
        if saturate(&IntMat::from_columns(n, &verts)).is_err() {
            return Err(EhrhartError::Dependent);
        }
        let dim = verts.len() - 1;
        Ok(LatticeSimplex {
            ambient: ambient.facet_set.clone(),
            codim: (ambient.codim() - 1) - dim,
            verts,
            coords,
            dim,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.verts.first().map_or(0, Vec::len)
    }

    /// Union of the coefficient supports covers every index of `λ_F`,
    /// i.e. the simplex meets the relative interior of `Δ_F`.
    pub fn meets_interior(&self) -> bool {
        let k = self.ambient.len();
        (0..k).all(|j| self.coords.iter().any(|c| !c[j].is_zero()))
    }

    /// Ages of the cone over the simplex are integral iff the functional
    /// that is one on every vertex takes integer values on the saturated
    /// lattice of the span.
    pub fn is_gorenstein(&self) -> bool {
        let n = self.ambient_dim();
        let verts_mat = IntMat::from_columns(n, &self.verts);
        let sat = saturate(&verts_mat).expect("independent vertices");
        (0..sat.basis.cols()).all(|c| {
            let coeffs = coords_in_basis(&verts_mat, &sat.basis.column(c)).expect("in span");
            coeffs.iter().fold(Rat::zero(), |a, x| a + x).is_integer()
        })
    }
}

/// `Δ_F` itself, with vertices `λ_F` in facet order.
pub fn delta_of_face(face: &Face, model: &Model) -> Result<LatticeSimplex, EhrhartError> {
    LatticeSimplex::new(face, model, model.characteristic_set(face))
}

/// Number of lattice points of `kΔ` by exhaustive search.
///
/// A set of `d` coordinates on which the vertex matrix is invertible is
/// chosen; every integer point of the bounding box of `k·verts` in those
/// coordinates is lifted to the span and kept if the lift is integral, has
/// nonnegative coefficients and coefficient sum `k`.
pub fn dilate_count(sx: &LatticeSimplex, k: u64) -> Int {
    let n = sx.ambient_dim();
    let d = sx.verts.len();
    let k_int = Int::from(k);
    let full = IntMat::from_columns(n, &sx.verts);
    let rows = pivot_rows(&full, d);
    let square = IntMat::from_rows(&rows.iter().map(|&r| full.row(r)).collect::<Vec<_>>());
    let det_a = det(&square).expect("square");
    let adj = adjugate(&square);
    // full · adj / det_a maps pivot coordinates to the whole point
    let lift = &full * &adj;

    let lo: Vec<Int> = rows
        .iter()
        .map(|&r| sx.verts.iter().map(|v| &v[r] * &k_int).min().unwrap())
        .collect();
    let hi: Vec<Int> = rows
        .iter()
        .map(|&r| sx.verts.iter().map(|v| &v[r] * &k_int).max().unwrap())
        .collect();

    let target = &k_int * &det_a;
    let mut count = Int::zero();
    let mut x = lo.clone();
    loop {
        let scaled = adj.mul_vec(&x);
        let nonneg = scaled
            .iter()
            .all(|c| c.is_zero() || c.is_positive() == det_a.is_positive());
        if nonneg && scaled.iter().sum::<Int>() == target {
            let p = lift.mul_vec(&x);
            if p.iter().all(|c| (c % &det_a).is_zero()) {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i].clone();
            i += 1;
        }
    }
}

fn pivot_rows(m: &IntMat, d: usize) -> Vec<usize> {
    let n = m.rows();
    let mut combo: Vec<usize> = (0..d).collect();
    loop {
        let sub = IntMat::from_rows(&combo.iter().map(|&r| m.row(r)).collect::<Vec<_>>());
        if !det(&sub).expect("square").is_zero() {
            return combo;
        }
        // next combination in lexicographic order
        let mut i = d;
        loop {
            assert!(i > 0, "vertex matrix has full column rank");
            i -= 1;
            if combo[i] < n - d + i {
                combo[i] += 1;
                for j in i + 1..d {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn adjugate(a: &IntMat) -> IntMat {
    let d = a.rows();
    let mut adj = IntMat::zeros(d, d);
    if d == 1 {
        adj[(0, 0)] = Int::one();
        return adj;
    }
    for r in 0..d {
        for c in 0..d {
            let minor: Vec<IntVec> = (0..d)
                .filter(|&i| i != r)
                .map(|i| {
                    (0..d)
                        .filter(|&j| j != c)
                        .map(|j| a[(i, j)].clone())
                        .collect()
                })
                .collect();
            let m = det(&IntMat::from_rows(&minor)).expect("square");
            adj[(c, r)] = if (r + c) % 2 == 0 { m } else { -m };
        }
    }
    adj
}

/// `l(kΔ)` from the Box decomposition of the cone: every lattice point is a
/// Box element plus a nonnegative integer combination of the vertices.
pub fn dilate_count_fast(sx: &LatticeSimplex, k: u64) -> Result<Int, EhrhartError> {
    let d = sx.verts.len() as i64;
    let b = cone_box(sx.ambient_dim(), &sx.verts)?;
    let mut total = Int::zero();
    for g in &b {
        let age = g.integral_age().ok_or(EhrhartError::NonIntegralAges)? as i64;
        total += binom(k as i64 - age + d - 1, d - 1);
    }
    Ok(total)
}

/// `ψ_0 … ψ_{d−1}` with `P_Δ(t) = Σ ψ_i t^i / (1 − t)^d`, from the first `d`
/// brute-force dilate counts.
pub fn ehrhart_numerator(sx: &LatticeSimplex) -> Result<Vec<Int>, EhrhartError> {
    let d = sx.verts.len();
    if !sx.is_gorenstein() {
        return Err(EhrhartError::NonIntegralAges);
    }
    let dilates: Vec<Int> = (0..d as u64).map(|k| dilate_count(sx, k)).collect();
    numerator_from_dilates(&dilates, d)
}

/// Truncated product of `Σ l_k t^k` with `(1 − t)^d`.
pub fn numerator_from_dilates(dilates: &[Int], d: usize) -> Result<Vec<Int>, EhrhartError> {
    let mut psi = Vec::with_capacity(d);
    for i in 0..d {
        let mut acc = Int::zero();
        for j in 0..=i {
            let term = binom(d as i64, j as i64) * &dilates[i - j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(EhrhartError::NegativeCoefficient {
                degree: i,
                value: acc,
            });
        }
        psi.push(acc);
    }
    Ok(psi)
}

/// `ψ` as an `s`-polynomial coefficient list without trailing zeros.
pub fn trim(psi: &[Int]) -> Vec<Int> {
    let mut v = psi.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}
