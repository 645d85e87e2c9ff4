//! Combinatorial models `(P, Λ)`: a simple polytope given by its
//! vertex–facet incidences plus one characteristic vector per facet.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{int, Int, Poly};
use crate::intlat::{det, is_primitive, IntMat, IntVec};

/// A single broken model invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("dimension n must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} characteristic vectors, found {found}")]
    LambdaCount { expected: usize, found: usize },
    #[error("characteristic vector {facet} has length {found}, expected {expected}")]
    LambdaLength {
        facet: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} is not simple: {reason}")]
    NonSimpleVertex { vertex: usize, reason: &'static str },
    #[error("vertex {vertex} references facet {facet} outside [0, {m})")]
    FacetOutOfRange {
        vertex: usize,
        facet: usize,
        m: usize,
    },
    #[error("facet {0} contains no vertex")]
    UnusedFacet(usize),
    #[error("vertices {0} and {1} have the same facet set")]
    DuplicateVertex(usize, usize),
    #[error("characteristic vector {0} is zero")]
    ZeroLambda(usize),
    #[error("characteristic vector {0} is not primitive")]
    NonPrimitive(usize),
    #[error("characteristic vectors are linearly dependent at vertex {facets:?}")]
    Dependent { facets: Vec<usize> },
    #[error("model has no vertices")]
    NoVertices,
}

/// Every violated invariant of a rejected model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid model:")?;
        for v in &self.violations {
            write!(f, " {v};")?;
        }
        Ok(())
    }
}

impl core::error::Error for ModelError {}

/// A face of `P`, identified with the set of facets containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    /// Sorted facet indices; empty for `P` itself.
    pub facet_set: Vec<usize>,
    pub dim: usize,
    /// Vertices `v` with `facet_set ⊆ I(v)`.
    pub vertex_ids: Vec<usize>,
}

impl Face {
    pub fn codim(&self) -> usize {
        self.facet_set.len()
    }

    pub fn is_polytope(&self) -> bool {
        self.facet_set.is_empty()
    }

    /// `self ≤ other` in the face poset: `self` is contained in `other`.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        is_subset(&other.facet_set, &self.facet_set)
    }
}

/// Inclusion of sorted index sets.
pub fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// A validated combinatorial model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    name: Option<String>,
    n: usize,
    m: usize,
    vertices: Vec<Vec<usize>>,
    lambda: Vec<IntVec>,
    faces: Vec<Face>,
    face_index: BTreeMap<Vec<usize>, usize>,
}

impl Model {
    /// Validates the raw data and builds the face lattice.
    ///
    /// Vertex facet sets are sorted; vertex order is kept as given.
    pub fn new(
        name: Option<String>,
        n: usize,
        m: usize,
        vertices: Vec<Vec<usize>>,
        lambda: Vec<IntVec>,
    ) -> Result<Model, ModelError> {
        let mut violations = Vec::new();
        if n == 0 {
            violations.push(Violation::ZeroDimension);
        }
        if vertices.is_empty() {
            violations.push(Violation::NoVertices);
        }
        if lambda.len() != m {
            violations.push(Violation::LambdaCount {
                expected: m,
                found: lambda.len(),
            });
        }
        let mut lengths_ok = true;
        for (i, l) in lambda.iter().enumerate() {
            if l.len() != n {
                lengths_ok = false;
                violations.push(Violation::LambdaLength {
                    facet: i,
                    expected: n,
                    found: l.len(),
                });
            } else if l.iter().all(Zero::is_zero) {
                lengths_ok = false;
                violations.push(Violation::ZeroLambda(i));
            } else if !is_primitive(l).unwrap_or(false) {
                violations.push(Violation::NonPrimitive(i));
            }
        }

        let mut sorted = Vec::with_capacity(vertices.len());
        let mut vertices_ok = true;
        for (vi, v) in vertices.iter().enumerate() {
            let mut s = v.clone();
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                vertices_ok = false;
                violations.push(Violation::NonSimpleVertex {
                    vertex: vi,
                    reason: "repeated facet index",
                });
            } else if s.len() != n {
                vertices_ok = false;
                violations.push(Violation::NonSimpleVertex {
                    vertex: vi,
                    reason: "facet count differs from n",
                });
            }
            for &f in &s {
                if f >= m {
                    vertices_ok = false;
                    violations.push(Violation::FacetOutOfRange {
                        vertex: vi,
                        facet: f,
                        m,
                    });
                }
            }
            sorted.push(s);
        }
        let mut seen: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
        for (vi, s) in sorted.iter().enumerate() {
            if let Some(&first) = seen.get(s) {
                violations.push(Violation::DuplicateVertex(first, vi));
            } else {
                seen.insert(s, vi);
            }
        }
        let used: BTreeSet<usize> = sorted.iter().flatten().copied().collect();
        for f in 0..m {
            if !used.contains(&f) {
                violations.push(Violation::UnusedFacet(f));
            }
        }
        // Independence at every face reduces to independence at vertices.
        if vertices_ok && lengths_ok && lambda.len() == m && n > 0 {
            for s in &sorted {
                let cols: Vec<IntVec> = s.iter().map(|&i| lambda[i].clone()).collect();
                let d = det(&IntMat::from_columns(n, &cols)).expect("square");
                if d.is_zero() {
                    violations.push(Violation::Dependent { facets: s.clone() });
                }
            }
        }
        if !violations.is_empty() {
            return Err(ModelError { violations });
        }

        let (faces, face_index) = build_faces(n, &sorted);
        Ok(Model {
            name,
            n,
            m,
            vertices: sorted,
            lambda,
            faces,
            face_index,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn lambda(&self) -> &[IntVec] {
        &self.lambda
    }

    /// All faces in canonical order: codimension ascending, then facet sets
    /// lexicographically. Index 0 is `P`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, facet_set: &[usize]) -> Option<&Face> {
        self.face_index.get(facet_set).map(|&i| &self.faces[i])
    }

    pub fn face_position(&self, facet_set: &[usize]) -> Option<usize> {
        self.face_index.get(facet_set).copied()
    }

    pub fn polytope(&self) -> &Face {
        &self.faces[0]
    }

    /// Faces `H ≤ F` (including `F`).
    pub fn subfaces<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        self.faces.iter().filter(move |h| h.is_subface_of(face))
    }

    /// Faces `H ≥ F` (including `F` and `P`).
    pub fn superfaces<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        self.faces.iter().filter(move |h| face.is_subface_of(h))
    }

    /// The characteristic set `λ_F` in facet-index order.
    pub fn characteristic_set(&self, face: &Face) -> Vec<IntVec> {
        face.facet_set
            .iter()
            .map(|&i| self.lambda[i].clone())
            .collect()
    }

    /// `f_i` for `i = 0..=dim F`: the number of `i`-dimensional faces of `F`.
    pub fn f_vector(&self, face: &Face) -> Vec<Int> {
        let mut f = vec![Int::zero(); face.dim + 1];
        for h in self.subfaces(face) {
            f[h.dim] += 1;
        }
        f
    }

    /// h-vector of the simple polytope `F`.
    ///
    /// With `g_j` the number of faces of codimension `j` inside `F` (the face
    /// numbers of the dual simplicial sphere, `g_0 = 1`), the h-polynomial is
    /// `Σ_j g_j (t−1)^{d−j} = Σ_i h_i t^{d−i}`.
    pub fn h_vector(&self, face: &Face) -> Vec<Int> {
        let d = face.dim;
        let f = self.f_vector(face);
        let t_minus_one = Poly::s_minus_one();
        let mut hp = Poly::zero();
        for j in 0..=d {
            let g = &f[d - j];
            hp += &(&Poly::constant(g.clone()) * &t_minus_one.pow((d - j) as u32));
        }
        (0..=d).map(|i| hp.coeff(d - i)).collect()
    }

    /// `Λ_(v)`: columns `λ_i` for `i ∈ I(v)` in increasing facet order.
    pub fn vertex_matrix(&self, v: usize) -> IntMat {
        let cols: Vec<IntVec> = self.vertices[v]
            .iter()
            .map(|&i| self.lambda[i].clone())
            .collect();
        IntMat::from_columns(self.n, &cols)
    }

    pub fn vertex_det(&self, v: usize) -> Int {
        det(&self.vertex_matrix(v)).expect("vertex matrix is square")
    }

    /// Sign of `det Λ_(v)` under the increasing-facet-index column order.
    pub fn vertex_sign(&self, v: usize) -> i8 {
        if self.vertex_det(v).is_positive() {
            1
        } else {
            -1
        }
    }

    /// True when every vertex sign is `+1` under the fixed column convention.
    pub fn positively_omnioriented(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.vertex_sign(v) == 1)
    }

    /// True when every vertex determinant is `±1`.
    pub fn is_smooth(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.vertex_det(v).abs().is_one())
    }

    /// Applies `u` to every characteristic vector.
    pub fn transform(&self, u: &IntMat) -> Result<Model, ModelError> {
        let lambda = self.lambda.iter().map(|l| u.mul_vec(l)).collect();
        Model::new(
            self.name.clone(),
            self.n,
            self.m,
            self.vertices.clone(),
            lambda,
        )
    }

    /// Renames facet `i` to `perm[i]` consistently in vertices and `λ`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Model, ModelError> {
        assert_eq!(perm.len(), self.m, "permutation length");
        let mut lambda = vec![Vec::new(); self.m];
        for (i, l) in self.lambda.iter().enumerate() {
            lambda[perm[i]] = l.clone();
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|&i| perm[i]).collect())
            .collect();
        Model::new(self.name.clone(), self.n, self.m, vertices, lambda)
    }
}

fn build_faces(n: usize, vertices: &[Vec<usize>]) -> (Vec<Face>, BTreeMap<Vec<usize>, usize>) {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in vertices {
        for mask in 0u32..(1u32 << v.len()) {
            let s: Vec<usize> = v
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &f)| f)
                .collect();
            sets.insert(s);
        }
    }
    let mut sets: Vec<Vec<usize>> = sets.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let faces: Vec<Face> = sets
        .into_iter()
        .map(|s| {
            let vertex_ids = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| is_subset(&s, v))
                .map(|(i, _)| i)
                .collect();
            Face {
                dim: n - s.len(),
                facet_set: s,
                vertex_ids,
            }
        })
        .collect();
    let index = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.facet_set.clone(), i))
        .collect();
    (faces, index)
}

/// Model built from small integer literals; panics on invalid input.
pub fn model_from_i64(name: &str, n: usize, vertices: &[&[usize]], lambda: &[&[i64]]) -> Model {
    Model::new(
        Some(name.into()),
        n,
        lambda.len(),
        vertices.iter().map(|v| v.to_vec()).collect(),
        lambda
            .iter()
            .map(|l| l.iter().map(|&x| int(x)).collect())
            .collect(),
    )
    .expect("valid literal model")
}

/// Vertex sets of the `n`-simplex with facets `0..=n`.
pub fn simplex_vertices(n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .rev()
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect()
}

/// Well-known small models used by tests, examples and the CLI docs.
pub mod library {
    use super::*;

    /// `CP²`: smooth triangle.
    pub fn cp2() -> Model {
        model_from_i64(
            "CP2",
            2,
            &[&[0, 1], &[1, 2], &[0, 2]],
            &[&[1, 0], &[0, 1], &[-1, -1]],
        )
    }

    /// Weighted projective plane of type (1,1,2).
    pub fn wp112() -> Model {
        model_from_i64(
            "WP112",
            2,
            &[&[0, 1], &[1, 2], &[0, 2]],
            &[&[1, 0], &[0, 1], &[-1, -2]],
        )
    }

    /// Tetrahedron with a `Z₃` singularity at vertex `{0,1,2}`.
    pub fn z3_tetrahedron() -> Model {
        model_from_i64(
            "Z3",
            3,
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 3], &[0, 0, -1]],
        )
    }

    /// `CP¹ × CP¹`: smooth square.
    pub fn square() -> Model {
        model_from_i64(
            "P1xP1",
            2,
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        )
    }
}
