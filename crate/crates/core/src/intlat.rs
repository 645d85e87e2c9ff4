//! Integer lattice linear algebra: determinants, Smith normal form,
//! saturation of sublattices and exact rational solving.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{gcd_all, Int, Rat};

/// A vector of the ambient lattice `N = Z^n`.
pub type IntVec = Vec<Int>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("vector lies outside the rational span of the basis")]
    OutsideSpan,
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        f.write_str("]")
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;

    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<IntVec> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        IntMat::from_rows(&rows)
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[IntVec]) -> Self {
        let mut m = IntMat::zeros(n, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), n, "column length");
            for (r, x) in v.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> IntVec {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row(&self, r: usize) -> IntVec {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * q;
            self[(dst, c)] += v;
        }
    }

    /// `col[dst] += q * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &Int) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * q;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl Mul<&IntMat> for &IntMat {
    type Output = IntMat;

    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// True iff the gcd of the entries is one.
pub fn is_primitive(v: &[Int]) -> Result<bool, LatticeError> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(g.is_one())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMat) -> Result<Int, LatticeError> {
    if m.rows != m.cols {
        return Err(LatticeError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Ok(Int::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Result of a Smith normal form computation: `u · m · v = d`.
///
/// `u_inv` and `v_inv` are carried along so callers never have to invert a
/// unimodular matrix themselves.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub u_inv: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    /// Diagonal entries `d_0 | d_1 | ...` (including trailing zeros).
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
///
/// Pivots are located by a row-major scan of the trailing submatrix; the
/// first entry of minimal absolute value wins, so `u` and `v` are
/// reproducible.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Row op `R` applied as d <- R d, u <- R u, u_inv <- u_inv R^-1.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &Int = $q;
            d.add_row($dst, $src, q);
            u.add_row($dst, $src, q);
            u_inv.add_col($src, $dst, &-q);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &Int = $q;
            d.add_col($dst, $src, q);
            v.add_col($dst, $src, q);
            v_inv.add_row($src, $dst, &-q);
        }};
    }

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = &d[(r, c)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| x.abs() < d[(br, bc)].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                break;
            };
            row_swap!(t, pr);
            col_swap!(t, pc);

            let mut dirty = false;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = d[(r, t)].div_floor(&d[(t, t)]);
                row_add!(r, t, &-q);
                dirty |= !d[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = d[(t, c)].div_floor(&d[(t, t)]);
                col_add!(c, t, &-q);
                dirty |= !d[(t, c)].is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !d[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => row_add!(t, r, &Int::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Snf {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

/// A saturated basis of a sublattice together with the coordinates of the
/// original generators in it.
#[derive(Clone, Debug)]
pub struct Saturation {
    /// `n x k`, columns span `(span L) ∩ Z^n` over the integers.
    pub basis: IntMat,
    /// `k x k`, with `L = basis · coords`.
    pub coords: IntMat,
    /// `|det coords|`, the index of `L` in its saturation.
    pub index: Int,
}

/// Saturates the lattice spanned by the columns of `l`.
///
/// With `u · l · v = d` the first `k` columns of `u⁻¹` form the basis and
/// `diag(d) · v⁻¹` is the coordinate matrix.
pub fn saturate(l: &IntMat) -> Result<Saturation, LatticeError> {
    let (n, k) = (l.rows, l.cols);
    let snf = smith_normal_form(l);
    let rank = snf.rank();
    if rank < k {
        return Err(LatticeError::RankDeficient { rank, cols: k });
    }
    let mut basis = IntMat::zeros(n, k);
    for r in 0..n {
        for c in 0..k {
            basis[(r, c)] = snf.u_inv[(r, c)].clone();
        }
    }
    let mut coords = IntMat::zeros(k, k);
    let mut index = Int::one();
    for r in 0..k {
        let dr = &snf.d[(r, r)];
        index *= dr;
        for c in 0..k {
            coords[(r, c)] = dr * &snf.v_inv[(r, c)];
        }
    }
    Ok(Saturation {
        basis,
        coords,
        index,
    })
}

/// Basis of the saturation of the column lattice of `l`.
pub fn saturation(l: &IntMat) -> Result<IntMat, LatticeError> {
    saturate(l).map(|s| s.basis)
}

/// Solves `b · c = w` for rational `c`.
pub fn coords_in_basis(b: &IntMat, w: &[Int]) -> Result<Vec<Rat>, LatticeError> {
    if w.len() != b.rows {
        return Err(LatticeError::Dimension(
            "vector length differs from basis rows",
        ));
    }
    let (n, k) = (b.rows, b.cols);
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = (0..k)
                .map(|c| Rat::from_integer(b[(r, c)].clone()))
                .collect();
            row.push(Rat::from_integer(w[r].clone()));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for c in 0..k {
        let Some(p) = (pivot_row..n).find(|&r| !a[r][c].is_zero()) else {
            return Err(LatticeError::RankDeficient {
                rank: pivots.len(),
                cols: k,
            });
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..=k].iter_mut().zip(&pivot[c..=k]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return Err(LatticeError::OutsideSpan);
    }
    Ok(pivots.iter().map(|&r| a[r][k].clone()).collect())
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc *= &a[c][c];
        let inv = a[c][c].recip();
        let pivot = a[c].clone();
        for row in a[c + 1..n].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, y) in row[c..n].iter_mut().zip(&pivot[c..n]) {
                *x -= &f * y;
            }
        }
    }
    acc
}
