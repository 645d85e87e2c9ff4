//! Oracles and corpora shared by the integration tests. Nothing here calls
//! the Smith normal form; group orders come from maximal minors and Box
//! elements from exhaustive search over numerators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mckay_core::exact::{int, Int, Rat};
use mckay_core::generate::generate_test_models;
use mckay_core::model::library::{wp112, z3_tetrahedron};
use mckay_core::{IntMat, IntVec, Model};
use num_traits::{ToPrimitive, Zero};

pub fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// Determinant by cofactor expansion.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * cofactor_det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut c in choose(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// `[sat(L) : L]` as the gcd of the maximal minors of the `n × k` matrix.
pub fn minor_gcd_order(vectors: &[Vec<i64>]) -> i128 {
    let k = vectors.len();
    if k == 0 {
        return 1;
    }
    let n = vectors[0].len();
    choose(n, k).into_iter().fold(0, |g, rows| {
        let m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&r| vectors.iter().map(|v| v[r] as i128).collect())
            .collect();
        gcd(g, cofactor_det(&m))
    })
}

/// Coefficient vectors `p / D` with `p ∈ [0, D)^k` and `Σ p_j λ_j ≡ 0 mod D`.
pub fn brute_box(vectors: &[Vec<i64>]) -> BTreeSet<Vec<Rat>> {
    let k = vectors.len();
    let d = minor_gcd_order(vectors) as i64;
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    let mut p = vec![0i64; k];
    loop {
        let ok = (0..n).all(|r| {
            (0..k)
                .map(|j| p[j] * vectors[j][r])
                .sum::<i64>()
                .rem_euclid(d)
                == 0
        });
        if ok {
            out.insert(
                p.iter()
                    .map(|&x| Rat::new(Int::from(x), Int::from(d)))
                    .collect(),
            );
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            p[i] += 1;
            if p[i] < d {
                break;
            }
            p[i] = 0;
            i += 1;
        }
    }
}

/// Box-age counts `ψ_i` of a set of coefficient vectors.
pub fn age_counts(elements: &BTreeSet<Vec<Rat>>) -> Vec<Int> {
    let mut psi: Vec<Int> = Vec::new();
    for e in elements {
        let age: Rat = e.iter().fold(Rat::zero(), |a, b| a + b);
        assert!(age.is_integer(), "non-integral age in quasi-SL corpus");
        let a = age.to_integer().to_usize().unwrap();
        if psi.len() <= a {
            psi.resize(a + 1, Int::zero());
        }
        psi[a] += 1;
    }
    psi
}

pub fn golden() -> Vec<Model> {
    vec![wp112(), z3_tetrahedron()]
}

/// Two golden models plus `per_dim` fuzz models for each of `n = 2, 3`.
pub fn corpus(per_dim: usize) -> Vec<Model> {
    let mut out = golden();
    for n in 2..=3 {
        let g = generate_test_models(2024 + n as u64, per_dim, n, 3).expect("supported dimension");
        assert!(!g.exhausted);
        out.extend(g.models);
    }
    out
}

/// Unimodular matrix from a list of elementary operations `(i, j, c)`:
/// `row_i += c · row_j` when `i ≠ j`, otherwise negate row `i`.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMat {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            rows[i].iter_mut().for_each(|x| *x = -*x);
        } else {
            let src = rows[j].clone();
            rows[i].iter_mut().zip(src).for_each(|(x, y)| *x += c * y);
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMat::from_i64_rows(&refs)
}

pub fn ints(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| int(x)).collect()
}
