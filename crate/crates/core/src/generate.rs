//! Deterministic pseudo-random quasi-SL models for property testing.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blowup::{blow_up, crepant_candidates, BlowupSpec};
use crate::exact::{gcd_all, int, Int, Rat};
use crate::intlat::{IntMat, IntVec};
use crate::model::{simplex_vertices, Model, ModelError};
use crate::sectors::is_quasi_sl;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("dimension {0} not supported; use 2, 3 or 4")]
    Dimension(usize),
}

/// Output of [`generate_test_models`]. `exhausted` is set when the attempt
/// limit ran out before `count` models were produced.
#[derive(Debug, Clone)]
pub struct Generated {
    pub models: Vec<Model>,
    pub exhausted: bool,
}

/// The `n`-simplex with `λ_i = e_i` for `i < n` and `λ_n = −c`.
pub fn simplex_model(c: &[i64]) -> Result<Model, ModelError> {
    let n = c.len();
    let mut lambda: Vec<IntVec> = (0..n)
        .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
        .collect();
    lambda.push(c.iter().map(|&x| int(-x)).collect());
    Model::new(None, n, n + 1, simplex_vertices(n), lambda)
}

/// `count` quasi-SL models of dimension `n`.
///
/// Each starts from a simplex with a random last vector, takes up to
/// `budget` random blowups (mostly crepant, occasionally with unit weights
/// when that keeps the model quasi-SL), then a random unimodular change of
/// basis and a random facet relabeling.
pub fn generate_test_models(
    seed: u64,
    count: usize,
    n: usize,
    budget: usize,
) -> Result<Generated, GenerateError> {
    if !(2..=4).contains(&n) {
        return Err(GenerateError::Dimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut models = Vec::with_capacity(count);
    let max_attempts = 50 * count + 50;
    let mut attempts = 0;
    while models.len() < count && attempts < max_attempts {
        attempts += 1;
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let ints: Vec<Int> = c.iter().map(|&x| int(x)).collect();
        if gcd_all(&ints) != int(1) {
            continue;
        }
        let Ok(mut model) = simplex_model(&c) else {
            continue;
        };
        if !is_quasi_sl(&model) {
            continue;
        }
        let steps = rng.gen_range(0..=budget);
        for _ in 0..steps {
            match random_blowup(&model, &mut rng) {
                Some(next) => model = next,
                None => break,
            }
        }
        let u = random_unimodular(n, &mut rng);
        let Ok(turned) = model.transform(&u) else {
            continue;
        };
        let mut perm: Vec<usize> = (0..turned.m()).collect();
        perm.shuffle(&mut rng);
        let Ok(relabeled) = turned.relabel(&perm) else {
            continue;
        };
        let name = format!("fuzz-{seed}-{n}-{}", models.len());
        models.push(relabeled.with_name(Some(name)));
    }
    Ok(Generated {
        exhausted: models.len() < count,
        models,
    })
}

fn random_blowup(model: &Model, rng: &mut ChaCha8Rng) -> Option<Model> {
    if rng.gen_ratio(1, 4) {
        let faces: Vec<_> = model.faces().iter().filter(|f| f.codim() >= 2).collect();
        if let Some(face) = faces.choose(rng) {
            let spec = BlowupSpec::new(
                face.facet_set.clone(),
                alloc::vec![Rat::from_integer(int(1)); face.codim()],
            );
            if let Ok(next) = blow_up(model, &spec) {
                if is_quasi_sl(&next) {
                    return Some(next);
                }
            }
        }
    }
    let candidates = crepant_candidates(model);
    let spec = candidates.choose(rng)?;
    blow_up(model, spec).ok().filter(is_quasi_sl)
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMat {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -*x),
            _ if i != j => {
                let c = rng.gen_range(-2..=2i64);
                let src = rows[j].clone();
                rows[i].iter_mut().zip(src).for_each(|(x, y)| *x += c * y);
            }
            _ => {}
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMat::from_i64_rows(&refs)
}
