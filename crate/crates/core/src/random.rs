//! Seeded random LCP instances.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::OutMap;
use crate::error::{Result, UsoError};
use crate::lcp::{dcube_outmap, pcube_outmap};
use crate::linalg::{rat, Rational, RationalMatrix, RationalVector};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `BᵀB + I` for a random integer `B` with entries in `[-5, 5]`.
pub fn random_spd<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let b: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect())
        .collect();
    let mut m = RationalMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let dot: i64 = (0..n).map(|k| b[k][r] * b[k][c]).sum();
            m[(r, c)] = rat(dot + i64::from(r == c));
        }
    }
    m
}

/// Strictly diagonally dominant matrix with positive diagonal (hence a P-matrix).
pub fn random_diag_dominant<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for r in 0..n {
        let mut off = 0i64;
        for c in (0..n).filter(|&c| c != r) {
            let x: i64 = rng.gen_range(-4..=4);
            off += x.abs();
            m[(r, c)] = rat(x);
        }
        m[(r, r)] = rat(off + rng.gen_range(1..=4));
    }
    m
}

pub fn random_rhs<R: Rng>(rng: &mut R, n: usize) -> RationalVector {
    (0..n)
        .map(|_| {
            let x: i64 = rng.gen_range(1..=9);
            if rng.gen_bool(0.5) {
                rat(x)
            } else {
                rat(-x)
            }
        })
        .collect()
}

/// Draws right-hand sides until one is generic for `m`; gives up after `tries` attempts.
pub fn random_generic_rhs<R: Rng>(
    rng: &mut R,
    m: &RationalMatrix,
    tries: usize,
) -> Result<(RationalVector, OutMap)> {
    let symmetric = m.is_symmetric();
    for _ in 0..tries {
        let q = random_rhs(rng, m.rows());
        let built = if symmetric {
            dcube_outmap(m, &q)
        } else {
            pcube_outmap(m, &q)
        };
        match built {
            Ok(o) => return Ok((q, o)),
            Err(UsoError::NotGeneric { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(UsoError::PreconditionFailed(format!(
        "no generic right-hand side after {tries} attempts"
    )))
}

/// Rational `q` helper for tests and examples.
pub fn ones(n: usize) -> Vec<Rational> {
    vec![rat(1); n]
}
