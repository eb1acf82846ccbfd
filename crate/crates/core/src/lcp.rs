//! P-cubes and D-cubes from linear complementarity data.
//!
//! For a vertex `V`, the matrix `M(V)` takes column `-M_i` for `i ∈ V` and the
//! unit column `e_i` otherwise. Solving `M(V) x = q` gives the free LCP
//! coordinates (`z_i` for `i ∈ V`, `w_i` otherwise); the outmap at `V` is the set
//! of negative coordinates. Every decision here is an exact rational sign test.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cube::{DimSet, OutMap};
use crate::error::{Result, UsoError};
use crate::lgraph::has_property_l;
use crate::linalg::{determinant_sign, solve_exact, Rational, RationalMatrix, RationalVector};

/// Largest size accepted by [`is_p_matrix`] (`2^n - 1` principal minors).
pub const P_MATRIX_MAX_DIM: usize = 14;

fn require_square(m: &RationalMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(UsoError::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

/// `M(V)`: column `-M_i` for `i ∈ V`, `e_i` otherwise.
pub fn build_mv(m: &RationalMatrix, v: DimSet) -> Result<RationalMatrix> {
    let n = require_square(m)?;
    let mut out = RationalMatrix::identity(n);
    for i in v.iter() {
        if i > n {
            return Err(UsoError::DimensionOutOfRange { dim: i, n });
        }
        for r in 0..n {
            out[(r, i - 1)] = -m[(r, i - 1)].clone();
        }
    }
    Ok(out)
}

/// True iff every principal minor is positive.
pub fn is_p_matrix(m: &RationalMatrix) -> Result<bool> {
    let n = require_square(m)?;
    if n > P_MATRIX_MAX_DIM {
        return Err(UsoError::DimensionTooLarge {
            n,
            cap: P_MATRIX_MAX_DIM,
        });
    }
    // positive row scales keep minor signs
    let (rows, _) = m.integer_rows();
    Ok((1u32..1 << n).into_par_iter().all(|subset| {
        let idx: Vec<usize> = DimSet(subset).iter().map(|d| d - 1).collect();
        let sub: Vec<Vec<_>> = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| rows[r][c].clone()).collect())
            .collect();
        determinant_sign(sub) > 0
    }))
}

/// Symmetric with all leading principal minors positive.
pub fn is_spd(m: &RationalMatrix) -> Result<bool> {
    require_square(m)?;
    if !m.is_symmetric() {
        return Ok(false);
    }
    Ok(m.leading_minors()?.iter().all(Signed::is_positive))
}

fn require_vector(m: &RationalMatrix, q: &[Rational]) -> Result<usize> {
    let n = require_square(m)?;
    if q.len() != n {
        return Err(UsoError::ShapeMismatch(format!(
            "vector of length {} for a {n}x{n} matrix",
            q.len()
        )));
    }
    Ok(n)
}

/// Free coordinates `x = M(V)⁻¹ q`, rejecting vanishing entries.
fn vertex_solution(m: &RationalMatrix, q: &[Rational], v: DimSet) -> Result<RationalVector> {
    let x = solve_exact(&build_mv(m, v)?, q)?;
    if let Some(i) = x.iter().position(Zero::is_zero) {
        return Err(UsoError::NotGeneric {
            vertex: v,
            index: i + 1,
        });
    }
    Ok(x)
}

fn sign_outmap(m: &RationalMatrix, q: &[Rational], n: usize) -> Result<OutMap> {
    let values: Vec<u32> = (0u32..1 << n)
        .into_par_iter()
        .map(|v| {
            let x = vertex_solution(m, q, DimSet(v))?;
            Ok(x.iter()
                .enumerate()
                .filter(|(_, xi)| xi.is_negative())
                .fold(0u32, |acc, (i, _)| acc | 1 << i))
        })
        .collect::<Result<_>>()?;
    OutMap::new(n, values)
}

/// The P-cube of `(m, q)`: `φ(V) = {i : (M(V)⁻¹ q)_i < 0}`.
///
/// Fails with `NotGeneric` before producing any table if some coordinate vanishes.
pub fn pcube_outmap(m: &RationalMatrix, q: &[Rational]) -> Result<OutMap> {
    let n = require_vector(m, q)?;
    if !is_p_matrix(m)? {
        return Err(UsoError::NotPMatrix);
    }
    sign_outmap(m, q, n)
}

/// The D-cube of an SPD matrix; property L is checked on the result.
pub fn dcube_outmap(m: &RationalMatrix, q: &[Rational]) -> Result<OutMap> {
    let n = require_vector(m, q)?;
    if !is_spd(m)? {
        return Err(UsoError::NotSpd);
    }
    let o = sign_outmap(m, q, n)?;
    if let Some(w) = has_property_l(&o).witness {
        return Err(UsoError::Internal(format!(
            "D-cube has a cyclic L-graph at {}",
            w.vertex
        )));
    }
    Ok(o)
}

/// `w`, `z` with `w - M z = q`, `w_i = 0` for `i ∈ V` and `z_i = 0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpSolution {
    pub w: RationalVector,
    pub z: RationalVector,
    pub basis: DimSet,
}

impl LcpSolution {
    /// `w - M z - q`; zero for a valid solution.
    pub fn residual(&self, m: &RationalMatrix, q: &[Rational]) -> Result<RationalVector> {
        let mz = m.mul_vec(&self.z)?;
        Ok(self
            .w
            .iter()
            .zip(&mz)
            .zip(q)
            .map(|((w, mz), q)| w - mz - q)
            .collect())
    }

    /// Indices (1-based) whose free coordinate is negative.
    pub fn negative_set(&self) -> DimSet {
        let n = self.w.len();
        DimSet::from_dims((1..=n).filter(|&i| {
            let x = if self.basis.contains(i) {
                &self.z[i - 1]
            } else {
                &self.w[i - 1]
            };
            x.is_negative()
        }))
    }
}

pub fn lcp_solution_at(m: &RationalMatrix, q: &[Rational], v: DimSet) -> Result<LcpSolution> {
    let n = require_vector(m, q)?;
    if !is_p_matrix(m)? {
        return Err(UsoError::NotPMatrix);
    }
    if !v.is_subset(DimSet::full(n)) {
        return Err(UsoError::DimensionOutOfRange {
            dim: v.iter().last().unwrap_or(0),
            n,
        });
    }
    let x = vertex_solution(m, q, v)?;
    let mut w = vec![Rational::zero(); n];
    let mut z = vec![Rational::zero(); n];
    for (i, xi) in x.into_iter().enumerate() {
        if v.contains(i + 1) {
            z[i] = xi;
        } else {
            w[i] = xi;
        }
    }
    Ok(LcpSolution { w, z, basis: v })
}

/// `m'_{ij} = m_{ij} - m_{ik} m_{kj} / m_{kk}` over `i, j ≠ k` (1-based `k`).
pub fn schur_reduce(m: &RationalMatrix, k: usize) -> Result<RationalMatrix> {
    let n = require_square(m)?;
    if k == 0 || k > n {
        return Err(UsoError::DimensionOutOfRange { dim: k, n });
    }
    let kk = k - 1;
    let pivot = &m[(kk, kk)];
    if pivot.is_zero() {
        return Err(UsoError::ZeroPivot(k));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != kk).collect();
    let mut out = RationalMatrix::zeros(n - 1, n - 1);
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            out[(a, b)] = &m[(i, j)] - &m[(i, kk)] * &m[(kk, j)] / pivot;
        }
    }
    Ok(out)
}

/// Right-hand side of the facet `[{k}, [n]]`: `(M({k})⁻¹ q)` without coordinate `k`.
pub fn facet_rhs(m: &RationalMatrix, q: &[Rational], k: usize) -> Result<RationalVector> {
    let n = require_vector(m, q)?;
    if k == 0 || k > n {
        return Err(UsoError::DimensionOutOfRange { dim: k, n });
    }
    let x = solve_exact(&build_mv(m, DimSet::singleton(k))?, q)?;
    Ok(x.into_iter()
        .enumerate()
        .filter(|&(i, _)| i != k - 1)
        .map(|(_, v)| v)
        .collect())
}
