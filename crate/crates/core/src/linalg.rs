//! Dense exact rational matrices with fraction-free (Bareiss) elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, UsoError};

pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(values: &[i64]) -> RationalVector {
    values.iter().map(|&v| rat(v)).collect()
}

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(UsoError::ShapeMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| rat_vec(r.as_ref())).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> RationalVector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(UsoError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self[(r, k)] * &other[(k, c)];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<RationalVector> {
        if self.cols != x.len() {
            return Err(UsoError::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Principal submatrix on the given (0-based, increasing) indices.
    pub fn principal_submatrix(&self, idx: &[usize]) -> RationalMatrix {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &r) in idx.iter().enumerate() {
            for (b, &c) in idx.iter().enumerate() {
                m[(a, b)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Each row scaled by the lcm of its denominators, as integers.
    ///
    /// Scales are positive, so signs of minors are preserved.
    pub(crate) fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect::<Vec<_>>(),
            );
            scales.push(l);
        }
        (rows, scales)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(UsoError::ShapeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let (rows, scales) = self.integer_rows();
        let det = bareiss_determinant(rows);
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rational::new(det, scale))
    }

    /// Determinants of the leading `k × k` blocks, `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(UsoError::ShapeMismatch(
                "minors of a non-square matrix".into(),
            ));
        }
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.principal_submatrix(&idx).determinant()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Fraction-free elimination of an integer matrix in place; returns the sign of
/// the row permutation, or `None` when a column has no nonzero pivot.
///
/// Only the first `pivot_cols` columns are used for pivoting; trailing columns
/// (an augmented right-hand side) are carried along.
fn bareiss_eliminate(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Option<bool> {
    let n = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut negated = false;
    for k in 0..n.min(pivot_cols) {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        if p != k {
            a.swap(p, k);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(negated)
}

/// Determinant of a square integer matrix.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    match bareiss_eliminate(&mut a, n) {
        None => BigInt::zero(),
        Some(negated) => {
            let d = a[n - 1][n - 1].clone();
            if negated {
                -d
            } else {
                d
            }
        }
    }
}

/// Sign of the determinant of an integer matrix.
pub(crate) fn determinant_sign(a: Vec<Vec<BigInt>>) -> i8 {
    let d = bareiss_determinant(a);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact solution of `a · x = b` via fraction-free elimination and back substitution.
pub fn solve_exact(a: &RationalMatrix, b: &[Rational]) -> Result<RationalVector> {
    if !a.is_square() {
        return Err(UsoError::ShapeMismatch(format!(
            "solve with a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if b.len() != n {
        return Err(UsoError::ShapeMismatch(format!(
            "right-hand side of length {} for {n} unknowns",
            b.len()
        )));
    }
    // augment, then clear denominators row by row
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for r in 0..n {
        let row = a.row(r);
        let l = row
            .iter()
            .chain(std::iter::once(&b[r]))
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .chain(std::iter::once(&b[r]))
                .map(|x| x.numer() * (&l / x.denom()))
                .collect(),
        );
    }
    bareiss_eliminate(&mut rows, n).ok_or(UsoError::SingularMatrix)?;
    if n > 0 && rows[n - 1][n - 1].is_zero() {
        return Err(UsoError::SingularMatrix);
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(rows[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    /// Cofactor-expansion determinant; independent of the elimination path.
    fn det_by_cofactors(a: &RationalMatrix) -> Rational {
        let n = a.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            let idx: Vec<usize> = (0..n).filter(|&k| k != c).collect();
            let mut minor = RationalMatrix::zeros(n - 1, n - 1);
            for r in 1..n {
                for (b, &cc) in idx.iter().enumerate() {
                    minor[(r - 1, b)] = a[(r, cc)].clone();
                }
            }
            let term = &a[(0, c)] * det_by_cofactors(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn identity_solve() {
        let b = vec![rat(3), rat_frac(-1, 2), rat(7)];
        assert_eq!(solve_exact(&RationalMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn singular_solve() {
        assert_eq!(
            solve_exact(&m(&[&[0]]), &[rat(1)]),
            Err(UsoError::SingularMatrix)
        );
        assert_eq!(
            solve_exact(&m(&[&[1, 2], &[2, 4]]), &[rat(1), rat(1)]),
            Err(UsoError::SingularMatrix)
        );
    }

    #[test]
    fn solve_needs_row_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let x = solve_exact(&a, &[rat(2), rat(5)]).unwrap();
        assert_eq!(x, vec![rat(5), rat(2)]);
    }

    #[test]
    fn solve_rational_entries() {
        let a = RationalMatrix::from_rows(vec![
            vec![rat_frac(1, 2), rat_frac(1, 3)],
            vec![rat_frac(1, 4), rat(1)],
        ])
        .unwrap();
        let b = vec![rat(1), rat(2)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn determinants_match_cofactor_oracle() {
        let cases = [
            m(&[&[5, -10, 2], &[-10, 41, -6], &[2, -6, 1]]),
            m(&[&[1, 2, 0], &[0, 1, 2], &[2, 1, 0]]),
            m(&[&[0, 2, 1], &[3, 0, 1], &[1, 1, 0]]),
            m(&[
                &[2, -1, 0, 3],
                &[1, 0, 4, -2],
                &[0, 5, -1, 1],
                &[3, 1, 1, 0],
            ]),
        ];
        for a in &cases {
            assert_eq!(a.determinant().unwrap(), det_by_cofactors(a));
        }
        let r = RationalMatrix::from_rows(vec![
            vec![rat_frac(1, 2), rat_frac(2, 3)],
            vec![rat_frac(-3, 5), rat(4)],
        ])
        .unwrap();
        assert_eq!(r.determinant().unwrap(), det_by_cofactors(&r));
    }

    #[test]
    fn leading_minors_of_example() {
        // 5; 5*41 - 100 = 105; full determinant by cofactors = 1
        let a = m(&[&[5, -10, 2], &[-10, 41, -6], &[2, -6, 1]]);
        assert_eq!(a.leading_minors().unwrap(), vec![rat(5), rat(105), rat(1)]);
    }
}
