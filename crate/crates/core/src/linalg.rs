//! Small dense linear algebra: a row-major square matrix, LU with partial
//! pivoting, and a central finite-difference Jacobian used by tests.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Pivots at or below this fraction of the row scale flag singularity.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-14;

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    size: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(size: usize) -> Self {
        Matrix {
            size,
            data: vec![0.0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { size, data })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: v.len(),
            });
        }
        Ok((0..self.size)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn scale(&mut self, c: f64) {
        self.data.iter_mut().for_each(|v| *v *= c);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: f64, other: &Matrix) {
        assert_eq!(self.size, other.size, "matrix size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.size + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.size, self.size)?;
        for i in 0..self.size {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// LU factorization `P M = L U` with unit lower-triangular `L` stored below
/// the diagonal of `lu`.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    lu: Matrix,
    perm: Vec<usize>,
    singular: Option<usize>,
    min_pivot_ratio: f64,
}

impl LuFactorization {
    /// Factors `m`. Never fails; singularity is recorded and reported by
    /// [`LuFactorization::solve`].
    pub fn new(m: &Matrix) -> Self {
        let k = m.size();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..k).collect();
        // Row scales come from the original matrix and travel with the rows.
        let mut scale: Vec<f64> = (0..k)
            .map(|i| m.row(i).iter().fold(0.0_f64, |a, v| a.max(v.abs())))
            .collect();
        let mut singular = None;
        let mut min_pivot_ratio = f64::INFINITY;

        for col in 0..k {
            let (p, pmax) = (col..k)
                .map(|r| (r, lu[(r, col)].abs()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != col {
                for j in 0..k {
                    lu.data.swap(col * k + j, p * k + j);
                }
                perm.swap(col, p);
                scale.swap(col, p);
            }
            let ratio = if scale[col] > 0.0 { pmax / scale[col] } else { 0.0 };
            min_pivot_ratio = min_pivot_ratio.min(ratio);
            if pmax == 0.0 || ratio <= SINGULAR_PIVOT_RATIO {
                singular.get_or_insert(col);
                continue;
            }
            let pivot = lu[(col, col)];
            for r in (col + 1)..k {
                let factor = lu[(r, col)] / pivot;
                if factor == 0.0 {
                    continue;
                }
                lu[(r, col)] = factor;
                for j in (col + 1)..k {
                    let u = lu[(col, j)];
                    lu[(r, j)] -= factor * u;
                }
            }
        }

        LuFactorization {
            lu,
            perm,
            singular,
            min_pivot_ratio: if k == 0 { 1.0 } else { min_pivot_ratio },
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular.is_some()
    }

    /// Index of the first pivot that fell below the singularity threshold.
    pub fn singular_pivot(&self) -> Option<usize> {
        self.singular
    }

    /// Smallest |pivot| / row-scale encountered during elimination.
    pub fn min_pivot_ratio(&self) -> f64 {
        self.min_pivot_ratio
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let k = self.lu.size();
        if rhs.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: rhs.len(),
            });
        }
        if let Some(pivot) = self.singular {
            return Err(Error::SingularMatrix { pivot });
        }
        let mut y: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..k {
            let row = self.lu.row(i);
            let s: f64 = row[..i].iter().zip(&y[..i]).map(|(l, v)| l * v).sum();
            y[i] -= s;
        }
        for i in (0..k).rev() {
            let row = self.lu.row(i);
            let s: f64 = row[i + 1..].iter().zip(&y[i + 1..]).map(|(u, v)| u * v).sum();
            y[i] = (y[i] - s) / row[i];
        }
        Ok(y)
    }
}

/// Solves `m y = rhs` by LU with partial pivoting.
pub fn lu_solve(m: &Matrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != m.size() {
        return Err(Error::DimensionMismatch {
            expected: m.size(),
            found: rhs.len(),
        });
    }
    LuFactorization::new(m).solve(rhs)
}

/// Default central-difference step, `1e-6 * max(1, |x|_inf)`.
pub fn default_fd_step(x: &[f64]) -> f64 {
    1e-6 * x.iter().fold(1.0_f64, |a, v| a.max(v.abs()))
}

/// Central finite-difference Jacobian of `f` at `x`; column `j` is
/// `(f(x + h e_j) - f(x - h e_j)) / 2h`.
///
/// `f` may return a vector of any length `r`; the result is `r x len(x)`
/// stored as rows. Use [`fd_jacobian`] for the square case.
pub fn fd_jacobian_rect<F>(mut f: F, x: &[f64], h: f64) -> Vec<Vec<f64>>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let mut xp = x.to_vec();
    let mut cols = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        xp[j] = x[j] + h;
        let fp = f(&xp);
        xp[j] = x[j] - h;
        let fm = f(&xp);
        xp[j] = x[j];
        cols.push(
            fp.iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect::<Vec<_>>(),
        );
    }
    let rows = cols.first().map_or(0, Vec::len);
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}

/// Square central finite-difference Jacobian.
pub fn fd_jacobian<F>(f: F, x: &[f64], h: f64) -> Result<Matrix>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let rows = fd_jacobian_rect(f, x, h);
    if rows.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: rows.len(),
        });
    }
    Matrix::from_rows(&rows)
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest absolute entrywise difference relative to the largest entry of
/// `reference` (floored at 1).
pub fn rel_max_diff(a: &Matrix, reference: &Matrix) -> f64 {
    let scale = reference.max_abs().max(1.0);
    a.as_slice()
        .iter()
        .zip(reference.as_slice())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
        / scale
}
