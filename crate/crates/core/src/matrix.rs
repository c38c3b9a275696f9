//! Dense real matrices.
//!
//! [`SymMatrix`] is the element type of the algebra: a real symmetric matrix
//! whose entries are exactly symmetric. Products of symmetric matrices are in
//! general not symmetric, so they land in [`DenseMatrix`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

/// A real symmetric `dim × dim` matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

/// A general square matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds a symmetric matrix from row-major entries, replacing each
    /// off-diagonal pair by its average.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::Shape(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / dim, col: k % dim });
        }
        let mut m = Self { dim, data };
        m.symmetrize_in_place();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Shape(format!(
                "row of length {} in a {dim}-row matrix",
                bad.len()
            )));
        }
        Self::new(dim, rows.concat())
    }

    /// Like [`SymMatrix::new`] but also reports the largest `|a_ij - a_ji|`
    /// seen before symmetrization.
    pub fn new_with_asymmetry(dim: usize, data: Vec<f64>) -> Result<(Self, f64)> {
        let mut asym: f64 = 0.0;
        if data.len() == dim * dim {
            for i in 0..dim {
                for j in (i + 1)..dim {
                    asym = asym.max((data[i * dim + j] - data[j * dim + i]).abs());
                }
            }
        }
        Self::new(dim, data).map(|m| (m, asym))
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be at least 1");
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    /// `alpha * 1`.
    pub fn scalar(dim: usize, alpha: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = alpha;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        Self::from_fn(dim, |i, j| if i == j { values[i] } else { 0.0 })
    }

    /// `Σ wᵢ vᵢ vᵢᵀ` over the given (weight, vector) pairs.
    pub fn from_weighted_outer(dim: usize, terms: impl IntoIterator<Item = (f64, Vec<f64>)>) -> Self {
        let mut m = Self::zeros(dim);
        for (w, v) in terms {
            debug_assert_eq!(v.len(), dim);
            if w == 0.0 {
                continue;
            }
            for (i, vi) in v.iter().enumerate() {
                let wi = w * vi;
                for (j, vj) in v.iter().enumerate() {
                    m.data[i * dim + j] += wi * vj;
                }
            }
        }
        m.symmetrize_in_place();
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|x| alpha * x).collect() }
    }

    /// `self + beta * 1`.
    pub fn shift(&self, beta: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] += beta;
        }
        m
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(self.zip_with(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim, other.dim)?;
        Ok(self.zip_with(other, |x, y| x - y))
    }

    /// Matrix product; generally not symmetric.
    pub fn try_mul(&self, other: &Self) -> Result<DenseMatrix> {
        check_dims(self.dim, other.dim)?;
        Ok(matmul(self.dim, &self.data, &other.data))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix { dim: self.dim, data: self.data.clone() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.data)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Frobenius distance; an upper bound for the operator-norm distance.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(x, y)| f(*x, *y)).collect(),
        }
    }

    fn symmetrize_in_place(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }
}

impl DenseMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::Shape(format!("expected {} entries for dim {dim}", dim * dim)));
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { dim: n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        matmul(self.dim, &self.data, &other.data)
    }

    pub fn mul_sym(&self, other: &SymMatrix) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        matmul(self.dim, &self.data, &other.data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.data)
    }

    /// `½(M + Mᵀ)`.
    pub fn symmetric_part(&self) -> SymMatrix {
        let mut m = SymMatrix { dim: self.dim, data: self.data.clone() };
        m.symmetrize_in_place();
        m
    }

    /// Frobenius norm of `M - Mᵀ`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = self.data[i * n + j] - self.data[j * n + i];
                acc += d * d;
            }
        }
        acc.sqrt()
    }
}

fn matmul(n: usize, a: &[f64], b: &[f64]) -> DenseMatrix {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    DenseMatrix { dim: n, data: out }
}

fn frobenius(data: &[f64]) -> f64 {
    data.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: Self) -> SymMatrix {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: Self) -> SymMatrix {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul<f64> for &SymMatrix {
    type Output = SymMatrix;
    fn mul(self, rhs: f64) -> SymMatrix {
        self.scale(rhs)
    }
}

impl Neg for &SymMatrix {
    type Output = SymMatrix;
    fn neg(self) -> SymMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix").field("dim", &self.dim).field("rows", &self.rows()).finish()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = self.data.chunks(self.dim).collect();
        f.debug_struct("DenseMatrix").field("dim", &self.dim).field("rows", &rows).finish()
    }
}

/// On-disk / wire shape: `{"dim": n, "entries": [[row-major reals]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub dim: usize,
    pub entries: Vec<Vec<f64>>,
}

impl TryFrom<MatrixRepr> for SymMatrix {
    type Error = Error;
    fn try_from(repr: MatrixRepr) -> Result<Self> {
        if repr.entries.len() != repr.dim {
            return Err(Error::Shape(format!(
                "dim is {} but {} rows were given",
                repr.dim,
                repr.entries.len()
            )));
        }
        Self::from_rows(&repr.entries)
    }
}

impl From<SymMatrix> for MatrixRepr {
    fn from(m: SymMatrix) -> Self {
        Self { dim: m.dim, entries: m.rows() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes_exactly() {
        let m = SymMatrix::new(2, vec![1.0, 0.3, 0.1, 2.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert_eq!(m.get(0, 1), 0.2);
    }

    #[test]
    fn rejects_bad_shapes_and_non_finite() {
        assert!(matches!(SymMatrix::new(0, vec![]), Err(Error::Shape(_))));
        assert!(matches!(SymMatrix::new(2, vec![1.0; 3]), Err(Error::Shape(_))));
        assert!(matches!(
            SymMatrix::new(2, vec![1.0, f64::NAN, 0.0, 1.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn asymmetry_is_reported() {
        let (m, asym) = SymMatrix::new_with_asymmetry(2, vec![0.0, 1.0, 0.5, 0.0]).unwrap();
        assert_eq!(asym, 0.5);
        assert_eq!(m.get(1, 0), 0.75);
    }

    #[test]
    fn product_of_noncommuting_symmetrics_is_not_symmetric() {
        let p = SymMatrix::diag(&[1.0, 0.0]).unwrap();
        let q = SymMatrix::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let pq = p.try_mul(&q).unwrap();
        assert!(pq.asymmetry() > 0.1);
        assert_eq!(pq.get(0, 1), 0.5);
        assert_eq!(pq.get(1, 0), 0.0);
    }

    #[test]
    fn serde_shape() {
        let m = SymMatrix::diag(&[1.0, 2.0]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"dim":2,"entries":[[1.0,0.0],[0.0,2.0]]}"#);
        let back: SymMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<SymMatrix>(r#"{"dim":3,"entries":[[1.0]]}"#).is_err());
    }
}
