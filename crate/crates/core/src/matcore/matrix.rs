//! Dense square complex matrices: the carrier type for everything else.
//!
//! Storage is row-major `Vec<Complex64>`. Nothing here is tuned beyond
//! desk scale (n up to a few dozen).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A dense n×n complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of size n×n.
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of size n×n.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from rows, validating squareness and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        let m = ComplexMatrix { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    /// Build from real-valued rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// Diagonal matrix from real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// The cyclic permutation unitary: e_i ↦ e_{i+1 (mod n)}.
    ///
    /// For n = 4 this is the matrix with ones at (2,1), (3,2), (4,3), (1,4).
    pub fn cyclic_permutation(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[((i + 1) % dim, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Squared Frobenius norm Σ |a_ij|². Exact for integer-valued inputs
    /// within f64 range.
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius (Hilbert–Schmidt) norm √Tr(A*A).
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sq().sqrt()
    }

    /// ‖M − M*‖_F, the Hermitian defect.
    pub fn hermitian_defect(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = self[(i, j)] - self[(j, i)].conj();
                sum += d.norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Hermitian part (M + M*)/2.
    pub fn symmetrize(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Column j as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for i in 0..self.dim {
            self[(i, j)] = col[i];
        }
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in subtraction");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in multiplication");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Wire format: `{"dim": n, "rows": [[[re, im], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    dim: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| [self[(i, j)].re, self[(i, j)].im])
                    .collect()
            })
            .collect();
        MatrixWire { dim: self.dim, rows }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        if wire.rows.len() != wire.dim {
            return Err(D::Error::custom(format!(
                "dim field is {} but {} rows were given",
                wire.dim,
                wire.rows.len()
            )));
        }
        let rows: Vec<Vec<Complex64>> = wire
            .rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// The commutator [X, Y] = XY − YX.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(&(x * y) - &(y * x))
}

/// The self-commutator [A*, A] = A*A − AA*. Zero exactly when A is normal.
pub fn self_commutator(a: &ComplexMatrix) -> ComplexMatrix {
    let adj = a.adjoint();
    &(&adj * a) - &(a * &adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample_matrix() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 0.0, 36.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 36.0, 0.0, 0.0],
            vec![0.0, 0.0, 49.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn frobenius_of_zero_is_zero() {
        assert_eq!(ComplexMatrix::zeros(5).frobenius_norm(), 0.0);
    }

    #[test]
    fn frobenius_of_commutator_diagonals() {
        let d = ComplexMatrix::from_diag(&[-1295.0, 1295.0, 1105.0, -1105.0]);
        assert_eq!(d.frobenius_norm_sq(), 5_796_100.0);
        assert_eq!(d.frobenius_norm(), 5_796_100.0_f64.sqrt());

        let d = ComplexMatrix::from_diag(&[0.0, 1728.0, 0.0, -1728.0]);
        assert_eq!(d.frobenius_norm_sq(), 5_971_968.0);
    }

    #[test]
    fn commutator_of_matrix_with_itself_vanishes() {
        let a = counterexample_matrix();
        let c = commutator(&a, &a).unwrap();
        assert_eq!(c.frobenius_norm(), 0.0);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = ComplexMatrix::identity(3);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch(3, 4))
        ));
    }

    #[test]
    fn self_commutator_of_counterexample_matrix() {
        let c = self_commutator(&counterexample_matrix());
        let expected = ComplexMatrix::from_diag(&[-1295.0, 1295.0, 1105.0, -1105.0]);
        assert_eq!((&c - &expected).frobenius_norm(), 0.0);
    }

    #[test]
    fn self_commutator_of_diagonal_is_zero() {
        let d = ComplexMatrix::from_diag(&[3.0, -1.0, 0.5, 7.0]);
        assert_eq!(self_commutator(&d).frobenius_norm(), 0.0);
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let rows = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0)],
        ];
        assert!(ComplexMatrix::from_rows(&rows).is_err());
    }

    #[test]
    fn from_rows_rejects_non_finite() {
        let rows = vec![vec![Complex64::new(f64::NAN, 0.0)]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = counterexample_matrix();
        let text = serde_json::to_string(&a).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!((&a - &back).frobenius_norm(), 0.0);
    }

    #[test]
    fn json_rejects_inconsistent_dim() {
        let text = r#"{"dim": 3, "rows": [[[1.0, 0.0]]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(text).is_err());
    }
}
