//! Dense complex linear algebra for the small spaces used here.
//!
//! Everything is row-major and owned; the largest object is a d²×d² gate with
//! d ≤ 16, so no blocking or sparsity is attempted.

use std::fmt;

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Shared tolerance for exact-identity checks (completeness, unit norm,
/// Hermiticity).
pub const TOLERANCE: f64 = 1e-12;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex::new(x, 0.0)));
        }
        Self::from_row_major(r, c, data)
    }

    pub fn diagonal(entries: &[Complex]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// `v` as a `len × 1` column.
    pub fn column(v: &[Complex]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// `v†` as a `1 × len` row.
    pub fn bra(v: &[Complex]) -> Self {
        Self {
            rows: 1,
            cols: v.len(),
            data: v.iter().map(|z| z.conj()).collect(),
        }
    }

    /// The outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex], b: &[Complex]) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                m[(i, j)] = x * y.conj();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            data: self.data.iter().map(|z| z * s).collect(),
            ..*self
        }
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Kronecker product; `self` indexes the major (outer) factor.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Traces out the second (minor-index) factor of a
    /// `(dim_a·dim_b)²` operator.
    pub fn partial_trace_second(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        let n = dim_a * dim_b;
        if self.rows != n || self.cols != n {
            return Err(Error::Dimension {
                expected: n,
                found: if self.rows != n { self.rows } else { self.cols },
            });
        }
        let mut m = Self::zeros(dim_a, dim_a);
        for i in 0..dim_a {
            for j in 0..dim_a {
                m[(i, j)] = (0..dim_b)
                    .map(|s| self[(i * dim_b + s, j * dim_b + s)])
                    .sum();
            }
        }
        Ok(m)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if self.cols != v.len() {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `⟨v|M|v⟩`.
    pub fn expectation(&self, v: &[Complex]) -> Result<Complex> {
        inner_product(v, &self.apply(v)?)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Conjugate-linear in `a`.
pub fn inner_product(a: &[Complex], b: &[Complex]) -> Result<Complex> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

pub fn norm_sqr(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// A normalized pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex>,
}

impl Ket {
    /// Computational basis state `|k⟩` of a `dim`-level system.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = ONE;
        Self { amplitudes }
    }

    /// Normalizes `amplitudes`; fails on a zero or non-finite vector.
    pub fn normalized(amplitudes: Vec<Complex>) -> Result<Self> {
        let n = norm_sqr(&amplitudes).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::Domain(format!(
                "cannot normalize vector of norm {n}"
            )));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    /// Wraps amplitudes that must already be unit norm within [`TOLERANCE`].
    pub fn from_unit(amplitudes: Vec<Complex>) -> Result<Self> {
        let defect = (norm_sqr(&amplitudes) - 1.0).abs();
        if defect > TOLERANCE || amplitudes.is_empty() {
            return Err(Error::Domain(format!(
                "amplitudes are not unit norm (|‖v‖² − 1| = {defect:e})"
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn inner(&self, other: &Ket) -> Result<Complex> {
        inner_product(&self.amplitudes, &other.amplitudes)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &Ket) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn as_column(&self) -> ComplexMatrix {
        ComplexMatrix::column(&self.amplitudes)
    }
}

impl AsRef<[Complex]> for Ket {
    fn as_ref(&self) -> &[Complex] {
        &self.amplitudes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.tensor_product(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_of_projectors() {
        let p0 = ComplexMatrix::diagonal(&[ONE, ZERO]);
        let p1 = ComplexMatrix::diagonal(&[ZERO, ONE]);
        assert_eq!(
            p0.tensor_product(&p1),
            ComplexMatrix::diagonal(&[ZERO, ONE, ZERO, ZERO])
        );
    }

    #[test]
    fn sigma_x_squared_flips_both() {
        let xx = sigma_x().tensor_product(&sigma_x());
        let out = xx.apply(Ket::basis(4, 0).amplitudes()).unwrap();
        assert_eq!(out, Ket::basis(4, 3).amplitudes());
    }

    #[test]
    fn partial_trace_examples() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(
            i4.partial_trace_second(2, 2).unwrap(),
            ComplexMatrix::identity(2).scale(c(2.0, 0.0))
        );

        let rho = ComplexMatrix::from_row_major(
            2,
            2,
            vec![c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)],
        )
        .unwrap();
        let sigma = ComplexMatrix::from_row_major(
            3,
            3,
            vec![
                c(0.5, 0.0),
                c(0.0, 0.1),
                ZERO,
                c(0.0, -0.1),
                c(0.25, 0.0),
                ZERO,
                ZERO,
                ZERO,
                c(0.5, 0.0),
            ],
        )
        .unwrap();
        let reduced = rho
            .tensor_product(&sigma)
            .partial_trace_second(2, 3)
            .unwrap();
        let expected = rho.scale(sigma.trace());
        assert!(reduced.max_abs_diff(&expected).unwrap() < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = Ket::from_unit(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)]).unwrap();
        let reduced = bell.projector().partial_trace_second(2, 2).unwrap();
        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(reduced.max_abs_diff(&half).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_wrong_size() {
        let m = ComplexMatrix::identity(6);
        assert!(matches!(
            m.partial_trace_second(2, 2),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let e0 = Ket::basis(2, 0);
        assert_eq!(
            ComplexMatrix::identity(2).apply(e0.amplitudes()).unwrap(),
            e0.amplitudes()
        );
        assert_eq!(
            sigma_x().apply(e0.amplitudes()).unwrap(),
            Ket::basis(2, 1).amplitudes()
        );
        // |1⟩|0⟩ = index 2, |1⟩|1⟩ = index 3
        assert_eq!(
            cnot().apply(Ket::basis(4, 2).amplitudes()).unwrap(),
            Ket::basis(4, 3).amplitudes()
        );
        assert!(sigma_x().apply(Ket::basis(3, 0).amplitudes()).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let e0 = Ket::basis(2, 0);
        let e1 = Ket::basis(2, 1);
        let plus = Ket::normalized(vec![ONE, ONE]).unwrap();
        assert_eq!(e0.inner(&e0).unwrap(), ONE);
        assert_eq!(e0.inner(&e1).unwrap(), ZERO);
        assert!((plus.inner(&e0).unwrap() - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(inner_product(e0.amplitudes(), &[ONE]).is_err());
    }

    #[test]
    fn inner_product_conjugates_first_argument() {
        let a = [c(0.0, 1.0)];
        let b = [ONE];
        assert_eq!(inner_product(&a, &b).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn mul_checks_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.mul(&a.adjoint()).is_ok());
    }

    #[test]
    fn ket_constructors_validate() {
        assert!(Ket::normalized(vec![ZERO, ZERO]).is_err());
        assert!(Ket::from_unit(vec![ONE, ONE]).is_err());
        let k = Ket::normalized(vec![c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((k.norm_sqr() - 1.0).abs() < TOLERANCE);
    }
}
