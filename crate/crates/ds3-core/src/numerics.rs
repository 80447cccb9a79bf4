//! Dense complex linear algebra for small matrices (≤ 64×64).
//!
//! Everything here is double precision with explicit tolerance contracts:
//! the Hermitian eigensolver and the SVD reconstruct their input to
//! `1e-9·‖M‖_F`, and comparisons default to `1e-10` absolute per entry.
//! Decompositions use cyclic Jacobi rotations, which are plenty fast and
//! accurate at these dimensions.

use num_complex::Complex64;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Default absolute comparison tolerance on entries.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Frobenius-relative tolerance for decomposition residuals.
pub const RESIDUAL_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;

/// The primitive cube root of unity ω = e^{2πi/3} = −1/2 + i·√3/2.
pub fn omega() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

/// ω̄ = e^{−2πi/3}, the conjugate cube root of unity.
pub fn omega_bar() -> Complex64 {
    omega().conj()
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = Self { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Self::new(nrows, ncols, rows.concat())
    }

    /// Column vector from a slice.
    pub fn column_from_slice(v: &[Complex64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
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

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NotFinite)
        }
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Complex64]) {
        assert_eq!(v.len(), self.rows);
        for r in 0..self.rows {
            self[(r, c)] = v[r];
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul dims {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entry-wise approximate equality at absolute tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_abs_diff(other) <= tol
    }

    /// ‖M − M†‖_F, zero exactly when Hermitian.
    pub fn hermitian_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// (M + M†)/2.
    pub fn symmetrize(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    /// ‖U†U − 1‖_F; at most `1e-9` for anything claimed unitary.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .sub(&Self::identity(self.cols))
            .frobenius_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.unitarity_residual() <= tol
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for br in 0..other.rows {
                    for bc in 0..other.cols {
                        out[(ar * other.rows + br, ac * other.cols + bc)] = a * other[(br, bc)];
                    }
                }
            }
        }
        out
    }

    /// Submatrix picking the given rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])])
    }

    /// Contiguous block of shape `nrows`×`ncols` anchored at (`r0`, `c0`).
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols);
        Self::from_fn(nrows, ncols, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        out.paste(0, 0, a);
        out.paste(0, a.cols, b);
        out.paste(a.rows, 0, c);
        out.paste(a.rows, a.cols, d);
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, other: &Self) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for r in 0..other.rows {
            for c in 0..other.cols {
                self[(r0 + r, c0 + c)] = other[(r, c)];
            }
        }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, z) in entries.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).collect()
    }

    /// True when all off-diagonal entries are below `tol`.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c && self[(r, c)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// Complex numbers serialize as [re, im]; matrices as nested arrays, row-major.
// This convention is shared by every module and the CLI.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<[f64; 2]> = (0..self.cols)
                .map(|c| [self[(r, c)].re, self[(r, c)].im])
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MatrixVisitor;
        impl<'de> Visitor<'de> for MatrixVisitor {
            type Value = ComplexMatrix;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("nested arrays of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut rows: Vec<Vec<Complex64>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<[f64; 2]>>()? {
                    rows.push(row.iter().map(|p| Complex64::new(p[0], p[1])).collect());
                }
                ComplexMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
            }
        }
        deserializer.deserialize_seq(MatrixVisitor)
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues ascending,
/// orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// V·diag(λ)·V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lam = ComplexMatrix::diag(
            &self
                .eigenvalues
                .iter()
                .map(|&l| Complex64::new(l, 0.0))
                .collect::<Vec<_>>(),
        );
        self.eigenvectors
            .matmul(&lam)
            .matmul(&self.eigenvectors.adjoint())
    }
}

/// Singular value decomposition `M = U·D·V†` with `v_adjoint = V†`.
/// Singular values are sorted descending and non-negative.
#[derive(Clone, Debug)]
pub struct SvdDecomposition {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v_adjoint: ComplexMatrix,
}

impl SvdDecomposition {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular_values.last().copied().unwrap_or(0.0)
    }

    /// Rectangular diag(σ) with the shape of the original matrix.
    pub fn sigma_matrix(&self) -> ComplexMatrix {
        let mut d = ComplexMatrix::zeros(self.u.rows(), self.v_adjoint.cols());
        for (i, &s) in self.singular_values.iter().enumerate() {
            d[(i, i)] = Complex64::new(s, 0.0);
        }
        d
    }

    /// U·D·V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.u.matmul(&self.sigma_matrix()).matmul(&self.v_adjoint)
    }
}

/// One complex Jacobi rotation zeroing the (p,q) coupling of the Hermitian
/// 2×2 block [[a, r·u], [r·ū, b]] (a, b real, r = |coupling|, |u| = 1).
/// Returns (c, s, u) for the unitary [[c, s·u], [−s·ū, c]].
fn jacobi_rotation(a: f64, b: f64, coupling: Complex64) -> (f64, f64, Complex64) {
    let r = coupling.norm();
    let u = coupling / r;
    let tau = (b - a) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, u)
}

fn offdiagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += m[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Rejects inputs whose asymmetry ‖M − M†‖_F exceeds `1e-9·max(1, ‖M‖_F)`.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::DimMismatch(format!(
            "eig needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.check_finite()?;
    let norm = m.frobenius_norm();
    let tol = RESIDUAL_TOL * norm.max(1.0);
    let asymmetry = m.hermitian_asymmetry();
    if asymmetry > tol {
        return Err(Error::NotHermitian { asymmetry, tol });
    }

    let n = m.rows();
    let mut a = m.symmetrize();
    let mut v = ComplexMatrix::identity(n);
    let stop = 1e-14 * norm.max(1.0);

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if offdiagonal_norm(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= stop / (n as f64) {
                    continue;
                }
                let (c, s, u) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                apply_rotation_right(&mut a, p, q, c, s, u);
                apply_rotation_left(&mut a, p, q, c, s, u);
                apply_rotation_right(&mut v, p, q, c, s, u);
                // Pin the zeroed coupling and re-realize the diagonal.
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged && offdiagonal_norm(&a) > stop {
        return Err(Error::NoConvergence {
            what: "Jacobi eigensolver",
            iterations: JACOBI_MAX_SWEEPS,
            residual: offdiagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &v.column(old));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Right-multiplies columns (p,q) by [[c, s·u], [−s·ū, c]].
fn apply_rotation_right(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64) {
    for r in 0..m.rows() {
        let xp = m[(r, p)];
        let xq = m[(r, q)];
        m[(r, p)] = xp * c - xq * s * u.conj();
        m[(r, q)] = xp * s * u + xq * c;
    }
}

/// Left-multiplies rows (p,q) by the adjoint [[c, −s·u], [s·ū, c]].
fn apply_rotation_left(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, u: Complex64) {
    for col in 0..m.cols() {
        let xp = m[(p, col)];
        let xq = m[(q, col)];
        m[(p, col)] = xp * c - xq * s * u;
        m[(q, col)] = xp * s * u.conj() + xq * c;
    }
}

/// Singular value decomposition by one-sided Jacobi.
///
/// Works on rectangular inputs; `u` and `v_adjoint` are full square unitaries.
pub fn svd(m: &ComplexMatrix) -> Result<SvdDecomposition> {
    m.check_finite()?;
    if m.rows() < m.cols() {
        // Factor the adjoint and swap roles.
        let t = svd(&m.adjoint())?;
        return Ok(SvdDecomposition {
            u: t.v_adjoint.adjoint(),
            singular_values: t.singular_values,
            v_adjoint: t.u.adjoint(),
        });
    }

    let rows = m.rows();
    let cols = m.cols();
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(cols);
    let scale = m.frobenius_norm().max(1.0);

    let mut converged = false;
    let mut worst = 0.0_f64;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        worst = 0.0;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    let xp = w[(r, p)];
                    let xq = w[(r, q)];
                    app += xp.norm_sqr();
                    aqq += xq.norm_sqr();
                    apq += xp.conj() * xq;
                }
                let denom = (app * aqq).sqrt();
                if denom <= (1e-30) * scale * scale {
                    continue; // one column is numerically zero
                }
                let rel = apq.norm() / denom;
                worst = worst.max(rel);
                if rel <= 1e-15 {
                    continue;
                }
                let (c, s, u) = jacobi_rotation(app, aqq, apq);
                apply_rotation_right(&mut w, p, q, c, s, u);
                apply_rotation_right(&mut v, p, q, c, s, u);
            }
        }
        if worst <= 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "one-sided Jacobi SVD",
            iterations: JACOBI_MAX_SWEEPS,
            residual: worst,
        });
    }

    // Column norms are the singular values; sort descending.
    let mut norms: Vec<f64> = (0..cols)
        .map(|c| (0..rows).map(|r| w[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    norms = order.iter().map(|&i| norms[i]).collect();

    let sigma_max = norms.first().copied().unwrap_or(0.0);
    let rank_tol = 1e-13 * sigma_max.max(1e-300);

    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(rows);
    for (k, &old) in order.iter().enumerate() {
        if norms[k] > rank_tol {
            let col = w.column(old);
            u_cols.push(col.iter().map(|z| z / norms[k]).collect());
        }
    }
    complete_orthonormal(&mut u_cols, rows);

    let mut u = ComplexMatrix::zeros(rows, rows);
    for (c, col) in u_cols.iter().enumerate() {
        u.set_column(c, col);
    }
    let mut v_sorted = ComplexMatrix::zeros(cols, cols);
    for (new, &old) in order.iter().enumerate() {
        v_sorted.set_column(new, &v.column(old));
    }

    Ok(SvdDecomposition {
        u,
        singular_values: norms,
        v_adjoint: v_sorted.adjoint(),
    })
}

/// Extends a partial orthonormal set to a full basis of C^dim by doubly
/// re-orthogonalized Gram–Schmidt, greedily picking the standard basis
/// vector with the largest residual each round (always ≥ √(deficit/dim)).
fn complete_orthonormal(cols: &mut Vec<Vec<Complex64>>, dim: usize) {
    let residual = |cols: &[Vec<Complex64>], start: usize| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[start] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for col in cols {
                let overlap: Complex64 = col.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(col) {
                    *vi -= overlap * ci;
                }
            }
        }
        v
    };
    while cols.len() < dim {
        let best = (0..dim)
            .map(|i| residual(cols, i))
            .max_by(|a, b| {
                let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
                let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
                na.partial_cmp(&nb).unwrap()
            })
            .expect("dim > 0");
        let norm = best.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-8, "orthonormal completion failed");
        cols.push(best.iter().map(|z| z / norm).collect());
    }
}

/// Nearest positive-semidefinite matrix in Frobenius norm: symmetrize,
/// then clip negative eigenvalues at zero.
pub fn psd_project(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::DimMismatch(format!(
            "psd_project needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let sym = m.symmetrize();
    let eig = eig_hermitian(&sym)?;
    let clipped: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::new(l.max(0.0), 0.0))
        .collect();
    let v = &eig.eigenvectors;
    Ok(v
        .matmul(&ComplexMatrix::diag(&clipped))
        .matmul(&v.adjoint())
        .symmetrize())
}

/// Principal square root of a PSD matrix. Eigenvalues below a relative
/// floor are clipped to zero before the root: sqrt amplifies rounding noise
/// (1e-17 → 3e-9), which would otherwise dominate trace sums.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(&m.symmetrize())?;
    let floor = 1e-14 * eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(0.0);
    let roots: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let clipped = if l > floor { l } else { 0.0 };
            Complex64::new(clipped.sqrt(), 0.0)
        })
        .collect();
    let v = &eig.eigenvectors;
    Ok(v.matmul(&ComplexMatrix::diag(&roots)).matmul(&v.adjoint()))
}

/// Closest unitary in Frobenius norm (polar factor): U·V† from the SVD.
pub fn nearest_unitary(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::DimMismatch("polar factor needs a square matrix".into()));
    }
    let d = svd(m)?;
    Ok(d.u.matmul(&d.v_adjoint))
}
