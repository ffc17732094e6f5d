//! Dense complex linear algebra for one- and two-qubit operators.
//!
//! Matrices are stored row-major. For two-qubit operators the composite
//! index is `2 * i_a + i_b`, so subsystem A is the most significant bit.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues at or below this are treated as outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Maximum `|m - m^dagger|` accepted by [`hermitian_eigenvalues`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Off-diagonal magnitude at which a Jacobi sweep counts as converged.
pub const JACOBI_TOL: f64 = 1e-13;
/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Tolerance on sum and sign used to flag a spectrum as stochastic.
pub const STOCHASTIC_TOL: f64 = 1e-10;

/// One of the two qubits of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// Square complex matrix of dimension 2 or 4.
#[derive(Clone, PartialEq)]
pub struct ComplexSquareMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> ComplexSquareMatrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::Dimension {
                expected: 4,
                actual: dim,
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if let Some(k) = entries
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[T]) -> Result<Self> {
        Self::from_row_major(
            dim,
            entries
                .iter()
                .map(|&r| Complex::new(r, T::zero()))
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_row_major(dim, vec![Complex::zero(); dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = Complex::one();
        }
        Ok(m)
    }

    pub fn diagonal(diag: &[T]) -> Result<Self> {
        let dim = diag.len();
        let mut m = Self::zeros(dim)?;
        for (i, &d) in diag.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::NonFinite { row: i, col: i });
            }
            m.entries[i * dim + i] = Complex::new(d, T::zero());
        }
        Ok(m)
    }

    /// Projector `|v><v|` onto a (not necessarily normalised) vector.
    pub fn outer(v: &[Complex<T>]) -> Result<Self> {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(a * b.conj());
            }
        }
        Self::from_row_major(dim, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    #[inline]
    fn set(&mut self, row: usize, col: usize, v: Complex<T>) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|c| c * factor).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Largest `|m_ij - conj(m_ji)|` together with its position.
    pub fn max_asymmetry(&self) -> (T, usize, usize) {
        let mut worst = (T::zero(), 0, 0);
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_asymmetry().0 <= tol
    }

    /// `(m + m^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        let adj = self.adjoint();
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&adj.entries)
                .map(|(a, b)| (a + b) * half)
                .collect(),
        }
    }

    fn require_dim(&self, expected: usize) -> Result<()> {
        if self.dim == expected {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected,
                actual: self.dim,
            })
        }
    }
}

impl<T: Real> Add for &ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn add(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexSquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn sub(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexSquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexSquareMatrix<T> {
    type Output = ComplexSquareMatrix<T>;

    fn mul(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = vec![Complex::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    entries[i * n + j] = entries[i * n + j] + a * rhs.get(k, j);
                }
            }
        }
        ComplexSquareMatrix { dim: n, entries }
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexSquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexSquareMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.entries.chunks(self.dim.max(1)) {
            write!(f, "  ")?;
            for c in row {
                write!(f, "{:.6?}{:+.6?}i  ", c.re, c.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real eigenvalues (or probability weights) sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<T>,
    stochastic: bool,
}

impl<T: Real> Spectrum<T> {
    /// Sorts `values` descending and flags the result as stochastic when
    /// every value is `>= -STOCHASTIC_TOL` and the sum is `1 +- STOCHASTIC_TOL`.
    pub fn new(mut values: Vec<T>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let stochastic = Self::stochastic_violation(&values).is_none();
        Self { values, stochastic }
    }

    /// Like [`Spectrum::new`] but fails unless the values form a probability vector.
    pub fn stochastic(values: Vec<T>) -> Result<Self> {
        if let Some(reason) = Self::stochastic_violation(&values) {
            return Err(Error::NotStochastic { reason });
        }
        Ok(Self::new(values))
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Self {
        let v = T::one() / T::lit(n as f64);
        Self::new(vec![v; n])
    }

    fn stochastic_violation(values: &[T]) -> Option<String> {
        let tol = T::tol(STOCHASTIC_TOL);
        if values.is_empty() {
            return Some("empty".into());
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Some(format!("non-finite value {v}"));
        }
        if let Some(v) = values.iter().find(|&&v| v < -tol) {
            return Some(format!("negative value {v}"));
        }
        let sum = values.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > tol {
            return Some(format!("values sum to {sum}"));
        }
        None
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_stochastic(&self) -> bool {
        self.stochastic
    }

    pub fn max(&self) -> T {
        self.values[0]
    }

    pub fn min(&self) -> T {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> T {
        self.values.iter().fold(T::zero(), |a, &b| a + b)
    }

    /// Values strictly above [`SUPPORT_CUTOFF`].
    pub fn support(&self) -> impl Iterator<Item = T> + '_ {
        let cut = T::lit(SUPPORT_CUTOFF);
        self.values.iter().copied().filter(move |&v| v > cut)
    }

    /// Outer product distribution `p_i q_j`, the spectrum of a tensor product.
    pub fn product(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.values {
            for &b in &other.values {
                v.push(a * b);
            }
        }
        Self::new(v)
    }
}

/// Kronecker product of two single-qubit operators.
pub fn tensor_product<T: Real>(
    a: &ComplexSquareMatrix<T>,
    b: &ComplexSquareMatrix<T>,
) -> Result<ComplexSquareMatrix<T>> {
    a.require_dim(2)?;
    b.require_dim(2)?;
    let mut out = ComplexSquareMatrix::zeros(4)?;
    for ia in 0..2 {
        for ja in 0..2 {
            let aij = a.get(ia, ja);
            for ib in 0..2 {
                for jb in 0..2 {
                    out.set(2 * ia + ib, 2 * ja + jb, aij * b.get(ib, jb));
                }
            }
        }
    }
    Ok(out)
}

/// Reduced operator on `keep`, tracing out the other qubit.
pub fn partial_trace<T: Real>(
    m: &ComplexSquareMatrix<T>,
    keep: Subsystem,
) -> Result<ComplexSquareMatrix<T>> {
    m.require_dim(4)?;
    let mut out = ComplexSquareMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex::zero();
            for k in 0..2 {
                acc = acc
                    + match keep {
                        Subsystem::A => m.get(2 * i + k, 2 * j + k),
                        Subsystem::B => m.get(2 * k + i, 2 * k + j),
                    };
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Transposes the indices of qubit `on`, leaving the other qubit untouched.
pub fn partial_transpose<T: Real>(
    m: &ComplexSquareMatrix<T>,
    on: Subsystem,
) -> Result<ComplexSquareMatrix<T>> {
    m.require_dim(4)?;
    let mut out = ComplexSquareMatrix::zeros(4)?;
    for ia in 0..2 {
        for ib in 0..2 {
            for ja in 0..2 {
                for jb in 0..2 {
                    let v = match on {
                        Subsystem::A => m.get(2 * ja + ib, 2 * ia + jb),
                        Subsystem::B => m.get(2 * ia + jb, 2 * ja + ib),
                    };
                    out.set(2 * ia + ib, 2 * ja + jb, v);
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is validated against [`HERMITIAN_TOL`] and symmetrised before
/// rotating. Each rotation first removes the phase of the pivot `a_pq` and
/// then applies the real symmetric Jacobi rotation, so the pivot becomes
/// exactly zero.
pub fn hermitian_eigenvalues<T: Real>(m: &ComplexSquareMatrix<T>) -> Result<Spectrum<T>> {
    let (asym, row, col) = m.max_asymmetry();
    if asym > T::tol(HERMITIAN_TOL) {
        return Err(Error::NotHermitian {
            max_asymmetry: asym.to_f64_lossy(),
            row,
            col,
        });
    }
    let mut a = m.hermitian_part();
    let n = a.dim;
    for i in 0..n {
        a.set(i, i, Complex::new(a.get(i, i).re, T::zero()));
    }

    let scale = a.entries.iter().map(|c| c.norm()).fold(T::one(), T::max);
    let threshold = T::tol(JACOBI_TOL) * scale;
    let off_diagonal = |a: &ComplexSquareMatrix<T>| {
        let mut worst = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                worst = worst.max(a.get(p, q).norm());
            }
        }
        worst
    };

    let mut sweeps = 0;
    while off_diagonal(&a) >= threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off_diagonal(&a).to_f64_lossy(),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }

    Ok(Spectrum::new((0..n).map(|i| a.get(i, i).re).collect()))
}

/// Annihilates `a[p][q]` with the unitary `U = D R` where `D` strips the
/// pivot phase and `R` is a real Givens rotation; applies `A <- U^dagger A U`.
fn rotate<T: Real>(a: &mut ComplexSquareMatrix<T>, p: usize, q: usize) {
    let apq = a.get(p, q);
    let g = apq.norm();
    if g == T::zero() {
        return;
    }
    let phase = apq / g;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (T::lit(2.0) * g);
    let t = if theta >= T::zero() {
        T::one() / (theta + (T::one() + theta * theta).sqrt())
    } else {
        -T::one() / (-theta + (T::one() + theta * theta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let u_pp = Complex::new(c, T::zero());
    let u_pq = Complex::new(s, T::zero());
    let u_qp = phase.conj() * (-s);
    let u_qq = phase.conj() * c;

    let n = a.dim;
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * u_pp + akq * u_qp);
        a.set(k, q, akp * u_pq + akq * u_qq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, u_pp.conj() * apk + u_qp.conj() * aqk);
        a.set(q, k, u_pq.conj() * apk + u_qq.conj() * aqk);
    }
    a.set(p, q, Complex::zero());
    a.set(q, p, Complex::zero());
    a.set(p, p, Complex::new(a.get(p, p).re, T::zero()));
    a.set(q, q, Complex::new(a.get(q, q).re, T::zero()));
}

/// `Tr rho^q` restricted to eigenvalues above [`SUPPORT_CUTOFF`].
///
/// Restricting to the support keeps `q <= 0` finite for rank-deficient states.
pub fn trace_power<T: Real>(s: &Spectrum<T>, q: T) -> T {
    s.support().fold(T::zero(), |acc, v| acc + v.powf(q))
}
