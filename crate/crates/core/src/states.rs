//! Bell basis and the three-parameter Bell-diagonal family.
//!
//! Computational basis order is `(|uu>, |ud>, |du>, |dd>)` with real
//! amplitudes `+-1/sqrt(2)`. Bell states are always listed as
//! `(Phi+, Phi-, Psi+, Psi-)`, matching the weight order of
//! [`BellDiagonalState::weights`].

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexSquareMatrix, Spectrum};
use crate::scalar::Real;

/// Weight tolerance for physicality; admits pure Bell states under rounding.
pub const PHYSICAL_TOL: f64 = 1e-12;
/// Hermiticity tolerance for density matrices.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-10;
/// Trace and positivity tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-11;

/// Label of a Bell-basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        }
    }

    /// Amplitudes in the computational basis.
    pub fn amplitudes<T: Real>(self) -> [Complex<T>; 4] {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let z = Complex::zero();
        match self {
            BellLabel::PhiPlus => [h, z, z, h],
            BellLabel::PhiMinus => [h, z, z, -h],
            BellLabel::PsiPlus => [z, h, h, z],
            BellLabel::PsiMinus => [z, h, -h, z],
        }
    }

    /// The `(x, y, z)` vertex of the physical tetrahedron that is this pure state.
    pub fn vertex<T: Real>(self) -> BellDiagonalState<T> {
        let (one, three) = (T::one(), T::lit(3.0));
        match self {
            BellLabel::PhiPlus => BellDiagonalState::new(-three, one, one),
            BellLabel::PhiMinus => BellDiagonalState::new(one, -three, one),
            BellLabel::PsiPlus => BellDiagonalState::new(one, one, -three),
            BellLabel::PsiMinus => BellDiagonalState::new(one, one, one),
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Projectors onto `(Phi+, Phi-, Psi+, Psi-)`.
pub fn bell_projectors<T: Real>() -> [ComplexSquareMatrix<T>; 4] {
    BellLabel::ALL
        .map(|l| ComplexSquareMatrix::outer(&l.amplitudes::<T>()).expect("4-dimensional projector"))
}

/// Mixing parameters `(x, y, z)` of a Bell-diagonal state.
///
/// The weights on `(Phi+, Phi-, Psi+, Psi-)` are
/// `((1-x)/4, (1-y)/4, (1-z)/4, (1+x+y+z)/4)`; the state is physical when
/// all four are nonnegative, which is the tetrahedron with vertices at the
/// four Bell states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// The four Bell weights in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellWeights<T>(pub [T; 4]);

impl<T: Real> BellWeights<T> {
    pub fn as_array(&self) -> [T; 4] {
        self.0
    }

    pub fn get(&self, label: BellLabel) -> T {
        self.0[label as usize]
    }

    /// Sorted view.
    pub fn spectrum(&self) -> Spectrum<T> {
        Spectrum::new(self.0.to_vec())
    }

    /// Largest weight and its Bell label.
    pub fn max(&self) -> (BellLabel, T) {
        BellLabel::ALL.into_iter().map(|l| (l, self.get(l))).fold(
            (BellLabel::PhiPlus, T::neg_infinity()),
            |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            },
        )
    }
}

/// Outcome of [`is_physical`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalityReport<T> {
    pub physical: bool,
    /// Weights below `-PHYSICAL_TOL`, in canonical order.
    pub violations: Vec<(BellLabel, T)>,
}

impl<T: Real> BellDiagonalState<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn weights(&self) -> BellWeights<T> {
        let four = T::lit(4.0);
        let one = T::one();
        BellWeights([
            (one - self.x) / four,
            (one - self.y) / four,
            (one - self.z) / four,
            (one + self.x + self.y + self.z) / four,
        ])
    }

    pub fn is_physical(&self) -> bool {
        is_physical(self).physical
    }

    /// Returns `self` if physical, else an error naming the first negative weight.
    pub fn require_physical(self) -> Result<Self> {
        let report = is_physical(&self);
        match report.violations.first() {
            None => Ok(self),
            Some(&(label, weight)) => Err(Error::Unphysical {
                x: self.x.to_f64_lossy(),
                y: self.y.to_f64_lossy(),
                z: self.z.to_f64_lossy(),
                label: label.as_str(),
                weight: weight.to_f64_lossy(),
            }),
        }
    }

    /// `(x, z, y)`.
    pub fn swap_yz(&self) -> Self {
        Self::new(self.x, self.z, self.y)
    }

    /// `(-x-y-z, x, y)`.
    pub fn cycle(&self) -> Self {
        Self::new(-self.x - self.y - self.z, self.x, self.y)
    }
}

/// Bell weights of a triple; defined for unphysical triples as well.
pub fn bell_weights<T: Real>(s: &BellDiagonalState<T>) -> BellWeights<T> {
    s.weights()
}

pub fn is_physical<T: Real>(s: &BellDiagonalState<T>) -> PhysicalityReport<T> {
    let tol = T::tol(PHYSICAL_TOL);
    let w = s.weights();
    let violations: Vec<_> = BellLabel::ALL
        .into_iter()
        .map(|l| (l, w.get(l)))
        .filter(|&(_, v)| v < -tol || !v.is_finite())
        .collect();
    PhysicalityReport {
        physical: violations.is_empty(),
        violations,
    }
}

/// Werner-Popescu state `(x, x, x)`, `0 <= x <= 1`.
pub fn werner<T: Real>(x: T) -> Result<BellDiagonalState<T>> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::WernerRange(x.to_f64_lossy()));
    }
    Ok(BellDiagonalState::new(x, x, x))
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState<T> {
    matrix: ComplexSquareMatrix<T>,
}

impl<T: Real> TwoQubitState<T> {
    /// Checks dimension 4, Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexSquareMatrix<T>) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::Dimension {
                expected: 4,
                actual: matrix.dim(),
            });
        }
        let (asym, _, _) = matrix.max_asymmetry();
        if asym > T::tol(DENSITY_HERMITIAN_TOL) {
            return Err(Error::InvalidDensity {
                reason: format!("not Hermitian (max asymmetry {:e})", asym.to_f64_lossy()),
            });
        }
        let tr = matrix.trace();
        let tol = T::tol(DENSITY_TOL);
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity {
                reason: format!("trace {}{:+}i", tr.re, tr.im),
            });
        }
        let spec = hermitian_eigenvalues(&matrix)?;
        if spec.min() < -tol {
            return Err(Error::InvalidDensity {
                reason: format!("negative eigenvalue {}", spec.min()),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexSquareMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexSquareMatrix<T> {
        self.matrix
    }
}

/// `sum_k w_k P_k` over the Bell projectors.
pub fn bell_diagonal_density<T: Real>(s: &BellDiagonalState<T>) -> Result<TwoQubitState<T>> {
    let s = s.require_physical()?;
    let w = s.weights().as_array();
    let projectors = bell_projectors::<T>();
    let mut rho = ComplexSquareMatrix::zeros(4)?;
    for (p, &wk) in projectors.iter().zip(&w) {
        rho = &rho + &p.scale(wk);
    }
    TwoQubitState::new(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_trace, Subsystem};

    type S = BellDiagonalState<f64>;
    type M = ComplexSquareMatrix<f64>;

    #[test]
    fn projectors_are_complete_orthogonal_idempotent() {
        let p = bell_projectors::<f64>();
        let sum = p.iter().skip(1).fold(p[0].clone(), |acc, m| &acc + m);
        assert!(sum.max_abs_diff(&M::identity(4).unwrap()) <= 1e-15);
        for i in 0..4 {
            assert!((&p[i] * &p[i]).max_abs_diff(&p[i]) < 1e-15);
            assert!((p[i].trace().re - 1.0).abs() < 1e-15);
            for j in 0..4 {
                if i != j {
                    assert!((&p[i] * &p[j]).max_abs_diff(&M::zeros(4).unwrap()) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(S::new(0.0, 0.0, 0.0).weights().0, [0.25; 4]);
        assert_eq!(S::new(1.0, 1.0, 1.0).weights().0, [0.0, 0.0, 0.0, 1.0]);
        let x = 0.4f64;
        let w = werner(x).unwrap().weights().0;
        for wk in &w[..3] {
            assert!((wk - (1.0 - x) / 4.0).abs() < 1e-16);
        }
        assert!((w[3] - (1.0 + 3.0 * x) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn werner_third_weights() {
        let w = werner(1.0f64 / 3.0).unwrap().weights().0;
        let expected = [1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn werner_range() {
        assert_eq!(werner(0.0).unwrap(), S::new(0.0, 0.0, 0.0));
        assert_eq!(werner(1.0).unwrap(), S::new(1.0, 1.0, 1.0));
        assert!(matches!(werner(1.1), Err(Error::WernerRange(_))));
        assert!(werner(-0.1).is_err());
        assert!(werner(f64::NAN).is_err());
    }

    #[test]
    fn physicality() {
        assert!(is_physical(&S::new(1.0, 1.0, 1.0)).physical);
        let r = is_physical(&S::new(1.5, 0.0, 0.0));
        assert!(!r.physical);
        assert_eq!(r.violations[0].0, BellLabel::PhiPlus);
        let r = is_physical(&S::new(-1.0, -1.0, -1.0));
        assert_eq!(r.violations, vec![(BellLabel::PsiMinus, -0.5)]);
    }

    #[test]
    fn density_examples() {
        let mixed = bell_diagonal_density(&S::new(0.0, 0.0, 0.0)).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(&M::identity(4).unwrap().scale(0.25))
                < 1e-16
        );
        let p = bell_projectors::<f64>();
        for (label, proj) in BellLabel::ALL.into_iter().zip(&p) {
            let rho = bell_diagonal_density(&label.vertex::<f64>()).unwrap();
            assert!(rho.matrix().max_abs_diff(proj) < 1e-16, "{label}");
        }
    }

    #[test]
    fn unphysical_density_names_weight() {
        match bell_diagonal_density(&S::new(0.0, 0.0, 1.5)) {
            Err(Error::Unphysical { label, weight, .. }) => {
                assert_eq!(label, "psi+");
                assert!((weight + 0.125).abs() < 1e-16);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduced_states_are_maximally_mixed() {
        let rho = bell_diagonal_density(&S::new(0.3, -0.2, 0.5)).unwrap();
        let half = M::identity(2).unwrap().scale(0.5);
        for side in [Subsystem::A, Subsystem::B] {
            assert!(
                partial_trace(rho.matrix(), side)
                    .unwrap()
                    .max_abs_diff(&half)
                    < 1e-12
            );
        }
    }

    #[test]
    fn density_validation() {
        assert!(TwoQubitState::new(M::identity(4).unwrap()).is_err());
        assert!(TwoQubitState::new(M::diagonal(&[1.5, -0.5, 0.0, 0.0]).unwrap()).is_err());
        assert!(TwoQubitState::new(M::identity(2).unwrap().scale(0.5)).is_err());
    }

    #[test]
    fn symmetry_maps_preserve_weight_multiset() {
        let s = S::new(0.3, -0.7, 0.2);
        for t in [s.swap_yz(), s.cycle()] {
            let mut a = s.weights().0;
            let mut b = t.weights().0;
            a.sort_by(|p, q| p.partial_cmp(q).unwrap());
            b.sort_by(|p, q| p.partial_cmp(q).unwrap());
            for (p, q) in a.iter().zip(&b) {
                assert!((p - q).abs() < 1e-15);
            }
        }
    }
}
