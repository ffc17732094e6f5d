//! Separability verdicts for Bell-diagonal states.
//!
//! Three criteria are available:
//!
//! * `ppt` diagonalises the partial transpose of the full density matrix.
//!   It is exact for two qubits and does not touch the Bell-weight code.
//! * `ar-asymptotic` is the `q -> infinity` limit of the conditional-entropy
//!   test: the state is entangled iff its largest Bell weight exceeds 1/2
//!   (near `Psi-` this is the plane `x + y + z = 1`).
//! * `ar-scan` samples `S_q(A|B)` on a grid of `q` and reports the most
//!   negative value; it is reconciled with the asymptotic verdict, which it
//!   may confirm but never override.
//!
//! Residuals use the rescaled form `sum_k (2 w_k)^q - 2`, which has the same
//! sign as `-S_q(A|B)` for `q > 1`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::entropy::{bell_conditional_unchecked, EntropicIndex};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose, Subsystem, SUPPORT_CUTOFF};
use crate::numeric::{bisect, logspace_open_closed};
use crate::scalar::Real;
use crate::states::{bell_diagonal_density, BellDiagonalState, TwoQubitState};

/// Default boundary tolerance for the closed-form criteria.
pub const ANALYTIC_BOUNDARY_TOL: f64 = 1e-9;
/// Default boundary tolerance for the sampled `q` scan.
pub const SCAN_BOUNDARY_TOL: f64 = 1e-7;
/// Bisection tolerance on the ray parameter in [`threshold_x`].
pub const THRESHOLD_TOL: f64 = 1e-12;
/// Region scans must lie inside `[-3.5, 1.5]^3`.
pub const GRID_BOUNDS: (f64, f64) = (-3.5, 1.5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Separable,
    Entangled,
    Boundary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
            Verdict::Boundary => "boundary",
        }
    }

    /// `Separable` below `-tol`, `Entangled` above `tol`, `Boundary` between.
    fn from_signed(witness_of_entanglement: f64, tol: f64) -> Self {
        if witness_of_entanglement > tol {
            Verdict::Entangled
        } else if witness_of_entanglement < -tol {
            Verdict::Separable
        } else {
            Verdict::Boundary
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Ppt,
    ArScan,
    ArAsymptotic,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Ppt => "ppt",
            Criterion::ArScan => "ar-scan",
            Criterion::ArAsymptotic => "ar-asymptotic",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Criterion::ArScan => SCAN_BOUNDARY_TOL,
            Criterion::Ppt | Criterion::ArAsymptotic => ANALYTIC_BOUNDARY_TOL,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ppt" => Ok(Criterion::Ppt),
            "ar-scan" => Ok(Criterion::ArScan),
            "ar-asymptotic" => Ok(Criterion::ArAsymptotic),
            other => Err(format!("unknown criterion '{other}'")),
        }
    }
}

/// A verdict, the criterion that produced it and its numeric witness.
///
/// The witness is the smallest partial-transpose eigenvalue for `ppt`, the
/// most negative sampled conditional entropy for `ar-scan` (with its `q` in
/// `witness_q`), and `max_k w_k - 1/2` for `ar-asymptotic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification<T> {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub witness: T,
    pub witness_q: Option<T>,
}

/// Partial-transpose (Peres) test on an arbitrary two-qubit state.
pub fn ppt_classify<T: Real>(
    state: &TwoQubitState<T>,
    boundary_tol: T,
) -> Result<Classification<T>> {
    let pt = partial_transpose(state.matrix(), Subsystem::B)?;
    let min = hermitian_eigenvalues(&pt)?.min();
    Ok(Classification {
        verdict: Verdict::from_signed(-min.to_f64_lossy(), boundary_tol.to_f64_lossy()),
        criterion: Criterion::Ppt,
        witness: min,
        witness_q: None,
    })
}

fn residual_unchecked<T: Real>(weights: &[T; 4], q: T) -> T {
    let cut = T::lit(SUPPORT_CUTOFF);
    let two = T::lit(2.0);
    weights
        .iter()
        .filter(|&&w| w > cut)
        .fold(-two, |acc, &w| acc + (two * w).powf(q))
}

/// `sum_k (2 w_k)^q - 2` for `q > 1`; positive exactly when `S_q(A|B) < 0`.
pub fn ar_residual<T: Real>(s: &BellDiagonalState<T>, q: T) -> Result<T> {
    if !(q > T::one()) || !q.is_finite() {
        return Err(Error::IndexOutOfDomain(q.to_f64_lossy()));
    }
    let s = s.require_physical()?;
    Ok(residual_unchecked(&s.weights().as_array(), q))
}

/// `q -> infinity` verdict from the largest Bell weight.
pub fn ar_classify_asymptotic<T: Real>(
    s: &BellDiagonalState<T>,
    boundary_tol: T,
) -> Result<Classification<T>> {
    let s = s.require_physical()?;
    let witness = s.weights().max().1 - T::lit(0.5);
    Ok(Classification {
        verdict: Verdict::from_signed(witness.to_f64_lossy(), boundary_tol.to_f64_lossy()),
        criterion: Criterion::ArAsymptotic,
        witness,
        witness_q: None,
    })
}

/// `{0.25, 0.5, 0.75, 1}` followed by 60 log-spaced points on `(1, 200]`.
pub fn default_q_grid<T: Real>() -> Vec<T> {
    let mut grid: Vec<T> = [0.25, 0.5, 0.75, 1.0].iter().map(|&v| T::lit(v)).collect();
    grid.extend(logspace_open_closed(T::one(), T::lit(200.0), 60));
    grid
}

/// Samples `S_q(A|B)` on `q_grid` and reconciles with the asymptotic test.
///
/// If a sampled value is below `-boundary_tol` the scan's own verdict
/// stands. Otherwise an asymptotic `entangled` or `boundary` verdict is
/// returned as is; only when both agree on separability is the scan's
/// witness reported.
pub fn ar_classify_scan<T: Real>(
    s: &BellDiagonalState<T>,
    q_grid: &[T],
    boundary_tol: T,
) -> Result<Classification<T>> {
    if q_grid.is_empty() {
        return Err(Error::EmptyQGrid);
    }
    let s = s.require_physical()?;
    let weights = s.weights().as_array();
    let mut worst = (T::infinity(), q_grid[0]);
    for &q in q_grid {
        EntropicIndex::new(q)?;
        let v = bell_conditional_unchecked(&weights, q);
        if v < worst.0 {
            worst = (v, q);
        }
    }
    let scan = Classification {
        verdict: Verdict::from_signed(-worst.0.to_f64_lossy(), boundary_tol.to_f64_lossy()),
        criterion: Criterion::ArScan,
        witness: worst.0,
        witness_q: Some(worst.1),
    };
    if scan.verdict == Verdict::Entangled {
        return Ok(scan);
    }
    let asymptotic = ar_classify_asymptotic(&s, T::lit(ANALYTIC_BOUNDARY_TOL))?;
    if asymptotic.verdict != Verdict::Separable {
        return Ok(asymptotic);
    }
    Ok(scan)
}

/// Classifies a Bell-diagonal state with the chosen criterion.
pub fn classify<T: Real>(
    s: &BellDiagonalState<T>,
    criterion: Criterion,
    boundary_tol: T,
) -> Result<Classification<T>> {
    match criterion {
        Criterion::Ppt => ppt_classify(&bell_diagonal_density(s)?, boundary_tol),
        Criterion::ArAsymptotic => ar_classify_asymptotic(s, boundary_tol),
        Criterion::ArScan => ar_classify_scan(s, &default_q_grid(), boundary_tol),
    }
}

/// Direction of a ray `t * d` from the maximally mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayDirection<T> {
    /// `(1, 1, 1)`: the Werner line, `t = x`.
    Diag,
    /// `(1, 0, 0)`.
    Axis,
    /// `(1, 1, 0)`.
    Edge,
    /// Arbitrary nonzero direction, normalised to unit length.
    Custom([T; 3]),
}

impl<T: Real> RayDirection<T> {
    pub fn vector(&self) -> Result<[T; 3]> {
        let (o, z) = (T::one(), T::zero());
        match *self {
            RayDirection::Diag => Ok([o, o, o]),
            RayDirection::Axis => Ok([o, z, z]),
            RayDirection::Edge => Ok([o, o, z]),
            RayDirection::Custom(d) => {
                let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                if !(norm > T::zero()) || !norm.is_finite() {
                    return Err(Error::InvalidDirection(format!(
                        "({}, {}, {}) has no usable length",
                        d[0], d[1], d[2]
                    )));
                }
                Ok([d[0] / norm, d[1] / norm, d[2] / norm])
            }
        }
    }

    fn label(&self) -> String {
        match self {
            RayDirection::Diag => "diag".into(),
            RayDirection::Axis => "axis".into(),
            RayDirection::Edge => "edge".into(),
            RayDirection::Custom(d) => format!("({}, {}, {})", d[0], d[1], d[2]),
        }
    }
}

/// Slopes `b_k` with `w_k(t) = 1/4 + t b_k` along `t * d`.
fn weight_slopes<T: Real>(d: &[T; 3]) -> [T; 4] {
    let four = T::lit(4.0);
    [
        -d[0] / four,
        -d[1] / four,
        -d[2] / four,
        (d[0] + d[1] + d[2]) / four,
    ]
}

/// Largest `t` keeping `t * d` inside the physical tetrahedron.
pub fn ray_exit<T: Real>(direction: &RayDirection<T>) -> Result<T> {
    let d = direction.vector()?;
    let quarter = T::lit(0.25);
    weight_slopes(&d)
        .iter()
        .filter(|&&b| b < T::zero())
        .map(|&b| quarter / -b)
        .fold(None, |acc: Option<T>, t| Some(acc.map_or(t, |a| a.min(t))))
        .ok_or_else(|| Error::InvalidDirection(direction.label()))
}

/// Ray parameter where `S_q(A|B)` first vanishes along `t * d`.
///
/// For finite `q > 1` this bisects [`ar_residual`] on `[0, t_max]` after
/// checking the endpoint signs. For `q = +inf` the crossing of the largest
/// weight through 1/2 is returned in closed form.
pub fn threshold_x<T: Real>(q: T, direction: &RayDirection<T>) -> Result<T> {
    let t_max = ray_exit(direction)?;
    let d = direction.vector()?;
    if q == T::infinity() {
        return threshold_asymptotic(&d, t_max);
    }
    if !(q > T::one()) || !q.is_finite() {
        return Err(Error::IndexOutOfDomain(q.to_f64_lossy()));
    }
    let residual = |t: T| {
        let s = BellDiagonalState::new(t * d[0], t * d[1], t * d[2]);
        residual_unchecked(&s.weights().as_array(), q)
    };
    let at_zero = residual(T::zero());
    let at_max = residual(t_max);
    if !(at_zero < T::zero() && at_max > T::zero()) {
        return Err(Error::NoCrossing {
            q: q.to_f64_lossy(),
            t_max: t_max.to_f64_lossy(),
            residual_at_max: at_max.to_f64_lossy(),
        });
    }
    Ok(bisect(residual, T::zero(), t_max, T::tol(THRESHOLD_TOL)))
}

fn threshold_asymptotic<T: Real>(d: &[T; 3], t_max: T) -> Result<T> {
    let quarter = T::lit(0.25);
    let crossing = weight_slopes(d)
        .iter()
        .filter(|&&b| b > T::zero())
        .map(|&b| quarter / b)
        .fold(T::infinity(), T::min);
    if crossing > t_max * (T::one() + T::epsilon()) {
        return Err(Error::NoCrossing {
            q: f64::INFINITY,
            t_max: t_max.to_f64_lossy(),
            residual_at_max: f64::NAN,
        });
    }
    Ok(crossing)
}

/// Sampling of one coordinate: `points` values evenly spaced on `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec<T> {
    pub min: T,
    pub max: T,
    pub points: usize,
}

impl<T: Real> AxisSpec<T> {
    pub fn new(min: T, max: T, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn value(&self, i: usize) -> T {
        if self.points == 1 {
            return self.min;
        }
        let frac = T::lit(i as f64) / T::lit((self.points - 1) as f64);
        self.min + (self.max - self.min) * frac
    }

    pub fn values(&self) -> Vec<T> {
        (0..self.points).map(|i| self.value(i)).collect()
    }

    fn validate(&self, name: &str) -> Result<()> {
        let (lo, hi) = (T::lit(GRID_BOUNDS.0), T::lit(GRID_BOUNDS.1));
        if self.points == 0 {
            return Err(Error::InvalidGrid(format!("{name}: zero points")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(Error::InvalidGrid(format!(
                "{name}: bad range [{}, {}]",
                self.min, self.max
            )));
        }
        if self.min < lo || self.max > hi {
            return Err(Error::InvalidGrid(format!(
                "{name}: [{}, {}] leaves [{}, {}]",
                self.min, self.max, GRID_BOUNDS.0, GRID_BOUNDS.1
            )));
        }
        Ok(())
    }
}

/// Cartesian grid in `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub x: AxisSpec<T>,
    pub y: AxisSpec<T>,
    pub z: AxisSpec<T>,
}

impl<T: Real> GridSpec<T> {
    /// The same axis for all three coordinates.
    pub fn cube(min: T, max: T, points: usize) -> Self {
        let a = AxisSpec::new(min, max, points);
        Self { x: a, y: a, z: a }
    }

    pub fn validate(&self) -> Result<()> {
        self.x.validate("x")?;
        self.y.validate("y")?;
        self.z.validate("z")
    }

    pub fn len(&self) -> usize {
        self.x.points * self.y.points * self.z.points
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point `idx` in x-major, then y, then z order.
    pub fn point(&self, idx: usize) -> BellDiagonalState<T> {
        let (ny, nz) = (self.y.points, self.z.points);
        BellDiagonalState::new(
            self.x.value(idx / (ny * nz)),
            self.y.value((idx / nz) % ny),
            self.z.value(idx % nz),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell<T> {
    pub state: BellDiagonalState<T>,
    pub physical: bool,
    /// Present only for physical cells.
    pub classification: Option<Classification<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid<T> {
    pub spec: GridSpec<T>,
    pub criterion: Criterion,
    pub boundary_tol: T,
    pub cells: Vec<Cell<T>>,
}

impl<T: Real> RegionGrid<T> {
    pub fn classified(&self) -> impl Iterator<Item = (&BellDiagonalState<T>, &Classification<T>)> {
        self.cells
            .iter()
            .filter_map(|c| c.classification.as_ref().map(|k| (&c.state, k)))
    }
}

/// Classifies every physical cell of `spec`.
///
/// Cells are evaluated on the current rayon pool; the output order is the
/// grid order whatever the number of workers.
pub fn region_scan<T: Real>(
    spec: &GridSpec<T>,
    criterion: Criterion,
    boundary_tol: T,
) -> Result<RegionGrid<T>> {
    spec.validate()?;
    let cells = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let state = spec.point(idx);
            let physical = state.is_physical();
            let classification = if physical {
                Some(classify(&state, criterion, boundary_tol)?)
            } else {
                None
            };
            Ok(Cell {
                state,
                physical,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        spec: *spec,
        criterion,
        boundary_tol,
        cells,
    })
}
