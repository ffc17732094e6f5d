//! Inflexion point `q_I` of `S_q(A|B)` as a function of `q`, and the
//! order parameter `eta = 1 / (1 + q_I)`.
//!
//! Entangled Bell-diagonal states have a conditional-entropy curve that is
//! convex at small `q` and bends over towards minus infinity past `q_I`.
//! The search samples the central second difference on a log grid of `q`,
//! then bisects the first sign change. `q_I` diverges at the critical
//! planes, so a state whose inflexion lies beyond `q_max` reports `eta = 0`
//! even though it may be entangled; use the separability criteria for
//! verdicts.

use rayon::prelude::*;

use crate::entropy::bell_conditional_unchecked;
use crate::error::Result;
use crate::numeric::{bisect, logspace_closed, second_difference};
use crate::scalar::Real;
use crate::separability::GridSpec;
use crate::states::BellDiagonalState;

/// Weights at or above `1 - VERTEX_TOL` mark a pure Bell state.
pub const VERTEX_TOL: f64 = 1e-12;

/// Parameters of the inflexion search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InflexionSearch<T> {
    /// Lower end of the scanned `q` range.
    pub q_floor: T,
    pub q_max: T,
    /// Absolute width at which bisection of the sign change stops.
    pub refine_tol: T,
    /// Number of log-spaced samples on `[q_floor, q_max]`.
    pub grid_points: usize,
}

impl<T: Real> Default for InflexionSearch<T> {
    fn default() -> Self {
        Self {
            q_floor: T::lit(1e-3),
            q_max: T::lit(200.0),
            refine_tol: T::lit(1e-8),
            grid_points: 600,
        }
    }
}

/// Bracketing information reported alongside an inflexion search.
#[derive(Debug, Clone, PartialEq)]
pub struct InflexionDiagnostics<T> {
    pub bracket: (T, T),
    pub curvature_at_floor: T,
    pub curvature_at_max: T,
    /// Approximate locations of sign changes after the first one.
    pub additional_sign_changes: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalityReport<T> {
    pub q_inflexion: Option<T>,
    pub eta: T,
    /// Set for the four pure Bell states, where `eta = 1` by convention.
    pub vertex: bool,
    pub diagnostics: Option<InflexionDiagnostics<T>>,
}

/// Step used for the second difference at `q`: `1e-3 * max(1, q)`.
#[inline]
pub fn curvature_step<T: Real>(q: T) -> T {
    T::lit(1e-3) * q.max(T::one())
}

fn curvature_of<T: Real>(weights: &[T; 4], q: T, h: T) -> T {
    let f = |t: T| bell_conditional_unchecked(weights, t);
    second_difference(&f, q, h)
}

/// Central-difference `d^2 S_q(A|B) / dq^2` with the default step.
pub fn curvature<T: Real>(s: &BellDiagonalState<T>, q: T) -> Result<T> {
    let s = s.require_physical()?;
    Ok(curvature_of(&s.weights().as_array(), q, curvature_step(q)))
}

/// Same as [`curvature`] with an explicit step.
pub fn curvature_with_step<T: Real>(s: &BellDiagonalState<T>, q: T, h: T) -> Result<T> {
    let s = s.require_physical()?;
    Ok(curvature_of(&s.weights().as_array(), q, h))
}

/// Smallest `q` in `(q_floor, q_max]` where the curvature changes sign.
pub fn inflexion_point<T: Real>(
    s: &BellDiagonalState<T>,
    search: &InflexionSearch<T>,
) -> Result<(Option<T>, InflexionDiagnostics<T>)> {
    let s = s.require_physical()?;
    let weights = s.weights().as_array();
    let d2 = |q: T| curvature_of(&weights, q, curvature_step(q));

    let grid = logspace_closed(search.q_floor, search.q_max, search.grid_points.max(2));
    let values: Vec<T> = grid.iter().map(|&q| d2(q)).collect();
    let positive = |v: T| v > T::zero();

    let mut changes = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| positive(v[0]) != positive(v[1]))
        .map(|(q, _)| (q[0], q[1]));

    let first = changes
        .next()
        .map(|(lo, hi)| bisect(d2, lo, hi, search.refine_tol));
    let additional_sign_changes = changes.map(|(lo, hi)| (lo * hi).sqrt()).collect();

    let diagnostics = InflexionDiagnostics {
        bracket: (search.q_floor, search.q_max),
        curvature_at_floor: values[0],
        curvature_at_max: values[values.len() - 1],
        additional_sign_changes,
    };
    Ok((first, diagnostics))
}

/// `eta` with the default search parameters.
pub fn order_parameter<T: Real>(s: &BellDiagonalState<T>) -> Result<CriticalityReport<T>> {
    order_parameter_with(s, &InflexionSearch::default())
}

pub fn order_parameter_with<T: Real>(
    s: &BellDiagonalState<T>,
    search: &InflexionSearch<T>,
) -> Result<CriticalityReport<T>> {
    let s = s.require_physical()?;
    if s.weights().max().1 >= T::one() - T::tol(VERTEX_TOL) {
        return Ok(CriticalityReport {
            q_inflexion: None,
            eta: T::one(),
            vertex: true,
            diagnostics: None,
        });
    }
    let (q_inflexion, diagnostics) = inflexion_point(&s, search)?;
    let eta = q_inflexion.map_or(T::zero(), |q| T::one() / (T::one() + q));
    Ok(CriticalityReport {
        q_inflexion,
        eta,
        vertex: false,
        diagnostics: Some(diagnostics),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaCell<T> {
    pub state: BellDiagonalState<T>,
    pub q_inflexion: Option<T>,
    pub eta: T,
}

/// `eta` at every physical point of `spec`, in grid order.
pub fn eta_field<T: Real>(spec: &GridSpec<T>) -> Result<Vec<EtaCell<T>>> {
    spec.validate()?;
    let search = InflexionSearch::default();
    let cells: Vec<Option<EtaCell<T>>> = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let state = spec.point(idx);
            if !state.is_physical() {
                return Ok(None);
            }
            let r = order_parameter_with(&state, &search)?;
            Ok(Some(EtaCell {
                state,
                q_inflexion: r.q_inflexion,
                eta: r.eta,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(cells.into_iter().flatten().collect())
}
