//! Entanglement of Bell-diagonal two-qubit states through the Tsallis
//! conditional entropy, cross-checked against the partial-transpose test.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! tolerances quoted in the module docs assume.
//!
//! ```
//! use qsep_core::{BellState, Criterion, Verdict};
//!
//! let werner = BellState::new(0.5, 0.5, 0.5);
//! let c = qsep_core::classify(&werner, Criterion::Ppt, 1e-9).unwrap();
//! assert_eq!(c.verdict, Verdict::Entangled);
//! ```

// `!(a > b)` is used deliberately so that NaN falls into the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criticality;
pub mod entropy;
mod error;
pub mod linalg;
pub mod numeric;
pub mod scalar;
pub mod separability;
pub mod states;

pub use criticality::{
    curvature, eta_field, inflexion_point, order_parameter, order_parameter_with,
    CriticalityReport, EtaCell, InflexionDiagnostics, InflexionSearch,
};
pub use entropy::{
    chain_rule_check, conditional_entropy, conditional_entropy_bell, pseudoadditive_combine,
    tsallis_entropy, ConditionalEntropyValue, Conditioning, EntropicIndex,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eigenvalues, partial_trace, partial_transpose, tensor_product, trace_power,
    ComplexSquareMatrix, Spectrum, Subsystem,
};
pub use scalar::Real;
pub use separability::{
    ar_classify_asymptotic, ar_classify_scan, ar_residual, classify, default_q_grid, ppt_classify,
    region_scan, threshold_x, AxisSpec, Cell, Classification, Criterion, GridSpec, RayDirection,
    RegionGrid, Verdict,
};
pub use states::{
    bell_diagonal_density, bell_projectors, bell_weights, is_physical, werner, BellDiagonalState,
    BellLabel, BellWeights, PhysicalityReport, TwoQubitState,
};

/// Double-precision complex matrix.
pub type CMatrix = ComplexSquareMatrix<f64>;
/// Double-precision Bell-diagonal state.
pub type BellState = BellDiagonalState<f64>;
/// Single-precision Bell-diagonal state.
pub type BellState32 = BellDiagonalState<f32>;
pub type DensityMatrix = TwoQubitState<f64>;
pub type RealSpectrum = Spectrum<f64>;
pub type Index = EntropicIndex<f64>;
pub type Report = CriticalityReport<f64>;
pub type Region = RegionGrid<f64>;
pub type Grid = GridSpec<f64>;
