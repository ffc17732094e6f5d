//! Tsallis entropy, its pseudoadditive composition, and the conditional
//! entropy `S_q(B|A) = (S_q(A+B) - S_q(A)) / (1 + (1-q) S_q(A))`.

use crate::error::{Error, Result};
use crate::linalg::{trace_power, Spectrum};
use crate::scalar::Real;
use crate::states::BellDiagonalState;

/// The entropic index `q`. Finite by construction; `q == 1` selects the
/// logarithmic (von Neumann) branch.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropicIndex<T>(T);

impl<T: Real> EntropicIndex<T> {
    pub fn new(q: T) -> Result<Self> {
        if q.is_finite() {
            Ok(Self(q))
        } else {
            Err(Error::NonFiniteIndex(q.to_f64_lossy()))
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    #[inline]
    pub fn is_logarithmic(self) -> bool {
        self.0 == T::one()
    }
}

/// Which conditional entropy a value represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conditioning {
    /// `S_q(B|A)`
    BGivenA,
    /// `S_q(A|B)`
    AGivenB,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEntropyValue<T> {
    pub value: T,
    pub q: EntropicIndex<T>,
    pub direction: Conditioning,
}

impl<T: Real> ConditionalEntropyValue<T> {
    /// The opposite conditioning. Both reduced states of a Bell-diagonal
    /// state are `I/2`, so the value is shared.
    pub fn swapped(self) -> Self {
        let direction = match self.direction {
            Conditioning::BGivenA => Conditioning::AGivenB,
            Conditioning::AGivenB => Conditioning::BGivenA,
        };
        Self { direction, ..self }
    }
}

/// `S_q = (1 - Tr rho^q) / (q - 1)`, or `-sum p ln p` at `q = 1`.
pub fn tsallis_entropy<T: Real>(s: &Spectrum<T>, q: EntropicIndex<T>) -> Result<T> {
    if !s.is_stochastic() {
        return Err(Error::NotStochastic {
            reason: format!("values sum to {}", s.sum()),
        });
    }
    let q = q.value();
    if q == T::one() {
        return Ok(s.support().fold(T::zero(), |acc, p| acc - p * p.ln()));
    }
    Ok((T::one() - trace_power(s, q)) / (q - T::one()))
}

/// `sa + sb + (1-q) sa sb`, the entropy of a product state.
pub fn pseudoadditive_combine<T: Real>(sa: T, sb: T, q: EntropicIndex<T>) -> T {
    sa + sb + (T::one() - q.value()) * sa * sb
}

/// Conditional entropy from the joint spectrum and the spectrum of the
/// conditioning subsystem.
///
/// The denominator `1 + (1-q) S_q(A)` is evaluated as `Tr rho_A^q`, to which
/// it is algebraically equal.
pub fn conditional_entropy<T: Real>(
    joint: &Spectrum<T>,
    reduced: &Spectrum<T>,
    q: EntropicIndex<T>,
) -> Result<T> {
    let s_joint = tsallis_entropy(joint, q)?;
    let s_reduced = tsallis_entropy(reduced, q)?;
    if q.is_logarithmic() {
        return Ok(s_joint - s_reduced);
    }
    let denominator = trace_power(reduced, q.value());
    if !(denominator > T::min_positive_value()) {
        return Err(Error::VanishingDenominator(denominator.to_f64_lossy()));
    }
    Ok((s_joint - s_reduced) / denominator)
}

/// `S_q(B|A)` of a Bell-diagonal state in closed form.
///
/// With `rho_A = I/2` the quotient collapses to
/// `(2 - sum_k (2 w_k)^q) / (2 (q - 1))`. Using `sum_k 2 w_k = 2` this is
/// evaluated as `-sum_k w_k expm1((q-1) ln(2 w_k)) / (q-1)`, which is free
/// of cancellation near `q = 1` and of underflow at large `q`. Weights
/// below the support cutoff are dropped.
pub fn conditional_entropy_bell<T: Real>(
    s: &BellDiagonalState<T>,
    q: EntropicIndex<T>,
) -> Result<ConditionalEntropyValue<T>> {
    let s = s.require_physical()?;
    Ok(ConditionalEntropyValue {
        value: bell_conditional_unchecked(&s.weights().as_array(), q.value()),
        q,
        direction: Conditioning::BGivenA,
    })
}

/// Closed form on raw weights; callers guarantee physicality.
pub(crate) fn bell_conditional_unchecked<T: Real>(weights: &[T; 4], q: T) -> T {
    let cut = T::lit(crate::linalg::SUPPORT_CUTOFF);
    let two = T::lit(2.0);
    let d = q - T::one();
    let mut acc = T::zero();
    for &w in weights.iter().filter(|&&w| w > cut) {
        let l = (two * w).ln();
        acc = acc
            + if d == T::zero() {
                w * l
            } else {
                w * (d * l).exp_m1() / d
            };
    }
    -acc
}

/// `S_q(A) + S_q(B|A) + (1-q) S_q(A) S_q(B|A)`; reproduces `S_q(A+B)` when the
/// inputs are consistent.
pub fn chain_rule_check<T: Real>(
    reduced: &Spectrum<T>,
    b_given_a: T,
    q: EntropicIndex<T>,
) -> Result<T> {
    let sa = tsallis_entropy(reduced, q)?;
    Ok(pseudoadditive_combine(sa, b_given_a, q))
}
