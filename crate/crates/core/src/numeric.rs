//! Small numerical helpers shared by the threshold and inflexion searches.

use crate::scalar::Real;

/// Bisection on `[lo, hi]` where `f(lo)` and `f(hi)` have opposite signs.
///
/// Stops when the bracket is narrower than `tol`; returns the midpoint.
/// An endpoint where `f` is exactly zero is returned directly.
pub fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let mut f_lo = f(lo);
    if f_lo == T::zero() {
        return lo;
    }
    let two = T::lit(2.0);
    // 200 halvings exhaust any double bracket.
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = (lo + hi) / two;
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// `n` points geometrically spaced on `(lo, hi]`: `lo * (hi/lo)^(i/n)`, `i = 1..=n`.
pub fn logspace_open_closed<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let ratio = (hi / lo).ln();
    let nf = T::lit(n as f64);
    (1..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo * (ratio * T::lit(i as f64) / nf).exp()
            }
        })
        .collect()
}

/// `n` points geometrically spaced on `[lo, hi]`.
pub fn logspace_closed<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    assert!(n >= 2, "need at least two points");
    let ratio = (hi / lo).ln();
    let last = T::lit((n - 1) as f64);
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => lo * (ratio * T::lit(i as f64) / last).exp(),
        })
        .collect()
}

/// Three-point central estimate of `f''(x)` with step `h`.
#[inline]
pub fn second_difference<T: Real, F: Fn(T) -> T>(f: &F, x: T, h: T) -> T {
    (f(x + h) - T::lit(2.0) * f(x) + f(x - h)) / (h * h)
}
