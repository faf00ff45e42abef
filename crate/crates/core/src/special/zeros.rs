//! Classical zeros a_n of Ai and a'_n of Ai'.

use super::airy_raw;
use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Largest supported zero index.
pub const MAX_ZERO_INDEX: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroKind {
    /// Zeros of Ai.
    Dirichlet,
    /// Zeros of Ai'.
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalZero {
    pub kind: ZeroKind,
    pub n: usize,
    pub value: f64,
}

/// WKB estimate -[3 pi / 2 (n - 1/4)]^{2/3}, with n - 3/4 for the Neumann kind.
pub fn wkb_zero_seed(kind: ZeroKind, n: usize) -> f64 {
    let shift = match kind {
        ZeroKind::Dirichlet => 0.25,
        ZeroKind::Neumann => 0.75,
    };
    -(1.5 * PI * (n as f64 - shift)).powf(2.0 / 3.0)
}

/// Newton iteration kept inside a sign-change bracket, bisecting whenever a
/// step would leave it. `f` returns the function value and its derivative.
pub(crate) fn safeguarded_newton<F>(f: F, lo: f64, hi: f64, level: usize) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    const MAX_ITER: usize = 200;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let fa = f(a).0;
    let fb = f(b).0;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }
    let neg_at_a = fa < 0.0;
    let mut x = 0.5 * (a + b);
    for _ in 0..MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == neg_at_a {
            a = x;
        } else {
            b = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let tol = 4.0 * f64::EPSILON * next.abs().max(1.0);
        if (next - x).abs() <= tol || (b - a) <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::RootNotConverged {
        level,
        lo: a,
        hi: b,
        iterations: MAX_ITER,
    })
}

fn target(kind: ZeroKind) -> impl Fn(f64) -> (f64, f64) {
    move |x| {
        let (ai, aip) = airy_raw(x);
        match kind {
            ZeroKind::Dirichlet => (ai, aip),
            ZeroKind::Neumann => (aip, x * ai),
        }
    }
}

/// The n-th zero (1-based) of Ai or Ai', as a negative number.
pub fn classical_zero(kind: ZeroKind, n: usize) -> Result<ClassicalZero> {
    if n == 0 || n > MAX_ZERO_INDEX {
        return Err(Error::InvalidArgument(format!(
            "zero index {n} outside 1..={MAX_ZERO_INDEX}"
        )));
    }
    let seed = wkb_zero_seed(kind, n);
    let f = target(kind);
    let mut half = 0.5 * PI / seed.abs().max(1.0).sqrt();
    let (mut lo, mut hi) = (seed - half, seed + half);
    while f(lo).0.signum() == f(hi).0.signum() {
        half *= 1.25;
        lo = seed - half;
        hi = seed + half;
        if half > 4.0 {
            return Err(Error::NoSignChange { lo, hi });
        }
    }
    let value = safeguarded_newton(f, lo, hi, n)?;
    Ok(ClassicalZero { kind, n, value })
}

/// Zeros 1..=n_max in order.
pub fn classical_zeros(kind: ZeroKind, n_max: usize) -> Result<Vec<f64>> {
    (1..=n_max)
        .map(|n| classical_zero(kind, n).map(|z| z.value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        let a1 = classical_zero(ZeroKind::Dirichlet, 1).unwrap().value;
        let b1 = classical_zero(ZeroKind::Neumann, 1).unwrap().value;
        assert!((a1 + 2.33810741045977).abs() < 1e-13);
        assert!((b1 + 1.01879297164747).abs() < 1e-13);
        let a6 = classical_zero(ZeroKind::Dirichlet, 6).unwrap().value;
        assert!((a6 + 9.02265085334098).abs() < 1e-12);
    }

    #[test]
    fn wkb_seed_near_first_zero() {
        let s = wkb_zero_seed(ZeroKind::Dirichlet, 1);
        assert!((s + 2.32025).abs() < 1e-5);
        assert!((s / -2.33810741 - 1.0).abs() < 0.01);
    }

    #[test]
    fn index_bounds() {
        assert!(classical_zero(ZeroKind::Dirichlet, 0).is_err());
        assert!(classical_zero(ZeroKind::Neumann, MAX_ZERO_INDEX + 1).is_err());
    }

    #[test]
    fn interlacing() {
        let a = classical_zeros(ZeroKind::Dirichlet, 100).unwrap();
        let b = classical_zeros(ZeroKind::Neumann, 100).unwrap();
        for n in 0..100 {
            assert!(b[n] > a[n]);
            if n + 1 < 100 {
                assert!(a[n] > b[n + 1]);
            }
        }
    }

    #[test]
    fn last_supported_zero() {
        let z = classical_zero(ZeroKind::Dirichlet, MAX_ZERO_INDEX).unwrap();
        let seed = wkb_zero_seed(ZeroKind::Dirichlet, MAX_ZERO_INDEX);
        assert!((z.value - seed).abs() < 1e-6);
        let (ai, aip) = airy_raw(z.value);
        // limited by the spacing of doubles near |a_n| ~ 1e3
        let ulp = z.value.abs() * f64::EPSILON;
        assert!(ai.abs() < 4.0 * ulp * aip.abs() + 1e-14);
    }
}
