//! Airy function Ai and its derivative for real and complex arguments, plus
//! the classical zeros a_n (of Ai) and a'_n (of Ai').
//!
//! Real arguments are split into three regimes: a double-double Maclaurin
//! series on [-10, 3], a modulus/phase asymptotic series below -10 and a
//! Bessel-K continued fraction above 3. Complex arguments are only supported
//! on the disc |z| <= 8, where the Maclaurin series is summed in
//! double-double.

mod dd;
mod kernels;
pub(crate) mod zeros;

pub(crate) use dd::{Dd, DdComplex};
pub use zeros::{classical_zero, classical_zeros, wkb_zero_seed, ClassicalZero, ZeroKind};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Lower end of the oscillatory asymptotic regime.
const OSCILLATORY_BELOW: f64 = -10.0;
/// Upper end of the Maclaurin regime; the Bessel-K kernel takes over above.
const DECAYING_ABOVE: f64 = 3.0;
/// Radius of the disc on which complex arguments are accepted.
pub const COMPLEX_RADIUS: f64 = 8.0;

/// Value and first derivative of Ai at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryPair<T> {
    pub value: T,
    pub derivative: T,
    /// Set when the true values are below the smallest normal double and
    /// zero was returned instead.
    pub underflow: bool,
}

/// Exponent 2/3 x^{3/2} used for exponential scaling on x > 0.
#[inline]
pub fn scaling_exponent(x: f64) -> f64 {
    if x > 0.0 {
        2.0 / 3.0 * x * x.sqrt()
    } else {
        0.0
    }
}

/// Unchecked (Ai, Ai') for finite x. Hot path for root finding and quadrature.
#[inline]
pub(crate) fn airy_raw(x: f64) -> (f64, f64) {
    if x < OSCILLATORY_BELOW {
        kernels::oscillatory(x)
    } else if x <= DECAYING_ABOVE {
        kernels::maclaurin_real(x)
    } else {
        let (ai, aip) = kernels::decaying_scaled(x);
        let damp = (-scaling_exponent(x)).exp();
        (ai * damp, aip * damp)
    }
}

/// Unchecked scaled pair: (Ai, Ai') * exp(2/3 x^{3/2}) for x > 0, plain values otherwise.
#[inline]
pub(crate) fn airy_scaled_raw(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        airy_raw(x)
    } else if x <= DECAYING_ABOVE {
        let (ai, aip) = kernels::maclaurin_real(x);
        let grow = scaling_exponent(x).exp();
        (ai * grow, aip * grow)
    } else {
        kernels::decaying_scaled(x)
    }
}

fn check_finite(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { function, value: x })
    }
}

/// Ai(x) and Ai'(x) for real x.
pub fn airy(x: f64) -> Result<AiryPair<f64>> {
    check_finite("airy", x)?;
    let (mut value, mut derivative) = airy_raw(x);
    let mut underflow = false;
    if x > 0.0 && value.abs() < f64::MIN_POSITIVE {
        value = 0.0;
        derivative = 0.0;
        underflow = true;
    }
    Ok(AiryPair {
        value,
        derivative,
        underflow,
    })
}

/// Exponentially scaled pair: multiplied by exp(2/3 x^{3/2}) when x > 0.
pub fn airy_scaled(x: f64) -> Result<AiryPair<f64>> {
    check_finite("airy_scaled", x)?;
    let (value, derivative) = airy_scaled_raw(x);
    Ok(AiryPair {
        value,
        derivative,
        underflow: false,
    })
}

pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|p| p.value)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy(x).map(|p| p.derivative)
}

/// Ai(z) and Ai'(z) for complex z with |z| <= [`COMPLEX_RADIUS`].
pub fn airy_complex(z: Complex64) -> Result<AiryPair<Complex64>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain {
            function: "airy_complex",
            value: z.norm(),
        });
    }
    let modulus = z.norm();
    if modulus > COMPLEX_RADIUS {
        return Err(Error::UnsupportedRange {
            function: "airy_complex",
            modulus,
            limit: COMPLEX_RADIUS,
        });
    }
    let ((re, im), (dre, dim)) = kernels::maclaurin_complex(z.re, z.im);
    Ok(AiryPair {
        value: Complex64::new(re, im),
        derivative: Complex64::new(dre, dim),
        underflow: false,
    })
}
