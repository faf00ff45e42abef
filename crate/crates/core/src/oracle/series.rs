//! Slow reference evaluation of Ai and Ai' from the single power series
//! Ai(x) = sum_k Gamma((k+1)/3) / k! (3^{1/3} x)^k sin(2 pi (k+1)/3) / (pi 3^{2/3}),
//! summed term by term in double-double with a fixed number of terms.

use crate::error::{Error, Result};
use crate::special::{Dd, DdComplex};
use num_complex::Complex64;

const GAMMA_THIRD: Dd = Dd {
    hi: 2.6789385347077475,
    lo: 1.7947798648225244e-16,
};
const GAMMA_TWO_THIRDS: Dd = Dd {
    hi: 1.3541179394264005,
    lo: -4.6231203911366416e-17,
};
const PREFACTOR: Dd = Dd {
    hi: 0.15302743219105738,
    lo: 4.91291978243704e-18,
};
const CBRT3: Dd = Dd {
    hi: 1.4422495703074083,
    lo: 8.054912676113687e-17,
};
const HALF_SQRT3: Dd = Dd {
    hi: 0.8660254037844386,
    lo: 5.0175421109034514e-17,
};

/// Number of series terms; 240 reaches below 1e-40 relative for |x| <= 12.
pub const SERIES_TERMS: usize = 240;
/// Largest modulus accepted by the reference series.
pub const SERIES_RADIUS: f64 = 12.0;

/// Coefficients c_k s_k with c_k = Gamma((k+1)/3)/k! and s_k the sine factor.
fn coefficients() -> Vec<Dd> {
    let mut c = vec![Dd::ZERO; SERIES_TERMS];
    c[0] = GAMMA_THIRD;
    c[1] = GAMMA_TWO_THIRDS;
    for k in 0..SERIES_TERMS - 3 {
        if k % 3 == 2 {
            continue;
        }
        c[k + 3] = c[k].div_f64(3.0 * (k as f64 + 2.0) * (k as f64 + 3.0));
    }
    c.iter()
        .enumerate()
        .map(|(k, &ck)| match k % 3 {
            0 => ck * HALF_SQRT3,
            1 => -(ck * HALF_SQRT3),
            _ => Dd::ZERO,
        })
        .collect()
}

/// Reference (Ai(x), Ai'(x)) for |x| <= 12.
pub fn airy_reference(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() || x.abs() > SERIES_RADIUS {
        return Err(Error::UnsupportedRange {
            function: "airy_reference",
            modulus: x.abs(),
            limit: SERIES_RADIUS,
        });
    }
    let c = coefficients();
    let t = CBRT3 * Dd::from_f64(x);
    let mut pow = Dd::ONE; // t^{k-1}
    let mut value = c[0];
    let mut deriv = Dd::ZERO;
    for (k, &ck) in c.iter().enumerate().skip(1) {
        deriv = deriv + (ck * pow).mul_f64(k as f64);
        pow = pow * t;
        value = value + ck * pow;
    }
    Ok((
        (PREFACTOR * value).to_f64(),
        (PREFACTOR * CBRT3 * deriv).to_f64(),
    ))
}

/// Reference (Ai(z), Ai'(z)) for complex |z| <= 12.
pub fn airy_reference_complex(z: Complex64) -> Result<(Complex64, Complex64)> {
    let modulus = z.norm();
    if !modulus.is_finite() || modulus > SERIES_RADIUS {
        return Err(Error::UnsupportedRange {
            function: "airy_reference_complex",
            modulus,
            limit: SERIES_RADIUS,
        });
    }
    let c = coefficients();
    let t = DdComplex::from_f64(z.re, z.im).mul_dd(CBRT3);
    let mut pow = DdComplex::from_f64(1.0, 0.0);
    let mut value = DdComplex::new(c[0], Dd::ZERO);
    let mut deriv = DdComplex::ZERO;
    for (k, &ck) in c.iter().enumerate().skip(1) {
        deriv = deriv + pow.mul_dd(ck.mul_f64(k as f64));
        pow = pow * t;
        value = value + pow.mul_dd(ck);
    }
    let value = value.mul_dd(PREFACTOR);
    let deriv = deriv.mul_dd(PREFACTOR * CBRT3);
    Ok((
        Complex64::new(value.re.to_f64(), value.im.to_f64()),
        Complex64::new(deriv.re.to_f64(), deriv.im.to_f64()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_sample() {
        let (a, d) = airy_reference(0.0).unwrap();
        assert!((a - 0.355028053887817239).abs() < 1e-16);
        assert!((d + 0.258819403792806798).abs() < 1e-16);
        let (a, _) = airy_reference(5.0).unwrap();
        assert!((a / 1.0834442813607442e-4 - 1.0).abs() < 1e-13);
        assert!(airy_reference(12.5).is_err());
    }

    #[test]
    fn imaginary_unit() {
        let (a, _) = airy_reference_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((a.re - 0.33149330543214119).abs() < 1e-15);
        assert!((a.im + 0.31744985896844377).abs() < 1e-15);
        let (_, d) = airy_reference_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert!((d.re + 0.43249265984180710).abs() < 1e-15);
        assert!((d.im - 0.09804785622924323).abs() < 1e-15);
    }
}
