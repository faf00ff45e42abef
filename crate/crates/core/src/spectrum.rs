//! Generalized bound states of the linear potential on the half-line under
//! the Robin condition psi(0) = lambda psi'(0), in the dimensionless
//! coordinate xi = x / x0.
//!
//! The n-th root zeta_n(lambda) of Ai(z) - lambda Ai'(z) = 0 gives the energy
//! E_n = -E0 zeta_n. For lambda >= 0 the roots sit in [a_n, a'_n). For
//! lambda < 0 they sit in (a'_{n+1}, a_n) and one extra state, indexed 0,
//! lies above a'_1; it has negative energy while lambda > 1 / (Ai'(0)/Ai(0)).

use crate::error::{Error, Result};
use crate::special::{
    airy_complex, airy_raw, airy_scaled_raw, classical_zero, scaling_exponent, ZeroKind,
    COMPLEX_RADIUS,
};
use crate::special::zeros::safeguarded_newton;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Robin parameter lambda. `Neumann` stands for the limit lambda -> infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SelfAdjointParam {
    Finite(f64),
    Neumann,
}

impl SelfAdjointParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() {
            Ok(SelfAdjointParam::Finite(lambda))
        } else {
            Err(Error::InvalidArgument(format!(
                "lambda must be finite, got {lambda}; use SelfAdjointParam::Neumann for the limit"
            )))
        }
    }

    pub fn dirichlet() -> Self {
        SelfAdjointParam::Finite(0.0)
    }

    /// The finite value, or `None` for the Neumann marker.
    pub fn value(&self) -> Option<f64> {
        match *self {
            SelfAdjointParam::Finite(l) => Some(l),
            SelfAdjointParam::Neumann => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match *self {
            SelfAdjointParam::Finite(l) => l >= 0.0,
            SelfAdjointParam::Neumann => true,
        }
    }
}

impl From<f64> for SelfAdjointParam {
    fn from(lambda: f64) -> Self {
        if lambda.is_finite() {
            SelfAdjointParam::Finite(lambda)
        } else {
            SelfAdjointParam::Neumann
        }
    }
}

/// One normalized bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenState {
    /// Level index. 1.. follow the Dirichlet tower; 0 marks the extra state
    /// that only exists for lambda < 0.
    pub n: usize,
    pub lambda: SelfAdjointParam,
    pub zeta: f64,
    /// 1 / sqrt(Ai'(zeta)^2 - zeta Ai(zeta)^2). May overflow to infinity for
    /// deeply bound index-0 states; the eigenfunction never uses it directly.
    pub norm_xi: f64,
    pub alpha: f64,
    pub alpha_prime: f64,
    /// Signed boundary value psi(0) in xi normalization.
    pub psi0: f64,
    /// Signed boundary slope psi'(0) in xi normalization.
    pub dpsi0: f64,
    pub negative_energy_flag: bool,
}

impl EigenState {
    fn from_root(n: usize, lambda: SelfAdjointParam, zeta: f64) -> Self {
        // Scaled values keep psi0, dpsi0 finite even when Ai(zeta) underflows.
        let (ai_s, aip_s) = airy_scaled_raw(zeta);
        let (psi0, dpsi0, norm_s) = match lambda {
            SelfAdjointParam::Neumann => {
                let s = 1.0 / (-zeta).sqrt();
                (s * ai_s.signum(), 0.0, s / ai_s.abs())
            }
            SelfAdjointParam::Finite(l) => {
                let norm_s = 1.0 / (aip_s * aip_s - zeta * ai_s * ai_s).sqrt();
                // impose psi0 = lambda dpsi0 exactly through the better-conditioned side
                if l.abs() <= 1.0 {
                    let d = norm_s * aip_s;
                    (l * d, d, norm_s)
                } else {
                    let b = norm_s * ai_s;
                    (b, b / l, norm_s)
                }
            }
        };
        let norm_xi = norm_s * scaling_exponent(zeta).exp();
        EigenState {
            n,
            lambda,
            zeta,
            norm_xi,
            alpha: psi0.abs(),
            alpha_prime: dpsi0.abs(),
            psi0,
            dpsi0,
            negative_energy_flag: zeta > 0.0,
        }
    }

    /// Normalization constant relative to the scaled Airy pair at zeta.
    fn scaled_norm(&self) -> f64 {
        let (ai_s, aip_s) = airy_scaled_raw(self.zeta);
        1.0 / (aip_s * aip_s - self.zeta * ai_s * ai_s).sqrt()
    }

    /// |Ai(zeta) - lambda Ai'(zeta)| / max(1, |lambda|); |Ai'(zeta)| for Neumann.
    pub fn residual(&self) -> f64 {
        let (ai, aip) = airy_raw(self.zeta);
        match self.lambda {
            SelfAdjointParam::Finite(l) => (ai - l * aip).abs() / l.abs().max(1.0),
            SelfAdjointParam::Neumann => aip.abs(),
        }
    }

    /// Dimensionless energy -zeta.
    pub fn energy(&self) -> f64 {
        -self.zeta
    }
}

/// h(x) = (Ai(x) - lambda Ai'(x)) / max(1, |lambda|) and its derivative,
/// multiplied by exp(2/3 x^{3/2}) for x > 0.
fn robin_target(lambda: f64) -> impl Fn(f64) -> (f64, f64) {
    let scale = 1.0 / lambda.abs().max(1.0);
    let ls = lambda * scale;
    move |x| {
        let (ai, aip) = airy_scaled_raw(x);
        let h = ai * scale - ls * aip;
        let dh = aip * scale - ls * x * ai;
        if x > 0.0 {
            (h, x.sqrt() * h + dh)
        } else {
            (h, dh)
        }
    }
}

fn finite_root(lambda: f64, n: usize) -> Result<f64> {
    if lambda == 0.0 {
        return classical_zero(ZeroKind::Dirichlet, n).map(|z| z.value);
    }
    let f = robin_target(lambda);
    let (lo, hi) = if lambda > 0.0 {
        (
            classical_zero(ZeroKind::Dirichlet, n)?.value,
            classical_zero(ZeroKind::Neumann, n)?.value,
        )
    } else if n == 0 {
        let lo = classical_zero(ZeroKind::Neumann, 1)?.value;
        let mut hi = 1.0;
        while f(hi).0.signum() == f(lo).0.signum() {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::NoSignChange { lo, hi });
            }
        }
        (lo, hi)
    } else {
        (
            classical_zero(ZeroKind::Neumann, n + 1)?.value,
            classical_zero(ZeroKind::Dirichlet, n)?.value,
        )
    };
    safeguarded_newton(f, lo, hi, n)
}

/// Single state with index `n` (0 only allowed for lambda < 0).
pub fn solve_state(lambda: SelfAdjointParam, n: usize) -> Result<EigenState> {
    let zeta = match lambda {
        SelfAdjointParam::Neumann => {
            if n == 0 {
                return Err(Error::InvalidArgument(
                    "index 0 only exists for lambda < 0".into(),
                ));
            }
            classical_zero(ZeroKind::Neumann, n)?.value
        }
        SelfAdjointParam::Finite(l) => {
            if !l.is_finite() {
                return Err(Error::InvalidArgument(format!("lambda must be finite, got {l}")));
            }
            if n == 0 && l >= 0.0 {
                return Err(Error::InvalidArgument(
                    "index 0 only exists for lambda < 0".into(),
                ));
            }
            finite_root(l, n)?
        }
    };
    Ok(EigenState::from_root(n, lambda, zeta))
}

/// States n = 1..=n_max sorted by energy, preceded by the index-0 state when
/// lambda < 0.
pub fn solve_roots(lambda: SelfAdjointParam, n_max: usize) -> Result<Vec<EigenState>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let first = match lambda {
        SelfAdjointParam::Finite(l) if l < 0.0 => 0,
        _ => 1,
    };
    (first..=n_max).map(|n| solve_state(lambda, n)).collect()
}

/// psi_n(xi) and psi_n'(xi) in xi normalization.
pub fn eigenfunction_pair(state: &EigenState, xi: f64) -> Result<(f64, f64)> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(Error::Domain {
            function: "eigenfunction_value",
            value: xi,
        });
    }
    Ok(eigenfunction_pair_raw(state, state.scaled_norm(), xi))
}

/// Unchecked evaluation with a precomputed scaled normalization.
pub(crate) fn eigenfunction_pair_raw(state: &EigenState, norm_s: f64, xi: f64) -> (f64, f64) {
    let x = xi + state.zeta;
    let (ai_s, aip_s) = airy_scaled_raw(x);
    let damp = (scaling_exponent(state.zeta) - scaling_exponent(x)).exp();
    (norm_s * ai_s * damp, norm_s * aip_s * damp)
}

/// Normalization relative to the scaled Airy pair, for repeated evaluation.
pub(crate) fn scaled_norm(state: &EigenState) -> f64 {
    state.scaled_norm()
}

/// psi_n(xi) in xi normalization; divide by sqrt(x0) for the x-normalized value.
pub fn eigenfunction_value(state: &EigenState, xi: f64) -> Result<f64> {
    eigenfunction_pair(state, xi).map(|p| p.0)
}

/// Small-lambda estimate a_n (1 + lambda^3 / 3) + lambda, optionally with the
/// next term lambda^4 / 4.
pub fn approx_energy_dirichlet_regime(lambda: f64, n: usize, next_order: bool) -> Result<f64> {
    let a = classical_zero(ZeroKind::Dirichlet, n)?.value;
    let l3 = lambda * lambda * lambda;
    let mut z = a * (1.0 + l3 / 3.0) + lambda;
    if next_order {
        z += 0.25 * l3 * lambda;
    }
    Ok(z)
}

/// Large-lambda estimate around the Neumann zero a'_n.
pub fn approx_energy_neumann_regime(lambda: f64, n: usize) -> Result<f64> {
    if lambda == 0.0 {
        return Err(Error::InvalidArgument(
            "the Neumann-regime expansion needs lambda != 0".into(),
        ));
    }
    let a = classical_zero(ZeroKind::Neumann, n)?.value;
    let inv = 1.0 / lambda;
    let a3 = a * a * a;
    let a5 = a3 * a * a;
    Ok(a + inv / a - inv * inv / (2.0 * a3) + inv * inv * inv * (2.0 * a3 + 3.0) / (6.0 * a5))
}

/// zeta_n - zeta_k, equal to (E_k - E_n) / E0.
pub fn transition_gap(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<f64> {
    if n == k {
        return Err(Error::InvalidArgument("transition needs n != k".into()));
    }
    Ok(solve_state(lambda, n)?.zeta - solve_state(lambda, k)?.zeta)
}

/// U(1) phase theta and deficiency scale eps_eta = eta / E0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseParams {
    pub theta: f64,
    pub eps_eta: f64,
}

impl PhaseParams {
    pub fn new(theta: f64, eps_eta: f64) -> Result<Self> {
        if !(0.0..=2.0 * PI).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "theta = {theta} outside [0, 2 pi]"
            )));
        }
        if !(eps_eta > 0.0 && eps_eta <= COMPLEX_RADIUS) {
            return Err(Error::InvalidArgument(format!(
                "eps_eta = {eps_eta} outside (0, {COMPLEX_RADIUS}]"
            )));
        }
        Ok(PhaseParams { theta, eps_eta })
    }
}

/// Denominator modulus below which the phase map is treated as a pole.
pub const PHASE_POLE_THRESHOLD: f64 = 1e-12;
/// Relative tolerance on the imaginary part of the phase map.
pub const PHASE_REALITY_TOLERANCE: f64 = 1e-10;

/// The real ratio
/// [Ai'(i e) + e^{-i theta} Ai'(-i e)] / [Ai(i e) + e^{-i theta} Ai(-i e)].
///
/// This is psi'(0)/psi(0) for the extension labelled by theta, so the Robin
/// parameter in psi(0) = lambda psi'(0) is its reciprocal.
pub fn lambda_from_phase(params: PhaseParams) -> Result<f64> {
    let (value, residual) = phase_ratio(params)?;
    let tolerance = PHASE_REALITY_TOLERANCE * value.abs().max(1.0);
    if residual > tolerance {
        return Err(Error::NotReal {
            residual,
            tolerance,
        });
    }
    Ok(value)
}

/// Real part and absolute imaginary part of the phase map.
pub fn phase_ratio(params: PhaseParams) -> Result<(f64, f64)> {
    let z = Complex64::new(0.0, params.eps_eta);
    let plus = airy_complex(z)?;
    let minus = airy_complex(z.conj())?;
    let phase = Complex64::from_polar(1.0, -params.theta);
    let num = plus.derivative + phase * minus.derivative;
    let den = plus.value + phase * minus.value;
    let modulus = den.norm();
    if modulus < PHASE_POLE_THRESHOLD {
        return Err(Error::Pole {
            modulus,
            threshold: PHASE_POLE_THRESHOLD,
        });
    }
    let ratio = num / den;
    Ok((ratio.re, ratio.im.abs()))
}
