//! Independent checks used by the tests and the `verify` command: quadrature
//! of overlaps and derivative integrals, bisection, and a reference Airy
//! series. Nothing in the production paths calls into this module.

mod series;

pub use crate::quadrature::{adaptive, composite, QuadratureResult};
pub use series::{airy_reference, airy_reference_complex, SERIES_RADIUS, SERIES_TERMS};

use crate::elements::recursion_residual;
use crate::error::{Error, Result};
use crate::special::scaling_exponent;
use crate::spectrum::{eigenfunction_pair_raw, scaled_norm, solve_state, EigenState, SelfAdjointParam};
use std::f64::consts::PI;

/// Absolute error target of the adaptive rule.
pub const QUAD_TOL: f64 = 1e-11;
const MAX_PANELS: usize = 20_000;
const TAIL_TARGET: f64 = 1e-17;
const MAX_POWER: u32 = 8;

/// Which product of eigenfunctions to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// psi_n psi_k xi^q
    Overlap(u32),
    /// psi_n psi_k'
    ValueDerivative,
    /// psi_n' psi_k'
    DerivativeDerivative,
}

impl Integrand {
    fn power(self) -> u32 {
        match self {
            Integrand::Overlap(q) => q,
            _ => 0,
        }
    }
}

struct Evaluator {
    sn: EigenState,
    sk: EigenState,
    norm_n: f64,
    norm_k: f64,
}

impl Evaluator {
    fn new(sn: EigenState, sk: EigenState) -> Self {
        Evaluator {
            norm_n: scaled_norm(&sn),
            norm_k: scaled_norm(&sk),
            sn,
            sk,
        }
    }

    fn eval(&self, integrand: Integrand, xi: f64) -> f64 {
        let (vn, dn) = eigenfunction_pair_raw(&self.sn, self.norm_n, xi);
        let (vk, dk) = eigenfunction_pair_raw(&self.sk, self.norm_k, xi);
        match integrand {
            Integrand::Overlap(q) => vn * vk * xi.powi(q as i32),
            Integrand::ValueDerivative => vn * dk,
            Integrand::DerivativeDerivative => dn * dk,
        }
    }

    /// ln of an envelope for |psi| and |psi'| at xi, valid once xi + zeta > 1.
    fn log_envelope(&self, state: &EigenState, norm: f64, xi: f64) -> f64 {
        let t = xi + state.zeta;
        // |Ai(t)|, |Ai'(t)| <= 0.6 t^{1/4} exp(-2/3 t^{3/2}) / sqrt(pi) for t >= 1
        norm.ln() + scaling_exponent(state.zeta) - scaling_exponent(t) + 0.25 * t.ln()
            + (0.6 / PI.sqrt()).ln()
    }

    /// Bound on the integral of |integrand| over [x, infinity).
    fn tail_bound(&self, integrand: Integrand, x: f64) -> f64 {
        let tn = x + self.sn.zeta;
        let tk = x + self.sk.zeta;
        if tn < 1.0 || tk < 1.0 {
            return f64::INFINITY;
        }
        let q = integrand.power() as f64;
        let slope = tn.sqrt() + tk.sqrt() - (q + 1.0) / x;
        if slope <= 0.0 {
            return f64::INFINITY;
        }
        let log_g = q * x.ln()
            + self.log_envelope(&self.sn, self.norm_n, x)
            + self.log_envelope(&self.sk, self.norm_k, x);
        log_g.exp() / slope
    }

    /// Truncation point |zeta|_max + 15, extended until the tail bound is negligible.
    fn truncation(&self, integrand: Integrand) -> (f64, f64) {
        let mut x = self.sn.zeta.abs().max(self.sk.zeta.abs()) + 15.0;
        let mut tail = self.tail_bound(integrand, x);
        while tail > TAIL_TARGET && x < 2000.0 {
            x += 5.0;
            tail = self.tail_bound(integrand, x);
        }
        (x, tail)
    }

    fn adaptive(&self, integrand: Integrand) -> QuadratureResult {
        let (x_max, tail) = self.truncation(integrand);
        let mut r = adaptive(
            |xi| self.eval(integrand, xi),
            0.0,
            x_max,
            x_max.ceil() as usize,
            QUAD_TOL,
            MAX_PANELS,
        );
        r.tail_bound = tail;
        r
    }

    fn fixed(&self, integrand: Integrand) -> f64 {
        let (x_max, _) = self.truncation(integrand);
        let panels = (4.0 * x_max).ceil() as usize;
        composite(|xi| self.eval(integrand, xi), 0.0, x_max, panels, 20)
    }
}

fn states(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<(EigenState, EigenState)> {
    let sn = solve_state(lambda, n)?;
    let sk = if n == k { sn } else { solve_state(lambda, k)? };
    Ok((sn, sk))
}

/// Adaptive quadrature of `integrand` between two given states.
pub fn integrate(sn: &EigenState, sk: &EigenState, integrand: Integrand) -> Result<QuadratureResult> {
    if integrand.power() > MAX_POWER {
        return Err(Error::InvalidArgument(format!(
            "quadrature supports powers up to {MAX_POWER}"
        )));
    }
    Ok(Evaluator::new(*sn, *sk).adaptive(integrand))
}

/// Fixed composite 20-point Gauss-Legendre rule on quarter-unit panels.
pub fn integrate_fixed(sn: &EigenState, sk: &EigenState, integrand: Integrand) -> Result<f64> {
    if integrand.power() > MAX_POWER {
        return Err(Error::InvalidArgument(format!(
            "quadrature supports powers up to {MAX_POWER}"
        )));
    }
    Ok(Evaluator::new(*sn, *sk).fixed(integrand))
}

/// int_0^inf psi_n psi_k xi^q d xi.
pub fn quad_overlap(lambda: SelfAdjointParam, n: usize, k: usize, q: u32) -> Result<QuadratureResult> {
    let (sn, sk) = states(lambda, n, k)?;
    integrate(&sn, &sk, Integrand::Overlap(q))
}

/// int_0^inf psi_n psi_k' d xi.
pub fn quad_derivative_overlap(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<QuadratureResult> {
    let (sn, sk) = states(lambda, n, k)?;
    integrate(&sn, &sk, Integrand::ValueDerivative)
}

/// int_0^inf psi_n' psi_k' d xi.
pub fn quad_derivative_product(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<QuadratureResult> {
    let (sn, sk) = states(lambda, n, k)?;
    integrate(&sn, &sk, Integrand::DerivativeDerivative)
}

/// Residual of the xi^q recursion identity fed with quadrature elements.
pub fn recursion_check(lambda: SelfAdjointParam, n: usize, k: usize, q: u32) -> Result<f64> {
    if q == 0 || q > MAX_POWER {
        return Err(Error::InvalidArgument(format!(
            "recursion check needs 1 <= q <= {MAX_POWER}"
        )));
    }
    let (sn, sk) = states(lambda, n, k)?;
    let ev = Evaluator::new(sn, sk);
    let table: Vec<f64> = (0..=q)
        .map(|j| ev.adaptive(Integrand::Overlap(j)).value)
        .collect();
    Ok(recursion_residual(&sn, &sk, q, |j| table[j as usize]))
}

/// Plain bisection to 1e-13 absolute or machine resolution.
pub fn bisect_zero<F: Fn(f64) -> f64>(f: F, bracket: (f64, f64)) -> Result<f64> {
    let (mut a, mut b) = (bracket.0.min(bracket.1), bracket.0.max(bracket.1));
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }
    while b - a > 1e-14 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::airy;

    fn lam(l: f64) -> SelfAdjointParam {
        SelfAdjointParam::Finite(l)
    }

    #[test]
    fn normalization_and_orthogonality() {
        for &l in &[0.0, 0.11928, 3.0] {
            let r = quad_overlap(lam(l), 2, 2, 0).unwrap();
            assert!(r.converged && (r.value - 1.0).abs() < 1e-9);
            assert!(r.tail_bound < 1e-16);
        }
        assert!(quad_overlap(lam(0.0), 1, 2, 0).unwrap().value.abs() < 1e-9);
        let x = quad_overlap(lam(0.0), 1, 1, 1).unwrap().value;
        assert!((x - 1.5587382736).abs() < 1e-8);
    }

    #[test]
    fn total_derivative_identity() {
        let r = quad_derivative_overlap(lam(0.0), 1, 1).unwrap();
        assert!(r.value.abs() < 1e-10);
        let r = quad_derivative_overlap(lam(0.11928), 1, 1).unwrap();
        assert!((r.value + 0.006896).abs() < 1e-6);
        let s = solve_state(lam(0.11928), 1).unwrap();
        assert!((r.value + 0.5 * s.psi0 * s.psi0).abs() < 1e-10);
        let r = quad_derivative_product(lam(0.0), 1, 1).unwrap();
        // int psi'^2 = |a_1| / 3 in hbar^2/x0^2, i.e. (2/3)|a_1| in units of m E0
        assert!((r.value - 2.33810741045977 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn fixed_rule_agrees() {
        let (sn, sk) = states(lam(0.7), 3, 5).unwrap();
        for q in 0..4 {
            let a = integrate(&sn, &sk, Integrand::Overlap(q)).unwrap().value;
            let b = integrate_fixed(&sn, &sk, Integrand::Overlap(q)).unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn bisection_roots() {
        let a1 = bisect_zero(|x| airy(x).unwrap().value, (-3.0, -2.0)).unwrap();
        assert!((a1 + 2.33810741045977).abs() < 1e-13);
        let b1 = bisect_zero(|x| airy(x).unwrap().derivative, (-2.0, -0.5)).unwrap();
        assert!((b1 + 1.01879297164747).abs() < 1e-13);
        let h = |x: f64| {
            let p = airy(x).unwrap();
            p.value - 0.11928 * p.derivative
        };
        let z = bisect_zero(h, (-2.4, -2.0)).unwrap();
        assert!((z + 2.2200761273834).abs() < 1e-12);
        assert!(bisect_zero(|x| x * x + 1.0, (-1.0, 1.0)).is_err());
    }

    #[test]
    fn recursion_from_quadrature() {
        assert!(recursion_check(lam(0.3), 1, 2, 1).unwrap().abs() < 1e-10);
        assert!(recursion_check(lam(0.3), 2, 2, 3).unwrap().abs() < 1e-9);
        assert!(recursion_check(lam(0.5), 1, 2, 4).unwrap().abs() < 1e-8);
    }
}
