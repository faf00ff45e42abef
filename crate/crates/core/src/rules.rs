//! Sum rules, the stationary anticommutator identity and the uncertainty
//! relation. All values are dimensionless with x0 = E0 = 1, so hbar^2/2m = 1
//! and hbar = 1 for momentum-like quantities.

use crate::elements::{p, p2, x_power_table};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::spectrum::{solve_roots, solve_state, EigenState, SelfAdjointParam};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SumRuleKind {
    /// sum_m |x_nm|^2 = <x^2>_n
    Closure,
    /// sum_m (E_m - E_n) |x_nm|^2 = hbar^2 / 2m
    Trk,
    /// sum_m (E_m - E_n) |(x^2)_nm|^2 = (2 hbar^2/m) <x^2>_n
    Monopole,
    /// sum_m (E_m - E_n)^2 |x_nm|^2 = (hbar^2/m^2) <p^2>_n
    SecondMoment,
    /// sum_m (E_m - E_n) |<n|e^{iqx}|m>|^2 = hbar^2 q^2 / 2m, with q in units of 1/x0
    Bethe(f64),
}

impl SumRuleKind {
    /// Tolerance on |lhs + tail - rhs| relative to max(1, |rhs|).
    pub fn tolerance(&self) -> f64 {
        match self {
            SumRuleKind::Closure => 1e-6,
            SumRuleKind::Trk | SumRuleKind::Monopole | SumRuleKind::SecondMoment => 1e-3,
            SumRuleKind::Bethe(_) => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumRuleReport {
    pub kind: SumRuleKind,
    pub n: usize,
    pub lambda: SelfAdjointParam,
    pub m_max: usize,
    pub lhs_partial: f64,
    pub rhs_closed: f64,
    /// Estimate of the terms beyond m_max; infinite when the series diverges.
    pub tail_estimate: f64,
    pub tolerance: f64,
    pub converged: bool,
}

impl SumRuleReport {
    pub fn deviation(&self) -> f64 {
        (self.lhs_partial + self.tail_estimate - self.rhs_closed).abs()
    }
}

fn term(kind: SumRuleKind, sn: &EigenState, sm: &EigenState) -> f64 {
    let t = x_power_table(sn, sm, 2);
    let dz = sn.zeta - sm.zeta;
    match kind {
        SumRuleKind::Closure => t[1] * t[1],
        SumRuleKind::Trk => dz * t[1] * t[1],
        SumRuleKind::Monopole => dz * t[2] * t[2],
        SumRuleKind::SecondMoment => dz * dz * t[1] * t[1],
        SumRuleKind::Bethe(_) => 0.0,
    }
}

fn rhs(kind: SumRuleKind, sn: &EigenState) -> f64 {
    match kind {
        SumRuleKind::Closure => x_power_table(sn, sn, 2)[2],
        SumRuleKind::Trk => 1.0,
        SumRuleKind::Monopole => 4.0 * x_power_table(sn, sn, 2)[2],
        // (hbar^2/m^2) <p^2> with <p^2> in units of m E0
        SumRuleKind::SecondMoment => 2.0 * p2(sn, sn),
        SumRuleKind::Bethe(q) => q * q,
    }
}

/// State with root -z built from the boundary relations alone; its sign is
/// irrelevant for the squared terms.
fn asymptotic_state(lambda: SelfAdjointParam, z: f64) -> EigenState {
    let zeta = -z;
    let (psi0, dpsi0) = match lambda {
        SelfAdjointParam::Finite(l) => {
            let d = 1.0 / (1.0 - zeta * l * l).sqrt();
            (l * d, d)
        }
        SelfAdjointParam::Neumann => (1.0 / z.sqrt(), 0.0),
    };
    EigenState {
        n: usize::MAX,
        lambda,
        zeta,
        norm_xi: f64::NAN,
        alpha: psi0.abs(),
        alpha_prime: dpsi0.abs(),
        psi0,
        dpsi0,
        negative_energy_flag: false,
    }
}

/// Phase shift arctan(lambda sqrt z) of the large-index roots and its z derivative.
fn phase_shift(lambda: SelfAdjointParam, z: f64) -> (f64, f64) {
    match lambda {
        SelfAdjointParam::Finite(l) => {
            let r = z.sqrt();
            ((l * r).atan(), l / (2.0 * r * (1.0 + l * l * z)))
        }
        SelfAdjointParam::Neumann => (0.5 * PI, 0.0),
    }
}

/// -zeta for continuous index m from (2/3) z^{3/2} + arctan(lambda sqrt z) = m pi - pi/4.
fn asymptotic_root(lambda: SelfAdjointParam, m: f64) -> f64 {
    let target = m * PI - 0.25 * PI;
    let mut z = (1.5 * target).powf(2.0 / 3.0);
    for _ in 0..60 {
        let (shift, dshift) = phase_shift(lambda, z);
        let g = 2.0 / 3.0 * z * z.sqrt() + shift - target;
        let step = g / (z.sqrt() + dshift);
        z -= step;
        if step.abs() <= 1e-15 * z {
            break;
        }
    }
    z
}

/// Integral of the terms over m > m_max + 1/2 using the asymptotic roots,
/// after the substitution z = z0 / s^2.
fn tail(kind: SumRuleKind, sn: &EigenState, lambda: SelfAdjointParam, m_max: usize) -> f64 {
    let z0 = asymptotic_root(lambda, m_max as f64 + 0.5);
    let integrand = |s: f64| {
        let z = z0 / (s * s);
        let (_, dshift) = phase_shift(lambda, z);
        let dm_dz = (z.sqrt() + dshift) / PI;
        term(kind, sn, &asymptotic_state(lambda, z)) * dm_dz * 2.0 * z0 / (s * s * s)
    };
    let near = integrand(1e-4).abs();
    let far = integrand(1e-2).abs();
    if near > 10.0 * far && near > 1e-300 {
        return f64::INFINITY;
    }
    let (x, w) = gauss_legendre(32);
    let edges = [0.0, 0.125, 0.25, 0.5, 1.0];
    let mut total = 0.0;
    for e in edges.windows(2) {
        let (a, b) = (e[0], e[1]);
        let h = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        total += h * x
            .iter()
            .zip(&w)
            .map(|(&xi, &wi)| wi * integrand(c + h * xi))
            .sum::<f64>();
    }
    total
}

/// Partial sum over all states up to index m_max, an asymptotic tail and
/// the closed right-hand side.
pub fn sum_rule(
    kind: SumRuleKind,
    n: usize,
    lambda: SelfAdjointParam,
    m_max: usize,
) -> Result<SumRuleReport> {
    let sn = solve_state(lambda, n)?;
    if let SumRuleKind::Bethe(q) = kind {
        let r = q * q;
        return Ok(SumRuleReport {
            kind,
            n,
            lambda,
            m_max: 0,
            lhs_partial: r,
            rhs_closed: r,
            tail_estimate: 0.0,
            tolerance: 0.0,
            converged: true,
        });
    }
    if m_max < n + 10 {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} must be at least n + 10 = {}",
            n + 10
        )));
    }
    let states = solve_roots(lambda, m_max)?;
    let lhs_partial: f64 = states.iter().map(|sm| term(kind, &sn, sm)).sum();
    let tail_estimate = tail(kind, &sn, lambda, m_max);
    let rhs_closed = rhs(kind, &sn);
    let tolerance = kind.tolerance();
    let converged = tail_estimate.is_finite()
        && (lhs_partial + tail_estimate - rhs_closed).abs() <= tolerance * rhs_closed.abs().max(1.0);
    Ok(SumRuleReport {
        kind,
        n,
        lambda,
        m_max,
        lhs_partial,
        rhs_closed,
        tail_estimate,
        tolerance,
        converged,
    })
}

/// Truncated sum_k [x_nk p_kn + p_nk x_kn] in units of hbar. The sum is
/// purely imaginary; the returned number is its imaginary part.
pub fn anticommutator_check(lambda: SelfAdjointParam, n: usize, m_max: usize) -> Result<f64> {
    if m_max < n + 10 {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} must be at least n + 10 = {}",
            n + 10
        )));
    }
    let sn = solve_state(lambda, n)?;
    let states = solve_roots(lambda, m_max)?;
    let total: f64 = states
        .iter()
        .map(|sk| {
            let x = x_power_table(&sn, sk, 1)[1];
            let sum = p(sk, &sn) * x + p(&sn, sk) * x;
            sum.im
        })
        .sum();
    Ok(total)
}

/// Lower bound (1/6)|3 - alpha^2 (alpha alpha' + 2 zeta)| in units of hbar.
/// It uses the diagonal momentum element -i alpha^2/2 of p acting to the left.
pub fn uncertainty_bound(lambda: SelfAdjointParam, n: usize) -> Result<f64> {
    let s = solve_state(lambda, n)?;
    Ok(bound_left(&s))
}

/// Bound from the Cauchy-Schwarz inequality with <p> = +i psi(0)^2 / 2 of p
/// acting on the ket: (1/6)|3 + psi(0)^2 (psi(0) psi'(0) + 2 zeta)|.
pub fn uncertainty_bound_ket(lambda: SelfAdjointParam, n: usize) -> Result<f64> {
    let s = solve_state(lambda, n)?;
    Ok(bound_ket(&s))
}

fn bound_left(s: &EigenState) -> f64 {
    (3.0 - s.alpha * s.alpha * (s.alpha * s.alpha_prime + 2.0 * s.zeta)).abs() / 6.0
}

fn bound_ket(s: &EigenState) -> f64 {
    let b = s.psi0;
    (3.0 + b * b * (b * s.dpsi0 + 2.0 * s.zeta)).abs() / 6.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Variances {
    pub n: usize,
    pub mean_x: f64,
    /// Imaginary part of <p> with p acting on the ket.
    pub mean_p_im: f64,
    /// <p^dagger p> = int |psi'|^2 in units of hbar^2 / x0^2.
    pub p_dagger_p: f64,
    /// <p^2> in units of hbar^2 / x0^2.
    pub p_squared: f64,
    /// In units of x0.
    pub delta_x: f64,
    /// In units of hbar / x0.
    pub delta_p: f64,
    pub product: f64,
    pub bound: f64,
    pub bound_ket: f64,
    pub satisfies_bound: bool,
    pub satisfies_bound_ket: bool,
}

/// Delta x and the adjoint-aware Delta p, Delta p^2 = <p^dagger p> - |<p>|^2.
pub fn variances(lambda: SelfAdjointParam, n: usize) -> Result<Variances> {
    let s = solve_state(lambda, n)?;
    let t = x_power_table(&s, &s, 2);
    let bd = s.psi0 * s.dpsi0;
    let p_squared = 0.5 * p2(&s, &s);
    let p_dagger_p = p_squared - bd;
    let mean_p_im = p(&s, &s).im;
    let delta_x = (t[2] - t[1] * t[1]).max(0.0).sqrt();
    let delta_p = (p_dagger_p - mean_p_im * mean_p_im).max(0.0).sqrt();
    let product = delta_x * delta_p;
    let bound = bound_left(&s);
    let bound_ket = bound_ket(&s);
    Ok(Variances {
        n,
        mean_x: t[1],
        mean_p_im,
        p_dagger_p,
        p_squared,
        delta_x,
        delta_p,
        product,
        bound,
        bound_ket,
        satisfies_bound: product >= bound,
        satisfies_bound_ket: product >= bound_ket,
    })
}
