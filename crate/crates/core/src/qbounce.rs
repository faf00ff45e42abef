//! Physical units for the neutron above a mirror: scales from (m, g),
//! transition frequencies, chi-squared fits of lambda to measured
//! frequencies, g extraction and the penetration estimate.

use crate::error::{Error, Result};
use crate::spectrum::{solve_state, transition_gap, SelfAdjointParam};
use serde::{Deserialize, Serialize};

/// Standard gravity at the qBounce site, m/s^2.
pub const G_QBOUNCE: f64 = 9.804925;
/// Search window for lambda in fits.
pub const FIT_WINDOW: (f64, f64) = (-1.0, 5.0);
/// A fit fails when the best model is further than this many sigma away.
pub const FIT_FAILURE_SIGMA: f64 = 50.0;

const SCAN_POINTS: usize = 121;
const PEV: f64 = 1e-12;

/// Fundamental constants, CODATA 2018 by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Neutron mass, kg.
    pub mass: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Planck constant, J s.
    pub h: f64,
    /// Elementary charge, C (J per eV).
    pub ev: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            mass: 1.67492749804e-27,
            hbar: 1.054571817e-34,
            h: 6.62607015e-34,
            ev: 1.602176634e-19,
        }
    }
}

/// Length and energy scales of the linear potential m g x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalScales {
    constants: Constants,
    g: f64,
    f0: f64,
    x0: f64,
    e0: f64,
}

impl PhysicalScales {
    pub fn new(constants: Constants, g: f64) -> Result<Self> {
        let Constants { mass, hbar, h, ev } = constants;
        for (name, v) in [("mass", mass), ("g", g), ("hbar", hbar), ("h", h), ("eV", ev)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        let f0 = mass * g;
        let x0 = (hbar * hbar / (2.0 * mass * f0)).cbrt();
        Ok(PhysicalScales { constants, g, f0, x0, e0: f0 * x0 })
    }

    /// Same constants, different g.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        PhysicalScales::new(self.constants, g)
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }
    pub fn mass(&self) -> f64 {
        self.constants.mass
    }
    pub fn g(&self) -> f64 {
        self.g
    }
    /// F0 = m g, N.
    pub fn f0(&self) -> f64 {
        self.f0
    }
    /// x0 = (hbar^2 / 2 m F0)^{1/3}, m.
    pub fn x0(&self) -> f64 {
        self.x0
    }
    /// E0 = F0 x0, J.
    pub fn e0(&self) -> f64 {
        self.e0
    }
    /// E0 in peV.
    pub fn e0_pev(&self) -> f64 {
        self.e0 / (self.constants.ev * PEV)
    }
    /// Frequency E0 / h, Hz.
    pub fn e0_hz(&self) -> f64 {
        self.e0 / self.constants.h
    }
}

/// Scales for the given mass and g with the default constants otherwise.
pub fn scales_from(mass: f64, g: f64) -> Result<PhysicalScales> {
    PhysicalScales::new(Constants { mass, ..Constants::default() }, g)
}

/// A measured transition frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    /// Hz
    pub nu: f64,
    /// 1 sigma, Hz
    pub sigma: f64,
    /// (n, k) with n < k
    pub transition: (usize, usize),
}

impl Measurement {
    pub fn new(nu: f64, sigma: f64, n: usize, k: usize) -> Result<Self> {
        let m = Measurement { nu, sigma, transition: (n, k) };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let (n, k) = self.transition;
        if !(self.sigma > 0.0 && self.sigma.is_finite()) || !self.nu.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "measurement needs finite nu and sigma > 0, got {} +- {}",
                self.nu, self.sigma
            )));
        }
        if n == 0 || n >= k {
            return Err(Error::InvalidArgument(format!(
                "transition needs 1 <= n < k, got ({n}, {k})"
            )));
        }
        Ok(())
    }
}

/// The 1 -> 6 measurement, the statistically dominant one.
pub fn qbounce_16() -> Measurement {
    Measurement { nu: 972.842, sigma: 0.0456057, transition: (1, 6) }
}

/// Outcome of a one-parameter chi-squared fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub lambda_min: f64,
    /// Symmetrized 1 sigma half width, (delta_plus + delta_minus) / 2.
    pub delta_lambda: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub chi2_min: f64,
    /// Model frequencies at lambda_min, one per measurement, Hz.
    pub nu_model: Vec<f64>,
    pub evaluations: usize,
}

/// Model transition frequency (E_k - E_n) / h in Hz.
pub fn transition_frequency(scales: &PhysicalScales, lambda: f64, n: usize, k: usize) -> Result<f64> {
    if n >= k {
        return Err(Error::InvalidArgument(format!("transition needs n < k, got ({n}, {k})")));
    }
    let gap = transition_gap(SelfAdjointParam::from(lambda), n, k)?;
    Ok(scales.e0_hz() * gap)
}

struct Objective<'a> {
    data: &'a [Measurement],
    scales: &'a PhysicalScales,
    calls: std::cell::Cell<usize>,
}

impl Objective<'_> {
    fn chi2(&self, lambda: f64) -> Result<f64> {
        self.calls.set(self.calls.get() + 1);
        let mut s = 0.0;
        for m in self.data {
            let nu = transition_frequency(self.scales, lambda, m.transition.0, m.transition.1)?;
            let r = (m.nu - nu) / m.sigma;
            s += r * r;
        }
        Ok(s)
    }

    /// Golden-section search on [a, b] followed by parabolic steps.
    fn minimize(&self, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
        let r = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        let mut fc = self.chi2(c)?;
        let mut fd = self.chi2(d)?;
        while b - a > 1e-6 * (1.0 + a.abs()) {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = self.chi2(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = self.chi2(d)?;
            }
        }
        let (mut x, mut fx) = if fc < fd { (c, fc) } else { (d, fd) };
        let mut h = 0.25 * (b - a).max(1e-9);
        for _ in 0..40 {
            let fl = self.chi2(x - h)?;
            let fr = self.chi2(x + h)?;
            let curv = fl - 2.0 * fx + fr;
            if curv <= 0.0 {
                break;
            }
            let step = 0.5 * h * (fl - fr) / curv;
            let xn = x + step.clamp(-h, h);
            let fxn = self.chi2(xn)?;
            if fxn > fx {
                h *= 0.5;
                if h < 1e-15 * (1.0 + x.abs()) {
                    break;
                }
                continue;
            }
            let moved = (xn - x).abs();
            x = xn;
            fx = fxn;
            if moved <= 1e-14 * (1.0 + x.abs()) {
                break;
            }
            h = (2.0 * moved).min(h).max(1e-12 * (1.0 + x.abs()));
        }
        Ok((x, fx))
    }

    /// Distance from x_min to the Delta chi^2 = 1 crossing in direction `dir`.
    fn crossing(&self, x_min: f64, f_min: f64, dir: f64) -> Result<f64> {
        let target = f_min + 1.0;
        let edge = if dir > 0.0 { FIT_WINDOW.1 } else { FIT_WINDOW.0 };
        let mut inner = 0.0;
        let mut outer = 1e-3;
        loop {
            let x = x_min + dir * outer;
            if (x - edge) * dir >= 0.0 {
                if self.chi2(edge)? < target {
                    return Ok(f64::INFINITY);
                }
                outer = (edge - x_min).abs();
                break;
            }
            if self.chi2(x)? >= target {
                break;
            }
            inner = outer;
            outer *= 2.0;
        }
        while outer - inner > 1e-10 * outer {
            let mid = 0.5 * (inner + outer);
            if self.chi2(x_min + dir * mid)? >= target {
                outer = mid;
            } else {
                inner = mid;
            }
        }
        Ok(0.5 * (inner + outer))
    }
}

/// Least-squares lambda for one measurement.
pub fn fit_lambda(measurement: &Measurement, scales: &PhysicalScales) -> Result<FitResult> {
    fit_lambda_multi(std::slice::from_ref(measurement), scales)
}

/// Least-squares lambda for several measurements, chi^2 summed over them.
pub fn fit_lambda_multi(data: &[Measurement], scales: &PhysicalScales) -> Result<FitResult> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("fit needs at least one measurement".into()));
    }
    for m in data {
        m.validate()?;
    }
    let obj = Objective { data, scales, calls: std::cell::Cell::new(0) };
    let (lo, hi) = FIT_WINDOW;
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let mut best = (0, f64::INFINITY);
    for i in 0..SCAN_POINTS {
        let f = obj.chi2(lo + step * i as f64)?;
        if f < best.1 {
            best = (i, f);
        }
    }
    let a = lo + step * best.0.saturating_sub(1) as f64;
    let b = (lo + step * (best.0 + 1) as f64).min(hi);
    let (x, fx) = obj.minimize(a, b)?;
    let worst = fx.sqrt();
    if worst > FIT_FAILURE_SIGMA * (data.len() as f64).sqrt() {
        return Err(Error::FitFailure(format!(
            "best lambda {x:.6} in [{lo}, {hi}] leaves chi^2 = {fx:.3e}, beyond {FIT_FAILURE_SIGMA} sigma"
        )));
    }
    let delta_plus = obj.crossing(x, fx, 1.0)?;
    let delta_minus = obj.crossing(x, fx, -1.0)?;
    let nu_model = data
        .iter()
        .map(|m| transition_frequency(scales, x, m.transition.0, m.transition.1))
        .collect::<Result<Vec<_>>>()?;
    Ok(FitResult {
        lambda_min: x,
        delta_lambda: 0.5 * (delta_plus + delta_minus),
        delta_plus,
        delta_minus,
        chi2_min: fx,
        nu_model,
        evaluations: obj.calls.get(),
    })
}

/// One row of an energy table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyRow {
    pub n: usize,
    pub zeta: f64,
    /// E_n = -E0 zeta_n, peV.
    pub energy_pev: f64,
}

/// Energies of levels 1..=n_max in peV.
pub fn energies_table(scales: &PhysicalScales, lambda: f64, n_max: usize) -> Result<Vec<EnergyRow>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let lam = SelfAdjointParam::from(lambda);
    (1..=n_max)
        .map(|n| {
            let s = solve_state(lam, n)?;
            Ok(EnergyRow { n, zeta: s.zeta, energy_pev: -s.zeta * scales.e0_pev() })
        })
        .collect()
}

/// Local g from a measured frequency at fixed lambda, using E0 ~ g^{2/3}.
pub fn extract_g(measurement: &Measurement, lambda: f64, reference: &PhysicalScales) -> Result<f64> {
    measurement.validate()?;
    let (n, k) = measurement.transition;
    let nu_ref = transition_frequency(reference, lambda, n, k)?;
    Ok(reference.g() * (measurement.nu / nu_ref).powf(1.5))
}

/// Exponential-tail model of the wave function inside the mirror.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenetrationResult {
    pub n: usize,
    pub lambda: f64,
    /// 1 / (lambda x0), 1/m.
    pub kappa0: f64,
    /// lambda alpha_n^2 / 2.
    pub p_in: f64,
}

pub fn penetration(lambda: f64, n: usize, scales: &PhysicalScales) -> Result<PenetrationResult> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Unsupported(format!(
            "penetration needs a finite lambda > 0, got {lambda}"
        )));
    }
    let s = solve_state(SelfAdjointParam::Finite(lambda), n)?;
    Ok(PenetrationResult {
        n,
        lambda,
        kappa0: 1.0 / (lambda * scales.x0()),
        p_in: 0.5 * lambda * s.alpha * s.alpha,
    })
}
