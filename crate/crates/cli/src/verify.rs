//! Oracle cross-check suite behind `bouncer verify`.

use crate::output::{Cell, Table};
use crate::Failure;
use robin_bouncer::elements::{p, p2, x_power};
use robin_bouncer::oracle::{airy_reference, integrate, recursion_check, Integrand};
use robin_bouncer::rules::{sum_rule, variances, SumRuleKind};
use robin_bouncer::special::airy;
use robin_bouncer::spectrum::{
    phase_ratio, solve_state, EigenState, PhaseParams, SelfAdjointParam, PHASE_REALITY_TOLERANCE,
};
use std::f64::consts::PI;

pub struct Check {
    pub name: String,
    pub value: f64,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, residual, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

const ROOT_TOL: f64 = 1e-13;
const ELEMENT_TOL: f64 = 1e-8;

fn mixed(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

struct Suite {
    tamper: f64,
}

impl Suite {
    fn state(&self, lambda: SelfAdjointParam, n: usize) -> Result<EigenState, Failure> {
        let mut s = solve_state(lambda, n)?;
        s.zeta += self.tamper;
        Ok(s)
    }

    fn airy_reference(&self) -> Result<Check, Failure> {
        let mut worst: f64 = 0.0;
        for i in 0..=64 {
            let x = -10.0 + 0.25 * i as f64;
            let a = airy(x)?;
            let (r, rp) = airy_reference(x)?;
            worst = worst
                .max((a.value - r).abs() / r.abs().max(1e-300))
                .max((a.derivative - rp).abs() / rp.abs().max(1e-300));
        }
        Ok(Check::new("airy-vs-series", 0.0, worst, 1e-12))
    }

    fn root_residuals(&self) -> Result<Check, Failure> {
        let mut worst: f64 = 0.0;
        let lambdas = [
            SelfAdjointParam::Finite(-0.5),
            SelfAdjointParam::Finite(0.0),
            SelfAdjointParam::Finite(0.11928),
            SelfAdjointParam::Finite(1.0),
            SelfAdjointParam::Finite(10.0),
            SelfAdjointParam::Neumann,
        ];
        for l in lambdas {
            for n in 1..=8 {
                worst = worst.max(self.state(l, n)?.residual());
            }
        }
        Ok(Check::new("root-residual", 0.0, worst, ROOT_TOL))
    }

    fn orthonormality(&self, lambda: f64) -> Result<Check, Failure> {
        let lam = SelfAdjointParam::Finite(lambda);
        let states: Vec<EigenState> = (1..=8).map(|n| self.state(lam, n)).collect::<Result<_, _>>()?;
        let mut worst: f64 = 0.0;
        for (i, a) in states.iter().enumerate() {
            for b in &states[i..] {
                let v = integrate(a, b, Integrand::Overlap(0))?.value;
                let target = if a.n == b.n { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        Ok(Check::new(format!("orthonormality(lambda={lambda})"), lambda, worst, ELEMENT_TOL))
    }

    fn closed_forms(&self) -> Result<Check, Failure> {
        let mut worst: f64 = 0.0;
        for &l in &[0.0, 0.11928, 0.7, 2.5, 5.0] {
            let lam = SelfAdjointParam::Finite(l);
            for &(n, k) in &[(1, 1), (1, 2), (2, 5), (3, 3), (4, 6), (6, 6)] {
                let sn = self.state(lam, n)?;
                let sk = self.state(lam, k)?;
                let q1 = integrate(&sn, &sk, Integrand::Overlap(1))?.value;
                let q2 = integrate(&sn, &sk, Integrand::Overlap(2))?.value;
                let dq = integrate(&sn, &sk, Integrand::ValueDerivative)?.value;
                let diag = if n == k { sk.zeta } else { 0.0 };
                worst = worst
                    .max(mixed(x_power(&sn, &sk, 1), q1))
                    .max(mixed(x_power(&sn, &sk, 2), q2))
                    .max(mixed(p(&sn, &sk).im, -dq))
                    .max(mixed(p2(&sn, &sk), -2.0 * (q1 + diag)));
            }
        }
        Ok(Check::new("closed-form-vs-quadrature", 0.0, worst, ELEMENT_TOL))
    }

    fn recursion(&self) -> Result<Check, Failure> {
        let mut worst: f64 = 0.0;
        for &(l, n, k) in &[(0.0, 1, 1), (0.11928, 1, 3), (1.0, 2, 2), (3.0, 2, 5)] {
            for q in 1..=6 {
                worst = worst.max(recursion_check(SelfAdjointParam::Finite(l), n, k, q)?.abs());
            }
        }
        Ok(Check::new("recursion-residual", 0.0, worst, ELEMENT_TOL))
    }

    fn rule(&self, kind: SumRuleKind, name: &str, lambda: f64, m_max: usize) -> Result<Check, Failure> {
        let r = sum_rule(kind, 1, SelfAdjointParam::Finite(lambda), m_max)?;
        let total = r.lhs_partial + r.tail_estimate;
        Ok(Check::new(
            format!("{name}(n=1,lambda={lambda},m_max={m_max})"),
            total,
            r.deviation() / r.rhs_closed.abs().max(1.0),
            r.tolerance,
        ))
    }

    fn phase_grid(&self) -> Result<Check, Failure> {
        let mut worst: f64 = 0.0;
        for i in 0..32 {
            let theta = 2.0 * PI * i as f64 / 31.0;
            for j in 1..=16 {
                let eps = 3.0 * j as f64 / 16.0;
                match phase_ratio(PhaseParams::new(theta, eps)?) {
                    Ok((kappa, im)) => worst = worst.max(im / kappa.abs().max(1.0)),
                    Err(robin_bouncer::Error::Pole { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Ok(Check::new("phase-map-reality", 0.0, worst, PHASE_REALITY_TOLERANCE))
    }

    fn uncertainty(&self) -> Result<Check, Failure> {
        let mut worst = f64::NEG_INFINITY;
        for &l in &[0.0, 0.1, 0.11928, 0.5, 1.0, 5.0, 50.0] {
            for n in 1..=4 {
                let v = variances(SelfAdjointParam::Finite(l), n)?;
                worst = worst.max(v.bound_ket - v.product);
            }
        }
        Ok(Check::new("uncertainty-cauchy-schwarz", 0.0, worst.max(0.0), 0.0))
    }
}

pub fn run(tamper: f64) -> Result<Vec<Check>, Failure> {
    let s = Suite { tamper };
    let mut checks = vec![s.airy_reference()?, s.root_residuals()?];
    for l in [0.0, 0.11928, 1.0, 10.0] {
        checks.push(s.orthonormality(l)?);
    }
    checks.push(s.closed_forms()?);
    checks.push(s.recursion()?);
    for l in [0.0, 0.11928, 1.0] {
        checks.push(s.rule(SumRuleKind::Trk, "trk", l, 2000)?);
    }
    checks.push(s.rule(SumRuleKind::Closure, "closure", 0.11928, 400)?);
    checks.push(s.rule(SumRuleKind::Monopole, "monopole", 0.11928, 400)?);
    checks.push(s.rule(SumRuleKind::SecondMoment, "second-moment", 0.0, 2000)?);
    checks.push(s.phase_grid()?);
    checks.push(s.uncertainty()?);
    Ok(checks)
}

pub fn table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["check", "value", "residual", "tolerance", "passed"]);
    for c in checks {
        t.push(vec![
            Cell::Text(c.name.clone()),
            c.value.into(),
            c.residual.into(),
            c.tolerance.into(),
            c.passed().into(),
        ]);
    }
    t
}
