use crate::output::{Cell, Table};
use crate::Failure;
use robin_bouncer::elements::{element_between, p_left, Operator};
use robin_bouncer::qbounce::{
    extract_g, fit_lambda_multi, penetration, transition_frequency, Measurement, PhysicalScales,
};
use robin_bouncer::rules::{sum_rule, uncertainty_bound, uncertainty_bound_ket, variances, SumRuleKind};
use robin_bouncer::spectrum::{
    approx_energy_dirichlet_regime, approx_energy_neumann_regime, eigenfunction_value, phase_ratio,
    solve_roots, solve_state, PhaseParams, SelfAdjointParam,
};
use robin_bouncer::Error;
use std::f64::consts::PI;

/// Accepts a number, "inf" or "neumann".
pub fn parse_lambda(s: &str) -> Result<SelfAdjointParam, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "neumann" | "inf" | "+inf" | "infinity" => Ok(SelfAdjointParam::Neumann),
        t => {
            let v: f64 = t.parse().map_err(|_| format!("not a number: {s}"))?;
            SelfAdjointParam::new(v).map_err(|e| e.to_string())
        }
    }
}

/// "n:k" or "n,k".
pub fn parse_transition(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split([':', ',']).collect();
    if parts.len() != 2 {
        return Err(format!("expected n:k, got {s}"));
    }
    let n = parts[0].trim().parse().map_err(|_| format!("bad level in {s}"))?;
    let k = parts[1].trim().parse().map_err(|_| format!("bad level in {s}"))?;
    Ok((n, k))
}

/// "nu,sigma,n:k".
pub fn parse_measurement(s: &str) -> Result<Measurement, String> {
    let parts: Vec<&str> = s.splitn(3, ',').collect();
    if parts.len() != 3 {
        return Err(format!("expected nu,sigma,n:k, got {s}"));
    }
    let nu = parts[0].trim().parse().map_err(|_| format!("bad frequency in {s}"))?;
    let sigma = parts[1].trim().parse().map_err(|_| format!("bad sigma in {s}"))?;
    let (n, k) = parse_transition(parts[2])?;
    Measurement::new(nu, sigma, n, k).map_err(|e| e.to_string())
}

fn lambda_cell(l: SelfAdjointParam) -> Cell {
    Cell::Num(l.value().unwrap_or(f64::INFINITY))
}

pub fn spectrum(lambda: SelfAdjointParam, n_max: usize, reference: bool, scales: &PhysicalScales) -> Result<Table, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let e0 = scales.e0_pev();
    let mut cols = vec!["n", "zeta", "energy_pev", "alpha", "alpha_prime", "negative_energy"];
    if reference {
        cols.extend(["energy_dirichlet_pev", "delta_pev"]);
    }
    let mut t = Table::new(&cols);
    for s in solve_roots(lambda, n_max)? {
        let e = -s.zeta * e0;
        let mut row: Vec<Cell> = vec![
            s.n.into(),
            s.zeta.into(),
            e.into(),
            s.alpha.into(),
            s.alpha_prime.into(),
            s.negative_energy_flag.into(),
        ];
        if reference {
            if s.n == 0 {
                row.extend([Cell::Num(f64::NAN), Cell::Num(f64::NAN)]);
            } else {
                let ed = -solve_state(SelfAdjointParam::dirichlet(), s.n)?.zeta * e0;
                row.extend([ed.into(), (ed - e).into()]);
            }
        }
        t.push(row);
    }
    Ok(t)
}

pub fn eigenfunction(lambda: SelfAdjointParam, n_max: usize, xi_max: f64, points: usize) -> Result<Table, Failure> {
    if n_max == 0 || points < 2 || !(xi_max > 0.0 && xi_max.is_finite()) {
        return Err(Failure::Usage("need --n-max >= 1, --points >= 2 and --xi-max > 0".into()));
    }
    let mut t = Table::new(&["n", "xi", "psi", "rho", "rho_dirichlet", "rho_neumann"]);
    for s in solve_roots(lambda, n_max)? {
        let (d, nm) = if s.n == 0 {
            (None, None)
        } else {
            (
                Some(solve_state(SelfAdjointParam::dirichlet(), s.n)?),
                Some(solve_state(SelfAdjointParam::Neumann, s.n)?),
            )
        };
        for i in 0..points {
            let xi = xi_max * i as f64 / (points - 1) as f64;
            let psi = eigenfunction_value(&s, xi)?;
            let rd = match &d {
                Some(d) => eigenfunction_value(d, xi)?.powi(2),
                None => f64::NAN,
            };
            let rn = match &nm {
                Some(nm) => eigenfunction_value(nm, xi)?.powi(2),
                None => f64::NAN,
            };
            t.push(vec![s.n.into(), xi.into(), psi.into(), (psi * psi).into(), rd.into(), rn.into()]);
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorSpec {
    Op(Operator),
    PLeft,
}

pub fn parse_operator(s: &str) -> Result<OperatorSpec, String> {
    let t = s.trim().to_ascii_lowercase();
    Ok(match t.as_str() {
        "x" => OperatorSpec::Op(Operator::XPower(1)),
        "p" => OperatorSpec::Op(Operator::P),
        "p-left" => OperatorSpec::PLeft,
        "p2" => OperatorSpec::Op(Operator::P2),
        "delta" => OperatorSpec::Op(Operator::DeltaAtOrigin),
        _ => match t.strip_prefix('x').and_then(|q| q.trim_start_matches('^').parse::<u32>().ok()) {
            Some(q) => OperatorSpec::Op(Operator::XPower(q)),
            None => return Err(format!("unknown operator {s}; use x, x<q>, p, p-left, p2, delta")),
        },
    })
}

fn operator_name(op: OperatorSpec) -> String {
    match op {
        OperatorSpec::Op(Operator::XPower(1)) => "x".into(),
        OperatorSpec::Op(Operator::XPower(q)) => format!("x{q}"),
        OperatorSpec::Op(Operator::P) => "p".into(),
        OperatorSpec::Op(Operator::P2) => "p2".into(),
        OperatorSpec::Op(Operator::DeltaAtOrigin) => "delta".into(),
        OperatorSpec::PLeft => "p-left".into(),
    }
}

fn unit_name(op: OperatorSpec) -> String {
    match op {
        OperatorSpec::Op(Operator::XPower(q)) => format!("x0^{q}"),
        OperatorSpec::Op(Operator::P) | OperatorSpec::PLeft => "hbar/x0".into(),
        OperatorSpec::Op(Operator::P2) => "m*E0".into(),
        OperatorSpec::Op(Operator::DeltaAtOrigin) => "1/x0".into(),
    }
}

pub fn elements(lambda: SelfAdjointParam, n_max: usize, ops: &[OperatorSpec]) -> Result<Table, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let states = solve_roots(lambda, n_max)?;
    let mut t = Table::new(&["operator", "n", "k", "re", "im", "unit"]);
    for &op in ops {
        for sn in &states {
            for sk in &states {
                let v = match op {
                    OperatorSpec::Op(o) => element_between(sn, sk, o).value,
                    OperatorSpec::PLeft => p_left(sn, sk),
                };
                t.push(vec![
                    operator_name(op).into(),
                    sn.n.into(),
                    sk.n.into(),
                    v.re.into(),
                    v.im.into(),
                    unit_name(op).into(),
                ]);
            }
        }
    }
    Ok(t)
}

pub fn parse_rule(s: &str) -> Result<String, String> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "closure" | "trk" | "monopole" | "second-moment" | "bethe" => Ok(t),
        _ => Err(format!("unknown sum rule {s}; use closure, trk, monopole, second-moment, bethe")),
    }
}

pub fn sumrule(kind: &str, n: usize, lambda: SelfAdjointParam, m_max: usize, q: f64) -> Result<Table, Failure> {
    let k = match kind {
        "closure" => SumRuleKind::Closure,
        "trk" => SumRuleKind::Trk,
        "monopole" => SumRuleKind::Monopole,
        "second-moment" => SumRuleKind::SecondMoment,
        _ => SumRuleKind::Bethe(q),
    };
    let r = sum_rule(k, n, lambda, m_max)?;
    let mut t = Table::new(&[
        "rule", "n", "lambda", "m_max", "lhs_partial", "tail_estimate", "lhs_total", "rhs_closed",
        "deviation", "tolerance", "converged",
    ]);
    t.push(vec![
        kind.into(),
        n.into(),
        lambda_cell(lambda),
        r.m_max.into(),
        r.lhs_partial.into(),
        r.tail_estimate.into(),
        (r.lhs_partial + r.tail_estimate).into(),
        r.rhs_closed.into(),
        r.deviation().into(),
        r.tolerance.into(),
        r.converged.into(),
    ]);
    Ok(t)
}

pub fn uncertainty(lambda: SelfAdjointParam, n_max: usize) -> Result<Table, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let mut t = Table::new(&[
        "n", "mean_x", "delta_x", "delta_p", "product", "bound", "bound_ket", "satisfies_bound",
    ]);
    for s in solve_roots(lambda, n_max)? {
        let v = variances(lambda, s.n)?;
        t.push(vec![
            v.n.into(),
            v.mean_x.into(),
            v.delta_x.into(),
            v.delta_p.into(),
            v.product.into(),
            v.bound.into(),
            v.bound_ket.into(),
            v.satisfies_bound.into(),
        ]);
    }
    Ok(t)
}

pub fn fit(data: &[Measurement], scales: &PhysicalScales) -> Result<Table, Failure> {
    let f = fit_lambda_multi(data, scales)?;
    let mut t = Table::new(&[
        "lambda_min", "delta_lambda", "delta_plus", "delta_minus", "chi2_min", "measurements",
        "nu_model", "evaluations",
    ]);
    let nu = f
        .nu_model
        .iter()
        .map(|v| format!("{v:.6}"))
        .collect::<Vec<_>>()
        .join(";");
    t.push(vec![
        f.lambda_min.into(),
        f.delta_lambda.into(),
        f.delta_plus.into(),
        f.delta_minus.into(),
        f.chi2_min.into(),
        data.len().into(),
        nu.into(),
        f.evaluations.into(),
    ]);
    Ok(t)
}

pub fn extract(m: &Measurement, lambda: f64, scales: &PhysicalScales) -> Result<Table, Failure> {
    let (n, k) = m.transition;
    let g = extract_g(m, lambda, scales)?;
    let nu_ref = transition_frequency(scales, lambda, n, k)?;
    let mut t = Table::new(&["g", "g_ref", "nu", "nu_model_ref", "lambda", "n", "k"]);
    t.push(vec![
        g.into(),
        scales.g().into(),
        m.nu.into(),
        nu_ref.into(),
        lambda.into(),
        n.into(),
        k.into(),
    ]);
    Ok(t)
}

pub fn penetration_table(lambda: f64, n_max: usize, scales: &PhysicalScales) -> Result<Table, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let mut t = Table::new(&["n", "lambda", "kappa0", "p_in", "x0"]);
    for n in 1..=n_max {
        let p = penetration(lambda, n, scales)?;
        t.push(vec![n.into(), lambda.into(), p.kappa0.into(), p.p_in.into(), scales.x0().into()]);
    }
    Ok(t)
}

pub fn phase_map(theta_steps: usize, eps_steps: usize, eps_max: f64) -> Result<Table, Failure> {
    if theta_steps < 2 || eps_steps < 1 {
        return Err(Failure::Usage("need --theta-steps >= 2 and --eps-steps >= 1".into()));
    }
    let mut t = Table::new(&["theta", "eps_eta", "kappa", "lambda", "imag_residual", "status"]);
    for i in 0..theta_steps {
        let theta = 2.0 * PI * i as f64 / (theta_steps - 1) as f64;
        for j in 1..=eps_steps {
            let eps = eps_max * j as f64 / eps_steps as f64;
            let params = PhaseParams::new(theta, eps)?;
            let row: Vec<Cell> = match phase_ratio(params) {
                Ok((kappa, im)) => {
                    let rel = im / kappa.abs().max(1.0);
                    let status = if rel <= robin_bouncer::spectrum::PHASE_REALITY_TOLERANCE {
                        "ok"
                    } else {
                        "not-real"
                    };
                    vec![theta.into(), eps.into(), kappa.into(), (1.0 / kappa).into(), rel.into(), status.into()]
                }
                Err(Error::Pole { .. }) => vec![
                    theta.into(),
                    eps.into(),
                    Cell::Num(f64::INFINITY),
                    Cell::Num(0.0),
                    Cell::Num(0.0),
                    "pole".into(),
                ],
                Err(e) => return Err(e.into()),
            };
            t.push(row);
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observable {
    Energy(usize),
    EnergyPev(usize),
    EnergyApproxDirichlet(usize),
    EnergyApproxNeumann(usize),
    Transition(usize, usize),
    UncertaintyBound(usize),
    UncertaintyBoundKet(usize),
}

/// "energy:1", "energy(1)", "transition:1:6", "transition(1,6)", ...
pub fn parse_observable(s: &str) -> Result<Observable, String> {
    let norm: String = s
        .trim()
        .to_ascii_lowercase()
        .replace(['(', ','], ":")
        .replace(')', "")
        .replace('_', "-");
    let parts: Vec<&str> = norm.split(':').collect();
    let idx = |i: usize| -> Result<usize, String> {
        parts
            .get(i)
            .ok_or_else(|| format!("observable {s} is missing a level index"))?
            .trim()
            .parse()
            .map_err(|_| format!("bad level index in {s}"))
    };
    let one = |f: fn(usize) -> Observable| -> Result<Observable, String> {
        if parts.len() != 2 {
            return Err(format!("observable {s} takes one level index"));
        }
        Ok(f(idx(1)?))
    };
    match parts[0] {
        "energy" => one(Observable::Energy),
        "energy-pev" => one(Observable::EnergyPev),
        "energy-approx-dirichlet" => one(Observable::EnergyApproxDirichlet),
        "energy-approx-neumann" => one(Observable::EnergyApproxNeumann),
        "uncertainty-bound" => one(Observable::UncertaintyBound),
        "uncertainty-bound-ket" => one(Observable::UncertaintyBoundKet),
        "transition" if parts.len() == 3 => {
            let (n, k) = (idx(1)?, idx(2)?);
            if n == 0 || n >= k {
                return Err(format!("transition needs 1 <= n < k, got {s}"));
            }
            Ok(Observable::Transition(n, k))
        }
        _ => Err(format!(
            "unknown observable {s}; use energy(n), energy-pev(n), energy-approx-dirichlet(n), \
             energy-approx-neumann(n), transition(n,k), uncertainty-bound(n), uncertainty-bound-ket(n)"
        )),
    }
}

fn observable_value(obs: Observable, lambda: f64, scales: &PhysicalScales) -> Result<f64, Failure> {
    let lam = SelfAdjointParam::from(lambda);
    Ok(match obs {
        Observable::Energy(n) => -solve_state(lam, n)?.zeta,
        Observable::EnergyPev(n) => -solve_state(lam, n)?.zeta * scales.e0_pev(),
        Observable::EnergyApproxDirichlet(n) => -approx_energy_dirichlet_regime(lambda, n, false)?,
        Observable::EnergyApproxNeumann(n) => -approx_energy_neumann_regime(lambda, n)?,
        Observable::Transition(n, k) => transition_frequency(scales, lambda, n, k)?,
        Observable::UncertaintyBound(n) => uncertainty_bound(lam, n)?,
        Observable::UncertaintyBoundKet(n) => uncertainty_bound_ket(lam, n)?,
    })
}

pub fn sweep(lo: f64, hi: f64, steps: usize, obs: Observable, scales: &PhysicalScales) -> Result<Table, Failure> {
    if steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Failure::Usage("need finite --lambda-min <= --lambda-max".into()));
    }
    let mut t = Table::new(&["lambda", "value"]);
    for i in 0..steps {
        let l = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        t.push(vec![l.into(), observable_value(obs, l, scales)?.into()]);
    }
    Ok(t)
}
