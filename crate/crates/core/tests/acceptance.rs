//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 2 and 9 each contain one clause the model cannot meet (see the
//! notes printed with them). Those lines report FAIL; the process exit code
//! only reflects unexpected failures.

use rand::{rngs::StdRng, Rng, SeedableRng};
use robin_bouncer::elements::{p, p2, p2_element, x_power, x_power_table, recursion_residual};
use robin_bouncer::oracle::{integrate, recursion_check, Integrand};
use robin_bouncer::qbounce::{
    energies_table, extract_g, fit_lambda, penetration, qbounce_16, Constants, PhysicalScales,
    G_QBOUNCE,
};
use robin_bouncer::rules::{sum_rule, uncertainty_bound, variances, SumRuleKind};
use robin_bouncer::special::{classical_zero, ZeroKind};
use robin_bouncer::spectrum::{
    approx_energy_dirichlet_regime, approx_energy_neumann_regime, phase_ratio, solve_state,
    PhaseParams, SelfAdjointParam,
};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

const TABLE_DIRICHLET: [f64; 7] = [1.4066, 2.4592, 3.3211, 4.0827, 4.7790, 5.4278, 6.0400];
const TABLE_GENERAL: [f64; 7] = [1.3356, 2.3888, 3.2511, 4.0131, 4.7098, 5.3590, 5.9713];
const TABLE_DELTA: [f64; 7] = [0.0710, 0.0704, 0.0700, 0.0696, 0.0692, 0.0689, 0.0686];
const LAMBDA0: f64 = 0.11928;

struct Clause {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn clause(name: &'static str, ok: bool, detail: String) -> Clause {
    Clause { name, ok, detail }
}

fn timed(limit: Option<f64>, start: Instant) -> Clause {
    let t = start.elapsed();
    match limit {
        Some(l) => clause("runtime", t < Duration::from_secs_f64(l), format!("{:.3} s < {l} s", t.as_secs_f64())),
        None => clause("runtime", true, format!("{:.3} s", t.as_secs_f64())),
    }
}

fn lam(l: f64) -> SelfAdjointParam {
    SelfAdjointParam::Finite(l)
}

fn site() -> PhysicalScales {
    PhysicalScales::new(Constants::default(), G_QBOUNCE).unwrap()
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn mixed(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn c1() -> Vec<Clause> {
    let t = Instant::now();
    let s = site();
    let d = energies_table(&s, 0.0, 7).unwrap();
    let g = energies_table(&s, LAMBDA0, 7).unwrap();
    let (mut worst, mut worst_raw) = (0.0f64, 0.0f64);
    for i in 0..7 {
        let (ed, eg) = (d[i].energy_pev, g[i].energy_pev);
        for (v, target) in [(ed, TABLE_DIRICHLET[i]), (eg, TABLE_GENERAL[i]), (ed - eg, TABLE_DELTA[i])] {
            worst = worst.max((round4(v) - target).abs());
            worst_raw = worst_raw.max((v - target).abs());
        }
    }
    vec![
        clause(
            "21 entries at printed precision",
            worst <= 1e-4 + 1e-12,
            format!("max |round4(E) - table| = {worst:.1e} peV (unrounded max {worst_raw:.6e}), E0 = {:.10} peV", s.e0_pev()),
        ),
        timed(Some(1.0), t),
    ]
}

fn c2() -> Vec<Clause> {
    let t = Instant::now();
    let f = fit_lambda(&qbounce_16(), &site()).unwrap();
    vec![
        clause("lambda_min in [0.105, 0.125]", (0.105..=0.125).contains(&f.lambda_min), format!("{:.7}", f.lambda_min)),
        clause(
            "delta_lambda in [0.008, 0.012]",
            (0.008..=0.012).contains(&f.delta_lambda),
            format!(
                "{:.6} (+{:.6} / -{:.6}); a single datum with sigma = 0.0456 Hz fixes lambda to this width",
                f.delta_lambda, f.delta_plus, f.delta_minus
            ),
        ),
        clause("chi2_min < 1e-6", f.chi2_min < 1e-6, format!("{:.2e}", f.chi2_min)),
        timed(Some(1.0), t),
    ]
}

fn c3() -> Vec<Clause> {
    let t = Instant::now();
    let p = penetration(LAMBDA0, 1, &site()).unwrap();
    let rel = (p.kappa0 / 1428451.34430 - 1.0).abs();
    vec![
        clause("p_in = 0.00082 +- 0.00002", (p.p_in - 0.00082).abs() <= 2e-5, format!("{:.8}", p.p_in)),
        clause("kappa0 within 1e-4 relative", rel <= 1e-4, format!("{:.5} 1/m, rel {rel:.2e}", p.kappa0)),
        timed(Some(1.0), t),
    ]
}

fn c4() -> Vec<Clause> {
    let t = Instant::now();
    let g = extract_g(&qbounce_16(), 0.0, &site()).unwrap();
    vec![
        clause("g = 9.8125 +- 0.0015", (g - 9.8125).abs() <= 0.0015, format!("{g:.7} m/s^2")),
        timed(Some(1.0), t),
    ]
}

fn c5() -> Vec<Clause> {
    let s = site();
    let rx = (s.x0() / 5.87e-6 - 1.0).abs();
    vec![
        clause("x0 = 5.87 um +- 0.05%", rx <= 5e-4, format!("{:.6e} m, rel {rx:.2e}", s.x0())),
        clause("E0 = 0.6016 +- 0.0002 peV", (s.e0_pev() - 0.6016).abs() <= 2e-4, format!("{:.10} peV", s.e0_pev())),
    ]
}

fn c6() -> Vec<Clause> {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(20240611);
    let (mut worst_el, mut worst_rec, mut worst_quad_rec) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let l: f64 = rng.gen_range(0.0..5.0);
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=6);
        let sn = solve_state(lam(l), n).unwrap();
        let sk = solve_state(lam(l), k).unwrap();
        let q1 = integrate(&sn, &sk, Integrand::Overlap(1)).unwrap().value;
        let q2 = integrate(&sn, &sk, Integrand::Overlap(2)).unwrap().value;
        let dq = integrate(&sn, &sk, Integrand::ValueDerivative).unwrap().value;
        let diag = if n == k { sk.zeta } else { 0.0 };
        worst_el = worst_el
            .max(mixed(x_power(&sn, &sk, 1), q1))
            .max(mixed(x_power(&sn, &sk, 2), q2))
            .max(mixed(p(&sn, &sk).im, -dq))
            .max(mixed(p2(&sn, &sk), -2.0 * (q1 + diag)));
        let table = x_power_table(&sn, &sk, 6);
        for q in 1..=6 {
            worst_rec = worst_rec.max(recursion_residual(&sn, &sk, q, |j| table[j as usize]).abs());
            worst_quad_rec = worst_quad_rec.max(recursion_check(lam(l), n, k, q).unwrap().abs());
        }
    }
    vec![
        clause("x, x^2, p, p^2 vs quadrature < 1e-8", worst_el < 1e-8, format!("max mixed error {worst_el:.2e}")),
        clause(
            "recursion residuals q <= 6 < 1e-8",
            worst_rec < 1e-8 && worst_quad_rec < 1e-8,
            format!("closed forms {worst_rec:.2e}, quadrature {worst_quad_rec:.2e}"),
        ),
        timed(Some(30.0), t),
    ]
}

fn c7() -> Vec<Clause> {
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for n in 1..=8 {
        let a = classical_zero(ZeroKind::Dirichlet, n).unwrap().value;
        let ap = classical_zero(ZeroKind::Neumann, n).unwrap().value;
        lo = lo.max((solve_state(lam(1e-8), n).unwrap().zeta - a).abs());
        hi = hi.max((solve_state(lam(1e8), n).unwrap().zeta - ap).abs());
    }
    let mut ratios = Vec::new();
    let mut dirichlet_ok = true;
    for n in 1..=4 {
        let a2 = classical_zero(ZeroKind::Dirichlet, n).unwrap().value.powi(2);
        let ratio = |l: f64| {
            let exact = solve_state(lam(l), n).unwrap().zeta;
            (approx_energy_dirichlet_regime(l, n, false).unwrap() - exact).abs() / l.powi(4)
        };
        for &l in &[0.02, 0.04, 0.08] {
            let r = ratio(l);
            dirichlet_ok &= (r - 0.25).abs() <= 0.3 * a2 * l;
            ratios.push(r);
        }
        dirichlet_ok &= (2.0 * ratio(0.02) - ratio(0.04) - 0.25).abs() < 0.01;
    }
    let mut neumann: f64 = 0.0;
    for n in 1..=4 {
        let exact = solve_state(lam(10.0), n).unwrap().zeta;
        neumann = neumann.max((approx_energy_neumann_regime(10.0, n).unwrap() - exact).abs());
    }
    let rmax = ratios.iter().cloned().fold(0.0, f64::max);
    let rmin = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    vec![
        clause("zeta_n(1e-8) vs a_n < 1e-7", lo < 1e-7, format!("{lo:.2e}")),
        clause("zeta_n(1e8) vs a'_n < 1e-7", hi < 1e-7, format!("{hi:.2e}")),
        clause(
            "Dirichlet-regime error / lambda^4 -> 1/4",
            dirichlet_ok,
            format!("ratios in [{rmin:.4}, {rmax:.4}], slope within 0.3 a_n^2 lambda, extrapolated to 1/4 within 0.01"),
        ),
        clause("Neumann regime at lambda = 10 within 1e-4", neumann < 1e-4, format!("{neumann:.2e}")),
    ]
}

fn c8() -> Vec<Clause> {
    let t = Instant::now();
    let mut trk_worst: f64 = 0.0;
    let mut trk_ok = true;
    for &l in &[0.0, LAMBDA0, 1.0] {
        let r = sum_rule(SumRuleKind::Trk, 1, lam(l), 2000).unwrap();
        let rel = r.deviation() / r.rhs_closed.abs();
        trk_ok &= rel <= 1e-3 && r.tail_estimate.is_finite();
        trk_worst = trk_worst.max(rel);
    }
    let mut closure_worst: f64 = 0.0;
    for &l in &[0.0, LAMBDA0, 1.0] {
        for n in 1..=4 {
            let r = sum_rule(SumRuleKind::Closure, n, lam(l), 400).unwrap();
            closure_worst = closure_worst.max(r.deviation());
        }
    }
    let mut bethe_ok = true;
    for &q in &[0.0, 0.5, 3.0, -7.25] {
        let r = sum_rule(SumRuleKind::Bethe(q), 2, lam(LAMBDA0), 0).unwrap();
        bethe_ok &= r.lhs_partial == q * q && r.rhs_closed == q * q;
    }
    let mut sm_worst: f64 = 0.0;
    for &l in &[0.0, LAMBDA0, 1.0] {
        for n in 1..=3 {
            let r = sum_rule(SumRuleKind::SecondMoment, n, lam(l), 100).unwrap();
            let closed = 2.0 * p2_element(lam(l), n, n).unwrap();
            sm_worst = sm_worst.max((r.rhs_closed - closed).abs());
        }
    }
    vec![
        clause("TRK n=1, m_max=2000 + tail, within 1e-3", trk_ok, format!("max relative deviation {trk_worst:.2e}")),
        clause("closure at m_max=400 within 1e-6", closure_worst <= 1e-6, format!("max deviation {closure_worst:.2e} (n <= 4)")),
        clause("Bethe exact", bethe_ok, "lhs = rhs = q^2 identically".into()),
        clause("second-moment RHS vs <p^2> closed form", sm_worst <= 1e-10, format!("{sm_worst:.2e}")),
        timed(Some(60.0), t),
    ]
}

fn c9() -> Vec<Clause> {
    let zero_ok = (1..=6).all(|n| uncertainty_bound(lam(0.0), n).unwrap() == 0.5);
    let b0 = uncertainty_bound(lam(LAMBDA0), 1).unwrap();
    let mut violations = Vec::new();
    let mut ket_ok = true;
    for &l in &[0.0, 0.1, 0.5, 1.0, 5.0, 50.0] {
        for n in 1..=4 {
            let v = variances(lam(l), n).unwrap();
            ket_ok &= v.satisfies_bound_ket;
            if !v.satisfies_bound {
                violations.push(format!("(lambda={l}, n={n}: {:.4} < {:.4})", v.product, v.bound));
            }
        }
    }
    let detail = if violations.is_empty() {
        "no violations".to_string()
    } else {
        format!(
            "violated at {}; the ket-side bound (1/6)|3 + a^2(a a' + 2 zeta)| holds everywhere: {ket_ok}",
            violations.join(", ")
        )
    };
    vec![
        clause("bound = 1/2 exactly at lambda = 0", zero_ok, "n = 1..6".into()),
        clause("bound(0.11928, 1) = 0.50994 +- 1e-4", (b0 - 0.50994).abs() <= 1e-4, format!("{b0:.6}")),
        clause("dx dp >= bound on the grid", violations.is_empty(), detail),
    ]
}

fn c10() -> Vec<Clause> {
    let (mut worst_abs, mut worst_rel, mut poles) = (0.0f64, 0.0f64, 0);
    for i in 0..32 {
        let theta = 2.0 * PI * i as f64 / 31.0;
        for j in 1..=16 {
            let eps = 3.0 * j as f64 / 16.0;
            match phase_ratio(PhaseParams::new(theta, eps).unwrap()) {
                Ok((kappa, im)) => {
                    worst_abs = worst_abs.max(im);
                    worst_rel = worst_rel.max(im / kappa.abs().max(1.0));
                }
                Err(_) => poles += 1,
            }
        }
    }
    vec![clause(
        "imaginary residual < 1e-10 on 32x16",
        worst_abs < 1e-10,
        format!("max |Im| {worst_abs:.2e} (relative {worst_rel:.2e}), {poles} pole points"),
    )]
}

fn c11() -> Vec<Clause> {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for &l in &[0.0, LAMBDA0, 1.0, 10.0] {
        let states: Vec<_> = (1..=8).map(|n| solve_state(lam(l), n).unwrap()).collect();
        for a in &states {
            for b in &states {
                let v = integrate(a, b, Integrand::Overlap(0)).unwrap().value;
                let target = if a.n == b.n { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
    }
    vec![
        clause("|<n|k> - delta| < 1e-8, n,k <= 8", worst < 1e-8, format!("{worst:.2e}")),
        timed(None, t),
    ]
}

/// (criterion, clause) pairs that cannot be met; see the notes printed with them.
const UNATTAINABLE: [(usize, &str); 2] = [
    (2, "delta_lambda in [0.008, 0.012]"),
    (9, "dx dp >= bound on the grid"),
];

fn main() {
    let runs: [(usize, &str, fn() -> Vec<Clause>); 11] = [
        (1, "Table I reproduction", c1),
        (2, "lambda_0 fit band", c2),
        (3, "penetration observables", c3),
        (4, "g extraction", c4),
        (5, "scales", c5),
        (6, "closed forms vs oracle", c6),
        (7, "limits", c7),
        (8, "sum rules", c8),
        (9, "uncertainty", c9),
        (10, "phase map reality", c10),
        (11, "orthonormality", c11),
    ];
    let mut unexpected = 0;
    for (id, title, f) in runs {
        let clauses = f();
        let ok = clauses.iter().all(|c| c.ok);
        println!("criterion {id:>2} {}: {title}", if ok { "PASS" } else { "FAIL" });
        for c in &clauses {
            let known = UNATTAINABLE.contains(&(id, c.name));
            let tag = match (c.ok, known) {
                (true, _) => "ok",
                (false, true) => "FAIL (known)",
                (false, false) => "FAIL",
            };
            println!("    [{tag}] {}: {}", c.name, c.detail);
            if !c.ok && !known {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} unexpected acceptance failure(s)");
        std::process::exit(1);
    }
}
