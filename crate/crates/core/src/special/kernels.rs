//! Evaluation kernels for Ai and Ai' on the real line and the complex disc.
//!
//! * `maclaurin_*`: the two power series f, g of the Airy equation summed in
//!   double-double arithmetic. Cancellation between c1 f and c2 g costs at
//!   most a factor exp(4/3 |x|^{3/2}) which the extra 16 digits absorb for
//!   |x| <= 10 on the real line and |z| <= 8 in the complex plane.
//! * `oscillatory`: modulus/phase asymptotic series for x < -10, with the
//!   phase reduced modulo 2 pi in double-double.
//! * `decaying_scaled`: Ai, Ai' times exp(2/3 x^{3/2}) through K_{1/3},
//!   K_{2/3} from Steed's continued fraction, for x > 3.

use super::dd::{Dd, DdComplex};
use std::f64::consts::PI;

/// Ai(0) as a double-double.
pub(crate) const AI0: Dd = Dd {
    hi: 0.3550280538878172,
    lo: 2.05233632436212e-17,
};
/// -Ai'(0) as a double-double.
pub(crate) const AIP0_NEG: Dd = Dd {
    hi: 0.2588194037928068,
    lo: -2.522243111610832e-17,
};

const TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};
const QUARTER_PI: Dd = Dd {
    hi: 0.7853981633974483,
    lo: 3.061616997868383e-17,
};

const SERIES_REL_TOL: f64 = 1e-33;
const SERIES_MAX_TERMS: usize = 400;

/// (Ai, Ai') from the Maclaurin series for real `x`.
pub(crate) fn maclaurin_real(x: f64) -> (f64, f64) {
    let xd = Dd::from_f64(x);
    let x3 = xd * xd * xd;

    let mut t = Dd::ONE; // f terms
    let mut u = xd; // g terms
    let mut v = (xd * xd).div_f64(2.0); // f' terms, starting at k = 1
    let mut w = Dd::ONE; // g' terms

    let mut f = t;
    let mut g = u;
    let mut fp = v;
    let mut gp = w;
    let mut scale = 1.0f64.max(g.abs()).max(fp.abs());

    for k in 1..SERIES_MAX_TERMS {
        let kf = k as f64;
        t = (t * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        u = (u * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        w = (w * x3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        let vk = if k >= 2 {
            v = (v * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            v
        } else {
            Dd::ZERO
        };
        f = f + t;
        g = g + u;
        fp = fp + vk;
        gp = gp + w;
        scale = scale
            .max(f.abs())
            .max(g.abs())
            .max(fp.abs())
            .max(gp.abs());
        let largest = t.abs().max(u.abs()).max(v.abs()).max(w.abs());
        if k > 2 && largest < SERIES_REL_TOL * scale {
            break;
        }
    }

    let ai = AI0 * f - AIP0_NEG * g;
    let aip = AI0 * fp - AIP0_NEG * gp;
    (ai.to_f64(), aip.to_f64())
}

/// (Ai, Ai') from the Maclaurin series for complex `z = re + i im`.
pub(crate) fn maclaurin_complex(re: f64, im: f64) -> ((f64, f64), (f64, f64)) {
    let z = DdComplex::from_f64(re, im);
    let z3 = z * z * z;

    let mut t = DdComplex::from_f64(1.0, 0.0);
    let mut u = z;
    let mut v = (z * z).div_f64(2.0);
    let mut w = DdComplex::from_f64(1.0, 0.0);

    let mut f = t;
    let mut g = u;
    let mut fp = v;
    let mut gp = w;
    let mut scale = 1.0f64.max(g.norm_f64()).max(fp.norm_f64());

    for k in 1..SERIES_MAX_TERMS {
        let kf = k as f64;
        t = (t * z3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        u = (u * z3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        w = (w * z3).div_f64((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            v = (v * z3).div_f64((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp = fp + v;
        }
        f = f + t;
        g = g + u;
        gp = gp + w;
        scale = scale
            .max(f.norm_f64())
            .max(g.norm_f64())
            .max(fp.norm_f64())
            .max(gp.norm_f64());
        let largest = t
            .norm_f64()
            .max(u.norm_f64())
            .max(v.norm_f64())
            .max(w.norm_f64());
        if k > 2 && largest < SERIES_REL_TOL * scale {
            break;
        }
    }

    let ai = f.mul_dd(AI0) - g.mul_dd(AIP0_NEG);
    let aip = fp.mul_dd(AI0) - gp.mul_dd(AIP0_NEG);
    (
        (ai.re.to_f64(), ai.im.to_f64()),
        (aip.re.to_f64(), aip.im.to_f64()),
    )
}

/// (2/3) z^{3/2} as a double-double.
fn zeta_dd(z: f64) -> Dd {
    let s = z.sqrt();
    // Newton correction of the square root: s + (z - s^2) / (2 s)
    let s2 = Dd::from_f64(s) * Dd::from_f64(s);
    let corr = (Dd::from_f64(z) - s2).to_f64() / (2.0 * s);
    let root = Dd::new(s, corr);
    (Dd::from_f64(z) * root).mul_f64(2.0).div_f64(3.0)
}

/// (Ai(x), Ai'(x)) for x < -10 from the modulus/phase asymptotic series.
pub(crate) fn oscillatory(x: f64) -> (f64, f64) {
    debug_assert!(x < 0.0);
    let z = -x;
    let zeta_d = zeta_dd(z);
    let zeta = zeta_d.to_f64();

    // phase = zeta - pi/4, reduced into [-pi, pi]
    let turns = (zeta_d.hi / TWO_PI.hi).round();
    let reduced = zeta_d - TWO_PI.mul_f64(turns) - QUARTER_PI;
    let (sin_p, cos_p) = reduced.to_f64().sin_cos();

    // u_k, v_k coefficients built on the fly; alternating even/odd sums
    let mut p = 1.0; // sum (-1)^k u_{2k} / zeta^{2k}
    let mut q = 0.0; // sum (-1)^k u_{2k+1} / zeta^{2k+1}
    let mut r = 1.0; // sum (-1)^k v_{2k} / zeta^{2k}
    let mut s = 0.0; // sum (-1)^k v_{2k+1} / zeta^{2k+1}
    let mut uk = 1.0;
    let mut zpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        uk *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let vk = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk;
        zpow /= zeta;
        let tu = uk * zpow;
        let tv = vk * zpow;
        if tu.abs().max(tv.abs()) > last {
            // past the smallest term of the asymptotic series
            break;
        }
        last = tu.abs().max(tv.abs());
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * tu;
            r += sign * tv;
        } else {
            q += sign * tu;
            s += sign * tv;
        }
        if last < 1e-18 {
            break;
        }
    }

    let inv_sqrt_pi = 1.0 / PI.sqrt();
    let z14 = z.sqrt().sqrt();
    let ai = inv_sqrt_pi / z14 * (cos_p * p + sin_p * q);
    let aip = inv_sqrt_pi * z14 * (sin_p * r - cos_p * s);
    (ai, aip)
}

/// Scaled modified Bessel functions exp(x) K_mu(x), exp(x) K_{mu+1}(x) by
/// Steed's continued fraction. Valid for x >= 2 and |mu| <= 1/2.
fn bessel_k_scaled(mu: f64, x: f64) -> (f64, f64) {
    const MAXIT: usize = 10_000;
    const EPS: f64 = 1e-17;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAXIT {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    let kmu1 = kmu * (mu + x + 0.5 - h) / x;
    (kmu, kmu1)
}

/// (Ai(x), Ai'(x)) times exp(2/3 x^{3/2}) for x > 3.
pub(crate) fn decaying_scaled(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (k13, k43) = bessel_k_scaled(1.0 / 3.0, zeta);
    // K_{4/3} = K_{-2/3} + (2/3) / zeta * K_{1/3} and K_{-2/3} = K_{2/3}
    let k23 = k43 - 2.0 / (3.0 * zeta) * k13;
    let sqrt3 = 3.0f64.sqrt();
    let ai = (x / 3.0).sqrt() * k13 / PI;
    let aip = -x / (PI * sqrt3) * k23;
    (ai, aip)
}
