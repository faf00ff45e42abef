//! Matrix elements between generalized eigenstates.
//!
//! Everything is computed from the signed boundary values b = psi(0) and
//! d = psi'(0) of each state (xi normalization), so no sign prefactors have
//! to be guessed. With dz = zeta_n - zeta_k and zeta_ave = (zeta_n + zeta_k)/2
//! the elements of xi^q obey
//!
//! ```text
//! q(q-1)(q-2)(q-3)<xi^{q-4}> - 4q(q-1) zeta_ave <xi^{q-2}> - 2q(2q-1)<xi^{q-1}>
//!     + dz^2 <xi^q> = R(q)
//! R(q) = 2 delta_{q2} (d_n b_k + b_n d_k) - 2 delta_{q1} d_n d_k
//!        - (6 delta_{q3} - 2 delta_{q1} zeta_ave) b_n b_k
//! ```
//!
//! Off-diagonal elements march upward in q; diagonal ones use the identity
//! at q + 1.

use crate::error::Result;
use crate::spectrum::{solve_state, EigenState, SelfAdjointParam};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    XPower(u32),
    P,
    P2,
    DeltaAtOrigin,
}

/// Unit that restores dimensions to a dimensionless element value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElementUnit {
    /// x0^q
    LengthPower(u32),
    /// hbar / x0
    MomentumScale,
    /// m E0, which equals hbar^2 / (2 x0^2)
    MassEnergy,
    /// 1 / x0
    InverseLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixElement {
    pub bra_n: usize,
    pub ket_k: usize,
    pub operator: Operator,
    pub value: Complex64,
    pub unit: ElementUnit,
}

fn falling4(q: f64) -> f64 {
    q * (q - 1.0) * (q - 2.0) * (q - 3.0)
}

/// Right-hand side R(q) of the recursion identity.
pub fn recursion_rhs(sn: &EigenState, sk: &EigenState, q: u32) -> f64 {
    let zeta_ave = 0.5 * (sn.zeta + sk.zeta);
    let (bn, dn, bk, dk) = (sn.psi0, sn.dpsi0, sk.psi0, sk.dpsi0);
    match q {
        1 => -2.0 * dn * dk + 2.0 * zeta_ave * bn * bk,
        2 => 2.0 * (dn * bk + bn * dk),
        3 => -6.0 * bn * bk,
        _ => 0.0,
    }
}

/// LHS - RHS of the recursion identity with elements supplied by `element`.
/// Negative powers contribute nothing.
pub fn recursion_residual<F>(sn: &EigenState, sk: &EigenState, q: u32, element: F) -> f64
where
    F: Fn(u32) -> f64,
{
    let qf = q as f64;
    let zeta_ave = 0.5 * (sn.zeta + sk.zeta);
    let dz = sn.zeta - sk.zeta;
    let mut lhs = dz * dz * element(q);
    if q >= 1 {
        lhs -= 2.0 * qf * (2.0 * qf - 1.0) * element(q - 1);
    }
    if q >= 2 {
        lhs -= 4.0 * qf * (qf - 1.0) * zeta_ave * element(q - 2);
    }
    if q >= 4 {
        lhs += falling4(qf) * element(q - 4);
    }
    lhs - recursion_rhs(sn, sk, q)
}

/// <n| xi^j |k> for j = 0..=q.
pub fn x_power_table(sn: &EigenState, sk: &EigenState, q: u32) -> Vec<f64> {
    let mut t = Vec::with_capacity(q as usize + 1);
    let zeta_ave = 0.5 * (sn.zeta + sk.zeta);
    let (bn, dn, bk, dk) = (sn.psi0, sn.dpsi0, sk.psi0, sk.dpsi0);
    if sn.n == sk.n && sn.zeta == sk.zeta {
        let z = sn.zeta;
        let bd = bn * dn;
        t.push(1.0);
        if q >= 1 {
            t.push(-(bd + 2.0 * z) / 3.0);
        }
        if q >= 2 {
            t.push((bn * bn + 4.0 / 3.0 * z * (bd + 2.0 * z)) / 5.0);
        }
        for p in 3..=q {
            let j = p + 1;
            let jf = j as f64;
            let mut s = -4.0 * jf * (jf - 1.0) * z * t[(j - 2) as usize]
                - recursion_rhs(sn, sk, j);
            if j >= 4 {
                s += falling4(jf) * t[(j - 4) as usize];
            }
            t.push(s / (2.0 * jf * (2.0 * jf - 1.0)));
        }
    } else {
        let dz = sn.zeta - sk.zeta;
        let dz2 = dz * dz;
        let cross = dn * dk - zeta_ave * bn * bk;
        t.push(0.0);
        if q >= 1 {
            t.push(-2.0 * cross / dz2);
        }
        if q >= 2 {
            t.push(-24.0 * cross / (dz2 * dz2) + 2.0 * (dn * bk + bn * dk) / dz2);
        }
        for j in 3..=q {
            let jf = j as f64;
            let mut s = recursion_rhs(sn, sk, j)
                + 2.0 * jf * (2.0 * jf - 1.0) * t[(j - 1) as usize]
                + 4.0 * jf * (jf - 1.0) * zeta_ave * t[(j - 2) as usize];
            if j >= 4 {
                s -= falling4(jf) * t[(j - 4) as usize];
            }
            t.push(s / dz2);
        }
    }
    t
}

/// <n| xi^q |k> in units of x0^q.
pub fn x_power(sn: &EigenState, sk: &EigenState, q: u32) -> f64 {
    x_power_table(sn, sk, q)[q as usize]
}

/// <n| p |k> = -i hbar int psi_n psi_k' dx in units of hbar / x0, with p
/// acting on the ket.
pub fn p(sn: &EigenState, sk: &EigenState) -> Complex64 {
    let dz = sn.zeta - sk.zeta;
    let x1 = if dz == 0.0 { 0.0 } else { x_power(sn, sk, 1) };
    Complex64::new(0.0, -0.5 * (dz * x1 - sn.psi0 * sk.psi0))
}

/// p acting on the bra: conj(<k| p |n>) = i hbar int psi_n' psi_k dx. This is
/// the printed form -(i/2)[dz <xi> + b_n b_k], diagonal -i alpha^2 / 2.
pub fn p_left(sn: &EigenState, sk: &EigenState) -> Complex64 {
    let dz = sn.zeta - sk.zeta;
    let x1 = if dz == 0.0 { 0.0 } else { x_power(sn, sk, 1) };
    Complex64::new(0.0, -0.5 * (dz * x1 + sn.psi0 * sk.psi0))
}

/// <n| p^2 |k> in units of m E0, from p^2 = 2m (H - F0 x) acting on the ket.
pub fn p2(sn: &EigenState, sk: &EigenState) -> f64 {
    if sn.n == sk.n && sn.zeta == sk.zeta {
        -2.0 / 3.0 * (sn.zeta - sn.psi0 * sn.dpsi0)
    } else {
        -2.0 * x_power(sn, sk, 1)
    }
}

/// x0 <n| delta(x) |k> = psi_n(0) psi_k(0).
pub fn delta(sn: &EigenState, sk: &EigenState) -> f64 {
    sn.psi0 * sk.psi0
}

fn pair(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<(EigenState, EigenState)> {
    let sn = solve_state(lambda, n)?;
    let sk = if k == n { sn } else { solve_state(lambda, k)? };
    Ok((sn, sk))
}

pub fn x_power_element(lambda: SelfAdjointParam, n: usize, k: usize, q: u32) -> Result<f64> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(x_power(&sn, &sk, q))
}

pub fn p_element(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<Complex64> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(p(&sn, &sk))
}

pub fn p_element_left(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<Complex64> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(p_left(&sn, &sk))
}

pub fn p2_element(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<f64> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(p2(&sn, &sk))
}

pub fn delta_element(lambda: SelfAdjointParam, n: usize, k: usize) -> Result<f64> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(delta(&sn, &sk))
}

/// Element of `operator` between two states.
pub fn element_between(sn: &EigenState, sk: &EigenState, operator: Operator) -> MatrixElement {
    let (value, unit) = match operator {
        Operator::XPower(q) => (
            Complex64::new(x_power(sn, sk, q), 0.0),
            ElementUnit::LengthPower(q),
        ),
        Operator::P => (p(sn, sk), ElementUnit::MomentumScale),
        Operator::P2 => (Complex64::new(p2(sn, sk), 0.0), ElementUnit::MassEnergy),
        Operator::DeltaAtOrigin => (
            Complex64::new(delta(sn, sk), 0.0),
            ElementUnit::InverseLength,
        ),
    };
    MatrixElement {
        bra_n: sn.n,
        ket_k: sk.n,
        operator,
        value,
        unit,
    }
}

pub fn matrix_element(
    lambda: SelfAdjointParam,
    n: usize,
    k: usize,
    operator: Operator,
) -> Result<MatrixElement> {
    let (sn, sk) = pair(lambda, n, k)?;
    Ok(element_between(&sn, &sk, operator))
}
