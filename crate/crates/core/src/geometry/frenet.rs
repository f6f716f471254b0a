use crate::error::{Error, Result};
use crate::germs::FrontalNormalForm;
use crate::jets::{cross, det3, differentiate_vec, dot, Jet, JetVec, Var};
use crate::scalar::Scalar;

use super::trajectory::trajectory_jet;
use super::parameter_sign;

/// Curvature data of the trajectory `gamma(s~) = f(u(s~), 0, -s~^2)` at `s~ = 0`.
///
/// `kappa_prime` and `tau` are `None` when `kappa = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryFrenet {
    pub kappa: f64,
    pub kappa_prime: Option<f64>,
    pub tau: Option<f64>,
    /// The alternative closed forms kept for comparison.
    pub kappa_prime_printed: Option<f64>,
    pub tau_printed: Option<f64>,
    /// Frenet formulas applied to the jet of `gamma`.
    pub oracle_kappa: f64,
    pub oracle_kappa_prime: Option<f64>,
    pub oracle_tau: Option<f64>,
}

struct Coeffs {
    f21: f64,
    f31: f64,
    f21p: f64,
    f31p: f64,
    f24: f64,
    f34: f64,
    d20: f64,
    /// `sign(d2(0)) d20^2 = d2(0)`.
    q: f64,
}

fn coeffs<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<Coeffs> {
    let e = fnf.expand_c1()?;
    let d20 = e.require_d20()?;
    let f = |j: &Jet<S>, ex: [usize; 3]| j.coeff(ex).to_f64();
    Ok(Coeffs {
        f21: f(&fnf.f21, [0, 0, 0]),
        f31: f(&fnf.f31, [0, 0, 0]),
        f21p: f(&fnf.f21, [1, 0, 0]),
        f31p: f(&fnf.f31, [1, 0, 0]),
        f24: f(&fnf.f24, [0, 0, 0]),
        f34: f(&fnf.f34, [0, 0, 0]),
        d20,
        q: e.d2_at_0.to_f64(),
    })
}

fn frenet_oracle<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<(f64, Option<f64>, Option<f64>)> {
    let sigma = parameter_sign(fnf)?;
    let u = trajectory_jet(fnf)?;
    let m = u.order();
    let comps = fnf.assemble()?.to_f64().into_components();
    let inner = [u, Jet::zero(m), Jet::monomial([2, 0, 0], -sigma, m)];
    let gamma: JetVec<f64> = [
        comps[0].compose(&inner)?,
        comps[1].compose(&inner)?,
        comps[2].compose(&inner)?,
    ];
    let g1 = differentiate_vec(&gamma, Var::U);
    let g2 = differentiate_vec(&g1, Var::U);
    let g3 = differentiate_vec(&g2, Var::U);
    let c = cross(&g1, &g2);
    let c2 = dot(&c, &c);
    let c2_0 = *c2.constant_term();
    if c2_0.abs() < 1e-24 {
        return Ok((0.0, None, None));
    }
    let speed2 = dot(&g1, &g1);
    let inv_speed = speed2.sqrt_unit()?.invert_unit()?;
    let kappa = &(&c2.sqrt_unit()? * &inv_speed) * &(&inv_speed * &inv_speed);
    let tau = *det3(&g1, &g2, &g3).constant_term() / c2_0;
    Ok((*kappa.constant_term(), Some(kappa.coeff([1, 0, 0])), Some(tau)))
}

pub fn trajectory_frenet<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<TrajectoryFrenet> {
    let c = coeffs(fnf)?;
    let r = c.f21.hypot(c.f31);
    let kappa = 2.0 * r;
    let (oracle_kappa, oracle_kappa_prime, oracle_tau) = frenet_oracle(fnf)?;
    if r == 0.0 {
        return Ok(TrajectoryFrenet {
            kappa,
            kappa_prime: None,
            tau: None,
            kappa_prime_printed: None,
            tau_printed: None,
            oracle_kappa,
            oracle_kappa_prime,
            oracle_tau,
        });
    }
    let Coeffs { f21, f31, f21p, f31p, f24, f34, d20, q } = c;
    let kp = 6.0 * (-q * (f21 * f24 + f31 * f34) + f21 * f21p + f31 * f31p) / (d20 * r);
    let tau = 3.0 * (q * (f24 * f31 - f21 * f34) + f21 * f31p - f21p * f31) / (r * r);
    let kp_printed =
        6.0 * f21 * d20 * f24 / r + 6.0 * f31 * d20 * f34 / r + 6.0 * (f21 * f21p + f31 * f31p) / (d20 * r);
    let tau_printed = 3.0 * f31 * d20 * d20 * f24 / r
        + 6.0 * f21 * d20 * d20 * f34 / r
        + 3.0 * (-f31 * f21p + f21 * f31p) / (d20 * r);
    Ok(TrajectoryFrenet {
        kappa,
        kappa_prime: Some(kp),
        tau: Some(tau),
        kappa_prime_printed: Some(kp_printed),
        tau_printed: Some(tau_printed),
        oracle_kappa,
        oracle_kappa_prime,
        oracle_tau,
    })
}

/// Inputs of the `(f24(0,0), f34(0,0))` recovery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetInputs {
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
    pub f21: f64,
    pub f31: f64,
    pub f21_u: f64,
    pub f31_u: f64,
    pub d20: f64,
}

/// Both quotients with the `3 kappa (f31)_u` term in each numerator.
pub fn recover_f24_f34_printed(x: &FrenetInputs) -> Result<(f64, f64)> {
    recover(x, x.f31_u)
}

/// As [`recover_f24_f34_printed`] but with `(f21)_u` in the `f24` numerator.
pub fn recover_f24_f34_corrected(x: &FrenetInputs) -> Result<(f64, f64)> {
    recover(x, x.f21_u)
}

fn recover(x: &FrenetInputs, f24_term: f64) -> Result<(f64, f64)> {
    if x.kappa == 0.0 {
        return Err(Error::ZeroCurvature);
    }
    let den = 3.0 * x.kappa * x.d20 * x.d20;
    let f24 = (x.kappa * x.tau * x.f31 - x.f21 * x.d20 * x.kappa_prime + 3.0 * x.kappa * f24_term) / den;
    let f34 = -(x.kappa * x.tau * x.f21 + x.f31 * x.d20 * x.kappa_prime - 3.0 * x.kappa * x.f31_u) / den;
    Ok((f24, f34))
}
