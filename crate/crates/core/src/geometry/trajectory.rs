use crate::error::{Error, Result};
use crate::frontal::singular_sets;
use crate::germs::{D2Sign, FrontalNormalForm};
use crate::jets::{Jet, Var};
use crate::scalar::Scalar;

use super::parameter_sign;

/// `u(s~) = alpha1 s~ + alpha2 s~^2 + alpha3 s~^3 + O(s~^4)` for the singular point
/// on the `s~ > 0` side.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySeries<S: Scalar> {
    pub alpha: [f64; 3],
    /// Exact coefficients when `sqrt|d2(0)|` is representable in the scalar tower.
    pub alpha_exact: Option<[S; 3]>,
    pub sign: D2Sign,
    /// Heuristic radius in `s~` where the cubic truncation is meaningful.
    pub radius: f64,
}

impl<S: Scalar> TrajectorySeries<S> {
    pub fn eval(&self, s_tilde: f64) -> f64 {
        let [a1, a2, a3] = self.alpha;
        s_tilde * (a1 + s_tilde * (a2 + s_tilde * a3))
    }
}

fn alphas<S: Scalar>(d20: &S, q: &S, d1: &S, d2s: &S, d3: &S, d4: &S) -> [S; 3] {
    let two = S::from_i64(2);
    let a1 = S::one() / d20.clone();
    let a2 = (d1.clone() * q.clone() - d3.clone()) / (two * q.clone() * q.clone());
    let a3 = ((d1.clone() * d1.clone() + S::from_i64(4) * d2s.clone()) * q.clone() * q.clone()
        - S::from_i64(2) * (S::from_i64(3) * d1.clone() * d3.clone() + S::from_i64(2) * d4.clone()) * q.clone()
        + S::from_i64(5) * d3.clone() * d3.clone())
        / (S::from_i64(8) * q.clone() * q.clone() * q.clone() * d20.clone());
    [a1, a2, a3]
}

/// Closed-form cubic expansion of the `S2` trajectory.
///
/// For `d2(0) < 0` the germ is mapped to `-c1(u, -s)`, which has `d2(0) > 0`,
/// flips the signs of `d3`, `d4`, and keeps `d1(0)`, `(d2)_s(0)`; singular
/// points then sit at `s = +s~^2`.
pub fn trajectory_series<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<TrajectorySeries<S>> {
    let e = fnf.expand_c1()?;
    let d20 = e.require_d20()?;
    let flip = if e.sign == D2Sign::Negative { -S::one() } else { S::one() };
    let q = e.d2_at_0.abs();
    let d1 = e.d1.constant_term().clone();
    let d2s = e.d2.coeff([0, 0, 1]);
    let d3 = flip.clone() * e.d3.constant_term().clone();
    let d4 = flip * e.d4.constant_term().clone();
    let to = |x: &S| x.to_f64();
    let alpha_f = alphas(&d20, &to(&q), &to(&d1), &to(&d2s), &to(&d3), &to(&d4));
    let alpha_exact = q
        .sqrt_exact()
        .filter(|_| S::EXACT)
        .map(|r| alphas(&r, &q, &d1, &d2s, &d3, &d4));
    let alpha = match &alpha_exact {
        Some(a) => [a[0].to_f64(), a[1].to_f64(), a[2].to_f64()],
        None => alpha_f,
    };
    let ratio = |num: f64, den: f64| if den == 0.0 { f64::INFINITY } else { (num / den).abs() };
    let radius = ratio(alpha[0], alpha[1])
        .min(ratio(alpha[0], alpha[2]).sqrt())
        .min(1.0)
        * 0.5;
    Ok(TrajectorySeries {
        alpha,
        alpha_exact,
        sign: e.sign,
        radius,
    })
}

/// `u(t)` as a jet in `t` (carried in the `u` slot) solving `c1(u(t), -sigma t^2) = 0`,
/// by Newton iteration on `alpha(t) = u(t)/t` at jet level.
pub fn trajectory_jet<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<Jet<f64>> {
    let sigma = parameter_sign(fnf)?;
    let d20 = fnf.expand_c1()?.d20;
    let c1 = fnf.c1.to_f64();
    let m = c1.order();
    if m < 3 {
        return Err(Error::OrderTooLow { order: fnf.order, required: 6 });
    }
    let c1u = c1.differentiate(Var::U).with_order(m);
    let t = Jet::<f64>::var(Var::U, m);
    let s_in = Jet::monomial([2, 0, 0], -sigma, m);
    let zero = Jet::<f64>::zero(m);
    let mut alpha = Jet::constant(1.0 / d20, m - 2);
    for _ in 0..=m {
        let inner = [&t * &alpha.with_order(m), zero.clone(), s_in.clone()];
        let g = c1.compose(&inner)?.divide_by(Var::U)?.divide_by(Var::U)?;
        let dg = c1u.compose(&inner)?.divide_by(Var::U)?.with_order(m - 2);
        let step = &g * &dg.invert_unit()?;
        alpha = (&alpha - &step).truncate(m - 2);
        if step.is_negligible() && step.terms().all(|(_, c)| c.abs() < 1e-15) {
            break;
        }
    }
    Ok((&t * &alpha.with_order(m)).truncate(m - 1))
}

/// Roots of `c1(u, -sigma s~^2) = 0`, ascending, with residual below `1e-12`.
pub fn solve_singular_u<S: Scalar>(fnf: &FrontalNormalForm<S>, s_tilde: f64) -> Result<Vec<f64>> {
    let sigma = parameter_sign(fnf)?;
    let s = -sigma * s_tilde * s_tilde;
    let roots = singular_sets(fnf, s)?.s2;
    let c1 = fnf.c1.to_f64();
    for r in &roots {
        let res = c1.evaluate_f64([*r, 0.0, s]).abs();
        if res > 1e-12 {
            return Err(Error::NoConvergence(format!(
                "|c1(u, s)| = {res:e} at u = {r}"
            )));
        }
    }
    Ok(roots)
}

/// The root on the `s~` side of the trajectory (`u(s~) ~ s~ / d20`).
pub(crate) fn root_for<S: Scalar>(fnf: &FrontalNormalForm<S>, s_tilde: f64) -> Result<f64> {
    let roots = solve_singular_u(fnf, s_tilde)?;
    let guess = s_tilde / fnf.expand_c1()?.d20;
    roots
        .into_iter()
        .min_by(|a, b| (a - guess).abs().total_cmp(&(b - guess).abs()))
        .ok_or_else(|| Error::NoConvergence(format!("no S2 point at s~ = {s_tilde}")))
}
