use crate::error::{Error, Result};
use crate::frontal::unit_normal_of;
use crate::germs::FrontalNormalForm;
use crate::jets::{Jet, JetVec, Var};
use crate::numeric::{det, dot, newton, norm, richardson};
use crate::scalar::Scalar;

use super::trajectory::root_for;
use super::{frozen_at, parameter_sign, values};

/// `i(u, v, s) = c1(u, s) + v^2 c3(u, v^2, s)` as an `f64` jet.
fn identifier_i<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Jet<f64> {
    let n = fnf.c1.order();
    let c3 = fnf.c3_lifted().to_f64().with_order(n).shift_up(Var::V, 2);
    &fnf.c1.to_f64() + &c3
}

/// One half of the self-intersection curve through the `S2` point `(u0, 0)`.
#[derive(Debug, Clone)]
pub struct SelfIntersectionBranch {
    pub u0: f64,
    pub s: f64,
    /// `u(v) - u0` as a jet in `v` (even).
    pub du: Jet<f64>,
    pub u_vv: f64,
    pub u_vvvv: f64,
    pub u_vv_closed: f64,
    pub u_vvvv_closed: f64,
    i: Jet<f64>,
}

impl SelfIntersectionBranch {
    /// `u` on the branch at `v`, Newton-polished from the jet guess.
    pub fn solve_at(&self, v: f64) -> Result<f64> {
        let iu = self.i.differentiate(Var::U);
        let guess = self.u0 + self.du.evaluate_f64([0.0, v, 0.0]);
        let u = newton(
            |u| {
                (
                    self.i.evaluate_f64([u, v, self.s]),
                    iu.evaluate_f64([u, v, self.s]),
                )
            },
            guess,
            1e-15,
            60,
        )?;
        let d = iu.evaluate_f64([u, v, self.s]);
        if d.abs() < 1e-12 {
            return Err(Error::BranchSingular { v });
        }
        let r = self.i.evaluate_f64([u, v, self.s]);
        if r.abs() > 1e-12 {
            return Err(Error::NoConvergence(format!("|i| = {r:e} at v = {v}")));
        }
        Ok(u)
    }
}

/// Solves `i(u0 + du(v), v, s) = 0` at jet level and reports `u_vv`, `u_vvvv`
/// alongside their closed forms in `c1`, `c3`.
pub fn trace_self_intersection<S: Scalar>(
    fnf: &FrontalNormalForm<S>,
    s: f64,
    u0: f64,
) -> Result<SelfIntersectionBranch> {
    let i = identifier_i(fnf);
    let local = i.translate([u0, 0.0, s]).restrict_zero(Var::S);
    let m = local.order();
    let iu = local.differentiate(Var::U).with_order(m);
    let iu0 = *iu.constant_term();
    if iu0.abs() < 1e-12 {
        return Err(Error::BranchSingular { v: 0.0 });
    }
    let v = Jet::<f64>::var(Var::V, m);
    let zero = Jet::<f64>::zero(m);
    let mut du = Jet::<f64>::zero(m);
    for _ in 0..=m {
        let inner = [du.clone(), v.clone(), zero.clone()];
        let r = local.compose(&inner)?.without_constant();
        let d = iu.compose(&inner)?;
        let step = &r * &d.invert_unit()?;
        du = &du - &step;
        if step.terms().all(|(_, c)| c.abs() < 1e-16) {
            break;
        }
    }
    let u_vv = 2.0 * du.coeff([0, 2, 0]);
    let u_vvvv = 24.0 * du.coeff([0, 4, 0]);

    let c1 = fnf.c1.to_f64();
    let c3 = fnf.c3.to_f64();
    let at = [u0, 0.0, s];
    let c1u = c1.differentiate(Var::U).evaluate_f64(at);
    let c1uu = c1.differentiate_n(Var::U, 2).evaluate_f64(at);
    let c3v = c3.evaluate_f64(at);
    let c3u = c3.differentiate(Var::U).evaluate_f64(at);
    let c3w = c3.differentiate(Var::V).evaluate_f64(at);
    let u_vv_closed = -2.0 * c3v / c1u;
    let u_vvvv_closed =
        -12.0 * (c1uu * c3v * c3v - 2.0 * c1u * c3u * c3v + 2.0 * c1u * c1u * c3w) / c1u.powi(3);
    Ok(SelfIntersectionBranch {
        u0,
        s,
        du,
        u_vv,
        u_vvvv,
        u_vv_closed,
        u_vvvv_closed,
        i,
    })
}

/// Geodesic and normal curvature at `v = 0` of an even curve `c(v)` on a
/// surface with unit normal `nu0` there, taken from the side `sign(v) = eps`.
pub fn even_curve_curvatures(c: &JetVec<f64>, nu0: [f64; 3], eps: f64) -> Result<(f64, f64)> {
    let c2: [f64; 3] = std::array::from_fn(|k| 2.0 * c[k].coeff([0, 2, 0]));
    let c4: [f64; 3] = std::array::from_fn(|k| 24.0 * c[k].coeff([0, 4, 0]));
    let len = norm(c2);
    if len < 1e-14 {
        return Err(Error::FlatCurve);
    }
    let kg = eps * det(c2, c4, nu0) / (3.0 * len.powi(3));
    let kn = dot(c4, nu0) / (3.0 * len * len);
    Ok((kg, kn))
}

/// Curvatures of the self-intersection curve at the `S2` point `u(s~)`.
pub fn si_curvature_at<S: Scalar>(fnf: &FrontalNormalForm<S>, s_tilde: f64) -> Result<(f64, f64)> {
    let sigma = parameter_sign(fnf)?;
    let s = -sigma * s_tilde * s_tilde;
    let u0 = root_for(fnf, s_tilde)?;
    let branch = trace_self_intersection(fnf, s, u0)?;
    let comps = fnf.assemble()?.to_f64().into_components();
    let local = frozen_at(&comps, u0, s);
    let nu = unit_normal_of(&local)?;
    let m = local[0].order();
    let inner = [
        branch.du.with_order(m),
        Jet::var(Var::V, m),
        Jet::zero(m),
    ];
    let curve: JetVec<f64> = [
        local[0].compose(&inner)?,
        local[1].compose(&inner)?,
        local[2].compose(&inner)?,
    ];
    even_curve_curvatures(&curve, values(&nu.nu), 1.0)
}

/// Limits of the self-intersection curvatures as `s~ -> 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiCurvatureLimits {
    /// `(-2 f21 c3 + (c1)_uu) / c3` at the origin (branch sign `+`).
    pub kappa_g_closed: f64,
    /// `2 f31(0)`.
    pub kappa_n_closed: f64,
    /// Richardson extrapolation of [`si_curvature_at`].
    pub kappa_g_oracle: f64,
    pub kappa_n_oracle: f64,
    /// Size of the last Richardson corrections, `(g, n)`.
    pub correction: (f64, f64),
}

fn origin_data<S: Scalar>(fnf: &FrontalNormalForm<S>) -> (f64, f64, f64, f64) {
    let f21 = fnf.f21.constant_term().to_f64();
    let f31 = fnf.f31.constant_term().to_f64();
    let c1uu = 2.0 * fnf.c1.coeff([2, 0, 0]).to_f64();
    let c3 = fnf.c3.constant_term().to_f64();
    (f21, f31, c1uu, c3)
}

pub fn si_curvature_limits<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<SiCurvatureLimits> {
    let (f21, f31, c1uu, c3) = origin_data(fnf);
    if c1uu.abs() < 1e-14 || c3.abs() < 1e-14 {
        return Err(Error::DegenerateBranch(format!(
            "(c1)_uu(0,0) = {c1uu}, c3(0,0,0) = {c3}"
        )));
    }
    let d20 = fnf.expand_c1()?.require_d20()?;
    let h0 = 0.005 * d20.min(1.0);
    let mut gs = Vec::with_capacity(5);
    let mut ns = Vec::with_capacity(5);
    for k in 0..5 {
        let (g, n) = si_curvature_at(fnf, h0 / 2f64.powi(k))?;
        gs.push(g);
        ns.push(n);
    }
    let powers = [1.0, 2.0, 3.0, 4.0];
    let (g, cg) = richardson(&gs, 2.0, &powers);
    let (n, cn) = richardson(&ns, 2.0, &powers);
    Ok(SiCurvatureLimits {
        kappa_g_closed: (-2.0 * f21 * c3 + c1uu) / c3,
        kappa_n_closed: 2.0 * f31,
        kappa_g_oracle: g,
        kappa_n_oracle: n,
        correction: (cg, cn),
    })
}

/// Curvatures of the two self-intersection branches of `f(., ., 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchCurvaturesS0 {
    /// `(2 f21 c3 - (c1)_uu) / c3` at the origin.
    pub kappa_g: f64,
    /// `2 f31(0)`.
    pub kappa_n: f64,
    /// `(v')^2 = -(c1)_uu / (2 c3)`.
    pub slope_sq: f64,
    /// `(kappa_g, kappa_n)` from the parametrized branches `v = +-u mu(u)`.
    pub direct: [(f64, f64); 2],
}

/// Branch `v = u mu(u)` with `mu(0) = mu0` solving
/// `c1(u, 0)/u^2 + mu^2 c3(u, u^2 mu^2, 0) = 0` at jet level.
fn branch_slope(c1: &Jet<f64>, c3: &Jet<f64>, mu0: f64) -> Result<Jet<f64>> {
    let a = c1.restrict_zero(Var::S).divide_by(Var::U)?.divide_by(Var::U)?;
    let m = a.order();
    let c3 = c3.restrict_zero(Var::S).with_order(m);
    let c3w = c3.differentiate(Var::V).with_order(m);
    let u = Jet::<f64>::var(Var::U, m);
    let u2 = &u * &u;
    let zero = Jet::<f64>::zero(m);
    let mut mu = Jet::constant(mu0, m);
    for _ in 0..=m {
        let mu2 = &mu * &mu;
        let inner = [u.clone(), &u2 * &mu2, zero.clone()];
        let c3b = c3.compose(&inner)?;
        let c3wb = c3w.compose(&inner)?;
        let g = &a + &(&mu2 * &c3b);
        let gm = &(&mu * &c3b).scale(&2.0) + &(&(&(&u2 * &mu2) * &mu) * &c3wb).scale(&2.0);
        let step = &g * &gm.invert_unit()?;
        mu = &mu - &step;
        if step.terms().all(|(_, c)| c.abs() < 1e-16) {
            break;
        }
    }
    Ok(mu)
}

pub fn branch_curvatures_s0<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<BranchCurvaturesS0> {
    let (f21, f31, c1uu, c3) = origin_data(fnf);
    if !(c1uu * c3 < 0.0) {
        return Err(Error::NoRealBranch);
    }
    let slope_sq = -c1uu / (2.0 * c3);
    let comps = fnf.assemble()?.to_f64().into_components();
    let nu = unit_normal_of(&comps)?;
    let nu0 = values(&nu.nu);
    let c1 = fnf.c1.to_f64();
    let c3j = fnf.c3.to_f64();
    let mut direct = [(0.0, 0.0); 2];
    for (slot, sign) in direct.iter_mut().zip([1.0, -1.0]) {
        let mu = branch_slope(&c1, &c3j, sign * slope_sq.sqrt())?;
        let m = mu.order();
        let u = Jet::<f64>::var(Var::U, m);
        let inner = [u.clone(), &u * &mu, Jet::zero(m)];
        let curve: JetVec<f64> = [
            comps[0].compose(&inner)?,
            comps[1].compose(&inner)?,
            comps[2].compose(&inner)?,
        ];
        let d1: [f64; 3] = std::array::from_fn(|k| curve[k].coeff([1, 0, 0]));
        let d2: [f64; 3] = std::array::from_fn(|k| 2.0 * curve[k].coeff([2, 0, 0]));
        let speed = norm(d1);
        let kg = det(d1, d2, nu0) / speed.powi(3);
        let kn = dot(d2, nu0) / (speed * speed);
        *slot = (kg, kn);
    }
    Ok(BranchCurvaturesS0 {
        kappa_g: (2.0 * f21 * c3 - c1uu) / c3,
        kappa_n: 2.0 * f31,
        slope_sq,
        direct,
    })
}
