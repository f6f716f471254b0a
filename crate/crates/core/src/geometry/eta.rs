use crate::error::{Error, Result};
use crate::germs::FrontalNormalForm;
use crate::jets::{differentiate_vec, dot, Jet, JetVec, Var};
use crate::numeric::{cross, det, norm};
use crate::scalar::Scalar;

use super::{frozen_at, parameter_sign, values};

/// The null vector field `eta~ = (v a1 + v^2 a2) d/du + d/dv` at an `S2` point,
/// and the iterates `eta~^k f` there.
#[derive(Debug, Clone)]
pub struct EtaFrame {
    pub u0: f64,
    pub s_tilde: f64,
    pub s: f64,
    /// `a1`, `a2` as jets in `u - u0`.
    pub a1: Jet<f64>,
    pub a2: Jet<f64>,
    pub f_u: [f64; 3],
    /// `eta~^k f` at the point for `k = 1..=5`.
    pub iterates: [[f64; 3]; 5],
    /// Largest coefficient of `eta~ f`, `<f_u, eta~^2 f>`, `<f_u, eta~^3 f>` on `v = 0`.
    pub residuals: [f64; 3],
    /// Least-squares `ell` in `eta~^3 f = ell eta~^2 f`.
    pub ell: f64,
    /// `-3 s~^4 f24 f34 / (1 - s~^4 f24 c0 f34 + s~^4 f34^2)` at `u = 0`.
    pub ell_printed: f64,
    /// Set when the two values of `ell` differ by more than `1e-9`.
    pub ell_diagnostic: Option<String>,
}

fn max_abs(j: &Jet<f64>) -> f64 {
    j.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
}

fn apply_eta(g: &JetVec<f64>, coef: &Jet<f64>) -> JetVec<f64> {
    let gu = differentiate_vec(g, Var::U);
    let gv = differentiate_vec(g, Var::V);
    std::array::from_fn(|k| &(coef * &gu[k]) + &gv[k])
}

pub fn eta_frame<S: Scalar>(fnf: &FrontalNormalForm<S>, u0: f64, s_tilde: f64) -> Result<EtaFrame> {
    let sigma = parameter_sign(fnf)?;
    let s = -sigma * s_tilde * s_tilde;
    let residual = fnf.c1.to_f64().evaluate_f64([u0, 0.0, s]);
    if residual.abs() > 1e-10 {
        return Err(Error::NotInS2 { residual });
    }
    let comps = fnf.assemble()?.to_f64().into_components();
    let f = frozen_at(&comps, u0, s);
    let n = f[0].order();
    let fu = differentiate_vec(&f, Var::U);
    let fv = differentiate_vec(&f, Var::V);
    let fvv = differentiate_vec(&fv, Var::V);
    let fvvv = differentiate_vec(&fvv, Var::V);
    let on_line = |v: &JetVec<f64>| v.clone().map(|c| c.restrict_zero(Var::V));
    let fu0 = on_line(&fu);
    let inv = dot(&fu0, &fu0).invert_unit()?;
    let a1 = (&dot(&on_line(&fvv), &fu0) * &inv).scale(&-1.0);
    let a2 = (&dot(&on_line(&fvvv), &fu0) * &inv).scale(&-0.5);

    let v = Jet::<f64>::var(Var::V, n);
    let coef = &(&v * &a1.with_order(n)) + &(&(&v * &v) * &a2.with_order(n));
    let mut iters: Vec<JetVec<f64>> = Vec::with_capacity(5);
    let mut cur = f.clone();
    for _ in 0..5 {
        cur = apply_eta(&cur, &coef);
        iters.push(cur.clone());
    }
    let residuals = [
        iters[0].iter().map(|c| max_abs(&c.restrict_zero(Var::V))).fold(0.0, f64::max),
        max_abs(&dot(&fu, &iters[1]).restrict_zero(Var::V)),
        max_abs(&dot(&fu, &iters[2]).restrict_zero(Var::V)),
    ];
    let iterates: [[f64; 3]; 5] = std::array::from_fn(|k| values(&iters[k]));
    let e2 = iterates[1];
    let e3 = iterates[2];
    let ell = crate::numeric::dot(e3, e2) / crate::numeric::dot(e2, e2);

    let at_axis = [0.0, 0.0, s];
    let f24 = fnf.f24.to_f64().evaluate_f64(at_axis);
    let f34 = fnf.f34.to_f64().evaluate_f64(at_axis);
    let c0 = fnf.c0.to_f64().evaluate_f64(at_axis);
    let st4 = s_tilde.powi(4);
    let ell_printed = -3.0 * st4 * f24 * f34 / (1.0 - st4 * f24 * c0 * f34 + st4 * f34 * f34);
    let ell_diagnostic = ((ell - ell_printed).abs() > 1e-9).then(|| {
        format!("least-squares ell = {ell:e}, printed closed form = {ell_printed:e}")
    });
    Ok(EtaFrame {
        u0,
        s_tilde,
        s,
        a1,
        a2,
        f_u: values(&fu),
        iterates,
        residuals,
        ell,
        ell_printed,
        ell_diagnostic,
    })
}

/// `(r_b, r_c)` from the iterates of `eta~`.
pub fn bias_secondary(frame: &EtaFrame) -> Result<(f64, f64)> {
    let fu = frame.f_u;
    let [_, e2, _, e4, e5] = frame.iterates;
    let w = norm(cross(fu, e2));
    if w < 1e-14 {
        return Err(Error::DegenerateFrame);
    }
    let fu2 = crate::numeric::dot(fu, fu);
    let rb = fu2 * det(fu, e2, e4) / w.powi(3);
    let mix: [f64; 3] = std::array::from_fn(|k| 3.0 * e5[k] - 10.0 * frame.ell * e4[k]);
    let rc = fu2.powf(1.25) * det(fu, e2, mix) / w.powf(3.5);
    Ok((rb, rc))
}

/// Linear expansions `r = r0 + r1 s~ + O(s~^2)` along the `s~ > 0` root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasSeries {
    pub rb0: f64,
    pub rb1: f64,
    pub rc0: f64,
    pub rc1: f64,
}

impl BiasSeries {
    /// `(r_b, r_c)` at signed `s~`; the root with `u < 0` corresponds to `-s~`.
    pub fn eval(&self, s_tilde: f64) -> (f64, f64) {
        (self.rb0 + self.rb1 * s_tilde, self.rc0 + self.rc1 * s_tilde)
    }
}

pub fn bias_secondary_series<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<BiasSeries> {
    let d20 = fnf.expand_c1()?.require_d20()?;
    let f21 = fnf.f21.constant_term().to_f64();
    let c0u = fnf.c0.coeff([1, 0, 0]).to_f64();
    let c2 = fnf.c2.constant_term().to_f64();
    let c2u = fnf.c2.coeff([1, 0, 0]).to_f64();
    let c3 = fnf.c3.constant_term().to_f64();
    let c3u = fnf.c3.coeff([1, 0, 0]).to_f64();
    let k = 45.0 * std::f64::consts::SQRT_2;
    Ok(BiasSeries {
        rb0: 6.0 * c2,
        rb1: 6.0 * (-2.0 * f21 * c0u + c2u) / d20,
        rc0: k * c3,
        rc1: k * c3u / d20,
    })
}
