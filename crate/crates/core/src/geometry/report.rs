use std::fmt;

use crate::classify::{label_point, SingularityLabel};
use crate::error::Result;
use crate::germs::FrontalNormalForm;
use crate::scalar::Scalar;

use super::curves::{si_curvature_limits, SiCurvatureLimits};
use super::eta::{bias_secondary, bias_secondary_series, eta_frame, BiasSeries};
use super::frenet::{trajectory_frenet, TrajectoryFrenet};
use super::parameter_sign;
use super::trajectory::solve_singular_u;

/// Which computation path produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Series,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Series => "series",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tagged<T> {
    pub value: T,
    pub method: Method,
}

impl<T> Tagged<T> {
    pub fn new(value: T, method: Method) -> Self {
        Tagged { value, method }
    }
}

/// Per-germ data shared by every point of a sweep.
#[derive(Debug, Clone)]
pub struct GermInvariants {
    pub limits: Option<SiCurvatureLimits>,
    pub kappa_g_abs: Option<Tagged<f64>>,
    pub kappa_n: Option<Tagged<f64>>,
    pub frenet: Option<TrajectoryFrenet>,
    pub series: BiasSeries,
}

pub fn germ_invariants<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<GermInvariants> {
    let series = bias_secondary_series(fnf)?;
    let limits = si_curvature_limits(fnf).ok();
    let c3 = fnf.c3.constant_term().to_f64();
    let (kappa_g_abs, kappa_n) = match &limits {
        Some(l) => (
            Some(Tagged::new(l.kappa_g_oracle.abs(), Method::Oracle)),
            Some(Tagged::new(l.kappa_n_oracle, Method::Oracle)),
        ),
        None if c3 != 0.0 => {
            let f21 = fnf.f21.constant_term().to_f64();
            let c1uu = 2.0 * fnf.c1.coeff([2, 0, 0]).to_f64();
            let f31 = fnf.f31.constant_term().to_f64();
            (
                Some(Tagged::new(((2.0 * f21 * c3 - c1uu) / c3).abs(), Method::ClosedForm)),
                Some(Tagged::new(2.0 * f31, Method::ClosedForm)),
            )
        }
        None => (None, None),
    };
    Ok(GermInvariants {
        limits,
        kappa_g_abs,
        kappa_n,
        frenet: trajectory_frenet(fnf).ok(),
        series,
    })
}

/// Invariants at one `S2` point.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub s_tilde: f64,
    pub u0: f64,
    pub label: SingularityLabel,
    pub r_b: Tagged<f64>,
    pub r_c: Tagged<f64>,
    pub kappa_g_abs: Option<Tagged<f64>>,
    pub kappa_n: Option<Tagged<f64>>,
    pub kappa: Option<Tagged<f64>>,
    pub tau: Option<Tagged<f64>>,
    pub kappa_prime: Option<Tagged<f64>>,
    pub ell_diagnostic: Option<String>,
}

/// One report per root of `c1(u, -sigma s~^2)`, ascending in `u`.
///
/// `r_b`, `r_c` come from the `eta~` iteration and fall back to the linear
/// series if the frame degenerates.
pub fn invariant_report<S: Scalar>(
    fnf: &FrontalNormalForm<S>,
    germ: &GermInvariants,
    s_tilde: f64,
) -> Result<Vec<InvariantReport>> {
    let sigma = parameter_sign(fnf)?;
    let s = -sigma * s_tilde * s_tilde;
    let closed = |v: Option<f64>| v.map(|x| Tagged::new(x, Method::ClosedForm));
    let (kappa, tau, kappa_prime) = match &germ.frenet {
        Some(t) => (closed(Some(t.kappa)), closed(t.tau), closed(t.kappa_prime)),
        None => (None, None, None),
    };
    let mut out = Vec::new();
    for u0 in solve_singular_u(fnf, s_tilde)? {
        let signed = if u0 < 0.0 { -s_tilde.abs() } else { s_tilde.abs() };
        let (sb, sc) = germ.series.eval(signed);
        let frame = eta_frame(fnf, u0, s_tilde);
        let direct = frame.as_ref().ok().and_then(|f| bias_secondary(f).ok());
        let (r_b, r_c) = match direct {
            Some((b, c)) => (Tagged::new(b, Method::Oracle), Tagged::new(c, Method::Oracle)),
            None => (Tagged::new(sb, Method::Series), Tagged::new(sc, Method::Series)),
        };
        out.push(InvariantReport {
            s_tilde,
            u0,
            label: label_point(fnf, u0, 0.0, s),
            r_b,
            r_c,
            kappa_g_abs: germ.kappa_g_abs,
            kappa_n: germ.kappa_n,
            kappa,
            tau,
            kappa_prime,
            ell_diagnostic: frame.ok().and_then(|f| f.ell_diagnostic),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::builtin_normal_form;

    #[test]
    fn fs_minus_report() {
        let f = FrontalNormalForm::from_s1(&builtin_normal_form("fs_minus", 8).unwrap()).unwrap();
        let g = germ_invariants(&f).unwrap();
        assert_eq!(g.kappa_g_abs.unwrap().method, Method::Oracle);
        let reps = invariant_report(&f, &g, 0.1).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps[0].u0 < 0.0 && reps[1].u0 > 0.0);
        for r in &reps {
            assert_eq!(r.r_c.method, Method::Oracle);
            assert!((r.r_c.value + 45.0 * 2f64.sqrt()).abs() < 1e-9);
            assert_eq!(r.label.code(), "cuspidal_cross_cap");
            assert!(r.kappa_prime.is_none());
        }
    }
}
