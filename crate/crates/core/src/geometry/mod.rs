//! Invariants of deformations of cuspidal `S_1^±` singularities.
//!
//! Every quantity has a closed-form path (coefficient formulas on the normal
//! form) and an independent oracle path (jet-level implicit solves, classical
//! curvature formulas, extrapolation). [`Method`] records which path produced
//! a number.

mod curves;
mod eta;
mod frenet;
mod report;
mod trajectory;

pub use curves::{
    branch_curvatures_s0, even_curve_curvatures, si_curvature_at, si_curvature_limits,
    trace_self_intersection, BranchCurvaturesS0, SelfIntersectionBranch, SiCurvatureLimits,
};
pub use eta::{bias_secondary, bias_secondary_series, eta_frame, BiasSeries, EtaFrame};
pub use frenet::{
    recover_f24_f34_corrected, recover_f24_f34_printed, trajectory_frenet, FrenetInputs,
    TrajectoryFrenet,
};
pub use report::{germ_invariants, invariant_report, GermInvariants, InvariantReport, Method, Tagged};
pub use trajectory::{solve_singular_u, trajectory_jet, trajectory_series, TrajectorySeries};

use crate::error::Result;
use crate::germs::{D2Sign, FrontalNormalForm};
use crate::jets::{JetVec, Var};
use crate::scalar::Scalar;

/// `+1` when `d2(0) > 0`, `-1` when `d2(0) < 0`; singular points sit at `s = -sigma s~^2`.
pub fn parameter_sign<S: Scalar>(fnf: &FrontalNormalForm<S>) -> Result<f64> {
    let e = fnf.expand_c1()?;
    e.require_d20()?;
    Ok(if e.sign == D2Sign::Positive { 1.0 } else { -1.0 })
}

/// Components of `f` re-expanded about `(u0, 0, s)` with the parameter frozen,
/// as jets in `(du, v)`.
pub(crate) fn frozen_at(comps: &JetVec<f64>, u0: f64, s: f64) -> JetVec<f64> {
    comps
        .clone()
        .map(|c| c.translate([u0, 0.0, s]).restrict_zero(Var::S))
}

pub(crate) fn values(v: &JetVec<f64>) -> [f64; 3] {
    [*v[0].constant_term(), *v[1].constant_term(), *v[2].constant_term()]
}

