//! Unit normals, the singularity identifier, and minimal frontalization.

use crate::error::{Error, Result};
use crate::germs::{D2Sign, FrontalNormalForm, MapGerm, NormalFormS1};
use crate::jets::{cross, det3, differentiate_vec, dot, Jet, JetVec, Var};
use crate::numeric::newton;
use crate::scalar::Scalar;

/// Unit normal along a frontal, with its normalization residual `|nu|^2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalField<S: Scalar> {
    pub nu: JetVec<S>,
    pub norm_residual: Jet<S>,
}

impl<S: Scalar> NormalField<S> {
    pub fn at_origin(&self) -> [f64; 3] {
        std::array::from_fn(|i| self.nu[i].constant_term().to_f64())
    }
}

fn first_nonzero_order<S: Scalar>(j: &Jet<S>) -> usize {
    j.terms()
        .filter(|(_, c)| !c.is_negligible())
        .map(|(e, _)| e[0] + e[1] + e[2])
        .min()
        .unwrap_or(0)
}

fn max_abs<S: Scalar>(j: &Jet<S>) -> f64 {
    j.terms().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max)
}

/// `nu = (f_u x f_v / v) / |f_u x f_v / v|` for maps whose singular set is `{v = 0}`.
///
/// Works on any component triple (the origin condition is not needed), so the
/// geometry code can reuse it on germs re-expanded about other points.
pub fn unit_normal_of<S: Scalar>(comps: &JetVec<S>) -> Result<NormalField<S>> {
    let fu = differentiate_vec(comps, Var::U);
    let fv = differentiate_vec(comps, Var::V);
    let n = cross(&fu, &fv);
    let mut reduced = Vec::with_capacity(3);
    for c in &n {
        let on_s = c.restrict_zero(Var::V);
        if !on_s.is_negligible() {
            return Err(Error::NotFrontal(first_nonzero_order(&on_s)));
        }
        reduced.push(c.divide_by(Var::V)?);
    }
    let reduced: JetVec<S> = [reduced[0].clone(), reduced[1].clone(), reduced[2].clone()];
    let len2 = dot(&reduced, &reduced);
    let inv_len = len2.sqrt_unit()?.invert_unit()?;
    let nu: JetVec<S> = reduced.map(|c| &c * &inv_len);
    let small = |j: &Jet<S>| {
        if S::EXACT {
            j.is_negligible()
        } else {
            max_abs(j) <= 1e-10 * (1.0 + nu.iter().map(max_abs).fold(0.0, f64::max))
        }
    };
    for tangent in [&fu, &fv] {
        let r = dot(tangent, &nu);
        if !small(&r) {
            return Err(Error::NotFrontal(first_nonzero_order(&r)));
        }
    }
    let norm_residual = dot(&nu, &nu).add_scalar(&-S::one());
    if !small(&norm_residual) {
        return Err(Error::InvariantViolation(format!(
            "|nu|^2 - 1 = {norm_residual}"
        )));
    }
    Ok(NormalField { nu, norm_residual })
}

/// Unit normal of an assembled frontal normal form.
pub fn unit_normal<S: Scalar>(f: &MapGerm<S>) -> Result<NormalField<S>> {
    unit_normal_of(f.components())
}

/// `lambda = det(f_u, f_v, nu)`.
pub fn identifier_lambda<S: Scalar>(f: &MapGerm<S>, nu: &NormalField<S>) -> Jet<S> {
    det3(&f.partial(Var::U), &f.partial(Var::V), &nu.nu)
}

/// Frontal iff the obstruction coefficient vanishes through the truncation order.
pub fn is_frontal<S: Scalar>(nf: &NormalFormS1<S>) -> bool {
    nf.f33.is_negligible()
}

/// Splits off the obstruction `v f33(u, s)`; returns `(frontal part, obstruction)`.
pub fn minimal_frontalization<S: Scalar>(
    nf: &NormalFormS1<S>,
) -> Result<(FrontalNormalForm<S>, Jet<S>)> {
    let obstruction = nf.f33.with_order(nf.order).shift_up(Var::V, 1);
    let mut frontal = nf.clone();
    frontal.f33 = Jet::zero(nf.order - 1);
    Ok((FrontalNormalForm::from_s1(&frontal)?, obstruction))
}

/// Singular set data at a fixed parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSets {
    /// `S1` is always the line `v = 0` in normal-form coordinates.
    pub s1_is_v_axis: bool,
    /// `u`-coordinates of the non-cuspidal-edge points (roots of `c1(u, s0)`), ascending.
    pub s2: Vec<f64>,
}

/// Roots of `c1(u, s0) = 0` near the origin by damped Newton from `+-sqrt(|s0|)/d20`.
pub fn singular_sets<S: Scalar>(fnf: &FrontalNormalForm<S>, s0: f64) -> Result<SingularSets> {
    let e = fnf.expand_c1()?;
    let d20 = e.require_d20()?;
    let c1 = fnf.c1.to_f64();
    let c1u = c1.differentiate(Var::U);
    let sign = if e.sign == D2Sign::Positive { 1.0 } else { -1.0 };
    let mut s2 = Vec::new();
    if s0 == 0.0 {
        s2.push(0.0);
    } else if sign * s0 < 0.0 {
        let seed = s0.abs().sqrt() / d20;
        for x0 in [-seed, seed] {
            let root = newton(
                |u| (c1.evaluate_f64([u, 0.0, s0]), c1u.evaluate_f64([u, 0.0, s0])),
                x0,
                1e-15,
                100,
            )?;
            if !s2.iter().any(|r: &f64| (r - root).abs() <= 1e-12 * (1.0 + root.abs())) {
                s2.push(root);
            }
        }
        s2.sort_by(f64::total_cmp);
    }
    Ok(SingularSets {
        s1_is_v_axis: true,
        s2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::builtin_normal_form;
    use crate::scalar::Rational;

    type Q = Rational;

    fn fnf(name: &str) -> FrontalNormalForm<Q> {
        FrontalNormalForm::from_s1(&builtin_normal_form(name, 8).unwrap()).unwrap()
    }

    #[test]
    fn planar_fold_normal() {
        let n = 6;
        let f = MapGerm::new(
            Jet::<Q>::var(Var::U, n),
            Jet::monomial([0, 2, 0], Q::from_i64(1), n),
            Jet::zero(n),
        )
        .unwrap();
        let nu = unit_normal(&f).unwrap();
        assert!(nu.nu[0].is_zero() && nu.nu[1].is_zero());
        assert_eq!(nu.nu[2], Jet::one(n - 2));
        let lambda = identifier_lambda(&f, &nu);
        assert_eq!(lambda, Jet::monomial([0, 1, 0], Q::from_i64(2), n - 2));
    }

    #[test]
    fn fs_normal_and_lambda() {
        for name in ["fs_plus", "fs_minus"] {
            let f = fnf(name).assemble().unwrap();
            let nu = unit_normal(&f).unwrap();
            assert_eq!(nu.at_origin(), [0.0, 0.0, 1.0]);
            let lambda = identifier_lambda(&f, &nu);
            let cof = lambda.divide_by(Var::V).unwrap();
            assert!(!cof.constant_term().is_negligible());
        }
    }

    #[test]
    fn non_frontal_fails() {
        let nf = builtin_normal_form("mond:S0", 8).unwrap();
        assert!(!is_frontal(&nf));
        assert!(matches!(unit_normal(&nf.assemble().unwrap()), Err(Error::NotFrontal(_))));
        let ex = builtin_normal_form("example32", 8).unwrap();
        assert!(!is_frontal(&ex));
    }

    #[test]
    fn normal_on_singular_line_matches_closed_form() {
        // frontal part of the worked example, with extra f24/f34/c0 terms
        let n = 8;
        let y = Jet::<Q>::from_int_terms(n, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([1, 0, 1], 2), ([3, 0, 0], 1)]);
        let z = Jet::<Q>::from_int_terms(
            n,
            &[([2, 0, 0], 1), ([3, 0, 0], -2), ([1, 0, 1], 3), ([2, 0, 1], 1), ([1, 2, 0], 1), ([0, 3, 1], 1), ([2, 3, 0], 1), ([0, 5, 0], 1)],
        );
        let f = MapGerm::new(Jet::var(Var::U, n), y, z).unwrap();
        let fr = FrontalNormalForm::from_s1(&NormalFormS1::read_off(&f).unwrap()).unwrap();
        let nu = unit_normal(&f).unwrap();
        let m = n - 2;
        let u = Jet::<Q>::var(Var::U, m);
        let s = Jet::<Q>::var(Var::S, m);
        let l = |j: &Jet<Q>| j.with_order(m);
        let (f21, f31, f24, f34, c0) = (l(&fr.f21), l(&fr.f31), l(&fr.f24), l(&fr.f34), l(&fr.c0));
        let two = Q::from_i64(2);
        let first = &(&(&(&(&u * &f31).scale(&Q::from_i64(-4)) + &(&(&u * &f21) * &c0).scale(&Q::from_i64(4)))
            + &(&(&s * &f24) * &c0).scale(&two))
            - &(&s * &f34).scale(&two))
            + &(&(&(&(&(&u * &u) * &c0) * &f21.differentiate(Var::U).with_order(m)).scale(&two)
                - &(&(&u * &u) * &f31.differentiate(Var::U).with_order(m)).scale(&two))
                + &(&(&(&(&u * &s) * &c0) * &f24.differentiate(Var::U).with_order(m)).scale(&two)
                    - &(&(&u * &s) * &f34.differentiate(Var::U).with_order(m)).scale(&two)));
        let num = [first, c0.scale(&Q::from_i64(-2)), Jet::constant(two, m)];
        let inv_delta = dot(&num, &num).sqrt_unit().unwrap().invert_unit().unwrap();
        for i in 0..3 {
            let expect = (&num[i] * &inv_delta).truncate(m - 1);
            assert_eq!(nu.nu[i].restrict_zero(Var::V).truncate(m - 1), expect, "component {i}");
        }
    }

    #[test]
    fn minimal_frontalization_is_idempotent() {
        let nf = builtin_normal_form("example32", 8).unwrap();
        let (fr, obs) = minimal_frontalization(&nf).unwrap();
        assert_eq!(obs, Jet::from_int_terms(8, &[([0, 1, 1], 1), ([2, 1, 0], 1)]));
        let (fr2, obs2) = minimal_frontalization(&fr.to_s1()).unwrap();
        assert_eq!(fr, fr2);
        assert!(obs2.is_zero());
        let sum = fr.assemble().unwrap();
        let full = nf.assemble().unwrap();
        assert_eq!(&sum.z().clone() + &obs, full.z().clone());
    }

    #[test]
    fn s2_roots() {
        let m = fnf("fs_minus");
        let sets = singular_sets(&m, -0.04).unwrap();
        assert_eq!(sets.s2.len(), 2);
        assert!((sets.s2[0] + 0.2).abs() < 1e-14 && (sets.s2[1] - 0.2).abs() < 1e-14);
        assert!(singular_sets(&fnf("fs_plus"), 0.01).unwrap().s2.is_empty());
        assert_eq!(singular_sets(&m, 0.0).unwrap().s2, vec![0.0]);
    }
}
