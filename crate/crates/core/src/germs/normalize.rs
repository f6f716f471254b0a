//! Reduction of an S1-type deformation to `NormalFormS1` by explicit
//! source/target changes.
//!
//! Works on the germ padded to `order + 3` and truncates at the end; the
//! normal form's `order`-jet only depends on the input `order`-jet.

use crate::error::{Error, Result};
use crate::jets::{Exp, Jet, JetVec, Var, MAX_ORDER};
use crate::scalar::Scalar;

use super::{MapGerm, NormalFormS1};

/// How the normal form was reached: `T . f . phi == assemble(nf)` through `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizeLog<S: Scalar> {
    /// Target rotation, rows act on the components.
    pub rotation: [[S; 3]; 3],
    /// Source change: original `(u, v, s)` as jets in the normal-form coordinates.
    pub source: JetVec<S>,
}

fn column<S: Scalar>(g: &MapGerm<S>, e: Exp) -> [S; 3] {
    std::array::from_fn(|i| g.components()[i].coeff(e))
}

fn dot3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn cross3<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn scale3<S: Scalar>(a: &[S; 3], c: &S) -> [S; 3] {
    std::array::from_fn(|i| a[i].clone() * c.clone())
}

fn exact_sqrt<S: Scalar>(x: &S) -> Result<S> {
    x.sqrt_exact().ok_or_else(|| Error::IrrationalSqrt(x.to_string()))
}

fn snap<S: Scalar>(j: Jet<S>) -> Jet<S> {
    j.map(|c| if c.is_negligible() { S::zero() } else { c.clone() })
}

/// Iterate `step` from `start` until it stops changing (at most `limit + 1` times).
fn fixed_point<S: Scalar>(
    start: Jet<S>,
    limit: usize,
    mut step: impl FnMut(&Jet<S>) -> Result<Jet<S>>,
) -> Result<Jet<S>> {
    let mut cur = start;
    for _ in 0..=limit {
        let next = step(&cur)?;
        if (&next - &cur).is_negligible() {
            return Ok(next);
        }
        cur = next;
    }
    Ok(cur)
}

/// Bring `f` to `NormalFormS1` and report the transformation used.
pub fn normalize<S: Scalar>(f: &MapGerm<S>) -> Result<(NormalFormS1<S>, NormalizeLog<S>)> {
    let n = f.order();
    if n < 3 {
        return Err(Error::OrderTooLow { order: n, required: 3 });
    }
    if n + 3 > MAX_ORDER {
        return Err(Error::InvariantViolation(format!(
            "order {n} leaves no working headroom below {MAX_ORDER}"
        )));
    }
    let w = n + 3;
    let g0 = MapGerm::from_parts_unchecked(f.components().clone().map(|c| c.with_order(w)));

    // Linear part: kernel direction becomes the v axis.
    let fu = column(&g0, [1, 0, 0]);
    let fv = column(&g0, [0, 1, 0]);
    let fu2 = dot3(&fu, &fu);
    let fv2 = dot3(&fv, &fv);
    if fu2.is_negligible() && fv2.is_negligible() {
        return Err(Error::WrongTwoJet("df(0) has rank 0".into()));
    }
    if !dot3(&cross3(&fu, &fv), &cross3(&fu, &fv)).is_negligible() {
        return Err(Error::WrongTwoJet("df(0) has rank 2 (immersion)".into()));
    }
    let m: [[S; 2]; 2] = if !fu2.is_negligible() {
        let mu = dot3(&fv, &fu) / fu2;
        [[S::one(), -mu], [S::zero(), S::one()]]
    } else {
        [[S::zero(), S::one()], [-S::one(), S::zero()]]
    };
    let lin = |a: &S, b: &S| {
        &Jet::var(Var::U, w).scale(a) + &Jet::var(Var::V, w).scale(b)
    };
    let l_map: JetVec<S> = [lin(&m[0][0], &m[0][1]), lin(&m[1][0], &m[1][1]), Jet::var(Var::S, w)];
    let g1 = g0.precompose(&l_map)?;

    // Target rotation from f_u(0) and the part of f_vv(0) orthogonal to it.
    let a_vec = column(&g1, [1, 0, 0]);
    let a = exact_sqrt(&dot3(&a_vec, &a_vec))?;
    let e1 = scale3(&a_vec, &(S::one() / a.clone()));
    let q0 = scale3(&column(&g1, [0, 2, 0]), &S::from_i64(2));
    let along = dot3(&q0, &e1);
    let q: [S; 3] = std::array::from_fn(|i| q0[i].clone() - along.clone() * e1[i].clone());
    let q2 = dot3(&q, &q);
    if q2.is_negligible() {
        return Err(Error::WrongTwoJet(
            "f_vv(0) is parallel to f_u(0) (2-jet is not of type (u, v^2, *))".into(),
        ));
    }
    let qn = exact_sqrt(&q2)?;
    let e2 = scale3(&q, &(S::one() / qn));
    let e3 = cross3(&e1, &e2);
    let rotation = [e1, e2, e3];
    let g2 = g1.rotate(&rotation);

    // x -> u by inverting x(phi1, v, s) = u.
    let u = Jet::<S>::var(Var::U, w);
    let inv_a = S::one() / a.clone();
    let r = &g2.x().clone() - &u.scale(&a);
    let phi1 = fixed_point(u.scale(&inv_a), w, |p| {
        Ok((&u - &r.substitute(Var::U, p)?).scale(&inv_a))
    })?;
    let g3: JetVec<S> = {
        let c = g2.components();
        [
            c[0].substitute(Var::U, &phi1)?,
            c[1].substitute(Var::U, &phi1)?,
            c[2].substitute(Var::U, &phi1)?,
        ]
    };
    if !(&g3[0] - &u).is_negligible() {
        return Err(Error::InvariantViolation("x-reparametrization failed".into()));
    }

    // Critical point of v -> y(u, v, s) moved to v = 0.
    let yv = g3[1].differentiate(Var::V);
    let c2 = yv.coeff([0, 1, 0]);
    let h = fixed_point(Jet::zero(w - 1), w, |h| {
        Ok(h - &yv.substitute(Var::V, h)?.scale(&(S::one() / c2.clone())))
    })?;
    let v_shift = &Jet::var(Var::V, w - 1) + &h;
    let g4: JetVec<S> = [
        g3[0].with_order(w - 1),
        g3[1].substitute(Var::V, &v_shift)?,
        g3[2].substitute(Var::V, &v_shift)?,
    ];
    let a_part = g4[1].restrict_zero(Var::V);
    if !a_part.restrict_zero(Var::U).is_negligible() {
        return Err(Error::NotNormalizable(
            "y at the fold critical point does not vanish on u = 0; the deformation moves the singular value off the x = 0 plane"
                .into(),
        ));
    }

    // y - A = v^2 K(u, v, s); take v_new = v sqrt(K).
    let k = (&g4[1] - &a_part)
        .divide_by(Var::V)
        .and_then(|j| j.divide_by(Var::V))
        .map_err(|_| Error::InvariantViolation("critical point not removed".into()))?;
    let sqrt_k = k.sqrt_unit()?;
    let inv_sqrt_k = sqrt_k.invert_unit()?;
    let vk = Jet::<S>::var(Var::V, w - 3);
    let psi = fixed_point(vk.scale(inv_sqrt_k.constant_term()), w, |p| {
        Ok(&vk * &inv_sqrt_k.substitute(Var::V, p)?)
    })?;
    let g5: JetVec<S> = [
        g4[0].truncate(n),
        g4[1].substitute(Var::V, &psi)?.truncate(n),
        g4[2].substitute(Var::V, &psi)?.truncate(n),
    ];
    let germ = MapGerm::new(snap(g5[0].clone()), snap(g5[1].clone()), snap(g5[2].clone()))?;
    let nf = NormalFormS1::read_off(&germ)?;

    // Composite source map L . P1 . P2 . P3.
    let v_total = (&psi.with_order(n) + &h.truncate(n)).truncate(n);
    let p1 = phi1.truncate(n).substitute(Var::V, &v_total)?;
    let source: JetVec<S> = [
        &p1.scale(&m[0][0]) + &v_total.scale(&m[0][1]),
        &p1.scale(&m[1][0]) + &v_total.scale(&m[1][1]),
        Jet::var(Var::S, n),
    ];
    Ok((nf, NormalizeLog { rotation, source }))
}
