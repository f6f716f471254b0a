//! Map-germs `f: (R^2 x R, 0) -> (R^3, 0)` and their normal forms.

mod builtin;
mod normalize;
mod spec_file;

pub use builtin::{builtin, builtin_names, builtin_normal_form};
pub use normalize::{normalize, NormalizeLog};
pub use spec_file::{GermSpec, SpecInt};

use crate::error::{Error, Result};
use crate::jets::{Jet, JetVec, Var};
use crate::scalar::Scalar;

/// A deformation `(x, y, z)` in the variables `(u, v, s)` with `f(0,0,s) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapGerm<S: Scalar> {
    comps: JetVec<S>,
}

impl<S: Scalar> MapGerm<S> {
    /// Validates the origin condition `f(0,0,s) = 0`.
    pub fn new(x: Jet<S>, y: Jet<S>, z: Jet<S>) -> Result<Self> {
        let g = MapGerm { comps: [x, y, z] };
        g.check_origin()?;
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(comps: JetVec<S>) -> Self {
        MapGerm { comps }
    }

    pub fn x(&self) -> &Jet<S> {
        &self.comps[0]
    }

    pub fn y(&self) -> &Jet<S> {
        &self.comps[1]
    }

    pub fn z(&self) -> &Jet<S> {
        &self.comps[2]
    }

    pub fn components(&self) -> &JetVec<S> {
        &self.comps
    }

    pub fn into_components(self) -> JetVec<S> {
        self.comps
    }

    pub fn order(&self) -> usize {
        self.comps.iter().map(Jet::order).min().unwrap_or(0)
    }

    fn check_origin(&self) -> Result<()> {
        for (name, c) in ["x", "y", "z"].iter().zip(&self.comps) {
            let on_axis = c.restrict_zero(Var::U).restrict_zero(Var::V);
            if !on_axis.is_negligible() {
                return Err(Error::InvariantViolation(format!(
                    "{name}(0,0,s) = {on_axis} is not identically zero"
                )));
            }
        }
        Ok(())
    }

    pub fn partial(&self, var: Var) -> JetVec<S> {
        crate::jets::differentiate_vec(&self.comps, var)
    }

    pub fn to_f64(&self) -> MapGerm<f64> {
        MapGerm {
            comps: self.comps.clone().map(|c| c.to_f64()),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        MapGerm {
            comps: self.comps.clone().map(|c| c.truncate(order)),
        }
    }

    /// `T . f` for a 3x3 matrix `T` (rows act on the components).
    pub fn rotate(&self, t: &[[S; 3]; 3]) -> Self {
        let order = self.order();
        let comps = std::array::from_fn(|r| {
            let mut acc = Jet::zero(order);
            for c in 0..3 {
                acc = &acc + &self.comps[c].scale(&t[r][c]);
            }
            acc
        });
        MapGerm { comps }
    }

    /// `f . phi` for a source map given as three jets in `(u, v, s)`.
    pub fn precompose(&self, phi: &JetVec<S>) -> Result<Self> {
        let comps = [
            self.comps[0].compose(phi)?,
            self.comps[1].compose(phi)?,
            self.comps[2].compose(phi)?,
        ];
        Ok(MapGerm { comps })
    }

    pub fn evaluate_f64(&self, point: [f64; 3]) -> [f64; 3] {
        [
            self.comps[0].evaluate_f64(point),
            self.comps[1].evaluate_f64(point),
            self.comps[2].evaluate_f64(point),
        ]
    }

    /// Coefficient-wise comparison through total degree `n`.
    pub fn eq_through(&self, other: &Self, n: usize) -> bool {
        self.comps
            .iter()
            .zip(&other.comps)
            .all(|(a, b)| a.eq_through(b, n))
    }
}

/// Coefficient functions of
/// `(u, u^2 f21(u) + v^2 + u s f24(u,s), u^2 f31(u) + v^2 f32(u,v,s) + v f33(u,s) + u s f34(u,s))`.
///
/// `order` is the truncation order of the assembled germ. `f33` is stored to
/// `order - 1`, everything else to `order - 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormS1<S: Scalar> {
    pub order: usize,
    pub f21: Jet<S>,
    pub f24: Jet<S>,
    pub f31: Jet<S>,
    pub f32: Jet<S>,
    pub f33: Jet<S>,
    pub f34: Jet<S>,
}

fn depends_on<S: Scalar>(j: &Jet<S>, var: Var) -> bool {
    j.terms().any(|(e, c)| e[var.index()] > 0 && !c.is_negligible())
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantViolation(msg()))
    }
}

impl<S: Scalar> NormalFormS1<S> {
    /// Checks variable dependence and `f32(0,0,0) = f33(0,0) = 0`.
    pub fn validate(&self) -> Result<()> {
        require(self.order >= 3, || format!("order {} < 3", self.order))?;
        for (name, j) in [("f21", &self.f21), ("f31", &self.f31)] {
            require(!depends_on(j, Var::V) && !depends_on(j, Var::S), || {
                format!("{name} must depend on u only")
            })?;
        }
        for (name, j) in [("f24", &self.f24), ("f33", &self.f33), ("f34", &self.f34)] {
            require(!depends_on(j, Var::V), || {
                format!("{name} must not depend on v")
            })?;
        }
        require(self.f32.constant_term().is_negligible(), || {
            "f32(0,0,0) != 0".to_string()
        })?;
        require(self.f33.constant_term().is_negligible(), || {
            "f33(0,0) != 0".to_string()
        })?;
        Ok(())
    }

    /// Reads the coefficient functions off a germ that already has the normal shape.
    pub fn read_off(f: &MapGerm<S>) -> Result<Self> {
        let n = f.order();
        if n < 3 {
            return Err(Error::OrderTooLow { order: n, required: 3 });
        }
        let shape = |msg: &str| Error::NotNormalizable(format!("germ is not in normal shape: {msg}"));
        let u = Jet::<S>::var(Var::U, n);
        if !(f.x() - &u).is_negligible() {
            return Err(shape("x != u"));
        }
        let y = f.y();
        let a = y.restrict_zero(Var::V);
        let v_part = y - &a;
        let v2 = Jet::<S>::monomial([0, 2, 0], S::one(), n);
        if !(&v_part - &v2).is_negligible() {
            return Err(shape("y - y(u,0,s) != v^2"));
        }
        let (f21, f24) = split_us(&a).map_err(|_| shape("y(u,0,s) has a linear term in u"))?;

        let z = f.z();
        let e = z.restrict_zero(Var::V);
        let (f31, f34) = split_us(&e).map_err(|_| shape("z(u,0,s) has a linear term in u"))?;
        let f33 = z.coefficient_of(Var::V, 1);
        let rest = &(z - &e) - &f33.with_order(n).shift_up(Var::V, 1);
        let f32 = rest
            .divide_by(Var::V)
            .and_then(|r| r.with_order(n - 1).divide_by(Var::V))
            .map_err(|_| shape("cannot extract f32"))?
            .truncate(n - 2);
        let nf = NormalFormS1 {
            order: n,
            f21,
            f24,
            f31,
            f32,
            f33,
            f34,
        };
        nf.validate().map_err(|e| shape(&e.to_string()))?;
        Ok(nf)
    }

    pub fn assemble(&self) -> Result<MapGerm<S>> {
        self.validate()?;
        let n = self.order;
        let u = Jet::<S>::var(Var::U, n);
        let v = Jet::<S>::var(Var::V, n);
        let u2 = Jet::<S>::monomial([2, 0, 0], S::one(), n);
        let v2 = Jet::<S>::monomial([0, 2, 0], S::one(), n);
        let us = Jet::<S>::monomial([1, 0, 1], S::one(), n);
        let lift = |j: &Jet<S>| j.with_order(n);
        let y = &(&(&u2 * &lift(&self.f21)) + &v2) + &(&us * &lift(&self.f24));
        let z = &(&(&(&u2 * &lift(&self.f31)) + &(&v2 * &lift(&self.f32)))
            + &(&v * &lift(&self.f33)))
            + &(&us * &lift(&self.f34));
        MapGerm::new(u, y, z)
    }

    pub fn to_f64(&self) -> NormalFormS1<f64> {
        NormalFormS1 {
            order: self.order,
            f21: self.f21.to_f64(),
            f24: self.f24.to_f64(),
            f31: self.f31.to_f64(),
            f32: self.f32.to_f64(),
            f33: self.f33.to_f64(),
            f34: self.f34.to_f64(),
        }
    }

    /// Coefficient-exact comparison through degree `k` of the assembled germs.
    pub fn eq_through(&self, other: &Self, k: usize) -> bool {
        match (self.assemble(), other.assemble()) {
            (Ok(a), Ok(b)) => a.eq_through(&b, k),
            _ => false,
        }
    }
}

/// Split `a(u,s)` with `a(0,s) = 0` and no linear `u` term into
/// `(f(u), g(u,s))` with `a = u^2 f(u) + u s g(u,s)`.
fn split_us<S: Scalar>(a: &Jet<S>) -> Result<(Jet<S>, Jet<S>)> {
    let n = a.order();
    let at_s0 = a.restrict_zero(Var::S);
    let f = at_s0
        .divide_by(Var::U)
        .and_then(|q| q.with_order(n - 1).divide_by(Var::U))?
        .truncate(n - 2);
    let g = (a - &at_s0)
        .divide_by(Var::U)
        .and_then(|q| q.with_order(n - 1).divide_by(Var::S))?
        .truncate(n - 2);
    Ok((f, g))
}

/// Normal form with vanishing obstruction, `f33 = 0`, with `f32` decomposed as
/// `c0(u,s) + v c1(u,s) + v^2 c2(u,v^2,s) + v^3 c3(u,v^2,s)`.
///
/// `c2` and `c3` are jets in `(u, w, s)` with `w = v^2` carried in the `v` slot.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontalNormalForm<S: Scalar> {
    pub order: usize,
    pub f21: Jet<S>,
    pub f24: Jet<S>,
    pub f31: Jet<S>,
    pub f34: Jet<S>,
    pub c0: Jet<S>,
    pub c1: Jet<S>,
    pub c2: Jet<S>,
    pub c3: Jet<S>,
}

/// Pieces of `f32 = c0 + v c1 + v^2 c2(u,v^2,s) + v^3 c3(u,v^2,s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct F32Parts<S: Scalar> {
    pub c0: Jet<S>,
    pub c1: Jet<S>,
    pub c2: Jet<S>,
    pub c3: Jet<S>,
}

/// `c0 = f32|_{v=0}`, `c1 = d/dv f32|_{v=0}`, and even/odd parts of the
/// remainder re-expressed in `w = v^2`. Reassembly is exact.
pub fn decompose_f32<S: Scalar>(f32: &Jet<S>) -> F32Parts<S> {
    let n = f32.order();
    let c0 = f32.restrict_zero(Var::V);
    let c1 = f32.coefficient_of(Var::V, 1);
    let mut rest = Jet::zero(n.saturating_sub(2));
    for (e, c) in f32.terms() {
        if e[1] >= 2 {
            rest.set_coeff([e[0], e[1] - 2, e[2]], c.clone());
        }
    }
    let (even, odd) = rest.parity_split(Var::V);
    let c2 = even.halve_var(Var::V).expect("even part has even powers");
    let mut c3 = Jet::zero(rest.order());
    for (e, c) in odd.terms() {
        c3.set_coeff([e[0], (e[1] - 1) / 2, e[2]], c.clone());
    }
    F32Parts { c0, c1, c2, c3 }
}

/// Inverse of [`decompose_f32`] at truncation order `n`.
pub fn reassemble_f32<S: Scalar>(parts: &F32Parts<S>, n: usize) -> Jet<S> {
    let lift = |j: &Jet<S>| j.with_order(n);
    let v = Jet::<S>::var(Var::V, n);
    let c2 = lift(&parts.c2).square_var(Var::V).shift_up(Var::V, 2);
    let c3 = lift(&parts.c3).square_var(Var::V).shift_up(Var::V, 3);
    &(&(&lift(&parts.c0) + &(&v * &lift(&parts.c1))) + &c2) + &c3
}

/// Sign of `d2(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2Sign {
    Positive,
    Negative,
    Degenerate,
}

/// `c1 = s + u s d1(s) + u^2 d2(s) + u^3 d3(s) + u^4 d4(u,s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct C1Expansion<S: Scalar> {
    pub d1: Jet<S>,
    pub d2: Jet<S>,
    pub d3: Jet<S>,
    pub d4: Jet<S>,
    pub d2_at_0: S,
    /// `sqrt(|d2(0)|)`.
    pub d20: f64,
    pub sign: D2Sign,
}

impl<S: Scalar> C1Expansion<S> {
    pub fn is_degenerate(&self) -> bool {
        self.sign == D2Sign::Degenerate
    }

    /// `d20`, refusing the degenerate case.
    pub fn require_d20(&self) -> Result<f64> {
        if self.is_degenerate() {
            Err(Error::DegenerateD2)
        } else {
            Ok(self.d20)
        }
    }

    pub fn reassemble(&self, n: usize) -> Jet<S> {
        let lift = |j: &Jet<S>| j.with_order(n);
        let s = Jet::<S>::var(Var::S, n);
        let us = Jet::<S>::monomial([1, 0, 1], S::one(), n);
        let u2 = Jet::<S>::monomial([2, 0, 0], S::one(), n);
        let u3 = Jet::<S>::monomial([3, 0, 0], S::one(), n);
        let u4 = Jet::<S>::monomial([4, 0, 0], S::one(), n);
        &(&(&(&s + &(&us * &lift(&self.d1))) + &(&u2 * &lift(&self.d2)))
            + &(&u3 * &lift(&self.d3)))
            + &(&u4 * &lift(&self.d4))
    }
}

/// Reads off `d1..d4` and `d20` from a reduced `c1` (`c1(0,s) = s`).
pub fn expand_c1<S: Scalar>(c1: &Jet<S>) -> Result<C1Expansion<S>> {
    let n = c1.order();
    let on_axis = c1.restrict_zero(Var::U);
    if !(&on_axis - &Jet::var(Var::S, n)).is_negligible() {
        return Err(Error::NotReducedC1);
    }
    let lin = c1.coefficient_of(Var::U, 1);
    if !lin.constant_term().is_negligible() {
        return Err(Error::InvariantViolation(
            "(c1)_u(0,0) != 0; the origin is not a cuspidal S_k point".into(),
        ));
    }
    let d1 = lin.restrict_zero(Var::U).divide_by(Var::S)?;
    let d2 = c1.coefficient_of(Var::U, 2);
    let d3 = c1.coefficient_of(Var::U, 3);
    let mut d4 = Jet::zero(n.saturating_sub(4));
    for (e, c) in c1.terms() {
        if e[0] >= 4 {
            d4.set_coeff([e[0] - 4, e[1], e[2]], c.clone());
        }
    }
    let d2_at_0 = d2.constant_term().clone();
    let sign = if d2_at_0.is_negligible() {
        D2Sign::Degenerate
    } else if d2_at_0 > S::zero() {
        D2Sign::Positive
    } else {
        D2Sign::Negative
    };
    let d20 = d2_at_0.to_f64().abs().sqrt();
    Ok(C1Expansion {
        d1,
        d2,
        d3,
        d4,
        d2_at_0,
        d20,
        sign,
    })
}

impl<S: Scalar> FrontalNormalForm<S> {
    /// Requires `f33 = 0` through the truncation order.
    pub fn from_s1(nf: &NormalFormS1<S>) -> Result<Self> {
        if !nf.f33.is_negligible() {
            return Err(Error::NotFrontal(nf.f33.valuation().unwrap_or(0)));
        }
        let parts = decompose_f32(&nf.f32);
        Ok(FrontalNormalForm {
            order: nf.order,
            f21: nf.f21.clone(),
            f24: nf.f24.clone(),
            f31: nf.f31.clone(),
            f34: nf.f34.clone(),
            c0: parts.c0,
            c1: parts.c1,
            c2: parts.c2,
            c3: parts.c3,
        })
    }

    pub fn f32_parts(&self) -> F32Parts<S> {
        F32Parts {
            c0: self.c0.clone(),
            c1: self.c1.clone(),
            c2: self.c2.clone(),
            c3: self.c3.clone(),
        }
    }

    pub fn f32(&self) -> Jet<S> {
        reassemble_f32(&self.f32_parts(), self.order - 2)
    }

    pub fn to_s1(&self) -> NormalFormS1<S> {
        NormalFormS1 {
            order: self.order,
            f21: self.f21.clone(),
            f24: self.f24.clone(),
            f31: self.f31.clone(),
            f32: self.f32(),
            f33: Jet::zero(self.order - 1),
            f34: self.f34.clone(),
        }
    }

    pub fn assemble(&self) -> Result<MapGerm<S>> {
        require(self.c0.constant_term().is_negligible(), || {
            "c0(0,0) != 0".to_string()
        })?;
        self.to_s1().assemble()
    }

    pub fn expand_c1(&self) -> Result<C1Expansion<S>> {
        expand_c1(&self.c1)
    }

    /// `c3(u, v^2, s)` as a jet in `(u, v, s)`.
    pub fn c3_lifted(&self) -> Jet<S> {
        self.c3.square_var(Var::V)
    }

    pub fn c2_lifted(&self) -> Jet<S> {
        self.c2.square_var(Var::V)
    }

    pub fn to_f64(&self) -> FrontalNormalForm<f64> {
        FrontalNormalForm {
            order: self.order,
            f21: self.f21.to_f64(),
            f24: self.f24.to_f64(),
            f31: self.f31.to_f64(),
            f34: self.f34.to_f64(),
            c0: self.c0.to_f64(),
            c1: self.c1.to_f64(),
            c2: self.c2.to_f64(),
            c3: self.c3.to_f64(),
        }
    }

    /// Reparametrize `s` so that `c1(0, s) = s`.
    ///
    /// Needs `dc1/ds(0,0) > 0` (orientation preserving `phi_3`). The result is
    /// exact through order `order - 2`; the returned jet is the substitution
    /// `s = h(sigma)` (in the `s` slot).
    pub fn reduce_parameter(&self) -> Result<(Self, Jet<S>)> {
        let n = self.order;
        if n < 5 {
            return Err(Error::OrderTooLow { order: n, required: 5 });
        }
        let g = self.c1.restrict_zero(Var::U).with_order(n);
        let g1 = g.coeff([0, 0, 1]);
        if g1.is_negligible() {
            return Err(Error::NotNormalizable(
                "dc1/ds(0,0) = 0: the deformation is not generic".into(),
            ));
        }
        if g1 < S::zero() {
            return Err(Error::ParameterOrientation);
        }
        let sigma = Jet::<S>::var(Var::S, n);
        let inv_g1 = S::one() / g1;
        let mut h = sigma.scale(&inv_g1);
        for _ in 0..=n {
            let residual = &g.substitute(Var::S, &h)? - &sigma;
            h = &h - &residual.scale(&inv_g1);
        }
        let germ = self.assemble()?;
        let comps = germ
            .components()
            .clone()
            .map(|c| c.substitute(Var::S, &h).map(|j| j.truncate(n - 2)));
        let [x, y, z] = comps;
        let reduced = MapGerm::new(x?, y?, z?)?;
        let nf = NormalFormS1::read_off(&reduced)?;
        Ok((FrontalNormalForm::from_s1(&nf)?, h))
    }
}
