//! Reference computations used as oracles by the integration tests. None of
//! them call into the library's arithmetic: polynomials are plain monomial
//! maps, roots come from exact bisection, limits from a separate Richardson
//! table.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cuspidal_core::jets::{Exp, Jet};
use cuspidal_core::Rational as Q;
use num::{BigInt, Signed, ToPrimitive, Zero};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn f(x: &Q) -> f64 {
    x.to_f64().expect("finite rational")
}

/// Polynomial in `(u, v, s)` truncated at total degree `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub order: usize,
    pub terms: BTreeMap<Exp, Q>,
}

impl Poly {
    pub fn zero(order: usize) -> Self {
        Poly { order, terms: BTreeMap::new() }
    }

    pub fn constant(c: Q, order: usize) -> Self {
        let mut p = Poly::zero(order);
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn var(i: usize, order: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Poly::zero(order);
        p.add_term(e, q(1));
        p
    }

    pub fn from_int_terms(order: usize, terms: &[(Exp, i64)]) -> Self {
        let mut p = Poly::zero(order);
        for &(e, c) in terms {
            p.add_term(e, q(c));
        }
        p
    }

    pub fn from_jet(j: &Jet<Q>) -> Self {
        let mut p = Poly::zero(j.order());
        for (e, c) in j.terms() {
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn to_jet(&self) -> Jet<Q> {
        Jet::from_terms(self.order, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    pub fn add_term(&mut self, e: Exp, c: Q) {
        if e[0] + e[1] + e[2] > self.order {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: Exp) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut p = Poly::zero(order);
        for (e, c) in &self.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.with_order(self.order.min(o.order));
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, k: &Q) -> Poly {
        let mut p = Poly::zero(self.order);
        for (e, c) in &self.terms {
            p.add_term(*e, c * k);
        }
        p
    }

    /// Schoolbook product, every pair of monomials.
    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.order.min(o.order));
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        p
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::constant(q(1), self.order), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut p = Poly::zero(self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                p.add_term(d, c * q(e[i] as i64));
            }
        }
        p
    }

    /// Substitution `self(inner[0], inner[1], inner[2])`, truncated at the
    /// smaller of the orders.
    pub fn compose(&self, inner: &[Poly; 3]) -> Poly {
        let order = inner.iter().map(|p| p.order).min().unwrap().min(self.order);
        let mut out = Poly::zero(order);
        let mut powers: [Vec<Poly>; 3] = std::array::from_fn(|_| vec![Poly::constant(q(1), order)]);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone(), order);
            for k in 0..3 {
                while powers[k].len() <= e[k] {
                    let next = powers[k].last().unwrap().mul(&inner[k].with_order(order));
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][e[k]]);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, x: &[Q; 3]) -> Q {
        let mut total = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..3 {
                for _ in 0..e[k] {
                    t *= &x[k];
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_f64(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| f(c) * x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32) * x[2].powi(e[2] as i32))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn cross(a: &[Poly; 3], b: &[Poly; 3]) -> [Poly; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn dot(a: &[Poly; 3], b: &[Poly; 3]) -> Poly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn components(g: &cuspidal_core::germs::MapGerm<Q>) -> [Poly; 3] {
    [Poly::from_jet(g.x()), Poly::from_jet(g.y()), Poly::from_jet(g.z())]
}

/// `T (f o phi)` with every product done monomial by monomial.
pub fn transform(f: &[Poly; 3], phi: &[Poly; 3], rot: &[[Q; 3]; 3]) -> [Poly; 3] {
    let moved: Vec<Poly> = f.iter().map(|c| c.compose(phi)).collect();
    std::array::from_fn(|r| {
        (0..3).fold(Poly::zero(moved[0].order), |acc, k| acc.add(&moved[k].scale(&rot[r][k])))
    })
}

/// Coefficients `a_1..a_k` of the root `u(t)` of `c1(u, -t^2) = 0` with
/// `a_1 = 1 / d20`, solved one power of `t` at a time. Needs `d2(0) = d20^2 > 0`.
pub fn trajectory_coefficients(c1: &Poly, d20: &Q, k: usize) -> Vec<Q> {
    let order = k + 2;
    let d2 = d20 * d20;
    let mut a = vec![Q::zero(), q(1) / d20];
    let residual = |a: &[Q]| {
        let mut u = Poly::zero(order);
        for (i, c) in a.iter().enumerate() {
            u.add_term([i, 0, 0], c.clone());
        }
        let s = Poly::from_int_terms(order, &[([2, 0, 0], -1)]);
        c1.with_order(order).compose(&[u, Poly::zero(order), s])
    };
    for j in 2..=k {
        a.push(Q::zero());
        let r = residual(&a).coeff([j + 1, 0, 0]);
        a[j] = -r / (q(2) * &d2 * &a[1]);
    }
    debug_assert!((2..=k + 1).all(|j| residual(&a).coeff([j, 0, 0]).is_zero()));
    a.remove(0);
    a
}

/// Root of `c1(u, s)` in `[lo, hi]` by exact bisection until the bracket is
/// below `tol`. The endpoints must have opposite signs.
pub fn bisect(c1: &Poly, s: &Q, mut lo: Q, mut hi: Q, tol: &Q) -> Q {
    let at = |u: &Q| c1.eval(&[u.clone(), Q::zero(), s.clone()]);
    let lo_sign = at(&lo).signum();
    assert!(lo_sign != at(&hi).signum(), "no sign change on the bracket");
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / q(2);
        if at(&mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / q(2)
}

pub fn rational(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

/// Limit of `samples[i] = L + sum_p c_p h_i^p` with `h_i = h_0 / ratio^i`,
/// eliminating the listed powers in turn.
pub fn richardson(samples: &[f64], ratio: f64, powers: &[f64]) -> f64 {
    let mut row = samples.to_vec();
    for &p in powers {
        if row.len() < 2 {
            break;
        }
        let w = ratio.powf(p);
        row = row.windows(2).map(|x| (w * x[1] - x[0]) / (w - 1.0)).collect();
    }
    row[row.len() - 1]
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Geodesic and normal curvature of the curve `c(v)` (polynomials in the `v`
/// slot) at `v`, against the normal `w - <w, t> t` with `t` the unit tangent.
/// Exact up to the final square roots.
pub fn classical_curvatures(c: &[Poly; 3], w: &[Q; 3], v: &Q) -> (f64, f64) {
    let at = |p: &[Poly; 3]| -> [Q; 3] { std::array::from_fn(|k| p[k].eval(&[Q::zero(), v.clone(), Q::zero()])) };
    let d1: [Poly; 3] = std::array::from_fn(|k| c[k].derivative(1));
    let d2: [Poly; 3] = std::array::from_fn(|k| d1[k].derivative(1));
    let (a, b) = (at(&d1), at(&d2));
    let dot = |x: &[Q; 3], y: &[Q; 3]| -> Q { (0..3).map(|k| &x[k] * &y[k]).sum() };
    let speed2 = dot(&a, &a);
    let wa = dot(w, &a);
    let nu: [Q; 3] = std::array::from_fn(|k| &speed2 * &w[k] - &wa * &a[k]);
    let det = &a[0] * (&b[1] * &nu[2] - &b[2] * &nu[1]) - &a[1] * (&b[0] * &nu[2] - &b[2] * &nu[0])
        + &a[2] * (&b[0] * &nu[1] - &b[1] * &nu[0]);
    let nn = f(&dot(&nu, &nu)).sqrt();
    let sp = f(&speed2);
    (f(&det) / (nn * sp.powf(1.5)), f(&dot(&b, &nu)) / (nn * sp))
}

/// `(kappa, d kappa / dt, tau)` at `t = 0` of a curve given by polynomials in
/// the first slot.
pub fn frenet_at_zero(gamma: &[Poly; 3]) -> (f64, f64, f64) {
    let deriv = |k: usize| -> [f64; 3] {
        let fact: i64 = (1..=k as i64).product();
        std::array::from_fn(|i| f(&gamma[i].coeff([k, 0, 0])) * fact as f64)
    };
    let (g1, g2, g3) = (deriv(1), deriv(2), deriv(3));
    let a = cross3(g1, g2);
    let na = dot3(a, a).sqrt();
    let sp = dot3(g1, g1).sqrt();
    let kappa = na / sp.powi(3);
    let dna = dot3(a, cross3(g1, g3)) / na;
    let dsp = dot3(g1, g2) / sp;
    let dkappa = dna / sp.powi(3) - 3.0 * na * dsp / sp.powi(4);
    let tau = det3(g1, g2, g3) / (na * na);
    (kappa, dkappa, tau)
}

/// `(kappa_g, kappa_n)` of the two branches `v = v(u)` of `z(u, v, 0) / v^3 = 0`,
/// parametrized by `u`, from central differences and Richardson extrapolation.
pub fn traced_branches(g: &[Poly; 3]) -> Result<Vec<(f64, f64)>, String> {
    let mut w = Poly::zero(g[2].order - 3);
    for (e, c) in &g[2].terms {
        if e[2] == 0 {
            if e[1] < 3 {
                return Err("z(u, v, 0) is not divisible by v^3".into());
            }
            w.add_term([e[0], e[1] - 3, 0], c.clone());
        }
    }
    let (a, b, c) = (f(&w.coeff([2, 0, 0])), f(&w.coeff([1, 1, 0])), f(&w.coeff([0, 2, 0])));
    let disc = b * b - 4.0 * a * c;
    if disc <= 0.0 {
        return Err("no real branches".into());
    }
    let wv = w.derivative(1);
    let fu0: [f64; 3] = std::array::from_fn(|k| f(&g[k].coeff([1, 0, 0])));
    let fvv0: [f64; 3] = std::array::from_fn(|k| 2.0 * f(&g[k].coeff([0, 2, 0])));
    let nu = [
        fu0[1] * fvv0[2] - fu0[2] * fvv0[1],
        fu0[2] * fvv0[0] - fu0[0] * fvv0[2],
        fu0[0] * fvv0[1] - fu0[1] * fvv0[0],
    ];
    let nn = (nu[0] * nu[0] + nu[1] * nu[1] + nu[2] * nu[2]).sqrt();
    let nu = nu.map(|x| x / nn);
    let mut out = Vec::new();
    for m in [(-b + disc.sqrt()) / (2.0 * c), (-b - disc.sqrt()) / (2.0 * c)] {
        let point = |u: f64| -> [f64; 3] {
            if u == 0.0 {
                return std::array::from_fn(|k| g[k].eval_f64([0.0; 3]));
            }
            let mut v = m * u;
            for _ in 0..60 {
                v -= w.eval_f64([u, v, 0.0]) / wv.eval_f64([u, v, 0.0]);
            }
            std::array::from_fn(|k| g[k].eval_f64([u, v, 0.0]))
        };
        let (mut d1s, mut d2s) = (Vec::new(), Vec::new());
        for i in 0..4 {
            let h = 0.02 / 2f64.powi(i);
            let (p, z, n) = (point(h), point(0.0), point(-h));
            d1s.push(std::array::from_fn::<f64, 3, _>(|k| (p[k] - n[k]) / (2.0 * h)));
            d2s.push(std::array::from_fn::<f64, 3, _>(|k| (p[k] - 2.0 * z[k] + n[k]) / (h * h)));
        }
        let limit = |xs: &[[f64; 3]]| -> [f64; 3] {
            std::array::from_fn(|k| richardson(&xs.iter().map(|x| x[k]).collect::<Vec<_>>(), 2.0, &[2.0, 4.0, 6.0]))
        };
        let (d1, d2) = (limit(&d1s), limit(&d2s));
        let speed = (d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]).sqrt();
        let det = d1[0] * (d2[1] * nu[2] - d2[2] * nu[1]) - d1[1] * (d2[0] * nu[2] - d2[2] * nu[0])
            + d1[2] * (d2[0] * nu[1] - d2[1] * nu[0]);
        let kn = (d2[0] * nu[0] + d2[1] * nu[1] + d2[2] * nu[2]) / (speed * speed);
        out.push((det / speed.powi(3), kn));
    }
    Ok(out)
}
