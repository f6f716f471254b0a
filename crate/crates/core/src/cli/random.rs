//! Seeded generators for the randomized verification suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::germs::{FrontalNormalForm, MapGerm, NormalFormS1};
use crate::jets::{Exp, Jet, JetVec, Var};
use crate::scalar::{Rational, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p / q` with `|p| <= bound`, `q` in `1..=3`; may be zero.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let q = small_rational(rng, bound);
        if !q.is_negligible() {
            return q;
        }
    }
}

/// Monomials of total degree `lo..=hi` accepted by `keep`.
fn exponents(lo: usize, hi: usize, keep: impl Fn(Exp) -> bool) -> Vec<Exp> {
    let mut out = Vec::new();
    for d in lo..=hi {
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                let e = [i, j, d - i - j];
                if keep(e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Random jet of order `order` supported on the given monomials, each present with
/// probability `density`.
pub fn sparse_jet<R: Rng>(rng: &mut R, order: usize, support: &[Exp], density: f64, bound: i64) -> Jet<Rational> {
    let mut j = Jet::zero(order);
    for &e in support {
        if rng.gen_bool(density) {
            j.add_term(e, small_rational(rng, bound));
        }
    }
    j
}

/// Dense random jet with every coefficient drawn (used for ring-axiom checks).
pub fn random_jet<R: Rng>(rng: &mut R, order: usize) -> Jet<Rational> {
    sparse_jet(rng, order, &exponents(0, order, |_| true), 0.6, 4)
}

/// Random `NormalFormS1` of truncation order `order`.
///
/// When `frontal` is false the obstruction `f33` is nonzero and starts at a random
/// degree, so some samples are only detectably non-frontal at high order.
pub fn random_normal_form<R: Rng>(rng: &mut R, order: usize, frontal: bool) -> NormalFormS1<Rational> {
    let n = order;
    let u_only = exponents(0, n - 2, |e| e[1] == 0 && e[2] == 0);
    let us = exponents(0, n - 2, |e| e[1] == 0);
    let f21 = sparse_jet(rng, n - 2, &u_only, 0.5, 3);
    let f31 = sparse_jet(rng, n - 2, &u_only, 0.5, 3);
    let f24 = sparse_jet(rng, n - 2, &us, 0.3, 3);
    let f34 = sparse_jet(rng, n - 2, &us, 0.3, 3);
    let f32 = sparse_jet(rng, n - 2, &exponents(1, n - 2, |_| true), 0.3, 3);
    let f33 = if frontal {
        Jet::zero(n - 1)
    } else {
        let start = rng.gen_range(1..=n - 1);
        let support = exponents(start, n - 1, |e| e[1] == 0);
        let mut j = sparse_jet(rng, n - 1, &support, 0.3, 3);
        let lead = support[rng.gen_range(0..support.len())];
        j.set_coeff(lead, nonzero_rational(rng, 3));
        j
    };
    NormalFormS1 { order: n, f21, f24, f31, f32, f33, f34 }
}

/// Random frontal normal form with `c1(0, s) = s`, `d2(0) = sign(d2) p^2` for a
/// rational `p` and `c3(0) != 0` with the requested sign (`0` = either).
pub fn random_reduced_fnf<R: Rng>(
    rng: &mut R,
    order: usize,
    d2_sign: i64,
    c3_sign: i64,
) -> Result<FrontalNormalForm<Rational>> {
    damped_reduced_fnf(rng, order, d2_sign, c3_sign, &Rational::from_i64(1))
}

/// As `random_reduced_fnf`, with each random `f32` term `u^a v^b s^c` scaled by
/// `damping^(a + b + 2c - 3)` (weights matching `s ~ u^2` along the S2 set), so
/// that asymptotic behaviour sets in at moderate parameter values.
pub fn damped_reduced_fnf<R: Rng>(
    rng: &mut R,
    order: usize,
    d2_sign: i64,
    c3_sign: i64,
    damping: &Rational,
) -> Result<FrontalNormalForm<Rational>> {
    let n = order;
    let mut nf = random_normal_form(rng, n, true);
    let p = [Rational::from_i64(1), Rational::from_ratio(3, 2), Rational::from_i64(2)][rng.gen_range(0..3)].clone();
    let d2 = &p * &p * Rational::from_i64(d2_sign.signum());
    let c3 = match c3_sign.signum() {
        0 => nonzero_rational(rng, 2),
        s => Rational::from_ratio(s * rng.gen_range(1..=4), 2),
    };
    let mut f32 = Jet::zero(n - 2);
    for (e, c) in nf.f32.terms() {
        // c1 keeps only the `s` term along `u = 0` and has no `u` term; the
        // leading coefficients are set below.
        let c1_along_axis = e[1] == 1 && e[0] == 0;
        if !c1_along_axis && e != [1, 1, 0] && e != [2, 1, 0] && e != [0, 3, 0] {
            let d = (e[0] + e[1] + 2 * e[2]).saturating_sub(3);
            f32.add_term(e, c * damping.pow(d as i32));
        }
    }
    f32.set_coeff([0, 1, 1], Rational::from_i64(1));
    f32.set_coeff([2, 1, 0], d2);
    f32.set_coeff([0, 3, 0], c3);
    nf.f32 = f32;
    FrontalNormalForm::from_s1(&nf)
}

/// Source diffeomorphism `phi(u, v, s) = (phi1, phi2, phi3(s))` followed by a rotation.
#[derive(Debug, Clone)]
pub struct AdmissibleTransform {
    pub phi: JetVec<Rational>,
    pub rotation: [[Rational; 3]; 3],
}

impl AdmissibleTransform {
    pub fn apply(&self, f: &MapGerm<Rational>) -> Result<MapGerm<Rational>> {
        Ok(f.precompose(&self.phi)?.rotate(&self.rotation))
    }
}

/// Rotation from the Cayley parameter `w`: `((1 - |w|^2) I + 2 w w^T + 2 [w]x) / (1 + |w|^2)`.
pub fn cayley_rotation(w: [Rational; 3]) -> [[Rational; 3]; 3] {
    let one = Rational::from_i64(1);
    let two = Rational::from_i64(2);
    let n2 = &w[0] * &w[0] + &w[1] * &w[1] + &w[2] * &w[2];
    let den = &one + &n2;
    let cross = [
        [Rational::from_i64(0), -w[2].clone(), w[1].clone()],
        [w[2].clone(), Rational::from_i64(0), -w[0].clone()],
        [-w[1].clone(), w[0].clone(), Rational::from_i64(0)],
    ];
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let diag = if r == c { &one - &n2 } else { Rational::from_i64(0) };
            (diag + &two * &w[r] * &w[c] + &two * &cross[r][c]) / &den
        })
    })
}

/// Random element of the admissible group. `phi(0, 0, s) = (0, 0, phi3(s))`, the
/// `(u, v)` Jacobian at the origin has positive determinant with positive `u`
/// stretch, and `phi3' > 0`. With `reparam = false`, `phi3 = s`.
pub fn random_admissible<R: Rng>(rng: &mut R, order: usize, reparam: bool) -> AdmissibleTransform {
    let n = order;
    let pick = |rng: &mut R, xs: &[(i64, i64)]| {
        let (a, b) = xs[rng.gen_range(0..xs.len())];
        Rational::from_ratio(a, b)
    };
    let (a, b, c, d) = loop {
        let a = pick(rng, &[(1, 2), (1, 1), (3, 2), (2, 1)]);
        let c = pick(rng, &[(1, 2), (1, 1), (2, 1)]);
        let b = pick(rng, &[(-1, 2), (0, 1), (1, 2)]);
        let d = pick(rng, &[(-1, 2), (0, 1), (1, 2)]);
        if &a * &c - &b * &d > Rational::from_i64(0) {
            break (a, b, c, d);
        }
    };
    let higher = exponents(2, n, |e| e[0] + e[1] >= 1);
    let mut phi1 = sparse_jet(rng, n, &higher, 0.08, 2);
    phi1.add_term([1, 0, 0], a);
    phi1.add_term([0, 1, 0], b);
    let mut phi2 = sparse_jet(rng, n, &higher, 0.08, 2);
    phi2.add_term([1, 0, 0], d);
    phi2.add_term([0, 1, 0], c);
    let mut phi3 = Jet::var(Var::S, n);
    if reparam {
        phi3 = Jet::monomial([0, 0, 1], pick(rng, &[(1, 2), (1, 1), (2, 1)]), n);
        phi3.add_term([0, 0, 2], small_rational(rng, 1));
        phi3.add_term([0, 0, 3], small_rational(rng, 1));
    }
    let w = [small_rational(rng, 1), small_rational(rng, 1), small_rational(rng, 1)];
    AdmissibleTransform {
        phi: [phi1, phi2, phi3],
        rotation: cayley_rotation(w),
    }
}

/// Even curve `a v^2 + b v^4 + c v^6` (jets in the `v` slot) with `a != 0`, and a
/// vector orthogonal to `a`.
pub fn random_even_curve<R: Rng>(rng: &mut R) -> (JetVec<Rational>, [Rational; 3]) {
    let vec3 = |rng: &mut R| -> [Rational; 3] { std::array::from_fn(|_| small_rational(rng, 3)) };
    let a = loop {
        let a = vec3(rng);
        if a.iter().any(|x| !x.is_negligible()) {
            break a;
        }
    };
    let b = vec3(rng);
    let c = vec3(rng);
    let w = loop {
        let r = vec3(rng);
        let w = [
            &a[1] * &r[2] - &a[2] * &r[1],
            &a[2] * &r[0] - &a[0] * &r[2],
            &a[0] * &r[1] - &a[1] * &r[0],
        ];
        if w.iter().any(|x| !x.is_negligible()) {
            break w;
        }
    };
    let curve = std::array::from_fn(|k| {
        Jet::from_terms(
            6,
            [([0, 2, 0], a[k].clone()), ([0, 4, 0], b[k].clone()), ([0, 6, 0], c[k].clone())],
        )
    });
    (curve, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::normalize;

    #[test]
    fn normal_forms_validate() {
        let mut r = rng(1);
        for k in 0..40 {
            let nf = random_normal_form(&mut r, 8, k % 2 == 0);
            nf.validate().unwrap();
            assert_eq!(nf.f33.is_zero(), k % 2 == 0);
        }
    }

    #[test]
    fn reduced_fnf_shape() {
        let mut r = rng(2);
        for _ in 0..20 {
            let f = random_reduced_fnf(&mut r, 8, 1, -1).unwrap();
            let e = f.expand_c1().unwrap();
            assert!(e.d2_at_0.sqrt_exact().is_some() && e.d2_at_0 > Rational::from_i64(0));
            assert!(f.c3.constant_term().is_negative());
        }
    }

    #[test]
    fn cayley_is_a_rotation() {
        let w = [Rational::from_i64(1), Rational::from_ratio(-1, 2), Rational::from_i64(2)];
        let r = cayley_rotation(w);
        for i in 0..3 {
            for j in 0..3 {
                let d: Rational = (0..3).map(|k| &r[i][k] * &r[j][k]).sum();
                assert_eq!(d, Rational::from_i64((i == j) as i64));
            }
        }
        let det = &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
            - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
            + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0]);
        assert_eq!(det, Rational::from_i64(1));
    }

    #[test]
    fn transformed_germs_renormalize_exactly() {
        let mut r = rng(3);
        let nf = random_normal_form(&mut r, 8, false);
        let t = random_admissible(&mut r, 8, false);
        let g = t.apply(&nf.assemble().unwrap()).unwrap();
        let (back, _) = normalize(&g).unwrap();
        assert!(back.eq_through(&nf, 6));
    }
}
