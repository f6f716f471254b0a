//! Acceptance suite: ten criteria, one PASS/FAIL line each. Every reference
//! value is computed here from raw polynomial coefficients, independently of
//! the library's own cross-checks.

mod common;

use std::error::Error as StdError;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::Rng;

use common::{
    bisect, classical_curvatures, components, cross, dot, f, frenet_at_zero, loglog_slope, q, qr, rational,
    richardson, traced_branches, trajectory_coefficients, transform, Poly,
};
use cuspidal_core::cli::random::{
    damped_reduced_fnf, random_admissible, random_even_curve, random_normal_form, random_reduced_fnf, rng,
};
use cuspidal_core::frontal::{is_frontal, minimal_frontalization, unit_normal};
use cuspidal_core::geometry::{
    bias_secondary, branch_curvatures_s0, eta_frame, even_curve_curvatures, recover_f24_f34_corrected,
    recover_f24_f34_printed, si_curvature_limits, solve_singular_u, trajectory_frenet, trajectory_series,
    FrenetInputs,
};
use cuspidal_core::germs::{builtin, normalize, FrontalNormalForm, MapGerm, NormalFormS1};
use cuspidal_core::jets::{Exp, Jet};
use cuspidal_core::Rational as Q;
use num::{BigInt, Signed, Zero};

type Outcome = Result<(bool, String), Box<dyn StdError>>;

const ORDER: usize = 8;

fn seeded(criterion: u64) -> rand_chacha::ChaCha8Rng {
    rng(0x5eed_0000 + criterion)
}

fn germ_of(p: &[Poly; 3]) -> Result<MapGerm<Q>, Box<dyn StdError>> {
    Ok(MapGerm::new(p[0].to_jet(), p[1].to_jet(), p[2].to_jet())?)
}

/// `(u, v^2 + y_extra, z)` built from integer term lists.
fn model(y_extra: &[(Exp, i64)], z: &[(Exp, i64)]) -> [Poly; 3] {
    let mut y = vec![([0, 2, 0], 1)];
    y.extend_from_slice(y_extra);
    [Poly::var(0, ORDER), Poly::from_int_terms(ORDER, &y), Poly::from_int_terms(ORDER, z)]
}

fn fnf_of(p: &[Poly; 3]) -> Result<FrontalNormalForm<Q>, Box<dyn StdError>> {
    Ok(FrontalNormalForm::from_s1(&NormalFormS1::read_off(&germ_of(p)?)?)?)
}

/// `c1(u, s)`: the `v^3` coefficient of `z` for a frontal germ in normal shape.
fn c1_of(z: &Poly) -> Poly {
    let mut c1 = Poly::zero(z.order - 3);
    for (e, c) in &z.terms {
        if e[1] == 3 {
            c1.add_term([e[0], 0, e[2]], c.clone());
        }
    }
    c1
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

fn truncated(p: &Poly, k: usize) -> Poly {
    p.with_order(k)
}

fn list(bad: &[String]) -> String {
    let mut s = bad.iter().take(4).cloned().collect::<Vec<_>>().join("; ");
    if bad.len() > 4 {
        s.push_str(&format!("; and {} more", bad.len() - 4));
    }
    s
}

fn frontality() -> Outcome {
    let mut r = seeded(1);
    let total = 200;
    let (mut disagreements, mut frontal) = (0, 0);
    for _ in 0..total {
        let want = r.gen_bool(0.5);
        let nf = random_normal_form(&mut r, ORDER, want);
        let g = components(&nf.assemble()?);
        let fu: [Poly; 3] = std::array::from_fn(|k| g[k].derivative(0));
        let fv: [Poly; 3] = std::array::from_fn(|k| g[k].derivative(1));
        // f_u x f_v = v * (nonvanishing vector) exactly when the germ is a frontal
        let n = cross(&fu, &fv);
        let divisible = n.iter().all(|c| c.terms.keys().all(|e| e[1] >= 1));
        let oracle = divisible && n.iter().any(|c| !c.coeff([0, 1, 0]).is_zero());
        let normal = match unit_normal(&germ_of(&g)?) {
            Ok(field) => {
                let nu: [Poly; 3] = std::array::from_fn(|k| Poly::from_jet(&field.nu[k]));
                let m = nu[0].order;
                dot(&fu, &nu).is_zero()
                    && dot(&fv, &nu).is_zero()
                    && dot(&nu, &nu) == Poly::constant(q(1), m)
            }
            Err(_) => false,
        };
        let claim = is_frontal(&nf);
        frontal += claim as usize;
        if claim != oracle || claim != normal {
            disagreements += 1;
        }
    }
    Ok((
        disagreements == 0,
        format!("{total} random normal forms ({frontal} frontal), {disagreements} disagreements"),
    ))
}

struct Row {
    name: String,
    germ_z: Vec<(Exp, i64)>,
    obstruction: Vec<(Exp, i64)>,
    frontal_z: Vec<(Exp, i64)>,
}

/// Rows of the two tables with the `+-` of each family resolved.
fn table_rows() -> Vec<Row> {
    let mut rows = vec![Row {
        name: "S0".into(),
        germ_z: vec![([1, 1, 0], 1)],
        obstruction: vec![([1, 1, 0], 1)],
        frontal_z: vec![],
    }];
    for k in 1..=3usize {
        for (sym, sg) in [('+', 1), ('-', -1)] {
            rows.push(Row {
                name: format!("S{k}{sym}"),
                germ_z: vec![([0, 3, 0], 1), ([k + 1, 1, 0], sg)],
                obstruction: vec![([k + 1, 1, 0], sg)],
                frontal_z: vec![([0, 3, 0], 1)],
            });
            rows.push(Row {
                name: format!("B{k}{sym}"),
                germ_z: vec![([2, 1, 0], 1), ([0, 2 * k + 1, 0], sg)],
                obstruction: vec![([2, 1, 0], 1)],
                frontal_z: vec![([0, 2 * k + 1, 0], sg)],
            });
            rows.push(Row {
                name: format!("C{k}{sym}"),
                germ_z: vec![([1, 3, 0], 1), ([k, 1, 0], sg)],
                obstruction: vec![([k, 1, 0], sg)],
                frontal_z: vec![([1, 3, 0], 1)],
            });
        }
    }
    rows.push(Row {
        name: "F4".into(),
        germ_z: vec![([3, 1, 0], 1), ([0, 5, 0], 1)],
        obstruction: vec![([3, 1, 0], 1)],
        frontal_z: vec![([0, 5, 0], 1)],
    });
    rows
}

/// `None` when the builtin equals the table germ and its obstruction and
/// frontal part equal the table entries.
fn check_row(builtin_name: &str, germ_z: &[(Exp, i64)], obs: &[(Exp, i64)], fz: &[(Exp, i64)]) -> Result<Option<String>, Box<dyn StdError>> {
    let table_germ = model(&[], germ_z);
    if components(&builtin(builtin_name, ORDER)?) != table_germ {
        return Ok(Some(format!("{builtin_name}: builtin differs from the table germ")));
    }
    let (nf, _) = normalize(&germ_of(&table_germ)?)?;
    let (fr, got_obs) = minimal_frontalization(&nf)?;
    let got_obs = Poly::from_jet(&got_obs);
    let want_obs = Poly::from_int_terms(got_obs.order, obs);
    if got_obs != want_obs {
        return Ok(Some(format!("{builtin_name}: obstruction {:?}", got_obs.terms)));
    }
    let got = components(&fr.assemble()?);
    if got != model(&[], fz) {
        return Ok(Some(format!("{builtin_name}: frontal part z {:?}", got[2].terms)));
    }
    Ok(None)
}

fn tables() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for row in table_rows() {
        if let Some(m) = check_row(&format!("mond:{}", row.name), &row.germ_z, &row.obstruction, &row.frontal_z)? {
            bad.push(m);
        }
        rows += 1;
        if row.name == "S0" {
            continue;
        }
        let with = |t: &[(Exp, i64)], extra: &[(Exp, i64)]| [t, extra].concat();
        let (vs, v3s) = (([0, 1, 1], 1), ([0, 3, 1], 1));
        if let Some(m) = check_row(
            &format!("mond_def:{}", row.name),
            &with(&row.germ_z, &[vs, v3s]),
            &with(&row.obstruction, &[vs]),
            &with(&row.frontal_z, &[v3s]),
        )? {
            bad.push(m);
        }
        rows += 1;
    }
    // printed deformed F4 germ: the v^5 v term is v^6, which is even in v and
    // so lands in the frontal part in place of v^5
    let printed = check_row(
        "mond_def:F4_printed",
        &[([3, 1, 0], 1), ([0, 6, 0], 1), ([0, 1, 1], 1), ([0, 3, 1], 1)],
        &[([3, 1, 0], 1), ([0, 1, 1], 1)],
        &[([0, 5, 0], 1), ([0, 3, 1], 1)],
    )?;
    let flag = match printed {
        Some(_) => "printed deformed F4 (v^5 v) flagged: its frontal part is not the printed row",
        None => {
            bad.push("printed deformed F4 unexpectedly matches".into());
            ""
        }
    };
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("{rows} rows coefficient-exact; {flag}") } else { list(&bad) },
    ))
}

fn trajectory() -> Outcome {
    let mut bad = Vec::new();
    for name in ["fs_plus", "fs_minus"] {
        let (nf, _) = normalize(&builtin(name, ORDER)?)?;
        let fnf = FrontalNormalForm::from_s1(&nf)?;
        let series = trajectory_series(&fnf)?;
        let oracle = trajectory_coefficients(&c1_of(&components(&fnf.assemble()?)[2]), &q(1), 3);
        if series.alpha_exact != Some([q(1), q(0), q(0)]) || oracle != [q(1), q(0), q(0)] {
            bad.push(format!("{name}: alpha {:?}", series.alpha));
        }
        for st in [0.2, 0.1, 0.01, 0.001] {
            let roots = solve_singular_u(&fnf, st)?;
            if roots.len() != 2 || (roots[0] + st).abs() > 1e-12 || (roots[1] - st).abs() > 1e-12 {
                bad.push(format!("{name}: roots {roots:?} at s~ = {st}"));
            }
        }
    }
    let mut r = seeded(3);
    let hs: Vec<f64> = (0..5).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect();
    let mut worst = f64::INFINITY;
    let mut exact = 0;
    for t in 0..20 {
        let fnf = damped_reduced_fnf(&mut r, ORDER, 1, 0, &qr(1, 16))?;
        let c1 = c1_of(&components(&fnf.assemble()?)[2]);
        let d20 = rational_sqrt(&c1.coeff([2, 0, 0])).ok_or("d2(0) is not a rational square")?;
        let oracle = trajectory_coefficients(&c1, &d20, 3);
        let Some(alpha) = trajectory_series(&fnf)?.alpha_exact else {
            bad.push(format!("germ #{t}: no exact series"));
            continue;
        };
        if alpha.to_vec() != oracle {
            bad.push(format!("germ #{t}: alpha differs from the coefficient-by-coefficient solution"));
        }
        for side in [1i64, -1] {
            let mut errs = Vec::new();
            for &h in &hs {
                let h = rational(h) * q(side);
                let a1h = &oracle[0] * &h;
                let (lo, hi) = (&a1h / q(2), &a1h * qr(3, 2));
                let (lo, hi) = if side > 0 { (lo, hi) } else { (hi, lo) };
                let tol = h.abs() * Q::new(BigInt::from(1), BigInt::from(1) << 140usize);
                let root = bisect(&c1, &-(&h * &h), lo, hi, &tol);
                let series = &h * (&alpha[0] + &h * (&alpha[1] + &h * &alpha[2]));
                errs.push(f(&(root - series).abs()));
            }
            let (xs, ys): (Vec<f64>, Vec<f64>) = hs.iter().zip(&errs).filter(|(_, e)| **e > 1e-35).unzip();
            if xs.len() < 3 {
                exact += 1;
                continue;
            }
            let slope = loglog_slope(&xs, &ys);
            worst = worst.min(slope);
            if slope < 3.9 {
                bad.push(format!("germ #{t} side {side}: slope {slope:.3}"));
            }
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "f_s+-: alpha = (1,0,0), roots +-s~ within 1e-12; 20 random germs: min slope {worst:.3} ({exact} branches exact)"
            )
        } else {
            list(&bad)
        },
    ))
}

fn branch_closed_forms() -> Outcome {
    let mut bad = Vec::new();
    let fs_minus_z = [([2, 3, 0], 1), ([0, 5, 0], -1), ([0, 3, 1], 1)];
    let cases = [
        ("f_s^-", model(&[], &fs_minus_z), 2.0),
        ("f21 = 1", model(&[([2, 0, 0], 1)], &fs_minus_z), 4.0),
    ];
    let mut notes = Vec::new();
    for (label, g, want) in &cases {
        let b = branch_curvatures_s0(&fnf_of(g)?)?;
        if b.kappa_g != *want || b.kappa_n != 0.0 {
            bad.push(format!("{label}: formula gives ({}, {})", b.kappa_g, b.kappa_n));
        }
        for (kg, kn) in traced_branches(g)? {
            notes.push(format!("{label} traced ({kg:.9}, {kn:.1e})"));
            if (kg - b.kappa_g).abs() > 1e-6 || (kn - b.kappa_n).abs() > 1e-6 {
                bad.push(format!("{label}: traced branch ({kg}, {kn}) vs formula ({}, {})", b.kappa_g, b.kappa_n));
            }
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("f_s^-: kappa_g = 2, kappa_n = 0; f21 = 1: kappa_g = 4; {}", notes.join(", "))
        } else {
            list(&bad)
        },
    ))
}

fn abs_agreement() -> Outcome {
    let mut r = seeded(5);
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for t in 0..10 {
        let fnf = random_reduced_fnf(&mut r, ORDER, 1, -1)?;
        let g = components(&fnf.assemble()?);
        let (f21, f31) = (f(&g[1].coeff([2, 0, 0])), f(&g[2].coeff([2, 0, 0])));
        let (c1uu, c3) = (2.0 * f(&g[2].coeff([2, 3, 0])), f(&g[2].coeff([0, 5, 0])));
        let kappa_g = (2.0 * f21 * c3 - c1uu) / c3;
        let kappa_n = 2.0 * f31;
        let l = si_curvature_limits(&fnf)?;
        let dg = (l.kappa_g_oracle.abs() - kappa_g.abs()).abs();
        let dn = (l.kappa_n_oracle.abs() - kappa_n.abs()).abs();
        worst = worst.max(dg);
        if dg > 1e-4 || dn > 1e-4 {
            bad.push(format!("germ #{t}: limit ({}, {}) vs closed form ({kappa_g}, {kappa_n})", l.kappa_g_oracle, l.kappa_n_oracle));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("10 random germs, max ||limit| - |closed form|| = {worst:.2e}") } else { list(&bad) },
    ))
}

fn bias() -> Outcome {
    let k = 45.0 * std::f64::consts::SQRT_2;
    let hs = [0.05, 0.1, 0.2];
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (label, sign, c2) in [("f_s^+", 1, false), ("f_s^-", -1, false), ("f_s^+ c2=1", 1, true), ("f_s^- c2=1", -1, true)] {
        let mut z = vec![([2, 3, 0], 1), ([0, 5, 0], sign), ([0, 3, 1], 1)];
        if c2 {
            z.push(([0, 4, 0], 1));
        }
        let g = model(&[], &z);
        let fnf = fnf_of(&g)?;
        let c1 = c1_of(&g[2]);
        let (rb_limit, rc_limit) = (if c2 { 6.0 } else { 0.0 }, k * sign as f64);
        let (mut xs, mut eb, mut ec) = (Vec::new(), Vec::new(), Vec::new());
        for &h in &hs {
            let hq = rational(h);
            for (lo, hi) in [(-&hq * q(2), -&hq / q(2)), (&hq / q(2), &hq * q(2))] {
                let u0 = f(&bisect(&c1, &-(&hq * &hq), lo, hi, &qr(1, 1 << 60)));
                let frame = eta_frame(&fnf, u0, h)?;
                if frame.residuals.iter().any(|x| x.abs() > 1e-9) {
                    bad.push(format!("{label}: frame residuals {:?}", frame.residuals));
                }
                let (rb, rc) = bias_secondary(&frame)?;
                xs.push(h);
                eb.push((rb - rb_limit).abs());
                ec.push((rc - rc_limit).abs());
            }
        }
        for (what, errs) in [("r_b", &eb), ("r_c", &ec)] {
            let max = errs.iter().cloned().fold(0.0, f64::max);
            let (px, py): (Vec<f64>, Vec<f64>) = xs.iter().zip(errs.iter()).filter(|(_, e)| **e > 1e-12).unzip();
            if px.len() < 3 {
                notes.push(format!("{label} {what} max deviation {max:.1e}"));
                continue;
            }
            let slope = loglog_slope(&px, &py);
            notes.push(format!("{label} {what} slope {slope:.2}"));
            if slope < 1.9 {
                bad.push(format!("{label}: {what} slope {slope:.3}"));
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { notes.join("; ") } else { list(&bad) }))
}

fn even_curves() -> Outcome {
    let mut bad = Vec::new();
    let example = [
        Jet::monomial([0, 2, 0], 1.0, 6),
        Jet::monomial([0, 4, 0], 1.0, 6),
        Jet::zero(6),
    ];
    let (kg, kn) = even_curve_curvatures(&example, [0.0, 0.0, 1.0], 1.0)?;
    if kg != 2.0 || kn != 0.0 {
        bad.push(format!("(v^2, v^4, 0) gives ({kg}, {kn})"));
    }
    let mut r = seeded(7);
    let mut worst: f64 = 0.0;
    let powers = [2.0, 4.0, 6.0, 8.0];
    for t in 0..50 {
        let (curve, w) = random_even_curve(&mut r);
        let c: [Poly; 3] = std::array::from_fn(|k| Poly::from_jet(&curve[k]));
        let wn = w.iter().map(|x| f(x).powi(2)).sum::<f64>().sqrt();
        let nu0 = std::array::from_fn(|k| f(&w[k]) / wn);
        let (fg, fn_) = even_curve_curvatures(&curve.clone().map(|j| j.to_f64()), nu0, 1.0)?;
        let (mut gs, mut ns) = (Vec::new(), Vec::new());
        for i in 0..5 {
            let (g, n) = classical_curvatures(&c, &w, &qr(1, 100 << i));
            gs.push(g);
            ns.push(n);
        }
        let err = (richardson(&gs, 2.0, &powers) - fg).abs().max((richardson(&ns, 2.0, &powers) - fn_).abs());
        worst = worst.max(err);
        if err > 1e-8 {
            bad.push(format!("curve #{t}: deviation {err:.2e}"));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() { format!("worked example kappa_g = 2; 50 curves, max deviation {worst:.2e}") } else { list(&bad) },
    ))
}

fn frenet() -> Outcome {
    let mut r = seeded(8);
    let count = 10;
    let mut bad = Vec::new();
    let mut passes = [0usize; 4];
    let mut worst: f64 = 0.0;
    for t in 0..count {
        let mut fnf = random_reduced_fnf(&mut r, ORDER, 1, 0)?;
        if fnf.f21.constant_term().is_zero() && fnf.f31.constant_term().is_zero() {
            fnf.f21.set_coeff([0, 0, 0], q(1));
        }
        let g = components(&fnf.assemble()?);
        let c1 = c1_of(&g[2]);
        let d20 = rational_sqrt(&c1.coeff([2, 0, 0])).ok_or("d2(0) is not a rational square")?;
        let alpha = trajectory_coefficients(&c1, &d20, 3);
        let m = 4;
        let mut u = Poly::zero(m);
        for (i, a) in alpha.iter().enumerate() {
            u.add_term([i + 1, 0, 0], a.clone());
        }
        let inner = [u, Poly::zero(m), Poly::from_int_terms(m, &[([2, 0, 0], -1)])];
        let gamma: [Poly; 3] = std::array::from_fn(|k| g[k].compose(&inner));
        let (kappa, dkappa, tau) = frenet_at_zero(&gamma);
        let fr = trajectory_frenet(&fnf)?;
        worst = worst.max((fr.kappa - kappa).abs());
        if (fr.kappa - kappa).abs() > 1e-10 {
            bad.push(format!("germ #{t}: kappa {} vs oracle {kappa}", fr.kappa));
        }
        let (Some(kp), Some(tt)) = (fr.kappa_prime, fr.tau) else {
            bad.push(format!("germ #{t}: zero curvature"));
            continue;
        };
        if (kp - dkappa).abs() > 1e-8 * (1.0 + dkappa.abs()) || (tt - tau).abs() > 1e-8 * (1.0 + tau.abs()) {
            bad.push(format!("germ #{t}: (kappa', tau) = ({kp}, {tt}) vs oracle ({dkappa}, {tau})"));
        }
        let inputs = FrenetInputs {
            kappa,
            tau,
            kappa_prime: dkappa,
            f21: f(&g[1].coeff([2, 0, 0])),
            f31: f(&g[2].coeff([2, 0, 0])),
            f21_u: f(&g[1].coeff([3, 0, 0])),
            f31_u: f(&g[2].coeff([3, 0, 0])),
            d20: f(&d20),
        };
        let truth = (f(&g[1].coeff([1, 0, 1])), f(&g[2].coeff([1, 0, 1])));
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-8 * (1.0 + b.abs());
        let (p24, p34) = recover_f24_f34_printed(&inputs)?;
        let (c24, c34) = recover_f24_f34_corrected(&inputs)?;
        for (slot, ok) in [close(p24, truth.0), close(p34, truth.1), close(c24, truth.0), close(c34, truth.1)]
            .into_iter()
            .enumerate()
        {
            passes[slot] += ok as usize;
        }
    }
    if passes[2] != count || passes[3] != count {
        bad.push("corrected recovery does not round-trip".into());
    }
    let report = format!(
        "kappa max deviation {worst:.1e}; round trip on {count} germs: printed f24 {}/{count}, printed f34 {}/{count}, corrected f24 {}/{count}, corrected f34 {}/{count}",
        passes[0], passes[1], passes[2], passes[3]
    );
    Ok((bad.is_empty(), if bad.is_empty() { report } else { format!("{}; {report}", list(&bad)) }))
}

fn uniqueness() -> Outcome {
    let mut r = seeded(9);
    let through = 6;
    let mut bad = Vec::new();
    for t in 0..10 {
        // frontal germ, parameter moved too and restored by the reduction
        let sign = if r.gen_bool(0.5) { 1 } else { -1 };
        let fnf = random_reduced_fnf(&mut r, ORDER, sign, 0)?;
        let tr = random_admissible(&mut r, ORDER, true);
        let phi: [Poly; 3] = std::array::from_fn(|k| Poly::from_jet(&tr.phi[k]));
        let input = components(&fnf.assemble()?);
        let moved = germ_of(&transform(&input, &phi, &tr.rotation))?;
        let (nf, _) = normalize(&moved)?;
        let (reduced, _) = FrontalNormalForm::from_s1(&nf)?.reduce_parameter()?;
        let out = components(&reduced.assemble()?);
        if (0..3).any(|k| truncated(&out[k], through) != truncated(&input[k], through)) {
            bad.push(format!("frontal #{t}"));
        }
        // non-frontal germ, parameter left alone
        let nf0 = random_normal_form(&mut r, ORDER, false);
        let tr = random_admissible(&mut r, ORDER, false);
        let phi: [Poly; 3] = std::array::from_fn(|k| Poly::from_jet(&tr.phi[k]));
        let input = components(&nf0.assemble()?);
        let (nf1, _) = normalize(&germ_of(&transform(&input, &phi, &tr.rotation))?)?;
        let out = components(&nf1.assemble()?);
        if (0..3).any(|k| truncated(&out[k], through) != truncated(&input[k], through)) {
            bad.push(format!("non-frontal #{t}"));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("20 germs (10 frontal with reparametrized s, 10 non-frontal) reproduced through order {through}")
        } else {
            format!("mismatch: {}", list(&bad))
        },
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, Box<dyn StdError>> {
    let out = Command::new(env!("CARGO_BIN_EXE_cuspidal")).args(args).output()?;
    if !out.status.success() {
        return Err(format!("cuspidal {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)).into());
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir()?;
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for name in ["fs_plus", "example32"] {
        let spec = dir.path().join(format!("{name}.json"));
        let spec = spec.to_str().ok_or("non-UTF-8 temp path")?;
        run_cli(&["export-builtin", name, "--out", spec])?;
        let commands: [Vec<&str>; 2] = [
            vec!["sweep", spec, "--s-min", "0.01", "--s-max", "0.3", "--count", "40"],
            vec!["mesh", spec, "--s", "-1", "--grid", "24", "--frontalize"],
        ];
        for cmd in &commands {
            let reference = run_cli(&[cmd.as_slice(), &["--threads", "1"][..]].concat())?;
            let mut runs = vec![run_cli(&[cmd.as_slice(), &["--threads", "8"][..]].concat())?];
            for _ in 0..3 {
                runs.push(run_cli(cmd)?);
            }
            if runs.iter().any(|o| *o != reference) {
                bad.push(format!("{name} {}", cmd[0]));
            }
            sizes.push(format!("{name} {} {} bytes", cmd[0], reference.len()));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("byte-identical over 3 runs and 1 vs 8 threads ({})", sizes.join(", "))
        } else {
            format!("outputs differ: {}", bad.join(", "))
        },
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("frontality", frontality),
        ("tables", tables),
        ("trajectory series", trajectory),
        ("branch closed forms", branch_closed_forms),
        ("|kappa_g| agreement", abs_agreement),
        ("bias and secondary curvature", bias),
        ("even curves", even_curves),
        ("trajectory Frenet data", frenet),
        ("normal-form uniqueness", uniqueness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(Ok(x)) => x,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".into()),
        };
        failed += !ok as usize;
        println!(
            "{} criterion {:>2} ({name}, {:.1}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
